//! Exact finite-N matrix representations of the collective atomic operators
//! and verification of their commutation relations.
//!
//! Each of the N three-level atoms carries the fixed level order b = 0,
//! a = 1, c = 2, so the ground state |b…b⟩ has basis index 0. On the
//! 3^N-dimensional product space the collective operators are
//!
//! ```text
//! S  = Σ_j σ_aa^(j)            A† = (1/√N) Σ_j σ_ab^(j)      T₊ = Σ_j σ_ac^(j)
//! C  = (1/√N) Σ_j σ_bc^(j)     with A, C†, T₋ their adjoints,
//! ```
//!
//! where σ_μν^(j) = |μ⟩_j⟨ν| acts on atom j alone. The exact identities
//! checked here are [S,C†] = 0, [A,S] = A, [T₋,C†] = 0, [T₊,C†] = A†,
//! [A,C] = 0, and the finite-N form [A,C†] = −T₋/N; the bosonic limit
//! [A,A†] → 1 is checked as expectation values on low-excitation states,
//! where the deviation from 1 is exactly k/N for k atoms promoted out of |b⟩.
//!
//! Matrices up to N = 6 may be stored dense; a coordinate-list representation
//! covers N = 7, 8 (and must agree with the dense one wherever both exist).
//! All products accumulate in ascending-index order in both representations,
//! so their verification reports are bit-identical.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest atom count supported at all.
pub const MAX_ATOMS: usize = 8;
/// Largest atom count for which dense storage is allowed (3^6 = 729).
pub const MAX_DENSE_ATOMS: usize = 6;

/// N atoms with the fixed level enumeration b = 0, a = 1, c = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomBasis {
    n_atoms: usize,
}

impl AtomBasis {
    pub fn new(n_atoms: usize) -> Result<Self> {
        if n_atoms == 0 || n_atoms > MAX_ATOMS {
            return Err(Error::DimensionOverflow {
                n: n_atoms,
                max: MAX_ATOMS,
            });
        }
        Ok(Self { n_atoms })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    /// Hilbert-space dimension 3^N.
    pub fn dim(&self) -> usize {
        3usize.pow(self.n_atoms as u32)
    }

    /// Level of atom `j` in basis state `index` (atom 0 is the most
    /// significant base-3 digit).
    fn level_of(&self, index: usize, j: usize) -> usize {
        let shift = 3usize.pow((self.n_atoms - 1 - j) as u32);
        (index / shift) % 3
    }

    /// Basis index with atom `j` set to `level`.
    fn with_level(&self, index: usize, j: usize, level: usize) -> usize {
        let shift = 3usize.pow((self.n_atoms - 1 - j) as u32);
        let old = (index / shift) % 3;
        index - old * shift + level * shift
    }
}

/// Storage backend for an operator matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Dense,
    Coords,
}

impl Representation {
    /// Dense for small N, coordinate list once dense matrices get heavy.
    pub fn auto(basis: AtomBasis) -> Self {
        if basis.n_atoms() <= 4 {
            Self::Dense
        } else {
            Self::Coords
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense(Array2<Complex64>),
    Coords(BTreeMap<(usize, usize), Complex64>),
}

/// A labelled operator on the N-atom Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    label: String,
    dim: usize,
    storage: Storage,
}

impl OperatorMatrix {
    fn from_entries(
        label: &str,
        dim: usize,
        rep: Representation,
        entries: Vec<(usize, usize, Complex64)>,
    ) -> Self {
        let storage = match rep {
            Representation::Dense => {
                let mut m = Array2::zeros((dim, dim));
                for (i, j, v) in entries {
                    m[(i, j)] += v;
                }
                Storage::Dense(m)
            }
            Representation::Coords => {
                let mut m = BTreeMap::new();
                for (i, j, v) in entries {
                    *m.entry((i, j)).or_insert(Complex64::ZERO) += v;
                }
                m.retain(|_, v| *v != Complex64::ZERO);
                Storage::Coords(m)
            }
        };
        Self {
            label: label.to_string(),
            dim,
            storage,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn representation(&self) -> Representation {
        match self.storage {
            Storage::Dense(_) => Representation::Dense,
            Storage::Coords(_) => Representation::Coords,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        match &self.storage {
            Storage::Dense(m) => m[(i, j)],
            Storage::Coords(m) => m.get(&(i, j)).copied().unwrap_or(Complex64::ZERO),
        }
    }

    /// Count of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(m) => m.iter().filter(|v| **v != Complex64::ZERO).count(),
            Storage::Coords(m) => m.len(),
        }
    }

    /// Exact conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let entries = self
            .iter_entries()
            .map(|(i, j, v)| (j, i, v.conj()))
            .collect();
        Self::from_entries(
            &format!("{}^dag", self.label),
            self.dim,
            self.representation(),
            entries,
        )
        .with_label(adjoint_label(&self.label))
    }

    fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let entries = self
            .iter_entries()
            .map(|(i, j, v)| (i, j, factor * v))
            .collect();
        Self::from_entries(&self.label, self.dim, self.representation(), entries)
    }

    fn iter_entries(&self) -> Box<dyn Iterator<Item = (usize, usize, Complex64)> + '_> {
        match &self.storage {
            Storage::Dense(m) => Box::new(
                m.indexed_iter()
                    .filter(|(_, v)| **v != Complex64::ZERO)
                    .map(|((i, j), v)| (i, j, *v)),
            ),
            Storage::Coords(m) => Box::new(m.iter().map(|(&(i, j), &v)| (i, j, v))),
        }
    }

    /// Matrix product. Both representations accumulate contributions in
    /// ascending column-index order of the left factor, so results agree
    /// bit-for-bit across representations.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let label = format!("{}*{}", self.label, other.label);
        match (&self.storage, &other.storage) {
            (Storage::Dense(a), Storage::Dense(b)) => {
                let mut out = Array2::zeros((self.dim, self.dim));
                for i in 0..self.dim {
                    for k in 0..self.dim {
                        let aik = a[(i, k)];
                        if aik == Complex64::ZERO {
                            continue;
                        }
                        for j in 0..self.dim {
                            let bkj = b[(k, j)];
                            if bkj != Complex64::ZERO {
                                out[(i, j)] += aik * bkj;
                            }
                        }
                    }
                }
                Ok(Self {
                    label,
                    dim: self.dim,
                    storage: Storage::Dense(out),
                })
            }
            _ => {
                // Sparse path; a dense operand is viewed through its nonzero
                // entries. Row-index the right factor first.
                let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.dim];
                for (k, j, v) in other.iter_entries() {
                    rows[k].push((j, v));
                }
                let mut out: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
                for (i, k, v) in self.iter_entries() {
                    for &(j, w) in &rows[k] {
                        *out.entry((i, j)).or_insert(Complex64::ZERO) += v * w;
                    }
                }
                out.retain(|_, v| *v != Complex64::ZERO);
                Ok(Self {
                    label,
                    dim: self.dim,
                    storage: Storage::Coords(out),
                })
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let label = format!("{}-{}", self.label, other.label);
        let entries = self
            .iter_entries()
            .chain(other.iter_entries().map(|(i, j, v)| (i, j, -v)))
            .collect::<Vec<_>>();
        let rep = match (&self.storage, &other.storage) {
            (Storage::Dense(_), Storage::Dense(_)) => Representation::Dense,
            _ => Representation::Coords,
        };
        let mut m = Self::from_entries(&label, self.dim, rep, entries);
        m.label = label;
        Ok(m)
    }

    /// Largest absolute entry.
    pub fn max_abs_entry(&self) -> f64 {
        self.iter_entries()
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entrywise difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs_entry())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        let mut out = vec![Complex64::ZERO; self.dim];
        for (i, j, m) in self.iter_entries() {
            out[i] += m * v[j];
        }
        Ok(out)
    }
}

fn adjoint_label(label: &str) -> String {
    match label {
        "A" => "Adag".into(),
        "C" => "Cdag".into(),
        "Tplus" => "Tminus".into(),
        other => format!("{other}^dag"),
    }
}

/// The full set of collective operators for one basis.
#[derive(Debug, Clone)]
pub struct CollectiveOperators {
    pub basis: AtomBasis,
    pub s: OperatorMatrix,
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub c: OperatorMatrix,
    pub c_dag: OperatorMatrix,
    pub t_plus: OperatorMatrix,
    pub t_minus: OperatorMatrix,
}

/// Entries of Σ_j weight·σ_{μν}^(j) as a coordinate list: every basis state
/// with atom j in level ν couples to the same state with atom j flipped to μ.
fn collective_entries(
    basis: AtomBasis,
    mu: usize,
    nu: usize,
    weight: f64,
) -> Vec<(usize, usize, Complex64)> {
    let dim = basis.dim();
    let amp = Complex64::new(weight, 0.0);
    let mut entries = Vec::new();
    for j in 0..basis.n_atoms() {
        for m in 0..dim {
            if basis.level_of(m, j) == nu {
                entries.push((basis.with_level(m, j, mu), m, amp));
            }
        }
    }
    entries
}

/// Build all collective operators in the given representation. Adjoint pairs
/// are exact conjugate transposes by construction.
pub fn build_operators_with(basis: AtomBasis, rep: Representation) -> Result<CollectiveOperators> {
    if rep == Representation::Dense && basis.n_atoms() > MAX_DENSE_ATOMS {
        return Err(Error::DimensionOverflow {
            n: basis.n_atoms(),
            max: MAX_DENSE_ATOMS,
        });
    }
    let dim = basis.dim();
    let norm = 1.0 / (basis.n_atoms() as f64).sqrt();
    // Levels: b = 0, a = 1, c = 2.
    let (b, a_lvl, c_lvl) = (0, 1, 2);
    let build = |label: &str, mu, nu, weight| {
        OperatorMatrix::from_entries(label, dim, rep, collective_entries(basis, mu, nu, weight))
    };
    let s = build("S", a_lvl, a_lvl, 1.0);
    let a = build("A", b, a_lvl, norm);
    let c = build("C", b, c_lvl, norm);
    let t_plus = build("Tplus", a_lvl, c_lvl, 1.0);
    Ok(CollectiveOperators {
        basis,
        a_dag: a.adjoint(),
        c_dag: c.adjoint(),
        t_minus: t_plus.adjoint(),
        s,
        a,
        c,
        t_plus,
    })
}

pub fn build_operators(basis: AtomBasis) -> Result<CollectiveOperators> {
    build_operators_with(basis, Representation::auto(basis))
}

/// Commutator [X, Y] = XY − YX, exact matrix arithmetic.
pub fn commutator(x: &OperatorMatrix, y: &OperatorMatrix) -> Result<OperatorMatrix> {
    let mut m = x.mul(y)?.sub(&y.mul(x)?)?;
    m.label = format!("[{},{}]", x.label, y.label);
    Ok(m)
}

/// ⟨ψ_k|[A,A†]|ψ_k⟩ on the normalized symmetric state with k atoms promoted
/// from |b⟩ to |c⟩ (ψ_0 is the ground state).
pub fn bosonic_commutator_expectation(ops: &CollectiveOperators, k: usize) -> Result<Complex64> {
    let n = ops.basis.n_atoms();
    if k > n {
        return Err(Error::InvalidParams(format!(
            "cannot promote {k} of {n} atoms"
        )));
    }
    let dim = ops.basis.dim();
    let mut psi = vec![Complex64::ZERO; dim];
    psi[0] = Complex64::new(1.0, 0.0); // |b…b⟩
    for _ in 0..k {
        psi = ops.c_dag.apply(&psi)?;
    }
    let norm = psi.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    for v in &mut psi {
        *v /= norm;
    }
    let w1 = ops.a.apply(&ops.a_dag.apply(&psi)?)?;
    let w2 = ops.a_dag.apply(&ops.a.apply(&psi)?)?;
    let val = psi
        .iter()
        .zip(w1.iter().zip(w2.iter()))
        .map(|(p, (x, y))| p.conj() * (x - y))
        .sum();
    Ok(val)
}

/// One verified identity and its worst deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraCheck {
    pub identity: &'static str,
    pub deviation: f64,
}

/// Verify the commutation relations for one basis. The first five rows are
/// the exact operator identities; the next is the exact finite-N form of
/// [A,C†]; the final two probe the bosonic limit of [A,A†] as expectation
/// values on the ground state and on the one-excitation state.
pub fn verify_algebra_with(basis: AtomBasis, rep: Representation) -> Result<Vec<AlgebraCheck>> {
    let ops = build_operators_with(basis, rep)?;
    let n = basis.n_atoms() as f64;
    let mut report = Vec::new();

    report.push(AlgebraCheck {
        identity: "[S,Cdag] = 0",
        deviation: commutator(&ops.s, &ops.c_dag)?.max_abs_entry(),
    });
    report.push(AlgebraCheck {
        identity: "[A,S] = A",
        deviation: commutator(&ops.a, &ops.s)?.max_abs_diff(&ops.a)?,
    });
    report.push(AlgebraCheck {
        identity: "[Tminus,Cdag] = 0",
        deviation: commutator(&ops.t_minus, &ops.c_dag)?.max_abs_entry(),
    });
    report.push(AlgebraCheck {
        identity: "[Tplus,Cdag] = Adag",
        deviation: commutator(&ops.t_plus, &ops.c_dag)?.max_abs_diff(&ops.a_dag)?,
    });
    report.push(AlgebraCheck {
        identity: "[A,C] = 0",
        deviation: commutator(&ops.a, &ops.c)?.max_abs_entry(),
    });
    report.push(AlgebraCheck {
        identity: "[A,Cdag] = -Tminus/N",
        deviation: commutator(&ops.a, &ops.c_dag)?
            .max_abs_diff(&ops.t_minus.scaled(Complex64::new(-1.0 / n, 0.0)))?,
    });
    report.push(AlgebraCheck {
        identity: "<GS|[A,Adag]|GS> = 1",
        deviation: (bosonic_commutator_expectation(&ops, 0)? - 1.0).norm(),
    });
    report.push(AlgebraCheck {
        identity: "<1exc|[A,Adag]|1exc> = 1 - 1/N",
        deviation: (bosonic_commutator_expectation(&ops, 1)? - (1.0 - 1.0 / n)).norm(),
    });
    Ok(report)
}

pub fn verify_algebra(basis: AtomBasis) -> Result<Vec<AlgebraCheck>> {
    verify_algebra_with(basis, Representation::auto(basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_bounds() {
        assert!(AtomBasis::new(0).is_err());
        assert!(AtomBasis::new(9).is_err());
        assert_eq!(AtomBasis::new(8).unwrap().dim(), 6561);
        assert_eq!(AtomBasis::new(2).unwrap().dim(), 9);
    }

    #[test]
    fn dense_cap() {
        let basis = AtomBasis::new(7).unwrap();
        assert!(matches!(
            build_operators_with(basis, Representation::Dense),
            Err(Error::DimensionOverflow { .. })
        ));
        assert!(build_operators_with(basis, Representation::Coords).is_ok());
    }

    #[test]
    fn single_atom_lowering_operator() {
        let ops = build_operators(AtomBasis::new(1).unwrap()).unwrap();
        // A = σ_ba for N = 1: the only nonzero entry is ⟨b|A|a⟩ = 1.
        assert_eq!(ops.a.nnz(), 1);
        assert_eq!(ops.a.entry(0, 1), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn excitation_counter_for_two_atoms() {
        let ops = build_operators(AtomBasis::new(2).unwrap()).unwrap();
        // S counts atoms in |a⟩: diagonal, integer entries in {0, 1, 2},
        // trace = N·3^{N−1} = 6.
        assert_eq!(ops.s.trace(), Complex64::new(6.0, 0.0));
        for i in 0..9 {
            for j in 0..9 {
                let v = ops.s.entry(i, j);
                if i == j {
                    assert!(v.im == 0.0 && [0.0, 1.0, 2.0].contains(&v.re));
                } else {
                    assert_eq!(v, Complex64::ZERO);
                }
            }
        }
    }

    #[test]
    fn two_atom_structure_counts() {
        let ops = build_operators(AtomBasis::new(2).unwrap()).unwrap();
        // A has N·3^{N−1} = 6 nonzero entries, each 1/√2.
        assert_eq!(ops.a.nnz(), 6);
        let amp = 1.0 / 2f64.sqrt();
        for (_, _, v) in ops.a.iter_entries() {
            assert_eq!(v, Complex64::new(amp, 0.0));
        }
        // Same combinatorics for C by the b↔c relabelling.
        assert_eq!(ops.c.nnz(), 6);
    }

    #[test]
    fn adjoints_are_exact() {
        for n in 1..=4 {
            let ops = build_operators(AtomBasis::new(n).unwrap()).unwrap();
            assert_eq!(ops.a.adjoint().max_abs_diff(&ops.a_dag).unwrap(), 0.0);
            assert_eq!(ops.c.adjoint().max_abs_diff(&ops.c_dag).unwrap(), 0.0);
            assert_eq!(
                ops.t_plus.adjoint().max_abs_diff(&ops.t_minus).unwrap(),
                0.0
            );
        }
    }

    #[test]
    fn commutator_basics() {
        let ops = build_operators(AtomBasis::new(2).unwrap()).unwrap();
        // [X, X] = 0 identically.
        assert_eq!(commutator(&ops.a, &ops.a).unwrap().max_abs_entry(), 0.0);
        // [T₊, C†] = A† entrywise.
        let lhs = commutator(&ops.t_plus, &ops.c_dag).unwrap();
        assert!(lhs.max_abs_diff(&ops.a_dag).unwrap() <= f64::EPSILON);
        // [S, C†] = 0.
        assert_eq!(commutator(&ops.s, &ops.c_dag).unwrap().max_abs_entry(), 0.0);
        // Mismatched dimensions are rejected.
        let other = build_operators(AtomBasis::new(3).unwrap()).unwrap();
        assert!(matches!(
            commutator(&ops.a, &other.a),
            Err(Error::DimensionMismatch(..))
        ));
    }

    #[test]
    fn finite_n_form_of_a_cdag() {
        let ops = build_operators(AtomBasis::new(2).unwrap()).unwrap();
        let lhs = commutator(&ops.a, &ops.c_dag).unwrap();
        let rhs = ops.t_minus.scaled(Complex64::new(-0.5, 0.0));
        assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-13);
    }

    #[test]
    fn verify_report_all_small() {
        for n in 1..=4 {
            let report = verify_algebra(AtomBasis::new(n).unwrap()).unwrap();
            assert_eq!(report.len(), 8);
            for check in &report {
                assert!(
                    check.deviation <= 1e-13,
                    "N={n} {} deviated by {}",
                    check.identity,
                    check.deviation
                );
            }
        }
    }

    #[test]
    fn one_excitation_expectation_n4() {
        let ops = build_operators(AtomBasis::new(4).unwrap()).unwrap();
        let v = bosonic_commutator_expectation(&ops, 1).unwrap();
        assert!((v - 0.75).norm() <= 1e-15);
    }

    #[test]
    fn bosonic_defect_scales_as_k_over_n() {
        let n = 4;
        let ops = build_operators(AtomBasis::new(n).unwrap()).unwrap();
        for k in 0..=n {
            let v = bosonic_commutator_expectation(&ops, k).unwrap();
            let expected = 1.0 - k as f64 / n as f64;
            assert!((v - expected).norm() <= 1e-13, "k={k}: {v}");
        }
    }

    #[test]
    fn s_spectrum_is_excitation_count() {
        // S is diagonal so its spectrum is its diagonal value set {0..N}.
        let basis = AtomBasis::new(3).unwrap();
        let ops = build_operators(basis).unwrap();
        let mut seen = [false; 4];
        for i in 0..basis.dim() {
            let v = ops.s.entry(i, i);
            assert_eq!(v.im, 0.0);
            let k = v.re as usize;
            assert_eq!(v.re, k as f64);
            assert!(k <= 3);
            seen[k] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn verify_report_clean_up_to_max_n() {
        // N = 7, 8 exceed the dense cap and run on the coordinate form.
        for n in [7, 8] {
            let basis = AtomBasis::new(n).unwrap();
            let report = verify_algebra(basis).unwrap();
            for check in &report {
                assert!(
                    check.deviation <= 1e-13,
                    "N={n} {} deviated by {}",
                    check.identity,
                    check.deviation
                );
            }
        }
    }

    #[test]
    fn representations_report_identically() {
        for n in 1..=5 {
            let basis = AtomBasis::new(n).unwrap();
            let dense = verify_algebra_with(basis, Representation::Dense).unwrap();
            let coords = verify_algebra_with(basis, Representation::Coords).unwrap();
            for (d, c) in dense.iter().zip(coords.iter()) {
                assert_eq!(d.identity, c.identity);
                assert_eq!(d.deviation, c.deviation, "N={n} {}", d.identity);
            }
        }
    }
}
