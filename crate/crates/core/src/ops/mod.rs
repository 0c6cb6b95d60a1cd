// Copyright 2026 The pigeonhole Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Dense operators on the three-pigeon space.
//!
//! Pigeon `k` is qubit `q[k]`; basis value 0 or 1 names its box. The
//! operators here are all diagonal in the computational basis except for the
//! time-evolution oracle's intermediate products, but they are stored densely
//! so that the identities can be checked with ordinary matrix algebra.

mod eigen;
mod expm;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::qstate::StateVector;
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// Number of pigeons (qubits) in the operator space.
pub const N_PIGEONS: usize = 3;
/// Dimension of the three-qubit space.
pub const DIM: usize = 1 << N_PIGEONS;

/// Eigenvalues closer than this to 1 count toward a projector's rank.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// A dense `dim × dim` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    dim: usize,
    entries: Vec<Complex64>,
    is_hermitian: bool,
    is_projector: bool,
}

impl LinearOperator {
    /// Wraps row-major entries; hermitian and projector flags are computed at
    /// [`DEFAULT_TOLERANCE`].
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::arg(format!(
                "operator of dimension {dim} needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::arg("operator entries must be finite"));
        }
        Ok(Self::from_entries(dim, entries))
    }

    fn from_entries(dim: usize, entries: Vec<Complex64>) -> Self {
        let mut op = LinearOperator { dim, entries, is_hermitian: false, is_projector: false };
        op.is_hermitian = op.hermiticity_defect() <= DEFAULT_TOLERANCE;
        op.is_projector = op.is_hermitian && op.idempotency_defect() <= DEFAULT_TOLERANCE;
        op
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_entries(dim, vec![Complex64::new(0.0, 0.0); dim * dim])
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let dim = values.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, v) in values.iter().enumerate() {
            entries[i * dim + i] = *v;
        }
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian
    }

    pub fn is_projector(&self) -> bool {
        self.is_projector
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(*a, *b)).collect();
        Self::from_entries(self.dim, entries)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::from_entries(self.dim, self.entries.iter().map(|a| a * k).collect())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self::from_entries(self.dim, self.product_entries(other))
    }

    fn product_entries(&self, other: &Self) -> Vec<Complex64> {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        Self::from_entries(n, out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise `|a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self.entries[i * n + j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.entries[i * n + j] - self.entries[j * n + i].conj()).norm());
            }
        }
        worst
    }

    /// `max |A² - A|`.
    pub fn idempotency_defect(&self) -> f64 {
        self.product_entries(self)
            .iter()
            .zip(&self.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |U U† - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.matmul(&self.adjoint()).max_abs_diff(&Self::identity(self.dim))
    }

    /// Applies the operator to a state of matching dimension.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.dim() != self.dim {
            return Err(Error::arg(format!(
                "operator of dimension {} applied to state of dimension {}",
                self.dim,
                state.dim()
            )));
        }
        let n = self.dim;
        let amps = state.amplitudes();
        let out = (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * amps[j]).sum())
            .collect();
        StateVector::from_amplitudes(state.n_qubits(), out)
    }

    /// `⟨bra|A|ket⟩`.
    pub fn matrix_element(&self, bra: &StateVector, ket: &StateVector) -> Result<Complex64> {
        bra.inner_product(&self.apply(ket)?)
    }

    /// Eigenvalues (ascending) of a hermitian operator.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_hermitian {
            return Err(Error::arg("eigenvalues are only computed for hermitian operators"));
        }
        Ok(eigen::hermitian_eigenvalues(self.dim, &self.entries, DEFAULT_TOLERANCE * 1e-3))
    }

    /// Number of eigenvalues within [`RANK_TOLERANCE`] of 1.
    pub fn rank(&self) -> Result<usize> {
        Ok(self
            .eigenvalues()?
            .iter()
            .filter(|ev| (*ev - 1.0).abs() <= RANK_TOLERANCE)
            .count())
    }
}

/// An unordered pair of distinct pigeons, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pair {
    a: usize,
    b: usize,
}

impl Pair {
    /// The three pairs in the order `01, 12, 02`.
    pub const ALL: [Pair; 3] = [Pair { a: 0, b: 1 }, Pair { a: 1, b: 2 }, Pair { a: 0, b: 2 }];

    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a >= N_PIGEONS || b >= N_PIGEONS {
            return Err(Error::arg(format!(
                "pair ({a}, {b}) must name two distinct pigeons in 0..{N_PIGEONS}"
            )));
        }
        Ok(Pair { a: a.min(b), b: a.max(b) })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// The pigeon not in the pair.
    pub fn third(&self) -> usize {
        N_PIGEONS * (N_PIGEONS - 1) / 2 - self.a - self.b
    }

    /// Whether basis index `k` has pigeons `a` and `b` in the same box.
    pub fn same_box(&self, k: usize) -> bool {
        (k >> self.a) & 1 == (k >> self.b) & 1
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a, self.b)
    }
}

fn indicator(pred: impl Fn(usize) -> bool) -> LinearOperator {
    let diag: Vec<Complex64> = (0..DIM)
        .map(|k| Complex64::new(if pred(k) { 1.0 } else { 0.0 }, 0.0))
        .collect();
    LinearOperator::diagonal(&diag)
}

/// `Π_ab`: projector onto states with pigeons `a` and `b` in the same box.
pub fn pi_ab(a: usize, b: usize) -> Result<LinearOperator> {
    Ok(pi_pair(Pair::new(a, b)?))
}

pub fn pi_pair(pair: Pair) -> LinearOperator {
    indicator(|k| pair.same_box(k))
}

/// `P = |000⟩⟨000| + |111⟩⟨111|`: all three pigeons share a box.
pub fn big_p() -> LinearOperator {
    indicator(|k| k == 0 || k == DIM - 1)
}

/// `p_ab = Π_ab - P`: `a` and `b` together, the third pigeon elsewhere.
pub fn small_p_ab(a: usize, b: usize) -> Result<LinearOperator> {
    Ok(small_p_pair(Pair::new(a, b)?))
}

pub fn small_p_pair(pair: Pair) -> LinearOperator {
    pi_pair(pair).sub(&big_p())
}

/// `p = p_01 + p_12 + p_02`: exactly one pair shares a box.
pub fn small_p() -> LinearOperator {
    Pair::ALL
        .iter()
        .fold(LinearOperator::zeros(DIM), |acc, pair| acc.add(&small_p_pair(*pair)))
}

/// `Π = Π_01 + Π_12 + Π_20`. Hermitian with spectrum {1, 3}; not a projector.
pub fn big_pi() -> LinearOperator {
    Pair::ALL
        .iter()
        .fold(LinearOperator::zeros(DIM), |acc, pair| acc.add(&pi_pair(*pair)))
}

pub fn identity() -> LinearOperator {
    LinearOperator::identity(DIM)
}

/// One line of an [`IdentityReport`].
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
    /// Eigenvalues of `Π`, ascending.
    pub pi_eigenvalues: Vec<f64>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }
}

/// Expected spectrum of `Π`, ascending.
pub const PI_SPECTRUM: [f64; DIM] = [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0, 3.0];

/// Checks the completeness relations, pairwise products, commutators,
/// projector laws and the spectrum of `Π`, each against `tolerance`.
pub fn verify_identities(tolerance: f64) -> Result<IdentityReport> {
    if tolerance.is_nan() || tolerance <= 0.0 || !tolerance.is_finite() {
        return Err(Error::arg(format!("tolerance must be positive, got {tolerance}")));
    }
    let one = identity();
    let p_all = big_p();
    let pi = big_pi();
    let mut checks = Vec::new();
    let mut push = |name: String, deviation: f64| {
        checks.push(IdentityCheck { name, deviation, pass: deviation <= tolerance });
    };

    push("1 - (p + P)".into(), one.max_abs_diff(&small_p().add(&p_all)));
    push(
        "1 - (Pi - 2P)".into(),
        one.max_abs_diff(&pi.sub(&p_all.scale(Complex64::new(2.0, 0.0)))),
    );

    for x in Pair::ALL {
        for y in Pair::ALL {
            if x == y {
                continue;
            }
            let product = pi_pair(x).matmul(&pi_pair(y));
            push(format!("Pi_{x} Pi_{y} - P"), product.max_abs_diff(&p_all));
        }
    }
    for (i, x) in Pair::ALL.iter().enumerate() {
        for y in &Pair::ALL[i + 1..] {
            push(format!("[Pi_{x}, Pi_{y}]"), pi_pair(*x).commutator(&pi_pair(*y)).max_abs());
        }
    }

    let mut projectors: Vec<(String, LinearOperator)> = Vec::new();
    for pair in Pair::ALL {
        projectors.push((format!("Pi_{pair}"), pi_pair(pair)));
    }
    projectors.push(("P".into(), p_all.clone()));
    for pair in Pair::ALL {
        projectors.push((format!("p_{pair}"), small_p_pair(pair)));
    }
    projectors.push(("p".into(), small_p()));
    for (name, op) in &projectors {
        push(
            format!("{name} projector defect"),
            op.idempotency_defect().max(op.hermiticity_defect()),
        );
    }

    let pi_eigenvalues = pi.eigenvalues()?;
    let spectrum_dev = pi_eigenvalues
        .iter()
        .zip(PI_SPECTRUM)
        .map(|(got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    push("spectrum(Pi) - {1x6, 3x2}".into(), spectrum_dev);

    let pass = checks.iter().all(|c| c.pass);
    Ok(IdentityReport { tolerance, checks, pi_eigenvalues, pass })
}

/// Dimensionless product `ε·t` of coupling strength and interaction time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EvolutionParams {
    epsilon_t: f64,
}

impl EvolutionParams {
    pub fn new(epsilon_t: f64) -> Result<Self> {
        if !epsilon_t.is_finite() {
            return Err(Error::arg("epsilon_t must be finite"));
        }
        Ok(EvolutionParams { epsilon_t })
    }

    pub fn epsilon_t(&self) -> f64 {
        self.epsilon_t
    }
}

/// `exp(-i εt Π) = e^{-iεt} Π + (e^{-3iεt} - 3e^{-iεt}) P`.
pub fn evolution_exact(params: EvolutionParams) -> LinearOperator {
    let x = params.epsilon_t;
    let e1 = Complex64::from_polar(1.0, -x);
    let e3 = Complex64::from_polar(1.0, -3.0 * x);
    big_pi().scale(e1).add(&big_p().scale(e3 - e1 * 3.0))
}

/// `exp(-i εt Π)` by Taylor scaling and squaring, independent of the
/// projector algebra used in [`evolution_exact`].
pub fn evolution_oracle(params: EvolutionParams) -> LinearOperator {
    let generator = big_pi().scale(Complex64::new(0.0, -params.epsilon_t));
    expm::expm(&generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn basis(k: usize) -> StateVector {
        StateVector::basis_state(3, k).unwrap()
    }

    fn zero() -> StateVector {
        StateVector::from_amplitudes(3, vec![Complex64::new(0.0, 0.0); 8]).unwrap()
    }

    #[test]
    fn pi_ab_action() {
        let pi01 = pi_ab(0, 1).unwrap();
        assert_eq!(pi01.apply(&basis(0b000)).unwrap(), basis(0b000));
        assert_eq!(pi01.apply(&basis(0b001)).unwrap(), zero());
        assert!(pi01.is_projector());
    }

    #[test]
    fn pi_ab_traces() {
        // Brute-force count of basis states with equal bits a, b.
        for (a, b) in [(0, 1), (1, 2), (0, 2), (2, 0)] {
            let count = (0..8).filter(|k| (k >> a) & 1 == (k >> b) & 1).count();
            assert_eq!(count, 4);
            let tr = pi_ab(a, b).unwrap().trace();
            assert!((tr - Complex64::new(count as f64, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn pair_validation() {
        assert!(matches!(pi_ab(1, 1), Err(Error::Argument(_))));
        assert!(pi_ab(0, 3).is_err());
        assert!(small_p_ab(2, 2).is_err());
        assert_eq!(Pair::new(2, 0).unwrap(), Pair::new(0, 2).unwrap());
        assert_eq!(Pair::new(2, 0).unwrap().third(), 1);
        assert_eq!(pi_ab(2, 0).unwrap(), pi_ab(0, 2).unwrap());
    }

    #[test]
    fn big_p_structure() {
        let p = big_p();
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j && (i == 0 || i == 7) { 1.0 } else { 0.0 };
                assert_eq!(p.entry(i, j), Complex64::new(want, 0.0));
            }
        }
        assert_eq!(p.apply(&basis(0)).unwrap(), basis(0));
        assert_eq!(p.apply(&basis(0b010)).unwrap(), zero());
    }

    #[test]
    fn pairwise_products_equal_big_p() {
        let p = big_p();
        for x in Pair::ALL {
            for y in Pair::ALL {
                if x != y {
                    assert!(pi_pair(x).matmul(&pi_pair(y)).max_abs_diff(&p) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn small_p_action() {
        let p01 = small_p_ab(0, 1).unwrap();
        assert_eq!(p01.apply(&basis(0b001)).unwrap(), zero());
        assert_eq!(p01.apply(&basis(0b100)).unwrap(), basis(0b100));
        assert_eq!(p01.apply(&basis(0b000)).unwrap(), zero());
    }

    #[test]
    fn ranks() {
        for pair in Pair::ALL {
            assert_eq!(pi_pair(pair).rank().unwrap(), 4);
            // Π_ab minus the two all-same states leaves two basis states.
            let support = (0..DIM).filter(|k| pair.same_box(*k) && *k != 0 && *k != DIM - 1).count();
            assert_eq!(support, 2);
            assert_eq!(small_p_pair(pair).rank().unwrap(), support);
            assert!(small_p_pair(pair).is_projector());
        }
        assert_eq!(big_p().rank().unwrap(), 2);
        assert_eq!(small_p().rank().unwrap(), 6);
        assert!(small_p().is_projector());
    }

    #[test]
    fn big_pi_is_hermitian_not_projector() {
        let pi = big_pi();
        assert!(pi.is_hermitian());
        assert!(!pi.is_projector());
        let ev = pi.eigenvalues().unwrap();
        for (got, want) in ev.iter().zip(PI_SPECTRUM) {
            assert!((got - want).abs() <= 1e-10, "{ev:?}");
        }
    }

    #[test]
    fn completeness() {
        assert!(small_p().add(&big_p()).max_abs_diff(&identity()) <= 1e-12);
        let two_p = big_p().scale(Complex64::new(2.0, 0.0));
        assert!(big_pi().sub(&two_p).max_abs_diff(&identity()) <= 1e-12);
    }

    #[test]
    fn identity_report_passes() {
        let report = verify_identities(1e-12).unwrap();
        assert!(report.pass, "{report:#?}");
        assert_eq!(report.check("1 - (Pi - 2P)").unwrap().deviation, 0.0);
        assert_eq!(report.check("[Pi_01, Pi_12]").unwrap().deviation, 0.0);
        assert!(verify_identities(0.0).is_err());
        assert!(verify_identities(-1.0).is_err());
    }

    #[test]
    fn evolution_special_points() {
        let u0 = evolution_exact(EvolutionParams::new(0.0).unwrap());
        assert!(u0.max_abs_diff(&identity()) <= 1e-12);
        // εt = π: -Π + 2P = -(Π - 2P) = -1.
        let upi = evolution_exact(EvolutionParams::new(PI).unwrap());
        let minus_one = identity().scale(Complex64::new(-1.0, 0.0));
        assert!(upi.max_abs_diff(&minus_one) <= 1e-12);
    }

    #[test]
    fn evolution_factored_form() {
        // e^{-iεt}[1 + (e^{-2iεt} - 1) P]
        for x in [0.3, 1.1, -2.0, 5.5] {
            let e1 = Complex64::from_polar(1.0, -x);
            let e2 = Complex64::from_polar(1.0, -2.0 * x);
            let factored = identity().add(&big_p().scale(e2 - 1.0)).scale(e1);
            let exact = evolution_exact(EvolutionParams::new(x).unwrap());
            assert!(exact.max_abs_diff(&factored) <= 1e-12);
            assert!(exact.unitarity_defect() <= 1e-12);
        }
    }

    #[test]
    fn oracle_matches_exact() {
        let u0 = evolution_oracle(EvolutionParams::new(0.0).unwrap());
        assert!(u0.max_abs_diff(&identity()) <= 1e-15);
        let p = EvolutionParams::new(0.1).unwrap();
        assert!(evolution_oracle(p).max_abs_diff(&evolution_exact(p)) <= 1e-10);
        let fwd = evolution_oracle(EvolutionParams::new(0.7).unwrap());
        let back = evolution_oracle(EvolutionParams::new(-0.7).unwrap());
        assert!(fwd.matmul(&back).max_abs_diff(&identity()) <= 1e-10);
    }

    #[test]
    fn params_reject_nonfinite() {
        assert!(EvolutionParams::new(f64::INFINITY).is_err());
        assert!(EvolutionParams::new(f64::NAN).is_err());
    }

    #[test]
    fn operator_constructor_checks() {
        assert!(LinearOperator::new(2, vec![Complex64::new(1.0, 0.0); 3]).is_err());
        let op = LinearOperator::new(1, vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert!(op.is_projector());
        assert!(op.apply(&StateVector::basis_state(1, 0).unwrap()).is_err());
    }
}
