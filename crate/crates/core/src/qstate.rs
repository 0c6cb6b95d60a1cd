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

//! Complex state vectors and single/two-qubit gate application.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

/// Complex amplitude type used throughout the crate.
pub type ComplexAmp = Complex64;

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

/// Sign of a `|±⟩` or `|±i⟩` single-qubit factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl TryFrom<i32> for Sign {
    type Error = Error;

    fn try_from(v: i32) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::arg(format!("sign must be +1 or -1, got {other}"))),
        }
    }
}

/// A gate or circuit directive.
///
/// Only `H`, `X`, `Rx` and `Cx` act on the state; `Barrier` is a no-op and
/// `Measure` is interpreted by [`crate::circuits`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    H { qubit: usize },
    X { qubit: usize },
    /// Rotation `exp(-i θ σx / 2)`.
    Rx { qubit: usize, theta: f64 },
    Cx { control: usize, target: usize },
    Barrier,
    Measure { qubit: usize, cbit: usize },
}

impl Gate {
    pub fn is_unitary(&self) -> bool {
        !matches!(self, Gate::Measure { .. })
    }

    /// Qubits touched by the gate, in (control, target) order for `Cx`.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H { qubit } | Gate::X { qubit } | Gate::Rx { qubit, .. } => vec![qubit],
            Gate::Cx { control, target } => vec![control, target],
            Gate::Measure { qubit, .. } => vec![qubit],
            Gate::Barrier => Vec::new(),
        }
    }

    /// 2×2 matrix of a single-qubit gate, row-major.
    pub fn single_qubit_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match *self {
            Gate::H { .. } => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                Some([[h, h], [h, -h]])
            }
            Gate::X { .. } => Some([[zero, one], [one, zero]]),
            Gate::Rx { theta, .. } => {
                let c = Complex64::new((theta / 2.0).cos(), 0.0);
                let s = Complex64::new(0.0, -(theta / 2.0).sin());
                Some([[c, s], [s, c]])
            }
            _ => None,
        }
    }

    pub(crate) fn check_range(&self, n_qubits: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::arg(format!(
                    "qubit index {q} out of range for {n_qubits}-qubit register"
                )));
            }
        }
        if let Gate::Cx { control, target } = *self {
            if control == target {
                return Err(Error::arg(format!("CX control and target are both {control}")));
            }
        }
        if let Gate::Rx { theta, .. } = *self {
            if !theta.is_finite() {
                return Err(Error::arg("RX angle must be finite"));
            }
        }
        Ok(())
    }
}

/// A pure state of an `n`-qubit register, stored as `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
    norm_sq: f64,
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::arg(format!(
            "n_qubits must be in 1..={MAX_QUBITS}, got {n_qubits}"
        )));
    }
    Ok(())
}

fn norm_sq_of(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

impl StateVector {
    /// Builds a state from raw amplitudes. The vector is not normalised.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::arg(format!(
                "expected {} amplitudes for {n_qubits} qubits, got {}",
                1usize << n_qubits,
                amps.len()
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::arg("amplitudes must be finite"));
        }
        let norm_sq = norm_sq_of(&amps);
        Ok(StateVector { n_qubits, amps, norm_sq })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::arg(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps, norm_sq: 1.0 })
    }

    /// `|+⟩^{⊗n}`, the uniform superposition.
    pub fn plus_state(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        let amps = vec![a; dim];
        let norm_sq = norm_sq_of(&amps);
        Ok(StateVector { n_qubits, amps, norm_sq })
    }

    /// Product of `(|0⟩ + i·s_k|1⟩)/√2` factors, `signs[k]` for qubit `q[k]`.
    pub fn plus_i_state(signs: &[Sign]) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::arg("plus_i_state needs at least one sign"));
        }
        let n_qubits = signs.len();
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        let scale = (dim as f64).sqrt().recip();
        let amps: Vec<Complex64> = (0..dim)
            .map(|k| {
                signs
                    .iter()
                    .enumerate()
                    .filter(|(q, _)| (k >> q) & 1 == 1)
                    .fold(Complex64::new(scale, 0.0), |acc, (_, s)| {
                        acc * Complex64::new(0.0, s.value())
                    })
            })
            .collect();
        let norm_sq = norm_sq_of(&amps);
        Ok(StateVector { n_qubits, amps, norm_sq })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// Cached `Σ|a_k|²`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|ket⟩ = Σ conj(self_k)·ket_k`.
    pub fn inner_product(&self, ket: &StateVector) -> Result<Complex64> {
        if self.n_qubits != ket.n_qubits {
            return Err(Error::arg(format!(
                "inner product of {}-qubit bra with {}-qubit ket",
                self.n_qubits, ket.n_qubits
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&ket.amps)
            .map(|(b, k)| b.conj() * k)
            .sum())
    }

    /// Largest elementwise deviation after removing the relative global phase.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        let overlap = self.inner_product(other)?;
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest elementwise deviation `max_k |self_k - other_k|`.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::arg("dimension mismatch"));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Returns `U·self` for a unitary gate (barriers return a copy).
    pub fn apply_gate(&self, gate: &Gate) -> Result<StateVector> {
        let mut out = self.clone();
        out.apply_gate_in_place(gate)?;
        Ok(out)
    }

    /// Applies a unitary gate in place by strided pair updates.
    pub fn apply_gate_in_place(&mut self, gate: &Gate) -> Result<()> {
        if !gate.is_unitary() {
            return Err(Error::Contract(
                "measurement cannot be applied as a unitary gate".into(),
            ));
        }
        gate.check_range(self.n_qubits)?;
        match *gate {
            Gate::Barrier => return Ok(()),
            Gate::Cx { control, target } => self.apply_cx(control, target),
            Gate::H { qubit } | Gate::X { qubit } | Gate::Rx { qubit, .. } => {
                let m = gate.single_qubit_matrix().expect("single-qubit gate");
                self.apply_single(qubit, &m);
            }
            Gate::Measure { .. } => unreachable!(),
        }
        self.norm_sq = norm_sq_of(&self.amps);
        Ok(())
    }

    fn apply_single(&mut self, qubit: usize, m: &[[Complex64; 2]; 2]) {
        let stride = 1usize << qubit;
        let dim = self.amps.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + stride {
                let j = i + stride;
                let a0 = self.amps[i];
                let a1 = self.amps[j];
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[j] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += 2 * stride;
        }
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
    }
}

impl fmt::Display for StateVector {
    /// Lists nonzero terms as `(re+imi)|bits⟩`, `q[0]` rightmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-15 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({a})|{:0width$b}⟩", k, width = self.n_qubits)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-12
    }

    #[test]
    fn basis_states() {
        let s = StateVector::basis_state(1, 0).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        let s = StateVector::basis_state(3, 0).unwrap();
        assert_eq!(s.amplitude(0), c(1.0, 0.0));
        assert_eq!(s.norm_sq(), 1.0);
        let s = StateVector::basis_state(2, 3).unwrap();
        assert_eq!(s.amplitudes(), &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn basis_state_rejects_bad_arguments() {
        assert!(matches!(StateVector::basis_state(2, 4), Err(Error::Argument(_))));
        assert!(matches!(StateVector::basis_state(0, 0), Err(Error::Argument(_))));
        assert!(matches!(StateVector::basis_state(25, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn hadamard_on_zero() {
        let s = StateVector::basis_state(1, 0).unwrap();
        let out = s.apply_gate(&Gate::H { qubit: 0 }).unwrap();
        let h = 1.0 / SQRT_2;
        assert!(close(out.amplitude(0), c(h, 0.0)));
        assert!(close(out.amplitude(1), c(h, 0.0)));
    }

    #[test]
    fn cx_truth_table_little_endian() {
        // a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩ with q[0] rightmost.
        let (a, b, cc, d) = (c(0.1, 0.0), c(0.2, 0.3), c(0.4, -0.1), c(0.0, 0.5));
        let s = StateVector::from_amplitudes(2, vec![a, b, cc, d]).unwrap();
        let out = s.apply_gate(&Gate::Cx { control: 0, target: 1 }).unwrap();
        // b|01⟩ → b|11⟩, d|11⟩ → d|01⟩
        assert_eq!(out.amplitudes(), &[a, d, cc, b]);
    }

    #[test]
    fn rx_half_pi_maps_plus_i_to_zero() {
        let rx = Gate::Rx { qubit: 0, theta: FRAC_PI_2 };
        let plus_i = StateVector::plus_i_state(&[Sign::Plus]).unwrap();
        let out = plus_i.apply_gate(&rx).unwrap();
        assert!(close(out.amplitude(0), c(1.0, 0.0)));
        assert!(close(out.amplitude(1), c(0.0, 0.0)));

        let minus_i = StateVector::plus_i_state(&[Sign::Minus]).unwrap();
        let out = minus_i.apply_gate(&rx).unwrap();
        let one = StateVector::basis_state(1, 1).unwrap();
        assert!(out.distance_up_to_phase(&one).unwrap() <= 1e-12);
    }

    #[test]
    fn measure_is_rejected() {
        let s = StateVector::basis_state(1, 0).unwrap();
        let err = s.apply_gate(&Gate::Measure { qubit: 0, cbit: 0 }).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn barrier_is_noop() {
        let s = StateVector::plus_i_state(&[Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(s.apply_gate(&Gate::Barrier).unwrap(), s);
    }

    #[test]
    fn gate_range_checks() {
        let s = StateVector::basis_state(2, 0).unwrap();
        assert!(s.apply_gate(&Gate::H { qubit: 2 }).is_err());
        assert!(s.apply_gate(&Gate::Cx { control: 1, target: 1 }).is_err());
        assert!(s.apply_gate(&Gate::Rx { qubit: 0, theta: f64::NAN }).is_err());
    }

    #[test]
    fn plus_states() {
        let s = StateVector::plus_state(3).unwrap();
        let expected = 1.0 / (2.0 * SQRT_2);
        assert!(s.amplitudes().iter().all(|a| close(*a, c(expected, 0.0))));
        let s = StateVector::plus_state(1).unwrap();
        assert!(s.amplitudes().iter().all(|a| close(*a, c(1.0 / SQRT_2, 0.0))));
        let s = StateVector::plus_state(2).unwrap();
        assert!(s.amplitudes().iter().all(|a| close(*a, c(0.5, 0.0))));
    }

    #[test]
    fn plus_i_three_qubits() {
        let s = StateVector::plus_i_state(&[Sign::Plus; 3]).unwrap();
        let k = 1.0 / (2.0 * SQRT_2);
        let expected = [
            c(1.0, 0.0),
            c(0.0, 1.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
            c(-1.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
        ];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert!(close(*a, e * k), "{a} vs {}", e * k);
        }
        assert!((s.norm_sq() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn plus_i_single_minus() {
        let s = StateVector::plus_i_state(&[Sign::Minus]).unwrap();
        assert!(close(s.amplitude(0), c(1.0 / SQRT_2, 0.0)));
        assert!(close(s.amplitude(1), c(0.0, -1.0 / SQRT_2)));
    }

    #[test]
    fn plus_i_all_minus_is_conjugate() {
        let p = StateVector::plus_i_state(&[Sign::Plus; 3]).unwrap();
        let m = StateVector::plus_i_state(&[Sign::Minus; 3]).unwrap();
        for (a, b) in p.amplitudes().iter().zip(m.amplitudes()) {
            assert!(close(a.conj(), *b));
        }
    }

    #[test]
    fn plus_i_rejects_empty() {
        assert!(StateVector::plus_i_state(&[]).is_err());
        assert!(Sign::try_from(0).is_err());
        assert_eq!(Sign::try_from(-1).unwrap(), Sign::Minus);
    }

    #[test]
    fn inner_products() {
        let plus = StateVector::plus_state(3).unwrap();
        assert!(close(plus.inner_product(&plus).unwrap(), c(1.0, 0.0)));

        // ⟨+i|+⟩ = (1 - i)/2 per factor, cubed.
        let factor = c(0.5, -0.5);
        let expected = factor * factor * factor;
        assert!(close(expected, c(-0.25, -0.25)));
        let plus_i = StateVector::plus_i_state(&[Sign::Plus; 3]).unwrap();
        let got = plus_i.inner_product(&plus).unwrap();
        assert!(close(got, expected));
        assert!((got.norm_sqr() - 0.125).abs() <= 1e-12);

        let zero = StateVector::basis_state(3, 0).unwrap();
        assert!(close(zero.inner_product(&plus).unwrap(), c(1.0 / (2.0 * SQRT_2), 0.0)));

        let one_qubit = StateVector::basis_state(1, 0).unwrap();
        assert!(one_qubit.inner_product(&plus).is_err());
    }

    #[test]
    fn plus_state_matches_hadamard_layer() {
        for n in 1..=6 {
            let mut s = StateVector::basis_state(n, 0).unwrap();
            for q in 0..n {
                s.apply_gate_in_place(&Gate::H { qubit: q }).unwrap();
            }
            let p = StateVector::plus_state(n).unwrap();
            assert!(s.max_abs_diff(&p).unwrap() <= 1e-15);
        }
    }

    #[test]
    fn display_lists_terms() {
        let s = StateVector::basis_state(2, 1).unwrap();
        assert_eq!(s.to_string(), "(1+0i)|01⟩");
    }
}
