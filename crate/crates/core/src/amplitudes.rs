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

//! Transition amplitudes from `|+++⟩` to the eight `|±i⟩`-basis product
//! states.
//!
//! Every quantity is computed twice: once numerically from the operators in
//! [`crate::ops`] and once from closed forms. With pigeons `a = q[0]`,
//! `b = q[1]`, `c = q[2]` and `s_k = ±1` the `|±i⟩` sign of pigeon `k`:
//!
//! * `⟨s|Π_ab|+++⟩ = 0` when `s_a = s_b`, else `e^{-i s_c π/4} / √8`
//!   (with `c` the pigeon outside the pair);
//! * `⟨s|P|+++⟩ = e^{i s_0 s_1 s_2 π/4} / √32`;
//! * `|⟨s|e^{-iεtΠ}|+++⟩|² = (4 - 3cos²εt)/8` if all signs agree, else
//!   `cos²εt / 8`.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::ops::{self, EvolutionParams, Pair, N_PIGEONS};
use crate::qstate::{Sign, StateVector};
use crate::{Error, Result};

/// Phase convention under which the closed forms above hold.
pub const PHASE_CONVENTION: &str = "a=q[0], b=q[1], c=q[2]; \
<s|Pi_ab|+++> = exp(-i*s_c*pi/4)/sqrt(8) if s_a != s_b else 0; \
<s|P|+++> = exp(i*s_0*s_1*s_2*pi/4)/sqrt(32)";

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;

/// A final state `|(s_2 i)(s_1 i)(s_0 i)⟩`; `signs[k]` belongs to `q[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinalStateLabel {
    signs: [Sign; N_PIGEONS],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AmplitudeClass {
    AllSameSign,
    OneMinoritySign,
}

impl fmt::Display for AmplitudeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmplitudeClass::AllSameSign => "ALL_SAME_SIGN",
            AmplitudeClass::OneMinoritySign => "ONE_MINORITY_SIGN",
        })
    }
}

impl FinalStateLabel {
    pub fn new(signs: [Sign; N_PIGEONS]) -> Self {
        FinalStateLabel { signs }
    }

    /// Label whose bit `k` is set when `q[k]` carries `-i`. This is the
    /// computational-basis outcome after an `Rx(π/2)` layer.
    pub fn from_bits(bits: usize) -> Result<Self> {
        if bits >= 1 << N_PIGEONS {
            return Err(Error::arg(format!("label bits {bits} out of range")));
        }
        let mut signs = [Sign::Plus; N_PIGEONS];
        for (k, s) in signs.iter_mut().enumerate() {
            if (bits >> k) & 1 == 1 {
                *s = Sign::Minus;
            }
        }
        Ok(FinalStateLabel { signs })
    }

    /// All eight labels ordered by [`FinalStateLabel::bits`].
    pub fn all() -> Vec<FinalStateLabel> {
        (0..1 << N_PIGEONS).map(|b| Self::from_bits(b).unwrap()).collect()
    }

    pub fn bits(&self) -> usize {
        self.signs
            .iter()
            .enumerate()
            .map(|(k, s)| usize::from(*s == Sign::Minus) << k)
            .sum()
    }

    pub fn signs(&self) -> [Sign; N_PIGEONS] {
        self.signs
    }

    pub fn sign(&self, pigeon: usize) -> Sign {
        self.signs[pigeon]
    }

    pub fn flipped(&self) -> Self {
        FinalStateLabel { signs: self.signs.map(Sign::flip) }
    }

    pub fn class(&self) -> AmplitudeClass {
        if self.signs.iter().all(|s| *s == self.signs[0]) {
            AmplitudeClass::AllSameSign
        } else {
            AmplitudeClass::OneMinoritySign
        }
    }

    pub fn state(&self) -> StateVector {
        StateVector::plus_i_state(&self.signs).expect("three signs")
    }
}

impl fmt::Display for FinalStateLabel {
    /// Ket order, `q[2]` first: e.g. `+i+i-i` has `q[0]` in `|-i⟩`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs.iter().rev() {
            write!(f, "{}i", s.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for FinalStateLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn plus3() -> StateVector {
    StateVector::plus_state(N_PIGEONS).expect("three qubits")
}

/// `⟨label|Π_ab|+++⟩`, evaluated numerically.
pub fn me_pi_ab(label: FinalStateLabel, a: usize, b: usize) -> Result<Complex64> {
    let pair = Pair::new(a, b)?;
    ops::pi_pair(pair).matrix_element(&label.state(), &plus3())
}

/// Closed form of `⟨label|Π_ab|+++⟩`.
pub fn me_pi_ab_closed(label: FinalStateLabel, pair: Pair) -> Complex64 {
    if label.sign(pair.a()) == label.sign(pair.b()) {
        Complex64::new(0.0, 0.0)
    } else {
        let c = label.sign(pair.third()).value();
        Complex64::from_polar(8f64.sqrt().recip(), -c * FRAC_PI_4)
    }
}

/// `⟨label|P|+++⟩`, evaluated numerically.
pub fn me_big_p(label: FinalStateLabel) -> Complex64 {
    ops::big_p()
        .matrix_element(&label.state(), &plus3())
        .expect("dimensions agree")
}

pub fn me_big_p_closed(label: FinalStateLabel) -> Complex64 {
    let parity: f64 = label.signs.iter().map(|s| s.value()).product();
    Complex64::from_polar(32f64.sqrt().recip(), parity * FRAC_PI_4)
}

/// `⟨label|Π|+++⟩`, evaluated numerically.
pub fn me_big_pi(label: FinalStateLabel) -> Complex64 {
    ops::big_pi()
        .matrix_element(&label.state(), &plus3())
        .expect("dimensions agree")
}

/// Closed-form transition probability for a label class.
pub fn closed_form_prob(class: AmplitudeClass, params: EvolutionParams) -> f64 {
    let c2 = params.epsilon_t().cos().powi(2);
    match class {
        AmplitudeClass::AllSameSign => (4.0 - 3.0 * c2) / 8.0,
        AmplitudeClass::OneMinoritySign => c2 / 8.0,
    }
}

/// `|⟨label|e^{-iεtΠ}|+++⟩|²` from the exact evolution operator.
pub fn numeric_prob(label: FinalStateLabel, params: EvolutionParams) -> f64 {
    ops::evolution_exact(params)
        .matrix_element(&label.state(), &plus3())
        .expect("dimensions agree")
        .norm_sqr()
}

#[derive(Debug, Clone, Serialize)]
pub struct AmplitudeRecord {
    pub label: FinalStateLabel,
    pub epsilon_t: f64,
    pub prob_closed: f64,
    pub prob_numeric: f64,
    pub class: AmplitudeClass,
}

pub fn transition_prob(label: FinalStateLabel, params: EvolutionParams) -> AmplitudeRecord {
    let class = label.class();
    AmplitudeRecord {
        label,
        epsilon_t: params.epsilon_t(),
        prob_closed: closed_form_prob(class, params),
        prob_numeric: numeric_prob(label, params),
        class,
    }
}

/// Records for all eight labels, ordered by label bits.
pub fn amplitude_table(params: EvolutionParams) -> Vec<AmplitudeRecord> {
    let u = ops::evolution_exact(params);
    let plus = plus3();
    let evolved = u.apply(&plus).expect("dimensions agree");
    FinalStateLabel::all()
        .into_iter()
        .map(|label| {
            let class = label.class();
            let prob_numeric = label
                .state()
                .inner_product(&evolved)
                .expect("dimensions agree")
                .norm_sqr();
            AmplitudeRecord {
                label,
                epsilon_t: params.epsilon_t(),
                prob_closed: closed_form_prob(class, params),
                prob_numeric,
                class,
            }
        })
        .collect()
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::arg(format!("finite-difference step must be in (0, 1e-3], got {h}")));
    }
    Ok(())
}

fn all_plus_prob(x: f64) -> f64 {
    let label = FinalStateLabel::new([Sign::Plus; N_PIGEONS]);
    numeric_prob(label, EvolutionParams::new(x).expect("finite"))
}

/// Central-difference slope of the `(+,+,+)` probability at `εt = 0`.
///
/// The slope vanishes because the first-order term is proportional to
/// `Re⟨+i+i+i|Π|+++⟩ = 0`.
pub fn first_order_check(h: f64) -> Result<f64> {
    check_step(h)?;
    Ok((all_plus_prob(h) - all_plus_prob(-h)) / (2.0 * h))
}

/// Central second difference of the `(+,+,+)` probability at `εt = 0`.
/// The closed form gives `1/8 + (3/8)εt² + O(εt⁴)`, so the value is `3/4`.
pub fn second_order_check(h: f64) -> Result<f64> {
    check_step(h)?;
    Ok((all_plus_prob(h) - 2.0 * all_plus_prob(0.0) + all_plus_prob(-h)) / (h * h))
}
