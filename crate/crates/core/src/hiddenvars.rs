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

//! Eigenvalue assignments to the commuting projectors `Π_01, Π_12, Π_02, P`.
//!
//! A hidden-variable model attaches a value in {0, 1} to each projector.
//! Because the operators commute, any joint measurement must respect the
//! operator relations as value relations:
//!
//! * `1 = v(Π) - 2v(P)` with `v(Π) = v01 + v12 + v02`;
//! * `v(Π_ab)·v(Π_cd) = v(P)` for each pair of distinct pairs.
//!
//! Enumerating all 16 candidates shows that exactly the four assignments
//! produced by real box placements survive, and none has every `v(Π_ab) = 0`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

/// Candidate values `(v01, v12, v02, vP)`, each 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HVAssignment {
    pub v01: u8,
    pub v12: u8,
    pub v02: u8,
    pub vp: u8,
}

impl HVAssignment {
    /// Builds an assignment from a 4-bit code `v01 | v12<<1 | v02<<2 | vP<<3`.
    pub fn from_code(code: u8) -> Self {
        HVAssignment {
            v01: code & 1,
            v12: (code >> 1) & 1,
            v02: (code >> 2) & 1,
            vp: (code >> 3) & 1,
        }
    }

    /// `v(Π) = v01 + v12 + v02`.
    pub fn v_pi(&self) -> u8 {
        self.v01 + self.v12 + self.v02
    }

    /// Values of `p_ab = Π_ab - P` implied by the assignment, in the order
    /// `01, 12, 02`. May be -1 for invalid candidates.
    pub fn derived_small_p(&self) -> [i8; 3] {
        let vp = self.vp as i8;
        [self.v01 as i8 - vp, self.v12 as i8 - vp, self.v02 as i8 - vp]
    }

    pub fn check(&self) -> ConstraintCheck {
        ConstraintCheck {
            identity: i16::from(self.v_pi()) - 2 * i16::from(self.vp) == 1,
            product_01_12: self.v01 * self.v12 == self.vp,
            product_01_02: self.v01 * self.v02 == self.vp,
            product_12_02: self.v12 * self.v02 == self.vp,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.check().all(Constraints::ALL)
    }

    /// No pair of pigeons shares a box.
    pub fn all_pairs_apart(&self) -> bool {
        self.v01 == 0 && self.v12 == 0 && self.v02 == 0
    }
}

/// Outcome of each value constraint for one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub identity: bool,
    pub product_01_12: bool,
    pub product_01_02: bool,
    pub product_12_02: bool,
}

impl ConstraintCheck {
    pub fn all(&self, which: Constraints) -> bool {
        (!which.identity || self.identity)
            && (!which.products
                || (self.product_01_12 && self.product_01_02 && self.product_12_02))
    }
}

/// Which constraint families are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraints {
    /// `1 = v(Π) - 2v(P)`.
    pub identity: bool,
    /// `v(Π_ab)·v(Π_cd) = v(P)`.
    pub products: bool,
}

impl Constraints {
    pub const ALL: Constraints = Constraints { identity: true, products: true };
    pub const PRODUCTS_ONLY: Constraints = Constraints { identity: false, products: true };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub assignment: HVAssignment,
    pub v_pi: u8,
    pub constraints: ConstraintCheck,
    pub derived_small_p: [i8; 3],
    pub valid: bool,
}

/// All 16 candidates with their constraint outcomes.
pub fn enumerate_hv() -> Vec<Candidate> {
    enumerate_with(Constraints::ALL)
}

pub fn enumerate_with(which: Constraints) -> Vec<Candidate> {
    (0..16u8)
        .map(HVAssignment::from_code)
        .map(|a| {
            let constraints = a.check();
            Candidate {
                assignment: a,
                v_pi: a.v_pi(),
                constraints,
                derived_small_p: a.derived_small_p(),
                valid: constraints.all(which),
            }
        })
        .collect()
}

pub fn valid_set() -> BTreeSet<HVAssignment> {
    enumerate_hv().into_iter().filter(|c| c.valid).map(|c| c.assignment).collect()
}

/// Box of each pigeon, `boxes[k] ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoxAssignment {
    pub boxes: [u8; 3],
}

impl BoxAssignment {
    /// All eight placements; bit `k` of the index is the box of pigeon `k`.
    pub fn all() -> Vec<BoxAssignment> {
        (0..8u8)
            .map(|k| BoxAssignment { boxes: [k & 1, (k >> 1) & 1, (k >> 2) & 1] })
            .collect()
    }

    pub fn values(&self) -> HVAssignment {
        let same = |a: usize, b: usize| u8::from(self.boxes[a] == self.boxes[b]);
        let all = u8::from(self.boxes[0] == self.boxes[1] && self.boxes[1] == self.boxes[2]);
        HVAssignment { v01: same(0, 1), v12: same(1, 2), v02: same(0, 2), vp: all }
    }
}

/// Projector values read off each classical box placement.
pub fn classical_oracle() -> BTreeMap<BoxAssignment, HVAssignment> {
    BoxAssignment::all().into_iter().map(|b| (b, b.values())).collect()
}

/// Whether some valid assignment has every pair in different boxes.
pub fn pcp_violation_exists() -> bool {
    pcp_violation_exists_with(Constraints::ALL)
}

pub fn pcp_violation_exists_with(which: Constraints) -> bool {
    enumerate_with(which).iter().any(|c| c.valid && c.assignment.all_pairs_apart())
}

#[derive(Debug, Clone, Serialize)]
pub struct HiddenVarReport {
    pub candidates: Vec<Candidate>,
    pub valid: Vec<HVAssignment>,
    pub classical_image_matches: bool,
    pub pcp_violation_exists: bool,
    pub pcp_violation_without_identity: bool,
}

pub fn report() -> HiddenVarReport {
    let valid = valid_set();
    let image: BTreeSet<HVAssignment> = classical_oracle().into_values().collect();
    HiddenVarReport {
        candidates: enumerate_hv(),
        classical_image_matches: image == valid,
        valid: valid.into_iter().collect(),
        pcp_violation_exists: pcp_violation_exists(),
        pcp_violation_without_identity: pcp_violation_exists_with(Constraints::PRODUCTS_ONLY),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(v01: u8, v12: u8, v02: u8, vp: u8) -> HVAssignment {
        HVAssignment { v01, v12, v02, vp }
    }

    #[test]
    fn specific_candidates() {
        let zero = hv(0, 0, 0, 0);
        assert!(!zero.is_valid());
        assert!(!zero.check().identity);
        assert!(hv(1, 1, 1, 1).is_valid());
        assert!(hv(0, 1, 0, 0).is_valid());
        assert!(!hv(1, 1, 0, 0).is_valid());
    }

    #[test]
    fn exactly_four_valid() {
        let all = enumerate_hv();
        assert_eq!(all.len(), 16);
        let valid = valid_set();
        let expected: BTreeSet<_> =
            [hv(1, 0, 0, 0), hv(0, 1, 0, 0), hv(0, 0, 1, 0), hv(1, 1, 1, 1)].into();
        assert_eq!(valid, expected);
    }

    #[test]
    fn classical_boxes() {
        let oracle = classical_oracle();
        assert_eq!(oracle.len(), 8);
        assert_eq!(oracle[&BoxAssignment { boxes: [0, 0, 0] }], hv(1, 1, 1, 1));
        assert_eq!(oracle[&BoxAssignment { boxes: [1, 1, 1] }], hv(1, 1, 1, 1));
        assert_eq!(oracle[&BoxAssignment { boxes: [0, 1, 1] }], hv(0, 1, 0, 0));
        let image: BTreeSet<_> = oracle.into_values().collect();
        assert_eq!(image, valid_set());
    }

    #[test]
    fn no_violation_unless_identity_dropped() {
        assert!(!pcp_violation_exists());
        assert!(pcp_violation_exists_with(Constraints::PRODUCTS_ONLY));
    }

    #[test]
    fn spectrum_echo() {
        for a in valid_set() {
            assert!(a.v_pi() == 1 || a.v_pi() == 3);
            assert_eq!(a.vp, (a.v_pi() - 1) / 2);
            assert!(a.derived_small_p().iter().all(|v| *v == 0 || *v == 1));
        }
    }

    #[test]
    fn permutation_symmetric() {
        let valid = valid_set();
        // Permuting pigeons permutes the pair slots (01, 12, 02).
        let perms: [fn(HVAssignment) -> HVAssignment; 3] = [
            |a| hv(a.v12, a.v01, a.v02, a.vp),
            |a| hv(a.v02, a.v12, a.v01, a.vp),
            |a| hv(a.v01, a.v02, a.v12, a.vp),
        ];
        for p in perms {
            let image: BTreeSet<_> = valid.iter().map(|a| p(*a)).collect();
            assert_eq!(image, valid);
        }
    }

    #[test]
    fn report_summary() {
        let r = report();
        assert_eq!(r.valid.len(), 4);
        assert!(r.classical_image_matches);
        assert!(!r.pcp_violation_exists);
        assert!(r.pcp_violation_without_identity);
    }
}
