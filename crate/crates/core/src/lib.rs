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

//! Exact state-vector simulation of the three-pigeon, two-box problem.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`]: complex state vectors, the small gate set used by the
//!   circuits, and the named product states `|+++⟩` and `|+i+i+i⟩`.
//! * [`ops`]: dense operators on the three-qubit space (the same-box
//!   projectors `Π_ab`, `P`, `p_ab`, `p`, and the sum `Π`), the operator
//!   identities they satisfy, and the time-evolution operator generated by
//!   `εΠ` together with an independent matrix-exponential oracle.
//! * [`amplitudes`]: matrix elements and transition probabilities between
//!   `|+++⟩` and the eight `|±i⟩`-basis product states.
//! * [`circuits`]: a tiny circuit IR, the two five-qubit ancilla circuits,
//!   ideal evaluation, seeded shot sampling and OpenQASM 2.0 export.
//! * [`hiddenvars`]: exhaustive enumeration of eigenvalue assignments to the
//!   commuting projector set.
//! * [`cli`]: the command-line front end.
//!
//! Qubit ordering is little-endian throughout: `q[0]` is the least
//! significant bit of a basis index and is written rightmost in kets.

pub mod amplitudes;
pub mod circuits;
pub mod cli;
mod error;
pub mod hiddenvars;
pub mod ops;
pub mod qstate;

pub use error::{Error, Result};

/// Default absolute tolerance for equality checks on amplitudes and matrices.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
