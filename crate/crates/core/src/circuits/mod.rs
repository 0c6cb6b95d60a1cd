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

//! Circuit IR and the two five-qubit ancilla circuits.
//!
//! Both circuits share the same three stages separated by barriers:
//! Hadamards on the pigeon qubits `q[0..3]`, CX gates copying same-box
//! parities onto ancillas, then `Rx(π/2)` on the pigeons so that a
//! computational-basis readout measures them in the `|±i⟩` basis. An
//! ancilla targeted by `CX(a→t)` and `CX(b→t)` reads 0 exactly when pigeons
//! `a` and `b` share a box.
//!
//! Classical bitstrings are written with the highest cbit leftmost, so a key
//! lines up with ket notation.

mod qasm;
mod sampling;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

pub use qasm::{export_qasm, parse_qasm};
pub use sampling::{
    describe_ancilla, postselect_group, sample_shots, GroupedTable, NoiseModel, PigeonGroup, ShotHistogram,
};

use crate::qstate::{Gate, StateVector, MAX_QUBITS};
use crate::{Error, Result};

/// Map from classical bitstring to probability.
pub type Distribution = BTreeMap<String, f64>;

/// Probabilities below this are interference roundoff and are reported as 0.
pub const ROUNDOFF_FLOOR: f64 = 1e-30;

/// Unitary prefix and `(qubit, cbit)` measurements of a circuit.
type SplitCircuit = (Vec<Gate>, Vec<(usize, usize)>);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    n_qubits: usize,
    n_cbits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_cbits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::arg(format!("n_qubits must be in 1..={MAX_QUBITS}")));
        }
        if n_cbits > 64 {
            return Err(Error::arg("at most 64 classical bits are supported"));
        }
        Ok(Circuit { n_qubits, n_cbits, gates: Vec::new() })
    }

    /// Appends a gate after checking indices and classical-bit reuse.
    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.check_range(self.n_qubits)?;
        if let Gate::Measure { cbit, .. } = gate {
            if cbit >= self.n_cbits {
                return Err(Error::arg(format!(
                    "cbit {cbit} out of range for {} classical bits",
                    self.n_cbits
                )));
            }
            if self.measurements().any(|(_, c)| c == cbit) {
                return Err(Error::arg(format!("cbit {cbit} is already written")));
            }
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn h(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(Gate::H { qubit })
    }

    pub fn x(&mut self, qubit: usize) -> Result<&mut Self> {
        self.push(Gate::X { qubit })
    }

    pub fn rx(&mut self, qubit: usize, theta: f64) -> Result<&mut Self> {
        self.push(Gate::Rx { qubit, theta })
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self> {
        self.push(Gate::Cx { control, target })
    }

    pub fn barrier(&mut self) -> Result<&mut Self> {
        self.push(Gate::Barrier)
    }

    pub fn measure(&mut self, qubit: usize, cbit: usize) -> Result<&mut Self> {
        self.push(Gate::Measure { qubit, cbit })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_cbits(&self) -> usize {
        self.n_cbits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of state-changing gates (barriers and measurements excluded).
    pub fn unitary_gate_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, Gate::Barrier | Gate::Measure { .. }))
            .count()
    }

    /// `(qubit, cbit)` pairs in program order.
    pub fn measurements(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.gates.iter().filter_map(|g| match *g {
            Gate::Measure { qubit, cbit } => Some((qubit, cbit)),
            _ => None,
        })
    }

    /// Splits into the unitary prefix and the terminal measurements, or fails
    /// if a measurement is followed by a unitary or a qubit is measured twice.
    fn split_terminal_measurements(&self) -> Result<SplitCircuit> {
        let mut unitaries = Vec::new();
        let mut measured: Vec<(usize, usize)> = Vec::new();
        for gate in &self.gates {
            match *gate {
                Gate::Measure { qubit, cbit } => {
                    if measured.iter().any(|(q, _)| *q == qubit) {
                        return Err(Error::Unsupported(format!(
                            "qubit {qubit} is measured more than once"
                        )));
                    }
                    measured.push((qubit, cbit));
                }
                Gate::Barrier => {}
                g => {
                    if !measured.is_empty() {
                        return Err(Error::Unsupported(
                            "mid-circuit measurement: a gate follows a measurement".into(),
                        ));
                    }
                    unitaries.push(g);
                }
            }
        }
        Ok((unitaries, measured))
    }

    /// Final state of the unitary prefix acting on `|0…0⟩`.
    pub fn final_state(&self) -> Result<StateVector> {
        let (unitaries, _) = self.split_terminal_measurements()?;
        self.run_from(StateVector::basis_state(self.n_qubits, 0)?, &unitaries)
    }

    fn run_from(&self, mut state: StateVector, gates: &[Gate]) -> Result<StateVector> {
        for g in gates {
            state.apply_gate_in_place(g)?;
        }
        Ok(state)
    }

    /// Renders the classical register as a key, highest cbit leftmost.
    pub fn cbit_key(&self, cbits: u64) -> String {
        bit_key(cbits, self.n_cbits)
    }
}

pub(crate) fn bit_key(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|i| if (value >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Exact outcome distribution over every pattern of the measured cbits.
///
/// Unmeasured qubits are summed over; cbits that are never written read 0.
/// Outcomes of zero probability are listed explicitly.
pub fn simulate_ideal(circuit: &Circuit) -> Result<Distribution> {
    let (unitaries, measured) = circuit.split_terminal_measurements()?;
    let state = circuit.run_from(StateVector::basis_state(circuit.n_qubits, 0)?, &unitaries)?;
    Ok(marginalize(circuit, &state, &measured))
}

/// Ideal distribution with the unitary prefix applied to `initial` instead of
/// `|0…0⟩`.
pub fn simulate_from(circuit: &Circuit, initial: &StateVector) -> Result<Distribution> {
    if initial.n_qubits() != circuit.n_qubits {
        return Err(Error::arg("initial state width does not match the circuit"));
    }
    let (unitaries, measured) = circuit.split_terminal_measurements()?;
    let state = circuit.run_from(initial.clone(), &unitaries)?;
    Ok(marginalize(circuit, &state, &measured))
}

fn marginalize(circuit: &Circuit, state: &StateVector, measured: &[(usize, usize)]) -> Distribution {
    let mut dist = Distribution::new();
    for pattern in 0u64..(1u64 << measured.len()) {
        let cbits = measured
            .iter()
            .enumerate()
            .filter(|(i, _)| (pattern >> i) & 1 == 1)
            .fold(0u64, |acc, (_, (_, c))| acc | (1 << c));
        dist.insert(circuit.cbit_key(cbits), 0.0);
    }
    for (k, amp) in state.amplitudes().iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let cbits = measured
            .iter()
            .filter(|(q, _)| (k >> q) & 1 == 1)
            .fold(0u64, |acc, (_, c)| acc | (1 << c));
        *dist.get_mut(&circuit.cbit_key(cbits)).expect("pattern listed") += p;
    }
    // Cancelling amplitudes leave ~1e-33 residues where the probability is 0.
    for p in dist.values_mut() {
        if *p < ROUNDOFF_FLOOR {
            *p = 0.0;
        }
    }
    dist
}

/// Five-qubit circuit measuring `Π_01` on ancilla `q[3]`; `q[4]` is idle.
pub fn build_pi_circuit() -> Circuit {
    let mut c = Circuit::new(5, 5).expect("valid size");
    prepare_pigeons(&mut c);
    c.cx(0, 3).and_then(|c| c.cx(1, 3)).and_then(|c| c.barrier()).expect("valid gates");
    rotate_and_measure(&mut c, &[0, 1, 2, 3]);
    c
}

/// Five-qubit circuit measuring `Π_01` on `q[3]` and `Π_12` on `q[4]`; both
/// ancillas read 0 exactly when all three pigeons share a box.
pub fn build_p_circuit() -> Circuit {
    let mut c = Circuit::new(5, 5).expect("valid size");
    prepare_pigeons(&mut c);
    for (control, target) in [(0, 3), (1, 3), (1, 4), (2, 4)] {
        c.cx(control, target).expect("valid gate");
    }
    c.barrier().expect("valid gate");
    rotate_and_measure(&mut c, &[0, 1, 2, 3, 4]);
    c
}

fn prepare_pigeons(c: &mut Circuit) {
    for q in 0..3 {
        c.h(q).expect("valid gate");
    }
    c.barrier().expect("valid gate");
}

fn rotate_and_measure(c: &mut Circuit, measured: &[usize]) {
    for q in 0..3 {
        c.rx(q, FRAC_PI_2).expect("valid gate");
    }
    for &q in measured {
        c.measure(q, q).expect("valid gate");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_circuit_shape() {
        let c = build_pi_circuit();
        assert_eq!((c.n_qubits(), c.n_cbits()), (5, 5));
        assert_eq!(c.unitary_gate_count(), 8);
        let cx: Vec<_> = c.gates().iter().filter(|g| matches!(g, Gate::Cx { .. })).collect();
        assert_eq!(cx, [&Gate::Cx { control: 0, target: 3 }, &Gate::Cx { control: 1, target: 3 }]);
        assert_eq!(c.measurements().map(|(q, _)| q).collect::<Vec<_>>(), [0, 1, 2, 3]);
    }

    #[test]
    fn p_circuit_shape() {
        let c = build_p_circuit();
        assert_eq!(c.unitary_gate_count(), 10);
        assert_eq!(c.measurements().count(), 5);
    }

    #[test]
    fn empty_circuit_distribution() {
        let mut c = Circuit::new(1, 1).unwrap();
        c.measure(0, 0).unwrap();
        let d = simulate_ideal(&c).unwrap();
        assert_eq!(d.get("0"), Some(&1.0));
        assert_eq!(d.get("1"), Some(&0.0));
    }

    #[test]
    fn unmeasured_cbits_read_zero() {
        let mut c = Circuit::new(2, 3).unwrap();
        c.x(1).unwrap().measure(1, 2).unwrap();
        let d = simulate_ideal(&c).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d["100"], 1.0);
        assert_eq!(d["000"], 0.0);
    }

    #[test]
    fn mid_circuit_measurement_is_unsupported() {
        let mut c = Circuit::new(1, 1).unwrap();
        c.measure(0, 0).unwrap().h(0).unwrap();
        assert!(matches!(simulate_ideal(&c), Err(Error::Unsupported(_))));

        let mut c = Circuit::new(1, 2).unwrap();
        c.measure(0, 0).unwrap().measure(0, 1).unwrap();
        assert!(matches!(simulate_ideal(&c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn push_validation() {
        let mut c = Circuit::new(2, 1).unwrap();
        assert!(c.h(2).is_err());
        assert!(c.cx(0, 0).is_err());
        assert!(c.measure(0, 1).is_err());
        c.measure(0, 0).unwrap();
        assert!(c.measure(1, 0).is_err());
        assert!(Circuit::new(0, 0).is_err());
    }

    #[test]
    fn p_circuit_ancillas_flag_all_same() {
        // Enumerate box assignments by replacing the Hadamard layer with X gates.
        let circuit = build_p_circuit();
        for boxes in 0..8usize {
            let init = StateVector::basis_state(5, boxes).unwrap();
            let mut c = Circuit::new(5, 5).unwrap();
            for g in circuit.gates().iter().filter(|g| !matches!(g, Gate::H { .. } | Gate::Rx { .. })) {
                c.push(*g).unwrap();
            }
            let d = simulate_from(&c, &init).unwrap();
            let (key, _) = d.iter().find(|(_, p)| **p > 0.5).unwrap();
            let anc = &key[..2]; // q4 q3
            let all_same = boxes == 0 || boxes == 7;
            assert_eq!(anc == "00", all_same, "boxes {boxes:03b} key {key}");
        }
    }
}
