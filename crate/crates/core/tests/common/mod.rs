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

//! Test-only oracles that share no code path with the library's simulator.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use pigeonhole::circuits::Circuit;
use pigeonhole::qstate::{Gate, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn eye2() -> Mat {
    vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]
}

/// Tensor product with `factors[q]` acting on qubit `q` (q[0] rightmost).
pub fn embed(n: usize, factors: &BTreeMap<usize, Mat>) -> Mat {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for q in (0..n).rev() {
        let f = factors.get(&q).cloned().unwrap_or_else(eye2);
        out = kron(&out, &f);
    }
    out
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn mat_vec(m: &Mat, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Full `2^n × 2^n` matrix of a unitary gate, built from Kronecker products.
pub fn dense_gate(n: usize, gate: &Gate) -> Mat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match *gate {
        Gate::H { qubit } => embed(n, &[(qubit, vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]])].into()),
        Gate::X { qubit } => embed(n, &[(qubit, vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])].into()),
        Gate::Rx { qubit, theta } => {
            let (co, si) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            embed(n, &[(qubit, vec![vec![c(co, 0.0), c(0.0, -si)], vec![c(0.0, -si), c(co, 0.0)]])].into())
        }
        Gate::Cx { control, target } => {
            let p0 = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]];
            let p1 = vec![vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]];
            let x = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]];
            mat_add(&embed(n, &[(control, p0)].into()), &embed(n, &[(control, p1), (target, x)].into()))
        }
        Gate::Barrier => embed(n, &BTreeMap::new()),
        Gate::Measure { .. } => panic!("not unitary"),
    }
}

/// Outcome distribution by dense matrix products, keyed like the library.
pub fn dense_distribution(circuit: &Circuit) -> BTreeMap<String, f64> {
    let n = circuit.n_qubits();
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(1.0, 0.0);
    let mut measured = Vec::new();
    for g in circuit.gates() {
        match *g {
            Gate::Measure { qubit, cbit } => measured.push((qubit, cbit)),
            g => v = mat_vec(&dense_gate(n, &g), &v),
        }
    }
    let mut dist = BTreeMap::new();
    for (k, a) in v.iter().enumerate() {
        let mut key = vec!['0'; circuit.n_cbits()];
        for &(q, cb) in &measured {
            if (k >> q) & 1 == 1 {
                key[circuit.n_cbits() - 1 - cb] = '1';
            }
        }
        *dist.entry(key.into_iter().collect::<String>()).or_insert(0.0) += a.norm_sqr();
    }
    dist
}

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let mut amps: Vec<Complex64> =
        (0..1 << n).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    StateVector::from_amplitudes(n, amps).unwrap()
}

pub fn random_gate(n: usize, rng: &mut ChaCha8Rng) -> Gate {
    let q = rng.gen_range(0..n);
    match rng.gen_range(0..if n > 1 { 4 } else { 3 }) {
        0 => Gate::H { qubit: q },
        1 => Gate::X { qubit: q },
        2 => Gate::Rx { qubit: q, theta: rng.gen_range(-7.0..7.0) },
        _ => {
            let mut t = rng.gen_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            Gate::Cx { control: q, target: t }
        }
    }
}

/// Random circuit with terminal measurements of a random subset of qubits.
pub fn random_circuit(seed: u64, max_qubits: usize, max_depth: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_qubits);
    let depth = rng.gen_range(0..=max_depth);
    let mut circuit = Circuit::new(n, n).unwrap();
    for _ in 0..depth {
        circuit.push(random_gate(n, &mut rng)).unwrap();
    }
    for q in 0..n {
        if rng.gen_bool(0.7) {
            circuit.measure(q, q).unwrap();
        }
    }
    circuit
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
