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

//! Seeded shot sampling, readout noise, and post-selection grouping.
//!
//! Outcomes are drawn by inverse-CDF lookup over the ideal distribution in
//! key order, using `ChaCha8Rng::seed_from_u64(seed)`. Each shot consumes one
//! uniform draw, followed by one draw per measured bit when a noise model is
//! present. The same inputs give the same histogram on every platform.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{simulate_ideal, Circuit, Distribution};
use crate::{Error, Result};

/// Independent classical bit flips applied after an ideal measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseModel {
    /// Flip probability for the readout of each qubit, indexed by qubit.
    pub readout_flip_prob: Vec<f64>,
}

impl NoiseModel {
    pub fn new(readout_flip_prob: Vec<f64>) -> Result<Self> {
        if let Some(p) = readout_flip_prob.iter().find(|p| !(0.0..1.0).contains(*p)) {
            return Err(Error::arg(format!("readout flip probability {p} not in [0, 1)")));
        }
        Ok(NoiseModel { readout_flip_prob })
    }

    pub fn uniform(n_qubits: usize, p: f64) -> Result<Self> {
        Self::new(vec![p; n_qubits])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShotHistogram {
    #[serde(skip)]
    n_cbits: usize,
    pub shots: u64,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
    /// Counts keyed by bitstring, highest cbit leftmost. Every reachable
    /// pattern of the measured bits is present, including zero counts.
    pub counts: BTreeMap<String, u64>,
}

impl ShotHistogram {
    /// Wraps existing counts; `shots` is their sum.
    pub fn from_counts(n_cbits: usize, counts: BTreeMap<String, u64>, seed: u64) -> Result<Self> {
        for key in counts.keys() {
            if key.len() != n_cbits || !key.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::arg(format!("bad bitstring key {key:?} for {n_cbits} cbits")));
            }
        }
        let shots = counts.values().sum();
        Ok(ShotHistogram { n_cbits, shots, seed, noise: None, counts })
    }

    pub fn n_cbits(&self) -> usize {
        self.n_cbits
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// `bitstring,count` rows in key order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bitstring,count\n");
        for (k, v) in &self.counts {
            writeln!(out, "{k},{v}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn key_to_bits(key: &str) -> u64 {
    key.bytes().fold(0, |acc, b| (acc << 1) | u64::from(b == b'1'))
}

/// Draws `shots` outcomes from the circuit's ideal distribution.
pub fn sample_shots(
    circuit: &Circuit,
    shots: u64,
    seed: u64,
    noise: Option<&NoiseModel>,
) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::arg("shots must be at least 1"));
    }
    if let Some(n) = noise {
        if n.readout_flip_prob.len() != circuit.n_qubits() {
            return Err(Error::arg(format!(
                "noise model covers {} qubits, circuit has {}",
                n.readout_flip_prob.len(),
                circuit.n_qubits()
            )));
        }
    }
    let dist = simulate_ideal(circuit)?;
    let outcomes: Vec<(&String, u64)> = dist.keys().map(|k| (k, key_to_bits(k))).collect();
    let mut cumulative = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for p in dist.values() {
        acc += p;
        cumulative.push(acc);
    }
    let last_nonzero = dist
        .values()
        .rposition(|p| *p > 0.0)
        .ok_or_else(|| Error::arg("distribution has no support"))?;
    let measured: Vec<(usize, usize)> = circuit.measurements().collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = vec![0u64; outcomes.len()];
    let mut noisy: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..shots {
        let u: f64 = rng.gen();
        let idx = cumulative.partition_point(|c| *c <= u).min(last_nonzero);
        match noise {
            None => tally[idx] += 1,
            Some(model) => {
                let mut bits = outcomes[idx].1;
                for &(qubit, cbit) in &measured {
                    if rng.gen::<f64>() < model.readout_flip_prob[qubit] {
                        bits ^= 1 << cbit;
                    }
                }
                *noisy.entry(bits).or_default() += 1;
            }
        }
    }

    let mut counts: BTreeMap<String, u64> =
        outcomes.iter().zip(&tally).map(|((k, _), n)| ((*k).clone(), *n)).collect();
    for (bits, n) in noisy {
        *counts.entry(circuit.cbit_key(bits)).or_default() += n;
    }
    Ok(ShotHistogram {
        n_cbits: circuit.n_cbits(),
        shots,
        seed,
        noise: noise.cloned(),
        counts,
    })
}

/// Counts for one pigeon outcome, split by ancilla outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PigeonGroup {
    pub pigeon_state: String,
    pub total: u64,
    pub ancilla_counts: BTreeMap<String, u64>,
}

/// Histogram regrouped by pigeon outcome, the layout of a post-selection
/// bar chart. Patterns list the chosen cbits highest index first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupedTable {
    pub pigeon_bits: Vec<usize>,
    pub ancilla_bits: Vec<usize>,
    pub groups: Vec<PigeonGroup>,
}

fn sorted_desc(bits: &[usize]) -> Vec<usize> {
    let mut v = bits.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn extract(key: &str, bits: &[usize]) -> String {
    let bytes = key.as_bytes();
    bits.iter().map(|&i| bytes[bytes.len() - 1 - i] as char).collect()
}

pub fn postselect_group(
    hist: &ShotHistogram,
    pigeon_bits: &[usize],
    ancilla_bits: &[usize],
) -> Result<GroupedTable> {
    let pigeon: BTreeSet<usize> = pigeon_bits.iter().copied().collect();
    let ancilla: BTreeSet<usize> = ancilla_bits.iter().copied().collect();
    if pigeon.len() != pigeon_bits.len() || ancilla.len() != ancilla_bits.len() {
        return Err(Error::arg("bit index sets must not repeat indices"));
    }
    if !pigeon.is_disjoint(&ancilla) {
        return Err(Error::arg("pigeon and ancilla bit sets overlap"));
    }
    if let Some(i) = pigeon.iter().chain(&ancilla).find(|i| **i >= hist.n_cbits()) {
        return Err(Error::arg(format!("bit index {i} out of range")));
    }
    let pigeon_bits = sorted_desc(pigeon_bits);
    let ancilla_bits = sorted_desc(ancilla_bits);

    let mut groups: BTreeMap<String, PigeonGroup> = BTreeMap::new();
    for (key, n) in &hist.counts {
        let p = extract(key, &pigeon_bits);
        let a = extract(key, &ancilla_bits);
        let group = groups.entry(p.clone()).or_insert_with(|| PigeonGroup {
            pigeon_state: p,
            total: 0,
            ancilla_counts: BTreeMap::new(),
        });
        group.total += n;
        *group.ancilla_counts.entry(a).or_default() += n;
    }
    Ok(GroupedTable { pigeon_bits, ancilla_bits, groups: groups.into_values().collect() })
}

impl GroupedTable {
    /// Ideal probability of a (pigeon pattern, ancilla pattern) cell.
    pub fn expected_probability(&self, ideal: &Distribution, pigeon: &str, ancilla: &str) -> f64 {
        ideal
            .iter()
            .filter(|(k, _)| {
                extract(k, &self.pigeon_bits) == pigeon && extract(k, &self.ancilla_bits) == ancilla
            })
            .map(|(_, p)| p)
            .sum()
    }

    /// `pigeon_state,ancilla_pattern,count,expected_probability` rows.
    pub fn to_csv(&self, ideal: &Distribution, fmt_num: impl Fn(f64) -> String) -> String {
        let mut out = String::from("pigeon_state,ancilla_pattern,count,expected_probability\n");
        for g in &self.groups {
            for (a, n) in &g.ancilla_counts {
                let p = self.expected_probability(ideal, &g.pigeon_state, a);
                writeln!(out, "{},{},{},{}", g.pigeon_state, a, n, fmt_num(p)).unwrap();
            }
        }
        out
    }
}

/// Names an ancilla pattern by the pairs it tests, e.g. `01S,12D`.
///
/// `pairs[i]` is the pigeon pair checked by the ancilla at position `i` of
/// the pattern counted from the right (lowest cbit first). A 0 means the pair
/// shares a box.
pub fn describe_ancilla(pattern: &str, pairs: &[(usize, usize)]) -> String {
    pattern
        .chars()
        .rev()
        .zip(pairs)
        .map(|(bit, (a, b))| format!("{a}{b}{}", if bit == '0' { 'S' } else { 'D' }))
        .collect::<Vec<_>>()
        .join(",")
}
