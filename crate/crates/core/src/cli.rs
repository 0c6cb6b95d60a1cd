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

//! Command-line front end.
//!
//! Every command writes to standard output unless `--output` is given, in
//! which case the file is written to a temporary sibling and renamed into
//! place. Floating-point output carries 12 significant digits.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::amplitudes::{self, FinalStateLabel, PHASE_CONVENTION};
use crate::circuits::{self, Circuit};
use crate::hiddenvars;
use crate::ops::{self, EvolutionParams, Pair};
use crate::{Error, Result};

/// Environment variable consulted for the default sampling seed.
pub const SEED_ENV: &str = "PIGEONHOLE_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// Closed and numeric probabilities must agree to this tolerance.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-10;
/// Per-`εt` probabilities must sum to one within this tolerance.
pub const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CircuitKind {
    /// Measures `Π_01` with one ancilla.
    Pi,
    /// Measures `Π_01` and `Π_12` with two ancillas.
    P,
}

impl CircuitKind {
    pub fn build(self) -> Circuit {
        match self {
            CircuitKind::Pi => circuits::build_pi_circuit(),
            CircuitKind::P => circuits::build_p_circuit(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            CircuitKind::Pi => "pi",
            CircuitKind::P => "p",
        }
    }

    fn ancilla_bits(self) -> &'static [usize] {
        match self {
            CircuitKind::Pi => &[3],
            CircuitKind::P => &[3, 4],
        }
    }

    fn ancilla_pairs(self) -> &'static [(usize, usize)] {
        match self {
            CircuitKind::Pi => &[(0, 1)],
            CircuitKind::P => &[(0, 1), (1, 2)],
        }
    }
}

/// `start:stop:steps`, endpoints inclusive, or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.stop } else { self.start + span * i as f64 / last })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| -> std::result::Result<f64, String> {
            let v: f64 = t.trim().parse().map_err(|_| format!("invalid number {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("{t:?} is not finite"))
            }
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Ok(Sweep { start: v, stop: v, steps: 1 })
            }
            [a, b, n] => {
                let steps: usize = n.trim().parse().map_err(|_| format!("invalid step count {n:?}"))?;
                if steps == 0 {
                    return Err("sweep steps must be at least 1".into());
                }
                Ok(Sweep { start: num(a)?, stop: num(b)?, steps })
            }
            _ => Err(format!("expected VALUE or START:STOP:STEPS, got {s:?}")),
        }
    }
}

fn parse_noise(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid probability {s:?}"))?;
    if (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("readout noise must be in [0, 1), got {v}"))
    }
}

fn parse_tolerance(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid tolerance {s:?}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {v}"))
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "pigeonhole", version, about = "Three-pigeon operator identities, amplitudes and circuits")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (ignored by `qasm`).
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the projector identities and the spectrum of Π.
    Identities {
        #[arg(long, default_value = "1e-12", value_parser = parse_tolerance)]
        tolerance: f64,
    },
    /// Transition probabilities for the eight |±i⟩ final states.
    Amplitudes {
        /// εt value or START:STOP:STEPS sweep (inclusive).
        #[arg(long = "epsilon-t", default_value = "0")]
        epsilon_t: Sweep,
    },
    /// Exact outcome distribution of a circuit.
    Simulate {
        #[arg(long, value_enum, default_value = "pi")]
        circuit: CircuitKind,
    },
    /// Seeded shot histogram of a circuit.
    Sample {
        #[arg(long, value_enum, default_value = "pi")]
        circuit: CircuitKind,
        #[arg(long, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, env = SEED_ENV, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Per-qubit readout flip probability.
        #[arg(long = "noise-readout", default_value = "0", value_parser = parse_noise)]
        noise_readout: f64,
        /// Group counts by pigeon outcome and ancilla pattern.
        #[arg(long)]
        grouped: bool,
    },
    /// OpenQASM 2.0 source of a circuit.
    Qasm {
        #[arg(long, value_enum, default_value = "pi")]
        circuit: CircuitKind,
    },
    /// Enumerate eigenvalue assignments to Π_01, Π_12, Π_02, P.
    Hiddenvars,
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r:?}")
    }
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_sig).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

fn complex_json(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

/// Rendered output and whether every verification in it passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub verified: bool,
}

/// Runs one command and renders its output.
pub fn render(config: &RunConfig) -> Result<Rendered> {
    let format = config.format;
    match &config.command {
        Command::Identities { tolerance } => {
            let report = ops::verify_identities(*tolerance)?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut s = String::from("identity,deviation,pass\n");
                    for c in &report.checks {
                        writeln!(s, "\"{}\",{},{}", c.name, fmt_num(c.deviation), c.pass).unwrap();
                    }
                    s
                }
            };
            Ok(Rendered { text, verified: report.pass })
        }
        Command::Amplitudes { epsilon_t } => render_amplitudes(epsilon_t, format),
        Command::Simulate { circuit } => {
            let dist = circuits::simulate_ideal(&circuit.build())?;
            let total: f64 = dist.values().sum();
            let text = match format {
                Format::Json => to_json(&json!({ "circuit": circuit.name(), "probabilities": dist }))?,
                Format::Csv => {
                    let mut s = String::from("bitstring,probability\n");
                    for (k, p) in &dist {
                        writeln!(s, "{k},{}", fmt_num(*p)).unwrap();
                    }
                    s
                }
            };
            Ok(Rendered { text, verified: (total - 1.0).abs() <= SUM_TOLERANCE })
        }
        Command::Sample { circuit, shots, seed, noise_readout, grouped } => {
            let c = circuit.build();
            let noise = if *noise_readout > 0.0 {
                Some(circuits::NoiseModel::uniform(c.n_qubits(), *noise_readout)?)
            } else {
                None
            };
            let hist = circuits::sample_shots(&c, *shots, *seed, noise.as_ref())?;
            let text = if *grouped {
                let ideal = circuits::simulate_ideal(&c)?;
                let table = circuits::postselect_group(&hist, &[0, 1, 2], circuit.ancilla_bits())?;
                match format {
                    Format::Csv => table.to_csv(&ideal, fmt_num),
                    Format::Json => {
                        let groups: Vec<Value> = table
                            .groups
                            .iter()
                            .map(|g| {
                                let label = FinalStateLabel::from_bits(
                                    usize::from_str_radix(&g.pigeon_state, 2).unwrap_or(0),
                                )
                                .map(|l| l.to_string())
                                .unwrap_or_default();
                                let buckets: Vec<Value> = g
                                    .ancilla_counts
                                    .iter()
                                    .map(|(a, n)| {
                                        json!({
                                            "ancilla_pattern": a,
                                            "meaning": circuits::describe_ancilla(a, circuit.ancilla_pairs()),
                                            "count": n,
                                            "expected_probability":
                                                table.expected_probability(&ideal, &g.pigeon_state, a),
                                        })
                                    })
                                    .collect();
                                json!({
                                    "pigeon_state": g.pigeon_state,
                                    "label": label,
                                    "total": g.total,
                                    "ancillas": buckets,
                                })
                            })
                            .collect();
                        to_json(&json!({
                            "circuit": circuit.name(),
                            "shots": hist.shots,
                            "seed": hist.seed,
                            "noise": hist.noise,
                            "groups": groups,
                        }))?
                    }
                }
            } else {
                match format {
                    Format::Json => to_json(&hist)?,
                    Format::Csv => hist.to_csv(),
                }
            };
            Ok(Rendered { text, verified: true })
        }
        Command::Qasm { circuit } => {
            Ok(Rendered { text: circuits::export_qasm(&circuit.build()), verified: true })
        }
        Command::Hiddenvars => {
            let report = hiddenvars::report();
            let verified = !report.pcp_violation_exists && report.classical_image_matches;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Csv => {
                    let mut s = String::from(
                        "v01,v12,v02,vP,v_pi,identity,product_01_12,product_01_02,product_12_02,valid\n",
                    );
                    for c in &report.candidates {
                        let a = c.assignment;
                        let k = c.constraints;
                        writeln!(
                            s,
                            "{},{},{},{},{},{},{},{},{},{}",
                            a.v01, a.v12, a.v02, a.vp, c.v_pi, k.identity, k.product_01_12,
                            k.product_01_02, k.product_12_02, c.valid
                        )
                        .unwrap();
                    }
                    s
                }
            };
            Ok(Rendered { text, verified })
        }
    }
}

fn render_amplitudes(sweep: &Sweep, format: Format) -> Result<Rendered> {
    let mut verified = true;
    let mut rows = Vec::new();
    let mut sums = Vec::new();
    for x in sweep.points() {
        let table = amplitudes::amplitude_table(EvolutionParams::new(x)?);
        let total: f64 = table.iter().map(|r| r.prob_numeric).sum();
        verified &= (total - 1.0).abs() <= SUM_TOLERANCE;
        verified &= table
            .iter()
            .all(|r| (r.prob_closed - r.prob_numeric).abs() <= AMPLITUDE_TOLERANCE);
        sums.push(json!({ "epsilon_t": x, "sum": total }));
        rows.extend(table);
    }
    let text = match format {
        Format::Csv => {
            let mut s = String::from("epsilon_t,label,class,prob_closed,prob_numeric\n");
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{},{}",
                    fmt_num(r.epsilon_t),
                    r.label,
                    r.class,
                    fmt_num(r.prob_closed),
                    fmt_num(r.prob_numeric)
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let elements: Vec<Value> = FinalStateLabel::all()
                .into_iter()
                .map(|l| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("label".into(), json!(l.to_string()));
                    for p in Pair::ALL {
                        let z = amplitudes::me_pi_ab(l, p.a(), p.b())?;
                        obj.insert(format!("pi_{p}"), complex_json(z));
                    }
                    obj.insert("big_p".into(), complex_json(amplitudes::me_big_p(l)));
                    Ok(Value::Object(obj))
                })
                .collect::<Result<_>>()?;
            to_json(&json!({
                "phase_convention": PHASE_CONVENTION,
                "matrix_elements": elements,
                "records": rows,
                "sums": sums,
                "verified": verified,
            }))?
        }
    };
    Ok(Rendered { text, verified })
}

/// Writes `contents` to `path` via a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::arg(format!("output path {} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

/// Runs `config`, sending output to `stdout` or the configured file.
/// Returns the process exit code.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let rendered = match render(config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return if matches!(e, Error::Argument(_)) { 2 } else { 1 };
        }
    };
    let written = match &config.output {
        Some(path) => write_atomic(path, rendered.text.as_bytes()),
        None => stdout.write_all(rendered.text.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    if rendered.verified {
        0
    } else {
        let _ = writeln!(stderr, "verification failed");
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<RunConfig, clap::Error> {
        RunConfig::try_parse_from(std::iter::once("pigeonhole").chain(args.iter().copied()))
    }

    #[test]
    fn sweep_parsing() {
        let s: Sweep = "0:6.5:65".parse().unwrap();
        let pts = s.points();
        assert_eq!(pts.len(), 65);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[64], 6.5);
        assert_eq!("1.5".parse::<Sweep>().unwrap().points(), vec![1.5]);
        assert!("0:1:0".parse::<Sweep>().is_err());
        assert!("0:1".parse::<Sweep>().is_err());
        assert!("a:1:3".parse::<Sweep>().is_err());
        assert!("inf".parse::<Sweep>().is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(fmt_num(0.125), "0.125");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1e-20), "1e-20");
    }

    #[test]
    fn usage_errors() {
        assert!(parse(&["bogus"]).is_err());
        assert!(parse(&["sample", "--shots", "0"]).is_err());
        assert!(parse(&["sample", "--noise-readout", "1.0"]).is_err());
        assert!(parse(&["identities", "--tolerance", "-1"]).is_err());
        assert!(parse(&["amplitudes", "--epsilon-t", "0:1:0"]).is_err());
        assert_eq!(parse(&["bogus"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn identities_pass() {
        let cfg = parse(&["identities"]).unwrap();
        let r = render(&cfg).unwrap();
        assert!(r.verified);
        let v: Value = serde_json::from_str(&r.text).unwrap();
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn amplitudes_csv_rows() {
        let cfg = parse(&["amplitudes", "--epsilon-t", "0:6.2832:65", "--format", "csv"]).unwrap();
        let r = render(&cfg).unwrap();
        assert!(r.verified);
        assert_eq!(r.text.lines().count(), 1 + 65 * 8);
    }

    #[test]
    fn exit_codes() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let cfg = parse(&["hiddenvars"]).unwrap();
        assert_eq!(run(&cfg, &mut out, &mut err), 0);
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["pcp_violation_exists"], false);
    }
}
