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

//! OpenQASM 2.0 export, plus a reader for the subset we emit.

use std::f64::consts::PI;
use std::fmt::Write as _;

use super::Circuit;
use crate::qstate::Gate;
use crate::{Error, Result};

/// Renders an angle as a small multiple of `pi` when it is one.
fn format_angle(theta: f64) -> String {
    if theta == 0.0 {
        return "0".into();
    }
    for den in 1..=8i64 {
        let num = theta / PI * den as f64;
        let rounded = num.round();
        if rounded != 0.0 && (num - rounded).abs() <= 1e-12 {
            let num = rounded as i64;
            let sign = if num < 0 { "-" } else { "" };
            let head = match num.abs() {
                1 => "pi".to_string(),
                n => format!("{n}*pi"),
            };
            return if den == 1 { format!("{sign}{head}") } else { format!("{sign}{head}/{den}") };
        }
    }
    format!("{theta:?}")
}

/// OpenQASM 2.0 text for `circuit`: header, one `q` and one `c` register,
/// then one statement per gate in program order.
pub fn export_qasm(circuit: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.n_qubits()).unwrap();
    writeln!(out, "creg c[{}];", circuit.n_cbits()).unwrap();
    for gate in circuit.gates() {
        match *gate {
            Gate::H { qubit } => writeln!(out, "h q[{qubit}];"),
            Gate::X { qubit } => writeln!(out, "x q[{qubit}];"),
            Gate::Rx { qubit, theta } => writeln!(out, "rx({}) q[{qubit}];", format_angle(theta)),
            Gate::Cx { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            Gate::Barrier => writeln!(out, "barrier q;"),
            Gate::Measure { qubit, cbit } => writeln!(out, "measure q[{qubit}] -> c[{cbit}];"),
        }
        .unwrap();
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses `name[index]` for the expected register name.
fn parse_ref(s: &str, reg: &str, line: usize) -> Result<usize> {
    let s = s.trim();
    let inner = s
        .strip_prefix(reg)
        .and_then(|r| r.trim_start().strip_prefix('['))
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("expected {reg}[i], found {s:?}")))?;
    inner.trim().parse().map_err(|_| parse_err(line, format!("bad index in {s:?}")))
}

/// Evaluates `[-](pi|N*pi|number)[/den]`.
fn parse_angle(expr: &str, line: usize) -> Result<f64> {
    let expr: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || parse_err(line, format!("unsupported angle expression {expr:?}"));
    let (neg, body) = match expr.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, expr.as_str()),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let value = if numer == "pi" {
        PI
    } else if let Some(k) = numer.strip_suffix("*pi") {
        k.parse::<f64>().map_err(|_| bad())? * PI
    } else {
        numer.parse::<f64>().map_err(|_| bad())?
    };
    let v = value / denom;
    Ok(if neg { -v } else { v })
}

/// Reads the OpenQASM subset produced by [`export_qasm`]. Whitespace between
/// tokens is not significant; `//` comments and blank lines are skipped.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut n_qubits = None;
    let mut n_cbits = None;
    let mut circuit: Option<Circuit> = None;
    let mut saw_header = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| parse_err(line_no, "missing ';'"))?
            .trim();
        let (head, rest) = match stmt.find(|c: char| c.is_whitespace() || c == '(') {
            Some(i) => (&stmt[..i], stmt[i..].trim()),
            None => (stmt, ""),
        };
        match head {
            "OPENQASM" => {
                if rest != "2.0" {
                    return Err(parse_err(line_no, format!("unsupported version {rest}")));
                }
                saw_header = true;
                continue;
            }
            "include" => continue,
            "qreg" => {
                n_qubits = Some(parse_ref(rest, "q", line_no)?);
            }
            "creg" => {
                n_cbits = Some(parse_ref(rest, "c", line_no)?);
            }
            _ => {
                let c = circuit
                    .as_mut()
                    .ok_or_else(|| parse_err(line_no, "gate before register declarations"))?;
                let gate = match head {
                    "h" => Gate::H { qubit: parse_ref(rest, "q", line_no)? },
                    "x" => Gate::X { qubit: parse_ref(rest, "q", line_no)? },
                    "rx" => {
                        let close = rest
                            .find(')')
                            .ok_or_else(|| parse_err(line_no, "unclosed rx angle"))?;
                        let angle = rest[..close].trim_start_matches('(');
                        Gate::Rx {
                            theta: parse_angle(angle, line_no)?,
                            qubit: parse_ref(&rest[close + 1..], "q", line_no)?,
                        }
                    }
                    "cx" => {
                        let (a, b) = rest
                            .split_once(',')
                            .ok_or_else(|| parse_err(line_no, "cx needs two operands"))?;
                        Gate::Cx {
                            control: parse_ref(a, "q", line_no)?,
                            target: parse_ref(b, "q", line_no)?,
                        }
                    }
                    "barrier" => Gate::Barrier,
                    "measure" => {
                        let (q, cb) = rest
                            .split_once("->")
                            .ok_or_else(|| parse_err(line_no, "measure needs '->'"))?;
                        Gate::Measure {
                            qubit: parse_ref(q, "q", line_no)?,
                            cbit: parse_ref(cb, "c", line_no)?,
                        }
                    }
                    other => return Err(parse_err(line_no, format!("unsupported statement {other:?}"))),
                };
                c.push(gate).map_err(|e| parse_err(line_no, e.to_string()))?;
                continue;
            }
        }
        if let (Some(q), Some(cb), None) = (n_qubits, n_cbits, circuit.as_ref()) {
            circuit = Some(Circuit::new(q, cb).map_err(|e| parse_err(line_no, e.to_string()))?);
        }
    }
    if !saw_header {
        return Err(parse_err(1, "missing OPENQASM 2.0 header"));
    }
    circuit.ok_or_else(|| parse_err(text.lines().count(), "missing qreg/creg declarations"))
}
