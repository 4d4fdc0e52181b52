//! The `.qc` text format.
//!
//! ```text
//! .v a b c
//! .i a b
//! .o a b c
//! BEGIN
//! tof a b c
//! H c
//! END
//! ```
//!
//! Qubits are numbered in `.v` order. A missing `.i` or `.o` means every
//! qubit. A qubit outside `.i` starts in |0> unless its first gate is a
//! preparation, and a qubit outside `.o` that is still live at the end is
//! measured in the Z basis.
//!
//! Besides the usual gates (`H`, `X`, `Z`, `S`, `S*`, `T`, `T*`, `cnot`,
//! `tof` with one to three qubits, `Z` with two or three) the reader takes
//! `prepz`, `prepx`, `measz`, `measx`, `cx[k]` and `cz[k]` (Pauli X or Z if
//! measurement `k` gave 1), `Rz(a)` and `Rx(a)` with `a` in units of pi.
//! The writer only uses these forms, so its output reads back unchanged.

use std::collections::HashMap;
use std::fmt::Write as _;

use qcwidth_core::circuit::{ccz, toffoli};
use qcwidth_core::{Angle, Circuit, CoreError, Gate};

use crate::error::{Error, Result};

pub fn parse_qc(text: &str) -> Result<Circuit> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut inputs: Option<Vec<usize>> = None;
    let mut outputs: Option<Vec<usize>> = None;
    let mut gates: Vec<Gate> = Vec::new();
    // Source line of every gate, for error messages.
    let mut from: Vec<usize> = Vec::new();
    let mut ended = false;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split(|c: char| c.is_whitespace() || c == ',').filter(|w| !w.is_empty());
        let head = words.next().unwrap();
        let args: Vec<&str> = words.collect();

        if let Some(d) = head.strip_prefix('.') {
            match d {
                "v" => {
                    for a in &args {
                        if index.insert(a.to_string(), labels.len()).is_some() {
                            return Err(Error::parse(line, format!("qubit `{a}` declared twice")));
                        }
                        labels.push(a.to_string());
                    }
                }
                "i" | "o" => {
                    let qs = lookup(&index, &args, line)?;
                    let slot = if d == "i" { &mut inputs } else { &mut outputs };
                    slot.get_or_insert_with(Vec::new).extend(qs);
                }
                _ => return Err(Error::parse(line, format!("unknown directive `{head}`"))),
            }
            continue;
        }
        if head.eq_ignore_ascii_case("begin") {
            continue;
        }
        if head.eq_ignore_ascii_case("end") {
            ended = true;
            continue;
        }
        if ended {
            return Err(Error::parse(line, "gate after END"));
        }
        let qs = lookup(&index, &args, line)?;
        for (i, q) in qs.iter().enumerate() {
            if qs[..i].contains(q) {
                return Err(Error::parse(line, format!("qubit `{}` repeated", labels[*q])));
            }
        }
        gate_line(head, &qs, line, &mut gates)?;
        from.resize(gates.len(), line);
    }

    let n = labels.len();
    let mut c = Circuit::new(n);
    c.inputs = inputs.unwrap_or_else(|| (0..n).collect());
    c.outputs = outputs.unwrap_or_else(|| (0..n).collect());

    let mut first_is_prep = vec![false; n];
    let mut seen = vec![false; n];
    for g in &gates {
        for q in g.qubits() {
            if !seen[q] {
                seen[q] = true;
                first_is_prep[q] = g.is_preparation();
            }
        }
    }
    let mut lead = 0;
    for q in 0..n {
        if !c.inputs.contains(&q) && !first_is_prep[q] {
            c.gates.push(Gate::PrepZero(q));
            lead += 1;
        }
    }
    c.gates.extend(gates);

    let mut live: Vec<bool> = (0..n).map(|q| c.inputs.contains(&q)).collect();
    for g in &c.gates {
        match g {
            Gate::PrepPlus(q) | Gate::PrepZero(q) => live[*q] = true,
            Gate::MeasX(q) | Gate::MeasZ(q) => live[*q] = false,
            _ => {}
        }
    }
    for q in 0..n {
        if live[q] && !c.outputs.contains(&q) {
            c.gates.push(Gate::MeasZ(q));
        }
    }

    c.validate().map_err(|e| {
        let line = match &e {
            CoreError::QubitOutOfRange { index, .. }
            | CoreError::RepeatedQubit { index, .. }
            | CoreError::InvalidGate { index, .. } => index
                .checked_sub(lead)
                .and_then(|i| from.get(i).copied())
                .unwrap_or(0),
            _ => 0,
        };
        Error::parse(line, e.to_string())
    })?;
    Ok(c)
}

fn lookup(index: &HashMap<String, usize>, args: &[&str], line: usize) -> Result<Vec<usize>> {
    args.iter()
        .map(|a| {
            index
                .get(*a)
                .copied()
                .ok_or_else(|| Error::parse(line, format!("undeclared qubit `{a}`")))
        })
        .collect()
}

fn gate_line(head: &str, qs: &[usize], line: usize, out: &mut Vec<Gate>) -> Result<()> {
    let arity = |want: &[usize]| -> Result<()> {
        if want.contains(&qs.len()) {
            Ok(())
        } else {
            Err(Error::parse(
                line,
                format!("`{head}` takes {want:?} qubits, got {}", qs.len()),
            ))
        }
    };
    let lower = head.to_ascii_lowercase();

    if let Some((name, _)) = lower.split_once('(') {
        let text = head[name.len() + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(line, format!("unclosed angle in `{head}`")))?;
        let a: Angle = text.parse().map_err(|e: String| Error::parse(line, e))?;
        arity(&[1])?;
        out.push(match name {
            "rz" => Gate::Rz(qs[0], a),
            "rx" => Gate::Rx(qs[0], a),
            _ => return Err(Error::parse(line, format!("unknown gate `{head}`"))),
        });
        return Ok(());
    }
    if let Some((name, m)) = lower.split_once('[') {
        let outcome: usize = m
            .strip_suffix(']')
            .and_then(|m| m.parse().ok())
            .ok_or_else(|| Error::parse(line, format!("bad outcome index in `{head}`")))?;
        arity(&[1])?;
        let target = qs[0];
        out.push(match name {
            "cx" => Gate::CtrlX { outcome, target },
            "cz" => Gate::CtrlZ { outcome, target },
            _ => return Err(Error::parse(line, format!("unknown gate `{head}`"))),
        });
        return Ok(());
    }

    match lower.as_str() {
        "h" | "s" | "s*" | "sdg" | "t" | "t*" | "tdg" | "prepz" | "prepx" | "measz" | "measx" => {
            arity(&[1])?;
            let q = qs[0];
            out.push(match lower.as_str() {
                "h" => Gate::H(q),
                "s" => Gate::S(q),
                "s*" | "sdg" => Gate::Sdg(q),
                "t" => Gate::T(q),
                "t*" | "tdg" => Gate::Tdg(q),
                "prepz" => Gate::PrepZero(q),
                "prepx" => Gate::PrepPlus(q),
                "measz" => Gate::MeasZ(q),
                _ => Gate::MeasX(q),
            });
        }
        "x" | "not" => {
            arity(&[1])?;
            out.push(Gate::X(qs[0]));
        }
        "cnot" | "cx" => {
            arity(&[2])?;
            out.push(Gate::Cnot(qs[0], qs[1]));
        }
        "cz" => {
            arity(&[2])?;
            out.push(Gate::Cz(qs[0], qs[1]));
        }
        "tof" => {
            arity(&[1, 2, 3])?;
            match *qs {
                [a] => out.push(Gate::X(a)),
                [a, b] => out.push(Gate::Cnot(a, b)),
                [a, b, c] => out.extend(toffoli(a, b, c)),
                _ => unreachable!(),
            }
        }
        "z" => {
            arity(&[1, 2, 3])?;
            match *qs {
                [a] => out.push(Gate::Z(a)),
                [a, b] => out.push(Gate::Cz(a, b)),
                [a, b, c] => out.extend(ccz(a, b, c)),
                _ => unreachable!(),
            }
        }
        _ => return Err(Error::parse(line, format!("unknown gate `{head}`"))),
    }
    Ok(())
}

/// Writes `c` with qubits named `q0`, `q1`, ...
pub fn write_qc(c: &Circuit) -> String {
    let name = |q: usize| format!("q{q}");
    let list = |qs: &[usize]| qs.iter().map(|&q| format!(" {}", name(q))).collect::<String>();
    let mut s = String::new();
    let all: Vec<usize> = (0..c.num_qubits).collect();
    let _ = writeln!(s, ".v{}", list(&all));
    let _ = writeln!(s, ".i{}", list(&c.inputs));
    let _ = writeln!(s, ".o{}", list(&c.outputs));
    s.push_str("BEGIN\n");
    for g in &c.gates {
        let head = match g {
            Gate::H(_) => "H".to_string(),
            Gate::X(_) => "X".to_string(),
            Gate::Z(_) => "Z".to_string(),
            Gate::S(_) => "S".to_string(),
            Gate::Sdg(_) => "S*".to_string(),
            Gate::T(_) => "T".to_string(),
            Gate::Tdg(_) => "T*".to_string(),
            Gate::Rz(_, a) => format!("Rz({a})"),
            Gate::Rx(_, a) => format!("Rx({a})"),
            Gate::Cnot(..) => "cnot".to_string(),
            Gate::Cz(..) => "cz".to_string(),
            Gate::PrepPlus(_) => "prepx".to_string(),
            Gate::PrepZero(_) => "prepz".to_string(),
            Gate::MeasX(_) => "measx".to_string(),
            Gate::MeasZ(_) => "measz".to_string(),
            Gate::CtrlX { outcome, .. } => format!("cx[{outcome}]"),
            Gate::CtrlZ { outcome, .. } => format!("cz[{outcome}]"),
        };
        let _ = writeln!(s, "{head}{}", list(&g.qubits()));
    }
    s.push_str("END\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only() {
        let c = parse_qc(".v a b\nBEGIN\nEND\n").unwrap();
        assert_eq!(c.num_qubits, 2);
        assert!(c.gates.is_empty());
    }

    #[test]
    fn single_hadamard() {
        let c = parse_qc(".v a\nBEGIN\nH a\nEND\n").unwrap();
        assert_eq!(c.gates, vec![Gate::H(0)]);
    }

    #[test]
    fn toffoli_expands_to_fifteen_gates() {
        let c = parse_qc(".v a b c\nBEGIN\ntof a b c\nEND\n").unwrap();
        assert_eq!(c.gates.len(), 15);
        assert_eq!(c.t_count(), 7);
    }

    #[test]
    fn ancillas_get_prepared_and_measured() {
        let c = parse_qc(".v a b t\n.i a b\n.o a b\nBEGIN\ntof a b t\ntof a b t\nEND\n").unwrap();
        assert_eq!(c.gates.first(), Some(&Gate::PrepZero(2)));
        assert_eq!(c.gates.last(), Some(&Gate::MeasZ(2)));
        assert_eq!(c.inputs, vec![0, 1]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_qc(".v a\nBEGIN\nH a\nfoo a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_qc(".v a\nH b\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_qc(".v a b\ncnot a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_qc(".v a b\nmeasz a\nH a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn writer_round_trips() {
        let mut c = Circuit::new(3);
        c.inputs = vec![1, 0];
        c.outputs = vec![0, 1];
        c.gates = vec![
            Gate::T(0),
            Gate::PrepPlus(2),
            Gate::Cz(1, 2),
            Gate::MeasX(1),
            Gate::CtrlX { outcome: 0, target: 2 },
            Gate::Rz(2, Angle::pi_frac(1, 8)),
            Gate::Rx(0, "theta".parse().unwrap()),
            Gate::Sdg(0),
            Gate::PrepZero(1),
            Gate::Cnot(2, 1),
            Gate::CtrlZ { outcome: 0, target: 1 },
            Gate::MeasZ(2),
        ];
        c.validate().unwrap();
        let text = write_qc(&c);
        assert_eq!(parse_qc(&text).unwrap(), c, "{text}");
    }
}
