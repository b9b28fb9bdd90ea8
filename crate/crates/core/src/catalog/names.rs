// SPDX-License-Identifier: Apache-2.0

//! Shorthand names for catalog objects, and the JSON wrappers used for
//! user-supplied matrices.
//!
//! ```text
//! states:       bloch:X,Y,Z         ½(I + r·σ)
//!               eq:THETA            Bloch vector (√3/2 cosθ, √3/2 sinθ, 0)
//!               spin1:THETA,PHI     spin-1 pure state
//!               qutrit:A,ALPHA,BETA qutrit family
//!               mixed:D             I/D
//!               random:D,SEED       seeded Ginibre state
//! observables:  pauli | pauli.x | pauli.y | pauli.z
//!               spin1 | spin1.x | spin1.y | spin1.z
//! channels:     pd:Q | ad:Q | bf:Q  phase damping, amplitude damping, bit flip
//!               id:D                identity channel
//! ```
//!
//! Numbers accept `pi` forms: `pi`, `pi/3`, `2pi/3`, `0.5*pi`.

use serde::Deserialize;

use super::random::{random_state, SeededGenerator};
use super::{
    amplitude_damping, bit_flip, bloch_qubit, pauli_observables, phase_damping, qutrit_family,
    spin1_observables, spin1_pure_state, BlochVector,
};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerances};
use crate::skew::{DensityState, KrausChannel, Observable};

/// Parse a real number, accepting simple multiples of pi.
pub fn parse_number(text: &str) -> Result<f64> {
    let s = text.trim();
    let err = || Error::Parse(format!("invalid number '{text}'"));
    if let Some(pos) = s.find("pi") {
        let (head, tail) = (&s[..pos], &s[pos + 2..]);
        let head = head.trim_end_matches('*');
        let coef = match head {
            "" => 1.0,
            "-" => -1.0,
            h => h.parse::<f64>().map_err(|_| err())?,
        };
        let denom = match tail {
            "" => 1.0,
            t => t
                .strip_prefix('/')
                .ok_or_else(err)?
                .parse::<f64>()
                .map_err(|_| err())?,
        };
        return Ok(coef * std::f64::consts::PI / denom);
    }
    let v = s.parse::<f64>().map_err(|_| err())?;
    if !v.is_finite() {
        return Err(err());
    }
    Ok(v)
}

fn split_kind(spec: &str) -> (&str, &str) {
    match spec.split_once(':') {
        Some((k, rest)) => (k.trim(), rest.trim()),
        None => (spec.trim(), ""),
    }
}

fn params(kind: &str, body: &str, expected: usize) -> Result<Vec<f64>> {
    let values: Vec<f64> = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',').map(parse_number).collect::<Result<_>>()?
    };
    if values.len() != expected {
        return Err(Error::Parse(format!(
            "'{kind}' takes {expected} parameter(s), got {}",
            values.len()
        )));
    }
    Ok(values)
}

fn parse_dim(kind: &str, value: f64) -> Result<usize> {
    if value.fract() != 0.0 || !(1.0..=64.0).contains(&value) {
        return Err(Error::Parse(format!("'{kind}': invalid dimension {value}")));
    }
    Ok(value as usize)
}

/// Whether a string looks like a catalog name rather than a file path.
pub fn is_catalog_name(spec: &str) -> bool {
    const KINDS: [&str; 11] = [
        "bloch", "eq", "spin1", "qutrit", "mixed", "random", "pauli", "pd", "ad", "bf", "id",
    ];
    let (kind, _) = split_kind(spec);
    let base = kind.split('.').next().unwrap_or(kind);
    KINDS.contains(&base)
}

pub fn parse_state(spec: &str, tol: &Tolerances) -> Result<DensityState> {
    let (kind, body) = split_kind(spec);
    match kind {
        "bloch" => {
            let p = params(kind, body, 3)?;
            bloch_qubit(BlochVector::new(p[0], p[1], p[2]), tol)
        }
        "eq" => {
            let p = params(kind, body, 1)?;
            bloch_qubit(BlochVector::equatorial_family(p[0]), tol)
        }
        "spin1" => {
            let p = params(kind, body, 2)?;
            spin1_pure_state(p[0], p[1], tol)
        }
        "qutrit" => {
            let p = params(kind, body, 3)?;
            qutrit_family(p[0], p[1], p[2], tol)
        }
        "mixed" => {
            let p = params(kind, body, 1)?;
            Ok(DensityState::maximally_mixed(parse_dim(kind, p[0])?))
        }
        "random" => {
            let p = params(kind, body, 2)?;
            let dim = parse_dim(kind, p[0])?;
            if p[1] < 0.0 || p[1].fract() != 0.0 {
                return Err(Error::Parse(format!("'random': invalid seed {}", p[1])));
            }
            random_state(dim, &mut SeededGenerator::new(p[1] as u64), tol)
        }
        _ => Err(Error::Parse(format!("unknown state '{spec}'"))),
    }
}

/// A single name may expand to several observables (`pauli`, `spin1`).
pub fn parse_observables(spec: &str) -> Result<Vec<Observable>> {
    let s = spec.trim();
    let pick = |all: [Observable; 3], axis: &str| -> Result<Vec<Observable>> {
        let [x, y, z] = all;
        match axis {
            "x" => Ok(vec![x]),
            "y" => Ok(vec![y]),
            "z" => Ok(vec![z]),
            _ => Err(Error::Parse(format!("unknown axis in '{spec}'"))),
        }
    };
    match s.split_once('.') {
        None if s == "pauli" => Ok(pauli_observables().to_vec()),
        None if s == "spin1" => Ok(spin1_observables().to_vec()),
        Some(("pauli", axis)) => pick(pauli_observables(), axis),
        Some(("spin1", axis)) => pick(spin1_observables(), axis),
        _ => Err(Error::Parse(format!("unknown observable '{spec}'"))),
    }
}

pub fn parse_channel(spec: &str, tol: &Tolerances) -> Result<KrausChannel> {
    let (kind, body) = split_kind(spec);
    match kind {
        "pd" => phase_damping(params(kind, body, 1)?[0], tol),
        "ad" => amplitude_damping(params(kind, body, 1)?[0], tol),
        "bf" => bit_flip(params(kind, body, 1)?[0], tol),
        "id" => Ok(KrausChannel::identity(parse_dim(
            kind,
            params(kind, body, 1)?[0],
        )?)),
        _ => Err(Error::Parse(format!("unknown channel '{spec}'"))),
    }
}

/// Split a comma-separated target list. Tokens that start like a number are
/// parameters of the preceding name, so `pd:0.1,ad:0.1` and
/// `bloch:0,0,1,pauli` split as expected.
pub fn split_targets(list: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let numeric = token
            .chars()
            .next()
            .map(|ch| ch.is_ascii_digit() || ch == '-' || ch == '+' || ch == '.')
            .unwrap_or(false)
            || token.starts_with("pi");
        match out.last_mut() {
            Some(prev) if numeric && prev.contains(':') => {
                prev.push(',');
                prev.push_str(token);
            }
            _ => out.push(token.to_string()),
        }
    }
    out
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StateJson {
    Wrapped { rho: ComplexMatrix },
    Bare(ComplexMatrix),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ObservableJson {
    Wrapped { observable: ComplexMatrix },
    Many { observables: Vec<ComplexMatrix> },
    Bare(ComplexMatrix),
}

#[derive(Deserialize)]
struct ChannelJson {
    kraus: Vec<ComplexMatrix>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChannelsJson {
    One(ChannelJson),
    Many { channels: Vec<ChannelJson> },
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// `{"rho": <matrix>}` or a bare matrix.
pub fn state_from_json(text: &str, tol: &Tolerances) -> Result<DensityState> {
    let m = match serde_json::from_str::<StateJson>(text).map_err(json_err)? {
        StateJson::Wrapped { rho } => rho,
        StateJson::Bare(m) => m,
    };
    DensityState::new(m, tol)
}

/// `{"observable": <matrix>}`, `{"observables": [<matrix>, ...]}` or a bare matrix.
pub fn observables_from_json(text: &str, tol: &Tolerances) -> Result<Vec<Observable>> {
    let ms = match serde_json::from_str::<ObservableJson>(text).map_err(json_err)? {
        ObservableJson::Wrapped { observable } => vec![observable],
        ObservableJson::Many { observables } => observables,
        ObservableJson::Bare(m) => vec![m],
    };
    ms.into_iter().map(|m| Observable::new(m, tol)).collect()
}

/// `{"kraus": [<matrix>, ...]}`.
pub fn channel_from_json(text: &str, tol: &Tolerances) -> Result<KrausChannel> {
    let raw: ChannelJson = serde_json::from_str(text).map_err(json_err)?;
    KrausChannel::new(raw.kraus, tol)
}

/// `{"kraus": [...]}` or `{"channels": [{"kraus": [...]}, ...]}`.
pub fn channels_from_json(text: &str, tol: &Tolerances) -> Result<Vec<KrausChannel>> {
    let raw = match serde_json::from_str::<ChannelsJson>(text).map_err(json_err)? {
        ChannelsJson::One(c) => vec![c],
        ChannelsJson::Many { channels } => channels,
    };
    raw.into_iter()
        .map(|c| KrausChannel::new(c.kraus, tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn numbers_with_pi() {
        assert_eq!(parse_number("0.5").unwrap(), 0.5);
        assert_eq!(parse_number("pi").unwrap(), PI);
        assert_abs_diff_eq!(parse_number("pi/3").unwrap(), PI / 3.0);
        assert_abs_diff_eq!(parse_number("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_abs_diff_eq!(parse_number("0.5*pi").unwrap(), 0.5 * PI);
        assert_abs_diff_eq!(parse_number("-pi/4").unwrap(), -PI / 4.0);
        assert!(parse_number("pie").is_err());
        assert!(parse_number("abc").is_err());
        assert!(parse_number("inf").is_err());
    }

    #[test]
    fn target_splitting() {
        assert_eq!(
            split_targets("pd:0.1,ad:0.1,bf:0.1"),
            ["pd:0.1", "ad:0.1", "bf:0.1"]
        );
        assert_eq!(split_targets("pauli"), ["pauli"]);
        assert_eq!(split_targets("pauli.x, pauli.z"), ["pauli.x", "pauli.z"]);
        assert_eq!(split_targets("bloch:0,0,1,pauli"), ["bloch:0,0,1", "pauli"]);
        assert_eq!(split_targets("eq:pi/3,pd:0.1"), ["eq:pi/3", "pd:0.1"]);
    }

    #[test]
    fn state_names() {
        let tol = Tolerances::default();
        let rho = parse_state("bloch:0,0,1", &tol).unwrap();
        assert_abs_diff_eq!(rho.matrix().get(0, 0).re, 1.0);
        assert_eq!(parse_state("mixed:3", &tol).unwrap().dim(), 3);
        assert_eq!(parse_state("spin1:pi/4,pi/4", &tol).unwrap().dim(), 3);
        assert_eq!(parse_state("qutrit:0.5,1,2", &tol).unwrap().dim(), 3);
        assert_eq!(parse_state("eq:0", &tol).unwrap().dim(), 2);
        let a = parse_state("random:2,42", &tol).unwrap();
        let b = parse_state("random:2,42", &tol).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert!(matches!(
            parse_state("bloch:1,1", &tol),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_state("nope:1", &tol), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state("mixed:2.5", &tol),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_state("bloch:1,1,1", &tol),
            Err(Error::OutsideBlochBall(_))
        ));
    }

    #[test]
    fn observable_and_channel_names() {
        let tol = Tolerances::default();
        assert_eq!(parse_observables("pauli").unwrap().len(), 3);
        assert_eq!(parse_observables("spin1.z").unwrap()[0].dim(), 3);
        assert!(parse_observables("pauli.w").is_err());
        assert_eq!(parse_channel("pd:0.1", &tol).unwrap().len(), 2);
        assert_eq!(parse_channel("id:3", &tol).unwrap().dim(), 3);
        assert!(parse_channel("ad:2", &tol).is_err());
        assert!(is_catalog_name("pauli.x"));
        assert!(is_catalog_name("bloch:0,0,0"));
        assert!(!is_catalog_name("./state.json"));
    }

    #[test]
    fn json_wrappers() {
        let tol = Tolerances::default();
        let m = r#"{"dim":2,"entries":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#;
        assert_eq!(state_from_json(m, &tol).unwrap().dim(), 2);
        assert_eq!(
            state_from_json(&format!(r#"{{"rho":{m}}}"#), &tol)
                .unwrap()
                .dim(),
            2
        );
        let sx = r#"{"dim":2,"entries":[[[0,0],[1,0]],[[1,0],[0,0]]]}"#;
        assert_eq!(
            observables_from_json(&format!(r#"{{"observable":{sx}}}"#), &tol)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            observables_from_json(&format!(r#"{{"observables":[{sx},{sx}]}}"#), &tol)
                .unwrap()
                .len(),
            2
        );
        let id = r#"{"dim":2,"entries":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
        assert_eq!(
            channel_from_json(&format!(r#"{{"kraus":[{id}]}}"#), &tol)
                .unwrap()
                .len(),
            1
        );
        assert!(channel_from_json(&format!(r#"{{"kraus":[{m}]}}"#), &tol).is_err());
        assert!(state_from_json("{", &tol).is_err());
    }
}
