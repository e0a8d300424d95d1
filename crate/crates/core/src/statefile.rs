//! JSON state files.
//!
//! ```json
//! { "n": 3, "dicke": [[0.7071, 0], [0, 0], [0, 0], [0.7071, 0]] }
//! { "n": 3, "majorana": [ {"a": [1, 0], "b": [0, 0], "mult": 2},
//!                         {"a": [0, 0], "b": [1, 0], "mult": 1} ] }
//! ```
//!
//! Exactly one of `dicke` / `majorana` must be present. Other fields are
//! ignored, so the `analyze --json` output reads back as a state file.

use crate::error::{Error, Result};
use crate::majorana::majorana_compose;
use crate::mat2::C64;
use crate::model::{canonicalize_point, Cluster, MajoranaSet, SymmetricState, TAU_POINT};
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
struct RawPoint {
    a: [f64; 2],
    b: [f64; 2],
    mult: usize,
}

#[derive(Deserialize)]
struct RawState {
    n: usize,
    dicke: Option<Vec<[f64; 2]>>,
    majorana: Option<Vec<RawPoint>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Dicke,
    Majorana,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedState {
    pub state: SymmetricState,
    pub source: Source,
    /// The input was not normalized and has been rescaled.
    pub renormalized: bool,
}

fn complex(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

pub fn parse_state(text: &str) -> Result<LoadedState> {
    let raw: RawState = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if raw.n == 0 {
        return Err(Error::Format("n must be at least 1".into()));
    }
    match (raw.dicke, raw.majorana) {
        (Some(amps), None) => {
            if amps.len() != raw.n + 1 {
                return Err(Error::Format(format!(
                    "expected {} Dicke amplitudes for n = {}, found {}",
                    raw.n + 1,
                    raw.n,
                    amps.len()
                )));
            }
            let amps: Vec<C64> = amps.into_iter().map(complex).collect();
            let norm = amps.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let state = SymmetricState::new(amps).map_err(|e| Error::Format(e.to_string()))?;
            Ok(LoadedState {
                state,
                source: Source::Dicke,
                renormalized: (norm - 1.0).abs() > 1e-12,
            })
        }
        (None, Some(points)) => {
            let total: usize = points.iter().map(|p| p.mult).sum();
            if total != raw.n {
                return Err(Error::Format(format!(
                    "multiplicities sum to {total}, expected n = {}",
                    raw.n
                )));
            }
            let clusters = points
                .into_iter()
                .map(|p| {
                    let point = canonicalize_point(complex(p.a), complex(p.b))
                        .map_err(|e| Error::Format(e.to_string()))?;
                    Ok(Cluster { point, multiplicity: p.mult })
                })
                .collect::<Result<Vec<_>>>()?;
            let set = MajoranaSet::new(clusters, TAU_POINT).map_err(|e| Error::Format(e.to_string()))?;
            Ok(LoadedState {
                state: majorana_compose(&set)?,
                source: Source::Majorana,
                renormalized: false,
            })
        }
        (Some(_), Some(_)) => Err(Error::Format("both \"dicke\" and \"majorana\" given".into())),
        (None, None) => Err(Error::Format("one of \"dicke\" or \"majorana\" is required".into())),
    }
}

pub fn read_state_file(path: &Path) -> Result<LoadedState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_state(&text)
}

pub fn complex_json(z: C64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

/// `{"n": .., "dicke": [[re, im], ...]}`.
pub fn state_json(state: &SymmetricState) -> serde_json::Value {
    serde_json::json!({
        "n": state.n(),
        "dicke": state.amplitudes().iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
    })
}
