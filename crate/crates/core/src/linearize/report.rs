//! Serializable summaries of linearization runs.

use serde::{Deserialize, Serialize};

use super::homological::{LinearizeOutcome, ResonanceObstruction};
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearizationStatus {
    Linearized,
    Obstructed,
    Error,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinearizationReport {
    pub status: LinearizationStatus,
    pub maxdeg: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ResonanceObstruction>,
    /// The pushforward residual is `O(|x|^d)` with this `d`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_residual_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl LinearizationReport {
    pub fn new(maxdeg: u32, outcome: &Result<LinearizeOutcome, Error>) -> Self {
        let mut rep = LinearizationReport {
            status: LinearizationStatus::Error,
            maxdeg,
            map: None,
            obstruction: None,
            certificate_residual_degree: None,
            error: None,
        };
        match outcome {
            Ok(LinearizeOutcome::Linearized(l)) => {
                rep.status = LinearizationStatus::Linearized;
                rep.map = Some(l.map.components().iter().map(ToString::to_string).collect());
                rep.certificate_residual_degree = Some(maxdeg + 1);
            }
            Ok(LinearizeOutcome::Obstructed(o)) => {
                rep.status = LinearizationStatus::Obstructed;
                rep.obstruction = Some(o.clone());
            }
            Err(e) => rep.error = Some(e.to_string()),
        }
        rep
    }
}
