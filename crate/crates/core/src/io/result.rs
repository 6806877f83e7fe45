//! JSON result files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{check_arrays, AnalysisError, AnalysisResult};
use crate::fuzzy::{AlphaFuzzy, Interval};

/// On-disk form of an [`AnalysisResult`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub engine: String,
    pub n_cuts: usize,
    pub alpha: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crisp_value: Option<f64>,
    pub wall_time_ms: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum ResultFileError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed result file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("result violates its invariants: {0}")]
    Invalid(#[from] AnalysisError),
}

impl From<&AnalysisResult> for ResultFile {
    fn from(r: &AnalysisResult) -> Self {
        ResultFile {
            engine: r.engine.to_string(),
            n_cuts: r.n_cuts,
            alpha: r.alpha.clone(),
            lower: r.lower.clone(),
            upper: r.upper.clone(),
            crisp_value: r.crisp_value(),
            wall_time_ms: r.wall_time.as_secs_f64() * 1e3,
        }
    }
}

impl ResultFile {
    pub fn check(&self) -> Result<(), AnalysisError> {
        check_arrays(self.n_cuts, &self.alpha, &self.lower, &self.upper)
    }

    pub fn to_fuzzy(&self) -> Result<AlphaFuzzy, ResultFileError> {
        self.check()?;
        let cuts = self.lower.iter().zip(&self.upper).map(|(&lo, &hi)| Interval::new(lo, hi)).collect();
        Ok(AlphaFuzzy::from_cuts(cuts).map_err(AnalysisError::from)?)
    }

    /// Pretty JSON; invariants are re-checked first.
    pub fn to_json(&self) -> Result<String, ResultFileError> {
        self.check()?;
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self, ResultFileError> {
        let r: ResultFile = serde_json::from_str(text)?;
        r.check()?;
        Ok(r)
    }

    pub fn write(&self, path: &Path) -> Result<(), ResultFileError> {
        let text = self.to_json()?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, ResultFileError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
