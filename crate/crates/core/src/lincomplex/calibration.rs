use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monte Carlo fit of the jump count at one stream length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityFit {
    pub n_bits: usize,
    pub streams: u64,
    /// Sample mean of `J - n/4`.
    pub mean_intercept: f64,
    /// Sample variance of `J` minus `n/8`.
    pub variance_intercept: f64,
}

/// Null-model constants for the jump test.
///
/// The intercepts depend on the parity of `n` but not on its size, so one
/// short-stream fit per parity covers every length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JumpCalibration {
    pub reference: String,
    pub seed: u64,
    pub even: ParityFit,
    pub odd: ParityFit,
}

const SHIPPED: &str = include_str!("../../data/jump_calibration.json");

impl JumpCalibration {
    /// Constants shipped in `data/jump_calibration.json`.
    pub fn shipped() -> &'static JumpCalibration {
        static CAL: OnceLock<JumpCalibration> = OnceLock::new();
        CAL.get_or_init(|| Self::from_json(SHIPPED).expect("shipped calibration parses"))
    }

    /// The uncalibrated model: mean `n/4`, variance `n/8`.
    pub fn uncalibrated() -> JumpCalibration {
        let fit = |n_bits| ParityFit {
            n_bits,
            streams: 0,
            mean_intercept: 0.0,
            variance_intercept: 0.0,
        };
        JumpCalibration {
            reference: "none".into(),
            seed: 0,
            even: fit(0),
            odd: fit(1),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("jump calibration: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    fn fit(&self, n: usize) -> &ParityFit {
        if n.is_multiple_of(2) {
            &self.even
        } else {
            &self.odd
        }
    }

    pub fn mean(&self, n: usize) -> f64 {
        n as f64 / 4.0 + self.fit(n).mean_intercept
    }

    pub fn variance(&self, n: usize) -> f64 {
        n as f64 / 8.0 + self.fit(n).variance_intercept
    }
}
