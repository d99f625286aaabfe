use serde::{Deserialize, Serialize};

use crate::MagError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    M,
    GMaxValue,
    GMinValue,
    DLongtime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationCurve {
    pub quantity: Quantity,
    /// (B, value) with B strictly increasing.
    pub knots: Vec<(f64, f64)>,
    /// Values strictly increasing or strictly decreasing in B.
    pub monotone: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldEstimate {
    pub b_estimate: f64,
    /// Fields of the two knots enclosing the measured value.
    pub bracket: (f64, f64),
}

impl CalibrationCurve {
    pub fn new(quantity: Quantity, knots: Vec<(f64, f64)>) -> Result<Self, MagError> {
        if knots.len() < 2 || knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(MagError::BadGrid("calibration knots need strictly increasing B".into()));
        }
        let up = knots.windows(2).all(|w| w[1].1 > w[0].1);
        let down = knots.windows(2).all(|w| w[1].1 < w[0].1);
        Ok(Self {
            quantity,
            knots,
            monotone: up || down,
        })
    }
}

/// Piecewise-linear inverse of a monotone curve.
pub fn invert_field(curve: &CalibrationCurve, measured: f64) -> Result<FieldEstimate, MagError> {
    if !curve.monotone {
        return Err(MagError::NotMonotone(curve.quantity));
    }
    let k = &curve.knots;
    let (first, last) = (k[0].1, k[k.len() - 1].1);
    let (lo, hi) = (first.min(last), first.max(last));
    if !(lo..=hi).contains(&measured) {
        return Err(MagError::OutOfRange { value: measured, lo, hi });
    }
    for w in k.windows(2) {
        let ((b0, v0), (b1, v1)) = (w[0], w[1]);
        if (measured - v0) * (measured - v1) <= 0.0 {
            let b = if measured == v0 {
                b0
            } else if measured == v1 {
                b1
            } else {
                b0 + (b1 - b0) * (measured - v0) / (v1 - v0)
            };
            return Ok(FieldEstimate { b_estimate: b, bracket: (b0, b1) });
        }
    }
    unreachable!("value inside the range of a monotone curve")
}
