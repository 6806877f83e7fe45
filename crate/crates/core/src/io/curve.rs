//! Plot data for membership functions.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::fuzzy::AlphaFuzzy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    /// The stored step function: membership is the highest level whose cut contains `x`.
    Step,
    /// Straight lines between cut endpoints; a visual aid, not the stored data.
    Linear,
}

impl FromStr for Interpolation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "step" => Ok(Interpolation::Step),
            "linear" => Ok(Interpolation::Linear),
            other => Err(format!("unknown interpolation `{other}` (expected step or linear)")),
        }
    }
}

/// `(x, membership)` points, left endpoints by rising level then right
/// endpoints by falling level.
pub fn curve_points(f: &AlphaFuzzy, mode: Interpolation) -> Vec<(f64, f64)> {
    let n = f.n_cuts();
    let left = (0..n).map(|k| (f.cut(k).lo, k));
    let right = (0..n).rev().map(|k| (f.cut(k).hi, k));
    left.chain(right)
        .map(|(x, k)| match mode {
            Interpolation::Step => (x, f.membership_at(x)),
            Interpolation::Linear => (x, f.alpha(k)),
        })
        .collect()
}

pub fn curve_csv(f: &AlphaFuzzy, mode: Interpolation) -> String {
    let mut out = String::from("x,membership\n");
    for (x, m) in curve_points(f, mode) {
        writeln!(out, "{x},{m}").unwrap();
    }
    out
}
