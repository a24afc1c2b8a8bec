use alloc::vec;
use alloc::vec::Vec;

use crate::grid::FiniteSignal;
use crate::transforms::for_each_stft_row;
use crate::{Error, Result};

/// Discrete S0 norm: `(1/N) Σ_{λ} |V_g f(λ)|` over all `N²` TF points.
/// The TF cell has area `α · α = 1/N`.
pub fn s0_norm(f: &FiniteSignal, g: &FiniteSignal) -> Result<f64> {
    let mut acc = 0.0;
    for_each_stft_row(f, g, |_| true, |_, row| {
        acc += row.iter().map(|v| v.norm()).sum::<f64>();
    })?;
    Ok(acc / f.grid().n() as f64)
}

/// Discrete S0' norm: `max_λ |V_g f(λ)|`.
pub fn sop_norm(f: &FiniteSignal, g: &FiniteSignal) -> Result<f64> {
    let mut best: f64 = 0.0;
    for_each_stft_row(f, g, |_| true, |_, row| {
        best = row.iter().map(|v| v.norm()).fold(best, f64::max);
    })?;
    Ok(best)
}

/// `max |V_g(f − h)(t, s)|` over TF points with `max(|t|, |s|) ≤ R`
/// (physical coordinates). `R` beyond `β/2` covers the whole plane.
pub fn mild_distance(f: &FiniteSignal, h: &FiniteSignal, g: &FiniteSignal, radius: f64) -> Result<f64> {
    let report = mild_report(f, h, g, &[radius], 0.0)?;
    Ok(report.deviations[0])
}

/// Per-radius view of the mild distance between two signals.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MildReport {
    pub radius_schedule: Vec<f64>,
    pub deviations: Vec<f64>,
    /// `deviations[m] ≤ tolerance`.
    pub converged: Vec<bool>,
}

/// Evaluates the mild deviation at every radius of `radii` from one STFT of
/// `f − h`.
pub fn mild_report(
    f: &FiniteSignal,
    h: &FiniteSignal,
    g: &FiniteSignal,
    radii: &[f64],
    tolerance: f64,
) -> Result<MildReport> {
    if radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidArgument("mild distance radius must be positive"));
    }
    let diff = f.sub(h)?;
    let grid = *f.grid();
    let half = grid.beta() / 2.0;
    let clamped: Vec<f64> = radii.iter().map(|r| r.min(half)).collect();
    let widest = clamped.iter().copied().fold(0.0, f64::max);
    let mut deviations = vec![0.0f64; radii.len()];
    for_each_stft_row(
        &diff,
        g,
        |t| grid.shift_coord(t).abs() <= widest,
        |t, row| {
            let tc = grid.shift_coord(t).abs();
            for (s, v) in row.iter().enumerate() {
                let reach = tc.max(grid.shift_coord(s).abs());
                let mag = v.norm();
                for (dev, r) in deviations.iter_mut().zip(&clamped) {
                    if reach <= *r && mag > *dev {
                        *dev = mag;
                    }
                }
            }
        },
    )?;
    let converged = deviations.iter().map(|d| *d <= tolerance).collect();
    Ok(MildReport {
        radius_schedule: clamped,
        deviations,
        converged,
    })
}

/// Aggregated mild metric `Σ_{m≥1} 2^{−m} min(1, dev(R_m))` with
/// `R_m = m·β/8`. Radii from `m = 4` on cover the whole plane, so the tail
/// of the series collapses onto the `m = 4` term.
pub fn mild_metric(f: &FiniteSignal, h: &FiniteSignal, g: &FiniteSignal) -> Result<f64> {
    let beta = f.grid().beta();
    let radii: Vec<f64> = (1..=4).map(|m| m as f64 * beta / 8.0).collect();
    let report = mild_report(f, h, g, &radii, 0.0)?;
    let mut d = 0.0;
    for (m, dev) in report.deviations.iter().enumerate() {
        d += libm::ldexp(1.0, -(m as i32 + 1)) * dev.min(1.0);
    }
    d += libm::ldexp(1.0, -4) * report.deviations[3].min(1.0);
    Ok(d)
}
