use alloc::vec;
use alloc::vec::Vec;

use crate::grid::FiniteSignal;
use crate::mild::s0_norm;
use crate::transforms::{gabor_analysis, gabor_synthesis, AtomSource, GaborCoefficients, GaborSystem};
use crate::{Error, Result};

/// Lattice points `(ti, sj)` whose physical coordinates satisfy
/// `max(|t|, |s|) ≤ radius`.
pub fn tf_box(sys: &GaborSystem, radius: f64) -> Vec<(usize, usize)> {
    sys.lattice()
        .filter(|&(ti, sj)| lattice_reach(sys, ti, sj) <= radius)
        .collect()
}

fn lattice_reach(sys: &GaborSystem, ti: usize, sj: usize) -> f64 {
    let (t, s) = sys.lattice_point(ti, sj).coords(sys.grid());
    t.abs().max(s.abs())
}

/// Distinct box radii at which [`tf_box`] gains lattice points, ascending.
pub fn box_radii(sys: &GaborSystem) -> Vec<f64> {
    let mut radii: Vec<f64> = sys.lattice().map(|(ti, sj)| lattice_reach(sys, ti, sj)).collect();
    radii.sort_by(|a, b| a.total_cmp(b));
    radii.dedup();
    radii
}

fn tail_from_coeffs(
    f: &FiniteSignal,
    sys: &GaborSystem,
    coeffs: &GaborCoefficients,
    mask: &[bool],
) -> Result<f64> {
    let kept = coeffs.restrict(|ti, sj| mask[ti * coeffs.cols + sj]);
    let partial = gabor_synthesis(&kept, sys, AtomSource::Window)?;
    s0_norm(&f.sub(&partial)?, sys.window())
}

/// `s0_norm(f − Σ_{λ∈F} ⟨f, π(λ)g̃⟩ π(λ)g)`, measured with the system window.
pub fn gabor_partial_sum_tail(
    f: &FiniteSignal,
    sys: &GaborSystem,
    set: &[(usize, usize)],
) -> Result<f64> {
    let coeffs = gabor_analysis(f, sys, AtomSource::Dual)?;
    let mut mask = vec![false; coeffs.values.len()];
    for &(ti, sj) in set {
        if ti >= coeffs.rows || sj >= coeffs.cols {
            return Err(Error::InvalidArgument("lattice index outside the system"));
        }
        mask[ti * coeffs.cols + sj] = true;
    }
    tail_from_coeffs(f, sys, &coeffs, &mask)
}

/// Outcome of [`tf_tightness`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TfTightness {
    /// Radius of the smallest sufficient centered box; `None` when the empty
    /// set already suffices.
    pub radius: Option<f64>,
    /// Tolerance was reached (false only when even the full lattice misses it).
    pub satisfied: bool,
    /// Worst tail over the set with no coefficients kept.
    pub empty_tail: f64,
    pub radii: Vec<f64>,
    /// Worst tail over the set for each box radius.
    pub worst_tails: Vec<f64>,
}

/// Smallest centered box `F0 ⊆ Λ` such that every signal has partial-sum
/// tail `≤ eps` for every box containing `F0`. Falls back to the full
/// lattice when no box reaches `eps`.
pub fn tf_tightness(signals: &[FiniteSignal], sys: &GaborSystem, eps: f64) -> Result<TfTightness> {
    if signals.is_empty() {
        return Err(Error::InvalidArgument("tightness needs at least one signal"));
    }
    let radii = box_radii(sys);
    let cols = sys.freq_count();
    let reach: Vec<f64> = sys.lattice().map(|(ti, sj)| lattice_reach(sys, ti, sj)).collect();
    let mut worst_tails = vec![0.0f64; radii.len()];
    let mut empty_tail: f64 = 0.0;
    for f in signals {
        empty_tail = empty_tail.max(s0_norm(f, sys.window())?);
        let coeffs = gabor_analysis(f, sys, AtomSource::Dual)?;
        for (k, r) in radii.iter().enumerate() {
            let mask: Vec<bool> = reach.iter().map(|x| x <= r).collect();
            debug_assert_eq!(mask.len(), coeffs.rows * cols);
            let tail = tail_from_coeffs(f, sys, &coeffs, &mask)?;
            worst_tails[k] = worst_tails[k].max(tail);
        }
    }
    let all_below = |from: usize| worst_tails[from..].iter().all(|t| *t <= eps);
    let (radius, satisfied) = if empty_tail <= eps && all_below(0) {
        (None, true)
    } else {
        match (0..radii.len()).find(|&k| all_below(k)) {
            Some(k) => (Some(radii[k]), true),
            None => (radii.last().copied(), false),
        }
    };
    Ok(TfTightness {
        radius,
        satisfied,
        empty_tail,
        radii,
        worst_tails,
    })
}
