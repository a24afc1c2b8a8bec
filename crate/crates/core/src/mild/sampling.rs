use alloc::vec::Vec;

use num_complex::Complex64;

use crate::grid::FiniteSignal;
use crate::transforms::{fourier, inverse_fourier};
use crate::{Error, Result};

/// `Ш_r ∗ f`: `result[n] = Σ_{j < N/r} f[(n + j r) mod N]`, period `r·α`.
pub fn periodize(f: &FiniteSignal, r: usize) -> Result<FiniteSignal> {
    let grid = *f.grid();
    grid.check_stride(r)?;
    let n = grid.n();
    let v = f.values();
    Ok(FiniteSignal::from_fn(grid, |k| {
        (0..n / r).map(|j| v[(k + j * r) % n]).sum()
    }))
}

/// `α Ш_r · f`: keeps `f` on the comb nodes of stride `r`, zero elsewhere.
pub fn sample(f: &FiniteSignal, r: usize) -> Result<FiniteSignal> {
    let grid = *f.grid();
    grid.check_stride(r)?;
    let zero = Complex64::new(0.0, 0.0);
    Ok(FiniteSignal::from_fn(grid, |k| {
        if grid.is_comb_node(k, r) {
            f.values()[k]
        } else {
            zero
        }
    }))
}

/// Constant `c` in `fourier(sample(f, r)) = c · periodize(fourier(f), N/r)`.
/// Sampling at physical step `rα` with Riemann weight `α` gives `c = 1/r`.
pub fn sampling_duality_constant(r: usize) -> f64 {
    1.0 / r as f64
}

/// Node-value ratio in `fourier(periodize(f, r)) = κ · sample(fourier(f), N/r)`;
/// `κ = 1/(r α²) = N/r` (period `rα`, Dirac height `1/α`).
pub fn periodization_duality_constant(n: usize, r: usize) -> f64 {
    n as f64 / r as f64
}

/// Both sides of `Σ_k f(k) = Σ_k f̂(k)` over integer physical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PoissonCheck {
    pub time_sum: Complex64,
    pub freq_sum: Complex64,
    pub deviation: f64,
}

/// Sums `f` and `fourier(f)` over the integer points (index stride `L`).
pub fn poisson_check(f: &FiniteSignal) -> PoissonCheck {
    let grid = *f.grid();
    let l = grid.l();
    let integer_sum = |s: &FiniteSignal| -> Complex64 {
        s.values()
            .iter()
            .enumerate()
            .filter(|(k, _)| grid.is_comb_node(*k, l))
            .map(|(_, v)| *v)
            .sum()
    };
    let time_sum = integer_sum(f);
    let freq_sum = integer_sum(&fourier(f));
    PoissonCheck {
        time_sum,
        freq_sum,
        deviation: (time_sum - freq_sum).norm(),
    }
}

/// `(rα) Σ_{nodes of stride r} g[n] f[n]`, the Riemann sum of `∫ g f`.
pub fn riemann_functional(g: &FiniteSignal, f: &FiniteSignal, r: usize) -> Result<Complex64> {
    let grid = *f.grid();
    grid.check_same(g.grid())?;
    grid.check_stride(r)?;
    let sum: Complex64 = (0..grid.n())
        .filter(|&k| grid.is_comb_node(k, r))
        .map(|k| g.values()[k] * f.values()[k])
        .sum();
    Ok(sum * (r as f64 * grid.alpha()))
}

/// Low-pass used to cut one spectral copy out of the periodized spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReconstructionFilter {
    /// Indicator of `|m − c| ≤ band`.
    #[default]
    Box,
    /// `1` on `|m − c| ≤ band`, linear decay to `0` where the next spectral
    /// copy begins (`|m − c| = N/r − band`).
    Plateau,
}

/// Recovers a band-limited signal from its samples on the comb of stride `r`.
///
/// `samples` must vanish off the comb. `band` counts frequency indices kept on
/// each side of the center. Exact when `fourier(f)` lives in the band and
/// `N/r ≥ 2·band + 1`; otherwise [`Error::Aliasing`].
pub fn shannon_reconstruct(
    samples: &FiniteSignal,
    r: usize,
    band: usize,
    filter: ReconstructionFilter,
) -> Result<FiniteSignal> {
    let grid = *samples.grid();
    grid.check_stride(r)?;
    let needed = 2 * band + 1;
    let available = grid.n() / r;
    if needed > available {
        return Err(Error::Aliasing {
            band,
            stride: r,
            needed,
            available,
            overlap: needed - available,
        });
    }
    if samples
        .values()
        .iter()
        .enumerate()
        .any(|(k, v)| !grid.is_comb_node(k, r) && v.norm_sqr() != 0.0)
    {
        return Err(Error::InvalidArgument("samples are not supported on the comb"));
    }
    let spectrum = fourier(samples);
    let edge = (available - band) as f64;
    let gain: Vec<f64> = (0..grid.n())
        .map(|m| {
            let d = grid.offset(m).unsigned_abs() as usize;
            if d <= band {
                1.0
            } else {
                match filter {
                    ReconstructionFilter::Box => 0.0,
                    ReconstructionFilter::Plateau => {
                        ((edge - d as f64) / (edge - band as f64)).max(0.0)
                    }
                }
            }
        })
        .collect();
    let scale = r as f64;
    let filtered = FiniteSignal::from_fn(grid, |m| spectrum.values()[m] * (gain[m] * scale));
    Ok(inverse_fourier(&filtered))
}
