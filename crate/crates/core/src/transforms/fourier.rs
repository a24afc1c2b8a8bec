use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::fft::Fft;
use crate::grid::{FiniteSignal, GridModel};
use crate::Result;

/// Centered transform with continuum normalization:
/// `f̂[m] = α Σ_n f[n] e^{−2πi (n−c)(m−c)/N}`.
///
/// The kernel is `N`-periodic in each offset, so this is a plain FFT of the
/// input rotated by `c`, read back rotated by `c`.
pub fn fourier(f: &FiniteSignal) -> FiniteSignal {
    centered(f, &Fft::new(f.len()), false)
}

/// Conjugate-kernel transform with the same `α` weight; inverse of [`fourier`].
pub fn inverse_fourier(f: &FiniteSignal) -> FiniteSignal {
    centered(f, &Fft::new(f.len()), true)
}

pub(crate) fn centered(f: &FiniteSignal, plan: &Fft, inverse: bool) -> FiniteSignal {
    let grid = *f.grid();
    let n = grid.n();
    let c = grid.center();
    let mut buf = rotate_in(&grid, f.values());
    if inverse {
        plan.backward(&mut buf);
    } else {
        plan.forward(&mut buf);
    }
    let alpha = grid.alpha();
    FiniteSignal::from_raw(grid, (0..n).map(|m| buf[(m + n - c) % n] * alpha).collect())
}

/// `out[j] = values[(j + c) mod N]`: index `j` becomes offset `j` from the center.
pub(crate) fn rotate_in(grid: &GridModel, values: &[Complex64]) -> Vec<Complex64> {
    let n = grid.n();
    let c = grid.center();
    (0..n).map(|j| values[(j + c) % n]).collect()
}

/// Direct `O(N²)` evaluation of the defining sum of [`fourier`]; reference route.
pub fn fourier_direct(f: &FiniteSignal) -> FiniteSignal {
    let grid = *f.grid();
    let n = grid.n() as i128;
    let alpha = grid.alpha();
    FiniteSignal::from_fn(grid, |m| {
        let om = grid.offset(m) as i128;
        let sum: Complex64 = f
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let e = (grid.offset(k) as i128 * om).rem_euclid(n);
                let (s, c) = libm::sincos(2.0 * PI * e as f64 / n as f64);
                v * Complex64::new(c, -s)
            })
            .sum();
        sum * alpha
    })
}

/// `(f ∗ h)(x) = α Σ_y f(y) h(x − y)` on physical coordinates, i.e. the
/// pointwise action `σ(T_x ȟ)`. Evaluated directly, `O(N²)`.
pub fn convolve(f: &FiniteSignal, h: &FiniteSignal) -> Result<FiniteSignal> {
    f.grid().check_same(h.grid())?;
    let grid = *f.grid();
    let n = grid.n();
    let c = grid.center();
    let alpha = grid.alpha();
    let fv = f.values();
    let hv = h.values();
    let nonzero: Vec<usize> = (0..n).filter(|&k| fv[k].norm_sqr() != 0.0).collect();
    Ok(FiniteSignal::from_fn(grid, |x| {
        let sum: Complex64 = nonzero
            .iter()
            .map(|&k| fv[k] * hv[(x + c + n - k) % n])
            .sum();
        sum * alpha
    }))
}

/// Entrywise product, no weight.
pub fn multiply(f: &FiniteSignal, h: &FiniteSignal) -> Result<FiniteSignal> {
    f.grid().check_same(h.grid())?;
    Ok(FiniteSignal::from_raw(
        *f.grid(),
        f.values().iter().zip(h.values()).map(|(a, b)| a * b).collect(),
    ))
}
