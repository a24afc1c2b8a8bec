use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::fft::Fft;
use crate::grid::{FiniteSignal, GridModel, TfPoint};
use crate::{Error, Result};

/// Largest `N` for which the full `N × N` STFT is materialized.
pub const STFT_MAX_N: usize = 4096;

/// `V_g f` sampled on the whole discrete TF-plane, `N × N`, time-major:
/// entry `(t_idx, s_idx)` is `inner(f, π(t_idx, s_idx) g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StftMap {
    grid: GridModel,
    window: FiniteSignal,
    values: Vec<Complex64>,
}

impl StftMap {
    pub fn grid(&self) -> &GridModel {
        &self.grid
    }

    pub fn window(&self) -> &FiniteSignal {
        &self.window
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, lambda: TfPoint) -> Complex64 {
        self.values[lambda.t_idx * self.grid.n() + lambda.s_idx]
    }

    pub fn row(&self, t_idx: usize) -> &[Complex64] {
        let n = self.grid.n();
        &self.values[t_idx * n..(t_idx + 1) * n]
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn check_window(g: &FiniteSignal) -> Result<()> {
    if g.values().iter().all(|v| v.norm_sqr() == 0.0) {
        return Err(Error::ZeroWindow);
    }
    Ok(())
}

/// Streams the STFT one time row at a time; `visit(t_idx, row)` sees
/// `row[s_idx] = V_g f(t_idx, s_idx)`.
pub(crate) fn for_each_stft_row(
    f: &FiniteSignal,
    g: &FiniteSignal,
    rows: impl Fn(usize) -> bool,
    mut visit: impl FnMut(usize, &[Complex64]),
) -> Result<()> {
    f.grid().check_same(g.grid())?;
    check_window(g)?;
    let grid = *f.grid();
    let n = grid.n();
    let c = grid.center();
    let alpha = grid.alpha();
    let plan = Fft::new(n);
    let fv = f.values();
    let gv = g.values();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for t in (0..n).filter(|&t| rows(t)) {
        // V(t, s) = α Σ_j f[j+c] conj(g[j+c−t]) e^{−2πi s j/N}
        for (j, slot) in buf.iter_mut().enumerate() {
            let k = (j + c) % n;
            *slot = fv[k] * gv[(k + n - t) % n].conj();
        }
        plan.forward(&mut buf);
        for v in buf.iter_mut() {
            *v *= alpha;
        }
        visit(t, &buf);
    }
    Ok(())
}

/// Full short-time Fourier transform `V_g f(t, s) = ⟨f, M_s T_t g⟩`.
pub fn stft(f: &FiniteSignal, g: &FiniteSignal) -> Result<StftMap> {
    let grid = *f.grid();
    let n = grid.n();
    if n > STFT_MAX_N {
        return Err(Error::TooLarge(n));
    }
    let mut values = Vec::with_capacity(n * n);
    for_each_stft_row(f, g, |_| true, |_, row| values.extend_from_slice(row))?;
    Ok(StftMap {
        grid,
        window: g.clone(),
        values,
    })
}
