//! Gabor systems on the lattice `Λ = aZ_N × bZ_N`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::stft::check_window;
use crate::fft::Fft;
use crate::grid::{FiniteSignal, GridModel, TfPoint};
use crate::linalg::{hermitian_embedding, hermitian_pd_solve, sym_eigen};
use crate::{Error, Result};

/// Relative residual the dual window solve must reach.
pub const DUAL_TOLERANCE: f64 = 1e-12;
/// Largest `N` for which the dense block solve backs up conjugate gradients.
pub const DENSE_FALLBACK_MAX_N: usize = 1024;
/// Condition number of `S` above which the system is treated as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;
/// Frame bounds are checked before solving when `b` is at most this.
pub const BOUNDS_CHECK_MAX_B: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct GaborSystem {
    grid: GridModel,
    window: FiniteSignal,
    a: usize,
    b: usize,
    dual: Option<FiniteSignal>,
}

/// Which atom family to use for analysis or synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomSource {
    Window,
    Dual,
}

impl GaborSystem {
    pub fn new(window: FiniteSignal, a: usize, b: usize) -> Result<Self> {
        let grid = *window.grid();
        grid.check_stride(a)?;
        grid.check_stride(b)?;
        check_window(&window)?;
        Ok(Self {
            grid,
            window,
            a,
            b,
            dual: None,
        })
    }

    /// Builds the system and solves for its canonical dual.
    pub fn with_dual(mut self) -> Result<Self> {
        dual_window(&mut self)?;
        Ok(self)
    }

    pub fn grid(&self) -> &GridModel {
        &self.grid
    }

    pub fn window(&self) -> &FiniteSignal {
        &self.window
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn dual(&self) -> Option<&FiniteSignal> {
        self.dual.as_ref()
    }

    /// Number of lattice points along time, `N/a`.
    pub fn time_count(&self) -> usize {
        self.grid.n() / self.a
    }

    /// Number of lattice points along frequency, `N/b`.
    pub fn freq_count(&self) -> usize {
        self.grid.n() / self.b
    }

    /// `N / (a·b)`.
    pub fn redundancy(&self) -> f64 {
        self.grid.n() as f64 / (self.a * self.b) as f64
    }

    pub fn lattice_point(&self, ti: usize, sj: usize) -> TfPoint {
        TfPoint {
            t_idx: ti * self.a,
            s_idx: sj * self.b,
        }
    }

    /// Lattice indices `(ti, sj)` in row-major order.
    pub fn lattice(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.freq_count();
        (0..self.time_count() * cols).map(move |k| (k / cols, k % cols))
    }

    fn atoms(&self, source: AtomSource) -> Result<&FiniteSignal> {
        match source {
            AtomSource::Window => Ok(&self.window),
            AtomSource::Dual => self.dual.as_ref().ok_or(Error::MissingDual),
        }
    }
}

/// Coefficients indexed by the lattice, `(N/a) × (N/b)`, time-major:
/// entry `(ti, sj)` belongs to `λ = (ti·a, sj·b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaborCoefficients {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<Complex64>,
}

impl GaborCoefficients {
    #[inline]
    pub fn get(&self, ti: usize, sj: usize) -> Complex64 {
        self.values[ti * self.cols + sj]
    }

    /// Zeroes every coefficient for which `keep(ti, sj)` is false.
    pub fn restrict(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let mut out = self.clone();
        for (k, v) in out.values.iter_mut().enumerate() {
            if !keep(k / self.cols, k % self.cols) {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        out
    }
}

/// `c(λ) = ⟨f, π(λ)γ⟩` with `γ` the window or the dual.
pub fn gabor_analysis(
    f: &FiniteSignal,
    sys: &GaborSystem,
    source: AtomSource,
) -> Result<GaborCoefficients> {
    f.grid().check_same(&sys.grid)?;
    let atom = sys.atoms(source)?;
    let grid = sys.grid;
    let n = grid.n();
    let c = grid.center();
    let alpha = grid.alpha();
    let plan = Fft::new(n);
    let (rows, cols) = (sys.time_count(), sys.freq_count());
    let fv = f.values();
    let gv = atom.values();
    let mut values = Vec::with_capacity(rows * cols);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for ti in 0..rows {
        let t = ti * sys.a;
        for (j, slot) in buf.iter_mut().enumerate() {
            let k = (j + c) % n;
            *slot = fv[k] * gv[(k + n - t) % n].conj();
        }
        plan.forward(&mut buf);
        values.extend((0..cols).map(|sj| buf[sj * sys.b] * alpha));
    }
    Ok(GaborCoefficients { rows, cols, values })
}

/// `Σ_λ c(λ) π(λ)γ` with `γ` the window or the dual.
pub fn gabor_synthesis(
    coeffs: &GaborCoefficients,
    sys: &GaborSystem,
    source: AtomSource,
) -> Result<FiniteSignal> {
    let atom = sys.atoms(source)?;
    if coeffs.rows != sys.time_count() || coeffs.cols != sys.freq_count() {
        return Err(Error::LengthMismatch {
            expected: sys.time_count() * sys.freq_count(),
            found: coeffs.rows * coeffs.cols,
        });
    }
    let grid = sys.grid;
    let n = grid.n();
    let c = grid.center();
    let plan = Fft::new(n);
    let gv = atom.values();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for ti in 0..coeffs.rows {
        let row = &coeffs.values[ti * coeffs.cols..(ti + 1) * coeffs.cols];
        if row.iter().all(|v| v.norm_sqr() == 0.0) {
            continue;
        }
        buf.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (sj, v) in row.iter().enumerate() {
            buf[sj * sys.b] = *v;
        }
        // buf[j] = Σ_sj c e^{2πi sj b j/N}, j the offset from the center
        plan.backward(&mut buf);
        let t = ti * sys.a;
        for (k, o) in out.iter_mut().enumerate() {
            *o += buf[(k + n - c) % n] * gv[(k + n - t) % n];
        }
    }
    Ok(FiniteSignal::from_raw(grid, out))
}

/// `S f = Σ_λ ⟨f, π(λ)g⟩ π(λ)g`, evaluated as analysis followed by synthesis.
pub fn frame_operator(sys: &GaborSystem, f: &FiniteSignal) -> Result<FiniteSignal> {
    let coeffs = gabor_analysis(f, sys, AtomSource::Window)?;
    gabor_synthesis(&coeffs, sys, AtomSource::Window)
}

/// Walnut form of the frame operator. With `q = N/b`,
/// `S f[n] = α q Σ_{d<b} G_d[n] f[n + dq]` and
/// `G_d[n] = Σ_{t ∈ aZ_N} g[n − t] conj(g[n + dq − t])`.
struct Walnut {
    n: usize,
    q: usize,
    b: usize,
    // G_d[n] at d * n_points + n, already multiplied by α q
    diagonals: Vec<Complex64>,
}

impl Walnut {
    fn new(sys: &GaborSystem) -> Self {
        let n = sys.grid.n();
        let q = n / sys.b;
        let b = sys.b;
        let gv = sys.window.values();
        let scale = sys.grid.alpha() * q as f64;
        let mut diagonals = vec![Complex64::new(0.0, 0.0); b * n];
        for d in 0..b {
            for idx in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for ti in 0..sys.time_count() {
                    let t = ti * sys.a;
                    acc += gv[(idx + n - t) % n] * gv[(idx + d * q + n - t) % n].conj();
                }
                diagonals[d * n + idx] = acc * scale;
            }
        }
        Self { n, q, b, diagonals }
    }

    fn apply(&self, x: &[Complex64], out: &mut [Complex64]) {
        let n = self.n;
        for (idx, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for d in 0..self.b {
                acc += self.diagonals[d * n + idx] * x[(idx + d * self.q) % n];
            }
            *o = acc;
        }
    }

    /// The `b × b` Hermitian block on indices `n0 + iq`, row-major.
    fn block(&self, n0: usize) -> Vec<Complex64> {
        let b = self.b;
        let n = self.n;
        let mut m = vec![Complex64::new(0.0, 0.0); b * b];
        for i in 0..b {
            let row = n0 + i * self.q;
            for k in 0..b {
                let d = (k + b - i) % b;
                m[i * b + k] = self.diagonals[d * n + row];
            }
        }
        m
    }
}

/// Optimal frame bounds, i.e. the extreme eigenvalues of `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    /// `upper / lower`, infinite when `lower ≤ 0`.
    pub condition: f64,
}

/// Exact frame bounds from the `N/b` Walnut blocks of size `b × b`.
pub fn frame_bounds(sys: &GaborSystem) -> FrameBounds {
    let walnut = Walnut::new(sys);
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for n0 in 0..walnut.q {
        let eig = sym_eigen(hermitian_embedding(&walnut.block(n0), walnut.b), 2 * walnut.b);
        lower = lower.min(eig.min());
        upper = upper.max(eig.max());
    }
    let condition = if lower > 0.0 { upper / lower } else { f64::INFINITY };
    FrameBounds {
        lower,
        upper,
        condition,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DualMethod {
    ConjugateGradient,
    DenseBlocks,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualReport {
    pub method: DualMethod,
    pub iterations: usize,
    /// `‖S g̃ − g‖₂ / ‖g‖₂`.
    pub residual: f64,
}

fn norm2(x: &[Complex64]) -> f64 {
    libm::sqrt(x.iter().map(|v| v.norm_sqr()).sum())
}

fn relative_residual(walnut: &Walnut, x: &[Complex64], rhs: &[Complex64]) -> f64 {
    let mut sx = vec![Complex64::new(0.0, 0.0); x.len()];
    walnut.apply(x, &mut sx);
    let r: Vec<Complex64> = sx.iter().zip(rhs).map(|(a, b)| a - b).collect();
    norm2(&r) / norm2(rhs)
}

fn conjugate_gradient(walnut: &Walnut, rhs: &[Complex64], max_iter: usize) -> (Vec<Complex64>, usize) {
    let n = rhs.len();
    let target = DUAL_TOLERANCE * norm2(rhs) * 0.5;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut r = rhs.to_vec();
    let mut p = r.clone();
    let mut ap = vec![Complex64::new(0.0, 0.0); n];
    let mut rr: f64 = r.iter().map(|v| v.norm_sqr()).sum();
    let mut it = 0;
    while it < max_iter && libm::sqrt(rr) > target {
        walnut.apply(&p, &mut ap);
        let pap: f64 = p.iter().zip(&ap).map(|(u, v)| (u.conj() * v).re).sum();
        if !(pap > 0.0) {
            break;
        }
        let step = rr / pap;
        for k in 0..n {
            x[k] += p[k] * step;
            r[k] -= ap[k] * step;
        }
        let rr_next: f64 = r.iter().map(|v| v.norm_sqr()).sum();
        let beta = rr_next / rr;
        for k in 0..n {
            p[k] = r[k] + p[k] * beta;
        }
        rr = rr_next;
        it += 1;
    }
    (x, it)
}

/// Canonical dual window `g̃ = S⁻¹ g`, stored in `sys`.
///
/// Conjugate gradients on `S` (at most `10·N` iterations) to a relative
/// residual of [`DUAL_TOLERANCE`]; for `N ≤ 1024` a dense solve of the Walnut
/// blocks is tried when CG stalls. Fails with [`Error::NotAFrame`] when neither
/// reaches the tolerance, and with [`Error::IllConditioned`] when the exact
/// frame bounds (computed for `b ≤ 64`) exceed [`SINGULAR_CONDITION`]. A
/// singular `S` still has `g` in its range, so the solve alone cannot tell.
pub fn dual_window(sys: &mut GaborSystem) -> Result<DualReport> {
    if sys.b <= BOUNDS_CHECK_MAX_B {
        let fb = frame_bounds(sys);
        if !(fb.condition <= SINGULAR_CONDITION) {
            return Err(Error::IllConditioned {
                lower: fb.lower,
                upper: fb.upper,
            });
        }
    }
    let walnut = Walnut::new(sys);
    let n = sys.grid.n();
    let rhs = sys.window.values().to_vec();
    let max_iter = 10 * n;
    let (x, iterations) = conjugate_gradient(&walnut, &rhs, max_iter);
    let mut residual = relative_residual(&walnut, &x, &rhs);
    let mut best = (x, DualMethod::ConjugateGradient);
    if !(residual <= DUAL_TOLERANCE) && n <= DENSE_FALLBACK_MAX_N {
        if let Some(dense) = dense_solve(&walnut, &rhs) {
            let r = relative_residual(&walnut, &dense, &rhs);
            if r < residual || !residual.is_finite() {
                residual = r;
                best = (dense, DualMethod::DenseBlocks);
            }
        }
    }
    if !(residual <= DUAL_TOLERANCE) {
        return Err(Error::NotAFrame {
            residual,
            iterations,
        });
    }
    sys.dual = Some(FiniteSignal::new(sys.grid, best.0).map_err(|_| Error::NotAFrame {
        residual,
        iterations,
    })?);
    Ok(DualReport {
        method: best.1,
        iterations,
        residual,
    })
}

fn dense_solve(walnut: &Walnut, rhs: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut x = vec![Complex64::new(0.0, 0.0); walnut.n];
    for n0 in 0..walnut.q {
        let eig = sym_eigen(hermitian_embedding(&walnut.block(n0), walnut.b), 2 * walnut.b);
        let local: Vec<Complex64> = (0..walnut.b).map(|i| rhs[n0 + i * walnut.q]).collect();
        let sol = hermitian_pd_solve(&eig, &local)?;
        for (i, v) in sol.into_iter().enumerate() {
            x[n0 + i * walnut.q] = v;
        }
    }
    Some(x)
}

/// `S` applied through the Walnut diagonals; must agree with [`frame_operator`].
pub fn frame_operator_walnut(sys: &GaborSystem, f: &FiniteSignal) -> Result<FiniteSignal> {
    f.grid().check_same(&sys.grid)?;
    let walnut = Walnut::new(sys);
    let mut out = vec![Complex64::new(0.0, 0.0); f.len()];
    walnut.apply(f.values(), &mut out);
    Ok(FiniteSignal::from_raw(sys.grid, out))
}
