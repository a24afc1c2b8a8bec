//! Generalized stochastic processes on the finite group.
//!
//! A process is modeled by a covariance on `C^N`; an ensemble holds `M`
//! Gaussian realizations drawn from it. Pairing a realization `x` with a test
//! signal `f` through [`inner`](crate::inner) gives one sample of the random
//! functional `ρ(f)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::grid::{FiniteSignal, GridModel};
use crate::linalg::{hermitian_embedding, sym_eigen};
use crate::transforms::{fourier, inverse_fourier};
use crate::{Error, Result};

/// Name of the pseudo-random generator behind [`simulate`]. Row `m` is drawn
/// from `ChaCha8Rng::seed_from_u64(seed)` switched to stream `m`.
pub const GENERATOR: &str = "ChaCha8Rng";

/// Smallest eigenvalue (relative to `max(1, λ_max)`) accepted as PSD.
pub const PSD_FLOOR: f64 = -1e-10;

const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum CovarianceKind {
    /// Independent entries, `E|x_n|² = variance / α`.
    White { variance: f64 },
    /// Circulant covariance with spectral density `symbol` (real, `≥ 0`).
    Stationary { symbol: FiniteSignal },
    /// Arbitrary Hermitian PSD matrix, row-major `N × N`.
    General { matrix: Vec<Complex64> },
}

impl CovarianceKind {
    pub fn name(&self) -> &'static str {
        match self {
            CovarianceKind::White { .. } => "white",
            CovarianceKind::Stationary { .. } => "stationary",
            CovarianceKind::General { .. } => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceSpec {
    grid: GridModel,
    kind: CovarianceKind,
}

impl CovarianceSpec {
    pub fn white(grid: GridModel, variance: f64) -> Result<Self> {
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(Error::InvalidArgument("white noise variance must be positive"));
        }
        Ok(Self {
            grid,
            kind: CovarianceKind::White { variance },
        })
    }

    pub fn stationary(symbol: FiniteSignal) -> Result<Self> {
        let tol = HERMITIAN_TOL * symbol.max_abs().max(1.0);
        if symbol.values().iter().any(|v| v.im.abs() > tol || v.re < -tol) {
            return Err(Error::InvalidArgument("stationary symbol must be real and nonnegative"));
        }
        Ok(Self {
            grid: *symbol.grid(),
            kind: CovarianceKind::Stationary { symbol },
        })
    }

    /// Checks Hermitian symmetry and the eigenvalue floor [`PSD_FLOOR`].
    pub fn general(grid: GridModel, matrix: Vec<Complex64>) -> Result<Self> {
        let n = grid.n();
        if matrix.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                found: matrix.len(),
            });
        }
        if let Some(k) = matrix.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite(k));
        }
        let scale = matrix.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for i in 0..n {
            for j in i..n {
                if (matrix[i * n + j] - matrix[j * n + i].conj()).norm() > HERMITIAN_TOL * scale {
                    return Err(Error::InvalidArgument("covariance matrix is not Hermitian"));
                }
            }
        }
        let eig = sym_eigen(hermitian_embedding(&matrix, n), 2 * n);
        let min = eig.min();
        if min < PSD_FLOOR * eig.max().max(1.0) {
            return Err(Error::NotPositiveSemidefinite(min));
        }
        Ok(Self {
            grid,
            kind: CovarianceKind::General { matrix },
        })
    }

    pub fn grid(&self) -> &GridModel {
        &self.grid
    }

    pub fn kind(&self) -> &CovarianceKind {
        &self.kind
    }

    /// Exact covariance `E[x xᴴ]` as an [`Autocorrelation`].
    pub fn exact_covariance(&self) -> Autocorrelation {
        let grid = self.grid;
        let n = grid.n();
        let zero = Complex64::new(0.0, 0.0);
        let matrix = match &self.kind {
            CovarianceKind::White { variance } => {
                let mut m = vec![zero; n * n];
                for i in 0..n {
                    m[i * n + i] = Complex64::new(variance / grid.alpha(), 0.0);
                }
                m
            }
            CovarianceKind::Stationary { symbol } => {
                // A[i, j] = α Σ_m s_m e^{2πi (i−j)(m−c)/N}
                let real = FiniteSignal::from_fn(grid, |m| Complex64::new(symbol.values()[m].re, 0.0));
                let col = inverse_fourier(&real);
                let c = grid.center();
                let mut m = vec![zero; n * n];
                for i in 0..n {
                    for j in 0..n {
                        m[i * n + j] = col.values()[(i + n - j + c) % n];
                    }
                }
                m
            }
            CovarianceKind::General { matrix } => matrix.clone(),
        };
        Autocorrelation { grid, matrix }
    }
}

/// `M` realizations of a process, stored row-major as an `M × N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GspEnsemble {
    grid: GridModel,
    m: usize,
    realizations: Vec<Complex64>,
    spec: CovarianceSpec,
    seed: u64,
    fourier_power: u8,
}

impl GspEnsemble {
    /// Wraps existing rows. `fourier_power` counts how often the rows were
    /// passed through the Fourier transform since simulation (mod 4).
    pub fn from_rows(
        spec: CovarianceSpec,
        m: usize,
        seed: u64,
        fourier_power: u8,
        realizations: Vec<Complex64>,
    ) -> Result<Self> {
        let grid = spec.grid;
        if m < 2 {
            return Err(Error::InvalidArgument("an ensemble needs M >= 2 realizations"));
        }
        let expected = m.checked_mul(grid.n()).ok_or(Error::InvalidArgument("ensemble too large"))?;
        if realizations.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: realizations.len(),
            });
        }
        if let Some(k) = realizations.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self {
            grid,
            m,
            realizations,
            spec,
            seed,
            fourier_power: fourier_power % 4,
        })
    }

    pub fn grid(&self) -> &GridModel {
        &self.grid
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn spec(&self) -> &CovarianceSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn fourier_power(&self) -> u8 {
        self.fourier_power
    }

    pub fn realizations(&self) -> &[Complex64] {
        &self.realizations
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.grid.n();
        &self.realizations[i * n..(i + 1) * n]
    }

    pub fn row_signal(&self, i: usize) -> FiniteSignal {
        FiniteSignal::from_raw(self.grid, self.row(i).to_vec())
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        let n = self.grid.n();
        &mut self.realizations[i * n..(i + 1) * n]
    }
}

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    // E|z|² = 1
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

fn row_rng(seed: u64, row: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(row as u64);
    rng
}

/// Draws `m` Gaussian realizations with covariance `spec`.
pub fn simulate(spec: &CovarianceSpec, m: usize, seed: u64) -> Result<GspEnsemble> {
    if m < 2 {
        return Err(Error::InvalidArgument("an ensemble needs M >= 2 realizations"));
    }
    let grid = spec.grid;
    let n = grid.n();
    let alpha = grid.alpha();
    let mut out = Vec::with_capacity(m * n);
    match &spec.kind {
        CovarianceKind::White { variance } => {
            let k = libm::sqrt(variance / alpha);
            for row in 0..m {
                let mut rng = row_rng(seed, row);
                out.extend((0..n).map(|_| complex_normal(&mut rng) * k));
            }
        }
        CovarianceKind::Stationary { symbol } => {
            let amp: Vec<f64> = symbol
                .values()
                .iter()
                .map(|v| libm::sqrt(v.re.max(0.0) / alpha))
                .collect();
            for row in 0..m {
                let mut rng = row_rng(seed, row);
                let w = FiniteSignal::from_fn(grid, |j| complex_normal(&mut rng) * amp[j]);
                out.extend_from_slice(inverse_fourier(&w).values());
            }
        }
        CovarianceKind::General { matrix } => {
            // real embedding M/2 is the covariance of (Re x, Im x)
            let d = 2 * n;
            let eig = sym_eigen(hermitian_embedding(matrix, n), d);
            let mut factor = eig.vectors;
            for k in 0..d {
                let s = libm::sqrt(eig.values[k].max(0.0) / 2.0);
                for i in 0..d {
                    factor[i * d + k] *= s;
                }
            }
            let mut z = vec![0.0; d];
            for row in 0..m {
                let mut rng = row_rng(seed, row);
                for v in z.iter_mut() {
                    *v = rng.sample(StandardNormal);
                }
                for i in 0..n {
                    let re: f64 = factor[i * d..(i + 1) * d].iter().zip(&z).map(|(a, b)| a * b).sum();
                    let im: f64 = factor[(n + i) * d..(n + i + 1) * d].iter().zip(&z).map(|(a, b)| a * b).sum();
                    out.push(Complex64::new(re, im));
                }
            }
        }
    }
    GspEnsemble::from_rows(spec.clone(), m, seed, 0, out)
}

/// Estimated (or exact) second moment `σ(t₁, t₂)`, row-major `N × N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Autocorrelation {
    grid: GridModel,
    matrix: Vec<Complex64>,
}

impl Autocorrelation {
    pub fn new(grid: GridModel, matrix: Vec<Complex64>) -> Result<Self> {
        let n = grid.n();
        if matrix.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                found: matrix.len(),
            });
        }
        Ok(Self { grid, matrix })
    }

    pub fn grid(&self) -> &GridModel {
        &self.grid
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.grid.n() + j]
    }

    pub fn max_abs_diff(&self, other: &Autocorrelation) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_diff(&self, other: &Autocorrelation) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(libm::sqrt(
            self.matrix.iter().zip(&other.matrix).map(|(a, b)| (a - b).norm_sqr()).sum(),
        ))
    }
}

const LEAF_ROWS: usize = 16;

// upper triangle of Σ x xᴴ over rows lo..hi, tree-summed
fn outer_sum(rows: &[Complex64], n: usize, lo: usize, hi: usize) -> Vec<Complex64> {
    if hi - lo <= LEAF_ROWS {
        let mut acc = vec![Complex64::new(0.0, 0.0); n * n];
        for r in lo..hi {
            let x = &rows[r * n..(r + 1) * n];
            for i in 0..n {
                let xi = x[i];
                let out = &mut acc[i * n..(i + 1) * n];
                for j in i..n {
                    out[j] += xi * x[j].conj();
                }
            }
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    let mut left = outer_sum(rows, n, lo, mid);
    let right = outer_sum(rows, n, mid, hi);
    for (a, b) in left.iter_mut().zip(&right) {
        *a += b;
    }
    left
}

/// `(1/M) Σ_m x_m x_mᴴ`, Hermitian by construction.
pub fn autocorrelation(e: &GspEnsemble) -> Autocorrelation {
    let n = e.grid.n();
    let mut matrix = outer_sum(&e.realizations, n, 0, e.m);
    let inv = 1.0 / e.m as f64;
    for i in 0..n {
        matrix[i * n + i] = Complex64::new(matrix[i * n + i].re * inv, 0.0);
        for j in i + 1..n {
            let v = matrix[i * n + j] * inv;
            matrix[i * n + j] = v;
            matrix[j * n + i] = v.conj();
        }
    }
    Autocorrelation { grid: e.grid, matrix }
}

/// Replaces every realization by its Fourier transform.
pub fn spectral_process(e: &GspEnsemble) -> GspEnsemble {
    let n = e.grid.n();
    let mut realizations = Vec::with_capacity(e.realizations.len());
    for i in 0..e.m {
        realizations.extend_from_slice(fourier(&e.row_signal(i)).values());
    }
    debug_assert_eq!(realizations.len(), e.m * n);
    GspEnsemble {
        grid: e.grid,
        m: e.m,
        realizations,
        spec: e.spec.clone(),
        seed: e.seed,
        fourier_power: (e.fourier_power + 1) % 4,
    }
}

/// `F A Fᴴ` with `F` the centered transform matrix.
pub fn fourier_2d(a: &Autocorrelation) -> Autocorrelation {
    let grid = a.grid;
    let n = grid.n();
    let mut half = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let col = FiniteSignal::from_raw(grid, (0..n).map(|i| a.matrix[i * n + j]).collect());
        for (i, v) in fourier(&col).values().iter().enumerate() {
            half[i * n + j] = *v;
        }
    }
    let mut matrix = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = FiniteSignal::from_raw(grid, half[i * n..(i + 1) * n].iter().map(|v| v.conj()).collect());
        matrix.extend(fourier(&row).values().iter().map(|v| v.conj()));
    }
    Autocorrelation { grid, matrix }
}

/// `max |autocorrelation(spectral) − F A Fᴴ|` with `A = autocorrelation(e)`.
pub fn spectral_autocorr_deviation(e: &GspEnsemble, spectral: &GspEnsemble) -> Result<f64> {
    e.grid.check_same(&spectral.grid)?;
    let predicted = fourier_2d(&autocorrelation(e));
    autocorrelation(spectral).max_abs_diff(&predicted)
}

/// [`spectral_autocorr_deviation`] against `spectral_process(e)`.
pub fn spectral_autocorr_identity(e: &GspEnsemble) -> f64 {
    spectral_autocorr_deviation(e, &spectral_process(e)).unwrap_or(f64::INFINITY)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WssDeviation {
    /// `max_{x, t₁, t₂} |σ(t₁+x, t₂+x) − σ(t₁, t₂)|`, cyclic shifts.
    pub diag_invariance: f64,
    /// Share of the squared Frobenius mass of `F A Fᴴ` off its diagonal.
    pub offdiag_mass: f64,
}

pub fn wss_deviation(a: &Autocorrelation) -> WssDeviation {
    let n = a.grid.n();
    let mut diag_invariance: f64 = 0.0;
    // along each cyclic diagonal every pair of entries is related by a shift
    let mut diag = Vec::with_capacity(n);
    for d in 0..n {
        diag.clear();
        diag.extend((0..n).map(|i| a.matrix[((i + d) % n) * n + i]));
        for p in 0..n {
            for q in p + 1..n {
                diag_invariance = diag_invariance.max((diag[p] - diag[q]).norm());
            }
        }
    }
    let b = fourier_2d(a);
    let mut total = 0.0;
    let mut on = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = b.matrix[i * n + j].norm_sqr();
            total += v;
            if i == j {
                on += v;
            }
        }
    }
    let offdiag_mass = if total > 0.0 { (total - on) / total } else { 0.0 };
    WssDeviation {
        diag_invariance,
        offdiag_mass,
    }
}
