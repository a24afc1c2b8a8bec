//! The finite group model `Z_N`, signals on it and the elementary signals.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Self-dual grid with `N = L²` points, step `α = 1/L` and period `β = L`.
///
/// Index `n` carries the physical coordinate `(n − center)·α` with
/// `center = N/2`, so coordinates cover `[−β/2, β/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridModel {
    l: usize,
    n: usize,
    alpha: f64,
    beta: f64,
    center: usize,
}

/// Builds the grid for side length `L`.
pub fn make_grid(l: usize) -> Result<GridModel> {
    GridModel::new(l)
}

impl GridModel {
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidGrid(l));
        }
        // keep N representable as both usize and i64 index arithmetic
        let n = l
            .checked_mul(l)
            .filter(|n| *n <= i64::MAX as usize / 4)
            .ok_or(Error::InvalidGrid(l))?;
        Ok(Self {
            l,
            n,
            alpha: 1.0 / l as f64,
            beta: l as f64,
            center: n / 2,
        })
    }

    /// Rebuilds the grid from a point count, which must be a perfect square.
    pub fn from_len(n: usize) -> Result<Self> {
        let l = libm::round(libm::sqrt(n as f64)) as usize;
        if l.checked_mul(l) != Some(n) {
            return Err(Error::InvalidArgument("signal length is not a perfect square"));
        }
        Self::new(l)
    }

    #[inline]
    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn center(&self) -> usize {
        self.center
    }

    /// Exact `1/α`, the amplitude of a unit point mass.
    #[inline]
    pub fn dirac_height(&self) -> f64 {
        self.l as f64
    }

    /// Physical coordinate of index `idx`.
    #[inline]
    pub fn coord(&self, idx: usize) -> f64 {
        (idx as f64 - self.center as f64) * self.alpha
    }

    /// Signed offset from the center, `idx − center`.
    #[inline]
    pub fn offset(&self, idx: usize) -> i64 {
        idx as i64 - self.center as i64
    }

    /// Representative of a cyclic shift amount in `[−center, N − center)`.
    #[inline]
    pub fn signed_shift(&self, shift: usize) -> i64 {
        ((shift % self.n + self.center) % self.n) as i64 - self.center as i64
    }

    /// Physical length of a cyclic shift (time or frequency), wrapped into
    /// `[−β/2, β/2)`.
    #[inline]
    pub fn shift_coord(&self, shift: usize) -> f64 {
        self.signed_shift(shift) as f64 * self.alpha
    }

    /// Reduces any integer into `0..N`.
    #[inline]
    pub fn wrap(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    pub(crate) fn check_stride(&self, stride: usize) -> Result<()> {
        if stride == 0 || !self.n.is_multiple_of(stride) {
            return Err(Error::StrideMismatch {
                stride,
                n: self.n,
            });
        }
        Ok(())
    }

    /// True when `idx` is a node of the comb of stride `r` anchored at the center.
    #[inline]
    pub fn is_comb_node(&self, idx: usize, r: usize) -> bool {
        self.offset(idx).rem_euclid(r as i64) == 0
    }

    pub(crate) fn check_same(&self, other: &GridModel) -> Result<()> {
        if self.l != other.l {
            return Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// A point of the discrete time-frequency plane, both indices reduced mod `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TfPoint {
    pub t_idx: usize,
    pub s_idx: usize,
}

impl TfPoint {
    /// Reduces arbitrary integer shifts onto the grid.
    pub fn new(grid: &GridModel, t: i64, s: i64) -> Self {
        Self {
            t_idx: grid.wrap(t),
            s_idx: grid.wrap(s),
        }
    }

    pub fn origin() -> Self {
        Self { t_idx: 0, s_idx: 0 }
    }

    /// Physical `(t, s)` coordinates in `[−β/2, β/2)²`.
    pub fn coords(&self, grid: &GridModel) -> (f64, f64) {
        (grid.shift_coord(self.t_idx), grid.shift_coord(self.s_idx))
    }
}

/// Complex sequence on a grid. Stands for test functions, measures and mild
/// distributions alike; the interpretation comes from the pairing used.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSignal {
    grid: GridModel,
    values: Vec<Complex64>,
}

impl FiniteSignal {
    pub fn new(grid: GridModel, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::LengthMismatch {
                expected: grid.n(),
                found: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: GridModel, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_raw(grid: GridModel, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.n());
        Self { grid, values }
    }

    pub fn zeros(grid: GridModel) -> Self {
        Self::constant(grid, Complex64::new(0.0, 0.0))
    }

    pub fn constant(grid: GridModel, value: Complex64) -> Self {
        Self {
            grid,
            values: vec![value; grid.n()],
        }
    }

    pub fn from_fn(grid: GridModel, f: impl FnMut(usize) -> Complex64) -> Self {
        Self::from_raw(grid, (0..grid.n()).map(f).collect())
    }

    #[inline]
    pub fn grid(&self) -> &GridModel {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn zip_with(
        &self,
        other: &FiniteSignal,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| op(*a, *b))
            .collect();
        Ok(Self::from_raw(self.grid, values))
    }

    pub fn add(&self, other: &FiniteSignal) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FiniteSignal) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::from_raw(self.grid, self.values.iter().map(|v| v * k).collect())
    }

    pub fn scale_real(&self, k: f64) -> Self {
        Self::from_raw(self.grid, self.values.iter().map(|v| v * k).collect())
    }

    pub fn conj(&self) -> Self {
        Self::from_raw(self.grid, self.values.iter().map(|v| v.conj()).collect())
    }

    /// `max_n |f[n]|`.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max_n |f[n] − h[n]|`.
    pub fn max_abs_diff(&self, other: &FiniteSignal) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `α Σ |f|`, the L¹ norm of the sequence read as a function.
    pub fn l1_norm(&self) -> f64 {
        self.grid.alpha() * self.values.iter().map(|v| v.norm()).sum::<f64>()
    }

    /// `(α Σ |f|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(self.grid.alpha() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>())
    }
}

/// Unit point mass at index `k`, stored with height `1/α` so that
/// `inner(f, dirac(k)) = f[k]`.
pub fn dirac(grid: &GridModel, k: usize) -> Result<FiniteSignal> {
    if k >= grid.n() {
        return Err(Error::IndexOutOfRange {
            index: k,
            n: grid.n(),
        });
    }
    let mut f = FiniteSignal::zeros(*grid);
    f.values[k] = Complex64::new(grid.dirac_height(), 0.0);
    Ok(f)
}

/// Dirac comb with stride `r`: unit point masses at every index `n` with
/// `n − center ≡ 0 (mod r)`.
pub fn dirac_comb(grid: &GridModel, r: usize) -> Result<FiniteSignal> {
    grid.check_stride(r)?;
    let h = Complex64::new(grid.dirac_height(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok(FiniteSignal::from_fn(*grid, |n| {
        if grid.is_comb_node(n, r) {
            h
        } else {
            zero
        }
    }))
}

/// Periodization terms used by [`gaussian`].
pub const GAUSSIAN_TERMS: usize = 8;

/// Periodized samples of `e^{−πt²}`: `Σ_{|j|≤J} e^{−π(t(n) + jβ)²}`.
pub fn gaussian(grid: &GridModel) -> FiniteSignal {
    gaussian_with_terms(grid, GAUSSIAN_TERMS)
}

pub fn gaussian_with_terms(grid: &GridModel, terms: usize) -> FiniteSignal {
    let beta = grid.beta();
    FiniteSignal::from_fn(*grid, |n| {
        let t = grid.coord(n);
        let mut acc = libm::exp(-PI * t * t);
        for j in 1..=terms {
            let shift = j as f64 * beta;
            acc += libm::exp(-PI * (t + shift) * (t + shift));
            acc += libm::exp(-PI * (t - shift) * (t - shift));
        }
        Complex64::new(acc, 0.0)
    })
}

#[inline]
pub(crate) fn modulation_phase(grid: &GridModel, s_idx: usize, n: usize) -> Complex64 {
    // e^{2πi s (n − c)/N}, exponent reduced mod N
    let nn = grid.n() as i128;
    let k = ((s_idx as i128 % nn) * (grid.offset(n) as i128).rem_euclid(nn)).rem_euclid(nn);
    let (sn, cs) = libm::sincos(2.0 * PI * k as f64 / nn as f64);
    Complex64::new(cs, sn)
}

/// `π(λ) f = M_s T_t f`: translate by `t_idx`, then modulate by `s_idx`.
pub fn tf_shift(f: &FiniteSignal, lambda: TfPoint) -> FiniteSignal {
    let grid = *f.grid();
    let n = grid.n();
    let t = lambda.t_idx % n;
    FiniteSignal::from_fn(grid, |k| {
        let v = f.values[(k + n - t) % n];
        if lambda.s_idx.is_multiple_of(n) {
            v
        } else {
            v * modulation_phase(&grid, lambda.s_idx, k)
        }
    })
}

/// Cyclic translation by `k` indices (`k·α` physical).
pub fn translate(f: &FiniteSignal, k: i64) -> FiniteSignal {
    let grid = *f.grid();
    tf_shift(f, TfPoint::new(&grid, k, 0))
}

/// `f̌(x) = f(−x)`: `result[n] = f[(2·center − n) mod N]`.
pub fn reflect(f: &FiniteSignal) -> FiniteSignal {
    let grid = *f.grid();
    let n = grid.n();
    let two_c = 2 * grid.center();
    FiniteSignal::from_fn(grid, |k| f.values[(two_c + n - k) % n])
}

/// `α Σ f[n] conj(h[n])`, the discretized L² inner product.
pub fn inner(f: &FiniteSignal, h: &FiniteSignal) -> Result<Complex64> {
    f.grid.check_same(&h.grid)?;
    let sum: Complex64 = f.values.iter().zip(&h.values).map(|(a, b)| a * b.conj()).sum();
    Ok(sum * f.grid.alpha())
}

/// `σ(f) = α Σ σ[n] f[n]`, the bilinear action of a mild distribution on a
/// test function (no conjugation).
pub fn pairing(sigma: &FiniteSignal, f: &FiniteSignal) -> Result<Complex64> {
    sigma.grid.check_same(&f.grid)?;
    let sum: Complex64 = sigma.values.iter().zip(&f.values).map(|(a, b)| a * b).sum();
    Ok(sum * sigma.grid.alpha())
}
