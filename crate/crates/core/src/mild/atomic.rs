use alloc::vec::Vec;

use num_complex::Complex64;

use crate::grid::{gaussian, translate, FiniteSignal, GridModel};
use crate::mild::s0_norm;
use crate::transforms::{fourier, inverse_fourier, multiply};
use crate::{Error, Result};

/// Atoms whose largest entry falls below this are dropped.
pub const ATOM_DROP_THRESHOLD: f64 = 1e-14;

/// Bounded uniform partition of unity built from a triangular hat.
#[derive(Debug, Clone, PartialEq)]
pub struct Bupu {
    grid: GridModel,
    w: usize,
    psi: FiniteSignal,
    tau: FiniteSignal,
}

impl Bupu {
    /// Hat `ψ` of half-width `w` (height 1, centered), and plateau `τ` equal
    /// to 1 on `supp ψ` and decaying linearly to 0 over another `w` indices.
    pub fn new(grid: GridModel, w: usize) -> Result<Self> {
        grid.check_stride(w)?;
        if 4 * w > grid.n() {
            return Err(Error::InvalidArgument("BUPU width must satisfy 4w <= N"));
        }
        let wf = w as f64;
        let psi = FiniteSignal::from_fn(grid, |n| {
            let d = grid.offset(n).unsigned_abs() as f64;
            Complex64::new((1.0 - d / wf).max(0.0), 0.0)
        });
        let tau = FiniteSignal::from_fn(grid, |n| {
            let d = grid.offset(n).unsigned_abs() as f64;
            let v = if d <= wf { 1.0 } else { (1.0 - (d - wf) / wf).max(0.0) };
            Complex64::new(v, 0.0)
        });
        Ok(Self { grid, w, psi, tau })
    }

    pub fn grid(&self) -> &GridModel {
        &self.grid
    }

    pub fn width(&self) -> usize {
        self.w
    }

    pub fn psi(&self) -> &FiniteSignal {
        &self.psi
    }

    pub fn tau(&self) -> &FiniteSignal {
        &self.tau
    }

    /// Number of translates `N/w`.
    pub fn count(&self) -> usize {
        self.grid.n() / self.w
    }

    /// `T_{k·w} ψ`.
    pub fn member(&self, k: usize) -> FiniteSignal {
        translate(&self.psi, (k * self.w) as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    /// Frequency-side BUPU index.
    pub k: usize,
    /// Time-side BUPU index.
    pub j: usize,
    pub signal: FiniteSignal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomicDecomposition {
    pub atoms: Vec<Atom>,
    /// S0 norm of each atom, same order as `atoms`.
    pub norms: Vec<f64>,
    pub norm_sum: f64,
    /// `max |f − Σ atoms|`.
    pub reconstruction_error: f64,
    pub dropped: usize,
}

/// Splits `f` into atoms `h_{k,j} = T_{jw}ψ · IFT(T_{kw}ψ · f̂)` that are
/// localized in time and frequency. Norms use the Gaussian window.
pub fn atomic_decompose(f: &FiniteSignal, bupu: &Bupu) -> Result<AtomicDecomposition> {
    f.grid().check_same(bupu.grid())?;
    let grid = *f.grid();
    let window = gaussian(&grid);
    let spectrum = fourier(f);
    let members: Vec<FiniteSignal> = (0..bupu.count()).map(|k| bupu.member(k)).collect();
    let mut atoms = Vec::new();
    let mut norms = Vec::new();
    let mut dropped = 0;
    let mut total = FiniteSignal::zeros(grid);
    for (k, freq_cell) in members.iter().enumerate() {
        let band = inverse_fourier(&multiply(freq_cell, &spectrum)?);
        for (j, time_cell) in members.iter().enumerate() {
            let h = multiply(time_cell, &band)?;
            if h.max_abs() < ATOM_DROP_THRESHOLD {
                dropped += 1;
                continue;
            }
            total = total.add(&h)?;
            norms.push(s0_norm(&h, &window)?);
            atoms.push(Atom { k, j, signal: h });
        }
    }
    let norm_sum = norms.iter().sum();
    Ok(AtomicDecomposition {
        atoms,
        norms,
        norm_sum,
        reconstruction_error: f.max_abs_diff(&total)?,
        dropped,
    })
}
