//! Finite-model calculus of mild distributions.
//!
//! Everything lives on the cyclic group `Z_N` with `N = L²`, sampling step
//! `α = 1/L` and period `β = L`. Index `n` sits at the physical coordinate
//! `(n − N/2)·α`, so the grid is self-dual: the same lattice carries time and
//! frequency. All pairings are `α`-weighted, which turns the integral formulas
//! of continuous time-frequency analysis into literal finite sums.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line front end live in the `mildcalc` crate.
//!
//! Module map:
//!
//! - [`grid`]: the group model, signals, Dirac masses, combs, the Gaussian,
//!   time-frequency shifts and the pairings.
//! - [`transforms`]: centered Fourier transform, convolution, STFT and Gabor
//!   frames with canonical dual windows.
//! - [`mild`]: S0 / S0' norm proxies, the mild metric, periodization and
//!   sampling, Poisson summation, partial-sum tails, atomic decompositions and
//!   band-limited recovery.
//! - [`gsp`]: generalized stochastic processes (ensembles, autocorrelation,
//!   spectral process, stationarity diagnostics).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod fft;
pub mod grid;
pub mod gsp;
mod linalg;
pub mod mild;
pub mod transforms;

pub use error::{Error, Result};
pub use grid::{
    dirac, dirac_comb, gaussian, inner, make_grid, pairing, reflect, tf_shift, translate,
    FiniteSignal, GridModel, TfPoint,
};
pub use gsp::{
    autocorrelation, simulate, spectral_autocorr_identity, spectral_process, wss_deviation,
    Autocorrelation, CovarianceKind, CovarianceSpec, GspEnsemble, WssDeviation,
};
pub use num_complex::Complex64;
pub use transforms::{
    convolve, dual_window, fourier, fourier_direct, frame_bounds, frame_operator, gabor_analysis,
    gabor_synthesis, inverse_fourier, multiply, stft, AtomSource, DualReport, FrameBounds,
    GaborCoefficients, GaborSystem, StftMap,
};
