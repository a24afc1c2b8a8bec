//! Centered Fourier transform, convolution, STFT and Gabor frames.
//!
//! Every transform carries the continuum weight `α`, so the discrete
//! identities read exactly like their integral counterparts: Plancherel,
//! `F² = reflection`, the convolution theorem and `F(Ш) = Ш` on the
//! self-dual grid.

mod fourier;
mod gabor;
mod stft;

pub use fourier::{convolve, fourier, fourier_direct, inverse_fourier, multiply};
pub use gabor::{
    dual_window, frame_bounds, frame_operator, frame_operator_walnut, gabor_analysis,
    gabor_synthesis, AtomSource, DualMethod, DualReport, FrameBounds, GaborCoefficients,
    GaborSystem, BOUNDS_CHECK_MAX_B, DENSE_FALLBACK_MAX_N, DUAL_TOLERANCE, SINGULAR_CONDITION,
};
pub(crate) use stft::for_each_stft_row;
pub use stft::{stft, StftMap, STFT_MAX_N};
