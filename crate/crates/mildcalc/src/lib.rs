//! File formats, the verification registry, the periodization/sampling
//! spectrogram demo and the command line front end for [`mildcalc_core`].
//!
//! - [`formats`]: signal CSV with JSON sidecar, STFT as 16-bit PGM or complex
//!   CSV.
//! - [`ensemble`]: binary ensemble files and autocorrelation CSV.
//! - [`figure1`]: four-panel spectrogram demo.
//! - [`verify`]: named invariant checks grouped into suites.

pub mod ensemble;
mod error;
pub mod figure1;
pub mod formats;
pub mod verify;

pub use error::{Error, Result};
pub use mildcalc_core as core;
