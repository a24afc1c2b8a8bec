//! Discretized S0 / S0' norms, the mild metric, periodization and sampling,
//! Poisson summation, Gabor partial-sum tails, atomic decompositions and
//! band-limited recovery.

mod atomic;
mod norms;
mod sampling;
mod tail;

pub use atomic::{atomic_decompose, Atom, AtomicDecomposition, Bupu, ATOM_DROP_THRESHOLD};
pub use norms::{mild_distance, mild_metric, mild_report, s0_norm, sop_norm, MildReport};
pub use sampling::{
    periodization_duality_constant, periodize, poisson_check, riemann_functional, sample,
    sampling_duality_constant, shannon_reconstruct, PoissonCheck, ReconstructionFilter,
};
pub use tail::{box_radii, gabor_partial_sum_tail, tf_box, tf_tightness, TfTightness};
