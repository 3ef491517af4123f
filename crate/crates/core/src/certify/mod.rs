//! Independent verification of realizer output: trace replay, ball
//! certificates and exhaustive small-scale sweeps.

mod ball;
mod replay;
mod sweep;

pub use ball::{certify_ball, Certificate, CertificateError, CertifyReport, Check};
pub use replay::{is_delta_shaped, replay, ReplayError, ReplayFault, MAX_GENERATOR_D};
pub use sweep::{cross_check_small, enumerate_vectors, SweepReport, SweepRow, Verdict};
