//! h-vectors of simplicial cell balls.
//!
//! - [`hcalc`]: the h/f transform, the boundary operator and the admissibility
//!   conditions for balls and spheres.
//! - [`poset`]: simplicial posets as Hasse diagrams, with boundary, cone,
//!   gluing, shelling verification and a text format.
//! - [`realizer`]: builds a ball with any admissible h-vector, recording a
//!   replayable construction trace.
//! - [`certify`]: replays traces and cross-checks the checker against the
//!   realizer.

pub mod certify;
pub mod hcalc;
pub mod label;
pub mod poset;
pub mod realizer;

pub use hcalc::{check_ball, check_sphere, ConditionReport, HVector};
pub use label::FaceLabel;
pub use poset::{ElementId, SimplicialPoset};
