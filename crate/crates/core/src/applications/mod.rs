//! Applied classifications: orthogonal projections of Whitney umbrellas and
//! trajectories of composite planar motions, each with a closed-form test
//! that can be cross-checked against the jet classifier.

pub mod motion;
pub mod whitney;

pub use motion::{motion_classify, motion_trajectory_jet, MotionSpec, MotionWitness};
pub use whitney::{
    umbrella_projection_w_coeffs, whitney_direct_jet, whitney_project_classify, UmbrellaForm,
    UmbrellaType, WhitneyClassification, WhitneyError,
};
