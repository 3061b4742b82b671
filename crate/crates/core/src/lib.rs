//! Recognition and geometry of the two generic rank-zero singularities of
//! smooth map germs from the plane to the plane.
//!
//! A germ `f: (ℝ²,0) → (ℝ²,0)` with `rank df₀ = 0` is a *sharksfin* when it
//! is equivalent to `(uv, u² + v² + u³)` and a *deltoid* when equivalent to
//! `(uv, −u² + v² + u³)` under smooth coordinate changes on source and
//! target. This crate decides which (if either) holds for a truncated jet
//! of `f`, entirely in exact arithmetic over ℚ and a single quadratic
//! extension ℚ(√d), and computes the associated differential-geometric
//! data: singular branch curves, 3/2-cusps of their images, cuspidal
//! curvatures, and the SO(2) normal form with its invariants.
//!
//! Modules:
//!
//! * [`num`] — exact ℚ(√d) scalars, floating scalar modes, the shared
//!   coefficient trait.
//! * [`jets`], [`curve`] — truncated power series in two and one variables.
//! * [`classify`] — the determinant recognition test.
//! * [`cusp`] — 3/2-cusp tests and singular-branch extraction.
//! * [`normalform`] — the constructive SO(2) normal-form pipeline.
//! * [`applications`] — orthogonal projections of Whitney umbrellas and
//!   trajectories of composite planar motions.
//! * [`oracle`] — independent brute-force checks used by the test suites.

pub mod applications;
pub mod classify;
pub mod curve;
pub mod cusp;
pub mod jets;
pub mod normalform;
pub mod num;
pub mod oracle;

pub use classify::{classify_germ, Classification, Verdict};
pub use jets::{Jet2, MapJet2};
pub use num::{Coeff, Rational, Scalar, F64};
