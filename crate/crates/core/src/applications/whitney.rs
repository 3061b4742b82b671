//! Classification of the orthogonal projection of a Whitney umbrella along
//! its tangent line.
//!
//! The umbrella is taken in the adapted form
//!
//! ```text
//! f(u,v) = (u, uv + c₃v³/6, Σ_{i+j=2,3} d_ij uⁱvʲ/(i!j!)),   c₃, d₀₂ > 0,
//! ```
//!
//! elliptic when `d₂₀ > 0`, hyperbolic when `d₂₀ < 0`. Projecting out the
//! first coordinate yields a rank-zero planar germ whose type is decided by
//! closed-form conditions in the coefficients, with `d̃₂₀ = √|d₂₀|`,
//! `d̃₀₂ = √d₀₂`:
//!
//! * elliptic: sharksfin iff
//!   `d₃₀d̃₀₂³ + 3δd₂₁d̃₂₀d̃₀₂² + (3d₁₂d̃₂₀² − c₃d̃₂₀⁴)d̃₀₂ + δ(d₀₃ − d₁₁c₃)d̃₂₀³ ≠ 0`
//!   for both `δ = ±1`;
//! * hyperbolic: deltoid iff
//!   `d₃₀d̃₀₂² − 3d₁₂d̃₂₀² − c₃d̃₂₀⁴ ≠ 0` or
//!   `d₀₃d̃₂₀² − 3d₂₁d̃₀₂² − d₁₁c₃d̃₂₀² ≠ 0`.
//!
//! Each elliptic expression splits into the even/odd parts `P`, `Q` of the
//! radical `d̃₂₀d̃₀₂`, so the both-δ condition reduces to the rational test
//! `d₀₂P² − d₂₀Q² ≠ 0`; the hyperbolic expressions are rational outright.
//! The positive square roots are the canonical choice: a sign flip swaps the
//! two δ-expressions and leaves the verdict unchanged.

use std::fmt;

use num_traits::Zero;

use crate::classify::Verdict;
use crate::jets::{Jet2, MapJet2};
use crate::num::{Coeff, Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WhitneyError {
    /// The adapted form requires `c₃ > 0` and `d₀₂ > 0`.
    InvalidForm,
    /// `d₂₀ = 0`: the parabolic case is outside the classification.
    Parabolic,
    /// The w-coefficient formulas need `d₁₁ ≠ 0` or the stated limit.
    DegenerateRotation,
}

impl fmt::Display for WhitneyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhitneyError::InvalidForm => write!(f, "umbrella form requires c3 > 0 and d02 > 0"),
            WhitneyError::Parabolic => write!(f, "parabolic umbrella (d20 = 0) is not classified"),
            WhitneyError::DegenerateRotation => write!(f, "no real rotation for these coefficients"),
        }
    }
}

impl std::error::Error for WhitneyError {}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UmbrellaType {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

/// Coefficients of the adapted umbrella form.
#[derive(Clone, PartialEq, Debug)]
pub struct UmbrellaForm {
    pub c3: Rational,
    pub d20: Rational,
    pub d11: Rational,
    pub d02: Rational,
    pub d30: Rational,
    pub d21: Rational,
    pub d12: Rational,
    pub d03: Rational,
}

impl UmbrellaForm {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        c3: Rational,
        d20: Rational,
        d11: Rational,
        d02: Rational,
        d30: Rational,
        d21: Rational,
        d12: Rational,
        d03: Rational,
    ) -> Result<Self, WhitneyError> {
        if c3 <= Rational::zero() || d02 <= Rational::zero() {
            return Err(WhitneyError::InvalidForm);
        }
        Ok(UmbrellaForm {
            c3,
            d20,
            d11,
            d02,
            d30,
            d21,
            d12,
            d03,
        })
    }

    pub fn umbrella_type(&self) -> UmbrellaType {
        if self.d20.is_zero() {
            UmbrellaType::Parabolic
        } else if self.d20 > Rational::zero() {
            UmbrellaType::Elliptic
        } else {
            UmbrellaType::Hyperbolic
        }
    }
}

/// Witness values behind a projection verdict.
#[derive(Clone, PartialEq, Debug)]
pub struct WhitneyWitness {
    /// The two δ-expressions (elliptic) or the two deltoid expressions
    /// (hyperbolic), as floats.
    pub expressions: [f64; 2],
    /// The exact rational decision quantity; zero exactly when the germ is
    /// not recognized.
    pub decision: Rational,
}

#[derive(Clone, PartialEq, Debug)]
pub struct WhitneyClassification {
    pub umbrella_type: UmbrellaType,
    pub verdict: Verdict,
    pub witness: WhitneyWitness,
}

fn to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).expect("rational within f64 range")
}

/// Closed-form classification of the projected umbrella.
pub fn whitney_project_classify(
    w: &UmbrellaForm,
) -> Result<WhitneyClassification, WhitneyError> {
    let utype = w.umbrella_type();
    match utype {
        UmbrellaType::Parabolic => Err(WhitneyError::Parabolic),
        UmbrellaType::Elliptic => {
            let three = Rational::from_integer(3.into());
            // δ-expression = d̃₀₂·P + δ·d̃₂₀·Q with rational P, Q.
            let p = &w.d30 * &w.d02 + &three * &w.d12 * &w.d20 - &w.c3 * &w.d20 * &w.d20;
            let q = &three * &w.d21 * &w.d02 + (&w.d03 - &w.d11 * &w.c3) * &w.d20;
            let decision = &w.d02 * &p * &p - &w.d20 * &q * &q;
            let t20 = to_f64(&w.d20).sqrt();
            let t02 = to_f64(&w.d02).sqrt();
            let e_plus = t02 * to_f64(&p) + t20 * to_f64(&q);
            let e_minus = t02 * to_f64(&p) - t20 * to_f64(&q);
            let verdict = if decision.is_zero() {
                Verdict::NotRecognized
            } else {
                Verdict::Sharksfin
            };
            Ok(WhitneyClassification {
                umbrella_type: utype,
                verdict,
                witness: WhitneyWitness {
                    expressions: [e_plus, e_minus],
                    decision,
                },
            })
        }
        UmbrellaType::Hyperbolic => {
            let three = Rational::from_integer(3.into());
            let abs20 = -&w.d20; // |d₂₀|
            let expr1 =
                &w.d30 * &w.d02 - &three * &w.d12 * &abs20 - &w.c3 * &w.d20 * &w.d20;
            let expr2 = &w.d03 * &abs20 - &three * &w.d21 * &w.d02 - &w.d11 * &w.c3 * &abs20;
            let decision = &expr1 * &expr1 + &expr2 * &expr2;
            let verdict = if decision.is_zero() {
                Verdict::NotRecognized
            } else {
                Verdict::Deltoid
            };
            Ok(WhitneyClassification {
                umbrella_type: utype,
                verdict,
                witness: WhitneyWitness {
                    expressions: [to_f64(&expr1), to_f64(&expr2)],
                    decision,
                },
            })
        }
    }
}

/// The projected jet `(uv + c₃v³/6, Σ d_ij uⁱvʲ/(i!j!))` to the requested
/// order, for the direct classification cross-check.
pub fn whitney_direct_jet(w: &UmbrellaForm, order: usize) -> MapJet2<Scalar> {
    assert!(order >= 3);
    let six_inv = Rational::new(1.into(), 6.into());
    let x = Jet2::from_terms(
        order,
        &[
            (1, 1, Scalar::one()),
            (0, 3, Scalar::rational(&w.c3 * &six_inv)),
        ],
    );
    let half = Rational::new(1.into(), 2.into());
    let y = Jet2::from_terms(
        order,
        &[
            (2, 0, Scalar::rational(&w.d20 * &half)),
            (1, 1, Scalar::rational(w.d11.clone())),
            (0, 2, Scalar::rational(&w.d02 * &half)),
            (3, 0, Scalar::rational(&w.d30 * &six_inv)),
            (2, 1, Scalar::rational(&w.d21 * &half)),
            (1, 2, Scalar::rational(&w.d12 * &half)),
            (0, 3, Scalar::rational(&w.d03 * &six_inv)),
        ],
    );
    MapJet2::new(x, y)
}

/// The first three coefficients of the SO(2) normal form of the projected
/// germ, in closed form.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct WCoeffs {
    /// The `uv`-coefficient of the first component after the elimination
    /// rotation; only its magnitude enters the normal form.
    pub w1: f64,
    /// Twice the `u²`-coefficient of the second component after elimination.
    pub w2: f64,
    /// Twice the `v²`-coefficient of the second component after elimination.
    pub w3: f64,
    pub cot_theta: f64,
}

/// Closed-form `w₁, w₂, w₃` and the elimination angle for the projected
/// umbrella.
///
/// For `d₁₁ ≠ 0` the angle satisfies the quadratic
/// `d₁₁t² + (1 − d₁₁² + d₀₂d₂₀)t − d₁₁ = 0` in `t = cot θ`, taking the root
/// for which the shear radical `x₁ = √((t − d₁₁)² − d₀₂d₂₀)` is real; then
/// with `c, d = ((t − d₁₁) ∓ x₁)/d₀₂` the coefficients are `w₁ = 2sinθ·x₁²/d₀₂`
/// and `w₂, w₃ = 2c/sinθ, 2d/sinθ`. For `d₁₁ = 0` no rotation is needed:
/// `cot θ = 0` by the limit convention and `(w₁, w₂, w₃) = (1, d₂₀, d₀₂)`.
///
/// The degree-three coefficients `w₄, w₅` have no usable closed form; run
/// the normal-form pipeline on [`whitney_direct_jet`] to obtain them.
pub fn umbrella_projection_w_coeffs(w: &UmbrellaForm) -> Result<WCoeffs, WhitneyError> {
    let d11 = to_f64(&w.d11);
    let d20 = to_f64(&w.d20);
    let d02 = to_f64(&w.d02);
    if d11 == 0.0 {
        return Ok(WCoeffs {
            w1: 1.0,
            w2: d20,
            w3: d02,
            cot_theta: 0.0,
        });
    }
    let k = d20 * d02;
    let p = 1.0 - d11 * d11 + k;
    let root = (p * p + 4.0 * d11 * d11).sqrt();
    let mut picked = None;
    for t in [(-p - root) / (2.0 * d11), (-p + root) / (2.0 * d11)] {
        let x1sq = (t - d11) * (t - d11) - k;
        if x1sq > 0.0 {
            picked = Some((t, x1sq.sqrt()));
            break;
        }
    }
    let (t, x1) = picked.ok_or(WhitneyError::DegenerateRotation)?;
    let sin_t = 1.0 / (1.0 + t * t).sqrt();
    let c = ((t - d11) - x1) / d02;
    let d = ((t - d11) + x1) / d02;
    Ok(WCoeffs {
        w1: 2.0 * sin_t * x1 * x1 / d02,
        w2: 2.0 * c / sin_t,
        w3: 2.0 * d / sin_t,
        cot_theta: t,
    })
}
