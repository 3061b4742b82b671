//! Trajectories of composite planar motions.
//!
//! A composite motion multiplies two one-parameter families of rigid plane
//! motions, `ν(u,v) = β(v)α(u)` in SE(2), where both factors are singular
//! at the origin and hence factor as
//!
//! ```text
//! α(u) = ((u²a₁(u), u²a₂(u)), u²p(u)),   β(v) = ((v²b₁(v), v²b₂(v)), v²q(v)).
//! ```
//!
//! The trajectory of a tracked point `ω` is `f = ev_ω∘ν`, always a corank-2
//! germ. It is a sharksfin exactly when three explicit 3×3 determinants in
//! the initial coefficients are all nonzero, and it is never a deltoid: the
//! identifier Hessian is antidiagonal, so its determinant cannot be
//! positive.

use crate::classify::Verdict;
use crate::curve::{CurveJet, Jet1};
use crate::jets::{Jet2, MapJet2};
use crate::num::{Rational, Scalar};

use num_traits::Zero;

/// Taylor coefficients of the six factored motion functions plus the
/// tracked point.
#[derive(Clone, PartialEq, Debug)]
pub struct MotionSpec {
    pub a1: Vec<Rational>,
    pub a2: Vec<Rational>,
    pub p: Vec<Rational>,
    pub b1: Vec<Rational>,
    pub b2: Vec<Rational>,
    pub q: Vec<Rational>,
    pub omega: [Rational; 2],
}

impl MotionSpec {
    fn coeff(series: &[Rational], k: usize) -> Rational {
        series.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// The translational curve of the first factor, `t ↦ (t²a₁(t), t²a₂(t))`.
    pub fn alpha_curve(&self, order: usize) -> CurveJet<Scalar> {
        curve_from_factored(&self.a1, &self.a2, order)
    }

    /// The translational curve of the second factor.
    pub fn beta_curve(&self, order: usize) -> CurveJet<Scalar> {
        curve_from_factored(&self.b1, &self.b2, order)
    }
}

fn curve_from_factored(c1: &[Rational], c2: &[Rational], order: usize) -> CurveJet<Scalar> {
    let mut x = Jet1::zero(order);
    let mut y = Jet1::zero(order);
    for k in 0..=order.saturating_sub(2) {
        x.set(k + 2, Scalar::rational(MotionSpec::coeff(c1, k)));
        y.set(k + 2, Scalar::rational(MotionSpec::coeff(c2, k)));
    }
    CurveJet::new(x, y)
}

/// Embeds `s² · series(s)` as a jet in the chosen variable.
fn shifted_series(series: &[Rational], order: usize, in_u: bool) -> Jet2<Scalar> {
    let mut jet = Jet2::zero(order);
    for k in 0..=order.saturating_sub(2) {
        let c = Scalar::rational(MotionSpec::coeff(series, k));
        if in_u {
            jet.set(k + 2, 0, c);
        } else {
            jet.set(0, k + 2, c);
        }
    }
    jet
}

/// The trajectory jet of `ω`: the rotation part acts on `ω`, the second
/// factor's rotation acts on the first factor's translation, and the
/// constant `A(0)ω + a(0) = ω` is subtracted so the germ fixes the origin.
pub fn motion_trajectory_jet(m: &MotionSpec, order: usize) -> MapJet2<Scalar> {
    assert!(order >= 3);
    let u2a1 = shifted_series(&m.a1, order, true);
    let u2a2 = shifted_series(&m.a2, order, true);
    let u2p = shifted_series(&m.p, order, true);
    let v2b1 = shifted_series(&m.b1, order, false);
    let v2b2 = shifted_series(&m.b2, order, false);
    let v2q = shifted_series(&m.q, order, false);

    let cos_q = v2q.cos();
    let sin_q = v2q.sin();
    let theta = u2p.add(&v2q);
    let cos_theta = theta.cos();
    let sin_theta = theta.sin();

    let w1 = Scalar::rational(m.omega[0].clone());
    let w2 = Scalar::rational(m.omega[1].clone());

    let f1 = v2b1
        .add(&u2a1.mul(&cos_q))
        .add(&cos_theta.scale(&w1))
        .sub(&u2a2.mul(&sin_q))
        .sub(&sin_theta.scale(&w2))
        .sub(&Jet2::constant(w1.clone(), order));
    let f2 = v2b2
        .add(&u2a2.mul(&cos_q))
        .add(&cos_theta.scale(&w2))
        .add(&u2a1.mul(&sin_q))
        .add(&sin_theta.scale(&w1))
        .sub(&Jet2::constant(w2.clone(), order));
    MapJet2::new(f1, f2)
}

/// The three determinant witnesses of the sharksfin condition.
#[derive(Clone, PartialEq, Debug)]
pub struct MotionWitness {
    /// `det[[1, w₂, −w₁], [p(0), a₁(0), a₂(0)], [q(0), b₁(0), b₂(0)]]`;
    /// vanishes exactly when the identifier Hessian degenerates.
    pub det_mixed: Rational,
    /// Determinant with the derivative row of the first factor.
    pub det_alpha: Rational,
    /// Determinant with the derivative row of the second factor.
    pub det_beta: Rational,
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]
    };
    &m[0][0] * &minor(1, 2, 1, 2) - &m[0][1] * &minor(1, 2, 0, 2) + &m[0][2] * &minor(1, 2, 0, 1)
}

/// Closed-form classification of the trajectory germ. Never returns
/// `Deltoid`.
pub fn motion_classify(m: &MotionSpec) -> (Verdict, MotionWitness) {
    let c = MotionSpec::coeff;
    let top = [
        Rational::from_integer(1.into()),
        m.omega[1].clone(),
        -m.omega[0].clone(),
    ];
    let alpha0 = [c(&m.p, 0), c(&m.a1, 0), c(&m.a2, 0)];
    let beta0 = [c(&m.q, 0), c(&m.b1, 0), c(&m.b2, 0)];
    let alpha1 = [c(&m.p, 1), c(&m.a1, 1), c(&m.a2, 1)];
    let beta1 = [c(&m.q, 1), c(&m.b1, 1), c(&m.b2, 1)];

    let det_mixed = det3(&[top.clone(), alpha0.clone(), beta0.clone()]);
    let det_alpha = det3(&[top.clone(), alpha0, alpha1]);
    let det_beta = det3(&[top, beta0, beta1]);

    let verdict = if det_mixed.is_zero() {
        Verdict::DegenerateHessian
    } else if det_alpha.is_zero() || det_beta.is_zero() {
        Verdict::NotRecognized
    } else {
        Verdict::Sharksfin
    };
    (
        verdict,
        MotionWitness {
            det_mixed,
            det_alpha,
            det_beta,
        },
    )
}
