//! Recognition of the two generic rank-zero singularities of plane-to-plane
//! map germs.
//!
//! For a germ `f` with `rank df₀ = 0`, the Jacobian determinant `λ` (an
//! identifier of singularities) has a critical point at the origin. When its
//! Hessian is nondegenerate, the two independent solutions `η₁, η₂` of the
//! Hesse quadric — real for an index-1 critical point, conjugate complex for
//! a definite one — feed the determinant test
//!
//! ```text
//! det(η₁²f, η₁³f)(0) ≠ 0   and   det(η₂²f, η₂³f)(0) ≠ 0,
//! ```
//!
//! which together with the sign of `det Hess λ` decides between a sharksfin
//! (index 1) and a deltoid (definite). The verdict is evaluated on the
//! product `D₁·D₂`, which is invariant under root scaling and conjugation
//! and rational for rational input, so no root-ordering convention can flip
//! it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::jets::{det2, directional_iterate, Jet2, MapJet2, Var};
use crate::num::{Coeff, Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassifyError {
    /// The truncation order is too small to evaluate third derivatives.
    OrderTooSmall,
    /// The identifier has a nonvanishing linear part (the germ has rank ≥ 1).
    NotRankZero,
    /// A declared multiplier vanishes at the origin.
    MultiplierNotUnit,
    /// Quadric directions were requested for a degenerate Hessian.
    DegenerateHessian,
    /// The quadric discriminant is not expressible in a single quadratic
    /// extension of the coefficient field.
    DiscriminantNotRepresentable,
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::OrderTooSmall => write!(f, "truncation order must be at least 3"),
            ClassifyError::NotRankZero => write!(f, "identifier has a nonvanishing linear part"),
            ClassifyError::MultiplierNotUnit => write!(f, "multiplier vanishes at the origin"),
            ClassifyError::DegenerateHessian => write!(f, "degenerate Hessian"),
            ClassifyError::DiscriminantNotRepresentable => {
                write!(f, "quadric discriminant not representable in one extension")
            }
        }
    }
}

impl std::error::Error for ClassifyError {}

/// An identifier of singularities: the Jacobian determinant of the germ, or
/// a declared unit multiple of it. Its zero set is the singular set.
#[derive(Clone, PartialEq, Debug)]
pub struct Identifier<C> {
    lambda: Jet2<C>,
}

impl<C: Coeff> Identifier<C> {
    /// `λ = (f₁)_u (f₂)_v − (f₁)_v (f₂)_u`, one order below the germ.
    pub fn jacobian(f: &MapJet2<C>) -> Self {
        let f1u = f.x().derive(Var::U);
        let f1v = f.x().derive(Var::V);
        let f2u = f.y().derive(Var::U);
        let f2v = f.y().derive(Var::V);
        Identifier {
            lambda: f1u.mul(&f2v).sub(&f1v.mul(&f2u)),
        }
    }

    /// Jacobian identifier scaled by a unit series (test hook for the
    /// multiplier-invariance property).
    pub fn with_unit_multiplier(f: &MapJet2<C>, rho: &Jet2<C>) -> Result<Self, ClassifyError> {
        if rho.constant_term().is_zero() {
            return Err(ClassifyError::MultiplierNotUnit);
        }
        let base = Identifier::jacobian(f);
        let order = base.lambda.order();
        Ok(Identifier {
            lambda: base.lambda.mul(&rho.truncated(order)),
        })
    }

    pub fn from_jet(lambda: Jet2<C>) -> Self {
        Identifier { lambda }
    }

    pub fn jet(&self) -> &Jet2<C> {
        &self.lambda
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HessIndex {
    /// `det < 0`: two real quadric directions, sharksfin candidate.
    IndexOne,
    /// `det > 0`: conjugate complex directions, deltoid candidate.
    Definite,
    Degenerate,
}

/// Second-order data of an identifier at the origin: the true second
/// derivatives, their determinant and the index class.
#[derive(Clone, PartialEq, Debug)]
pub struct HessianData<C> {
    pub huu: C,
    pub huv: C,
    pub hvv: C,
    pub det: C,
    pub index: HessIndex,
}

/// Rank of the linear part of the germ at the origin.
pub fn rank_at_origin<C: Coeff>(f: &MapJet2<C>) -> u8 {
    let l = f.linear_part();
    let det = l[0][0].mul(&l[1][1]).sub(&l[0][1].mul(&l[1][0]));
    if !det.is_zero() {
        2
    } else if l.iter().flatten().all(|c| c.is_zero()) {
        0
    } else {
        1
    }
}

/// Extracts the Hessian of the identifier at the origin. Errors when the
/// identifier still has linear terms, which signals a germ of rank ≥ 1.
pub fn hessian_at_origin<C: Coeff>(id: &Identifier<C>) -> Result<HessianData<C>, ClassifyError> {
    let lam = id.jet();
    assert!(lam.order() >= 2, "identifier order too small");
    if !lam.get(1, 0).is_zero() || !lam.get(0, 1).is_zero() {
        return Err(ClassifyError::NotRankZero);
    }
    let two = C::from_int(2);
    let huu = lam.get(2, 0).mul(&two);
    let huv = lam.get(1, 1).clone();
    let hvv = lam.get(0, 2).mul(&two);
    let det = huu.mul(&hvv).sub(&huv.mul(&huv));
    let index = match det.sign() {
        Some(0) => HessIndex::Degenerate,
        Some(s) if s < 0 => HessIndex::IndexOne,
        Some(_) => HessIndex::Definite,
        None => HessIndex::Degenerate, // not reachable for real identifiers
    };
    Ok(HessianData {
        huu,
        huv,
        hvv,
        det,
        index,
    })
}

/// Which coefficient of the quadric carried the normalization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootPivot {
    Huu,
    Hvv,
    Axes,
}

/// The two independent directions annihilating the Hesse quadric
/// `h_uu x² + 2h_uv xy + h_vv y² = 0`.
///
/// With pivot `h_uu ≠ 0` the roots are `(−h_uv ± √(h_uv² − h_uu h_vv), h_uu)`;
/// the symmetric form is used when only `h_vv ≠ 0`, and the coordinate axes
/// when both vanish. Real roots are oriented so that their first nonzero
/// component is positive, which pins down the branch parametrizations used
/// by the cusp analysis.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadricRoots<C> {
    pub eta1: [C; 2],
    pub eta2: [C; 2],
    pub pivot: RootPivot,
    /// The reduced discriminant `h_uv² − h_uu h_vv` of the quadric.
    pub disc: C,
    /// Whether the roots are a conjugate complex pair.
    pub complex: bool,
}

impl QuadricRoots<Scalar> {
    /// Field discriminant `d` of the extension `ℚ(√d)` housing the roots
    /// (`1` when the roots are rational).
    pub fn field_discriminant(&self) -> BigInt {
        for c in self.eta1.iter().chain(self.eta2.iter()) {
            if !c.radical_part().is_zero() {
                return c.discriminant().clone();
            }
        }
        BigInt::from(1)
    }
}

pub fn hesse_quadric_roots<C: Coeff>(
    h: &HessianData<C>,
) -> Result<QuadricRoots<C>, ClassifyError> {
    if h.index == HessIndex::Degenerate {
        return Err(ClassifyError::DegenerateHessian);
    }
    let disc = h.huv.mul(&h.huv).sub(&h.huu.mul(&h.hvv));
    let sqrt_disc = disc
        .sqrt_extend()
        .ok_or(ClassifyError::DiscriminantNotRepresentable)?;
    let complex = matches!(h.index, HessIndex::Definite);
    let (eta1, eta2, pivot) = if !h.huu.is_zero() {
        (
            [h.huv.neg().add(&sqrt_disc), h.huu.clone()],
            [h.huv.neg().sub(&sqrt_disc), h.huu.clone()],
            RootPivot::Huu,
        )
    } else if !h.hvv.is_zero() {
        (
            [h.hvv.clone(), h.huv.neg().add(&sqrt_disc)],
            [h.hvv.clone(), h.huv.neg().sub(&sqrt_disc)],
            RootPivot::Hvv,
        )
    } else {
        (
            [C::one(), C::zero()],
            [C::zero(), C::one()],
            RootPivot::Axes,
        )
    };
    let orient = |mut v: [C; 2]| -> [C; 2] {
        if complex {
            return v;
        }
        let lead = if !v[0].is_zero() { &v[0] } else { &v[1] };
        if lead.sign() == Some(-1) {
            v = [v[0].neg(), v[1].neg()];
        }
        v
    };
    Ok(QuadricRoots {
        eta1: orient(eta1),
        eta2: orient(eta2),
        pivot,
        disc,
        complex,
    })
}

/// The two determinant values of the recognition test and their product.
#[derive(Clone, PartialEq, Debug)]
pub struct CriterionData<C> {
    pub d1: C,
    pub d2: C,
    pub product: C,
}

impl CriterionData<Scalar> {
    /// The product is conjugation-symmetric, hence rational for rational
    /// germs.
    pub fn product_rational(&self) -> Option<&Rational> {
        self.product.as_rational()
    }
}

/// Evaluates `Dᵢ = det(ηᵢ²f, ηᵢ³f)(0)` with the constant extensions of the
/// quadric directions.
pub fn criterion_determinants<C: Coeff>(
    f: &MapJet2<C>,
    roots: &QuadricRoots<C>,
) -> Result<CriterionData<C>, ClassifyError> {
    if f.order() < 3 {
        return Err(ClassifyError::OrderTooSmall);
    }
    let dets = [&roots.eta1, &roots.eta2].map(|eta| {
        let second = directional_iterate(f, eta, 2);
        let third = directional_iterate(f, eta, 3);
        det2(&second, &third)
    });
    let [d1, d2] = dets;
    let product = d1.mul(&d2);
    Ok(CriterionData { d1, d2, product })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Sharksfin,
    Deltoid,
    DegenerateHessian,
    NotRecognized,
    NotRankZero,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Verdict::Sharksfin => "Sharksfin",
            Verdict::Deltoid => "Deltoid",
            Verdict::DegenerateHessian => "DegenerateHessian",
            Verdict::NotRecognized => "NotRecognized",
            Verdict::NotRankZero => "NotRankZero",
        };
        write!(f, "{}", name)
    }
}

/// Full classification result with the witnesses that produced the verdict.
#[derive(Clone, PartialEq, Debug)]
pub struct Classification<C> {
    pub verdict: Verdict,
    pub rank: u8,
    pub hessian: Option<HessianData<C>>,
    pub roots: Option<QuadricRoots<C>>,
    pub criterion: Option<CriterionData<C>>,
}

/// Classifies a rank-zero germ as sharksfin or deltoid.
///
/// The only error condition is a truncation order below 3; everything else
/// (positive rank, degenerate Hessian, vanishing determinant product) is a
/// verdict, not an error.
pub fn classify_germ<C: Coeff>(f: &MapJet2<C>) -> Result<Classification<C>, ClassifyError> {
    classify_with_identifier(f, &Identifier::jacobian(f))
}

/// Classification against a caller-supplied identifier (used by the
/// multiplier-invariance tests).
pub fn classify_with_identifier<C: Coeff>(
    f: &MapJet2<C>,
    id: &Identifier<C>,
) -> Result<Classification<C>, ClassifyError> {
    if f.order() < 3 {
        return Err(ClassifyError::OrderTooSmall);
    }
    let rank = rank_at_origin(f);
    if rank > 0 {
        return Ok(Classification {
            verdict: Verdict::NotRankZero,
            rank,
            hessian: None,
            roots: None,
            criterion: None,
        });
    }
    let hessian = hessian_at_origin(id)?;
    if hessian.index == HessIndex::Degenerate {
        return Ok(Classification {
            verdict: Verdict::DegenerateHessian,
            rank,
            hessian: Some(hessian),
            roots: None,
            criterion: None,
        });
    }
    let roots = hesse_quadric_roots(&hessian)?;
    let criterion = criterion_determinants(f, &roots)?;
    let verdict = if criterion.product.is_zero() {
        Verdict::NotRecognized
    } else if hessian.index == HessIndex::IndexOne {
        Verdict::Sharksfin
    } else {
        Verdict::Deltoid
    };
    Ok(Classification {
        verdict,
        rank,
        hessian: Some(hessian),
        roots: Some(roots),
        criterion: Some(criterion),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Scalar;
    use num_traits::Signed;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sr(n: i64, m: i64) -> Scalar {
        Scalar::from_ratio(n, m)
    }

    fn jet(order: usize, terms: &[(usize, usize, Scalar)]) -> Jet2<Scalar> {
        Jet2::from_terms(order, terms)
    }

    /// `(uv, εu²/2 + v²/2 + Σ a_ij uⁱvʲ/(i!j!))` at order 4.
    pub fn reduced_form(eps: i64, a30: i64, a21: i64, a12: i64, a03: i64) -> MapJet2<Scalar> {
        MapJet2::new(
            jet(4, &[(1, 1, s(1))]),
            jet(
                4,
                &[
                    (2, 0, sr(eps, 2)),
                    (0, 2, sr(1, 2)),
                    (3, 0, sr(a30, 6)),
                    (2, 1, sr(a21, 2)),
                    (1, 2, sr(a12, 2)),
                    (0, 3, sr(a03, 6)),
                ],
            ),
        )
    }

    #[test]
    fn jacobian_of_identity() {
        let f = MapJet2::<Scalar>::identity(3);
        let lam = Identifier::jacobian(&f);
        assert_eq!(lam.jet(), &Jet2::one(2));
    }

    #[test]
    fn jacobian_of_cubic_sharksfin() {
        // f = (uv, u²/2 + v²/2 + u³/6) → λ = v² − u² − u³/2
        let f = MapJet2::new(
            jet(4, &[(1, 1, s(1))]),
            jet(4, &[(2, 0, sr(1, 2)), (0, 2, sr(1, 2)), (3, 0, sr(1, 6))]),
        );
        let lam = Identifier::jacobian(&f);
        let expected = jet(3, &[(0, 2, s(1)), (2, 0, s(-1)), (3, 0, sr(-1, 2))]);
        assert_eq!(lam.jet(), &expected);
    }

    #[test]
    fn jacobian_of_definite_germ() {
        // f = (uv, −u²/2 + v²/2) → λ = v² + u²
        let f = MapJet2::new(
            jet(3, &[(1, 1, s(1))]),
            jet(3, &[(2, 0, sr(-1, 2)), (0, 2, sr(1, 2))]),
        );
        let lam = Identifier::jacobian(&f);
        assert_eq!(lam.jet(), &jet(2, &[(0, 2, s(1)), (2, 0, s(1))]));
    }

    #[test]
    fn rank_detection() {
        let rank0 = MapJet2::new(jet(3, &[(1, 1, s(1))]), jet(3, &[(2, 0, s(1)), (0, 2, s(1))]));
        assert_eq!(rank_at_origin(&rank0), 0);
        let rank1 = MapJet2::new(jet(3, &[(1, 0, s(1))]), jet(3, &[(0, 2, s(1))]));
        assert_eq!(rank_at_origin(&rank1), 1);
        assert_eq!(rank_at_origin(&MapJet2::<Scalar>::identity(3)), 2);
    }

    #[test]
    fn hessians_of_model_quadratics() {
        // λ = v² − u²
        let id = Identifier::from_jet(jet(2, &[(0, 2, s(1)), (2, 0, s(-1))]));
        let h = hessian_at_origin(&id).unwrap();
        assert_eq!((h.huu.clone(), h.hvv.clone()), (s(-2), s(2)));
        assert_eq!(h.det, s(-4));
        assert_eq!(h.index, HessIndex::IndexOne);

        // λ = v² + u²
        let id = Identifier::from_jet(jet(2, &[(0, 2, s(1)), (2, 0, s(1))]));
        let h = hessian_at_origin(&id).unwrap();
        assert_eq!(h.det, s(4));
        assert_eq!(h.index, HessIndex::Definite);

        // λ = uv
        let id = Identifier::from_jet(jet(2, &[(1, 1, s(1))]));
        let h = hessian_at_origin(&id).unwrap();
        assert_eq!(h.huv, s(1));
        assert_eq!(h.det, s(-1));
        assert_eq!(h.index, HessIndex::IndexOne);

        // linear part present → rank signal
        let id = Identifier::from_jet(jet(2, &[(1, 0, s(1))]));
        assert_eq!(hessian_at_origin(&id), Err(ClassifyError::NotRankZero));
    }

    fn parallel(a: &[Scalar; 2], b: (i64, i64)) -> bool {
        a[0].mul(&s(b.1)).sub(&a[1].mul(&s(b.0))).is_zero()
    }

    #[test]
    fn quadric_roots_real_pair() {
        let id = Identifier::from_jet(jet(2, &[(0, 2, s(1)), (2, 0, s(-1))]));
        let h = hessian_at_origin(&id).unwrap();
        let roots = hesse_quadric_roots(&h).unwrap();
        assert!(!roots.complex);
        // spanning (1,−1) and (1,1), oriented with positive lead
        assert!(parallel(&roots.eta1, (1, -1)));
        assert!(parallel(&roots.eta2, (1, 1)));
        assert_eq!(roots.eta1[0].sign(), Some(1));
        assert_eq!(roots.eta2[0].sign(), Some(1));
    }

    #[test]
    fn quadric_roots_conjugate_pair() {
        let id = Identifier::from_jet(jet(2, &[(0, 2, s(1)), (2, 0, s(1))]));
        let h = hessian_at_origin(&id).unwrap();
        let roots = hesse_quadric_roots(&h).unwrap();
        assert!(roots.complex);
        assert_eq!(roots.eta2[0], roots.eta1[0].conj());
        assert_eq!(roots.eta2[1], roots.eta1[1].conj());
        // η₁ spans the line of (1, −i): η₁ = (2i, 2) ∥ (1, −i) since
        // (2i)·(−i) = 2.
        let prod = roots.eta1[0].mul(&Scalar::from_parts(
            num_rational::BigRational::new(0.into(), 1.into()),
            num_rational::BigRational::new((-1).into(), 1.into()),
            (-1).into(),
        ));
        assert_eq!(prod, roots.eta1[1]);
    }

    #[test]
    fn quadric_roots_axes_case() {
        let id = Identifier::from_jet(jet(2, &[(1, 1, s(1))]));
        let h = hessian_at_origin(&id).unwrap();
        let roots = hesse_quadric_roots(&h).unwrap();
        assert_eq!(roots.pivot, RootPivot::Axes);
        assert_eq!(roots.eta1, [s(1), s(0)]);
        assert_eq!(roots.eta2, [s(0), s(1)]);
    }

    #[test]
    fn determinant_values_on_reduced_forms() {
        // ε = 1, a₃₀ = 1, rest 0: D/2 = ±1 for η = (1, ±1).
        let f = reduced_form(1, 1, 0, 0, 0);
        let plus = QuadricRoots {
            eta1: [s(1), s(1)],
            eta2: [s(1), s(-1)],
            pivot: RootPivot::Huu,
            disc: s(4),
            complex: false,
        };
        let crit = criterion_determinants(&f, &plus).unwrap();
        assert_eq!(crit.d1, s(2));
        assert_eq!(crit.d2, s(-2));
        assert_eq!(crit.product, s(-4));

        // ε = −1 with no cubic terms: both determinants vanish.
        let g = reduced_form(-1, 0, 0, 0, 0);
        let id = Identifier::jacobian(&g);
        let h = hessian_at_origin(&id).unwrap();
        let roots = hesse_quadric_roots(&h).unwrap();
        let crit = criterion_determinants(&g, &roots).unwrap();
        assert!(crit.d1.is_zero() && crit.d2.is_zero());
    }

    #[test]
    fn classify_model_germs() {
        // (uv, u² + v² + u³)
        let sharks = MapJet2::new(
            jet(4, &[(1, 1, s(1))]),
            jet(4, &[(2, 0, s(1)), (0, 2, s(1)), (3, 0, s(1))]),
        );
        assert_eq!(classify_germ(&sharks).unwrap().verdict, Verdict::Sharksfin);

        // (uv, −u² + v² + u³)
        let deltoid = MapJet2::new(
            jet(4, &[(1, 1, s(1))]),
            jet(4, &[(2, 0, s(-1)), (0, 2, s(1)), (3, 0, s(1))]),
        );
        assert_eq!(classify_germ(&deltoid).unwrap().verdict, Verdict::Deltoid);

        // (uv, u² + v²): cubic part zero
        let flat = MapJet2::new(
            jet(4, &[(1, 1, s(1))]),
            jet(4, &[(2, 0, s(1)), (0, 2, s(1))]),
        );
        assert_eq!(
            classify_germ(&flat).unwrap().verdict,
            Verdict::NotRecognized
        );

        // (u² + v³, v² + u³): the other sharksfin model
        let alt = MapJet2::new(
            jet(4, &[(2, 0, s(1)), (0, 3, s(1))]),
            jet(4, &[(0, 2, s(1)), (3, 0, s(1))]),
        );
        let out = classify_germ(&alt).unwrap();
        assert_eq!(out.verdict, Verdict::Sharksfin);

        // rank one germ
        let fold = MapJet2::new(jet(4, &[(1, 0, s(1))]), jet(4, &[(0, 2, s(1))]));
        assert_eq!(classify_germ(&fold).unwrap().verdict, Verdict::NotRankZero);
    }

    #[test]
    fn product_is_rational_for_conjugate_roots() {
        let deltoid = MapJet2::new(
            jet(4, &[(1, 1, s(1))]),
            jet(4, &[(2, 0, s(-1)), (0, 2, s(1)), (3, 0, s(1)), (0, 3, s(2))]),
        );
        let out = classify_germ(&deltoid).unwrap();
        let crit = out.criterion.unwrap();
        let q = crit.product_rational().expect("rational product");
        assert!(!q.is_negative() || out.hessian.unwrap().index != HessIndex::Definite);
    }

    #[test]
    fn multiplier_invariance_smoke() {
        let f = reduced_form(1, 1, -2, 0, 1);
        let base = classify_germ(&f).unwrap();
        let rho = jet(3, &[(0, 0, s(3)), (1, 0, s(-1)), (0, 1, s(2))]);
        let id = Identifier::with_unit_multiplier(&f, &rho).unwrap();
        let scaled = classify_with_identifier(&f, &id).unwrap();
        assert_eq!(base.verdict, scaled.verdict);
        // det Hess scales by ρ(0)², preserving its sign.
        let s0 = base.hessian.unwrap().det.sign();
        let s1 = scaled.hessian.unwrap().det.sign();
        assert_eq!(s0, s1);
    }

    #[test]
    fn zero_multiplier_rejected() {
        let f = reduced_form(1, 1, 0, 0, 0);
        let rho = jet(3, &[(1, 0, s(1))]);
        assert_eq!(
            Identifier::with_unit_multiplier(&f, &rho).unwrap_err(),
            ClassifyError::MultiplierNotUnit
        );
    }

    #[test]
    fn order_two_jets_are_rejected() {
        let f = MapJet2::new(jet(2, &[(1, 1, s(1))]), jet(2, &[(2, 0, s(1)), (0, 2, s(1))]));
        assert_eq!(classify_germ(&f).unwrap_err(), ClassifyError::OrderTooSmall);
    }
}
