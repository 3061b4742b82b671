//! 3/2-cusp recognition for curve germs and the singular-branch analysis of
//! index-1 identifiers.
//!
//! A curve germ `c` has a 3/2-cusp at `0` exactly when `c′(0) = 0` and
//! `det(c″(0), c‴(0)) ≠ 0`. Its cuspidal direction is the direction of
//! `c″(0)` and its cuspidal curvature is
//! `κ = det(c″(0), c‴(0)) / |c″(0)|^{5/2}`.
//!
//! For a rank-zero germ whose identifier has an index-1 critical point, the
//! singular set consists of two regular curves tangent to the real Hesse
//! quadric directions; the germ is a sharksfin exactly when both image
//! curves are 3/2-cusps.

use std::fmt;

use crate::classify::{HessIndex, Identifier, QuadricRoots};
use crate::curve::{compose_map_curve, CurveJet, Jet1};
use crate::jets::{det2, MapJet2};
use crate::num::Coeff;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CuspError {
    /// `c′(0) ≠ 0`: the curve is regular at the origin.
    NotSingularPoint,
    /// `c″(0) = 0`: beyond the 3/2-cusp stratum.
    DegenerateSecondDerivative,
}

impl fmt::Display for CuspError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspError::NotSingularPoint => write!(f, "curve is regular at the origin"),
            CuspError::DegenerateSecondDerivative => {
                write!(f, "second derivative vanishes at the origin")
            }
        }
    }
}

impl std::error::Error for CuspError {}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BranchError {
    /// Branch extraction needs an index-1 identifier with real directions.
    NotIndexOne,
}

impl fmt::Display for BranchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "branch curves need an index-1 identifier")
    }
}

impl std::error::Error for BranchError {}

/// Outcome of the 3/2-cusp test, with the witnessing derivatives.
#[derive(Clone, PartialEq, Debug)]
pub struct CuspData<C> {
    pub is_cusp: bool,
    /// `c″(0)`; its direction bisects the cusp.
    pub c2: [C; 2],
    /// `c‴(0)`.
    pub c3: [C; 2],
    /// `det(c″(0), c‴(0))`.
    pub det: C,
    /// `|c″(0)|²`, kept unreduced so exact comparisons stay in the field.
    pub norm2: C,
}

impl<C: Coeff> CuspData<C> {
    /// Cuspidal curvature `det / norm2^{5/4}` on the floating path; `None`
    /// unless the curve is a cusp.
    pub fn kappa(&self) -> Option<f64> {
        if !self.is_cusp {
            return None;
        }
        let det = self.det.to_f64()?;
        let n2 = self.norm2.to_f64()?;
        Some(det / n2.powf(1.25))
    }

    /// The exact pair `(det(c″,c‴), |c″|²)` defining the curvature.
    pub fn kappa_exact(&self) -> (C, C) {
        (self.det.clone(), self.norm2.clone())
    }
}

/// Tests whether a curve germ has a 3/2-cusp at the origin.
pub fn curve_cusp_test<C: Coeff>(c: &CurveJet<C>) -> Result<CuspData<C>, CuspError> {
    assert!(c.order() >= 3, "cusp test needs a 3-jet of the curve");
    let c1 = c.derivative_at_origin(1);
    if !c1[0].is_zero() || !c1[1].is_zero() {
        return Err(CuspError::NotSingularPoint);
    }
    let c2 = c.derivative_at_origin(2);
    if c2[0].is_zero() && c2[1].is_zero() {
        return Err(CuspError::DegenerateSecondDerivative);
    }
    let c3 = c.derivative_at_origin(3);
    let det = det2(&c2, &c3);
    let norm2 = c2[0].mul(&c2[0]).add(&c2[1].mul(&c2[1]));
    Ok(CuspData {
        is_cusp: !det.is_zero(),
        c2,
        c3,
        det,
        norm2,
    })
}

/// The two branch curves of the singular set, each regular at `0` with
/// tangent along a real quadric direction.
#[derive(Clone, PartialEq, Debug)]
pub struct BranchPair<C> {
    pub gamma1: CurveJet<C>,
    pub gamma2: CurveJet<C>,
}

/// Power-series branches of `λ = 0` through an index-1 critical point.
///
/// After the linear change sending the quadric roots to the axes, each
/// branch is a graph over its own axis and the mixed quadric coefficient
/// makes every coefficient uniquely solvable degree by degree. Branch `i`
/// is parametrized with `γᵢ′(0) = ηᵢ`.
pub fn branch_curves<C: Coeff>(
    id: &Identifier<C>,
    roots: &QuadricRoots<C>,
) -> Result<BranchPair<C>, BranchError> {
    if roots.complex {
        return Err(BranchError::NotIndexOne);
    }
    let lam = id.jet();
    let order = lam.order();
    assert!(order >= 2, "identifier order too small for branches");
    // μ(x, y) = λ(x·η₁ + y·η₂); its quadratic part is a nonzero multiple of
    // xy because the roots annihilate the quadric.
    let a = MapJet2::linear(
        &[
            [roots.eta1[0].clone(), roots.eta2[0].clone()],
            [roots.eta1[1].clone(), roots.eta2[1].clone()],
        ],
        order,
    );
    let mu = lam.compose(&a);
    let mu11 = mu.get(1, 1).clone();
    let mu11_inv = mu11.inv().expect("nondegenerate quadric has mixed term");
    let solve_graph = |first_axis: bool| -> Jet1<C> {
        // Branch along the chosen axis: substitute (t, y(t)) or (x(t), t)
        // and kill the residual one degree at a time.
        let work = order + 1;
        let t = Jet1::variable(work);
        let mut graph = Jet1::zero(work);
        for k in 2..=order {
            let (xs, ys) = if first_axis {
                (t.clone(), graph.clone())
            } else {
                (graph.clone(), t.clone())
            };
            let mut residual = Jet1::zero(work);
            let mut xp: Vec<Jet1<C>> = vec![Jet1::constant(C::one(), work)];
            let mut yp: Vec<Jet1<C>> = vec![Jet1::constant(C::one(), work)];
            for p in 1..=order {
                xp.push(xp[p - 1].mul(&xs));
                yp.push(yp[p - 1].mul(&ys));
            }
            for (i, j, c) in mu.terms() {
                if c.is_zero() {
                    continue;
                }
                residual = residual.add(&xp[i].mul(&yp[j]).scale(c));
            }
            // The correction c_k enters the t^{k+1} coefficient through the
            // mixed quadric term.
            let ck = residual.coeff(k + 1).mul(&mu11_inv).neg();
            graph.set(k, ck);
        }
        graph.truncated(order)
    };
    let y_of_t = solve_graph(true);
    let x_of_t = solve_graph(false);
    let t = Jet1::variable(order);
    let line = |a0: &C, coeff_t: &Jet1<C>, a1: &C, coeff_g: &Jet1<C>| {
        coeff_t.scale(a0).add(&coeff_g.scale(a1))
    };
    let gamma1 = CurveJet::new(
        line(&roots.eta1[0], &t, &roots.eta2[0], &y_of_t),
        line(&roots.eta1[1], &t, &roots.eta2[1], &y_of_t),
    );
    let gamma2 = CurveJet::new(
        line(&roots.eta2[0], &t, &roots.eta1[0], &x_of_t),
        line(&roots.eta2[1], &t, &roots.eta1[1], &x_of_t),
    );
    Ok(BranchPair { gamma1, gamma2 })
}

/// Applies the cusp test to the images of both singular branches.
pub fn branch_image_cusps<C: Coeff>(
    f: &MapJet2<C>,
    branches: &BranchPair<C>,
) -> Result<(CuspData<C>, CuspData<C>), CuspError> {
    assert!(f.order() >= 4, "branch image analysis needs a 4-jet");
    let im1 = compose_map_curve(f, &branches.gamma1);
    let im2 = compose_map_curve(f, &branches.gamma2);
    Ok((curve_cusp_test(&im1)?, curve_cusp_test(&im2)?))
}

/// Convenience: branch data straight from a germ with index-1 identifier.
pub fn singular_branches<C: Coeff>(f: &MapJet2<C>) -> Result<BranchPair<C>, BranchError> {
    let id = Identifier::jacobian(f);
    let h = crate::classify::hessian_at_origin(&id).map_err(|_| BranchError::NotIndexOne)?;
    if h.index != HessIndex::IndexOne {
        return Err(BranchError::NotIndexOne);
    }
    let roots = crate::classify::hesse_quadric_roots(&h).map_err(|_| BranchError::NotIndexOne)?;
    branch_curves(&id, &roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{hesse_quadric_roots, hessian_at_origin};
    use crate::jets::Jet2;
    use crate::num::Scalar;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sr(n: i64, m: i64) -> Scalar {
        Scalar::from_ratio(n, m)
    }

    fn curve(order: usize, xs: &[i64], ys: &[i64]) -> CurveJet<Scalar> {
        CurveJet::new(
            Jet1::from_coeffs(order, &xs.iter().map(|&n| s(n)).collect::<Vec<_>>()),
            Jet1::from_coeffs(order, &ys.iter().map(|&n| s(n)).collect::<Vec<_>>()),
        )
    }

    #[test]
    fn standard_cusp() {
        // t ↦ (t², t³)
        let c = curve(3, &[0, 0, 1], &[0, 0, 0, 1]);
        let data = curve_cusp_test(&c).unwrap();
        assert!(data.is_cusp);
        assert_eq!(data.c2, [s(2), s(0)]);
        assert_eq!(data.c3, [s(0), s(6)]);
        let kappa = data.kappa().unwrap();
        assert!((kappa - 12.0 / 2.0_f64.powf(2.5)).abs() < 1e-12);
        assert!((kappa - 2.1213203).abs() < 1e-6);
    }

    #[test]
    fn tangential_degeneracy_is_not_a_cusp() {
        // t ↦ (t², t⁴)
        let c = curve(4, &[0, 0, 1], &[0, 0, 0, 0, 1]);
        let data = curve_cusp_test(&c).unwrap();
        assert!(!data.is_cusp);
        assert!(data.det.is_zero());
        assert_eq!(data.kappa(), None);
    }

    #[test]
    fn quartic_term_does_not_change_kappa() {
        // t ↦ (t², t³ + t⁴)
        let c = curve(4, &[0, 0, 1], &[0, 0, 0, 1, 1]);
        let data = curve_cusp_test(&c).unwrap();
        assert!(data.is_cusp);
        let base = curve_cusp_test(&curve(3, &[0, 0, 1], &[0, 0, 0, 1])).unwrap();
        assert_eq!(data.kappa(), base.kappa());
    }

    #[test]
    fn cusp_error_signals() {
        let regular = curve(3, &[0, 1], &[0, 0, 1]);
        assert_eq!(
            curve_cusp_test(&regular).unwrap_err(),
            CuspError::NotSingularPoint
        );
        let flat = curve(3, &[0, 0, 0, 1], &[0, 0, 0, 2]);
        assert_eq!(
            curve_cusp_test(&flat).unwrap_err(),
            CuspError::DegenerateSecondDerivative
        );
    }

    fn branches_of(lam: Jet2<Scalar>) -> BranchPair<Scalar> {
        let id = Identifier::from_jet(lam);
        let h = hessian_at_origin(&id).unwrap();
        let roots = hesse_quadric_roots(&h).unwrap();
        branch_curves(&id, &roots).unwrap()
    }

    fn check_branch_annihilates(lam: &Jet2<Scalar>, gamma: &CurveJet<Scalar>) {
        // λ∘γ ≡ 0 through degree order+1
        let order = gamma.order();
        let mut acc = Jet1::zero(order);
        let mut xp: Vec<Jet1<Scalar>> = vec![Jet1::constant(s(1), order)];
        let mut yp: Vec<Jet1<Scalar>> = vec![Jet1::constant(s(1), order)];
        for p in 1..=order {
            xp.push(xp[p - 1].mul(&gamma.x));
            yp.push(yp[p - 1].mul(&gamma.y));
        }
        for (i, j, c) in lam.terms() {
            if c.is_zero() || i + j > order {
                continue;
            }
            acc = acc.add(&xp[i].mul(&yp[j]).scale(c));
        }
        assert!(acc.is_zero(), "branch does not annihilate the identifier");
    }

    #[test]
    fn exact_branches_of_diagonal_quadric() {
        // λ = v² − u² → branches (t, ±t)
        let lam = Jet2::from_terms(3, &[(0, 2, s(1)), (2, 0, s(-1))]);
        let pair = branches_of(lam.clone());
        check_branch_annihilates(&lam, &pair.gamma1);
        check_branch_annihilates(&lam, &pair.gamma2);
        // tangents along the oriented roots
        let t1 = pair.gamma1.derivative_at_origin(1);
        let t2 = pair.gamma2.derivative_at_origin(1);
        assert!(t1[0].mul(&t1[1]).sign() == Some(-1)); // (1,−1)-line
        assert!(t2[0].mul(&t2[1]).sign() == Some(1)); // (1,1)-line
    }

    #[test]
    fn axes_branches_of_product_quadric() {
        // λ = uv → branches (t, 0) and (0, t)
        let lam = Jet2::from_terms(3, &[(1, 1, s(1))]);
        let pair = branches_of(lam);
        assert!(pair.gamma1.y.is_zero());
        assert!(pair.gamma2.x.is_zero());
        assert_eq!(pair.gamma1.x, Jet1::variable(3));
        assert_eq!(pair.gamma2.y, Jet1::variable(3));
    }

    #[test]
    fn perturbed_branch_in_graph_form() {
        // λ = v² − u² − u³/2 → graph form v = ±(t + t²/4) + O(3)
        let lam = Jet2::from_terms(3, &[(0, 2, s(1)), (2, 0, s(-1)), (3, 0, sr(-1, 2))]);
        let pair = branches_of(lam.clone());
        check_branch_annihilates(&lam, &pair.gamma1);
        check_branch_annihilates(&lam, &pair.gamma2);
        for (gamma, sign) in [(&pair.gamma1, -1i64), (&pair.gamma2, 1i64)] {
            // reparametrize to a graph over u; the 2-jet is ±(u + u²/4)
            let u_inv = gamma.x.reverse().expect("regular in u");
            let v_of_u = gamma.y.compose(&u_inv);
            let expected = Jet1::from_coeffs(2, &[s(0), s(sign), sr(sign, 4)]);
            assert_eq!(v_of_u.truncated(2), expected);
        }
    }

    #[test]
    fn branch_images_of_model_sharksfin() {
        // f = (uv, u²/2 + v²/2 + u³/6): images have c″(0) = 2(±1, 1) and
        // ½·det(c″, c‴) = ±1.
        let f = MapJet2::new(
            Jet2::from_terms(4, &[(1, 1, s(1))]),
            Jet2::from_terms(
                4,
                &[(2, 0, sr(1, 2)), (0, 2, sr(1, 2)), (3, 0, sr(1, 6))],
            ),
        );
        let id = Identifier::jacobian(&f);
        let h = hessian_at_origin(&id).unwrap();
        let mut roots = hesse_quadric_roots(&h).unwrap();
        // normalize to unit leading component for comparison with the
        // hand-computed values
        for eta in [&mut roots.eta1, &mut roots.eta2] {
            let inv = eta[0].inv().unwrap();
            *eta = [eta[0].mul(&inv), eta[1].mul(&inv)];
        }
        let pair = branch_curves(&id, &roots).unwrap();
        let (c1, c2) = branch_image_cusps(&f, &pair).unwrap();
        // branch 1 runs along (1,−1), branch 2 along (1,1)
        assert_eq!(c1.c2, [s(-2), s(2)]);
        assert_eq!(c2.c2, [s(2), s(2)]);
        assert_eq!(c1.det.mul(&sr(1, 2)), s(-1));
        assert_eq!(c2.det.mul(&sr(1, 2)), s(1));
        assert!(c1.is_cusp && c2.is_cusp);
    }

    #[test]
    fn flat_cubic_gives_no_cusps() {
        // f = (uv, u²/2 + v²/2): neither branch image is a cusp.
        let f = MapJet2::new(
            Jet2::from_terms(4, &[(1, 1, s(1))]),
            Jet2::from_terms(4, &[(2, 0, sr(1, 2)), (0, 2, sr(1, 2))]),
        );
        let pair = singular_branches(&f).unwrap();
        let (c1, c2) = branch_image_cusps(&f, &pair).unwrap();
        assert!(!c1.is_cusp && !c2.is_cusp);
    }

    #[test]
    fn definite_identifier_has_no_branches() {
        let f = MapJet2::new(
            Jet2::from_terms(4, &[(1, 1, s(1))]),
            Jet2::from_terms(4, &[(2, 0, sr(-1, 2)), (0, 2, sr(1, 2))]),
        );
        assert_eq!(singular_branches(&f).unwrap_err(), BranchError::NotIndexOne);
    }
}
