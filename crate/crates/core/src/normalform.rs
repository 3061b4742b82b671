//! Constructive SO(2) normal form for rank-zero germs with nondegenerate
//! identifier, and the closed-form cusp invariants read off from it.
//!
//! The pipeline brings a germ to
//!
//! ```text
//! (uv, ε₁a₂₀u²/2 + ε₂a₂₀v²/2 + a₃₀u³/6 + a₀₃v³/6) + (O(4), O(4)),
//! a₂₀ > 0, (ε₁,ε₂) ∈ {(1,1), (1,−1), (−1,1)}
//! ```
//!
//! using only orientation-preserving source changes and target rotations:
//! a rotation making the first component an index-1 Morse function, a
//! degree-by-degree Morse normalization to `uv`, a scaling equalizing the
//! two pure quadratic coefficients, one more rotation plus shear killing the
//! mixed quadratic term, and a quadratic source change killing the mixed
//! cubics. Every applied transform is logged so callers can replay or invert
//! the reduction.
//!
//! The pipeline works in floating point: the scalings involve fourth roots
//! and the elimination rotation a non-quadratic radical, so exactness is
//! reserved for the verdict path. The cubic pair `(a₃₀, a₀₃)` of a germ is
//! canonical only up to a simultaneous sign flip (the source map `−id` is
//! orientation-preserving and flips both); the pipeline resolves this by
//! flipping, when needed, to `a₃₀ > 0` (or `a₀₃ ≥ 0` when `a₃₀ ≈ 0`).

use std::f64::consts::PI;
use std::fmt;

use crate::classify::{hessian_at_origin, Identifier};
use crate::jets::{Jet2, MapJet2};
use crate::num::{float_tolerance, Coeff, F64};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormalFormError {
    NotRankZero,
    DegenerateIdentifier,
    OrderTooSmall,
    /// The closed-form invariants exist only in the index-1 case.
    DeltoidCase,
    /// No real elimination branch; indicates a degenerate input.
    NoRealRotation,
}

impl fmt::Display for NormalFormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalFormError::NotRankZero => write!(f, "germ does not have rank zero"),
            NormalFormError::DegenerateIdentifier => {
                write!(f, "identifier Hessian is degenerate")
            }
            NormalFormError::OrderTooSmall => write!(f, "normal form needs at least a 3-jet"),
            NormalFormError::DeltoidCase => {
                write!(f, "cusp invariants are defined only in the index-1 case")
            }
            NormalFormError::NoRealRotation => {
                write!(f, "no real rotation solves the elimination step")
            }
        }
    }
}

impl std::error::Error for NormalFormError {}

/// One applied reduction step.
#[derive(Clone, Debug)]
pub enum TransformStep {
    TargetRotation(f64),
    SourceChange(MapJet2<F64>),
}

impl fmt::Display for TransformStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformStep::TargetRotation(a) => write!(f, "rotate target by {}", a),
            TransformStep::SourceChange(m) => write!(f, "source change {}", m),
        }
    }
}

/// Accumulated reduction `g = R(angle) ∘ f ∘ source`.
#[derive(Clone, Debug)]
pub struct TransformLog {
    pub steps: Vec<TransformStep>,
    pub target_angle: f64,
    pub source: MapJet2<F64>,
}

impl TransformLog {
    pub fn identity(order: usize) -> Self {
        TransformLog {
            steps: Vec::new(),
            target_angle: 0.0,
            source: MapJet2::identity(order),
        }
    }

    fn push_rotation(&mut self, angle: f64) {
        if angle != 0.0 {
            self.steps.push(TransformStep::TargetRotation(angle));
            self.target_angle += angle;
        }
    }

    fn push_source(&mut self, psi: &MapJet2<F64>) {
        self.steps.push(TransformStep::SourceChange(psi.clone()));
        self.source = self.source.compose(psi);
    }

    /// Linear part of the total source change.
    pub fn source_linear(&self) -> [[f64; 2]; 2] {
        let l = self.source.linear_part();
        [[l[0][0].0, l[0][1].0], [l[1][0].0, l[1][1].0]]
    }

    /// Replays the whole log on a germ: `R(angle) ∘ f ∘ source`.
    pub fn apply(&self, f: &MapJet2<F64>) -> MapJet2<F64> {
        rotate_target(&f.compose(&self.source), self.target_angle)
    }

    /// Undoes the log: `R(−angle) ∘ g ∘ source⁻¹`.
    pub fn unapply(&self, g: &MapJet2<F64>) -> MapJet2<F64> {
        let inv = self.source.invert().expect("logged source changes are invertible");
        rotate_target(&g.compose(&inv), -self.target_angle)
    }
}

/// Target rotation by `angle` applied to both components.
pub fn rotate_target(f: &MapJet2<F64>, angle: f64) -> MapJet2<F64> {
    if angle == 0.0 {
        return f.clone();
    }
    let c = F64(angle.cos());
    let s = F64(angle.sin());
    MapJet2::new(
        f.x().scale(&c).sub(&f.y().scale(&s)),
        f.x().scale(&s).add(&f.y().scale(&c)),
    )
}

/// The SO(2) normal form of a rank-zero germ, with the transform log that
/// produced it.
#[derive(Clone, Debug)]
pub struct So2NormalForm {
    pub a20: f64,
    pub eps1: i8,
    pub eps2: i8,
    pub a30: f64,
    pub a03: f64,
    /// Order-4-and-up remainder of the normalized jet.
    pub residual: MapJet2<F64>,
    /// The full normalized jet `log.apply(input)`.
    pub jet: MapJet2<F64>,
    pub log: TransformLog,
}

impl So2NormalForm {
    /// Rebuilds the normalized jet from the five coefficients plus the
    /// stored remainder.
    pub fn reconstruct_jet(&self) -> MapJet2<F64> {
        let order = self.jet.order();
        let x = Jet2::from_terms(order, &[(1, 1, F64(1.0))]).add(self.residual.x());
        let y = Jet2::from_terms(
            order,
            &[
                (2, 0, F64(self.eps1 as f64 * self.a20 / 2.0)),
                (0, 2, F64(self.eps2 as f64 * self.a20 / 2.0)),
                (3, 0, F64(self.a30 / 6.0)),
                (0, 3, F64(self.a03 / 6.0)),
            ],
        )
        .add(self.residual.y());
        MapJet2::new(x, y)
    }
}

/// Cuspidal curvatures of the two singular-branch images and the angle
/// between their cuspidal directions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspInvariants {
    pub kappa_plus: f64,
    pub kappa_minus: f64,
    pub theta: f64,
}

fn quad_matrix(jet: &Jet2<F64>) -> [[f64; 2]; 2] {
    let a = jet.get(2, 0).0;
    let b = jet.get(1, 1).0 / 2.0;
    let c = jet.get(0, 2).0;
    [[a, b], [b, c]]
}

fn det2x2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn quadratic_scale(f: &MapJet2<F64>) -> f64 {
    let mut s: f64 = 0.0;
    for comp in 0..2 {
        for &(i, j) in &[(2usize, 0usize), (1, 1), (0, 2)] {
            s = s.max(f.component(comp).get(i, j).0.abs());
        }
    }
    s.max(1e-300)
}

/// Finds a target rotation making the first component an index-1 Morse
/// function, then normalizes it to exactly `uv` by completing the product
/// degree by degree.
pub fn reduce_to_uv_form(
    f: &MapJet2<F64>,
) -> Result<(MapJet2<F64>, TransformLog), NormalFormError> {
    let order = f.order();
    if order < 3 {
        return Err(NormalFormError::OrderTooSmall);
    }
    let lin = f.linear_part();
    if !lin.iter().flatten().all(|c| c.is_zero()) {
        return Err(NormalFormError::NotRankZero);
    }
    let id = Identifier::jacobian(f);
    let hess = hessian_at_origin(&id).map_err(|_| NormalFormError::NotRankZero)?;
    if hess.det.is_zero() {
        return Err(NormalFormError::DegenerateIdentifier);
    }

    let mut log = TransformLog::identity(order);
    let mut g = f.clone();

    // Rotation: det of the rotated first quadratic form is
    // α cos²θ + β sin²θ − m sinθ cosθ; pick its minimizer unless the form
    // is already of index 1.
    let qa = quad_matrix(g.x());
    let qb = quad_matrix(g.y());
    let alpha = det2x2(&qa);
    let beta = det2x2(&qb);
    let m = qa[0][0] * qb[1][1] + qb[0][0] * qa[1][1] - 2.0 * qa[0][1] * qb[0][1];
    let scale = quadratic_scale(&g);
    let tol = float_tolerance() * scale * scale;
    if alpha >= -tol {
        let rho = ((alpha - beta) * (alpha - beta) + m * m).sqrt();
        let minimum = (alpha + beta - rho) / 2.0;
        if minimum >= -tol {
            return Err(NormalFormError::DegenerateIdentifier);
        }
        let theta = 0.5 * m.atan2(-(alpha - beta));
        g = rotate_target(&g, theta);
        log.push_rotation(theta);
    }

    // Linear factorization of the index-1 quadratic into x·y.
    let q20 = g.x().get(2, 0).0;
    let q11 = g.x().get(1, 1).0;
    let q02 = g.x().get(0, 2).0;
    let qscale = q20.abs().max(q11.abs()).max(q02.abs());
    let small = float_tolerance() * qscale;
    let l = if q20.abs() > small && q20.abs() >= q02.abs() {
        let disc = (q11 * q11 - 4.0 * q20 * q02).sqrt();
        let r1 = (-q11 + disc) / (2.0 * q20);
        let r2 = (-q11 - disc) / (2.0 * q20);
        [[q20, -q20 * r1], [1.0, -r2]]
    } else if q02.abs() > small {
        let disc = (q11 * q11 - 4.0 * q20 * q02).sqrt();
        let r1 = (-q11 + disc) / (2.0 * q02);
        let r2 = (-q11 - disc) / (2.0 * q02);
        [[-q02 * r1, q02], [-r2, 1.0]]
    } else {
        [[q11, 0.0], [0.0, 1.0]]
    };
    let mut rows = l;
    if det2x2(&rows) < 0.0 {
        rows.swap(0, 1); // x·y is symmetric; swapping restores orientation
    }
    let det = det2x2(&rows);
    let inv = [
        [F64(rows[1][1] / det), F64(-rows[0][1] / det)],
        [F64(-rows[1][0] / det), F64(rows[0][0] / det)],
    ];
    let phi = MapJet2::linear(&inv, order);
    g = g.compose(&phi);
    log.push_source(&phi);

    morse_complete(&mut g, &mut log);
    Ok((g, log))
}

/// Kills all degree-k terms (k ≥ 3) of the first component, assuming its
/// quadratic part is `uv`.
fn morse_complete(g: &mut MapJet2<F64>, log: &mut TransformLog) {
    let order = g.order();
    for k in 3..=order {
        let mut p: Jet2<F64> = Jet2::zero(order); // correction entering through y
        let mut q: Jet2<F64> = Jet2::zero(order); // correction entering through x
        let mut any = false;
        for j in 0..=k {
            let i = k - j;
            let c = g.x().get(i, j).0;
            if c == 0.0 {
                continue;
            }
            any = true;
            if i >= 1 {
                let cur = q.get(i - 1, j).0;
                q.set(i - 1, j, F64(cur - c));
            } else {
                let cur = p.get(0, k - 1).0;
                p.set(0, k - 1, F64(cur - c));
            }
        }
        if !any {
            continue;
        }
        let phi = MapJet2::new(
            Jet2::variable(crate::jets::Var::U, order).add(&p),
            Jet2::variable(crate::jets::Var::V, order).add(&q),
        );
        *g = g.compose(&phi);
        log.push_source(&phi);
    }
}

/// Equalizes the magnitudes of the two pure quadratic coefficients of the
/// second component by the `uv`-preserving scaling `(u, v) ↦ (su, v/s)`.
fn equalize_quadratic(
    g: &mut MapJet2<F64>,
    log: &mut TransformLog,
) -> Result<(), NormalFormError> {
    let order = g.order();
    let a = 2.0 * g.y().get(2, 0).0;
    let b = 2.0 * g.y().get(0, 2).0;
    let scale = quadratic_scale(g);
    if a.abs() <= float_tolerance() * scale || b.abs() <= float_tolerance() * scale {
        return Err(NormalFormError::DegenerateIdentifier);
    }
    let s = (b / a).abs().powf(0.25);
    if (s - 1.0).abs() > 1e-15 {
        let phi = MapJet2::linear(&[[F64(s), F64(0.0)], [F64(0.0), F64(1.0 / s)]], order);
        *g = g.compose(&phi);
        log.push_source(&phi);
    }
    Ok(())
}

/// Removes the `uv` term of the second component by a rotation combined with
/// the shear `u = u₁ + v₁, v = cu₁ + dv₁`, then restores the first component
/// to exactly `uv`.
pub fn eliminate_mixed_quadratic(
    g: &MapJet2<F64>,
    log: &mut TransformLog,
) -> Result<MapJet2<F64>, NormalFormError> {
    let order = g.order();
    let mut g = g.clone();
    equalize_quadratic(&mut g, log)?;

    let a20 = 2.0 * g.y().get(2, 0).0; // ε₁ a₂₀
    let b20 = 2.0 * g.y().get(0, 2).0; // ε₂ a₂₀
    let a11 = g.y().get(1, 1).0;
    let scale = a20.abs().max(b20.abs()).max(1.0);
    if a11.abs() > 1e-12 * scale {
        let k = a20 * b20; // ε₁ε₂ a₂₀²
        let p = 1.0 - a11 * a11 + k;
        let root = (p * p + 4.0 * a11 * a11).sqrt();
        let candidates = [(-p - root) / (2.0 * a11), (-p + root) / (2.0 * a11)];
        let mut picked = None;
        for t in candidates {
            let disc = (a11 - t) * (a11 - t) - k;
            if disc > 1e-12 * scale.max(t * t) {
                picked = Some((t, disc.sqrt()));
                break;
            }
        }
        let (t, root2) = picked.ok_or(NormalFormError::NoRealRotation)?;
        let sin_t = 1.0 / (1.0 + t * t).sqrt();
        let cos_t = t * sin_t;
        let mut c = (-(a11 - t) - root2) / b20;
        let mut d = (-(a11 - t) + root2) / b20;
        if d < c {
            std::mem::swap(&mut c, &mut d);
        }
        // Only the column directions (1, c), (1, d) matter; normalizing them
        // keeps the shear well conditioned when the rotation is small and
        // the raw roots are huge.
        let n1 = 1.0_f64.hypot(c);
        let n2 = 1.0_f64.hypot(d);
        let shear = MapJet2::linear(
            &[
                [F64(1.0 / n1), F64(1.0 / n2)],
                [F64(c / n1), F64(d / n2)],
            ],
            order,
        );
        g = g.compose(&shear);
        log.push_source(&shear);
        let theta = sin_t.atan2(cos_t); // sin θ > 0 branch
        g = rotate_target(&g, theta);
        log.push_rotation(theta);
    }

    // Restore the first component: scale uv-coefficient to ±1, fix the sign
    // with the orientation-preserving quarter turn if needed.
    let b11 = g.x().get(1, 1).0;
    if b11 == 0.0 {
        return Err(NormalFormError::DegenerateIdentifier);
    }
    let s = 1.0 / b11.abs().sqrt();
    if (s - 1.0).abs() > 1e-15 {
        let phi = MapJet2::linear(&[[F64(s), F64(0.0)], [F64(0.0), F64(s)]], order);
        g = g.compose(&phi);
        log.push_source(&phi);
    }
    if b11 < 0.0 {
        let quarter = MapJet2::linear(&[[F64(0.0), F64(1.0)], [F64(-1.0), F64(0.0)]], order);
        g = g.compose(&quarter);
        log.push_source(&quarter);
    }
    morse_complete(&mut g, log);
    Ok(g)
}

/// Kills the `u²v` and `uv²` cubic terms, equalizes the quadratic part and
/// applies the final sign normalizations.
pub fn kill_mixed_cubics(
    g: &MapJet2<F64>,
    log: &mut TransformLog,
) -> Result<So2NormalForm, NormalFormError> {
    let order = g.order();
    let mut g = g.clone();
    let a = 2.0 * g.y().get(2, 0).0;
    let b = 2.0 * g.y().get(0, 2).0;
    let scale = quadratic_scale(&g);
    if a.abs() <= float_tolerance() * scale || b.abs() <= float_tolerance() * scale {
        return Err(NormalFormError::DegenerateIdentifier);
    }
    let a21 = 2.0 * g.y().get(2, 1).0;
    let a12 = 2.0 * g.y().get(1, 2).0;
    if a21 != 0.0 || a12 != 0.0 {
        // u = u₁ + a₁₂u₁²/(2b) − a₂₁u₁v₁/(2a), v = v₁ − a₁₂u₁v₁/(2b) + a₂₁v₁²/(2a):
        // preserves uv mod degree 4 and removes both mixed cubics.
        let cu = a12 / (2.0 * b);
        let cv = a21 / (2.0 * a);
        let phi = MapJet2::new(
            Jet2::from_terms(
                order,
                &[(1, 0, F64(1.0)), (2, 0, F64(cu)), (1, 1, F64(-cv))],
            ),
            Jet2::from_terms(
                order,
                &[(0, 1, F64(1.0)), (1, 1, F64(-cu)), (0, 2, F64(cv))],
            ),
        );
        g = g.compose(&phi);
        log.push_source(&phi);
    }
    equalize_quadratic(&mut g, log)?;

    if g.y().get(2, 0).0 < 0.0 && g.y().get(0, 2).0 < 0.0 {
        // (u,v) ↦ (v,−u) plus a π-rotation moves (−1,−1) to (1,1).
        let quarter = MapJet2::linear(&[[F64(0.0), F64(1.0)], [F64(-1.0), F64(0.0)]], order);
        g = g.compose(&quarter);
        log.push_source(&quarter);
        g = rotate_target(&g, PI);
        log.push_rotation(PI);
    }

    // Residual ±-symmetry: −id flips both cubic coefficients; normalize the
    // representative so the pair is canonical per equivalence class.
    let ctol = float_tolerance();
    let a30 = 6.0 * g.y().get(3, 0).0;
    let a03 = 6.0 * g.y().get(0, 3).0;
    if a30 < -ctol || (a30.abs() <= ctol && a03 < -ctol) {
        let minus = MapJet2::linear(&[[F64(-1.0), F64(0.0)], [F64(0.0), F64(-1.0)]], order);
        g = g.compose(&minus);
        log.push_source(&minus);
    }

    let c20 = g.y().get(2, 0).0;
    let c02 = g.y().get(0, 2).0;
    let a20 = 2.0 * c20.abs();
    let eps1 = if c20 >= 0.0 { 1 } else { -1 };
    let eps2 = if c02 >= 0.0 { 1 } else { -1 };
    let a30 = 6.0 * g.y().get(3, 0).0;
    let a03 = 6.0 * g.y().get(0, 3).0;

    let residual = MapJet2::new(high_order_part(g.x(), 4), high_order_part(g.y(), 4));
    Ok(So2NormalForm {
        a20,
        eps1,
        eps2,
        a30,
        a03,
        residual,
        jet: g,
        log: log.clone(),
    })
}

fn high_order_part(jet: &Jet2<F64>, from_degree: usize) -> Jet2<F64> {
    let mut out = Jet2::zero(jet.order());
    for (i, j, c) in jet.terms() {
        if i + j >= from_degree {
            out.set(i, j, *c);
        }
    }
    out
}

/// Full pipeline: rank-zero germ with nondegenerate identifier to the SO(2)
/// normal form.
pub fn so2_normal_form(f: &MapJet2<F64>) -> Result<So2NormalForm, NormalFormError> {
    let (g, mut log) = reduce_to_uv_form(f)?;
    let g = eliminate_mixed_quadratic(&g, &mut log)?;
    kill_mixed_cubics(&g, &mut log)
}

/// Closed-form invariants of the sharksfin normal form: cuspidal curvatures
/// `κ± = 2(±a₃₀ + a₀₃)/(4 + 4a₂₀²)^{5/4}` and the angle
/// `θ = arccos(|a₂₀² − 1|/(a₂₀² + 1))` between the cuspidal directions.
pub fn so2_invariants(nf: &So2NormalForm) -> Result<CuspInvariants, NormalFormError> {
    if nf.eps1 != 1 || nf.eps2 != 1 {
        return Err(NormalFormError::DeltoidCase);
    }
    let w = (4.0 + 4.0 * nf.a20 * nf.a20).powf(1.25);
    let kappa_plus = 2.0 * (nf.a30 + nf.a03) / w;
    let kappa_minus = 2.0 * (-nf.a30 + nf.a03) / w;
    let a2 = nf.a20 * nf.a20;
    let theta = ((a2 - 1.0).abs() / (a2 + 1.0)).acos();
    Ok(CuspInvariants {
        kappa_plus,
        kappa_minus,
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fjet(order: usize, terms: &[(usize, usize, f64)]) -> Jet2<F64> {
        let mapped: Vec<(usize, usize, F64)> =
            terms.iter().map(|&(i, j, c)| (i, j, F64(c))).collect();
        Jet2::from_terms(order, &mapped)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn assert_first_is_uv(g: &MapJet2<F64>) {
        for (i, j, c) in g.x().terms() {
            let expect = if (i, j) == (1, 1) { 1.0 } else { 0.0 };
            assert!(
                close(c.0, expect, 1e-9),
                "first component not uv at ({}, {}): {}",
                i,
                j,
                c.0
            );
        }
    }

    #[test]
    fn already_uv_is_untouched() {
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(4, &[(2, 0, 0.5), (0, 2, 0.5), (3, 0, 1.0)]),
        );
        let (g, log) = reduce_to_uv_form(&f).unwrap();
        assert_first_is_uv(&g);
        assert!(log.steps.iter().all(|s| match s {
            TransformStep::TargetRotation(a) => *a == 0.0,
            TransformStep::SourceChange(m) => *m == MapJet2::identity(4),
        }));
    }

    #[test]
    fn hyperbolic_pair_reduces_by_linear_change() {
        // (u² − v², 2uv): a π/4-type linear change makes the first
        // component exactly uv.
        let f = MapJet2::new(
            fjet(4, &[(2, 0, 1.0), (0, 2, -1.0)]),
            fjet(4, &[(1, 1, 2.0)]),
        );
        let (g, log) = reduce_to_uv_form(&f).unwrap();
        assert_first_is_uv(&g);
        assert!(close(log.apply(&f).x().get(1, 1).0, 1.0, 1e-12));
    }

    #[test]
    fn squares_pair_needs_rotation() {
        // (u², v²): identifier 4uv is nondegenerate; a rotation is needed
        // before the first component becomes index 1.
        let f = MapJet2::new(fjet(4, &[(2, 0, 1.0)]), fjet(4, &[(0, 2, 1.0)]));
        let (g, log) = reduce_to_uv_form(&f).unwrap();
        assert_first_is_uv(&g);
        assert!(log.target_angle != 0.0);
        // replay reproduces the reduced jet
        let replay = log.apply(&f);
        for (i, j, c) in replay.x().terms() {
            assert!(close(c.0, g.x().get(i, j).0, 1e-12), "({},{})", i, j);
        }
    }

    #[test]
    fn rank_one_is_rejected() {
        let f = MapJet2::new(fjet(3, &[(1, 0, 1.0)]), fjet(3, &[(0, 2, 1.0)]));
        assert_eq!(reduce_to_uv_form(&f).unwrap_err(), NormalFormError::NotRankZero);
    }

    #[test]
    fn degenerate_identifier_is_rejected() {
        let f = MapJet2::new(fjet(4, &[(1, 1, 1.0)]), fjet(4, &[(2, 0, 0.5)]));
        assert!(matches!(
            so2_normal_form(&f),
            Err(NormalFormError::DegenerateIdentifier)
        ));
    }

    #[test]
    fn elimination_identity_when_no_mixed_term() {
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(4, &[(2, 0, 0.5), (0, 2, 0.5)]),
        );
        let mut log = TransformLog::identity(4);
        let g = eliminate_mixed_quadratic(&f, &mut log).unwrap();
        assert!(close(g.y().get(1, 1).0, 0.0, 1e-12));
        assert!(close(g.y().get(2, 0).0, 0.5, 1e-12));
    }

    #[test]
    fn elimination_golden_ratio_case() {
        // a₂₀ = 1, a₁₁ = 1: the elimination rotation satisfies
        // cot θ = (−1 − √5)/2 and the mixed term vanishes to machine
        // precision. (The other root of the same quadratic, (−1 + √5)/2,
        // leads to a complex shear.)
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(4, &[(2, 0, 0.5), (1, 1, 1.0), (0, 2, 0.5)]),
        );
        let mut log = TransformLog::identity(4);
        let g = eliminate_mixed_quadratic(&f, &mut log).unwrap();
        assert!(g.y().get(1, 1).0.abs() < 1e-12);
        assert_first_is_uv(&g);
        let angle = log.target_angle;
        let expected_cot = (-1.0 - 5.0_f64.sqrt()) / 2.0;
        assert!(close(angle.cos() / angle.sin(), expected_cot, 1e-9));
    }

    #[test]
    fn elimination_random_grid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a20: f64 = rng.gen_range(0.3..2.5);
            let a11: f64 = rng.gen_range(-2.0..2.0);
            let e1 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let e2 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let f = MapJet2::new(
                fjet(4, &[(1, 1, 1.0)]),
                fjet(
                    4,
                    &[(2, 0, e1 * a20 / 2.0), (1, 1, a11), (0, 2, e2 * a20 / 2.0)],
                ),
            );
            let mut log = TransformLog::identity(4);
            let g = eliminate_mixed_quadratic(&f, &mut log).unwrap();
            assert!(
                g.y().get(1, 1).0.abs() < 1e-9,
                "mixed term {} for a20={} a11={} eps=({},{})",
                g.y().get(1, 1).0,
                a20,
                a11,
                e1,
                e2
            );
            assert_first_is_uv(&g);
        }
    }

    #[test]
    fn normal_form_of_model_germ() {
        // (uv, u²/2 + v²/2 + u³/6 + v³/6) is already in normal form.
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(
                4,
                &[(2, 0, 0.5), (0, 2, 0.5), (3, 0, 1.0 / 6.0), (0, 3, 1.0 / 6.0)],
            ),
        );
        let nf = so2_normal_form(&f).unwrap();
        assert!(close(nf.a20, 1.0, 1e-12));
        assert_eq!((nf.eps1, nf.eps2), (1, 1));
        assert!(close(nf.a30, 1.0, 1e-9));
        assert!(close(nf.a03, 1.0, 1e-9));
    }

    #[test]
    fn mixed_cubic_shifts_pure_coefficient() {
        // (uv, u²/2 + v²/2 + u²v/2): removing the u²v term shifts a₀₃ to 3.
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(4, &[(2, 0, 0.5), (0, 2, 0.5), (2, 1, 0.5)]),
        );
        let nf = so2_normal_form(&f).unwrap();
        assert!(close(nf.a20, 1.0, 1e-12));
        assert!(close(nf.a30, 0.0, 1e-9));
        assert!(close(nf.a03, 3.0, 1e-9));
    }

    #[test]
    fn round_trip_recovers_three_jet() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut terms2 = vec![
                (2, 0, rng.gen_range(0.3..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }),
                (1, 1, rng.gen_range(-1.0..1.0)),
                (0, 2, rng.gen_range(0.3..1.5)),
            ];
            for &(i, j) in &[(3, 0), (2, 1), (1, 2), (0, 3)] {
                terms2.push((i, j, rng.gen_range(-1.0..1.0)));
            }
            let terms2: Vec<(usize, usize, f64)> = terms2;
            let f = MapJet2::new(fjet(4, &[(1, 1, 1.0)]), fjet(4, &terms2));
            let nf = match so2_normal_form(&f) {
                Ok(nf) => nf,
                Err(NormalFormError::DegenerateIdentifier) => continue,
                Err(e) => panic!("{}", e),
            };
            // Replaying the log on the input reproduces the normalized jet;
            // unapplying the log on the reconstruction recovers the input
            // 3-jet.
            let replay = nf.log.apply(&f);
            for comp in 0..2 {
                for (i, j, c) in replay.component(comp).terms() {
                    if i + j <= 3 {
                        assert!(
                            close(c.0, nf.jet.component(comp).get(i, j).0, 1e-8),
                            "replay mismatch at comp {} ({},{})",
                            comp,
                            i,
                            j
                        );
                    }
                }
            }
            let back = nf.log.unapply(&nf.reconstruct_jet());
            for comp in 0..2 {
                for (i, j, c) in back.component(comp).terms() {
                    if i + j <= 3 {
                        assert!(
                            close(c.0, f.component(comp).get(i, j).0, 1e-7),
                            "round trip mismatch at comp {} ({},{}): {} vs {}",
                            comp,
                            i,
                            j,
                            c.0,
                            f.component(comp).get(i, j).0
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn invariants_of_symmetric_sharksfin() {
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(4, &[(2, 0, 0.5), (0, 2, 0.5), (3, 0, 1.0 / 6.0)]),
        );
        let nf = so2_normal_form(&f).unwrap();
        let inv = so2_invariants(&nf).unwrap();
        let expected = 2.0 / 8.0_f64.powf(1.25);
        assert!(close(inv.kappa_plus.abs(), expected, 1e-9));
        assert!(close(inv.kappa_minus.abs(), expected, 1e-9));
        assert!((inv.kappa_plus + inv.kappa_minus).abs() < 1e-9);
        assert!(close(inv.theta, std::f64::consts::FRAC_PI_2, 1e-12));
        assert!(close(expected, 0.1486509, 1e-7));
    }

    #[test]
    fn deltoid_has_no_branch_invariants() {
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(4, &[(2, 0, -0.5), (0, 2, 0.5), (3, 0, 1.0)]),
        );
        let nf = so2_normal_form(&f).unwrap();
        assert_eq!((nf.eps1 as i32) * (nf.eps2 as i32), -1);
        assert_eq!(so2_invariants(&nf).unwrap_err(), NormalFormError::DeltoidCase);
    }

    #[test]
    fn consistency_pair_kappa_minus_zero() {
        // a₂₀ = 1, a₃₀ = a₀₃ = 1 gives κ₋ = 0.
        let f = MapJet2::new(
            fjet(4, &[(1, 1, 1.0)]),
            fjet(
                4,
                &[(2, 0, 0.5), (0, 2, 0.5), (3, 0, 1.0 / 6.0), (0, 3, 1.0 / 6.0)],
            ),
        );
        let nf = so2_normal_form(&f).unwrap();
        let inv = so2_invariants(&nf).unwrap();
        assert!(inv.kappa_minus.abs() < 1e-12);
        assert!(inv.kappa_plus > 0.0);
    }
}
