//! Independent brute-force checks and randomized equivalence generators.
//!
//! Everything here exists to validate the classifier from a different route:
//! the closed-form decision quantity for germs in the reduced shape
//! `(uv, εu²/2 + v²/2 + cubic)`, seeded random coordinate changes for
//! invariance sweeps, and the explicit quadratic change that shifts the
//! cubic coefficients. None of it shares code with the classifier beyond
//! the jet kernel.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::jets::{Jet2, MapJet2, Var};
use crate::num::{Coeff, Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// The germ is not in the reduced shape the closed forms assume.
    NotReducedForm,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "germ is not in reduced form (uv, ±u²/2 + v²/2 + cubic)")
    }
}

impl std::error::Error for OracleError {}

/// The cubic data of a reduced-form germ.
#[derive(Clone, PartialEq, Debug)]
pub struct ReducedForm {
    pub eps: i8,
    pub a30: Rational,
    pub a21: Rational,
    pub a12: Rational,
    pub a03: Rational,
}

/// Checks the reduced shape `(uv, εu²/2 + v²/2 + Σ a_ij uⁱvʲ/(i!j!) + O(4))`
/// and extracts `ε` and the cubic coefficients.
pub fn reduced_form_of(f: &MapJet2<Scalar>) -> Result<ReducedForm, OracleError> {
    if f.order() < 3 {
        return Err(OracleError::NotReducedForm);
    }
    let one = Scalar::one();
    let half = Scalar::from_ratio(1, 2);
    for (i, j, c) in f.x().terms() {
        if i + j > 3 {
            continue;
        }
        let expected = if (i, j) == (1, 1) { &one } else { &Scalar::zero() };
        if c != expected {
            return Err(OracleError::NotReducedForm);
        }
    }
    let eps_coef = f.y().get(2, 0);
    let eps = if *eps_coef == half {
        1
    } else if *eps_coef == half.neg() {
        -1
    } else {
        return Err(OracleError::NotReducedForm);
    };
    if f.y().get(0, 2) != &half || !f.y().get(1, 1).is_zero() {
        return Err(OracleError::NotReducedForm);
    }
    for (i, j) in [(1usize, 0usize), (0, 1)] {
        if !f.y().get(i, j).is_zero() {
            return Err(OracleError::NotReducedForm);
        }
    }
    let rational_of = |c: &Scalar, k: i64| -> Result<Rational, OracleError> {
        let q = c.as_rational().ok_or(OracleError::NotReducedForm)?;
        Ok(q * Rational::from_integer(k.into()))
    };
    Ok(ReducedForm {
        eps,
        a30: rational_of(f.y().get(3, 0), 6)?,
        a21: rational_of(f.y().get(2, 1), 2)?,
        a12: rational_of(f.y().get(1, 2), 2)?,
        a03: rational_of(f.y().get(0, 3), 6)?,
    })
}

/// Closed-form decision quantity for a reduced-form germ, computed from raw
/// coefficients with no quadric machinery.
///
/// For `ε = 1` this is `(a₃₀+3a₂₁+3a₁₂+a₀₃)(−a₃₀+3a₂₁−3a₁₂+a₀₃)`; for
/// `ε = −1` it is `(a₃₀−3a₁₂)² + (3a₂₁−a₀₃)²`. In both cases the quantity is
/// nonzero exactly when the germ is recognized, and it equals a quarter of
/// the classifier's determinant product.
pub fn brute_force_condition(f: &MapJet2<Scalar>) -> Result<Rational, OracleError> {
    let rf = reduced_form_of(f)?;
    let three = Rational::from_integer(3.into());
    Ok(if rf.eps == 1 {
        let q1 = &rf.a30 + &three * &rf.a21 + &three * &rf.a12 + &rf.a03;
        let q2 = -&rf.a30 + &three * &rf.a21 - &three * &rf.a12 + &rf.a03;
        q1 * q2
    } else {
        let x = &rf.a03 - &three * &rf.a21;
        let y = &rf.a30 - &three * &rf.a12;
        &x * &x + &y * &y
    })
}

/// Restriction classes for random coordinate changes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiffeoClass {
    /// Exact rational rotations only.
    RotationOnly,
    /// Invertible jets with positive linear determinant.
    OrientationPreserving,
    /// Any invertible jet.
    General,
}

/// A diffeomorphism jet: invertible linear part plus random higher terms.
#[derive(Clone, Debug)]
pub struct DiffeoJet {
    pub map: MapJet2<Scalar>,
    pub orientation: i8,
}

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

/// A rational point on the circle via the tangent half-angle substitution,
/// so rotations stay exact.
fn rational_rotation(rng: &mut ChaCha8Rng, order: usize) -> MapJet2<Scalar> {
    let t = Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
    let one = Rational::from_integer(1.into());
    let denom = &one + &t * &t;
    let c = Scalar::rational((&one - &t * &t) / &denom);
    let s = Scalar::rational((&t + &t) / &denom);
    MapJet2::linear(&[[c.clone(), s.neg()], [s, c]], order)
}

/// Seed-deterministic random diffeomorphism jet.
pub fn random_diffeo(seed: u64, class: DiffeoClass, order: usize) -> DiffeoJet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if class == DiffeoClass::RotationOnly {
        return DiffeoJet {
            map: rational_rotation(&mut rng, order),
            orientation: 1,
        };
    }
    // Invertible linear part with the requested orientation.
    let lin = loop {
        let m = [
            [small_rational(&mut rng), small_rational(&mut rng)],
            [small_rational(&mut rng), small_rational(&mut rng)],
        ];
        let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
        match det.sign() {
            Some(0) | None => continue,
            Some(s) => {
                if class == DiffeoClass::OrientationPreserving && s < 0 {
                    continue;
                }
                break m;
            }
        }
    };
    let det = lin[0][0].mul(&lin[1][1]).sub(&lin[0][1].mul(&lin[1][0]));
    let orientation = det.sign().unwrap();
    let mut map = MapJet2::linear(&lin, order);
    // sparse higher-order terms
    let mut comps = [map.x().clone(), map.y().clone()];
    for comp in comps.iter_mut() {
        for t in 2..=order {
            for j in 0..=t {
                let i = t - j;
                if rng.gen_bool(0.3) {
                    comp.set(i, j, small_rational(&mut rng));
                }
            }
        }
    }
    let [x, y] = comps;
    map = MapJet2::new(x, y);
    DiffeoJet { map, orientation }
}

/// `Φ ∘ f ∘ φ` for a seeded random pair of diffeomorphism jets.
pub fn random_a_equivalence(
    f: &MapJet2<Scalar>,
    seed: u64,
    class: DiffeoClass,
) -> MapJet2<Scalar> {
    let order = f.order();
    let phi = random_diffeo(seed.wrapping_mul(2).wrapping_add(1), class, order);
    let target = random_diffeo(seed.wrapping_mul(2).wrapping_add(2), class, order);
    target.map.compose(&f.compose(&phi.map))
}

/// A vector-field jet extending a constant direction at the origin with
/// random higher-order coefficients.
pub fn random_vector_field_extension(
    eta: &[Scalar; 2],
    seed: u64,
    order: usize,
) -> [Jet2<Scalar>; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = [
        Jet2::constant(eta[0].clone(), order),
        Jet2::constant(eta[1].clone(), order),
    ];
    for comp in out.iter_mut() {
        for t in 1..=order {
            for j in 0..=t {
                let i = t - j;
                if rng.gen_bool(0.5) {
                    comp.set(i, j, small_rational(&mut rng));
                }
            }
        }
    }
    out
}

/// Outcome of replaying the explicit quadratic change on a reduced form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TildeShift {
    /// New `ã₃₀` equals `a₃₀ + 3εa₁₂`.
    pub a30_shift_matches: bool,
    /// New `ã₀₃` equals `a₀₃ + 3εa₂₁`.
    pub a03_shift_matches: bool,
    /// Mixed cubic terms vanish after the change.
    pub mixed_cubics_vanish: bool,
    /// First component stays `uv` through degree 3.
    pub first_component_preserved: bool,
}

impl TildeShift {
    pub fn all(&self) -> bool {
        self.a30_shift_matches
            && self.a03_shift_matches
            && self.mixed_cubics_vanish
            && self.first_component_preserved
    }
}

/// Applies `u = u₁ + a₁₂u₁²/2 − εa₂₁u₁v₁/2, v = v₁ − a₁₂u₁v₁/2 + εa₂₁v₁²/2`
/// to a reduced-form germ and verifies the induced coefficient shifts.
pub fn tilde_shift_check(f: &MapJet2<Scalar>) -> Result<TildeShift, OracleError> {
    let rf = reduced_form_of(f)?;
    let order = f.order();
    let eps = Scalar::from_int(rf.eps as i64);
    let half = Scalar::from_ratio(1, 2);
    let a12h = Scalar::from_rational(&rf.a12).mul(&half);
    let a21h = Scalar::from_rational(&rf.a21).mul(&half).mul(&eps);
    let change = MapJet2::new(
        Jet2::from_terms(
            order,
            &[
                (1, 0, Scalar::one()),
                (2, 0, a12h.clone()),
                (1, 1, a21h.neg()),
            ],
        ),
        Jet2::from_terms(
            order,
            &[
                (0, 1, Scalar::one()),
                (1, 1, a12h.neg()),
                (0, 2, a21h.clone()),
            ],
        ),
    );
    let g = f.compose(&change);
    let three = Rational::from_integer(3.into());
    let eps_q = Rational::from_integer((rf.eps as i64).into());
    let expected_a30 = &rf.a30 + &three * &eps_q * &rf.a12;
    let expected_a03 = &rf.a03 + &three * &eps_q * &rf.a21;
    let six = Scalar::from_int(6);
    let got_a30 = g.y().get(3, 0).mul(&six);
    let got_a03 = g.y().get(0, 3).mul(&six);
    let first_ok = {
        let mut ok = true;
        for (i, j, c) in g.x().terms() {
            if i + j > 3 {
                continue;
            }
            let want = if (i, j) == (1, 1) {
                Scalar::one()
            } else {
                Scalar::zero()
            };
            ok &= *c == want;
        }
        ok
    };
    Ok(TildeShift {
        a30_shift_matches: got_a30.as_rational() == Some(&expected_a30),
        a03_shift_matches: got_a03.as_rational() == Some(&expected_a03),
        mixed_cubics_vanish: g.y().get(2, 1).is_zero() && g.y().get(1, 2).is_zero(),
        first_component_preserved: first_ok,
    })
}

/// Builds the reduced-form germ `(uv, εu²/2 + v²/2 + Σ a_ij uⁱvʲ/(i!j!))`.
pub fn reduced_form_germ(eps: i8, a: &[Rational; 4], order: usize) -> MapJet2<Scalar> {
    assert!(order >= 3);
    let half = Scalar::from_ratio(1, 2);
    let x = Jet2::monomial(1, 1, Scalar::one(), order);
    let mut y = Jet2::zero(order);
    y.set(2, 0, half.mul(&Scalar::from_int(eps as i64)));
    y.set(0, 2, half);
    let [a30, a21, a12, a03] = a.clone();
    y.set(3, 0, Scalar::rational(a30 / Rational::from_integer(6.into())));
    y.set(2, 1, Scalar::rational(a21 / Rational::from_integer(2.into())));
    y.set(1, 2, Scalar::rational(a12 / Rational::from_integer(2.into())));
    y.set(0, 3, Scalar::rational(a03 / Rational::from_integer(6.into())));
    MapJet2::new(x, y)
}

/// u and v as variables; small helper for building germs in tests.
pub fn uv_vars(order: usize) -> (Jet2<Scalar>, Jet2<Scalar>) {
    (
        Jet2::variable(Var::U, order),
        Jet2::variable(Var::V, order),
    )
}
