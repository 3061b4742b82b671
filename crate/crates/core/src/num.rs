//! Scalar coefficient types for jet arithmetic.
//!
//! Three scalar modes implement the [`Coeff`] trait:
//!
//! * [`Scalar`] — exact numbers of the form `a + b√d` with `a, b ∈ ℚ` and a
//!   shared integer discriminant `d` (negative `d` encodes complex values).
//!   This is the mode used for every verdict; sign and zero tests are exact.
//! * [`F64`] — plain `f64` with a tolerance-based zero test, used by the
//!   normal-form pipeline where nested radicals leave ℚ(√d).
//! * [`Cplx`] — complex `f64` pairs, needed when a floating computation has
//!   to follow conjugate quadric directions.
//!
//! A computation picks one mode and never mixes them.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

static FLOAT_TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0);

/// Absolute tolerance used by the floating scalar modes for zero tests.
pub fn float_tolerance() -> f64 {
    let bits = FLOAT_TOLERANCE_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        1e-9
    } else {
        f64::from_bits(bits)
    }
}

/// Overrides the floating zero-test tolerance. Intended to be called once,
/// before any floating computation starts.
pub fn set_float_tolerance(tol: f64) {
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
    FLOAT_TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

/// Field-like operations required from a jet coefficient.
///
/// `sign` and `sqrt` may fail: a complex value has no sign, and an exact
/// scalar has a square root inside the field only when the radicand is a
/// perfect square there.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Sign of a real value (`-1`, `0`, `1`); `None` when the value is not real.
    fn sign(&self) -> Option<i8>;
    /// Square root representable in this scalar mode, if any.
    fn sqrt(&self) -> Option<Self>;
    /// Square root that may open a fresh quadratic extension (used for the
    /// quadric discriminant). Defaults to the in-mode square root.
    fn sqrt_extend(&self) -> Option<Self> {
        self.sqrt()
    }
    fn conj(&self) -> Self;
    /// Real `f64` approximation; `None` when the value is not real.
    fn to_f64(&self) -> Option<f64>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(big(num), big(den))
}

/// Splits `n = s² · d` with `d` free of small square factors.
///
/// Trial division runs over candidates up to 1009 and the remainder is
/// checked for being a perfect square, so every humanly-sized input ends up
/// with `d` genuinely square-free. Larger discriminants may keep a square
/// factor; that is harmless because all that later arithmetic needs is that
/// `d` is not a perfect square.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut s = BigInt::from(1);
    let mut cand: u64 = 2;
    while cand <= 1009 {
        let c = BigInt::from(cand);
        let c2 = &c * &c;
        while (&m % &c2).is_zero() {
            m /= &c2;
            s *= &c;
        }
        cand = if cand == 2 { 3 } else { cand + 2 };
    }
    let r = m.sqrt();
    if &r * &r == m {
        s *= &r;
        m = BigInt::from(1);
    }
    if negative {
        m = -m;
    }
    (s, m)
}

/// An exact element `rat + rad·√d` of a real or imaginary quadratic field.
///
/// Invariants: `d` is never zero and never a perfect square other than `1`;
/// `d == 1` exactly when the radical part vanishes (a plain rational).
/// Mixing two different irrational discriminants in one operation is a
/// programming error and panics: each classification works inside a single
/// extension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    rat: Rational,
    rad: Rational,
    d: BigInt,
}

impl Scalar {
    pub fn from_parts(rat: Rational, rad: Rational, d: BigInt) -> Self {
        let mut s = Scalar { rat, rad, d };
        s.normalize();
        s
    }

    pub fn rational(q: Rational) -> Self {
        Scalar {
            rat: q,
            rad: Rational::zero(),
            d: big(1),
        }
    }

    /// √q for a rational radicand, decomposed into `s·√d` with fresh `d`.
    pub fn sqrt_rational(q: &Rational) -> Self {
        if q.is_zero() {
            return Scalar::zero();
        }
        let inner = q.numer() * q.denom();
        let (s, d) = squarefree_decompose(&inner);
        let coef = Rational::new(s, q.denom().clone());
        if d == big(1) {
            Scalar::rational(coef)
        } else {
            Scalar {
                rat: Rational::zero(),
                rad: coef,
                d,
            }
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn radical_part(&self) -> &Rational {
        &self.rad
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    /// The rational value, if the radical part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.rad.is_zero() {
            Some(&self.rat)
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.rad.is_zero() || self.d.is_zero() {
            self.rad = Rational::zero();
            self.d = big(1);
        } else if self.d == big(1) {
            // √1 = 1; fold into the rational part.
            self.rat = &self.rat + &self.rad;
            self.rad = Rational::zero();
        }
    }

    fn join_disc(&self, rhs: &Scalar) -> BigInt {
        if self.rad.is_zero() {
            rhs.d.clone()
        } else if rhs.rad.is_zero() || self.d == rhs.d {
            self.d.clone()
        } else {
            panic!(
                "mixed quadratic extensions: sqrt({}) vs sqrt({})",
                self.d, rhs.d
            );
        }
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::rational(Rational::zero())
    }

    fn one() -> Self {
        Scalar::rational(ratio(1, 1))
    }

    fn from_int(n: i64) -> Self {
        Scalar::rational(ratio(n, 1))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::rational(ratio(num, den))
    }

    fn from_rational(q: &Rational) -> Self {
        Scalar::rational(q.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        let d = self.join_disc(rhs);
        Scalar::from_parts(&self.rat + &rhs.rat, &self.rad + &rhs.rad, d)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let d = self.join_disc(rhs);
        Scalar::from_parts(&self.rat - &rhs.rat, &self.rad - &rhs.rad, d)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let d = self.join_disc(rhs);
        let dq = Rational::from(d.clone());
        let rat = &self.rat * &rhs.rat + &self.rad * &rhs.rad * &dq;
        let rad = &self.rat * &rhs.rad + &self.rad * &rhs.rat;
        Scalar::from_parts(rat, rad, d)
    }

    fn neg(&self) -> Self {
        Scalar {
            rat: -self.rat.clone(),
            rad: -self.rad.clone(),
            d: self.d.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√d)⁻¹ = (a − b√d) / (a² − b²d); the norm cannot vanish for a
        // nonzero element because d is not a perfect square.
        let dq = Rational::from(self.d.clone());
        let norm = &self.rat * &self.rat - &self.rad * &self.rad * &dq;
        assert!(!norm.is_zero(), "norm of nonzero element vanished");
        Some(Scalar::from_parts(
            &self.rat / &norm,
            -(&self.rad / &norm),
            self.d.clone(),
        ))
    }

    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    fn sign(&self) -> Option<i8> {
        let sr = rational_sign(&self.rat);
        if self.rad.is_zero() {
            return Some(sr);
        }
        if self.d.is_negative() {
            return None;
        }
        let sb = rational_sign(&self.rad);
        if sr == 0 {
            return Some(sb);
        }
        if sr == sb {
            return Some(sr);
        }
        // Opposite signs: compare a² against b²·d.
        let dq = Rational::from(self.d.clone());
        let lhs = &self.rat * &self.rat;
        let rhs = &self.rad * &self.rad * &dq;
        Some(if lhs > rhs { sr } else { sb })
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.rad.is_zero() {
            // Perfect rational square, or k²·d for the current discriminant.
            if let Some(r) = rational_sqrt(&self.rat) {
                return Some(Scalar::rational(r));
            }
            if self.d != big(1) && !self.d.is_negative() {
                let dq = Rational::from(self.d.clone());
                let quotient = &self.rat / &dq;
                if let Some(k) = rational_sqrt(&quotient) {
                    return Some(Scalar::from_parts(Rational::zero(), k, self.d.clone()));
                }
            }
            return None;
        }
        // Solve (x + y√d)² = rat + rad√d: x² is a root of
        // z² − rat·z + rad²·d/4 = 0.
        let dq = Rational::from(self.d.clone());
        let disc = &self.rat * &self.rat - &self.rad * &self.rad * &dq;
        let w = rational_sqrt(&disc)?;
        for z in [(&self.rat + &w) / ratio(2, 1), (&self.rat - &w) / ratio(2, 1)] {
            if let Some(x) = rational_sqrt(&z) {
                if !x.is_zero() {
                    let y = &self.rad / (&x * ratio(2, 1));
                    let cand = Scalar::from_parts(x, y, self.d.clone());
                    if cand.mul(&cand) == *self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    fn sqrt_extend(&self) -> Option<Self> {
        if self.rad.is_zero() {
            Some(Scalar::sqrt_rational(&self.rat))
        } else {
            self.sqrt()
        }
    }

    fn conj(&self) -> Self {
        Scalar {
            rat: self.rat.clone(),
            rad: -self.rad.clone(),
            d: self.d.clone(),
        }
    }

    fn to_f64(&self) -> Option<f64> {
        let a = self.rat.to_f64()?;
        if self.rad.is_zero() {
            return Some(a);
        }
        if self.d.is_negative() {
            return None;
        }
        let b = self.rad.to_f64()?;
        Some(a + b * self.d.to_f64()?.sqrt())
    }
}

fn rational_sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

/// Exact rational square root, when the reduced numerator and denominator are
/// both perfect squares.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() {
        return None;
    }
    let rn = q.numer().sqrt();
    let rd = q.denom().sqrt();
    if &rn * &rn == *q.numer() && &rd * &rd == *q.denom() {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let radical = if self.rad == ratio(1, 1) {
            format!("sqrt({})", self.d)
        } else if self.rad == ratio(-1, 1) {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.rad, self.d)
        };
        if self.rat.is_zero() {
            write!(f, "{}", radical)
        } else if self.rad.is_negative() {
            write!(f, "{}{}", self.rat, radical)
        } else {
            write!(f, "{}+{}", self.rat, radical)
        }
    }
}

/// Floating scalar with a tolerance-based zero test.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct F64(pub f64);

impl Coeff for F64 {
    fn zero() -> Self {
        F64(0.0)
    }

    fn one() -> Self {
        F64(1.0)
    }

    fn from_int(n: i64) -> Self {
        F64(n as f64)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        F64(num as f64 / den as f64)
    }

    fn from_rational(q: &Rational) -> Self {
        F64(q.to_f64().expect("rational out of f64 range"))
    }

    fn add(&self, rhs: &Self) -> Self {
        F64(self.0 + rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        F64(self.0 - rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        F64(self.0 * rhs.0)
    }

    fn neg(&self) -> Self {
        F64(-self.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(F64(1.0 / self.0))
        }
    }

    fn is_zero(&self) -> bool {
        self.0.abs() < float_tolerance()
    }

    fn sign(&self) -> Option<i8> {
        Some(if self.is_zero() {
            0
        } else if self.0 < 0.0 {
            -1
        } else {
            1
        })
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            Some(F64(0.0))
        } else if self.0 < 0.0 {
            None
        } else {
            Some(F64(self.0.sqrt()))
        }
    }

    fn conj(&self) -> Self {
        *self
    }

    fn to_f64(&self) -> Option<f64> {
        Some(self.0)
    }
}

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Complex floating scalar, for floating computations that must cross a
/// negative quadric discriminant.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl Cplx {
    pub fn new(re: f64, im: f64) -> Self {
        Cplx { re, im }
    }

    fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl Coeff for Cplx {
    fn zero() -> Self {
        Cplx::new(0.0, 0.0)
    }

    fn one() -> Self {
        Cplx::new(1.0, 0.0)
    }

    fn from_int(n: i64) -> Self {
        Cplx::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Cplx::new(num as f64 / den as f64, 0.0)
    }

    fn from_rational(q: &Rational) -> Self {
        Cplx::new(q.to_f64().expect("rational out of f64 range"), 0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        Cplx::new(self.re + rhs.re, self.im + rhs.im)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Cplx::new(self.re - rhs.re, self.im - rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Cplx::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }

    fn neg(&self) -> Self {
        Cplx::new(-self.re, -self.im)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.re * self.re + self.im * self.im;
        Some(Cplx::new(self.re / n, -self.im / n))
    }

    fn is_zero(&self) -> bool {
        self.abs() < float_tolerance()
    }

    fn sign(&self) -> Option<i8> {
        if self.im.abs() >= float_tolerance() {
            return None;
        }
        Some(if self.re.abs() < float_tolerance() {
            0
        } else if self.re < 0.0 {
            -1
        } else {
            1
        })
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Cplx::zero());
        }
        let r = self.abs().sqrt();
        let half = self.im.atan2(self.re) / 2.0;
        Some(Cplx::new(r * half.cos(), r * half.sin()))
    }

    fn conj(&self) -> Self {
        Cplx::new(self.re, -self.im)
    }

    fn to_f64(&self) -> Option<f64> {
        if self.im.abs() >= float_tolerance() {
            None
        } else {
            Some(self.re)
        }
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}
