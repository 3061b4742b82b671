//! Truncated univariate power series and planar curve germs.

use std::fmt;

use crate::jets::MapJet2;
use crate::num::Coeff;

/// Truncated power series in one variable `t`.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet1<C> {
    coeffs: Vec<C>, // coeffs[k] multiplies t^k; length order+1
}

impl<C: Coeff> Jet1<C> {
    pub fn zero(order: usize) -> Self {
        Jet1 {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut jet = Jet1::zero(order);
        jet.coeffs[0] = c;
        jet
    }

    pub fn variable(order: usize) -> Self {
        assert!(order >= 1);
        let mut jet = Jet1::zero(order);
        jet.coeffs[1] = C::one();
        jet
    }

    pub fn from_coeffs(order: usize, coeffs: &[C]) -> Self {
        assert!(coeffs.len() <= order + 1, "too many coefficients");
        let mut jet = Jet1::zero(order);
        jet.coeffs[..coeffs.len()].clone_from_slice(coeffs);
        jet
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn set(&mut self, k: usize, c: C) {
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        Jet1 {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        Jet1 {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Jet1 {
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Jet1 {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        let order = self.order();
        let mut out: Jet1<C> = Jet1::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut out = Jet1::zero(order);
        for k in 0..=order.min(self.order()) {
            out.coeffs[k] = self.coeffs[k].clone();
        }
        out
    }

    /// Substitution of a zero-constant series.
    pub fn compose(&self, inner: &Jet1<C>) -> Self {
        assert_eq!(self.order(), inner.order(), "order mismatch");
        assert!(inner.coeffs[0].is_zero(), "inner series needs zero constant");
        let order = self.order();
        let mut out = Jet1::constant(self.coeffs[0].clone(), order);
        let mut power = Jet1::constant(C::one(), order);
        for k in 1..=order {
            power = power.mul(inner);
            out = out.add(&power.scale(&self.coeffs[k]));
        }
        out
    }

    pub fn derive(&self) -> Self {
        assert!(self.order() >= 1);
        let order = self.order() - 1;
        let mut out = Jet1::zero(order);
        for k in 0..=order {
            out.coeffs[k] = self.coeffs[k + 1].mul(&C::from_int((k + 1) as i64));
        }
        out
    }

    /// Compositional inverse of a series `c₁t + …` with unit linear
    /// coefficient; solves `self(r(t)) = t` degree by degree.
    pub fn reverse(&self) -> Option<Self> {
        let order = self.order();
        if !self.coeffs[0].is_zero() {
            return None;
        }
        let c1 = self.coeffs[1].clone();
        let c1_inv = c1.inv()?;
        let id = Jet1::variable(order);
        let mut r = id.scale(&c1_inv);
        for _ in 0..order {
            // r ← r + (t − self∘r)/c₁ gains one correct degree per pass.
            let err = id.sub(&self.compose(&r));
            r = r.add(&err.scale(&c1_inv));
        }
        Some(r)
    }
}

impl<C: Coeff> fmt::Display for Jet1<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*t", c)?,
                _ => write!(f, "({})*t^{}", c, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A curve germ `(ℝ,0) → (ℝ²,0)`: two univariate jets with zero constant
/// terms.
#[derive(Clone, PartialEq, Debug)]
pub struct CurveJet<C> {
    pub x: Jet1<C>,
    pub y: Jet1<C>,
}

impl<C: Coeff> CurveJet<C> {
    pub fn new(x: Jet1<C>, y: Jet1<C>) -> Self {
        assert_eq!(x.order(), y.order(), "order mismatch");
        assert!(
            x.coeff(0).is_zero() && y.coeff(0).is_zero(),
            "curve germ must pass through the origin"
        );
        CurveJet { x, y }
    }

    pub fn order(&self) -> usize {
        self.x.order()
    }

    /// `c^(k)(0)` as a vector: `k! ·` the degree-k coefficients.
    pub fn derivative_at_origin(&self, k: usize) -> [C; 2] {
        assert!(k <= self.order());
        let kf = C::from_int((1..=k as i64).product::<i64>().max(1));
        [self.x.coeff(k).mul(&kf), self.y.coeff(k).mul(&kf)]
    }
}

impl<C: Coeff> fmt::Display for CurveJet<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.x, self.y)
    }
}

/// Substitutes a curve germ into a map germ. The result is truncated at the
/// smaller of the two orders.
pub fn compose_map_curve<C: Coeff>(f: &MapJet2<C>, c: &CurveJet<C>) -> CurveJet<C> {
    let order = f.order().min(c.order());
    let x = c.x.truncated(order);
    let y = c.y.truncated(order);
    let mut xp: Vec<Jet1<C>> = Vec::with_capacity(order + 1);
    let mut yp: Vec<Jet1<C>> = Vec::with_capacity(order + 1);
    xp.push(Jet1::constant(C::one(), order));
    yp.push(Jet1::constant(C::one(), order));
    for k in 1..=order {
        xp.push(xp[k - 1].mul(&x));
        yp.push(yp[k - 1].mul(&y));
    }
    let mut out = [Jet1::zero(order), Jet1::zero(order)];
    for comp in 0..2 {
        for (i, j, coef) in f.component(comp).terms() {
            if coef.is_zero() || i + j > order {
                continue;
            }
            out[comp] = out[comp].add(&xp[i].mul(&yp[j]).scale(coef));
        }
    }
    let [ox, oy] = out;
    CurveJet::new(ox, oy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::Jet2;
    use crate::num::Scalar;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn reversion_inverts_composition() {
        // f(t) = t + t² + 3t³
        let f = Jet1::from_coeffs(4, &[s(0), s(1), s(1), s(3)]);
        let r = f.reverse().unwrap();
        let id = Jet1::variable(4);
        assert_eq!(f.compose(&r), id);
        assert_eq!(r.compose(&f), id);
    }

    #[test]
    fn map_curve_composition() {
        // f = (uv, u² + v²), c(t) = (t, t²) ⇒ f∘c = (t³, t² + t⁴)
        let f = MapJet2::new(
            Jet2::from_terms(4, &[(1, 1, s(1))]),
            Jet2::from_terms(4, &[(2, 0, s(1)), (0, 2, s(1))]),
        );
        let c = CurveJet::new(
            Jet1::from_coeffs(4, &[s(0), s(1)]),
            Jet1::from_coeffs(4, &[s(0), s(0), s(1)]),
        );
        let image = compose_map_curve(&f, &c);
        assert_eq!(image.x, Jet1::from_coeffs(4, &[s(0), s(0), s(0), s(1)]));
        assert_eq!(
            image.y,
            Jet1::from_coeffs(4, &[s(0), s(0), s(1), s(0), s(1)])
        );
    }

    #[test]
    fn curve_derivatives() {
        let c = CurveJet::new(
            Jet1::from_coeffs(3, &[s(0), s(0), s(1)]),
            Jet1::from_coeffs(3, &[s(0), s(0), s(0), s(1)]),
        );
        assert_eq!(c.derivative_at_origin(1), [s(0), s(0)]);
        assert_eq!(c.derivative_at_origin(2), [s(2), s(0)]);
        assert_eq!(c.derivative_at_origin(3), [s(0), s(6)]);
    }
}
