//! Truncated bivariate power series ("jets") over an exact or floating
//! coefficient field.
//!
//! A [`Jet2`] of order `N` stores the coefficients of all monomials
//! `u^i v^j` with `i + j ≤ N` in a dense triangular table; every operation
//! re-truncates at `N`. [`MapJet2`] pairs two jets with vanishing constant
//! terms and represents a finite-order map germ `(ℝ²,0) → (ℝ²,0)`.
//!
//! Structural misuse (mismatched truncation orders, substituting a series
//! with a nonzero constant term) panics; data-dependent failures (square
//! roots and inverses that do not exist in the coefficient field) return
//! errors.

use std::fmt;

use crate::num::Coeff;

/// Source variables of a planar germ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    U,
    V,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElemError {
    /// Constant term is zero where a unit is required.
    NotAUnit,
    /// Constant term has no square root in the coefficient field.
    NotASquare,
}

impl fmt::Display for ElemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemError::NotAUnit => write!(f, "constant term is not a unit"),
            ElemError::NotASquare => {
                write!(f, "constant term has no square root in the coefficient field")
            }
        }
    }
}

impl std::error::Error for ElemError {}

fn table_len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

fn index(i: usize, j: usize) -> usize {
    let t = i + j;
    t * (t + 1) / 2 + j
}

/// Truncated power series in two variables.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet2<C> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> Jet2<C> {
    pub fn zero(order: usize) -> Self {
        Jet2 {
            order,
            coeffs: vec![C::zero(); table_len(order)],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut jet = Jet2::zero(order);
        jet.coeffs[0] = c;
        jet
    }

    pub fn one(order: usize) -> Self {
        Jet2::constant(C::one(), order)
    }

    pub fn variable(var: Var, order: usize) -> Self {
        assert!(order >= 1, "order must admit linear terms");
        let mut jet = Jet2::zero(order);
        match var {
            Var::U => jet.set(1, 0, C::one()),
            Var::V => jet.set(0, 1, C::one()),
        }
        jet
    }

    pub fn monomial(i: usize, j: usize, c: C, order: usize) -> Self {
        assert!(i + j <= order, "monomial degree exceeds order");
        let mut jet = Jet2::zero(order);
        jet.set(i, j, c);
        jet
    }

    /// Builds a jet from `(i, j, coefficient)` entries.
    pub fn from_terms(order: usize, terms: &[(usize, usize, C)]) -> Self {
        let mut jet: Jet2<C> = Jet2::zero(order);
        for (i, j, c) in terms {
            assert!(i + j <= order, "term degree exceeds order");
            let cur = jet.get(*i, *j).clone();
            jet.set(*i, *j, cur.add(c));
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        assert!(i + j <= self.order, "monomial degree exceeds order");
        &self.coeffs[index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        assert!(i + j <= self.order, "monomial degree exceeds order");
        self.coeffs[index(i, j)] = c;
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Iterates over `(i, j, coefficient)` of all stored monomials.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        let order = self.order;
        (0..=order).flat_map(move |t| {
            (0..=t).map(move |j| {
                let i = t - j;
                (i, j, &self.coeffs[index(i, j)])
            })
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "order mismatch");
        Jet2 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "order mismatch");
        Jet2 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Coefficient-wise convolution, truncated at the shared order.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "order mismatch");
        let order = self.order;
        let mut out: Jet2<C> = Jet2::zero(order);
        for (i1, j1, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            for (i2, j2, b) in rhs.terms() {
                if i1 + i2 + j1 + j2 > order {
                    continue;
                }
                if b.is_zero() {
                    continue;
                }
                let idx = index(i1 + i2, j1 + j2);
                out.coeffs[idx] = out.coeffs[idx].add(&a.mul(b));
            }
        }
        out
    }

    /// Re-truncates (or zero-pads) to a new order.
    pub fn truncated(&self, order: usize) -> Self {
        let mut out = Jet2::zero(order);
        for (i, j, c) in self.terms() {
            if i + j <= order {
                out.set(i, j, c.clone());
            }
        }
        out
    }

    /// Formal substitution of a zero-constant map germ; the result has the
    /// shared truncation order.
    pub fn compose(&self, inner: &MapJet2<C>) -> Self {
        assert_eq!(self.order, inner.order(), "order mismatch");
        assert!(
            inner.x().constant_term().is_zero() && inner.y().constant_term().is_zero(),
            "inner map must have zero constant terms"
        );
        let order = self.order;
        // Powers of the two substituted components.
        let mut xp: Vec<Jet2<C>> = Vec::with_capacity(order + 1);
        let mut yp: Vec<Jet2<C>> = Vec::with_capacity(order + 1);
        xp.push(Jet2::one(order));
        yp.push(Jet2::one(order));
        for k in 1..=order {
            xp.push(xp[k - 1].mul(inner.x()));
            yp.push(yp[k - 1].mul(inner.y()));
        }
        let mut out = Jet2::zero(order);
        for (i, j, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&xp[i].mul(&yp[j]).scale(c));
        }
        out
    }

    /// Formal partial derivative; the result order drops by one.
    pub fn derive(&self, var: Var) -> Self {
        assert!(self.order >= 1, "cannot derive an order-0 jet");
        let order = self.order - 1;
        let mut out = Jet2::zero(order);
        for (i, j, _) in Jet2::<C>::zero(order).terms().collect::<Vec<_>>() {
            let c = match var {
                Var::U => self.get(i + 1, j).mul(&C::from_int((i + 1) as i64)),
                Var::V => self.get(i, j + 1).mul(&C::from_int((j + 1) as i64)),
            };
            out.set(i, j, c);
        }
        out
    }

    /// Value of the k-th pure/mixed partial derivative at the origin.
    pub fn partial_at_origin(&self, i: usize, j: usize) -> C {
        let mut c = self.get(i, j).clone();
        c = c.mul(&C::from_int(factorial(i)));
        c.mul(&C::from_int(factorial(j)))
    }

    /// Taylor series of `sin` composed with a zero-constant argument.
    pub fn sin(&self) -> Self {
        self.alternating_series(true)
    }

    /// Taylor series of `cos` composed with a zero-constant argument.
    pub fn cos(&self) -> Self {
        self.alternating_series(false)
    }

    fn alternating_series(&self, odd: bool) -> Self {
        assert!(
            self.constant_term().is_zero(),
            "sin/cos need a zero constant term"
        );
        let order = self.order;
        let mut out = if odd {
            Jet2::zero(order)
        } else {
            Jet2::one(order)
        };
        let mut power = Jet2::one(order);
        for k in 1..=order {
            power = power.mul(self);
            let wanted = if odd { k % 2 == 1 } else { k % 2 == 0 };
            if wanted {
                // the arg^k term carries (−1)^⌊k/2⌋ / k!
                let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                let coef = C::from_ratio(sign, factorial(k));
                out = out.add(&power.scale(&coef));
            }
        }
        out
    }

    /// Multiplicative inverse of a unit series.
    pub fn inverse(&self) -> Result<Self, ElemError> {
        let c0 = self.constant_term().clone();
        let i0 = c0.inv().ok_or(ElemError::NotAUnit)?;
        // 1/(c(1+h)) = (1/c)·Σ (−h)^k
        let h = self.scale(&i0).sub(&Jet2::one(self.order));
        let mut out = Jet2::one(self.order);
        let mut power = Jet2::one(self.order);
        let mut sign = -1i64;
        for _ in 1..=self.order {
            power = power.mul(&h);
            out = out.add(&power.scale(&C::from_int(sign)));
            sign = -sign;
        }
        Ok(out.scale(&i0))
    }

    /// Square root of a series whose constant term is a unit square in the
    /// coefficient field.
    pub fn sqrt(&self) -> Result<Self, ElemError> {
        let c0 = self.constant_term().clone();
        if c0.is_zero() {
            return Err(ElemError::NotAUnit);
        }
        let s0 = c0.sqrt().ok_or(ElemError::NotASquare)?;
        let i0 = c0.inv().expect("unit constant");
        let h = self.scale(&i0).sub(&Jet2::one(self.order));
        // Binomial series Σ binom(1/2, k) h^k.
        let mut out = Jet2::one(self.order);
        let mut power = Jet2::one(self.order);
        let mut coef = C::one();
        for k in 1..=self.order {
            power = power.mul(&h);
            // binom(1/2,k) = binom(1/2,k−1)·(1/2 − (k−1))/k = prev·(3 − 2k)/(2k)
            coef = coef.mul(&C::from_ratio(3 - 2 * (k as i64), 2 * k as i64));
            out = out.add(&power.scale(&coef));
        }
        Ok(out.scale(&s0))
    }

    fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Jet2<D> {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

impl<C: Coeff> fmt::Display for Jet2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, j) {
                (0, 0) => write!(f, "{}", c)?,
                _ => {
                    write!(f, "({})", c)?;
                    if i > 0 {
                        write!(f, "*u{}", if i > 1 { format!("^{}", i) } else { String::new() })?;
                    }
                    if j > 0 {
                        write!(f, "*v{}", if j > 1 { format!("^{}", j) } else { String::new() })?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A finite-order representative of a map germ `(ℝ²,0) → (ℝ²,0)`: two jets
/// of equal order with vanishing constant terms.
#[derive(Clone, PartialEq, Debug)]
pub struct MapJet2<C> {
    comps: [Jet2<C>; 2],
}

impl<C: Coeff> MapJet2<C> {
    pub fn new(x: Jet2<C>, y: Jet2<C>) -> Self {
        assert_eq!(x.order(), y.order(), "order mismatch");
        assert!(
            x.constant_term().is_zero() && y.constant_term().is_zero(),
            "a map germ must send the origin to the origin"
        );
        MapJet2 { comps: [x, y] }
    }

    /// The identity germ `(u, v)`.
    pub fn identity(order: usize) -> Self {
        MapJet2::new(Jet2::variable(Var::U, order), Jet2::variable(Var::V, order))
    }

    /// The linear germ with matrix rows `(m[0][0] u + m[0][1] v, …)`.
    pub fn linear(m: &[[C; 2]; 2], order: usize) -> Self {
        let u = Jet2::variable(Var::U, order);
        let v = Jet2::variable(Var::V, order);
        MapJet2::new(
            u.scale(&m[0][0]).add(&v.scale(&m[0][1])),
            u.scale(&m[1][0]).add(&v.scale(&m[1][1])),
        )
    }

    pub fn x(&self) -> &Jet2<C> {
        &self.comps[0]
    }

    pub fn y(&self) -> &Jet2<C> {
        &self.comps[1]
    }

    pub fn component(&self, k: usize) -> &Jet2<C> {
        &self.comps[k]
    }

    pub fn order(&self) -> usize {
        self.comps[0].order()
    }

    pub fn compose(&self, inner: &MapJet2<C>) -> Self {
        MapJet2::new(self.comps[0].compose(inner), self.comps[1].compose(inner))
    }

    pub fn truncated(&self, order: usize) -> Self {
        MapJet2::new(self.comps[0].truncated(order), self.comps[1].truncated(order))
    }

    /// Coefficient matrix of the linear part at the origin.
    pub fn linear_part(&self) -> [[C; 2]; 2] {
        [
            [self.comps[0].get(1, 0).clone(), self.comps[0].get(0, 1).clone()],
            [self.comps[1].get(1, 0).clone(), self.comps[1].get(0, 1).clone()],
        ]
    }

    /// Formal inverse of a germ with invertible linear part.
    pub fn invert(&self) -> Option<Self> {
        let order = self.order();
        let l = self.linear_part();
        let det = l[0][0].mul(&l[1][1]).sub(&l[0][1].mul(&l[1][0]));
        let det_inv = det.inv()?;
        let l_inv = [
            [l[1][1].mul(&det_inv), l[0][1].mul(&det_inv).neg()],
            [l[1][0].mul(&det_inv).neg(), l[0][0].mul(&det_inv)],
        ];
        let lin_inv = MapJet2::linear(&l_inv, order);
        // Split self = L + H and iterate ψ ← L⁻¹∘(id − H∘ψ); each pass fixes
        // one more degree.
        let lin = MapJet2::linear(&l, order);
        let high = MapJet2::new(
            self.comps[0].sub(lin.x()),
            self.comps[1].sub(lin.y()),
        );
        let id = MapJet2::identity(order);
        let mut psi = lin_inv.clone();
        for _ in 0..order {
            let hp = high.compose(&psi);
            let rhs = MapJet2::new(id.x().sub(hp.x()), id.y().sub(hp.y()));
            psi = lin_inv.compose(&rhs);
        }
        Some(psi)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> MapJet2<D> {
        MapJet2 {
            comps: [self.comps[0].map(f), self.comps[1].map(f)],
        }
    }
}

impl<C: Coeff> fmt::Display for MapJet2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.comps[0], self.comps[1])
    }
}

/// Value of the k-fold directional derivative `η^k f` at the origin for a
/// constant direction `η`, via `k!·Σ_m η₁^m η₂^{k−m}·coeff(m, k−m)`.
pub fn directional_iterate<C: Coeff>(f: &MapJet2<C>, eta: &[C; 2], k: usize) -> [C; 2] {
    assert!(k <= f.order(), "derivative order exceeds truncation order");
    let kf = C::from_int(factorial(k));
    let mut out = [C::zero(), C::zero()];
    for m in 0..=k {
        let mut w = C::one();
        for _ in 0..m {
            w = w.mul(&eta[0]);
        }
        for _ in 0..(k - m) {
            w = w.mul(&eta[1]);
        }
        for c in 0..2 {
            let term = w.mul(f.component(c).get(m, k - m));
            out[c] = out[c].add(&term);
        }
    }
    [out[0].mul(&kf), out[1].mul(&kf)]
}

/// One application of a vector-field operator `η = η₁∂_u + η₂∂_v` with jet
/// coefficients; the order drops by one.
pub fn vector_field_apply<C: Coeff>(eta: &[Jet2<C>; 2], g: &Jet2<C>) -> Jet2<C> {
    let gu = g.derive(Var::U);
    let gv = g.derive(Var::V);
    let order = gu.order();
    eta[0]
        .truncated(order)
        .mul(&gu)
        .add(&eta[1].truncated(order).mul(&gv))
}

/// `η^k f` at the origin for a genuine vector field, by symbolic iteration.
pub fn vector_field_iterate<C: Coeff>(
    eta: &[Jet2<C>; 2],
    f: &MapJet2<C>,
    k: usize,
) -> [C; 2] {
    assert!(k <= f.order(), "derivative order exceeds truncation order");
    let mut comps = [f.x().clone(), f.y().clone()];
    for _ in 0..k {
        comps = [
            vector_field_apply(eta, &comps[0]),
            vector_field_apply(eta, &comps[1]),
        ];
    }
    [comps[0].constant_term().clone(), comps[1].constant_term().clone()]
}

/// 2×2 determinant of two column vectors.
pub fn det2<C: Coeff>(a: &[C; 2], b: &[C; 2]) -> C {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}
