//! Laurent polynomials in two variables `z1`, `z2` with exponents in `Z^2`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::coeff::Coeff;

/// Exponent vector of a monomial `z1^e1 * z2^e2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent {
    pub e1: i64,
    pub e2: i64,
}

#[allow(clippy::should_implement_trait)] // by-value helpers, mirroring Coeff
impl Exponent {
    pub const fn new(e1: i64, e2: i64) -> Self {
        Self { e1, e2 }
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.e1 + other.e1, self.e2 + other.e2)
    }

    pub fn sub(self, other: Self) -> Self {
        Self::new(self.e1 - other.e1, self.e2 - other.e2)
    }

    pub fn neg(self) -> Self {
        Self::new(-self.e1, -self.e2)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.e1, self.e2)
    }
}

/// Finite map from exponents to nonzero coefficients. The zero polynomial
/// has an empty term set.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<C: Coeff> {
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Exponent::new(0, 0), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `z1`
    pub fn z1() -> Self {
        Self::monomial(Exponent::new(1, 0), C::one())
    }

    /// `z2`
    pub fn z2() -> Self {
        Self::monomial(Exponent::new(0, 1), C::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e1, e2, c) in terms {
            p = p.add(&Self::monomial(Exponent::new(e1, e2), c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    /// Coefficient at `e`, zero if absent.
    pub fn coeff(&self, e: Exponent) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let s = match terms.get(e) {
                Some(existing) => existing.add(c),
                None => c.clone(),
            };
            if s.is_zero() {
                terms.remove(e);
            } else {
                terms.insert(*e, s);
            }
        }
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc = acc.add(&Self::monomial(ea.add(*eb), ca.mul(cb)));
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, t)| (*e, t.mul(c)))
                .filter(|(_, t)| !t.is_zero())
                .collect(),
        }
    }

    /// Conjugation restricted to the unit torus: `(e1,e2) -> (-e1,-e2)` and
    /// coefficients conjugated.
    pub fn conj_on_torus(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.neg(), c.conj()))
                .collect(),
        }
    }

    /// Numeric evaluation. Negative exponents use `powi`, so the point must
    /// be away from the coordinate axes.
    pub fn eval(&self, w1: Complex64, w2: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c.to_c64() * w1.powi(e.e1 as i32) * w2.powi(e.e2 as i32);
        }
        acc
    }

    /// Exact evaluation at a Gaussian-rational point with invertible coords.
    pub fn eval_exact(&self, w1: &C, w2: &C) -> C {
        let mut acc = C::zero();
        let w1_inv = C::one().div(w1);
        let w2_inv = C::one().div(w2);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            let (b1, n1) = if e.e1 >= 0 { (w1, e.e1) } else { (&w1_inv, -e.e1) };
            for _ in 0..n1 {
                t = t.mul(b1);
            }
            let (b2, n2) = if e.e2 >= 0 { (w2, e.e2) } else { (&w2_inv, -e.e2) };
            for _ in 0..n2 {
                t = t.mul(b2);
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if e.e1 != 0 {
                write!(f, "*z1^{}", e.e1)?;
            }
            if e.e2 != 0 {
                write!(f, "*z2^{}", e.e2)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussianRational as Gq;

    fn term(e1: i64, e2: i64, re: i64) -> LaurentPoly<Gq> {
        LaurentPoly::monomial(Exponent::new(e1, e2), Gq::from_ints(re, 0))
    }

    #[test]
    fn add_cancels() {
        // (x + y) + (-x) = y
        let p = term(1, 0, 1).add(&term(0, 1, 1));
        let q = term(1, 0, -1);
        assert_eq!(p.add(&q), term(0, 1, 1));
    }

    #[test]
    fn add_identity_and_like_terms() {
        let p = term(2, -1, 5);
        assert_eq!(LaurentPoly::zero().add(&p), p);
        // 2*x^-1*y + 3*x^-1*y = 5*x^-1*y
        assert_eq!(term(-1, 1, 2).add(&term(-1, 1, 3)), term(-1, 1, 5));
    }

    #[test]
    fn mul_difference_of_squares() {
        let p = term(1, 0, 1).add(&term(0, 1, -1));
        let q = term(1, 0, 1).add(&term(0, 1, 1));
        let expect = term(2, 0, 1).add(&term(0, 2, -1));
        assert_eq!(p.mul(&q), expect);
    }

    #[test]
    fn mul_inverse_monomials() {
        // x^-1*y * x*y^-1 = 1
        assert_eq!(term(-1, 1, 1).mul(&term(1, -1, 1)), term(0, 0, 1));
    }

    #[test]
    fn conj_on_torus_basics() {
        assert_eq!(term(1, 0, 1).conj_on_torus(), term(-1, 0, 1));
        let iz = LaurentPoly::monomial(Exponent::new(1, -1), Gq::from_ints(0, 1));
        let expect = LaurentPoly::monomial(Exponent::new(-1, 1), Gq::from_ints(0, -1));
        assert_eq!(iz.conj_on_torus(), expect);
    }

    #[test]
    fn conj_is_involution() {
        let p = term(2, -3, 4).add(&LaurentPoly::monomial(
            Exponent::new(-1, 1),
            Gq::from_ints(1, 7),
        ));
        assert_eq!(p.conj_on_torus().conj_on_torus(), p);
    }
}
