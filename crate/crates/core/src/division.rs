//! Toric polynomial division for Laurent polynomials.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPoly};
use crate::polygon::NewtonPolygon;

/// Linear functional used to pick leading terms. An irrational slope is
/// emulated by breaking ties lexicographically on `(e1, e2)`, which leaves a
/// unique maximizer on any finite support.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DirectionFunctional {
    pub alpha: i64,
    pub beta: i64,
}

impl DirectionFunctional {
    pub fn new(alpha: i64, beta: i64) -> Self {
        assert!(
            alpha != 0 || beta != 0,
            "direction functional must be nonzero"
        );
        Self { alpha, beta }
    }

    pub fn key(&self, e: Exponent) -> (i128, i64, i64) {
        (
            self.alpha as i128 * e.e1 as i128 + self.beta as i128 * e.e2 as i128,
            e.e1,
            e.e2,
        )
    }
}

impl Default for DirectionFunctional {
    fn default() -> Self {
        Self::new(1, 1_000_003)
    }
}

/// The unique support point of `p` maximizing `h`.
pub fn support_max<C: Coeff>(p: &LaurentPoly<C>, h: DirectionFunctional) -> Result<Exponent> {
    p.support()
        .into_iter()
        .max_by_key(|&e| h.key(e))
        .ok_or(Error::ZeroPolynomial)
}

#[derive(Clone, Debug)]
pub struct QuotientRemainder<C: Coeff> {
    pub quotient: LaurentPoly<C>,
    pub remainder: LaurentPoly<C>,
}

/// Computes a quotient-remainder pair `(Q, R)` with `F = Q*G + R`, the
/// support of `R` inside `NP(F)`, and `R = 0` whenever `G` divides `F`.
///
/// Each round looks at the leading term of the running `F`: when the
/// translated `NP(G)` still fits inside `NP(F)` the term is reduced,
/// otherwise it moves to the remainder. The leading `h`-key strictly
/// decreases, so the loop terminates.
pub fn toric_divide<C: Coeff>(
    f: &LaurentPoly<C>,
    g: &LaurentPoly<C>,
    h: DirectionFunctional,
) -> Result<QuotientRemainder<C>> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let g_lead = support_max(g, h)?;
    let g_lead_coeff = g.coeff(g_lead);
    let np_g = NewtonPolygon::of(g)?;

    let mut quotient = LaurentPoly::zero();
    let mut remainder = LaurentPoly::zero();
    let mut cur = f.clone();
    while !cur.is_zero() {
        let np_f = NewtonPolygon::of(&cur)?;
        let f_lead = support_max(&cur, h)?;
        let shift = f_lead.sub(g_lead);
        if np_f.contains_polygon(&np_g.translate(shift)) {
            let m = LaurentPoly::monomial(shift, cur.coeff(f_lead).div(&g_lead_coeff));
            quotient = quotient.add(&m);
            cur = cur.sub(&m.mul(g));
        } else {
            let m = LaurentPoly::monomial(f_lead, cur.coeff(f_lead));
            remainder = remainder.add(&m);
            cur = cur.sub(&m);
        }
    }
    Ok(QuotientRemainder {
        quotient,
        remainder,
    })
}

/// `true` iff the toric remainder of `f` by `g` vanishes; the remainder is
/// returned as a witness either way.
pub fn is_divisible<C: Coeff>(
    f: &LaurentPoly<C>,
    g: &LaurentPoly<C>,
) -> Result<(bool, LaurentPoly<C>)> {
    let qr = toric_divide(f, g, DirectionFunctional::default())?;
    Ok((qr.remainder.is_zero(), qr.remainder))
}
