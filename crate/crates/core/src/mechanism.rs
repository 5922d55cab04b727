//! Constraint polynomials and momentum coefficients of a four-bar mechanism,
//! built exactly in the Laurent ring from a rational parameter set.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::coeff::{Coeff, GaussianRational as Gq};
use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPoly};

pub type Poly = LaurentPoly<Gq>;

/// The 16 design parameters. Centre-of-mass directions are stored as unit
/// Gaussian rationals `p_i = e^{i psi_i}`; angles never appear.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignParams {
    pub l1: BigRational,
    pub l2: BigRational,
    pub l3: BigRational,
    pub d: BigRational,
    pub m1: BigRational,
    pub m2: BigRational,
    pub m3: BigRational,
    pub r1: BigRational,
    pub r2: BigRational,
    pub r3: BigRational,
    pub p1: Gq,
    pub p2: Gq,
    pub p3: Gq,
    pub i1: BigRational,
    pub i2: BigRational,
    pub i3: BigRational,
}

impl DesignParams {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let one = BigRational::one();
        for (name, v) in [
            ("l1", &self.l1),
            ("l2", &self.l2),
            ("l3", &self.l3),
            ("d", &self.d),
            ("m1", &self.m1),
            ("m2", &self.m2),
            ("m3", &self.m3),
        ] {
            if !v.is_positive() {
                problems.push(format!("{name} must be strictly positive, got {v}"));
            }
        }
        for (name, v) in [
            ("r1", &self.r1),
            ("r2", &self.r2),
            ("r3", &self.r3),
            ("I1", &self.i1),
            ("I2", &self.i2),
            ("I3", &self.i3),
        ] {
            if v.is_negative() {
                problems.push(format!("{name} must be non-negative, got {v}"));
            }
        }
        for (name, p) in [("p1", &self.p1), ("p2", &self.p2), ("p3", &self.p3)] {
            if p.norm_sqr() != one {
                problems.push(format!(
                    "{name} must lie exactly on the unit circle, got {p} \
                     (use exact points such as -1 or 3/5+4/5i)"
                ));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

/// Lumped quantities: closure ratios, `q_i = m_i r_i p_i`,
/// `J_i = I_i + m_i r_i^2`, and the centre-of-mass coefficients `F_i`.
#[derive(Clone, Debug)]
pub struct DerivedParams {
    pub params: DesignParams,
    pub g1: BigRational,
    pub g2: BigRational,
    pub g3: BigRational,
    pub total_mass: BigRational,
    pub q1: Gq,
    pub q2: Gq,
    pub q3: Gq,
    pub j1: BigRational,
    pub j2: BigRational,
    pub j3: BigRational,
    pub f1: Gq,
    pub f2: Gq,
    pub f3: Gq,
}

pub fn derive(params: &DesignParams) -> Result<DerivedParams> {
    params.validate()?;
    let p = params;
    let g1 = -(&p.l1 / &p.l3);
    let g2 = &p.l2 / &p.l3;
    let g3 = &p.d / &p.l3;
    let total_mass = &p.m1 + &p.m2 + &p.m3;
    let q1 = p.p1.scale(&(&p.m1 * &p.r1));
    let q2 = p.p2.scale(&(&p.m2 * &p.r2));
    let q3 = p.p3.scale(&(&p.m3 * &p.r3));
    let j1 = &p.i1 + &p.m1 * &p.r1 * &p.r1;
    let j2 = &p.i2 + &p.m2 * &p.r2 * &p.r2;
    let j3 = &p.i3 + &p.m3 * &p.r3 * &p.r3;
    let f1 = q1.add(&Gq::real(&p.m3 * &p.l1)).add(&q3.scale(&g1));
    let f2 = q2.add(&q3.scale(&g2));
    let f3 = Gq::real(&p.m2 * &p.d).add(&q3.scale(&g3));
    Ok(DerivedParams {
        params: params.clone(),
        g1,
        g2,
        g3,
        total_mass,
        q1,
        q2,
        q3,
        j1,
        j2,
        j3,
        f1,
        f2,
        f3,
    })
}

fn real_const(r: &BigRational) -> Poly {
    Poly::constant(Gq::real(r.clone()))
}

fn mono(e1: i64, e2: i64, c: Gq) -> Poly {
    Poly::monomial(Exponent::new(e1, e2), c)
}

/// `G = (G1 z1 + G2 z2 + G3)(G1/z1 + G2/z2 + G3) - 1`, real on the torus.
pub fn geometric_constraint(dp: &DerivedParams) -> Poly {
    let a = mono(1, 0, Gq::real(dp.g1.clone()))
        .add(&mono(0, 1, Gq::real(dp.g2.clone())))
        .add(&real_const(&dp.g3));
    a.mul(&a.conj_on_torus()).sub(&Poly::one())
}

/// `K1` and `K2`, the purely imaginary velocity coefficients.
pub fn velocity_coefficients(dp: &DerivedParams) -> (Poly, Poly) {
    let g12 = Gq::real(&dp.g1 * &dp.g2);
    let g13 = Gq::real(&dp.g1 * &dp.g3);
    let g23 = Gq::real(&dp.g2 * &dp.g3);
    let k1 = mono(1, -1, g12.clone())
        .add(&mono(-1, 1, g12.neg()))
        .add(&mono(1, 0, g13.clone()))
        .add(&mono(-1, 0, g13.neg()));
    let g12n = g12.neg();
    let k2 = mono(1, -1, g12n.clone())
        .add(&mono(-1, 1, g12n.neg()))
        .add(&mono(0, 1, g23.clone()))
        .add(&mono(0, -1, g23.neg()));
    (k1, k2)
}

/// `F = F1 z1 + F2 z2 - C'` with the free constant pinned at the folded
/// reference configuration `z1 = z2 = 1`, so `F` vanishes identically for a
/// statically balanced mechanism.
pub fn static_constraint(dp: &DerivedParams) -> Poly {
    mono(1, 0, dp.f1.clone())
        .add(&mono(0, 1, dp.f2.clone()))
        .add(&Poly::constant(dp.f1.add(&dp.f2).neg()))
}

/// The ten constants of `K3 = a1 z1 + a2/z1 + b1 z1/z2 + b2 z2/z1 + c` and
/// `K4 = u1 z2 + u2/z2 + v1 z1/z2 + v2 z2/z1 + w`.
#[derive(Clone, Debug)]
pub struct MomentumForm {
    pub a1: Gq,
    pub a2: Gq,
    pub b1: Gq,
    pub b2: Gq,
    pub c: Gq,
    pub u1: Gq,
    pub u2: Gq,
    pub v1: Gq,
    pub v2: Gq,
    pub w: Gq,
}

impl MomentumForm {
    pub fn k3_poly(&self) -> Poly {
        mono(1, 0, self.a1.clone())
            .add(&mono(-1, 0, self.a2.clone()))
            .add(&mono(1, -1, self.b1.clone()))
            .add(&mono(-1, 1, self.b2.clone()))
            .add(&Poly::constant(self.c.clone()))
    }

    pub fn k4_poly(&self) -> Poly {
        mono(0, 1, self.u1.clone())
            .add(&mono(0, -1, self.u2.clone()))
            .add(&mono(1, -1, self.v1.clone()))
            .add(&mono(-1, 1, self.v2.clone()))
            .add(&Poly::constant(self.w.clone()))
    }
}

const K3_TEMPLATE: [(i64, i64); 5] = [(1, 0), (-1, 0), (1, -1), (-1, 1), (0, 0)];
const K4_TEMPLATE: [(i64, i64); 5] = [(0, 1), (0, -1), (1, -1), (-1, 1), (0, 0)];

fn check_template(p: &Poly, template: &[(i64, i64)], which: &str) -> Result<()> {
    for (e, c) in p.terms() {
        if !template.contains(&(e.e1, e.e2)) && !c.is_zero() {
            return Err(Error::TemplateMismatch(format!(
                "{which} has unexpected monomial z1^{} z2^{} with coefficient {}",
                e.e1, e.e2, c
            )));
        }
    }
    Ok(())
}

/// Builds the angular-momentum coefficients `K3`, `K4` inside the Laurent
/// ring and matches them against the five-monomial templates.
///
/// `z3 dot(th3)` is eliminated through the velocity closure and `dot(th3)`
/// itself through the symmetrized form
/// `dot(th3) = Re[conj(z3) (G1 z1 dot(th1) + G2 z2 dot(th2))]`,
/// which keeps both coefficient polynomials conjugate-symmetric on the torus.
pub fn momentum_form(dp: &DerivedParams) -> Result<MomentumForm> {
    let p = &dp.params;
    let half = BigRational::new(1.into(), 2.into());
    let s = p.p3.scale(&p.r3);

    let z3 = mono(1, 0, Gq::real(dp.g1.clone()))
        .add(&mono(0, 1, Gq::real(dp.g2.clone())))
        .add(&real_const(&dp.g3));
    let z3b = z3.conj_on_torus();

    // u = l1 z1 + r3 p3 z3 ; v = u_dot with z3*dot(th3) eliminated
    let u = mono(1, 0, Gq::real(p.l1.clone())).add(&z3.scale(&s));
    let ub = u.conj_on_torus();
    let v1 = mono(1, 0, Gq::real(p.l1.clone()).add(&s.scale(&dp.g1)));
    let v2 = mono(0, 1, s.scale(&dp.g2));
    let v1b = v1.conj_on_torus();
    let v2b = v2.conj_on_torus();

    let m3_half = Gq::real(&p.m3 * &half);
    let i3_g1_half = Gq::real(&p.i3 * &dp.g1 * &half);
    let i3_g2_half = Gq::real(&p.i3 * &dp.g2 * &half);
    let z1 = Poly::z1();
    let z2 = Poly::z2();
    let z1_inv = z1.conj_on_torus();
    let z2_inv = z2.conj_on_torus();

    let k3 = real_const(&dp.j1)
        .add(&ub.mul(&v1).add(&u.mul(&v1b)).scale(&m3_half))
        .add(&z3b.mul(&z1).add(&z3.mul(&z1_inv)).scale(&i3_g1_half));

    let m2dr2_half = Gq::real(&p.m2 * &p.d * &p.r2 * &half);
    let h2_swing = mono(0, 1, p.p2.clone())
        .add(&mono(0, -1, p.p2.conj()))
        .scale(&m2dr2_half);
    let k4 = real_const(&dp.j2)
        .add(&h2_swing)
        .add(&ub.mul(&v2).add(&u.mul(&v2b)).scale(&m3_half))
        .add(&z3b.mul(&z2).add(&z3.mul(&z2_inv)).scale(&i3_g2_half));

    check_template(&k3, &K3_TEMPLATE, "K3")?;
    check_template(&k4, &K4_TEMPLATE, "K4")?;

    Ok(MomentumForm {
        a1: k3.coeff(Exponent::new(1, 0)),
        a2: k3.coeff(Exponent::new(-1, 0)),
        b1: k3.coeff(Exponent::new(1, -1)),
        b2: k3.coeff(Exponent::new(-1, 1)),
        c: k3.coeff(Exponent::new(0, 0)),
        u1: k4.coeff(Exponent::new(0, 1)),
        u2: k4.coeff(Exponent::new(0, -1)),
        v1: k4.coeff(Exponent::new(1, -1)),
        v2: k4.coeff(Exponent::new(-1, 1)),
        w: k4.coeff(Exponent::new(0, 0)),
    })
}

/// `K = K1 K4 - K2 K3`, purely imaginary on the torus.
pub fn dynamic_determinant(dp: &DerivedParams) -> Result<Poly> {
    let (k1, k2) = velocity_coefficients(dp);
    let mf = momentum_form(dp)?;
    Ok(k1.mul(&mf.k4_poly()).sub(&k2.mul(&mf.k3_poly())))
}

/// Ready-made parameter sets.
pub mod presets {
    use super::*;
    use crate::coeff::rational_from_ints as rat;

    /// The dynamically balanced case II-A mechanism with `l = 1`, `d = 4`
    /// and `m1 = 3`: masses `(3, 1, 2)`, `r = (1/2, 1/2, 1)`,
    /// `p = (-1, -1, 1)`, `I = (9/4, 15/4, 3/2)`.
    pub fn balanced_case_iia() -> DesignParams {
        DesignParams {
            l1: rat(1, 1),
            l2: rat(1, 1),
            l3: rat(4, 1),
            d: rat(4, 1),
            m1: rat(3, 1),
            m2: rat(1, 1),
            m3: rat(2, 1),
            r1: rat(1, 2),
            r2: rat(1, 2),
            r3: rat(1, 1),
            p1: Gq::from_ints(-1, 0),
            p2: Gq::from_ints(-1, 0),
            p3: Gq::from_ints(1, 0),
            i1: rat(9, 4),
            i2: rat(15, 4),
            i3: rat(3, 2),
        }
    }
}
