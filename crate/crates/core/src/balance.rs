//! Kinematic case classification, mode factorization of the closure curve,
//! balance checking, closed-form residuals and design synthesis.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{Coeff, GaussianRational as Gq};
use crate::division::{toric_divide, DirectionFunctional};
use crate::error::{Error, Result};
use crate::laurent::Exponent;
use crate::mechanism::{
    derive, dynamic_determinant, geometric_constraint, DerivedParams, DesignParams, Poly,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KinematicCase {
    Irreducible,
    CaseII,
    CaseIII,
    CaseIV,
    CaseV,
}

impl fmt::Display for KinematicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KinematicCase::Irreducible => "Irreducible",
            KinematicCase::CaseII => "CaseII",
            KinematicCase::CaseIII => "CaseIII",
            KinematicCase::CaseIV => "CaseIV",
            KinematicCase::CaseV => "CaseV",
        };
        write!(f, "{s}")
    }
}

/// Exact classification by the length equalities.
pub fn classify_case(
    l1: &BigRational,
    l2: &BigRational,
    l3: &BigRational,
    d: &BigRational,
) -> KinematicCase {
    if l1 == l2 && l2 == l3 && l3 == d {
        KinematicCase::CaseV
    } else if l1 == l2 && l3 == d {
        KinematicCase::CaseII
    } else if l1 == d && l2 == l3 {
        KinematicCase::CaseIII
    } else if l2 == d && l1 == l3 {
        KinematicCase::CaseIV
    } else {
        KinematicCase::Irreducible
    }
}

/// Float classification with a relative tolerance. Case structure is a
/// measure-zero stratification, so this is discontinuous by nature.
pub fn classify_case_approx(l1: f64, l2: f64, l3: f64, d: f64, tol: f64) -> KinematicCase {
    let eq = |a: f64, b: f64| (a - b).abs() <= tol * (a.abs() + b.abs()).max(1.0);
    if eq(l1, l2) && eq(l2, l3) && eq(l3, d) {
        KinematicCase::CaseV
    } else if eq(l1, l2) && eq(l3, d) {
        KinematicCase::CaseII
    } else if eq(l1, d) && eq(l2, l3) {
        KinematicCase::CaseIII
    } else if eq(l2, d) && eq(l1, l3) {
        KinematicCase::CaseIV
    } else {
        KinematicCase::Irreducible
    }
}

/// One irreducible component of the closure curve `G = 0`.
#[derive(Clone, Debug)]
pub struct ModeComponent {
    pub label: String,
    pub constraint: String,
    pub factor: Poly,
    /// A rational configuration lying on this component, used to pin the
    /// free constant of the static constraint.
    pub reference: (Gq, Gq),
}

fn lin(a: (i64, i64, i64), b: (i64, i64, i64)) -> Poly {
    Poly::from_terms([
        (a.0, a.1, Gq::from_ints(a.2, 0)),
        (b.0, b.1, Gq::from_ints(b.2, 0)),
    ])
}

fn candidate_factors() -> Vec<(Poly, &'static str, (Gq, Gq))> {
    let one = Gq::one();
    let neg_one = Gq::from_ints(-1, 0);
    vec![
        (
            lin((1, 0, 1), (0, 1, -1)),
            "z1 = z2",
            (one.clone(), one.clone()),
        ),
        (
            lin((1, 0, 1), (0, 0, -1)),
            "z1 = 1",
            (one.clone(), one.clone()),
        ),
        (
            lin((0, 1, 1), (0, 0, -1)),
            "z2 = 1",
            (one.clone(), one.clone()),
        ),
        (
            lin((0, 1, 1), (0, 0, 1)),
            "z2 = -1",
            (one.clone(), neg_one),
        ),
    ]
}

/// Linear factors of `G` found by toric division over the candidate set
/// `{z1 - z2, z1 - 1, z2 - 1, z2 + 1}`, each with its cofactor peeled off.
pub fn mode_factors(case: KinematicCase, dp: &DerivedParams) -> Result<Vec<ModeComponent>> {
    let g = geometric_constraint(dp);
    let h = DirectionFunctional::default();
    if case == KinematicCase::Irreducible {
        return Ok(vec![ModeComponent {
            label: "I".into(),
            constraint: "G(z1,z2) = 0".into(),
            factor: g,
            reference: (Gq::one(), Gq::one()),
        }]);
    }

    let mut remaining = g.clone();
    let mut found: Vec<(Poly, &'static str, (Gq, Gq))> = Vec::new();
    for (factor, constraint, reference) in candidate_factors() {
        let qr = toric_divide(&remaining, &factor, h)?;
        if qr.remainder.is_zero() {
            remaining = qr.quotient;
            found.push((factor, constraint, reference));
        }
    }

    let expected: &[&str] = match case {
        KinematicCase::CaseII => &["z1 = z2"],
        KinematicCase::CaseIII => &["z1 = 1"],
        KinematicCase::CaseIV => &["z2 = -1"],
        KinematicCase::CaseV => &["z1 = z2", "z1 = 1", "z2 = -1"],
        KinematicCase::Irreducible => unreachable!(),
    };
    let found_names: Vec<&str> = found.iter().map(|(_, c, _)| *c).collect();
    if found_names != expected {
        return Err(Error::FactorSearchFailed);
    }

    let mut components = Vec::new();
    match case {
        KinematicCase::CaseII | KinematicCase::CaseIII | KinematicCase::CaseIV => {
            let (factor, constraint, reference) = found.into_iter().next().unwrap();
            let prefix = match case {
                KinematicCase::CaseII => "II",
                KinematicCase::CaseIII => "III",
                _ => "IV",
            };
            let a_constraint = match case {
                KinematicCase::CaseII => "z1 != z2",
                KinematicCase::CaseIII => "z1 != 1",
                _ => "z2 != -1",
            };
            components.push(ModeComponent {
                label: format!("{prefix}-A"),
                constraint: a_constraint.into(),
                factor: remaining,
                reference: reference.clone(),
            });
            components.push(ModeComponent {
                label: format!("{prefix}-B"),
                constraint: constraint.into(),
                factor,
                reference,
            });
        }
        KinematicCase::CaseV => {
            // the cofactor after peeling all three lines is a unit
            if remaining.num_terms() != 1 {
                return Err(Error::FactorSearchFailed);
            }
            for (factor, constraint, reference) in found {
                let label = match constraint {
                    "z2 = -1" => "V-A",
                    "z1 = 1" => "V-B",
                    _ => "V-C",
                };
                components.push(ModeComponent {
                    label: label.into(),
                    constraint: constraint.into(),
                    factor,
                    reference,
                });
            }
            components.sort_by(|a, b| a.label.cmp(&b.label));
        }
        KinematicCase::Irreducible => unreachable!(),
    }
    Ok(components)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ResidualKind {
    /// Must vanish exactly.
    Equality,
    /// Must be strictly positive.
    Slack,
    /// Impossibility witness; a positive value certifies the negative verdict.
    Witness,
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub name: String,
    pub value: BigRational,
    pub kind: ResidualKind,
}

impl Residual {
    pub fn satisfied(&self) -> bool {
        match self.kind {
            ResidualKind::Equality => self.value.is_zero(),
            ResidualKind::Slack => self.value.is_positive(),
            ResidualKind::Witness => true,
        }
    }
}

fn eq_res(name: &str, value: BigRational) -> Residual {
    Residual {
        name: name.into(),
        value,
        kind: ResidualKind::Equality,
    }
}

fn slack(name: &str, value: BigRational) -> Residual {
    Residual {
        name: name.into(),
        value,
        kind: ResidualKind::Slack,
    }
}

fn witness(name: &str, value: BigRational) -> Residual {
    Residual {
        name: name.into(),
        value,
        kind: ResidualKind::Witness,
    }
}

/// Closed-form balancing residuals for the case at hand: equality defects,
/// inequality slacks and the impossibility witnesses of the modes that can
/// never balance.
pub fn closed_form_residuals(dp: &DerivedParams) -> Vec<Residual> {
    let p = &dp.params;
    let case = classify_case(&p.l1, &p.l2, &p.l3, &p.d);
    let mut out = Vec::new();
    let l2sq = &p.l2 * &p.l2;
    let l3sq = &p.l3 * &p.l3;
    let mode_b_witness = &dp.j1 + &l2sq * &p.m3 + &dp.j2;
    let irr_witness = &l2sq * &dp.j3 + &l3sq * &dp.j2;

    match case {
        KinematicCase::CaseII => {
            let l = p.l1.clone();
            let d = p.d.clone();
            let dsq = &d * &d;
            let lsq = &l * &l;
            for (name, q) in [("q1", &dp.q1), ("q2", &dp.q2), ("q3", &dp.q3)] {
                out.push(eq_res(&format!("Im({name})"), q.im.clone()));
            }
            let q3 = dp.q3.re.clone();
            out.push(slack("q3", q3.clone()));
            out.push(eq_res(
                "q1 - (l/d q3 - l m3)",
                &dp.q1.re - (&l / &d * &q3 - &l * &p.m3),
            ));
            out.push(eq_res("q2 + l/d q3", &dp.q2.re + &l / &d * &q3));
            out.push(eq_res(
                "J1 - ((d^2+l^2)/d q3 - J3 - l^2 m3)",
                &dp.j1 - ((&dsq + &lsq) / &d * &q3 - &dp.j3 - &lsq * &p.m3),
            ));
            out.push(eq_res(
                "J2 - ((d^2-l^2)/d q3 - J3)",
                &dp.j2 - ((&dsq - &lsq) / &d * &q3 - &dp.j3),
            ));
            for (i, (m, j, q)) in [
                (&p.m1, &dp.j1, &dp.q1),
                (&p.m2, &dp.j2, &dp.q2),
                (&p.m3, &dp.j3, &dp.q3),
            ]
            .into_iter()
            .enumerate()
            {
                out.push(slack(&format!("m{}", i + 1), (*m).clone()));
                out.push(slack(
                    &format!("J{0} m{0} - |q{0}|^2", i + 1),
                    j * m - q.norm_sqr(),
                ));
            }
            out.push(witness("mode B: J1 + l2^2 m3 + J2", mode_b_witness));
        }
        KinematicCase::CaseIV => {
            let l = p.l1.clone();
            let d = p.d.clone();
            let dsq = &d * &d;
            let lsq = &l * &l;
            for (name, q) in [("q1", &dp.q1), ("q2", &dp.q2), ("q3", &dp.q3)] {
                out.push(eq_res(&format!("Im({name})"), q.im.clone()));
            }
            let q3 = dp.q3.re.clone();
            out.push(slack("-q3", -q3.clone()));
            out.push(eq_res("q1 - (q3 - l m3)", &dp.q1.re - (&q3 - &l * &p.m3)));
            out.push(eq_res("q2 + d/l q3", &dp.q2.re + &d / &l * &q3));
            out.push(eq_res(
                "J1 - (J3 - l^2 m3)",
                &dp.j1 - (&dp.j3 - &lsq * &p.m3),
            ));
            out.push(eq_res(
                "J2 - ((l^2-d^2)/l q3 - J3)",
                &dp.j2 - ((&lsq - &dsq) / &l * &q3 - &dp.j3),
            ));
            for (i, (m, j, q)) in [
                (&p.m1, &dp.j1, &dp.q1),
                (&p.m2, &dp.j2, &dp.q2),
                (&p.m3, &dp.j3, &dp.q3),
            ]
            .into_iter()
            .enumerate()
            {
                out.push(slack(&format!("m{}", i + 1), (*m).clone()));
                out.push(slack(
                    &format!("J{0} m{0} - |q{0}|^2", i + 1),
                    j * m - q.norm_sqr(),
                ));
            }
            out.push(witness("mode B: J1 + l2^2 m3 + J2", mode_b_witness));
        }
        KinematicCase::CaseIII => {
            let two = BigRational::from_integer(BigInt::from(2));
            out.push(slack(
                "d^2 - 2 l3^2 (mode A feasibility)",
                &p.d * &p.d - two * &l3sq,
            ));
            out.push(witness("mode B: l2^2 J3 + l3^2 J2", irr_witness));
        }
        KinematicCase::CaseV => {
            out.push(witness("z1 = z2 mode: J1 + l2^2 m3 + J2", mode_b_witness));
            out.push(witness("z1 = 1 mode: l2^2 J3 + l3^2 J2", irr_witness));
        }
        KinematicCase::Irreducible => {
            out.push(eq_res("Re(F1)", dp.f1.re.clone()));
            out.push(eq_res("Im(F1)", dp.f1.im.clone()));
            out.push(eq_res("Re(F2)", dp.f2.re.clone()));
            out.push(eq_res("Im(F2)", dp.f2.im.clone()));
            out.push(witness("l2^2 J3 + l3^2 J2", irr_witness));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ModeVerdict {
    pub label: String,
    pub constraint: String,
    pub static_ok: bool,
    pub dynamic_ok: bool,
    pub static_witness: Poly,
    pub dynamic_witness: Poly,
}

#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub case: KinematicCase,
    pub modes: Vec<ModeVerdict>,
    pub residuals: Vec<Residual>,
    pub notes: Vec<String>,
    pub balanced: bool,
}

impl BalanceReport {
    pub fn balanced_modes(&self) -> Vec<&str> {
        self.modes
            .iter()
            .filter(|m| m.dynamic_ok)
            .map(|m| m.label.as_str())
            .collect()
    }
}

/// Decides static and dynamic balance per kinematic mode by toric division
/// of `F` and `K` by each mode component.
pub fn check_balance(params: &DesignParams, h: DirectionFunctional) -> Result<BalanceReport> {
    let dp = derive(params)?;
    let case = classify_case(&params.l1, &params.l2, &params.l3, &params.d);
    let components = mode_factors(case, &dp)?;
    let k = dynamic_determinant(&dp)?;

    let mut modes = Vec::new();
    for comp in &components {
        // F with its free constant pinned on this component's reference
        // configuration: F1 (z1 - zeta1) + F2 (z2 - zeta2).
        let (z1_ref, z2_ref) = &comp.reference;
        let f_mode = Poly::monomial(Exponent::new(1, 0), dp.f1.clone())
            .add(&Poly::constant(dp.f1.mul(z1_ref).neg()))
            .add(&Poly::monomial(Exponent::new(0, 1), dp.f2.clone()))
            .add(&Poly::constant(dp.f2.mul(z2_ref).neg()));
        let static_witness = toric_divide(&f_mode, &comp.factor, h)?.remainder;
        let static_ok = static_witness.is_zero();
        let dynamic_witness = toric_divide(&k, &comp.factor, h)?.remainder;
        let dynamic_ok = static_ok && dynamic_witness.is_zero();
        modes.push(ModeVerdict {
            label: comp.label.clone(),
            constraint: comp.constraint.clone(),
            static_ok,
            dynamic_ok,
            static_witness,
            dynamic_witness,
        });
    }

    let mut notes = Vec::new();
    if case == KinematicCase::CaseIII {
        notes.push(
            "case III-A is handled by symmetry with case IV-A; the source material is \
             ambiguous about which case carries the derivation"
                .into(),
        );
    }

    let balanced = modes.iter().any(|m| m.dynamic_ok);
    Ok(BalanceReport {
        case,
        modes,
        residuals: closed_form_residuals(&dp),
        notes,
        balanced,
    })
}

/// Explicit or seed-driven choices for the free synthesis parameters.
#[derive(Clone, Debug, Default)]
pub struct SynthesisChoices {
    pub q3: Option<BigRational>,
    pub j3: Option<BigRational>,
    pub m3: Option<BigRational>,
    pub m1: Option<BigRational>,
    pub m2: Option<BigRational>,
}

struct SeededRational {
    state: u64,
}

impl SeededRational {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        // splitmix64
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Fraction in [-1/2, 1/2) with denominator 2^16.
    fn jitter(&mut self) -> BigRational {
        let v = (self.next_u64() % 65536) as i64 - 32768;
        BigRational::new(BigInt::from(v), BigInt::from(65536))
    }

    /// Midpoint of the open interval, perturbed by at most half the
    /// half-width; always strictly interior.
    fn pick_in(&mut self, lo: &BigRational, hi: &BigRational) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        let mid = (lo + hi) / &two;
        let half = (hi - lo) / &two;
        mid + half * self.jitter()
    }
}

fn check_open_interval(
    name: &str,
    value: &BigRational,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<()> {
    if value <= lo || value >= hi {
        return Err(Error::Infeasible(format!(
            "{name} = {value} must lie strictly inside ({lo}, {hi})"
        )));
    }
    Ok(())
}

fn require_feasible_lengths(l: &BigRational, d: &BigRational) -> Result<()> {
    if !l.is_positive() || !d.is_positive() {
        return Err(Error::Infeasible("lengths must be positive".into()));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    if d * d < &two * l * l {
        return Err(Error::Infeasible(format!(
            "dynamic balancing requires d >= sqrt(2) l, i.e. d^2 >= 2 l^2; got d^2 = {} < {}",
            d * d,
            two * l * l
        )));
    }
    Ok(())
}

/// Default mass when none is requested: 1 if the lower bound `q^2/J` allows
/// it, otherwise twice the lower bound.
fn default_mass(q: &BigRational, j: &BigRational) -> BigRational {
    let one = BigRational::one();
    if j.is_zero() {
        return one;
    }
    let lower = q * q / j;
    if lower < one {
        one
    } else {
        BigRational::from_integer(BigInt::from(2)) * lower
    }
}

/// Realizes `(q, J, m)` as `(r, p, I)` with `p = sign(q)`, `r = |q|/m`,
/// `I = J - q^2/m`.
fn realize(q: &BigRational, j: &BigRational, m: &BigRational) -> Result<(BigRational, Gq, BigRational)> {
    if !m.is_positive() {
        return Err(Error::Infeasible(format!("mass {m} must be positive")));
    }
    if !j.is_zero() && j * m <= q * q {
        return Err(Error::Infeasible(format!(
            "need J m > q^2 for a physical realization (J = {j}, m = {m}, q = {q})"
        )));
    }
    let p = if q.is_negative() {
        Gq::from_ints(-1, 0)
    } else {
        Gq::one()
    };
    let r = if q.is_zero() { BigRational::zero() } else { q.abs() / m };
    let i = j - q * q / m;
    Ok((r, p, i))
}

fn assemble(
    lengths: (BigRational, BigRational, BigRational, BigRational),
    q: [&BigRational; 3],
    j: [&BigRational; 3],
    m: [&BigRational; 3],
) -> Result<DesignParams> {
    let (r1, p1, i1) = realize(q[0], j[0], m[0])?;
    let (r2, p2, i2) = realize(q[1], j[1], m[1])?;
    let (r3, p3, i3) = realize(q[2], j[2], m[2])?;
    let params = DesignParams {
        l1: lengths.0,
        l2: lengths.1,
        l3: lengths.2,
        d: lengths.3,
        m1: m[0].clone(),
        m2: m[1].clone(),
        m3: m[2].clone(),
        r1,
        r2,
        r3,
        p1,
        p2,
        p3,
        i1,
        i2,
        i3,
    };
    params.validate()?;
    Ok(params)
}

/// Synthesizes a dynamically balanced case II-A design (`l1 = l2 = l`,
/// `l3 = d`). Requires `d^2 >= 2 l^2`.
pub fn synthesize_case_iia(
    l: &BigRational,
    d: &BigRational,
    choices: &SynthesisChoices,
    seed: u64,
) -> Result<DesignParams> {
    require_feasible_lengths(l, d)?;
    let mut rng = SeededRational::new(seed);
    let one = BigRational::one();

    let q3 = match &choices.q3 {
        Some(v) => {
            if !v.is_positive() {
                return Err(Error::Infeasible(format!("case II-A requires q3 > 0, got {v}")));
            }
            v.clone()
        }
        None => &one + rng.jitter(),
    };

    let dsq = d * d;
    let lsq = l * l;
    let j3_lo = &lsq / d * &q3;
    let j3_hi = (&dsq - &lsq) / d * &q3;
    if j3_lo >= j3_hi {
        return Err(Error::Infeasible(format!(
            "the J3 interval ({j3_lo}, {j3_hi}) is empty; d must exceed sqrt(2) l strictly"
        )));
    }
    let j3 = match &choices.j3 {
        Some(v) => {
            check_open_interval("J3", v, &j3_lo, &j3_hi)?;
            v.clone()
        }
        None => rng.pick_in(&j3_lo, &j3_hi),
    };

    let m3_lo = &q3 * &q3 / &j3;
    let m3_hi = ((&dsq + &lsq) / d * &q3 - &j3) / &lsq;
    if m3_lo >= m3_hi {
        return Err(Error::Infeasible(format!(
            "the m3 interval ({m3_lo}, {m3_hi}) is empty; retry with a different q3"
        )));
    }
    let m3 = match &choices.m3 {
        Some(v) => {
            check_open_interval("m3", v, &m3_lo, &m3_hi)?;
            v.clone()
        }
        None => rng.pick_in(&m3_lo, &m3_hi),
    };

    let q1 = l / d * &q3 - l * &m3;
    let q2 = -(l / d * &q3);
    let j1 = (&dsq + &lsq) / d * &q3 - &j3 - &lsq * &m3;
    let j2 = (&dsq - &lsq) / d * &q3 - &j3;

    let m1 = choices.m1.clone().unwrap_or_else(|| default_mass(&q1, &j1));
    let m2 = choices.m2.clone().unwrap_or_else(|| default_mass(&q2, &j2));

    assemble(
        (l.clone(), l.clone(), d.clone(), d.clone()),
        [&q1, &q2, &q3],
        [&j1, &j2, &j3],
        [&m1, &m2, &m3],
    )
}

/// Synthesizes a dynamically balanced case IV-A design (`l1 = l3 = l`,
/// `l2 = d`). Requires `d^2 >= 2 l^2`.
pub fn synthesize_case_iva(
    l: &BigRational,
    d: &BigRational,
    choices: &SynthesisChoices,
    seed: u64,
) -> Result<DesignParams> {
    require_feasible_lengths(l, d)?;
    let mut rng = SeededRational::new(seed);
    let one = BigRational::one();

    let q3 = match &choices.q3 {
        Some(v) => {
            if !v.is_negative() {
                return Err(Error::Infeasible(format!("case IV-A requires q3 < 0, got {v}")));
            }
            v.clone()
        }
        None => -(&one + rng.jitter()),
    };

    let dsq = d * d;
    let lsq = l * l;
    let abs_q3 = q3.abs();
    let j3_lo = l * &abs_q3;
    let j3_hi = (&dsq - &lsq) / l * &abs_q3;
    if j3_lo >= j3_hi {
        return Err(Error::Infeasible(format!(
            "the J3 interval ({j3_lo}, {j3_hi}) is empty; d must exceed sqrt(2) l strictly"
        )));
    }
    let j3 = match &choices.j3 {
        Some(v) => {
            check_open_interval("J3", v, &j3_lo, &j3_hi)?;
            v.clone()
        }
        None => rng.pick_in(&j3_lo, &j3_hi),
    };

    let m3_lo = &q3 * &q3 / &j3;
    let m3_hi = &j3 / &lsq;
    if m3_lo >= m3_hi {
        return Err(Error::Infeasible(format!(
            "the m3 interval ({m3_lo}, {m3_hi}) is empty; retry with a different q3"
        )));
    }
    let m3 = match &choices.m3 {
        Some(v) => {
            check_open_interval("m3", v, &m3_lo, &m3_hi)?;
            v.clone()
        }
        None => rng.pick_in(&m3_lo, &m3_hi),
    };

    let q1 = &q3 - l * &m3;
    let q2 = -(d / l * &q3);
    let j1 = &j3 - &lsq * &m3;
    let j2 = (&lsq - &dsq) / l * &q3 - &j3;

    let m1 = choices.m1.clone().unwrap_or_else(|| default_mass(&q1, &j1));
    let m2 = choices.m2.clone().unwrap_or_else(|| default_mass(&q2, &j2));

    assemble(
        (l.clone(), d.clone(), l.clone(), d.clone()),
        [&q1, &q2, &q3],
        [&j1, &j2, &j3],
        [&m1, &m2, &m3],
    )
}
