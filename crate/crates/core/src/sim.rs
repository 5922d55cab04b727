//! Floating-point trajectory simulation: closure solving, branch tracking
//! and numerical verification of momentum conservation.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::balance::{classify_case, KinematicCase};
use crate::error::{Error, Result};
use crate::mechanism::{derive, DerivedParams, DesignParams};

pub const CLOSURE_TOL: f64 = 1e-10;
pub const BALANCE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Branch {
    A,
    B,
}

impl std::str::FromStr for Branch {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Branch::A),
            "B" | "b" => Ok(Branch::B),
            other => Err(format!("unknown branch '{other}', expected A or B")),
        }
    }
}

/// Floating image of the derived parameters.
#[derive(Clone, Debug)]
pub struct NumericParams {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub d: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub p1: Complex64,
    pub p2: Complex64,
    pub p3: Complex64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub total_mass: f64,
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
    pub case: KinematicCase,
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl NumericParams {
    pub fn from_derived(dp: &DerivedParams) -> Self {
        let p = &dp.params;
        let gq = |g: &crate::coeff::GaussianRational| g.to_c64();
        use crate::coeff::Coeff;
        NumericParams {
            l1: to_f64(&p.l1),
            l2: to_f64(&p.l2),
            l3: to_f64(&p.l3),
            d: to_f64(&p.d),
            m1: to_f64(&p.m1),
            m2: to_f64(&p.m2),
            m3: to_f64(&p.m3),
            r1: to_f64(&p.r1),
            r2: to_f64(&p.r2),
            r3: to_f64(&p.r3),
            p1: gq(&p.p1),
            p2: gq(&p.p2),
            p3: gq(&p.p3),
            i1: to_f64(&p.i1),
            i2: to_f64(&p.i2),
            i3: to_f64(&p.i3),
            g1: to_f64(&dp.g1),
            g2: to_f64(&dp.g2),
            g3: to_f64(&dp.g3),
            total_mass: to_f64(&dp.total_mass),
            j1: to_f64(&dp.j1),
            j2: to_f64(&dp.j2),
            j3: to_f64(&dp.j3),
            f1: gq(&dp.f1),
            f2: gq(&dp.f2),
            f3: gq(&dp.f3),
            case: classify_case(&p.l1, &p.l2, &p.l3, &p.d),
        }
    }
}

/// A single configuration on the closure curve.
#[derive(Clone, Copy, Debug)]
pub struct Configuration {
    pub z1: Complex64,
    pub z2: Complex64,
    pub z3: Complex64,
    pub closure_residual: f64,
}

fn unit(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Both unit-circle roots of the closure quadratic at the given `z1`, or an
/// error when the input angle is outside the movable range.
pub fn closure_roots(np: &NumericParams, z1: Complex64) -> Result<[Complex64; 2]> {
    // conj(A) B z2^2 + (|A|^2 + B^2 - 1) z2 + A B = 0 with
    // A = G1 z1 + G3, B = G2.
    let a = np.g1 * z1 + np.g3;
    let b = np.g2;
    let qa = a.conj() * b;
    let qb = a.norm_sqr() + b * b - 1.0;
    let qc = a * b;
    if qa.norm() < 1e-14 {
        return Err(Error::Singular(
            "degenerate closure quadratic (A = 0 or G2 = 0)".into(),
        ));
    }
    let disc = qb * qb - 4.0 * (qa * qc).re; // qa*qc = |A|^2 B^2 is real
    if disc > CLOSURE_TOL {
        return Err(Error::Singular(format!(
            "no unit-circle solution at z1 = {z1}; the linkage cannot close here \
             (discriminant {disc:.3e})"
        )));
    }
    let root_disc = Complex64::new(0.0, (-disc).max(0.0).sqrt());
    let r1 = (-qb + root_disc) / (2.0 * qa);
    let r2 = (-qb - root_disc) / (2.0 * qa);
    Ok([r1, r2])
}

fn z3_of(np: &NumericParams, z1: Complex64, z2: Complex64) -> Complex64 {
    np.g1 * z1 + np.g2 * z2 + np.g3
}

fn closure_residual(np: &NumericParams, z1: Complex64, z2: Complex64) -> f64 {
    let z3 = z3_of(np, z1, z2);
    let r1 = (z3.norm() - 1.0).abs();
    let r2 = (z1.norm() - 1.0).abs();
    let r3 = (z2.norm() - 1.0).abs();
    r1.max(r2).max(r3)
}

/// Solves the closure for `z2` at angle `theta1`.
///
/// In the reduced cases one component of the closure curve is a known line
/// (`z2 = z1` for the parallelogram-type modes, `z2 = -1` for the
/// antiparallelogram case), so the branch is resolved per sample against
/// that closed form; the two branches meet at the fold configurations and
/// pure continuity tracking would flip there. In the irreducible case the
/// roots never collide away from the workspace boundary, so the root
/// closest to `prev` is taken; without a previous sample branch B is the
/// root nearer `z1` and branch A the other.
pub fn solve_closure(
    np: &NumericParams,
    theta1: f64,
    prev: Option<Complex64>,
    branch: Branch,
) -> Result<Configuration> {
    let z1 = unit(theta1);
    let roots = closure_roots(np, z1)?;
    let z2 = match np.case {
        KinematicCase::CaseII => pick(roots, z1, branch),
        KinematicCase::CaseIV => pick(roots, Complex64::new(-1.0, 0.0), branch),
        KinematicCase::CaseV => match branch {
            // both components are lines; address them directly
            Branch::B => pick(roots, z1, Branch::B),
            Branch::A => pick(roots, Complex64::new(-1.0, 0.0), Branch::B),
        },
        KinematicCase::CaseIII | KinematicCase::Irreducible => match prev {
            Some(p) => pick(roots, p, Branch::B),
            None => pick(roots, z1, branch),
        },
    };
    let z3 = z3_of(np, z1, z2);
    Ok(Configuration {
        z1,
        z2,
        z3,
        closure_residual: closure_residual(np, z1, z2),
    })
}

/// Branch B is the root nearer the target, branch A the farther one.
fn pick(roots: [Complex64; 2], target: Complex64, branch: Branch) -> Complex64 {
    let (near, far) = if (roots[0] - target).norm() <= (roots[1] - target).norm() {
        (roots[0], roots[1])
    } else {
        (roots[1], roots[0])
    };
    match branch {
        Branch::B => near,
        Branch::A => far,
    }
}

/// Velocity ratio `dot(th2)/dot(th1) = -K1/K2` at a configuration, derived
/// from differentiating the closure.
pub fn velocity_ratio(np: &NumericParams, c: &Configuration) -> Result<f64> {
    let (z1, z2) = (c.z1, c.z2);
    let g12 = np.g1 * np.g2;
    let g13 = np.g1 * np.g3;
    let g23 = np.g2 * np.g3;
    let k1 = g12 * (z1 / z2 - z2 / z1) + g13 * (z1 - 1.0 / z1);
    let k2 = g12 * (z2 / z1 - z1 / z2) + g23 * (z2 - 1.0 / z2);
    // both are purely imaginary on the torus
    let (k1, k2) = (k1.im, k2.im);
    if k2.abs() < 1e-12 {
        return Err(Error::Singular(format!(
            "uncertainty configuration at z1 = {z1}, z2 = {z2}: K2 vanishes"
        )));
    }
    Ok(-k1 / k2)
}

/// `dot(th3)/dot(th1)` via the symmetric elimination of `z3`.
fn theta3_rate(np: &NumericParams, c: &Configuration, th2_rate: f64) -> f64 {
    let v = np.g1 * c.z1 * Complex64::new(0.0, 1.0)
        + np.g2 * c.z2 * Complex64::new(0.0, th2_rate);
    (c.z3.conj() * v).im
}

/// One trajectory sample with momentum bookkeeping. Rates are per unit of
/// `theta1`, i.e. the crank rate is normalized out.
#[derive(Clone, Debug)]
pub struct Sample {
    pub t: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub config: Configuration,
    pub th2_rate: f64,
    pub th3_rate: f64,
    /// Total centre-of-mass position times total mass.
    pub com: Complex64,
    /// Angular momentum from the closed-form coefficients.
    pub h_form: f64,
    /// Angular momentum from first principles (link-by-link sum).
    pub h_direct: f64,
}

/// Crank-rate profile along the trajectory.
#[derive(Clone, Copy, Debug)]
pub enum RateProfile {
    Constant,
    /// Deterministic pseudo-random positive rate per sample, seeded.
    Random(u64),
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn momentum_coeffs(np: &NumericParams, c: &Configuration) -> (f64, f64) {
    // floating image of the exact five-monomial momentum coefficients
    let s = np.r3 * np.p3;
    let u = np.l1 * c.z1 + s * c.z3;
    let w1 = (np.l1 + s * np.g1) * c.z1;
    let w2 = s * np.g2 * c.z2;
    let k3 = np.j1
        + np.m3 * (u.conj() * w1).re
        + np.i3 * np.g1 * (c.z3.conj() * c.z1).re;
    let k4 = np.j2
        + np.m2 * np.d * np.r2 * (np.p2 * c.z2).re
        + np.m3 * (u.conj() * w2).re
        + np.i3 * np.g2 * (c.z3.conj() * c.z2).re;
    (k3, k4)
}

fn h_direct(np: &NumericParams, c: &Configuration, th1_rate: f64, th2_rate: f64, th3_rate: f64) -> f64 {
    // link 1: rotation about the fixed pivot
    let h1 = np.j1 * th1_rate;
    // link 2: rotation about the second fixed pivot at d
    let pos2 = Complex64::new(np.d, 0.0) + np.r2 * np.p2 * c.z2;
    let vel2 = np.r2 * np.p2 * c.z2 * Complex64::new(0.0, th2_rate);
    let h2 = np.m2 * (pos2.conj() * vel2).im + np.i2 * th2_rate;
    // link 3: carried by the tip of link 1
    let pos3 = np.l1 * c.z1 + np.r3 * np.p3 * c.z3;
    let vel3 = np.l1 * c.z1 * Complex64::new(0.0, th1_rate)
        + np.r3 * np.p3 * c.z3 * Complex64::new(0.0, th3_rate);
    let h3 = np.m3 * (pos3.conj() * vel3).im + np.i3 * th3_rate;
    h1 + h2 + h3
}

fn com(np: &NumericParams, c: &Configuration) -> Complex64 {
    let s1 = np.m1 * np.r1 * np.p1 * c.z1;
    let s2 = np.m2 * (Complex64::new(np.d, 0.0) + np.r2 * np.p2 * c.z2);
    let s3 = np.m3 * (np.l1 * c.z1 + np.r3 * np.p3 * c.z3);
    s1 + s2 + s3
}

/// Traces one full crank revolution on the requested branch.
///
/// Samples are taken at the midpoints of `samples` equal subintervals of
/// `[0, 2*pi)`, which keeps the trajectory clear of the isolated uncertainty
/// configurations where both velocity coefficients vanish. An error is
/// returned if the branch leaves the movable range (the reduced modes cover
/// the full revolution).
pub fn trajectory(
    params: &DesignParams,
    branch: Branch,
    samples: usize,
    profile: RateProfile,
) -> Result<Vec<Sample>> {
    if samples == 0 {
        return Err(Error::Validation(vec!["samples must be positive".into()]));
    }
    let dp = derive(params)?;
    let np = NumericParams::from_derived(&dp);
    let step = std::f64::consts::TAU / samples as f64;
    let mut rng_state = match profile {
        RateProfile::Random(seed) => seed,
        RateProfile::Constant => 0,
    };

    let mut out = Vec::with_capacity(samples);
    let mut prev: Option<Complex64> = None;
    let mut t = 0.0;
    for k in 0..samples {
        let theta1 = (k as f64 + 0.5) * step;
        let config = solve_closure(&np, theta1, prev, branch).map_err(|e| Error::Branch {
            sample: k,
            msg: e.to_string(),
        })?;
        prev = Some(config.z2);

        let th1_rate = match profile {
            RateProfile::Constant => 1.0,
            RateProfile::Random(_) => {
                // positive rate in [1/2, 3/2)
                0.5 + (splitmix64(&mut rng_state) % 4096) as f64 / 4096.0
            }
        };
        t += step / th1_rate;

        let ratio = velocity_ratio(&np, &config).map_err(|e| Error::Branch {
            sample: k,
            msg: e.to_string(),
        })?;
        let th2_rate = ratio * th1_rate;
        let th3_rate = theta3_rate(&np, &config, ratio) * th1_rate;

        let (k3, k4) = momentum_coeffs(&np, &config);
        let h_form = k3 * th1_rate + k4 * th2_rate;
        let h_dir = h_direct(&np, &config, th1_rate, th2_rate, th3_rate);

        out.push(Sample {
            t,
            theta1,
            theta2: config.z2.arg(),
            theta3: config.z3.arg(),
            config,
            th2_rate,
            th3_rate,
            com: com(&np, &config),
            h_form,
            h_direct: h_dir,
        });
    }
    Ok(out)
}

/// Summary of a numerically verified trajectory.
#[derive(Clone, Copy, Debug)]
pub struct VerifySummary {
    pub max_closure_residual: f64,
    pub max_com_drift: f64,
    pub max_h_drift: f64,
    pub max_h_cross_error: f64,
    pub balanced: bool,
}

/// Replays the samples and measures centre-of-mass and momentum drift.
pub fn verify_balanced(samples: &[Sample]) -> Result<VerifySummary> {
    if samples.is_empty() {
        return Err(Error::Validation(vec!["no samples to verify".into()]));
    }
    let com0 = samples[0].com;
    let h0 = samples[0].h_form;
    let mut max_closure = 0.0f64;
    let mut max_com = 0.0f64;
    let mut max_h = 0.0f64;
    let mut max_cross = 0.0f64;
    for s in samples {
        max_closure = max_closure.max(s.config.closure_residual);
        max_com = max_com.max((s.com - com0).norm());
        max_h = max_h.max((s.h_form - h0).abs());
        let scale = s.h_form.abs().max(s.h_direct.abs()).max(1.0);
        max_cross = max_cross.max((s.h_form - s.h_direct).abs() / scale);
    }
    let h_scale = h0.abs().max(1.0);
    Ok(VerifySummary {
        max_closure_residual: max_closure,
        max_com_drift: max_com,
        max_h_drift: max_h,
        max_h_cross_error: max_cross,
        balanced: max_com <= BALANCE_TOL && max_h / h_scale <= BALANCE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanism::presets;

    fn np_iia() -> NumericParams {
        NumericParams::from_derived(&derive(&presets::balanced_case_iia()).unwrap())
    }

    #[test]
    fn closure_roots_at_quarter_turn() {
        // l = 1, d = 4, theta1 = pi/2: branch roots are (-8-15i)/17 and z1
        let np = np_iia();
        let z1 = Complex64::new(0.0, 1.0);
        let roots = closure_roots(&np, z1).unwrap();
        let expect = Complex64::new(-8.0 / 17.0, -15.0 / 17.0);
        let hit_a = roots.iter().any(|r| (r - expect).norm() < 1e-12);
        let hit_b = roots.iter().any(|r| (r - z1).norm() < 1e-12);
        assert!(hit_a && hit_b);
    }

    #[test]
    fn branch_seeding_is_stable() {
        let np = np_iia();
        let cb = solve_closure(&np, 0.3, None, Branch::B).unwrap();
        assert!((cb.z2 - cb.z1).norm() < 1e-12);
        let ca = solve_closure(&np, 0.3, None, Branch::A).unwrap();
        assert!((ca.z2 - ca.z1).norm() > 0.1);
        assert!(ca.closure_residual < CLOSURE_TOL);
    }

    #[test]
    fn branch_b_velocity_ratio_is_unity() {
        let np = np_iia();
        let c = solve_closure(&np, 1.1, None, Branch::B).unwrap();
        assert!((velocity_ratio(&np, &c).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn velocity_ratio_matches_finite_difference() {
        let np = np_iia();
        let h = 1e-6;
        for &theta in &[0.4, 1.3, 2.9, 4.0] {
            let c = solve_closure(&np, theta, None, Branch::A).unwrap();
            let ratio = velocity_ratio(&np, &c).unwrap();
            let cm = solve_closure(&np, theta - h, Some(c.z2), Branch::A).unwrap();
            let cp = solve_closure(&np, theta + h, Some(c.z2), Branch::A).unwrap();
            let dtheta2 = (cp.z2 / cm.z2).arg();
            let fd = dtheta2 / (2.0 * h);
            assert!(
                (ratio - fd).abs() < 1e-6,
                "theta = {theta}: ratio {ratio} vs fd {fd}"
            );
        }
    }

    #[test]
    fn balanced_trajectory_conserves_momentum() {
        let p = presets::balanced_case_iia();
        let samples = trajectory(&p, Branch::A, 360, RateProfile::Random(11)).unwrap();
        let summary = verify_balanced(&samples).unwrap();
        assert!(summary.max_closure_residual < CLOSURE_TOL);
        assert!(summary.max_h_cross_error < 1e-9);
        assert!(summary.balanced, "{summary:?}");
        // the balanced branch carries zero total angular momentum
        assert!(samples.iter().all(|s| s.h_form.abs() < 1e-9));
    }

    #[test]
    fn unbalanced_branch_is_detected() {
        // a constant crank rate would hide the imbalance on the
        // parallelogram branch (theta2 tracks theta1, so H happens to be
        // constant); a varying rate exposes it
        let p = presets::balanced_case_iia();
        let samples = trajectory(&p, Branch::B, 360, RateProfile::Random(5)).unwrap();
        let summary = verify_balanced(&samples).unwrap();
        assert!(!summary.balanced);
        // parallelogram motion: theta2 tracks theta1
        for s in &samples {
            assert!((s.config.z2 - s.config.z1).norm() < 1e-9);
        }
    }

    #[test]
    fn h_direct_agrees_generic() {
        // an unbalanced, irreducible linkage still has matching momentum forms
        let p = DesignParams {
            l1: crate::coeff::rational_from_ints(2, 1),
            l2: crate::coeff::rational_from_ints(3, 1),
            l3: crate::coeff::rational_from_ints(4, 1),
            d: crate::coeff::rational_from_ints(4, 1),
            ..presets::balanced_case_iia()
        };
        let samples = trajectory(&p, Branch::A, 90, RateProfile::Random(3)).unwrap();
        for s in &samples {
            let scale = s.h_form.abs().max(1.0);
            assert!(
                (s.h_form - s.h_direct).abs() / scale < 1e-9,
                "t = {}: {} vs {}",
                s.t,
                s.h_form,
                s.h_direct
            );
        }
    }
}
