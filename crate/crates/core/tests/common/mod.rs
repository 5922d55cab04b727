//! Shared helpers for the integration and acceptance suites: a deterministic
//! RNG, random polynomial generators and an independent brute-force
//! divisibility oracle.

#![allow(dead_code)]

use fourbar_balance::{Coeff, Exponent, GaussianRational as Gq, NewtonPolygon, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;

/// splitmix64: small, seedable, good enough for test data.
pub struct TestRng {
    state: u64,
}

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Nonzero rational with small numerator and denominator.
    pub fn rational(&mut self) -> BigRational {
        let mut n = self.int_in(-9, 9);
        if n == 0 {
            n = 1;
        }
        let d = self.int_in(1, 9);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Positive rational with small numerator and denominator.
    pub fn positive_rational(&mut self) -> BigRational {
        let n = self.int_in(1, 9);
        let d = self.int_in(1, 9);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Random Gaussian rational, possibly zero in one part.
    pub fn gq(&mut self) -> Gq {
        let re = self.rational();
        let im = if self.below(2) == 0 {
            BigRational::new(BigInt::from(0), BigInt::from(1))
        } else {
            self.rational()
        };
        Gq::new(re, im)
    }

    /// Nonzero polynomial with at most `max_terms` terms and exponents in
    /// `[lo, hi]`.
    pub fn poly(&mut self, max_terms: usize, lo: i64, hi: i64) -> Poly {
        loop {
            let n = 1 + self.below(max_terms as u64) as usize;
            let mut p = Poly::zero();
            for _ in 0..n {
                let e1 = self.int_in(lo, hi);
                let e2 = self.int_in(lo, hi);
                p = p.add(&Poly::monomial(Exponent::new(e1, e2), self.gq()));
            }
            if !p.is_zero() {
                return p;
            }
        }
    }
}

/// Solves the linear system `sum_p x_p g_{e-p} = f_e` over the Gaussian
/// rationals by Gaussian elimination and reports whether it is consistent,
/// i.e. whether some Laurent polynomial `Q` satisfies `Q*g = f`.
///
/// Candidate exponents for `Q` are the lattice points `p` with
/// `p + NP(g) inside NP(f)`; any cofactor must live there because Newton
/// polygons add under multiplication.
#[allow(clippy::needless_range_loop)] // index arithmetic mirrors the math
pub fn divisible_by_linear_solve(f: &Poly, g: &Poly) -> bool {
    if f.is_zero() {
        return true;
    }
    if g.is_zero() {
        return false;
    }
    let np_f = NewtonPolygon::of(f).unwrap();
    let np_g = NewtonPolygon::of(g).unwrap();

    let bound = |np: &NewtonPolygon, pick: fn(&Exponent) -> i64, max: bool| -> i64 {
        let it = np.vertices().iter().map(pick);
        if max {
            it.max().unwrap()
        } else {
            it.min().unwrap()
        }
    };
    let lo1 = bound(&np_f, |e| e.e1, false) - bound(&np_g, |e| e.e1, false);
    let hi1 = bound(&np_f, |e| e.e1, true) - bound(&np_g, |e| e.e1, true);
    let lo2 = bound(&np_f, |e| e.e2, false) - bound(&np_g, |e| e.e2, false);
    let hi2 = bound(&np_f, |e| e.e2, true) - bound(&np_g, |e| e.e2, true);

    let mut candidates: Vec<Exponent> = Vec::new();
    for e1 in lo1..=hi1 {
        for e2 in lo2..=hi2 {
            let p = Exponent::new(e1, e2);
            if np_f.contains_polygon(&np_g.translate(p)) {
                candidates.push(p);
            }
        }
    }
    if candidates.is_empty() {
        return false;
    }

    // every exponent a product supported on the candidates can reach
    let mut equations: Vec<Exponent> = Vec::new();
    for &p in &candidates {
        for s in g.support() {
            let e = p.add(s);
            if !equations.contains(&e) {
                equations.push(e);
            }
        }
    }
    for e in f.support() {
        if !equations.contains(&e) {
            equations.push(e);
        }
    }

    // rows: one per equation exponent; columns: candidates + rhs
    let ncols = candidates.len();
    let mut rows: Vec<Vec<Gq>> = equations
        .iter()
        .map(|&e| {
            let mut row: Vec<Gq> = candidates.iter().map(|&p| g.coeff(e.sub(p))).collect();
            row.push(f.coeff(e));
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(sel) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, sel);
        let inv = Gq::one().div(&rows[pivot_row][col].clone());
        for c in col..=ncols {
            rows[pivot_row][c] = rows[pivot_row][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=ncols {
                    let delta = rows[pivot_row][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }

    // consistent iff no row reads 0 = nonzero
    rows.iter()
        .all(|row| !(row[..ncols].iter().all(Gq::is_zero) && !row[ncols].is_zero()))
}

/// Newton polygons of `a`, `b` and `a*b` for Minkowski checks.
pub fn np_triple(a: &Poly, b: &Poly) -> (NewtonPolygon, NewtonPolygon, NewtonPolygon) {
    (
        NewtonPolygon::of(a).unwrap(),
        NewtonPolygon::of(b).unwrap(),
        NewtonPolygon::of(&a.mul(b)).unwrap(),
    )
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience: `Q*g` is divisible, so division must return a zero remainder.
pub fn assert_exact_multiple(q: &Poly, g: &Poly) {
    let f = q.mul(g);
    let (ok, witness) = fourbar_balance::is_divisible(&f, g).unwrap();
    assert!(ok, "expected zero remainder, got {witness}");
}
