//! Newton polygons: convex hulls of supports in the exponent lattice.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPoly};

/// Convex hull of a lattice point set, stored counter-clockwise starting at
/// the lexicographically smallest vertex. Degenerate hulls keep 1 or 2
/// vertices, so polygon equality is plain list equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    vertices: Vec<Exponent>,
}

fn cross(o: Exponent, a: Exponent, b: Exponent) -> i128 {
    let (ax, ay) = ((a.e1 - o.e1) as i128, (a.e2 - o.e2) as i128);
    let (bx, by) = ((b.e1 - o.e1) as i128, (b.e2 - o.e2) as i128);
    ax * by - ay * bx
}

impl NewtonPolygon {
    /// Andrew's monotone chain over the given lattice points.
    pub fn hull(points: &[Exponent]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let mut pts: Vec<Exponent> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() == 1 {
            return Ok(Self { vertices: pts });
        }
        let mut lower: Vec<Exponent> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Exponent> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() == 2 && lower[0] > lower[1] {
            lower.swap(0, 1);
        }
        Ok(Self { vertices: lower })
    }

    pub fn of<C: Coeff>(p: &LaurentPoly<C>) -> Result<Self> {
        Self::hull(&p.support())
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn translate(&self, d: Exponent) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.add(d)).collect(),
        }
    }

    /// Lattice-point membership, including the boundary.
    pub fn contains(&self, p: Exponent) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                if cross(a, b, p) != 0 {
                    return false;
                }
                let dot = (p.e1 - a.e1) as i128 * (b.e1 - a.e1) as i128
                    + (p.e2 - a.e2) as i128 * (b.e2 - a.e2) as i128;
                let len2 = (b.e1 - a.e1) as i128 * (b.e1 - a.e1) as i128
                    + (b.e2 - a.e2) as i128 * (b.e2 - a.e2) as i128;
                dot >= 0 && dot <= len2
            }
            n => {
                for i in 0..n {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % n];
                    if cross(a, b, p) < 0 {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Convexity makes vertex membership sufficient for polygon inclusion.
    pub fn contains_polygon(&self, other: &Self) -> bool {
        other.vertices.iter().all(|&v| self.contains(v))
    }

    /// Hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for &a in &self.vertices {
            for &b in &other.vertices {
                sums.push(a.add(b));
            }
        }
        Self::hull(&sums).expect("nonempty vertex sets")
    }
}
