//! Simplex subdivision of the Newton boundary and the piecewise-linear weight
//! function `h` with `h = 1` on the boundary.

use crate::error::{Error, Result};
use crate::geometry::FaceLattice;
use crate::germ::ExponentVector;
use crate::linalg::{self, Matrix};
use crate::polytope::{self, Point};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub id: usize,
    /// `n` lexicographically sorted vertices.
    pub vertices: Vec<ExponentVector>,
    pub parent_face: usize,
}

impl Simplex {
    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(ExponentVector::to_i64).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub n: usize,
    pub simplices: Vec<Simplex>,
}

/// Pulling triangulation of every facet at its lexicographically least vertex.
/// Pulling with one global vertex order restricts to the same triangulation
/// on shared faces, so the pieces fit together.
pub fn triangulate(l: &FaceLattice) -> Result<Subdivision> {
    let n = l.n;
    let mut simplices = Vec::new();
    for f in l.facets() {
        let pts = f.vertex_points();
        let refs: Vec<&Point> = pts.iter().collect();
        if polytope::affine_dim(&refs) + 1 != n as isize {
            return Err(Error::DegenerateFacet(format!("{:?}", f.vertices)));
        }
        for s in polytope::pulling_triangulation(&pts) {
            simplices.push(Simplex {
                id: 0,
                vertices: s.iter().map(|p| ExponentVector::from_i64(p)).collect::<Result<_>>()?,
                parent_face: f.id,
            });
        }
    }
    simplices.sort_by(|a, b| (a.parent_face, &a.vertices).cmp(&(b.parent_face, &b.vertices)));
    for (i, s) in simplices.iter_mut().enumerate() {
        s.id = i;
    }
    Ok(Subdivision { n, simplices })
}

#[derive(Clone, Debug)]
pub struct WeightFunction {
    /// `w_i` with `w_i·v = 1` on every vertex of simplex `i`.
    pub covectors: Vec<Vec<Rational>>,
    /// Least common denominator of all covector entries.
    pub m: u64,
    /// Inverse of each simplex's vertex matrix (rows = vertices).
    inverses: Vec<Matrix>,
}

pub fn weight_function(s: &Subdivision) -> Result<WeightFunction> {
    let mut covectors = Vec::new();
    let mut inverses = Vec::new();
    for simplex in &s.simplices {
        let a = linalg::to_rational(&simplex.points());
        let w = linalg::solve_square(&a, &vec![Rational::one(); s.n])
            .ok_or_else(|| Error::SingularMatrix(format!("simplex {:?}", simplex.vertices)))?;
        covectors.push(w);
        inverses.push(linalg::inverse(&a).expect("nonsingular"));
    }
    let m = rational::lcm_of_denominators(covectors.iter().flatten())
        .to_u64()
        .ok_or_else(|| Error::Internal("weight denominator overflow".into()))?;
    Ok(WeightFunction { covectors, m, inverses })
}

impl WeightFunction {
    /// Coordinates of `p` in the vertex basis of simplex `i`.
    pub fn coefficients(&self, i: usize, p: &[i64]) -> Vec<Rational> {
        let inv = &self.inverses[i];
        (0..p.len())
            .map(|j| p.iter().enumerate().fold(Rational::zero(), |acc, (k, &x)| acc + &inv[k][j] * BigInt::from(x)))
            .collect()
    }

    pub fn h_on(&self, i: usize, p: &[i64]) -> Rational {
        rational::dot(&self.covectors[i], p)
    }
}

/// The owning simplex and `h(p)`. Points in several closed cells go to the
/// least simplex id among those cells; points outside every closed cell go
/// to the least id whose cone contains them.
pub fn locate_and_evaluate(w: &WeightFunction, s: &Subdivision, p: &[i64]) -> Result<(usize, Rational)> {
    let mut in_cone = None;
    for simplex in &s.simplices {
        let c = w.coefficients(simplex.id, p);
        if c.iter().any(Signed::is_negative) {
            continue;
        }
        if c.iter().all(|x| x <= &Rational::one()) {
            return Ok((simplex.id, w.h_on(simplex.id, p)));
        }
        in_cone.get_or_insert(simplex.id);
    }
    in_cone
        .map(|i| (i, w.h_on(i, p)))
        .ok_or_else(|| Error::OutsideCones(p.to_vec()))
}
