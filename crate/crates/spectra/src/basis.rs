//! Monomial basis of the Milnor algebra from half-open parallelepipeds of the
//! subdivision cones, their canonical copies and Hodge-level copy placement.
//!
//! Every simplex τ of the subdivision (the empty one included) contributes
//! its open parallelepiped `Box(τ)`, the lattice points with all coordinates
//! in `(0, 1)` with respect to the vertices of τ. Each such point is copied
//! once per unit of the coefficient `l_j` of the local polynomial
//!
//! `L_τ(t) = Σ_{σ ⊇ τ} t^{|σ|−|τ|} (1−t)^{s(σ)−|σ|} (−t)^{n−s(σ)}`,
//!
//! where σ runs over simplices containing τ and `s(σ)` counts the
//! coordinates not identically zero on σ. The top level of a τ off the
//! coordinate planes is the canonical copy `Σ_{v∈δ} v − b`; the other levels
//! translate `b` by vertex sets of the link of τ.

use crate::error::{Error, Result};
use crate::geometry::{self, FaceLattice};
use crate::germ::{ExponentVector, Germ};
use crate::linalg;
use crate::polytope::Point;
use crate::rational::{self, Rational};
use crate::subdivision::{Subdivision, WeightFunction};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPoint {
    pub point: Point,
    /// Coordinates with respect to the generators, each in `[0, 1)`.
    pub coefficients: Vec<Rational>,
}

impl CellPoint {
    /// `h` of the point: generators sit at height 1.
    pub fn height(&self) -> Rational {
        self.coefficients.iter().fold(Rational::zero(), |a, c| a + c)
    }
}

#[derive(Clone, Debug)]
pub struct HalfOpenCell {
    pub simplex: usize,
    pub generators: Vec<Point>,
    pub points: Vec<CellPoint>,
}

/// Lattice points of `{Σ b_i v_i : 0 ≤ b_i < 1}`, one per coset of the
/// generator lattice: coset representatives come from the Hermite normal
/// form and are folded back into the cell.
pub fn half_open_cell(simplex: usize, generators: &[Point]) -> Result<HalfOpenCell> {
    let n = generators.len();
    let singular = || Error::SingularMatrix(format!("generators {generators:?}"));
    let hnf = linalg::hermite_normal_form(generators).ok_or_else(singular)?;
    let inv = linalg::inverse(&linalg::to_rational(generators)).ok_or_else(singular)?;
    let diag: Vec<i64> = (0..n).map(|i| hnf[i][i] as i64).collect();
    let mut points = Vec::new();
    let mut rep = vec![0i64; n];
    loop {
        let coeffs: Vec<Rational> = (0..n)
            .map(|j| (0..n).fold(Rational::zero(), |a, k| a + &inv[k][j] * BigInt::from(rep[k])))
            .collect();
        let floors: Vec<i64> = coeffs.iter().map(rational::floor_i64).collect();
        let point: Point = (0..n)
            .map(|i| rep[i] - (0..n).map(|k| floors[k] * generators[k][i]).sum::<i64>())
            .collect();
        let coefficients = coeffs.iter().map(rational::frac).collect();
        points.push(CellPoint { point, coefficients });
        // Odometer over 0 ≤ rep_i < diag_i.
        let mut i = 0;
        while i < n {
            rep[i] += 1;
            if rep[i] < diag[i] {
                break;
            }
            rep[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    points.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(HalfOpenCell { simplex, generators: generators.to_vec(), points })
}

/// `Σ v_i − α`, the point reflection through the centre of the cell.
pub fn canonical_copy(generators: &[Point], alpha: &[i64]) -> Result<ExponentVector> {
    let p: Point = (0..alpha.len())
        .map(|i| generators.iter().map(|v| v[i]).sum::<i64>() - alpha[i])
        .collect();
    ExponentVector::from_i64(&p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyInfo {
    /// Level of the copy: exponent of `t` in the local polynomial.
    pub level: usize,
    /// Link vertices added to the source point (for a canonical copy, the
    /// vertices of the owning simplex outside the skeleton).
    pub link: Vec<ExponentVector>,
    pub translation: Point,
    pub canonical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    /// `α + 1`; the basis monomial is `x^{point − 1}`.
    pub point: ExponentVector,
    pub owner: usize,
    /// Vertices of the skeleton simplex whose open parallelepiped the
    /// element was built from; empty for the origin.
    pub skeleton: Vec<ExponentVector>,
    /// Dimension of the open cone over the smallest Newton face carrying the
    /// skeleton (0 for the origin).
    pub skeleton_dim: usize,
    /// Number of Hodge levels the copy is shifted by.
    pub hodge_shift: usize,
    pub copy: Option<CopyInfo>,
    /// `h(point)` as produced by the construction.
    pub h: Rational,
}

impl BasisElement {
    pub fn monomial(&self) -> ExponentVector {
        ExponentVector::new(self.point.coords().iter().map(|c| c - 1).collect())
    }
}

/// The simplicial complex of the subdivision: vertex sets of all faces of
/// the top simplices, the empty set included.
struct Complex {
    vertices: Vec<ExponentVector>,
    /// Vertex-id set → least id of a top simplex containing it.
    owner: BTreeMap<Vec<usize>, usize>,
    tops: Vec<Vec<usize>>,
    n: usize,
}

impl Complex {
    fn new(s: &Subdivision) -> Complex {
        let vertices: Vec<ExponentVector> = s
            .simplices
            .iter()
            .flat_map(|d| d.vertices.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let tops: Vec<Vec<usize>> = s
            .simplices
            .iter()
            .map(|d| d.vertices.iter().map(|v| vertices.binary_search(v).unwrap()).collect())
            .collect();
        let mut owner = BTreeMap::new();
        for (id, t) in tops.iter().enumerate() {
            for mask in 0u32..(1 << t.len()) {
                let sub: Vec<usize> = (0..t.len()).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).collect();
                owner.entry(sub).or_insert(id);
            }
        }
        Complex { vertices, owner, tops, n: s.n }
    }

    fn support_size(&self, sigma: &[usize]) -> usize {
        (0..self.n)
            .filter(|&i| sigma.iter().any(|&v| self.vertices[v].coords()[i] != 0))
            .count()
    }

    fn points(&self, sigma: &[usize]) -> Vec<ExponentVector> {
        sigma.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    fn sum(&self, sigma: &[usize]) -> Point {
        (0..self.n)
            .map(|i| sigma.iter().map(|&v| self.vertices[v].coords()[i] as i64).sum())
            .collect()
    }

    /// Coefficients of `L_τ(t)`, indexed by degree.
    fn local_polynomial(&self, tau: &[usize]) -> Vec<i64> {
        let mut coef = vec![0i64; self.n + 1];
        for sigma in self.owner.keys().filter(|s| is_subset(tau, s)) {
            let s = self.support_size(sigma);
            let a = sigma.len() - tau.len();
            let b = s - sigma.len();
            let c = self.n - s;
            let sign = if c.is_multiple_of(2) { 1 } else { -1 };
            for (i, binom) in binomials(b).into_iter().enumerate() {
                let alt = if i % 2 == 0 { 1 } else { -1 };
                coef[a + c + i] += sign * alt * binom;
            }
        }
        coef
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn binomials(b: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..b {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

fn carrier_dim(l: &FaceLattice, pts: &[ExponentVector]) -> Result<isize> {
    if pts.is_empty() {
        return Ok(-1);
    }
    l.carrier(pts)
        .map(|f| f.dim as isize)
        .ok_or_else(|| Error::Internal(format!("no Newton face carries {pts:?}")))
}

fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(Vec<usize>)) {
    crate::polytope::for_each_combination(items.len(), k, |c| f(c.iter().map(|&i| items[i]).collect()));
}

/// Open parallelepipeds of all simplices of the complex, read off the
/// half-open cells of the top simplices.
fn boxes(cx: &Complex, s: &Subdivision) -> Result<BTreeMap<Vec<usize>, Vec<CellPoint>>> {
    let mut out: BTreeMap<Vec<usize>, Vec<CellPoint>> = BTreeMap::new();
    let mut done: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (id, top) in cx.tops.iter().enumerate() {
        let cell = half_open_cell(id, &s.simplices[id].points())?;
        let mut here: BTreeMap<Vec<usize>, Vec<CellPoint>> = BTreeMap::new();
        for p in cell.points {
            let tau: Vec<usize> = (0..top.len()).filter(|&i| !p.coefficients[i].is_zero()).map(|i| top[i]).collect();
            here.entry(tau).or_default().push(p);
        }
        for mask in 0u32..(1 << top.len()) {
            let tau: Vec<usize> = (0..top.len()).filter(|i| mask >> i & 1 == 1).map(|i| top[i]).collect();
            if done.insert(tau.clone()) {
                out.insert(tau.clone(), here.remove(&tau).unwrap_or_default());
            }
        }
    }
    Ok(out)
}

/// Builds exactly μ basis elements, μ being the Kouchnirenko number.
pub fn build_basis(g: &Germ, l: &FaceLattice, s: &Subdivision, w: &WeightFunction) -> Result<Vec<BasisElement>> {
    let n = g.n();
    let cx = Complex::new(s);
    let boxes = boxes(&cx, s)?;
    let mut elements = Vec::new();
    for (tau, bx) in &boxes {
        if bx.is_empty() {
            continue;
        }
        let lt = cx.local_polynomial(tau);
        if let Some(j) = lt.iter().position(|&c| c < 0) {
            return Err(Error::NotSimplicial(format!(
                "negative copy count at level {j} for skeleton {:?}",
                cx.points(tau)
            )));
        }
        let tau_pts = cx.points(tau);
        let d_tau = carrier_dim(l, &tau_pts)?;
        let skeleton_dim = (d_tau + 1) as usize;
        let mut link: BTreeSet<usize> = BTreeSet::new();
        for t in cx.tops.iter().filter(|t| is_subset(tau, t)) {
            link.extend(t.iter().filter(|v| !tau.contains(v)));
        }
        let link: Vec<usize> = link.into_iter().collect();
        let full_level = n - tau.len();
        for (j, &count) in lt.iter().enumerate() {
            if count == 0 {
                continue;
            }
            if j == full_level && !tau.is_empty() && cx.support_size(tau) == n {
                if count != 1 {
                    return Err(Error::NotSimplicial(format!("{count} canonical copies requested for {:?}", tau_pts)));
                }
                let owner = cx.owner[tau];
                let delta = &cx.tops[owner];
                let rest: Vec<usize> = delta.iter().copied().filter(|v| !tau.contains(v)).collect();
                let shift = hodge_shift(l, &cx.points(delta), rest.len(), d_tau)?;
                let generators: Vec<Point> = cx.points(delta).iter().map(ExponentVector::to_i64).collect();
                for b in bx {
                    let point = canonical_copy(&generators, &b.point)?;
                    let translation = cx.sum(delta);
                    elements.push(BasisElement {
                        point,
                        owner,
                        skeleton: tau_pts.clone(),
                        skeleton_dim,
                        hodge_shift: shift,
                        copy: Some(CopyInfo { level: j, link: cx.points(&rest), translation, canonical: true }),
                        h: rational::int(n as i64) - b.height(),
                    });
                }
                continue;
            }
            let mut candidates: Vec<(usize, Vec<usize>)> = Vec::new();
            for_each_subset(&link, j, &mut |jset| {
                let mut sigma: Vec<usize> = tau.iter().chain(&jset).copied().collect();
                sigma.sort_unstable();
                if let Some(&owner) = cx.owner.get(&sigma) {
                    if cx.support_size(&sigma) == n {
                        candidates.push((owner, jset));
                    }
                }
            });
            candidates.sort();
            if candidates.len() < count as usize {
                return Err(Error::NotSimplicial(format!(
                    "only {} of {count} copies of level {j} can be placed for skeleton {:?}",
                    candidates.len(),
                    tau_pts
                )));
            }
            for (owner, jset) in candidates.into_iter().take(count as usize) {
                let mut sigma: Vec<usize> = tau.iter().chain(&jset).copied().collect();
                sigma.sort_unstable();
                let shift = hodge_shift(l, &cx.points(&sigma), jset.len(), d_tau)?;
                let translation = cx.sum(&jset);
                for b in bx {
                    let p: Point = b.point.iter().zip(&translation).map(|(x, t)| x + t).collect();
                    elements.push(BasisElement {
                        point: ExponentVector::from_i64(&p)?,
                        owner,
                        skeleton: tau_pts.clone(),
                        skeleton_dim,
                        hodge_shift: shift,
                        copy: (j > 0).then(|| CopyInfo {
                            level: j,
                            link: cx.points(&jset),
                            translation: translation.clone(),
                            canonical: false,
                        }),
                        h: b.height() + rational::int(j as i64),
                    });
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    for e in &elements {
        if e.point.coords().contains(&0) {
            return Err(Error::Internal(format!("basis point {} touches a coordinate plane", e.point)));
        }
        if w.h_on(e.owner, &e.point.to_i64()) != e.h {
            return Err(Error::Internal(format!("height of basis point {} disagrees with the weight function", e.point)));
        }
        if !seen.insert(e.point.clone()) {
            return Err(Error::Internal(format!("basis point {} emitted twice", e.point)));
        }
    }
    let mu = geometry::kouchnirenko_of(l)?;
    if elements.len() as u64 != mu {
        return Err(Error::Internal(format!("basis has {} elements but μ = {mu}", elements.len())));
    }
    Ok(elements)
}

fn hodge_shift(l: &FaceLattice, sigma: &[ExponentVector], added: usize, d_tau: isize) -> Result<usize> {
    let d_sigma = carrier_dim(l, sigma)?;
    Ok(added.min((d_sigma - d_tau).max(0) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::compact_faces;
    use crate::germ::parse_germ;
    use crate::subdivision::{triangulate, weight_function};

    fn basis(text: &str, vars: &str) -> Vec<BasisElement> {
        let v: Vec<String> = vars.split(',').map(String::from).collect();
        let g = parse_germ(text, &v).unwrap();
        let l = compact_faces(&g).unwrap();
        let s = triangulate(&l).unwrap();
        let w = weight_function(&s).unwrap();
        build_basis(&g, &l, &s, &w).unwrap()
    }

    #[test]
    fn small_cells() {
        let c = half_open_cell(0, &[vec![2, 0], vec![0, 2]]).unwrap();
        let pts: Vec<Point> = c.points.iter().map(|p| p.point.clone()).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(half_open_cell(0, &[vec![0, 12], vec![3, 6]]).unwrap().points.len(), 36);
        assert_eq!(half_open_cell(0, &[vec![0, 0, 8], vec![2, 0, 2], vec![0, 2, 2]]).unwrap().points.len(), 32);
        assert_eq!(half_open_cell(0, &[vec![1, 0], vec![0, 1]]).unwrap().points.len(), 1);
        assert!(half_open_cell(0, &[vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn canonical_copies() {
        let g = [vec![2, 0, 2], vec![4, 0, 0], vec![0, 4, 0]];
        assert_eq!(canonical_copy(&g, &[1, 1, 1]).unwrap().coords(), &[5, 3, 1]);
        let t1 = [vec![0, 12], vec![3, 6]];
        assert_eq!(canonical_copy(&t1, &[1, 7]).unwrap().coords(), &[2, 11]);
        let sq = [vec![2, 0], vec![0, 2]];
        assert_eq!(canonical_copy(&sq, &[1, 1]).unwrap().coords(), &[1, 1]);
        assert!(canonical_copy(&sq, &[3, 0]).is_err());
    }

    #[test]
    fn morse_basis() {
        let b = basis("x^2+y^2", "x,y");
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].point.coords(), &[1, 1]);
        assert!(b[0].monomial().is_zero());
    }

    #[test]
    fn fixture_cardinalities() {
        assert_eq!(basis("x15+x6y4+x3y6+y12", "x,y").len(), 94);
        assert_eq!(basis("x4+y4+z8+x2z2+y2z2", "x,y,z").len(), 31);
        assert_eq!(basis("x8+y8+z8+x2y2z2", "x,y,z").len(), 215);
    }

    #[test]
    fn f2_contains_xyz_and_its_partner() {
        let b = basis("x4+y4+z8+x2z2+y2z2", "x,y,z");
        let pts: Vec<&[u32]> = b.iter().map(|e| e.point.coords()).collect();
        assert!(pts.contains(&&[1, 1, 1][..]));
        assert!(pts.contains(&&[1, 1, 2][..]));
    }
}
