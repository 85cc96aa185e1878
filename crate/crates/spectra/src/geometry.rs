//! The Newton polyhedron: compact faces, simpliciality, volumes of the region
//! under the Newton boundary and the Kouchnirenko Milnor number.

use crate::error::{Error, Result};
use crate::germ::{ExponentVector, Germ};
use crate::linalg;
use crate::polytope::{self, Point};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Lexicographically sorted vertices.
    pub vertices: Vec<ExponentVector>,
    /// Every support point of the germ lying on the face, vertices included.
    pub support: Vec<ExponentVector>,
    pub dim: usize,
    /// λ > 0 with λ·v = 1 on the face and λ·u ≥ 1 on the Newton polyhedron.
    pub supporting_covector: Vec<Rational>,
    /// Axes on which every point of the face vanishes.
    pub zero_axes: Vec<usize>,
}

impl Face {
    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// Number of coordinates not identically zero on the face.
    pub fn support_size(&self, n: usize) -> usize {
        n - self.zero_axes.len()
    }

    pub fn in_coordinate_plane(&self) -> bool {
        !self.zero_axes.is_empty()
    }

    pub fn vertex_points(&self) -> Vec<Point> {
        self.vertices.iter().map(ExponentVector::to_i64).collect()
    }

    pub fn h(&self, m: &[i64]) -> Rational {
        rational::dot(&self.supporting_covector, m)
    }
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub n: usize,
    /// Sorted by dimension, then by vertex list.
    pub faces: Vec<Face>,
    /// All strict inclusions `(smaller, larger)`.
    pub containment: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim + 1 == self.n)
    }

    pub fn contains(&self, small: usize, large: usize) -> bool {
        small == large || is_subset(&self.faces[small].vertices, &self.faces[large].vertices)
    }

    /// Faces strictly containing `id`.
    pub fn cofaces(&self, id: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |g| g.id != id && self.contains(id, g.id))
    }

    /// Faces strictly contained in `id`.
    pub fn subfaces(&self, id: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |g| g.id != id && self.contains(g.id, id))
    }

    /// Smallest face containing all given points (which must be vertices).
    pub fn carrier(&self, points: &[ExponentVector]) -> Option<&Face> {
        self.faces
            .iter()
            .filter(|f| points.iter().all(|p| f.vertices.binary_search(p).is_ok()))
            .min_by_key(|f| f.dim)
    }

    pub fn vertices(&self) -> Vec<ExponentVector> {
        self.faces.iter().filter(|f| f.dim == 0).map(|f| f.vertices[0].clone()).collect()
    }

    /// Newton order: the minimum over compact facets of λ·m.
    pub fn newton_order(&self, m: &[i64]) -> Rational {
        self.facets().map(|f| f.h(m)).min().expect("at least one facet")
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct FaceJson {
            id: usize,
            dim: usize,
            vertices: Vec<Vec<u32>>,
            covector: Vec<String>,
            zero_axes: Vec<usize>,
        }
        let faces: Vec<FaceJson> = self
            .faces
            .iter()
            .map(|f| FaceJson {
                id: f.id,
                dim: f.dim,
                vertices: f.vertices.iter().map(|v| v.coords().to_vec()).collect(),
                covector: f.supporting_covector.iter().map(rational::format).collect(),
                zero_axes: f.zero_axes.clone(),
            })
            .collect();
        serde_json::json!({ "n": self.n, "faces": faces, "containment": self.containment })
    }
}

fn is_subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Support points not dominated componentwise by another support point.
fn minimal_support(g: &Germ) -> Vec<Point> {
    let pts: Vec<Point> = g.support().map(ExponentVector::to_i64).collect();
    pts.iter()
        .filter(|p| !pts.iter().any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect()
}

/// Covectors of the compact facets of the Newton polyhedron, with the support
/// points on each.
fn compact_facets(g: &Germ) -> Vec<(Vec<Rational>, Vec<Point>)> {
    let n = g.n();
    let pts = minimal_support(g);
    let mut found: BTreeMap<Vec<Rational>, Vec<Point>> = BTreeMap::new();
    polytope::for_each_combination(pts.len(), n, |sub| {
        let a = linalg::to_rational(&sub.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>());
        let Some(lambda) = linalg::solve_square(&a, &vec![Rational::one(); n]) else {
            return;
        };
        if !lambda.iter().all(Signed::is_positive) || found.contains_key(&lambda) {
            return;
        }
        if pts.iter().all(|p| rational::dot(&lambda, p) >= Rational::one()) {
            let on: Vec<Point> = pts.iter().filter(|p| rational::dot(&lambda, p).is_one()).cloned().collect();
            found.insert(lambda, on);
        }
    });
    found.into_iter().collect()
}

/// All compact faces of the Newton polyhedron of a convenient germ.
pub fn compact_faces(g: &Germ) -> Result<FaceLattice> {
    g.require_convenient()?;
    let n = g.n();
    let facets = compact_facets(g);
    if facets.is_empty() {
        return Err(Error::Internal("no compact facet found".into()));
    }
    let support: Vec<Point> = g.support().map(ExponentVector::to_i64).collect();
    // Faces keyed by their vertex set; value accumulates facet covectors.
    let mut by_vertices: BTreeMap<Vec<Point>, (usize, Vec<Rational>, usize)> = BTreeMap::new();
    for (lambda, on) in &facets {
        let mut on = on.clone();
        on.sort();
        let verts = polytope::vertices(&on);
        let vpts: Vec<Point> = verts.iter().map(|&i| on[i].clone()).collect();
        for f in polytope::faces(&vpts) {
            let key: Vec<Point> = f.points.iter().map(|&i| vpts[i].clone()).collect();
            let entry = by_vertices
                .entry(key)
                .or_insert_with(|| (f.dim, vec![Rational::zero(); n], 0));
            for (acc, l) in entry.1.iter_mut().zip(lambda) {
                *acc += l;
            }
            entry.2 += 1;
        }
    }
    let mut faces: Vec<Face> = by_vertices
        .into_iter()
        .map(|(verts, (dim, sum, count))| {
            let covector: Vec<Rational> = sum.into_iter().map(|x| x / BigInt::from(count)).collect();
            let zero_axes = (0..n).filter(|&i| verts.iter().all(|v| v[i] == 0)).collect();
            let on_face: Vec<ExponentVector> = support
                .iter()
                .filter(|p| rational::dot(&covector, p).is_one() && in_hull(p, &verts))
                .map(|p| ExponentVector::from_i64(p).expect("support is non-negative"))
                .collect();
            Face {
                id: 0,
                vertices: verts.iter().map(|v| ExponentVector::from_i64(v).expect("non-negative")).collect(),
                support: on_face,
                dim,
                supporting_covector: covector,
                zero_axes,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    for (i, f) in faces.iter_mut().enumerate() {
        f.id = i;
    }
    let mut containment = Vec::new();
    for a in &faces {
        for b in &faces {
            if a.id != b.id && a.dim < b.dim && is_subset(&a.vertices, &b.vertices) {
                containment.push((a.id, b.id));
            }
        }
    }
    Ok(FaceLattice { n, faces, containment })
}

/// Whether `p` lies in the convex hull of `verts`, tested simplex by simplex
/// over a pulling triangulation.
fn in_hull(p: &Point, verts: &[Point]) -> bool {
    if verts.contains(p) {
        return true;
    }
    polytope::pulling_triangulation(verts).iter().any(|s| {
        let k = s.len();
        let mut m: Vec<Vec<Rational>> = (0..p.len()).map(|r| (0..k).map(|c| rational::int(s[c][r])).collect()).collect();
        m.push(vec![Rational::one(); k]);
        let mut rhs: Vec<Rational> = p.iter().map(|&x| rational::int(x)).collect();
        rhs.push(Rational::one());
        match linalg::solve_any(&m, &rhs) {
            Some(c) => c.iter().all(|x| !x.is_negative()),
            None => false,
        }
    })
}

/// Def. of a simplicial Newton boundary: every face τ not contained in a
/// coordinate hyperplane lies in at most `n − dim τ` faces of dimension
/// `dim τ + 1`, and every face of dimension at most `n − 2` is a simplex.
/// Non-simplex facets are allowed; they are triangulated downstream.
pub fn is_simplicial(l: &FaceLattice, n: usize) -> bool {
    simpliciality_violation(l, n).is_none()
}

pub fn simpliciality_violation(l: &FaceLattice, n: usize) -> Option<String> {
    for f in &l.faces {
        if f.dim + 2 <= n && !f.is_simplex() {
            return Some(format!("face {:?} of dimension {} is not a simplex", f.vertices, f.dim));
        }
        if f.in_coordinate_plane() {
            continue;
        }
        let up = l.cofaces(f.id).filter(|g| g.dim == f.dim + 1).count();
        if up > n - f.dim {
            return Some(format!("face {:?} lies in {up} faces of dimension {}", f.vertices, f.dim + 1));
        }
    }
    None
}

/// `V_k` for `k = 1..=n` (index `k − 1`): total k-volume of the region under
/// the Newton boundary inside the k-dimensional coordinate planes.
pub fn volumes(g: &Germ) -> Result<Vec<Rational>> {
    let l = compact_faces(g)?;
    Ok(volumes_of(&l))
}

pub fn volumes_of(l: &FaceLattice) -> Vec<Rational> {
    let n = l.n;
    let mut v = vec![Rational::zero(); n];
    for f in &l.faces {
        let axes: Vec<usize> = (0..n).filter(|i| !f.zero_axes.contains(i)).collect();
        let k = axes.len();
        if f.dim + 1 != k {
            continue;
        }
        let fact: u64 = (1..=k as u64).product();
        for s in polytope::pulling_triangulation(&f.vertex_points()) {
            let m: Vec<Vec<i64>> = s.iter().map(|p| axes.iter().map(|&i| p[i]).collect()).collect();
            v[k - 1] += Rational::new(BigInt::from(linalg::det_i64(&m).abs()), BigInt::from(fact));
        }
    }
    v
}

/// μ = n!V_n − (n−1)!V_{n−1} + … + (−1)^{n−1}1!V_1 + (−1)^n.
pub fn milnor_kouchnirenko(g: &Germ) -> Result<u64> {
    let l = compact_faces(g)?;
    kouchnirenko_of(&l)
}

pub fn kouchnirenko_of(l: &FaceLattice) -> Result<u64> {
    let n = l.n;
    let v = volumes_of(l);
    let mut total = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    for k in 1..=n {
        let fact: BigInt = (1..=k as u64).product::<u64>().into();
        let term = &v[k - 1] * fact;
        if (n - k).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    if !total.is_integer() || total.is_negative() {
        return Err(Error::Internal(format!("Kouchnirenko number {} is not a non-negative integer", rational::format(&total))));
    }
    total
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Internal("Milnor number overflow".into()))
}

/// Linear functionals cutting out the cone over a face inside its span.
#[derive(Clone, Debug)]
pub struct FaceCone {
    pub face: usize,
    pub dim: usize,
    span: Vec<Vec<i64>>,
    normals: Vec<Vec<Rational>>,
    walls: Vec<Vec<Rational>>,
    covector: Vec<Rational>,
}

impl FaceCone {
    pub fn new(l: &FaceLattice, face: usize) -> FaceCone {
        let f = &l.faces[face];
        let span = f.vertex_points();
        let mut walls = Vec::new();
        for r in l.subfaces(face).filter(|r| r.dim + 1 == f.dim) {
            let outside = f.vertices.iter().find(|v| r.vertices.binary_search(v).is_err()).unwrap();
            let mut rows: Vec<Vec<i64>> = r.vertex_points();
            rows.push(outside.to_i64());
            let mut rhs = vec![Rational::zero(); rows.len()];
            *rhs.last_mut().unwrap() = Rational::one();
            let wall = linalg::solve_any(&linalg::to_rational(&rows), &rhs).expect("independent vertices");
            walls.push(wall);
        }
        let normals = linalg::nullspace(&linalg::to_rational(&span));
        FaceCone { face, dim: f.dim, span, normals, walls, covector: f.supporting_covector.clone() }
    }

    pub fn in_span(&self, m: &[i64]) -> bool {
        self.normals.iter().all(|v| rational::dot(v, m).is_zero())
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.in_span(m) && self.walls.iter().all(|w| !rational::dot(w, m).is_negative())
    }

    /// Relative interior of the cone over the face (the origin excluded).
    pub fn contains_relint(&self, m: &[i64]) -> bool {
        self.in_span(m)
            && rational::dot(&self.covector, m).is_positive()
            && self.walls.iter().all(|w| rational::dot(w, m).is_positive())
    }

    pub fn h(&self, m: &[i64]) -> Rational {
        rational::dot(&self.covector, m)
    }

    /// Lattice points of the closed cone with `h ≤ bound`.
    pub fn points_up_to(&self, bound: &Rational, relint: bool) -> Vec<(Point, Rational)> {
        let n = self.covector.len();
        let caps: Vec<i64> = self
            .covector
            .iter()
            .map(|l| rational::floor_i64(&(bound / l)))
            .collect();
        let active: BTreeSet<usize> = (0..n).filter(|&i| self.span.iter().any(|v| v[i] != 0)).collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        self.scan(0, &caps, &active, bound, relint, &mut cur, &Rational::zero(), &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn scan(
        &self,
        i: usize,
        caps: &[i64],
        active: &BTreeSet<usize>,
        bound: &Rational,
        relint: bool,
        cur: &mut Vec<i64>,
        partial: &Rational,
        out: &mut Vec<(Point, Rational)>,
    ) {
        if i == cur.len() {
            let ok = if relint { self.contains_relint(cur) } else { self.contains(cur) };
            if ok {
                out.push((cur.clone(), partial.clone()));
            }
            return;
        }
        let top = if active.contains(&i) { caps[i] } else { 0 };
        for x in 0..=top {
            let p = partial + &self.covector[i] * BigInt::from(x);
            if &p > bound {
                break;
            }
            cur[i] = x;
            self.scan(i + 1, caps, active, bound, relint, cur, &p, out);
        }
        cur[i] = 0;
    }
}

/// `(dim τ + 1)! · vol(conv(0, τ))` for a face, as an integer.
pub fn normalized_cone_volume(f: &Face) -> u64 {
    let axes: Vec<usize> = (0..f.supporting_covector.len()).filter(|i| !f.zero_axes.contains(i)).collect();
    if axes.len() == f.dim + 1 {
        return polytope::pulling_triangulation(&f.vertex_points())
            .iter()
            .map(|s| {
                let m: Vec<Vec<i64>> = s.iter().map(|p| axes.iter().map(|&i| p[i]).collect()).collect();
                linalg::det_i64(&m).unsigned_abs() as u64
            })
            .sum();
    }
    // Lower-dimensional cone inside a larger coordinate space: lattice index
    // of the vertex lattice in its saturation, via maximal minors' gcd.
    polytope::pulling_triangulation(&f.vertex_points())
        .iter()
        .map(|s| {
            let mut g = BigInt::zero();
            polytope::for_each_combination(axes.len(), s.len(), |cols| {
                let m: Vec<Vec<i64>> = s.iter().map(|p| cols.iter().map(|&c| p[axes[c]]).collect()).collect();
                g = g.gcd(&BigInt::from(linalg::det_i64(&m)));
            });
            g.to_u64().unwrap_or(0)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::parse_germ;
    use crate::rational::{int, ratio};

    fn germ(text: &str, vars: &str) -> Germ {
        let v: Vec<String> = vars.split(',').map(String::from).collect();
        parse_germ(text, &v).unwrap()
    }

    fn verts(f: &Face) -> Vec<Vec<u32>> {
        f.vertices.iter().map(|v| v.coords().to_vec()).collect()
    }

    #[test]
    fn f1_faces() {
        let l = compact_faces(&germ("x15+x6y4+x3y6+y12", "x,y")).unwrap();
        let edges: Vec<_> = l.facets().map(verts).collect();
        assert_eq!(edges, vec![vec![vec![0, 12], vec![3, 6]], vec![vec![3, 6], vec![6, 4]], vec![vec![6, 4], vec![15, 0]]]);
        let covs: Vec<_> = l.facets().map(|f| f.supporting_covector.clone()).collect();
        assert_eq!(covs[0], vec![ratio(1, 6), ratio(1, 12)]);
        assert_eq!(covs[1], vec![ratio(1, 12), ratio(1, 8)]);
        assert_eq!(covs[2], vec![ratio(1, 15), ratio(3, 20)]);
        assert!(is_simplicial(&l, 2));
    }

    #[test]
    fn f3_faces() {
        let l = compact_faces(&germ("x8+y8+z8+x2y2z2", "x,y,z")).unwrap();
        let tris: Vec<_> = l.facets().map(verts).collect();
        assert_eq!(tris.len(), 3);
        assert!(tris.contains(&vec![vec![0, 0, 8], vec![2, 2, 2], vec![8, 0, 0]]));
        assert!(tris.contains(&vec![vec![0, 8, 0], vec![2, 2, 2], vec![8, 0, 0]]));
        assert!(tris.contains(&vec![vec![0, 0, 8], vec![0, 8, 0], vec![2, 2, 2]]));
        assert_eq!(l.faces.iter().filter(|f| f.dim == 1).count(), 6);
        assert!(is_simplicial(&l, 3));
    }

    #[test]
    fn f2_has_a_quadrilateral_facet() {
        let l = compact_faces(&germ("x4+y4+z8+x2z2+y2z2", "x,y,z")).unwrap();
        let quads: Vec<_> = l.facets().filter(|f| !f.is_simplex()).collect();
        assert_eq!(quads.len(), 1);
        assert_eq!(quads[0].supporting_covector, vec![ratio(1, 4); 3]);
        assert_eq!(l.facets().count(), 2);
        assert!(is_simplicial(&l, 3));
    }

    #[test]
    fn segment() {
        let l = compact_faces(&germ("x^2+y^2", "x,y")).unwrap();
        assert_eq!(l.facets().count(), 1);
        assert_eq!(l.faces.len(), 3);
    }

    #[test]
    fn interior_support_is_ignored() {
        let l = compact_faces(&germ("x^2+y^2+x^2*y^2+x*y^3", "x,y")).unwrap();
        assert_eq!(l.faces.len(), 3);
        let l = compact_faces(&germ("x^4+x^2*y^2+y^4+x^3*y", "x,y")).unwrap();
        // x^3*y and x^2*y^2 lie on the single edge but are not vertices.
        assert_eq!(l.facets().next().unwrap().support.len(), 4);
        assert_eq!(l.facets().next().unwrap().vertices.len(), 2);
    }

    #[test]
    fn volumes_and_milnor() {
        assert_eq!(volumes(&germ("x15+x6y4+x3y6+y12", "x,y")).unwrap(), vec![int(27), int(60)]);
        assert_eq!(volumes(&germ("x^2+y^2", "x,y")).unwrap(), vec![int(4), int(2)]);
        assert_eq!(volumes(&germ("x3+y3+z3", "x,y,z")).unwrap(), vec![int(9), ratio(27, 2), ratio(9, 2)]);
        assert_eq!(milnor_kouchnirenko(&germ("x15+x6y4+x3y6+y12", "x,y")).unwrap(), 94);
        assert_eq!(milnor_kouchnirenko(&germ("x4+y4+z8+x2z2+y2z2", "x,y,z")).unwrap(), 31);
        assert_eq!(milnor_kouchnirenko(&germ("x8+y8+z8+x2y2z2", "x,y,z")).unwrap(), 215);
        for a in 2..=6u64 {
            for b in 2..=6u64 {
                for c in [2u64, 4, 6] {
                    let g = germ(&format!("x{a}+y{b}+z{c}"), "x,y,z");
                    assert_eq!(milnor_kouchnirenko(&g).unwrap(), (a - 1) * (b - 1) * (c - 1));
                }
            }
        }
    }

    #[test]
    fn not_convenient() {
        let e = compact_faces(&germ("x^2*y+y^2", "x,y")).unwrap_err();
        assert_eq!(e, Error::NotConvenient { axis: "x".into() });
    }

    #[test]
    fn intersection_closed() {
        let l = compact_faces(&germ("x8+y8+z8+x2y2z2", "x,y,z")).unwrap();
        for a in &l.faces {
            for b in &l.faces {
                let common: Vec<_> = a.vertices.iter().filter(|v| b.vertices.contains(v)).cloned().collect();
                if !common.is_empty() {
                    assert!(l.faces.iter().any(|f| f.vertices == common), "{:?} ∩ {:?}", a.vertices, b.vertices);
                }
            }
        }
    }

    #[test]
    fn cone_membership() {
        let l = compact_faces(&germ("x15+x6y4+x3y6+y12", "x,y")).unwrap();
        let tau1 = l.facets().next().unwrap().id;
        let c = FaceCone::new(&l, tau1);
        assert!(c.contains(&[1, 7]));
        assert!(c.contains_relint(&[1, 7]));
        assert!(c.contains(&[0, 5]));
        assert!(!c.contains_relint(&[0, 5]));
        assert!(!c.contains(&[5, 1]));
        assert_eq!(normalized_cone_volume(&l.faces[tau1]), 36);
    }
}
