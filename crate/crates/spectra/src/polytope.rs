//! Faces and pulling triangulations of lattice polytopes given by point sets.

use crate::linalg::{self, Matrix};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, VecDeque};

pub type Point = Vec<i64>;

fn diff(a: &Point, b: &Point) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Affine dimension of a point set; `-1` for the empty set.
pub fn affine_dim(points: &[&Point]) -> isize {
    let Some(p0) = points.first() else {
        return -1;
    };
    let rows: Vec<Vec<i64>> = points[1..].iter().map(|p| diff(p, p0)).collect();
    if rows.is_empty() {
        return 0;
    }
    linalg::rank_i64(&rows) as isize
}

/// Affine coordinates of every point with respect to a basis of the affine hull.
struct AffineChart {
    coords: Vec<Vec<Rational>>,
    dim: usize,
}

impl AffineChart {
    fn new(points: &[&Point]) -> AffineChart {
        let p0 = points[0];
        let dirs: Vec<Vec<i64>> = points.iter().map(|p| diff(p, p0)).collect();
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for d in &dirs {
            let mut trial = basis.clone();
            trial.push(d.clone());
            if linalg::rank_i64(&trial) == trial.len() {
                basis = trial;
            }
        }
        let dim = basis.len();
        // Coordinates c with c·basis = d: pick `dim` independent columns.
        let bt = linalg::to_rational(&basis);
        let (_, cols) = linalg::rref(bt.clone());
        let square: Matrix = (0..dim)
            .map(|i| cols.iter().map(|&c| bt[i][c].clone()).collect())
            .collect();
        // Solve c · square = d[cols] ⇔ squareᵀ cᵀ = d[cols]ᵀ.
        let sq_t: Matrix = (0..dim).map(|j| (0..dim).map(|i| square[i][j].clone()).collect()).collect();
        let inv = if dim > 0 { linalg::inverse(&sq_t).expect("independent columns") } else { Vec::new() };
        let coords = dirs
            .iter()
            .map(|d| {
                (0..dim)
                    .map(|i| {
                        (0..dim).fold(Rational::zero(), |acc, j| acc + &inv[i][j] * BigInt::from(d[cols[j]]))
                    })
                    .collect()
            })
            .collect();
        AffineChart { coords, dim }
    }
}

/// Normal of the hyperplane through `d` points of R^d (generalized cross product).
fn hyperplane_normal(pts: &[&Vec<Rational>]) -> Option<Vec<Rational>> {
    let d = pts[0].len();
    let rows: Matrix = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let normal: Vec<Rational> = (0..d)
        .map(|k| {
            let minor: Matrix = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let m = linalg::det(&minor);
            if k % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    if normal.iter().all(Zero::is_zero) {
        None
    } else {
        Some(normal)
    }
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    combinations(n, k, &mut f);
}

/// Facets of conv(points[idx]) as sorted index sets into `points`.
pub fn facets(points: &[Point], idx: &[usize]) -> Vec<Vec<usize>> {
    let pts: Vec<&Point> = idx.iter().map(|&i| &points[i]).collect();
    let d = affine_dim(&pts);
    if d <= 0 {
        return Vec::new();
    }
    if d == 1 {
        // Endpoints of a segment: extreme values of the single chart coordinate.
        let chart = AffineChart::new(&pts);
        let c: Vec<&Rational> = chart.coords.iter().map(|c| &c[0]).collect();
        let lo = c.iter().min().unwrap();
        let hi = c.iter().max().unwrap();
        let pick = |v: &Rational| -> Vec<usize> {
            let mut s: Vec<usize> = idx.iter().zip(&c).filter(|(_, x)| **x == v).map(|(&i, _)| i).collect();
            s.sort_unstable();
            s
        };
        return vec![pick(lo), pick(hi)];
    }
    let chart = AffineChart::new(&pts);
    let d = chart.dim;
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for_each_combination(pts.len(), d, |sub| {
        let chosen: Vec<&Vec<Rational>> = sub.iter().map(|&i| &chart.coords[i]).collect();
        let Some(normal) = hyperplane_normal(&chosen) else {
            return;
        };
        let base = chosen[0];
        let vals: Vec<Rational> = chart
            .coords
            .iter()
            .map(|c| c.iter().zip(base).zip(&normal).fold(Rational::zero(), |acc, ((x, b), n)| acc + (x - b) * n))
            .collect();
        let pos = vals.iter().any(Signed::is_positive);
        let neg = vals.iter().any(Signed::is_negative);
        if pos && neg {
            return;
        }
        let mut face: Vec<usize> = idx.iter().zip(&vals).filter(|(_, v)| v.is_zero()).map(|(&i, _)| i).collect();
        face.sort_unstable();
        found.insert(face);
    });
    found.into_iter().collect()
}

/// A nonempty face of a point configuration: the indices of all points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFace {
    pub points: Vec<usize>,
    pub dim: usize,
}

/// Every nonempty face of conv(points), the polytope itself included.
pub fn faces(points: &[Point]) -> Vec<PointFace> {
    let all: Vec<usize> = (0..points.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::from([all.clone()]);
    seen.insert(all);
    let mut out = Vec::new();
    while let Some(f) = queue.pop_front() {
        let pts: Vec<&Point> = f.iter().map(|&i| &points[i]).collect();
        let dim = affine_dim(&pts) as usize;
        for sub in facets(points, &f) {
            if seen.insert(sub.clone()) {
                queue.push_back(sub);
            }
        }
        out.push(PointFace { points: f, dim });
    }
    out
}

/// Indices of the vertices of conv(points).
pub fn vertices(points: &[Point]) -> Vec<usize> {
    let mut v: Vec<usize> = faces(points)
        .into_iter()
        .filter(|f| f.dim == 0)
        .map(|f| f.points[0])
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Pulling triangulation of the polytope with the given vertices: pull at the
/// lexicographically least vertex and recurse into the facets avoiding it.
/// Each simplex is returned with lexicographically sorted vertices.
pub fn pulling_triangulation(vertices: &[Point]) -> Vec<Vec<Point>> {
    let mut vs = vertices.to_vec();
    vs.sort();
    vs.dedup();
    let all: Vec<usize> = (0..vs.len()).collect();
    let mut out = Vec::new();
    pull(&vs, &all, &mut out);
    for s in out.iter_mut() {
        s.sort();
    }
    out.sort();
    out
}

fn pull(points: &[Point], idx: &[usize], out: &mut Vec<Vec<Point>>) {
    let pts: Vec<&Point> = idx.iter().map(|&i| &points[i]).collect();
    let d = affine_dim(&pts);
    if d + 1 == idx.len() as isize {
        out.push(pts.into_iter().cloned().collect());
        return;
    }
    // `points` is sorted, so the smallest index is the lexicographically least vertex.
    let apex = *idx.iter().min().unwrap();
    for f in facets(points, idx) {
        if f.contains(&apex) {
            continue;
        }
        let mut sub = Vec::new();
        pull(points, &f, &mut sub);
        for mut s in sub {
            s.push(points[apex].clone());
            out.push(s);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_faces() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]];
        let fs = faces(&pts);
        assert_eq!(fs.iter().filter(|f| f.dim == 1).count(), 4);
        assert_eq!(fs.iter().filter(|f| f.dim == 0).count(), 4);
        assert_eq!(vertices(&pts), vec![0, 1, 2, 3]);
    }

    #[test]
    fn segment_with_interior_point() {
        let pts = vec![vec![0, 12], vec![3, 6], vec![1, 10]];
        assert_eq!(facets(&pts, &[0, 1, 2]), vec![vec![0], vec![1]]);
        assert_eq!(vertices(&pts), vec![0, 1]);
    }

    #[test]
    fn quadrilateral_pulling() {
        let quad = vec![vec![4, 0, 0], vec![0, 4, 0], vec![0, 1, 3], vec![1, 0, 3]];
        let t = pulling_triangulation(&quad);
        assert_eq!(
            t,
            vec![
                vec![vec![0, 1, 3], vec![0, 4, 0], vec![4, 0, 0]],
                vec![vec![0, 1, 3], vec![1, 0, 3], vec![4, 0, 0]],
            ]
        );
    }

    #[test]
    fn octahedron_faces() {
        let pts = vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ];
        let fs = faces(&pts);
        assert_eq!(fs.iter().filter(|f| f.dim == 2).count(), 8);
        assert_eq!(fs.iter().filter(|f| f.dim == 1).count(), 12);
        assert_eq!(pulling_triangulation(&pts).len(), 4);
    }
}
