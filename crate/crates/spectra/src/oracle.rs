//! Brute-force checks: the Milnor algebra by truncated linear algebra on the
//! Jacobian ideal, non-degeneracy by finite-dimensionality of the face
//! algebras, and lattice-point counts of half-open cells by scanning.

use crate::error::{Error, Result};
use crate::geometry::{self, FaceCone, FaceLattice};
use crate::germ::{ExponentVector, Germ};
use crate::linalg;
use crate::polytope::Point;
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

/// Echelon basis of a space of sparse rows; a row's pivot is its smallest
/// column index.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, Vec<(usize, Rational)>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: Vec<(usize, Rational)>) {
        row.sort_by_key(|(c, _)| *c);
        while let Some((lead, coef)) = row.first().cloned() {
            let Some(piv) = self.pivots.get(&lead) else {
                let inv = Rational::one() / &coef;
                let row = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                self.pivots.insert(lead, row);
                return;
            };
            row = axpy(&row, piv, &coef);
        }
    }
}

/// `row − coef · piv` on sorted sparse rows.
fn axpy(row: &[(usize, Rational)], piv: &[(usize, Rational)], coef: &Rational) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j == piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i == row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((piv[j].0, -(coef * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - coef * &piv[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn monomials_up_to(n: usize, d: u64) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e as u32);
            rec(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub mu: u64,
    /// Monomials outside the leading terms of the Jacobian ideal, in the
    /// order used for elimination.
    pub standard_monomials: Vec<ExponentVector>,
    pub cap: u32,
}

/// Ceiling for the truncation degree: `SPECTRA_ORACLE_CEILING` if set.
pub fn default_ceiling(g: &Germ) -> u32 {
    std::env::var("SPECTRA_ORACLE_CEILING")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(4 * g.max_degree() as u32 + 8)
}

/// Quotient of the polynomials of degree ≤ `d` by the span of the truncated
/// products `m · ∂f/∂x_i`, `deg m ≤ d − 1`.
fn truncated_quotient(g: &Germ, d: u64, key: &dyn Fn(&[u32]) -> Rational) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut cols = monomials_up_to(n, d);
    let keys: HashMap<Vec<u32>, Rational> = cols.iter().map(|m| (m.clone(), key(m))).collect();
    cols.sort_by(|a, b| keys[a].cmp(&keys[b]).then_with(|| b.cmp(a)));
    let index: HashMap<&Vec<u32>, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let derivs: Vec<Vec<(Vec<u32>, Rational)>> = (0..n)
        .map(|i| g.derivative(i).into_iter().map(|(e, c)| (e.coords().to_vec(), c)).collect())
        .collect();
    let mut ech = Echelon::default();
    let multipliers = if d == 0 { Vec::new() } else { monomials_up_to(n, d - 1) };
    for m in &multipliers {
        for di in &derivs {
            let row: Vec<(usize, Rational)> = di
                .iter()
                .filter_map(|(e, c)| {
                    let prod: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                    index.get(&prod).map(|&col| (col, c.clone()))
                })
                .collect();
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    cols.iter()
        .enumerate()
        .filter(|(i, _)| !ech.pivots.contains_key(i))
        .map(|(_, m)| m.clone())
        .collect()
}

/// Milnor number and standard monomials for the local degree order.
pub fn milnor_oracle(g: &Germ, cap: Option<u32>) -> Result<OracleResult> {
    milnor_oracle_graded(g, cap, &|m: &[u32]| rational::int(m.iter().map(|&x| x as i64).sum()))
}

/// Same, with columns ordered by an arbitrary grading (smaller first) and
/// ties broken by descending lexicographic order. `cap` overrides the
/// ceiling on the truncation degree.
pub fn milnor_oracle_graded(g: &Germ, cap: Option<u32>, key: &dyn Fn(&[u32]) -> Rational) -> Result<OracleResult> {
    let ceiling = cap.unwrap_or_else(|| default_ceiling(g));
    let mut d = g.max_degree() as u32 + 2;
    let mut prev = truncated_quotient(g, d as u64, key);
    while d < ceiling {
        let next = truncated_quotient(g, d as u64 + 1, key);
        if next == prev {
            return Ok(OracleResult {
                mu: prev.len() as u64,
                standard_monomials: prev.into_iter().map(ExponentVector::new).collect(),
                cap: d,
            });
        }
        prev = next;
        d += 1;
    }
    Err(Error::NoStabilization { ceiling })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceVerdict {
    pub face: usize,
    pub verdict: Verdict,
    /// Dimension of the face algebra when it was found finite.
    pub dimension: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub faces: Vec<FaceVerdict>,
    pub overall: Verdict,
}

/// Finite-dimensionality of `A_τ = C[S_τ] / (x_i ∂f^τ/∂x_i)` for every compact
/// face, the semigroup being the lattice points of the cone over τ graded by
/// `h`. A zero window of width `dim τ + 1` certifies finiteness; exceeding
/// the normalized volume certifies infinite dimension.
pub fn nondegeneracy_check(g: &Germ, l: &FaceLattice) -> NondegeneracyReport {
    let faces: Vec<FaceVerdict> = l.faces.iter().map(|f| face_verdict(g, l, f.id)).collect();
    let overall = if faces.iter().any(|f| f.verdict == Verdict::False) {
        Verdict::False
    } else if faces.iter().all(|f| f.verdict == Verdict::True) {
        Verdict::True
    } else {
        Verdict::Unknown
    };
    NondegeneracyReport { faces, overall }
}

fn face_verdict(g: &Germ, l: &FaceLattice, id: usize) -> FaceVerdict {
    let face = &l.faces[id];
    let n = g.n();
    let poly: Vec<(Point, Rational)> = face.support.iter().map(|e| (e.to_i64(), g.terms()[e].clone())).collect();
    let gens: Vec<Vec<(Point, Rational)>> = (0..n)
        .map(|i| {
            poly.iter()
                .filter(|(e, _)| e[i] != 0)
                .map(|(e, c)| (e.clone(), c * BigInt::from(e[i])))
                .collect::<Vec<_>>()
        })
        .filter(|p| !p.is_empty())
        .collect();
    let width = face.dim + 1;
    let bound = geometry::normalized_cone_volume(face);
    let ceiling = rational::int(3 * width as i64 + 1);
    let cone = FaceCone::new(l, id);
    let mut levels: BTreeMap<Rational, Vec<Point>> = BTreeMap::new();
    for (p, h) in cone.points_up_to(&ceiling, false) {
        levels.entry(h).or_default().push(p);
    }
    let mut total = 0u64;
    let mut zero_since: Option<Rational> = None;
    for (h, pts) in &levels {
        let index: HashMap<&Point, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ech = Echelon::default();
        if let Some(below) = levels.get(&(h - Rational::one())) {
            for m in below {
                for gen in &gens {
                    let row: Vec<(usize, Rational)> = gen
                        .iter()
                        .map(|(e, c)| {
                            let prod: Point = e.iter().zip(m).map(|(a, b)| a + b).collect();
                            (index[&prod], c.clone())
                        })
                        .collect();
                    ech.insert(row);
                }
            }
        }
        let dim = (pts.len() - ech.rank()) as u64;
        total += dim;
        if total > bound {
            return FaceVerdict { face: id, verdict: Verdict::False, dimension: None };
        }
        if dim == 0 {
            let start = zero_since.get_or_insert_with(|| h.clone());
            if h - &*start >= rational::int(width as i64) {
                return FaceVerdict { face: id, verdict: Verdict::True, dimension: Some(total) };
            }
        } else {
            zero_since = None;
        }
    }
    // The scan covers the window only if no level sits past the last one seen.
    if let Some(start) = zero_since {
        if &ceiling - start >= rational::int(width as i64) {
            return FaceVerdict { face: id, verdict: Verdict::True, dimension: Some(total) };
        }
    }
    FaceVerdict { face: id, verdict: Verdict::Unknown, dimension: None }
}

/// Lattice points of `{Σ b_i v_i : 0 ≤ b_i < 1}` found by scanning the
/// bounding box and testing membership in generator coordinates.
pub fn volume_count_oracle(generators: &[Point]) -> u64 {
    let n = generators.first().map_or(0, Vec::len);
    let k = generators.len();
    let lo: Vec<i64> = (0..n).map(|i| generators.iter().map(|v| v[i].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..n).map(|i| generators.iter().map(|v| v[i].max(0)).sum()).collect();
    // Columns are generators: A c = p.
    let a: Vec<Vec<Rational>> = (0..n).map(|i| (0..k).map(|j| rational::int(generators[j][i])).collect()).collect();
    let mut count = 0;
    let mut p = lo.clone();
    loop {
        let rhs: Vec<Rational> = p.iter().map(|&x| rational::int(x)).collect();
        if let Some(c) = linalg::solve_any(&a, &rhs) {
            if c.iter().all(|x| !x.is_negative() && x < &Rational::one()) {
                count += 1;
            }
        }
        let mut i = 0;
        while i < n {
            p[i] += 1;
            if p[i] <= hi[i] {
                break;
            }
            p[i] = lo[i];
            i += 1;
        }
        if i == n {
            return count;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::compact_faces;
    use crate::germ::parse_germ;

    fn germ(text: &str, vars: &str) -> Germ {
        let v: Vec<String> = vars.split(',').map(String::from).collect();
        parse_germ(text, &v).unwrap()
    }

    fn mons(r: &OracleResult) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = r.standard_monomials.iter().map(|e| e.coords().to_vec()).collect();
        v.sort();
        v
    }

    #[test]
    fn morse_and_cubic() {
        let r = milnor_oracle(&germ("x^2+y^2", "x,y"), None).unwrap();
        assert_eq!(r.mu, 1);
        assert_eq!(mons(&r), vec![vec![0, 0]]);
        let r = milnor_oracle(&germ("x^3+y^3", "x,y"), None).unwrap();
        assert_eq!(r.mu, 4);
        assert_eq!(mons(&r), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn f2_milnor_number() {
        assert_eq!(milnor_oracle(&germ("x4+y4+z8+x2z2+y2z2", "x,y,z"), None).unwrap().mu, 31);
    }

    #[test]
    fn truncated_dimension_is_non_decreasing() {
        let g = germ("x4+y4+z8+x2z2+y2z2", "x,y,z");
        let deg = |m: &[u32]| rational::int(m.iter().map(|&x| x as i64).sum());
        let dims: Vec<usize> = (0..12).map(|d| truncated_quotient(&g, d, &deg).len()).collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
        assert_eq!(dims[11], 31);
    }

    #[test]
    fn non_isolated_does_not_stabilize() {
        let g = germ("x^2", "x,y");
        assert_eq!(milnor_oracle(&g, Some(8)), Err(Error::NoStabilization { ceiling: 8 }));
    }

    #[test]
    fn nondegeneracy() {
        let g = germ("x^2+y^2", "x,y");
        assert_eq!(nondegeneracy_check(&g, &compact_faces(&g).unwrap()).overall, Verdict::True);
        let g = germ("x^2+2*x*y+y^2", "x,y");
        assert_eq!(nondegeneracy_check(&g, &compact_faces(&g).unwrap()).overall, Verdict::False);
        let g = germ("x8+y8+z8+x2y2z2", "x,y,z");
        let r = nondegeneracy_check(&g, &compact_faces(&g).unwrap());
        assert_eq!(r.overall, Verdict::True);
    }

    #[test]
    fn volume_counts() {
        assert_eq!(volume_count_oracle(&[vec![2, 0], vec![0, 2]]), 4);
        assert_eq!(volume_count_oracle(&[vec![3, 6], vec![6, 4]]), 24);
        assert_eq!(volume_count_oracle(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), 1);
        assert_eq!(volume_count_oracle(&[vec![2, 0, 2], vec![0, 2, 2]]), 4);
    }
}
