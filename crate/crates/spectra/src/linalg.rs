//! Small dense exact linear algebra over the rationals and the integers.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<Rational>>;

pub fn to_rational(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m.clone()).1.len()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(&to_rational(rows))
}

/// A basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    let (red, pivots) = rref(m.clone());
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Rational::zero(); cols];
            x[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -red[i][free].clone();
            }
            x
        })
        .collect()
}

/// Some solution of `a x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve_any(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = red[i][cols].clone();
    }
    Some(x)
}

/// The unique solution of a square system, `None` if singular.
pub fn solve_square(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    if rank(a) < a.len() {
        return None;
    }
    solve_any(a, b)
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    d
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det_i64(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Upper-triangular Hermite normal form of the row lattice of a nonsingular
/// square integer matrix: positive diagonal, entries above the diagonal
/// reduced into `[0, diagonal)`.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Option<Vec<Vec<i128>>> {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    for c in 0..n {
        loop {
            let nz: Vec<usize> = (c..n).filter(|&i| m[i][c] != 0).collect();
            let &p = nz.iter().min_by_key(|&&i| m[i][c].abs())?;
            m.swap(c, p);
            if nz.len() == 1 {
                break;
            }
            for i in c + 1..n {
                let q = m[i][c].div_euclid(m[c][c]);
                if q != 0 {
                    for j in c..n {
                        m[i][j] -= q * m[c][j];
                    }
                }
            }
        }
        if m[c][c] < 0 {
            for x in m[c].iter_mut() {
                *x = -*x;
            }
        }
    }
    for c in 0..n {
        for i in 0..c {
            let q = m[i][c].div_euclid(m[c][c]);
            if q != 0 {
                for j in c..n {
                    m[i][j] -= q * m[c][j];
                }
            }
        }
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn determinants_agree() {
        let m = vec![vec![0, 0, 8], vec![2, 0, 2], vec![0, 2, 2]];
        assert_eq!(det_i64(&m), 32);
        assert_eq!(det(&to_rational(&m)), int(32));
        assert_eq!(det_i64(&[vec![3, 6], vec![6, 4]]), -24);
    }

    #[test]
    fn solve_and_inverse() {
        let a = to_rational(&[vec![0, 12], vec![3, 6]]);
        let x = solve_square(&a, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![ratio(1, 6), ratio(1, 12)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], ratio(-1, 6));
        assert!(solve_square(&to_rational(&[vec![1, 2], vec![2, 4]]), &[int(1), int(1)]).is_none());
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let m = to_rational(&[vec![2, 0, 2], vec![0, 2, 2]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&ns[0]).fold(Rational::zero(), |a, (x, y)| a + x * y);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn hnf_preserves_determinant() {
        let m = vec![vec![0, 12], vec![3, 6]];
        let h = hermite_normal_form(&m).unwrap();
        assert_eq!(h[1][0], 0);
        assert_eq!(h[0][0] * h[1][1], 36);
        assert!(h[0][1] >= 0 && h[0][1] < h[1][1]);
    }
}
