//! Hodge numbers face by face, independent of the basis construction.
//!
//! For every compact face `F` (and the empty face) the lattice points in the
//! relative interior of the cone over `F` are counted by height, through the
//! dilates `kF̂` and `kF`. Their numerator `B*_F` is corrected by the toric
//! g-polynomials of the face poset to a local contribution `l*_F`, which is
//! spread over weights by
//!
//! `E_F(t) = Σ_{G ⊇ F} t^{dim G − dim F} g([F,G]^*; 1/t) (1−t)^{s(G)−dim G−1} (−t)^{n−s(G)}`.
//!
//! A term `t^a` of `l*_F` times `t^j` of `E_F` is the spectral pair
//! `(a + j − 1, 2n − 2 − dim F − 2j)`.

use crate::basis;
use crate::error::{Error, Result};
use crate::geometry::{FaceCone, FaceLattice};
use crate::hodge::{HodgeTable, SpectralPairs};
use crate::rational::{self, Rational};
use crate::subdivision::{Subdivision, WeightFunction};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Polynomial in `t` with rational exponents and integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FracPoly {
    terms: BTreeMap<Rational, i64>,
}

impl FracPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::zero(), 1)
    }

    pub fn monomial(exp: Rational, coef: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef);
        p
    }

    /// `(1 − t)^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        let mut p = Self::one();
        let base = FracPoly::one().sub(&FracPoly::monomial(Rational::one(), 1));
        for _ in 0..k {
            p = p.mul(&base);
        }
        p
    }

    /// `1 / (1 − t^a)` expanded up to exponent `cap`.
    pub fn geometric(a: &Rational, cap: &Rational) -> Self {
        let mut p = Self::zero();
        let mut e = Rational::zero();
        while &e <= cap {
            p.add_term(e.clone(), 1);
            e += a;
        }
        p
    }

    pub fn add_term(&mut self, exp: Rational, coef: i64) {
        let c = self.terms.entry(exp.clone()).or_insert(0);
        *c += coef;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Rational, i64> {
        &self.terms
    }

    pub fn coefficient(&self, exp: &Rational) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FracPoly) -> FracPoly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), *c);
        }
        p
    }

    pub fn sub(&self, other: &FracPoly) -> FracPoly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }

    pub fn mul(&self, other: &FracPoly) -> FracPoly {
        let mut p = FracPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }

    /// Drops every term with exponent above `cap`.
    pub fn truncate(&self, cap: &Rational) -> FracPoly {
        FracPoly { terms: self.terms.iter().filter(|(e, _)| *e <= cap).map(|(e, c)| (e.clone(), *c)).collect() }
    }

    pub fn evaluate_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Integer-exponent polynomial from its coefficient list.
    pub fn from_coefficients(coefs: &[i64]) -> FracPoly {
        let mut p = FracPoly::zero();
        for (i, &c) in coefs.iter().enumerate() {
            p.add_term(rational::int(i as i64), c);
        }
        p
    }
}

impl fmt::Display for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}t^{}", rational::format(e))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Poincaré series of the cone over a simplex of the subdivision, graded by
/// `h`, truncated at exponent `cap`: the half-open cell numerator divided by
/// `Π (1 − t^{h(v_i)})`.
pub fn poincare_cone(s: &Subdivision, w: &WeightFunction, simplex: usize, cap: &Rational) -> Result<FracPoly> {
    let generators = s.simplices[simplex].points();
    let cell = basis::half_open_cell(simplex, &generators)?;
    let mut series = FracPoly::zero();
    for p in &cell.points {
        series.add_term(w.h_on(simplex, &p.point), 1);
    }
    for v in &generators {
        series = series.mul(&FracPoly::geometric(&w.h_on(simplex, v), cap)).truncate(cap);
    }
    Ok(series)
}

/// `((1 − t)^k P)(1)` for a series truncated at `cap ≥ k`; equals the
/// normalized volume of the cone's base simplex.
pub fn normalized_evaluation(series: &FracPoly, k: usize, cap: &Rational) -> i64 {
    FracPoly::one_minus_t_pow(k).mul(series).truncate(cap).evaluate_at_one()
}

/// The face poset with the empty face at index 0 and face `i` at `i + 1`.
struct Poset<'a> {
    l: &'a FaceLattice,
    memo: HashMap<(usize, usize), Vec<i64>>,
}

impl<'a> Poset<'a> {
    fn len(&self) -> usize {
        self.l.faces.len() + 1
    }

    fn dim(&self, a: usize) -> isize {
        if a == 0 {
            -1
        } else {
            self.l.faces[a - 1].dim as isize
        }
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        a == 0 || (b != 0 && self.l.contains(a - 1, b - 1))
    }

    fn support_size(&self, a: usize) -> usize {
        if a == 0 {
            0
        } else {
            self.l.faces[a - 1].support_size(self.l.n)
        }
    }

    /// Toric g-polynomial of the dual interval `[a, b]^*`.
    fn g_dual(&mut self, a: usize, b: usize) -> Vec<i64> {
        if a == b {
            return vec![1];
        }
        if let Some(g) = self.memo.get(&(a, b)) {
            return g.clone();
        }
        let r = (self.dim(b) - self.dim(a) - 1) as usize;
        let mut f = vec![0i64; r + 2];
        for y in 0..self.len() {
            if y == a || !self.leq(a, y) || !self.leq(y, b) {
                continue;
            }
            let gy = self.g_dual(y, b);
            let e = (self.dim(y) - self.dim(a) - 1) as usize;
            let term = poly_mul(&gy, &t_minus_one_pow(e));
            for (i, c) in term.iter().enumerate() {
                f[i] += c;
            }
        }
        let g: Vec<i64> = (0..=r / 2).map(|i| f[i] - if i > 0 { f[i - 1] } else { 0 }).collect();
        self.memo.insert((a, b), g.clone());
        g
    }

    /// `t^{dim b − dim a} g([a,b]^*; 1/t)`.
    fn correction(&mut self, a: usize, b: usize) -> FracPoly {
        let d = self.dim(b) - self.dim(a);
        let mut p = FracPoly::zero();
        for (i, c) in self.g_dual(a, b).into_iter().enumerate() {
            p.add_term(rational::int(d as i64 - i as i64), c);
        }
        p
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn t_minus_one_pow(e: usize) -> Vec<i64> {
    (0..e).fold(vec![1], |acc, _| poly_mul(&acc, &[-1, 1]))
}

/// `Σ t^{h(m)}` over lattice points `m` in the relative interior of the cone
/// over a face with `h(m) ≤ k`. Splitting by height recovers the counts
/// `ℓ*((j+1)F̂) − ℓ*(jF̂) − ℓ*(jF)` (open slabs) and `ℓ*(jF)` (levels).
pub fn relint_cone_series(cone: &FaceCone, k: usize) -> FracPoly {
    let mut series = FracPoly::zero();
    for (_, h) in cone.points_up_to(&rational::int(k as i64), true) {
        series.add_term(h, 1);
    }
    series
}

/// Relative-interior lattice points of the dilate `kF̂` (`hat`) or `kF`.
pub fn ell_star(cone: &FaceCone, k: usize, hat: bool) -> usize {
    let kq = rational::int(k as i64);
    cone.points_up_to(&kq, true)
        .into_iter()
        .filter(|(_, h)| if hat { h < &kq } else { h == &kq })
        .count()
}

/// Spectral pairs from the face-by-face formula.
pub fn danilov_spectral_pairs(l: &FaceLattice, n: usize) -> Result<SpectralPairs> {
    let mut poset = Poset { l, memo: HashMap::new() };
    let size = poset.len();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&a| poset.dim(a));
    let mut lstar: Vec<FracPoly> = vec![FracPoly::zero(); size];
    for &g in &order {
        let mut b = if g == 0 {
            FracPoly::one()
        } else {
            let cone = FaceCone::new(l, g - 1);
            let top = l.faces[g - 1].dim + 1;
            let cap = rational::int(top as i64);
            FracPoly::one_minus_t_pow(top).mul(&relint_cone_series(&cone, top)).truncate(&cap)
        };
        for &f in &order {
            if f != g && poset.leq(f, g) && !lstar[f].is_zero() {
                let corr = poset.correction(f, g);
                b = b.sub(&lstar[f].mul(&corr));
            }
        }
        lstar[g] = b;
    }
    let n_i = n as i64;
    let mut raw: BTreeMap<(Rational, i64), i64> = BTreeMap::new();
    for f in 0..size {
        if lstar[f].is_zero() {
            continue;
        }
        let mut e = FracPoly::zero();
        for g in 0..size {
            if !poset.leq(f, g) {
                continue;
            }
            let s = poset.support_size(g);
            let free = (s as isize - poset.dim(g) - 1) as usize;
            let mut term = poset.correction(f, g).mul(&FracPoly::one_minus_t_pow(free));
            let c = n - s;
            term = term.mul(&FracPoly::monomial(rational::int(c as i64), if c.is_multiple_of(2) { 1 } else { -1 }));
            e = e.add(&term);
        }
        let dim_f = poset.dim(f) as i64;
        for (a, ca) in lstar[f].terms() {
            for (j, cj) in e.terms() {
                let jj = rational::to_i64(j).expect("integral exponent");
                let key = (a + j - Rational::one(), 2 * n_i - 2 - dim_f - 2 * jj);
                *raw.entry(key).or_insert(0) += ca * cj;
            }
        }
    }
    let mut sp = SpectralPairs::new();
    for ((a, w), m) in raw {
        if m < 0 {
            return Err(Error::Internal(format!("negative multiplicity {m} at ({}, {w})", rational::format(&a))));
        }
        sp.insert(a, w, m as u64);
    }
    Ok(sp)
}

/// Hodge numbers `h^{p,q}_χ` from the face-by-face formula.
pub fn danilov_hodge_numbers(l: &FaceLattice, n: usize) -> Result<HodgeTable> {
    if let Some(why) = crate::geometry::simpliciality_violation(l, n) {
        return Err(Error::NotSimplicial(why));
    }
    Ok(HodgeTable::from_pairs(&danilov_spectral_pairs(l, n)?, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    /// `(p, q, χ, left, right)` for every entry that differs.
    pub disagreements: Vec<(i64, i64, Rational, u64, u64)>,
}

impl CrossCheck {
    pub fn equal(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn cross_check(a: &HodgeTable, b: &HodgeTable) -> CrossCheck {
    let keys: std::collections::BTreeSet<_> = a.entries.keys().chain(b.entries.keys()).cloned().collect();
    let disagreements = keys
        .into_iter()
        .filter_map(|(p, q, chi)| {
            let x = a.get(p, q, &chi);
            let y = b.get(p, q, &chi);
            (x != y).then_some((p, q, chi, x, y))
        })
        .collect();
    CrossCheck { disagreements }
}
