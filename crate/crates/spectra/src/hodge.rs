//! Hodge classification of basis elements, spectral pairs and the symmetry
//! checks.
//!
//! An element with `h = h(point)` has spectral number `α = h − 1` and
//! eigenvalue `e^{−2πiχ}` with `χ = h mod 1`. Its Hodge index is
//! `p = ⌊n − 1 − α⌋`. The weight is centred at `n − 1`, raised by the
//! codimension of the element's skeleton and lowered by two per Hodge level
//! its copy was shifted; `q = w − p`, or `q = w + 1 − p` when `χ = 0`.

use crate::basis::BasisElement;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::subdivision::{locate_and_evaluate, Subdivision, WeightFunction};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeClass {
    pub p: i64,
    pub q: i64,
    /// Fractional part of `h`, standing for the eigenvalue `e^{−2πiχ}`.
    pub chi: Rational,
    pub weight: i64,
    pub alpha: Rational,
}

/// `p` and `q` for a spectral pair in `n` variables.
pub fn hodge_indices(alpha: &Rational, w: i64, n: usize) -> (i64, i64, Rational) {
    let chi = rational::frac(alpha);
    let p = rational::floor_i64(&(rational::int(n as i64 - 1) - alpha));
    let q = if chi.is_zero() { w + 1 - p } else { w - p };
    (p, q, chi)
}

/// Inverse of [`hodge_indices`].
pub fn spectral_pair(p: i64, q: i64, chi: &Rational, n: usize) -> (Rational, i64) {
    if chi.is_zero() {
        (rational::int(n as i64 - 1 - p), p + q - 1)
    } else {
        (rational::int(n as i64 - 2 - p) + chi, p + q)
    }
}

pub fn classify(e: &BasisElement, w: &WeightFunction, s: &Subdivision, n: usize) -> Result<HodgeClass> {
    let (_, h) = locate_and_evaluate(w, s, &e.point.to_i64())?;
    let provenance = || {
        format!(
            "point {} (skeleton {:?}, shift {}, copy {:?})",
            e.point,
            e.skeleton.iter().map(ToString::to_string).collect::<Vec<_>>(),
            e.hodge_shift,
            e.copy.as_ref().map(|c| (c.level, c.canonical))
        )
    };
    if h != e.h {
        return Err(Error::Unclassifiable(format!("h = {} but construction gave {}: {}", rational::format(&h), rational::format(&e.h), provenance())));
    }
    let n_i = n as i64;
    let alpha = &h - Rational::one();
    let weight = 2 * n_i - 1 - e.skeleton_dim as i64 - 2 * e.hodge_shift as i64;
    let (p, q, chi) = hodge_indices(&alpha, weight, n);
    let in_range = |x: i64| (0..=n_i).contains(&x);
    if !in_range(p) || !in_range(q) || alpha <= -Rational::one() || alpha >= rational::int(n_i - 1) {
        return Err(Error::Unclassifiable(format!("p = {p}, q = {q}, α = {}: {}", rational::format(&alpha), provenance())));
    }
    Ok(HodgeClass { p, q, chi, weight, alpha })
}

/// Multiset of spectral pairs `(α, w)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectralPairs {
    entries: BTreeMap<(Rational, i64), u64>,
}

impl SpectralPairs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, alpha: Rational, w: i64, m: u64) {
        if m > 0 {
            *self.entries.entry((alpha, w)).or_insert(0) += m;
        }
    }

    pub fn get(&self, alpha: &Rational, w: i64) -> u64 {
        self.entries.get(&(alpha.clone(), w)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries by ascending `α`, then descending `w`.
    pub fn iter(&self) -> impl Iterator<Item = (&Rational, i64, u64)> {
        let mut v: Vec<_> = self.entries.iter().map(|((a, w), m)| (a, *w, *m)).collect();
        v.sort_by(|x, y| x.0.cmp(y.0).then(y.1.cmp(&x.1)));
        v.into_iter()
    }

    /// Image under `(α, w) ↦ (n − 2 − α, 2n − 2 − w)`.
    pub fn reflected(&self, n: usize) -> SpectralPairs {
        let n = n as i64;
        let mut out = SpectralPairs::new();
        for ((a, w), m) in &self.entries {
            out.insert(rational::int(n - 2) - a, 2 * n - 2 - w, *m);
        }
        out
    }
}

impl FromIterator<(Rational, i64)> for SpectralPairs {
    fn from_iter<I: IntoIterator<Item = (Rational, i64)>>(iter: I) -> Self {
        let mut sp = SpectralPairs::new();
        for (a, w) in iter {
            sp.insert(a, w, 1);
        }
        sp
    }
}

impl fmt::Display for SpectralPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(a, w, m)| format!("(({},{w}),{m})", rational::format(a)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn spectral_pairs(classes: &[HodgeClass]) -> SpectralPairs {
    classes.iter().map(|c| (c.alpha.clone(), c.weight)).collect()
}

/// Mixed Hodge numbers `h^{p,q}_χ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeTable {
    pub entries: BTreeMap<(i64, i64, Rational), u64>,
}

impl HodgeTable {
    pub fn from_pairs(sp: &SpectralPairs, n: usize) -> HodgeTable {
        let mut entries = BTreeMap::new();
        for (a, w, m) in sp.iter() {
            let (p, q, chi) = hodge_indices(a, w, n);
            *entries.entry((p, q, chi)).or_insert(0) += m;
        }
        HodgeTable { entries }
    }

    pub fn to_pairs(&self, n: usize) -> SpectralPairs {
        let mut sp = SpectralPairs::new();
        for ((p, q, chi), m) in &self.entries {
            let (a, w) = spectral_pair(*p, *q, chi, n);
            sp.insert(a, w, *m);
        }
        sp
    }

    pub fn get(&self, p: i64, q: i64, chi: &Rational) -> u64 {
        self.entries.get(&(p, q, chi.clone())).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub spp_symmetric: bool,
    pub hodge_symmetric: bool,
    /// `None` when no expected total was supplied.
    pub total_matches: Option<bool>,
    pub counterexamples: Vec<String>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.spp_symmetric && self.hodge_symmetric && self.total_matches != Some(false)
    }
}

/// Checks `(α, w) ↦ (n−2−α, 2n−2−w)` on the pairs, `h^{p,q}_χ = h^{n−1−p,n−1−q}_{χ̄}`
/// for `χ ≠ 1`, `h^{p,q}_1 = h^{n−p,n−q}_1`, and optionally the total.
pub fn verify_symmetries(sp: &SpectralPairs, hodge: &HodgeTable, n: usize, mu: Option<u64>) -> SymmetryReport {
    let mut counterexamples = Vec::new();
    let reflected = sp.reflected(n);
    for (a, w, m) in sp.iter() {
        let r = reflected.get(a, w);
        if r != m {
            counterexamples.push(format!("m({},{w}) = {m} but its mirror has {r}", rational::format(a)));
        }
    }
    let spp_symmetric = counterexamples.is_empty();
    let n_i = n as i64;
    let mut hodge_symmetric = true;
    for ((p, q, chi), m) in &hodge.entries {
        let (pp, qq, cc) = if chi.is_zero() {
            (n_i - p, n_i - q, chi.clone())
        } else {
            (n_i - 1 - p, n_i - 1 - q, Rational::one() - chi)
        };
        let other = hodge.get(pp, qq, &cc);
        if other != *m {
            hodge_symmetric = false;
            counterexamples.push(format!(
                "h^{{{p},{q}}}_{} = {m} but h^{{{pp},{qq}}}_{} = {other}",
                rational::format(chi),
                rational::format(&cc)
            ));
        }
    }
    let total_matches = mu.map(|mu| {
        let ok = sp.total() == mu && hodge.total() == mu;
        if !ok {
            counterexamples.push(format!("total {} differs from μ = {mu}", sp.total()));
        }
        ok
    });
    SymmetryReport { spp_symmetric, hodge_symmetric, total_matches, counterexamples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn index_conversion() {
        // (1/2, 2) in three variables is h^{1,1} with χ = 1/2.
        assert_eq!(hodge_indices(&ratio(1, 2), 2, 3), (1, 1, ratio(1, 2)));
        // (0, 3) is h^{2,2}_1.
        assert_eq!(hodge_indices(&rational::int(0), 3, 3), (2, 2, rational::int(0)));
        // (−1/2, 4) is h^{2,2} with χ = 1/2.
        assert_eq!(hodge_indices(&ratio(-1, 2), 4, 3), (2, 2, ratio(1, 2)));
        for (a, w) in [(ratio(-19, 24), 1), (rational::int(0), 1), (ratio(3, 2), 0)] {
            let (p, q, chi) = hodge_indices(&a, w, 3);
            assert_eq!(spectral_pair(p, q, &chi, 3), (a, w));
        }
    }

    #[test]
    fn ordering_and_text() {
        let mut sp = SpectralPairs::new();
        sp.insert(rational::int(0), 2, 2);
        sp.insert(ratio(-1, 4), 2, 1);
        sp.insert(rational::int(0), 3, 1);
        assert_eq!(sp.to_string(), "((-1/4,2),1),((0,3),1),((0,2),2)");
    }

    #[test]
    fn symmetry_of_mirror_pairs() {
        let mut sp = SpectralPairs::new();
        sp.insert(ratio(-1, 2), 4, 1);
        sp.insert(ratio(3, 2), 0, 1);
        let t = HodgeTable::from_pairs(&sp, 3);
        assert!(verify_symmetries(&sp, &t, 3, Some(2)).passed());
        sp.insert(ratio(1, 8), 2, 1);
        let t = HodgeTable::from_pairs(&sp, 3);
        let r = verify_symmetries(&sp, &t, 3, None);
        assert!(!r.spp_symmetric && !r.hodge_symmetric);
        let empty = SpectralPairs::new();
        assert!(verify_symmetries(&empty, &HodgeTable::default(), 3, Some(0)).passed());
    }
}
