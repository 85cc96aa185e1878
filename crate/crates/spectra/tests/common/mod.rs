#![allow(dead_code)]

use proptest::prelude::*;
use spectra::basis;
use spectra::geometry;
use spectra::hodge::SpectralPairs;
use spectra::io::{emit_spp, parse_spp_text};
use spectra::pipeline::Computation;
use spectra::polytope::Point;
use spectra::rational;
use spectra::{compute, ComputeOptions, Error, Germ};
use std::collections::HashSet;

pub fn germ(text: &str, vars: &str) -> Germ {
    let v: Vec<String> = vars.split(',').map(String::from).collect();
    spectra::parse_germ(text, &v).unwrap()
}

pub fn brieskorn(a: u32, b: u32, c: u32) -> Germ {
    Germ::from_terms(3, [(vec![a, 0, 0], 1), (vec![0, b, 0], 1), (vec![0, 0, c], 1)]).unwrap()
}

pub fn det(m: &[Point]) -> i64 {
    spectra::linalg::det_i64(m) as i64
}

/// A random convenient germ: pure powers on every axis plus a few mixed
/// monomials with small nonzero coefficients.
pub fn convenient_germ() -> impl Strategy<Value = Germ> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let powers = proptest::collection::vec(2u32..=7, n);
            let mixed = proptest::collection::vec(
                (proptest::collection::vec(0u32..=4, n), prop_oneof![-3i64..=-1, 1i64..=3]),
                0..=2,
            );
            (Just(n), powers, mixed)
        })
        .prop_map(|(n, powers, mixed)| {
            let mut terms: Vec<(Vec<u32>, i64)> = powers
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut e = vec![0; n];
                    e[i] = a;
                    (e, 1)
                })
                .collect();
            terms.extend(mixed.into_iter().filter(|(e, _)| e.iter().sum::<u32>() >= 2));
            Germ::from_terms(n, terms).unwrap()
        })
}

/// Runs the pipeline, mapping inputs outside its domain to `None`.
pub fn computed(g: &Germ) -> Option<Computation> {
    match compute(g, ComputeOptions::default()) {
        Ok(c) => Some(c),
        Err(Error::NotSimplicial(_) | Error::Degenerate(_) | Error::ConstantTerm) => None,
        Err(e) => panic!("{g}: {e}"),
    }
}

/// `n` linearly independent generators with entries in `0..=max`.
pub fn simplex(n: usize, max: i64) -> impl Strategy<Value = Vec<Point>> {
    proptest::collection::vec(proptest::collection::vec(0..=max, n), n)
        .prop_filter("singular", |m| spectra::linalg::det_i64(m) != 0)
}

pub fn spectral_pairs() -> impl Strategy<Value = SpectralPairs> {
    proptest::collection::vec(((-60i64..=60, 1i64..=24), -2i64..=8, 1u64..=9), 0..12).prop_map(|v| {
        let mut sp = SpectralPairs::new();
        for ((a, b), w, m) in v {
            sp.insert(rational::ratio(a, b), w, m);
        }
        sp
    })
}

pub fn check_canonical_involution(gens: &[Point]) -> Result<(), TestCaseError> {
    let cell = basis::half_open_cell(0, gens).unwrap();
    let open: HashSet<&Point> = cell
        .points
        .iter()
        .filter(|p| p.coefficients.iter().all(|c| c > &rational::int(0)))
        .map(|p| &p.point)
        .collect();
    for p in &open {
        let c = basis::canonical_copy(gens, p).unwrap().to_i64();
        prop_assert!(open.contains(&c), "copy {c:?} of {p:?} left the open cell");
        let back = basis::canonical_copy(gens, &c).unwrap().to_i64();
        prop_assert_eq!(&back, *p);
    }
    Ok(())
}

pub fn check_disjoint_copies(c: &Computation) -> Result<(), TestCaseError> {
    let mut seen = HashSet::new();
    for e in &c.basis {
        prop_assert!(seen.insert(e.point.clone()), "{} emitted twice", e.point);
        prop_assert!(e.point.coords().iter().all(|&x| x >= 1));
    }
    Ok(())
}

/// The weight function agrees on both sides of every shared face, at lattice
/// points of the cone over that face.
pub fn check_h_continuity(c: &Computation, coeffs: &[u8]) -> Result<(), TestCaseError> {
    let s = &c.subdivision;
    for i in 0..s.simplices.len() {
        for j in i + 1..s.simplices.len() {
            let shared: Vec<Point> = s.simplices[i]
                .points()
                .into_iter()
                .filter(|v| s.simplices[j].points().contains(v))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let p: Point = (0..s.n)
                .map(|k| shared.iter().enumerate().map(|(t, v)| v[k] * coeffs[t % coeffs.len()] as i64).sum())
                .collect();
            prop_assert_eq!(c.weights.h_on(i, &p), c.weights.h_on(j, &p));
            let q: Point = p.iter().zip(&shared[0]).map(|(a, b)| a + b).collect();
            prop_assert_eq!(c.weights.h_on(i, &q), c.weights.h_on(j, &q));
        }
    }
    Ok(())
}

pub fn check_total_and_range(c: &Computation) -> Result<(), TestCaseError> {
    let n = c.germ.n() as i64;
    prop_assert_eq!(c.spectral_pairs.total(), geometry::milnor_kouchnirenko(&c.germ).unwrap());
    for (a, _, _) in c.spectral_pairs.iter() {
        prop_assert!(a > &rational::int(-1) && a < &rational::int(n - 1), "α = {} out of range", rational::format(a));
    }
    Ok(())
}

pub fn check_spp_round_trip(sp: &SpectralPairs) -> Result<(), TestCaseError> {
    prop_assert_eq!(&parse_spp_text(&emit_spp(sp)).unwrap(), sp);
    Ok(())
}
