mod common;

use common::*;
use proptest::prelude::*;
use spectra::germ::{default_variables, parse_germ};
use spectra::Germ;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_copy_is_an_involution(gens in prop_oneof![simplex(2, 6), simplex(3, 6)]) {
        check_canonical_involution(&gens)?;
    }

    #[test]
    fn spp_text_round_trips(sp in spectral_pairs()) {
        check_spp_round_trip(&sp)?;
    }

    #[test]
    fn germ_text_round_trips(g in convenient_germ()) {
        let text = g.to_string();
        prop_assert_eq!(parse_germ(&text, g.variables()).unwrap(), g);
    }

    #[test]
    fn compressed_and_caret_syntax_agree(a in 0u32..30, b in 0u32..30) {
        prop_assume!(a + b > 0);
        let vars = default_variables(2);
        let caret = parse_germ(&format!("x^{a}*y^{b}"), &vars).unwrap();
        let compressed = parse_germ(&format!("x{a}y{b}"), &vars).unwrap();
        prop_assert_eq!(caret.terms(), compressed.terms());
    }

    #[test]
    fn spectrum_of_random_germs(g in convenient_germ(), coeffs in proptest::collection::vec(0u8..4, 1..4)) {
        let Some(c) = computed(&g) else { return Ok(()) };
        check_disjoint_copies(&c)?;
        check_h_continuity(&c, &coeffs)?;
        check_total_and_range(&c)?;
    }
}

#[test]
fn fixture_invariants() {
    for f in spectra::io::FIXTURES.iter() {
        let c = computed(&f.germ()).unwrap();
        check_disjoint_copies(&c).unwrap();
        check_h_continuity(&c, &[1, 2, 3]).unwrap();
        check_total_and_range(&c).unwrap();
    }
}

#[test]
fn brieskorn_spectrum_is_the_product_formula() {
    // Spectral numbers of x^a + y^b + z^c are i/a + j/b + k/c − 1.
    for (a, b, c) in [(2, 3, 5), (3, 3, 4), (2, 4, 5)] {
        let comp = computed(&brieskorn(a, b, c)).unwrap();
        let mut got: Vec<_> = comp.classes.iter().map(|k| k.alpha.clone()).collect();
        let mut want = Vec::new();
        for i in 1..a {
            for j in 1..b {
                for k in 1..c {
                    let r = spectra::rational::ratio(i as i64, a as i64)
                        + spectra::rational::ratio(j as i64, b as i64)
                        + spectra::rational::ratio(k as i64, c as i64)
                        - spectra::rational::int(1);
                    want.push(r);
                }
            }
        }
        got.sort();
        want.sort();
        assert_eq!(got, want, "x^{a}+y^{b}+z^{c}");
    }
}

#[test]
fn germ_with_no_terms_is_rejected() {
    assert!(Germ::from_terms(2, []).is_err());
}
