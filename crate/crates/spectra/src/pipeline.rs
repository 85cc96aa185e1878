//! End-to-end computation from a parsed germ to spectral pairs, Hodge numbers
//! and the monomial basis, with optional brute-force cross-checks.

use crate::basis::{build_basis, BasisElement};
use crate::danilov::{self, CrossCheck};
use crate::error::{Error, Result};
use crate::geometry::{self, FaceLattice};
use crate::germ::Germ;
use crate::hodge::{self, HodgeClass, HodgeTable, SpectralPairs, SymmetryReport};
use crate::oracle::{self, NondegeneracyReport, OracleResult, Verdict};
use crate::rational::Rational;
use crate::subdivision::{self, Subdivision, WeightFunction};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeOptions {
    /// Certify non-degeneracy face by face; otherwise it is assumed.
    pub check_nondegeneracy: bool,
    /// Run the Milnor-algebra oracle and the face-by-face Hodge formula.
    pub run_oracles: bool,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { check_nondegeneracy: true, run_oracles: false }
    }
}

#[derive(Clone, Debug)]
pub struct OracleChecks {
    pub milnor: OracleResult,
    /// Basis and standard monomials have the same number of elements at
    /// every value of `h`.
    pub levels_agree: bool,
    pub danilov: HodgeTable,
    pub cross_check: CrossCheck,
}

#[derive(Clone, Debug)]
pub struct Computation {
    pub germ: Germ,
    pub lattice: FaceLattice,
    pub subdivision: Subdivision,
    pub weights: WeightFunction,
    pub basis: Vec<BasisElement>,
    pub classes: Vec<HodgeClass>,
    pub spectral_pairs: SpectralPairs,
    pub hodge: HodgeTable,
    pub mu: u64,
    pub nondegeneracy: Option<NondegeneracyReport>,
    pub symmetry: SymmetryReport,
    pub oracles: Option<OracleChecks>,
    pub timings: Vec<(&'static str, Duration)>,
}

struct Clock {
    last: Instant,
    laps: Vec<(&'static str, Duration)>,
}

impl Clock {
    fn lap(&mut self, name: &'static str) {
        let now = Instant::now();
        self.laps.push((name, now - self.last));
        self.last = now;
    }
}

pub fn compute(g: &Germ, opts: ComputeOptions) -> Result<Computation> {
    let mut clock = Clock { last: Instant::now(), laps: Vec::new() };
    g.require_convenient()?;
    let n = g.n();
    let lattice = geometry::compact_faces(g)?;
    if let Some(why) = geometry::simpliciality_violation(&lattice, n) {
        return Err(Error::NotSimplicial(why));
    }
    let mu = geometry::kouchnirenko_of(&lattice)?;
    clock.lap("geometry");

    let nondegeneracy = if opts.check_nondegeneracy {
        let report = oracle::nondegeneracy_check(g, &lattice);
        if report.overall != Verdict::True {
            let bad: Vec<String> = report
                .faces
                .iter()
                .filter(|f| f.verdict != Verdict::True)
                .map(|f| {
                    let vs: Vec<String> = lattice.faces[f.face].vertices.iter().map(ToString::to_string).collect();
                    format!("[{}] {}", vs.join(" "), f.verdict.as_str())
                })
                .collect();
            return Err(Error::Degenerate(format!("face check {}", bad.join(", "))));
        }
        clock.lap("nondegeneracy");
        Some(report)
    } else {
        None
    };

    let subdivision = subdivision::triangulate(&lattice)?;
    let weights = subdivision::weight_function(&subdivision)?;
    clock.lap("subdivision");
    let basis = build_basis(g, &lattice, &subdivision, &weights)?;
    clock.lap("basis");
    let classes = basis
        .iter()
        .map(|e| hodge::classify(e, &weights, &subdivision, n))
        .collect::<Result<Vec<_>>>()?;
    let spectral_pairs = hodge::spectral_pairs(&classes);
    let hodge_table = HodgeTable::from_pairs(&spectral_pairs, n);
    let symmetry = hodge::verify_symmetries(&spectral_pairs, &hodge_table, n, Some(mu));
    if !symmetry.passed() {
        return Err(Error::Internal(format!("symmetry check failed: {}", symmetry.counterexamples.join("; "))));
    }
    clock.lap("classification");

    let oracles = if opts.run_oracles {
        let key = |m: &[u32]| {
            let p: Vec<i64> = m.iter().map(|&x| x as i64 + 1).collect();
            lattice.newton_order(&p)
        };
        let milnor = oracle::milnor_oracle_graded(g, None, &key)?;
        if milnor.mu != mu {
            return Err(Error::Internal(format!("oracle gives μ = {} but the Newton polyhedron gives {mu}", milnor.mu)));
        }
        let mut levels: BTreeMap<Rational, i64> = BTreeMap::new();
        for e in &basis {
            *levels.entry(e.h.clone()).or_default() += 1;
        }
        for m in &milnor.standard_monomials {
            *levels.entry(key(m.coords())).or_default() -= 1;
        }
        let levels_agree = levels.values().all(|&c| c == 0);
        let danilov = danilov::danilov_hodge_numbers(&lattice, n)?;
        let cross_check = danilov::cross_check(&hodge_table, &danilov);
        if !cross_check.equal() {
            return Err(Error::Internal(format!("face-by-face Hodge numbers disagree: {:?}", cross_check.disagreements)));
        }
        clock.lap("oracles");
        Some(OracleChecks { milnor, levels_agree, danilov, cross_check })
    } else {
        None
    };

    Ok(Computation {
        germ: g.clone(),
        lattice,
        subdivision,
        weights,
        basis,
        classes,
        spectral_pairs,
        hodge: hodge_table,
        mu,
        nondegeneracy,
        symmetry,
        oracles,
        timings: clock.laps,
    })
}
