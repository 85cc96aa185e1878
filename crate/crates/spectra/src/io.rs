//! Serialization of results, the spectral-pair text format, and the built-in
//! fixtures.

use crate::error::{Error, Result};
use crate::germ::{self, descending_revlex, parse_germ, Germ};
use crate::hodge::{HodgeTable, SpectralPairs};
use crate::pipeline::Computation;
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub struct Fixture {
    pub name: &'static str,
    pub germ: &'static str,
    pub variables: &'static [&'static str],
    /// Reference spectral pairs in text format.
    pub spectral_pairs: &'static str,
}

pub const FIXTURES: [Fixture; 3] = [
    Fixture {
        name: "f1",
        germ: include_str!("../../../data/fixtures/f1.germ"),
        variables: &["x", "y"],
        spectral_pairs: include_str!("../../../data/fixtures/f1.spp"),
    },
    Fixture {
        name: "f2",
        germ: include_str!("../../../data/fixtures/f2.germ"),
        variables: &["x", "y", "z"],
        spectral_pairs: include_str!("../../../data/fixtures/f2.spp"),
    },
    Fixture {
        name: "f3",
        germ: include_str!("../../../data/fixtures/f3.germ"),
        variables: &["x", "y", "z"],
        spectral_pairs: include_str!("../../../data/fixtures/f3.spp"),
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn germ(&self) -> Germ {
        let vars: Vec<String> = self.variables.iter().map(|v| v.to_string()).collect();
        parse_germ(self.germ.trim(), &vars).expect("fixture germ parses")
    }

    pub fn reference(&self) -> SpectralPairs {
        parse_spp_text(self.spectral_pairs).expect("fixture spectral pairs parse")
    }
}

pub fn emit_spp(sp: &SpectralPairs) -> String {
    sp.to_string()
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.error(format!("expected `{c}`, found `{d}`")),
            None => self.error(format!("expected `{c}`, found end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        if matches!(bytes.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
            self.skip_ws();
        }
        let digits = self.pos;
        while bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.error("expected an integer");
        }
        let s: String = self.text[start..self.pos].chars().filter(|c| !c.is_whitespace()).collect();
        s.parse().or_else(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.peek() != Some('/') {
            return Ok(rational::int(num));
        }
        self.pos += 1;
        let at = self.pos;
        let den = self.integer()?;
        if den <= 0 {
            self.pos = at;
            return self.error("denominator must be positive");
        }
        Ok(rational::ratio(num, den))
    }
}

/// Parses comma-separated `((α,w),m)` tuples; duplicates are summed.
pub fn parse_spp_text(text: &str) -> Result<SpectralPairs> {
    let mut c = Cursor { text, pos: 0 };
    let mut sp = SpectralPairs::new();
    if c.peek().is_none() {
        return Ok(sp);
    }
    loop {
        c.expect('(')?;
        c.expect('(')?;
        let alpha = c.rational()?;
        c.expect(',')?;
        let w = c.integer()?;
        c.expect(')')?;
        c.expect(',')?;
        let at = c.pos;
        let m = c.integer()?;
        if m < 0 {
            c.pos = at;
            return c.error("multiplicity must be non-negative");
        }
        c.expect(')')?;
        sp.insert(alpha, w, m as u64);
        match c.peek() {
            None => return Ok(sp),
            Some(',') => c.pos += 1,
            Some(d) => return c.error(format!("expected `,` or end of input, found `{d}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SppDiffEntry {
    pub alpha: Rational,
    pub w: i64,
    /// Computed multiplicity minus reference multiplicity.
    pub delta: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SppDiff {
    pub entries: Vec<SppDiffEntry>,
}

impl SppDiff {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for SppDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{:+} (({},{}))", e.delta, rational::format(&e.alpha), e.w)?;
        }
        Ok(())
    }
}

pub fn diff_spp(computed: &SpectralPairs, reference: &SpectralPairs) -> SppDiff {
    let mut delta: BTreeMap<(Rational, i64), i64> = BTreeMap::new();
    for (a, w, m) in computed.iter() {
        *delta.entry((a.clone(), w)).or_default() += m as i64;
    }
    for (a, w, m) in reference.iter() {
        *delta.entry((a.clone(), w)).or_default() -= m as i64;
    }
    let entries = delta
        .into_iter()
        .filter(|(_, d)| *d != 0)
        .map(|((alpha, w), delta)| SppDiffEntry { alpha, w, delta })
        .collect();
    SppDiff { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponent: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermJson {
    pub text: String,
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub alpha: String,
    pub w: i64,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeJson {
    pub p: i64,
    pub q: i64,
    pub chi: String,
    pub h: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub monomial: String,
    pub exponent: Vec<u32>,
    pub alpha: String,
    pub w: i64,
    pub p: i64,
    pub q: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub vertices: Vec<Vec<u32>>,
    pub dim: usize,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleJson {
    pub mu: u64,
    pub cap: u32,
    pub levels_agree: bool,
    pub hodge_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsJson {
    pub convenient: bool,
    pub simplicial: bool,
    /// `"true"`, `"false"`, `"unknown"`, or `"assumed"` when not checked.
    pub nondegenerate: String,
    pub faces: Vec<FaceJson>,
    pub milnor_kouchnirenko: u64,
    pub basis_size: u64,
    pub symmetric: bool,
    pub oracle: Option<OracleJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputationResult {
    pub germ: GermJson,
    pub n: usize,
    pub mu: u64,
    pub spectral_pairs: Vec<PairJson>,
    pub hodge_numbers: Vec<HodgeJson>,
    pub basis: Vec<BasisJson>,
    pub diagnostics: DiagnosticsJson,
    pub timing_us: BTreeMap<String, u64>,
}

impl ComputationResult {
    pub fn from_computation(c: &Computation) -> Self {
        let g = &c.germ;
        let vars = g.variables();
        let germ = GermJson {
            text: g.to_string(),
            variables: vars.to_vec(),
            terms: g
                .terms()
                .iter()
                .map(|(e, k)| TermJson { exponent: e.coords().to_vec(), coefficient: rational::format(k) })
                .collect(),
        };
        let spectral_pairs = c
            .spectral_pairs
            .iter()
            .map(|(a, w, m)| PairJson { alpha: rational::format(a), w, m })
            .collect();
        let hodge_numbers = hodge_json(&c.hodge);
        let mut order: Vec<usize> = (0..c.basis.len()).collect();
        order.sort_by(|&i, &j| descending_revlex(&c.basis[i].monomial(), &c.basis[j].monomial()));
        let basis = order
            .into_iter()
            .map(|i| {
                let m = c.basis[i].monomial();
                let cl = &c.classes[i];
                BasisJson {
                    monomial: germ::format_monomial(&m, vars, false),
                    exponent: m.coords().to_vec(),
                    alpha: rational::format(&cl.alpha),
                    w: cl.weight,
                    p: cl.p,
                    q: cl.q,
                }
            })
            .collect();
        let verdict = |face: usize| match &c.nondegeneracy {
            Some(r) => r.faces.iter().find(|f| f.face == face).map_or("unknown", |f| f.verdict.as_str()),
            None => "assumed",
        };
        let faces = c
            .lattice
            .faces
            .iter()
            .map(|f| FaceJson {
                vertices: f.vertices.iter().map(|v| v.coords().to_vec()).collect(),
                dim: f.dim,
                verdict: verdict(f.id).to_string(),
            })
            .collect();
        let diagnostics = DiagnosticsJson {
            convenient: true,
            simplicial: true,
            nondegenerate: c.nondegeneracy.as_ref().map_or("assumed", |r| r.overall.as_str()).to_string(),
            faces,
            milnor_kouchnirenko: c.mu,
            basis_size: c.basis.len() as u64,
            symmetric: c.symmetry.passed(),
            oracle: c.oracles.as_ref().map(|o| OracleJson {
                mu: o.milnor.mu,
                cap: o.milnor.cap,
                levels_agree: o.levels_agree,
                hodge_agree: o.cross_check.equal(),
            }),
        };
        let timing_us = c
            .timings
            .iter()
            .map(|(k, d)| (k.to_string(), d.as_micros() as u64))
            .collect();
        ComputationResult {
            germ,
            n: g.n(),
            mu: c.mu,
            spectral_pairs,
            hodge_numbers,
            basis,
            diagnostics,
            timing_us,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

pub fn hodge_json(t: &HodgeTable) -> Vec<HodgeJson> {
    t.entries
        .iter()
        .map(|((p, q, chi), h)| HodgeJson { p: *p, q: *q, chi: rational::format(chi), h: *h })
        .collect()
}

/// One `q × p` grid per value of `χ`, highest `q` first.
pub fn format_hodge_table(t: &HodgeTable, n: usize) -> String {
    let mut by_chi: BTreeMap<&Rational, BTreeMap<(i64, i64), u64>> = BTreeMap::new();
    for ((p, q, chi), h) in &t.entries {
        by_chi.entry(chi).or_default().insert((*p, *q), *h);
    }
    let mut out = String::new();
    for (chi, grid) in by_chi {
        out.push_str(&format!("chi = {}\n", rational::format(chi)));
        out.push_str(&format!("{:>6}", "q\\p"));
        for p in 0..=n {
            out.push_str(&format!("{p:>6}"));
        }
        out.push('\n');
        for q in (0..=n as i64).rev() {
            out.push_str(&format!("{q:>6}"));
            for p in 0..=n as i64 {
                out.push_str(&format!("{:>6}", grid.get(&(p, q)).copied().unwrap_or(0)));
            }
            out.push('\n');
        }
    }
    out
}

/// Human-readable summary for `--format table`.
pub fn format_table(c: &Computation) -> String {
    let n = c.germ.n();
    let mut out = format!("germ: {}\nmu: {}\n", c.germ, c.mu);
    let nd = c.nondegeneracy.as_ref().map_or("assumed", |r| r.overall.as_str());
    out.push_str(&format!("nondegenerate: {nd}\n\nspectral pairs:\n"));
    for (a, w, m) in c.spectral_pairs.iter() {
        out.push_str(&format!("  ({}, {w})  x{m}\n", rational::format(a)));
    }
    out.push_str("\nhodge numbers:\n");
    out.push_str(&format_hodge_table(&c.hodge, n));
    if let Some(o) = &c.oracles {
        out.push_str(&format!(
            "\noracle: mu {} (degree cap {}), h-levels {}, face formula {}\n",
            o.milnor.mu,
            o.milnor.cap,
            if o.levels_agree { "agree" } else { "differ" },
            if o.cross_check.equal() { "agrees" } else { "differs" }
        ));
    }
    out
}
