//! Polynomial germs, exponent vectors and the input language.
//!
//! Two monomial syntaxes are accepted and may be mixed: caret syntax
//! (`3*x^2*y`) and compressed syntax (`3x2y`), where a single letter followed
//! by digits is that variable raised to the digits. Multi-letter variable
//! names only work in caret syntax or when separated by `*`.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        ExponentVector(coords)
    }

    /// Fails if any coordinate is negative or too large.
    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        coords
            .iter()
            .map(|&c| u32::try_from(c).map_err(|_| Error::NegativeCoordinate(coords.to_vec())))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Number of nonzero coordinates.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&c| c > 0).count()
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Export order for monomial lists: the last variable is most significant,
/// larger exponents first.
pub fn descending_revlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    b.0.iter().rev().cmp(a.0.iter().rev())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    variables: Vec<String>,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Germ {
    /// Builds a germ, dropping zero coefficients. Rejects an empty support and
    /// a constant term.
    pub fn new(variables: Vec<String>, terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Result<Self> {
        let n = variables.len();
        let mut map: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.dim() != n {
                return Err(Error::Internal(format!("exponent {e} has dimension {} but germ has {n} variables", e.dim())));
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::EmptyGerm("no nonzero terms".into()));
        }
        if map.keys().any(ExponentVector::is_zero) {
            return Err(Error::ConstantTerm);
        }
        Ok(Germ { variables, terms: map })
    }

    /// Germ with default variable names (`x,y,z,w` for n ≤ 4, else `x1..xn`).
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Result<Self> {
        Germ::new(
            default_variables(n),
            terms
                .into_iter()
                .map(|(e, c)| (ExponentVector(e), rational::int(c))),
        )
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, Rational> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn max_degree(&self) -> u64 {
        self.support().map(ExponentVector::degree).max().unwrap_or(0)
    }

    /// First axis without a pure power in the support.
    pub fn missing_axis(&self) -> Option<usize> {
        (0..self.n()).find(|&i| {
            !self
                .support()
                .any(|e| e.0[i] > 0 && e.0.iter().enumerate().all(|(j, &c)| j == i || c == 0))
        })
    }

    pub fn is_convenient(&self) -> bool {
        self.missing_axis().is_none()
    }

    pub fn require_convenient(&self) -> Result<()> {
        match self.missing_axis() {
            Some(i) => Err(Error::NotConvenient { axis: self.variables[i].clone() }),
            None => Ok(()),
        }
    }

    /// Partial derivative with respect to variable `i`, as a term map.
    pub fn derivative(&self, i: usize) -> BTreeMap<ExponentVector, Rational> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.0[i] > 0 {
                let mut d = e.0.clone();
                d[i] -= 1;
                out.insert(ExponentVector(d), c * BigInt::from(e.0[i]));
            }
        }
        out
    }

    pub fn monomial_compressed(&self, e: &ExponentVector) -> String {
        format_monomial(e, &self.variables, true)
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&ExponentVector> = self.terms.keys().collect();
        keys.sort_by(|a, b| descending_revlex(a, b));
        for (k, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            let mono = format_monomial(e, &self.variables, false);
            if mag.is_one() {
                write!(f, "{sign}{mono}")?;
            } else {
                write!(f, "{sign}{}*{mono}", rational::format(&mag))?;
            }
        }
        Ok(())
    }
}

pub fn default_variables(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Distinct letters of `text` in alphabetical order.
pub fn infer_variables(text: &str) -> Vec<String> {
    let mut letters: Vec<char> = text.chars().filter(char::is_ascii_alphabetic).collect();
    letters.sort_unstable();
    letters.dedup();
    letters.into_iter().map(String::from).collect()
}

/// `x4y2`-style (compressed) or `x^4*y^2`-style text; `1` for the zero vector.
/// Compressed output falls back to caret syntax for multi-letter names.
pub fn format_monomial(e: &ExponentVector, variables: &[String], compressed: bool) -> String {
    let compressed = compressed && variables.iter().all(|v| v.chars().count() == 1);
    let mut parts = Vec::new();
    for (i, &c) in e.0.iter().enumerate() {
        match (c, compressed) {
            (0, _) => {}
            (1, _) => parts.push(variables[i].clone()),
            (_, true) => parts.push(format!("{}{c}", variables[i])),
            (_, false) => parts.push(format!("{}^{c}", variables[i])),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else if compressed {
        parts.concat()
    } else {
        parts.join("*")
    }
}

/// Parses a germ over the given ordered variables.
pub fn parse_germ(text: &str, variables: &[String]) -> Result<Germ> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, vars: variables };
    let terms = p.germ()?;
    if terms.is_empty() {
        return Err(Error::EmptyGerm("input has no terms".into()));
    }
    if terms.iter().all(|(e, _)| e.is_zero()) {
        return Err(Error::EmptyGerm("constant-only input".into()));
    }
    Germ::new(variables.to_vec(), terms)
}

type Poly = BTreeMap<Vec<u32>, Rational>;

fn starts_factor(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || c == b'('
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn germ(&mut self) -> Result<Vec<(ExponentVector, Rational)>> {
        if self.peek().is_none() {
            return Ok(Vec::new());
        }
        let p = self.sum(false)?;
        Ok(p.into_iter().map(|(e, c)| (ExponentVector(e), c)).collect())
    }

    /// Signed sum of terms, ending at end of input, or before `)` when nested.
    fn sum(&mut self, nested: bool) -> Result<Poly> {
        let mut total = Poly::new();
        let mut sign = Rational::one();
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            if c == b'-' {
                sign = -sign;
            }
        }
        loop {
            for (e, c) in self.term()? {
                *total.entry(e).or_insert_with(Rational::zero) += c * &sign;
            }
            match self.peek() {
                None if !nested => return Ok(total),
                Some(b')') if nested => return Ok(total),
                Some(b'+') => sign = Rational::one(),
                Some(b'-') => sign = -Rational::one(),
                None => return self.err("expected `)`, found end of input"),
                Some(ch) => return self.err(format!("unexpected `{}`", ch as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coef = Rational::one();
        let mut groups: Vec<(Poly, u32)> = Vec::new();
        let mut have_factor = false;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coef = self.coefficient()?;
                have_factor = true;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if starts_factor(c)) {
                        return self.err("expected a factor after `*`");
                    }
                }
            }
            Some(c) if starts_factor(c) => {}
            Some(c) => return self.err(format!("expected a term, found `{}`", c as char)),
            None => return self.err("expected a term, found end of input"),
        }
        loop {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sum(true)?;
                    self.pos += 1;
                    let k = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.small_integer()?
                    } else {
                        1
                    };
                    groups.push((inner, k));
                    have_factor = true;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    self.factor(&mut exps)?;
                    have_factor = true;
                }
                Some(b'*') if have_factor => {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if starts_factor(c)) {
                        return self.err("expected a factor after `*`");
                    }
                }
                _ => break,
            }
        }
        let mut poly: Poly = [(exps, coef)].into_iter().collect();
        for (g, k) in groups {
            for _ in 0..k {
                poly = poly_mul(&poly, &g);
            }
        }
        Ok(poly)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn small_integer(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        let ident = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii identifier");
        let caret = self.peek() == Some(b'^');
        let caret_exp = if caret {
            self.pos += 1;
            Some(self.small_integer()?)
        } else {
            None
        };
        if let Some(i) = self.var_index(ident) {
            exps[i] += caret_exp.unwrap_or(1);
            return Ok(());
        }
        // Compressed runs: letter followed by optional digits.
        let bytes = ident.as_bytes();
        let mut k = 0;
        let mut runs = Vec::new();
        while k < bytes.len() {
            let at = start + k;
            if !bytes[k].is_ascii_alphabetic() {
                return Err(Error::Syntax { pos: at, msg: format!("cannot read `{ident}` as a monomial") });
            }
            let name = (bytes[k] as char).to_string();
            let Some(i) = self.var_index(&name) else {
                let name = if self.vars.iter().any(|v| v.len() == 1) { name } else { ident.to_string() };
                return Err(Error::UnknownVariable { name, pos: at });
            };
            k += 1;
            let ds = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            let e = if ds == k {
                None
            } else {
                Some(ident[ds..k].parse::<u32>().map_err(|_| Error::Syntax { pos: start + ds, msg: "exponent too large".into() })?)
            };
            runs.push((i, e));
        }
        let last = runs.len() - 1;
        for (j, (i, e)) in runs.into_iter().enumerate() {
            let e = match (e, caret_exp) {
                (Some(_), Some(_)) if j == last => {
                    return Err(Error::Syntax { pos: start, msg: format!("`{ident}^` mixes compressed and caret exponents") })
                }
                (None, Some(c)) if j == last => c,
                (Some(e), _) => e,
                (None, _) => 1,
            };
            exps[i] += e;
        }
        Ok(())
    }
}
