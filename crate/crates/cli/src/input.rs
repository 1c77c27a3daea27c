//! Line-oriented input formats and their emitters.
//!
//! Quiver files:
//!
//! ```text
//! vertex a
//! arrow x : a -> b
//! ```
//!
//! Triangular files give every block by sparse structure constants. Levels
//! are 1-based, basis indices 0-based, coefficients integers or `p/q`:
//!
//! ```text
//! algebra A1 dim 2
//! unit A1 : 1 0
//! mul A1 : 0 0 0 1
//! module M21 dim 1
//! lact M21 : 0 0 0 1
//! ract M21 : 0 0 0 1
//! mu 3 2 1 : 0 0 0 1
//! ```
//!
//! Simplicial files list facets, one per line: `facet a b c`.
//!
//! In all three, `#` starts a comment and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;
use trispec_core::algebra::{
    validate_triangular, Bilinear, Bimodule, FiniteDimAlgebra, TriangularAlgebra,
};
use trispec_core::quiver::{Quiver, SimplicialComplex};
use trispec_core::Rationals;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{msg} at line {line}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    File(String),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        msg: msg.into(),
    }
}

/// Non-blank lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((k + 1, content))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Quiver,
    Triangular,
    Simplicial,
}

impl FromStr for InputKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quiver" => Ok(InputKind::Quiver),
            "triangular" => Ok(InputKind::Triangular),
            "simplicial" => Ok(InputKind::Simplicial),
            other => Err(format!("unknown input kind {other}")),
        }
    }
}

/// Guesses the format from the first keyword.
pub fn detect_kind(text: &str) -> Option<InputKind> {
    let (_, first) = lines(text).next()?;
    match first.split_whitespace().next()? {
        "vertex" | "arrow" => Some(InputKind::Quiver),
        "algebra" | "unit" | "mul" | "module" | "lact" | "ract" | "mu" => {
            Some(InputKind::Triangular)
        }
        "facet" => Some(InputKind::Simplicial),
        _ => None,
    }
}

pub fn parse_quiver_file(text: &str) -> Result<Quiver, ParseError> {
    let mut q = Quiver::new();
    for (n, line) in lines(text) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["vertex", label] => {
                if q.vertex_index(label).is_some() || q.arrows().iter().any(|a| a.label == *label) {
                    return Err(at(n, format!("duplicate label {label}")));
                }
                q.add_vertex(label).map_err(|e| at(n, e.to_string()))?;
            }
            ["arrow", label, ":", source, "->", target] => {
                if q.vertex_index(label).is_some() || q.arrows().iter().any(|a| a.label == *label) {
                    return Err(at(n, format!("duplicate label {label}")));
                }
                for v in [source, target] {
                    if q.vertex_index(v).is_none() {
                        return Err(at(n, format!("unknown vertex {v}")));
                    }
                }
                q.add_arrow(label, source, target)
                    .map_err(|e| at(n, e.to_string()))?;
            }
            _ => return Err(at(n, format!("malformed line `{line}`"))),
        }
    }
    Ok(q)
}

pub fn emit_quiver(q: &Quiver) -> String {
    let mut out = String::new();
    for v in q.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for a in q.arrows() {
        let (s, t) = (&q.vertices()[a.source], &q.vertices()[a.target]);
        writeln!(out, "arrow {} : {s} -> {t}", a.label).unwrap();
    }
    out
}

pub fn parse_simplicial_file(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    for (n, line) in lines(text) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.split_first() {
            Some((&"facet", vs)) if !vs.is_empty() => facets.push(vs.to_vec()),
            _ => return Err(at(n, format!("malformed line `{line}`"))),
        }
    }
    SimplicialComplex::from_facets(&facets).map_err(|e| ParseError::File(e.to_string()))
}

pub fn emit_simplicial(s: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in s.facets() {
        let names: Vec<&str> = f.iter().map(|&v| s.vertices()[v].as_str()).collect();
        writeln!(out, "facet {}", names.join(" ")).unwrap();
    }
    out
}

fn coefficient(n: usize, word: &str) -> Result<BigRational, ParseError> {
    let q = BigRational::from_str(word).map_err(|_| at(n, format!("bad coefficient {word}")))?;
    Ok(q)
}

fn index(n: usize, word: &str) -> Result<usize, ParseError> {
    word.parse().map_err(|_| at(n, format!("bad index {word}")))
}

/// `A3` -> level 2.
fn algebra_name(n: usize, word: &str) -> Result<usize, ParseError> {
    word.strip_prefix('A')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .map(|k| k - 1)
        .ok_or_else(|| at(n, format!("bad algebra name {word}")))
}

/// `M21` or `M12_3` -> `(j, i)`, 0-based.
fn module_name(n: usize, word: &str) -> Result<(usize, usize), ParseError> {
    let bad = || at(n, format!("bad module name {word}"));
    let body = word.strip_prefix('M').ok_or_else(bad)?;
    let (j, i) = match body.split_once('_') {
        Some((j, i)) => (
            j.parse::<usize>().map_err(|_| bad())?,
            i.parse::<usize>().map_err(|_| bad())?,
        ),
        None if body.len() == 2 && body.chars().all(|c| c.is_ascii_digit()) => {
            let d: Vec<usize> = body.chars().map(|c| c as usize - '0' as usize).collect();
            (d[0], d[1])
        }
        None => return Err(bad()),
    };
    if i == 0 || j <= i {
        return Err(at(n, format!("{word} is not strictly below the diagonal")));
    }
    Ok((j - 1, i - 1))
}

fn module_label(j: usize, i: usize) -> String {
    if j < 9 {
        format!("M{}{}", j + 1, i + 1)
    } else {
        format!("M{}_{}", j + 1, i + 1)
    }
}

type Entries = Vec<(usize, usize, usize, BigRational)>;

#[derive(Default)]
struct AlgebraSpec {
    dim: Option<usize>,
    unit: Option<Vec<BigRational>>,
    mul: Entries,
}

#[derive(Default)]
struct ModuleSpec {
    dim: Option<usize>,
    lact: Entries,
    ract: Entries,
}

/// `<a> <b> <c> <coeff>` after the colon.
fn entry(n: usize, rest: &[&str]) -> Result<(usize, usize, usize, BigRational), ParseError> {
    match rest {
        [a, b, c, v] => Ok((index(n, a)?, index(n, b)?, index(n, c)?, coefficient(n, v)?)),
        _ => Err(at(n, "expected `<a> <b> <c> <coeff>`")),
    }
}

fn bilinear(
    what: &str,
    l: usize,
    r: usize,
    o: usize,
    entries: Entries,
) -> Result<Bilinear<BigRational>, ParseError> {
    Bilinear::from_entries(&Rationals, l, r, o, entries)
        .map_err(|e| ParseError::File(format!("{what}: {e}")))
}

/// Parses and validates a triangular algebra.
pub fn parse_triangular_file(text: &str) -> Result<TriangularAlgebra, ParseError> {
    let mut algebras: BTreeMap<usize, AlgebraSpec> = BTreeMap::new();
    let mut modules: BTreeMap<(usize, usize), ModuleSpec> = BTreeMap::new();
    let mut mus: BTreeMap<(usize, usize, usize), Entries> = BTreeMap::new();
    for (n, line) in lines(text) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["algebra", name, "dim", d] => {
                let a = algebras.entry(algebra_name(n, name)?).or_default();
                if a.dim.replace(index(n, d)?).is_some() {
                    return Err(at(n, format!("{name} is declared twice")));
                }
            }
            ["unit", name, ":", coeffs @ ..] => {
                let coeffs = coeffs
                    .iter()
                    .map(|c| coefficient(n, c))
                    .collect::<Result<_, _>>()?;
                if algebras
                    .entry(algebra_name(n, name)?)
                    .or_default()
                    .unit
                    .replace(coeffs)
                    .is_some()
                {
                    return Err(at(n, format!("second unit for {name}")));
                }
            }
            ["mul", name, ":", rest @ ..] => {
                let e = entry(n, rest)?;
                algebras
                    .entry(algebra_name(n, name)?)
                    .or_default()
                    .mul
                    .push(e);
            }
            ["module", name, "dim", d] => {
                let m = modules.entry(module_name(n, name)?).or_default();
                if m.dim.replace(index(n, d)?).is_some() {
                    return Err(at(n, format!("{name} is declared twice")));
                }
            }
            ["lact", name, ":", rest @ ..] => {
                let e = entry(n, rest)?;
                modules
                    .entry(module_name(n, name)?)
                    .or_default()
                    .lact
                    .push(e);
            }
            ["ract", name, ":", rest @ ..] => {
                let e = entry(n, rest)?;
                modules
                    .entry(module_name(n, name)?)
                    .or_default()
                    .ract
                    .push(e);
            }
            ["mu", l, j, i, ":", rest @ ..] => {
                let lv: Vec<usize> = [l, j, i]
                    .iter()
                    .map(|w| index(n, w))
                    .collect::<Result<_, _>>()?;
                if !(lv[2] >= 1 && lv[2] < lv[1] && lv[1] < lv[0]) {
                    return Err(at(n, format!("mu {l} {j} {i} needs levels l > j > i >= 1")));
                }
                let e = entry(n, rest)?;
                mus.entry((lv[0] - 1, lv[1] - 1, lv[2] - 1))
                    .or_default()
                    .push(e);
            }
            _ => return Err(at(n, format!("malformed line `{line}`"))),
        }
    }

    let levels = algebras.keys().next_back().map_or(0, |k| k + 1);
    if levels == 0 {
        return Err(ParseError::File("no algebra is declared".into()));
    }
    let mut diag = Vec::with_capacity(levels);
    for k in 0..levels {
        let name = format!("A{}", k + 1);
        let spec = algebras.remove(&k).unwrap_or_default();
        let dim = spec
            .dim
            .ok_or_else(|| ParseError::File(format!("missing dimension for {name}")))?;
        let unit = spec
            .unit
            .ok_or_else(|| ParseError::File(format!("missing unit for {name}")))?;
        if unit.len() != dim {
            return Err(ParseError::File(format!(
                "unit for {name} has {} coefficients, expected {dim}",
                unit.len()
            )));
        }
        let unit = unit
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != BigRational::from_integer(0.into()))
            .collect();
        let mul = bilinear(&name, dim, dim, dim, spec.mul)?;
        diag.push(
            FiniteDimAlgebra::new(mul, unit)
                .map_err(|e| ParseError::File(format!("{name}: {e}")))?,
        );
    }
    let mut mods = Vec::new();
    for ((j, i), spec) in modules {
        let name = module_label(j, i);
        if j >= levels {
            return Err(ParseError::File(format!(
                "{name} refers to a level beyond A{levels}"
            )));
        }
        let dim = spec
            .dim
            .ok_or_else(|| ParseError::File(format!("missing dimension for {name}")))?;
        let lact = bilinear(&name, diag[j].dim(), dim, dim, spec.lact)?;
        let ract = bilinear(&name, dim, diag[i].dim(), dim, spec.ract)?;
        mods.push((
            (j, i),
            Bimodule::new(lact, ract).map_err(|e| ParseError::File(format!("{name}: {e}")))?,
        ));
    }
    let dim_of = |j: usize, i: usize| {
        mods.iter()
            .find(|(k, _)| *k == (j, i))
            .map_or(0, |(_, m)| m.dim())
    };
    let mut maps = Vec::new();
    for ((l, j, i), entries) in mus {
        if l >= levels {
            return Err(ParseError::File(format!(
                "mu {} {} {} refers to a level beyond A{levels}",
                l + 1,
                j + 1,
                i + 1
            )));
        }
        let what = format!("mu {} {} {}", l + 1, j + 1, i + 1);
        maps.push((
            (l, j, i),
            bilinear(&what, dim_of(l, j), dim_of(j, i), dim_of(l, i), entries)?,
        ));
    }
    let t =
        TriangularAlgebra::new(diag, mods, maps).map_err(|e| ParseError::File(e.to_string()))?;
    validate_triangular(&t)
        .into_result()
        .map_err(|e| ParseError::File(e.to_string()))?;
    Ok(t)
}

fn write_entries(out: &mut String, head: &str, b: &Bilinear<BigRational>) {
    for (a, x, c, v) in b.entries() {
        writeln!(out, "{head} : {a} {x} {c} {v}").unwrap();
    }
}

pub fn emit_triangular(t: &TriangularAlgebra) -> String {
    let mut out = String::new();
    for (k, a) in t.diagonal_algebras().iter().enumerate() {
        let name = format!("A{}", k + 1);
        writeln!(out, "algebra {name} dim {}", a.dim()).unwrap();
        let mut unit = vec![BigRational::from_integer(0.into()); a.dim()];
        for (i, c) in a.unit() {
            unit[*i] = c.clone();
        }
        let unit: Vec<String> = unit.iter().map(ToString::to_string).collect();
        writeln!(out, "unit {name} : {}", unit.join(" ")).unwrap();
        write_entries(&mut out, &format!("mul {name}"), a.mul_table());
    }
    for ((j, i), m) in t.modules() {
        if m.dim() == 0 {
            continue;
        }
        let name = module_label(j, i);
        writeln!(out, "module {name} dim {}", m.dim()).unwrap();
        write_entries(&mut out, &format!("lact {name}"), m.lact());
        write_entries(&mut out, &format!("ract {name}"), m.ract());
    }
    for ((l, j, i), mu) in t.mus() {
        write_entries(&mut out, &format!("mu {} {} {}", l + 1, j + 1, i + 1), mu);
    }
    out
}
