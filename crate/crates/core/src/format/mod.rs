//! File formats for every object the command line reads or writes.
//!
//! Each object has a line-oriented text form (first line `ring <ring>`,
//! second line naming the kind) and a JSON form carrying the same content,
//! with ring elements written in the element grammar.

mod json;

pub use json::{ComplexDoc, DegreeMatrix, Document, EquationDoc, MatrixDoc};

use crate::complex::{ChainComplex, ChainMap};
use crate::descent::{Assignment, PolynomialSystem};
use crate::dg::DGModule;
use crate::duality::Presentation;
use crate::error::{Error, Result};
use crate::koszul::KoszulAlgebra;
use crate::ring::{parse_ring, split_top_level, Elem, Matrix, Ring};
use std::collections::BTreeMap;
use std::path::Path;

/// Any object with a file format.
#[derive(Debug, Clone, PartialEq)]
pub enum Object {
    Ring(Ring),
    Complex(ChainComplex),
    Koszul(KoszulAlgebra),
    Dg(DGModule),
    Presentation(Presentation),
    System(PolynomialSystem),
    Assignment(Assignment),
    Map(MapData),
}

/// Components `f_n` of a degree-zero map between complexes; checked
/// against source and target when turned into a chain map.
#[derive(Debug, Clone, PartialEq)]
pub struct MapData {
    pub ring: Ring,
    pub components: BTreeMap<i64, Matrix>,
}

impl MapData {
    pub fn from_chain_map(f: &ChainMap) -> MapData {
        MapData { ring: f.source().ring().clone(), components: f.components().clone() }
    }

    pub fn to_chain_map(&self, source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
        if source.ring() != &self.ring || target.ring() != &self.ring {
            return Err(Error::MixedRings);
        }
        ChainMap::new(source, target, self.components.clone())
    }

    /// `map`, then `f n rows cols = [...]` per component.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\nmap\n", self.ring);
        for (n, m) in &self.components {
            out.push_str(&format!("f {n} {} {} = {}\n", m.rows(), m.cols(), m.to_text()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<MapData> {
        let lines = content_lines(text);
        let ring = parse_ring_line(lines.first().ok_or_else(|| Error::Invalid("empty file".into()))?)?;
        if lines.get(1) != Some(&"map") {
            return Err(Error::Invalid("expected `map`".into()));
        }
        let mut components = BTreeMap::new();
        for line in &lines[2..] {
            let (idx, m) = indexed_line(line, "f", 3)?.ok_or_else(|| Error::Invalid(format!("unexpected line `{line}`")))?;
            if idx[1] < 0 || idx[2] < 0 {
                return Err(Error::Invalid(format!("negative shape in `{line}`")));
            }
            let mat = Matrix::parse(&ring, m, idx[1] as usize, idx[2] as usize)?;
            if components.insert(idx[0], mat).is_some() {
                return Err(Error::Invalid(format!("f {} given twice", idx[0])));
            }
        }
        Ok(MapData { ring, components })
    }
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Ring(_) => "ring",
            Object::Complex(_) => "complex",
            Object::Koszul(_) => "koszul",
            Object::Dg(_) => "dg",
            Object::Presentation(_) => "presentation",
            Object::System(_) => "system",
            Object::Assignment(_) => "assignment",
            Object::Map(_) => "map",
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Object::Ring(r) => format!("ring {r}\n"),
            Object::Complex(c) => complex_to_text(c),
            Object::Koszul(k) => koszul_to_text(k),
            Object::Dg(m) => dg_to_text(m),
            Object::Presentation(p) => p.to_text(),
            Object::System(s) => s.to_text(),
            Object::Assignment(a) => a.to_text(),
            Object::Map(m) => m.to_text(),
        }
    }

    /// Parses the text form, telling kinds apart by the second line.
    /// Structure is checked (shapes, `d^2 = 0`) but algebra axioms are not;
    /// see [`Object::validate`].
    pub fn parse_text(text: &str) -> Result<Object> {
        let lines = content_lines(text);
        let first = lines.first().ok_or_else(|| Error::Invalid("empty file".into()))?;
        if !first.starts_with("ring") {
            return Err(Error::Invalid("first line must be `ring <ring>`".into()));
        }
        let second = lines.get(1).map(|l| l.split_whitespace().next().unwrap_or("")).unwrap_or("");
        match second {
            "" => Ok(Object::Ring(parse_ring(&first[4..])?)),
            "complex" => Ok(Object::Complex(parse_complex(text)?)),
            "koszul" if lines.get(2).is_some_and(|l| l.starts_with("complex")) => Ok(Object::Dg(parse_dg(text)?)),
            "koszul" => Ok(Object::Koszul(parse_koszul(text)?)),
            "presentation" => Ok(Object::Presentation(Presentation::parse(text)?)),
            s if s.starts_with("m=") => Ok(Object::System(PolynomialSystem::parse(text)?)),
            "assignment" => Ok(Object::Assignment(Assignment::parse(text)?)),
            "map" => Ok(Object::Map(MapData::parse(text)?)),
            s => Err(Error::Invalid(format!("unknown object kind `{s}`"))),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&Document::from_object(self))? + "\n")
    }

    pub fn parse_json(text: &str) -> Result<Object> {
        serde_json::from_str::<Document>(text)?.into_object()
    }

    /// Re-checks algebra axioms: DG algebra and DG module axioms.
    pub fn validate(&self) -> Result<()> {
        let report = match self {
            Object::Koszul(k) => k.verify(),
            Object::Dg(m) => m.verify(),
            _ => return Ok(()),
        };
        match report.first_failure() {
            Some(c) => Err(Error::VerificationFailed(c.to_string())),
            None => Ok(()),
        }
    }
}

/// Reads a file as JSON when its extension is `.json`, otherwise as text.
pub fn load(path: &Path) -> Result<Object> {
    let text = std::fs::read_to_string(path)?;
    if is_json(path) {
        Object::parse_json(&text)
    } else {
        Object::parse_text(&text)
    }
}

pub fn save(path: &Path, obj: &Object) -> Result<()> {
    let text = if is_json(path) { obj.to_json()? } else { obj.to_text() };
    std::fs::write(path, text)?;
    Ok(())
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

fn content_lines(text: &str) -> Vec<&str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect()
}

fn parse_ring_line(line: &str) -> Result<Ring> {
    parse_ring(line.strip_prefix("ring").ok_or_else(|| Error::Invalid("expected `ring`".into()))?.trim())
}

/// A line `key i j ... = [matrix]`.
fn indexed_line<'a>(line: &'a str, key: &str, count: usize) -> Result<Option<(Vec<i64>, &'a str)>> {
    let Some(rest) = line.strip_prefix(key) else { return Ok(None) };
    if !rest.starts_with(' ') {
        return Ok(None);
    }
    let (lhs, rhs) = rest.split_once('=').ok_or_else(|| Error::Invalid(format!("missing `=` in `{line}`")))?;
    let idx: Vec<i64> = lhs
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Invalid(format!("bad index `{t}` in `{line}`"))))
        .collect::<Result<_>>()?;
    if idx.len() != count {
        return Err(Error::Invalid(format!("expected {count} indices in `{line}`")));
    }
    Ok(Some((idx, rhs.trim())))
}

fn join_elems(r: &Ring, v: &[Elem]) -> String {
    v.iter().map(|x| r.format(x)).collect::<Vec<_>>().join(", ")
}

fn parse_elems(r: &Ring, s: &str) -> Result<Vec<Elem>> {
    split_top_level(s).iter().filter(|t| !t.trim().is_empty()).map(|t| r.parse(t.trim())).collect()
}

fn complex_lines(c: &ChainComplex, out: &mut String) {
    let ranks: Vec<String> = c.degrees().map(|n| c.rank(n).to_string()).collect();
    out.push_str(&format!("complex lo={} ranks={}\n", c.lo().unwrap_or(0), ranks.join(",")));
    for n in c.degrees().skip(1) {
        out.push_str(&format!("d {n} = {}\n", c.diff(n).to_text()));
    }
}

pub fn complex_to_text(c: &ChainComplex) -> String {
    let mut out = format!("ring {}\n", c.ring());
    complex_lines(c, &mut out);
    out
}

/// Reads `complex lo=.. ranks=..` and the `d n = ...` lines that follow.
fn complex_from_lines(r: &Ring, lines: &[&str]) -> Result<ChainComplex> {
    let head = lines.first().ok_or_else(|| Error::Invalid("missing `complex` line".into()))?;
    let mut lo = None;
    let mut ranks = None;
    for tok in head.strip_prefix("complex").ok_or_else(|| Error::Invalid("expected `complex`".into()))?.split_whitespace() {
        if let Some(v) = tok.strip_prefix("lo=") {
            lo = Some(v.parse::<i64>().map_err(|_| Error::Invalid(format!("bad lo `{v}`")))?);
        } else if let Some(v) = tok.strip_prefix("ranks=") {
            let rk: Vec<usize> = v
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Invalid(format!("bad rank `{t}`"))))
                .collect::<Result<_>>()?;
            ranks = Some(rk);
        } else {
            return Err(Error::Invalid(format!("unexpected `{tok}` in complex header")));
        }
    }
    let lo = lo.unwrap_or(0);
    let ranks = ranks.unwrap_or_default();
    let rank = |n: i64| if n < lo { 0 } else { ranks.get((n - lo) as usize).copied().unwrap_or(0) };
    let mut diffs = BTreeMap::new();
    for line in &lines[1..] {
        let (idx, m) = indexed_line(line, "d", 1)?.ok_or_else(|| Error::Invalid(format!("unexpected line `{line}`")))?;
        let n = idx[0];
        if diffs.insert(n, Matrix::parse(r, m, rank(n - 1), rank(n))?).is_some() {
            return Err(Error::Invalid(format!("d {n} given twice")));
        }
    }
    let hi = lo + ranks.len() as i64 - 1;
    if let Some(n) = diffs.keys().find(|&&n| n <= lo || n > hi) {
        return Err(Error::Invalid(format!("d {n} outside the complex")));
    }
    let ds = (lo + 1..=hi).map(|n| diffs.remove(&n).unwrap_or_else(|| Matrix::zeros(r, rank(n - 1), rank(n)))).collect();
    ChainComplex::new(r, lo, ranks, ds)
}

pub fn parse_complex(text: &str) -> Result<ChainComplex> {
    let lines = content_lines(text);
    let r = parse_ring_line(lines.first().ok_or_else(|| Error::Invalid("empty file".into()))?)?;
    complex_from_lines(&r, &lines[1..])
}

/// `koszul a_1, ..., a_e`, then `d n = ...` for `n = 1..=e` and
/// `t h n = ...` for every basis element `h` and degree `n`.
pub fn koszul_to_text(k: &KoszulAlgebra) -> String {
    let r = k.ring();
    let mut out = format!("ring {r}\nkoszul {}\n", join_elems(r, k.sequence()));
    for n in 1..=k.len() as i64 {
        out.push_str(&format!("d {n} = {}\n", k.diff(n).to_text()));
    }
    for h in 0..k.dim() {
        for n in 0..=(k.len() - k.degree(h)) as i64 {
            out.push_str(&format!("t {h} {n} = {}\n", k.mult(h, n).to_text()));
        }
    }
    out
}

/// Without `d`/`t` lines the algebra is built from the sequence; with
/// them, the given matrices are used as they are.
pub fn parse_koszul(text: &str) -> Result<KoszulAlgebra> {
    let lines = content_lines(text);
    let r = parse_ring_line(lines.first().ok_or_else(|| Error::Invalid("empty file".into()))?)?;
    koszul_from_lines(&r, &lines[1..])
}

fn koszul_header(r: &Ring, line: &str) -> Result<Vec<Elem>> {
    let seq = line.strip_prefix("koszul").ok_or_else(|| Error::Invalid("expected `koszul`".into()))?;
    parse_elems(r, seq)
}

fn koszul_from_lines(r: &Ring, lines: &[&str]) -> Result<KoszulAlgebra> {
    let a = koszul_header(r, lines.first().ok_or_else(|| Error::Invalid("missing `koszul` line".into()))?)?;
    let canonical = KoszulAlgebra::new(r, &a)?;
    let body = &lines[1..];
    if body.is_empty() {
        return Ok(canonical);
    }
    let e = a.len();
    let mut diffs: Vec<Matrix> = (0..=e as i64).map(|n| canonical.diff(n)).collect();
    let mut mult: Vec<Vec<Matrix>> =
        (0..canonical.dim()).map(|h| (0..=(e - canonical.degree(h)) as i64).map(|n| canonical.mult(h, n)).collect()).collect();
    let mut seen = std::collections::BTreeSet::new();
    for line in body {
        if let Some((idx, m)) = indexed_line(line, "d", 1)? {
            let n = idx[0];
            if n < 1 || n > e as i64 {
                return Err(Error::Invalid(format!("d {n} outside 1..={e}")));
            }
            let (rows, cols) = canonical.diff(n).shape();
            diffs[n as usize] = Matrix::parse(r, m, rows, cols)?;
            seen.insert(("d", n, 0));
        } else if let Some((idx, m)) = indexed_line(line, "t", 2)? {
            let (h, n) = (idx[0], idx[1]);
            if h < 0 || h as usize >= canonical.dim() || n < 0 || n as usize >= mult[h as usize].len() {
                return Err(Error::Invalid(format!("t {h} {n} out of range")));
            }
            let (rows, cols) = canonical.mult(h as usize, n).shape();
            mult[h as usize][n as usize] = Matrix::parse(r, m, rows, cols)?;
            seen.insert(("t", h, n));
        } else {
            return Err(Error::Invalid(format!("unexpected line `{line}`")));
        }
    }
    let expected = e + mult.iter().map(Vec::len).sum::<usize>();
    if seen.len() != expected {
        return Err(Error::Invalid(format!("expected {expected} matrices, found {}", seen.len())));
    }
    KoszulAlgebra::from_matrices(r, &a, diffs, mult)
}

/// `koszul a_1, ..., a_e`, the underlying complex, then `act h n = ...`
/// for the action of basis element `h` on degree `n`.
pub fn dg_to_text(m: &DGModule) -> String {
    let k = m.algebra();
    let r = k.ring();
    let u = m.underlying();
    let mut out = format!("ring {r}\nkoszul {}\n", join_elems(r, k.sequence()));
    complex_lines(u, &mut out);
    for h in 0..k.dim() {
        let kh = k.degree(h) as i64;
        for n in u.degrees() {
            let a = m.action(h, n);
            if u.rank(n + kh) > 0 {
                out.push_str(&format!("act {h} {n} = {}\n", a.to_text()));
            }
        }
    }
    out
}

pub fn parse_dg(text: &str) -> Result<DGModule> {
    let lines = content_lines(text);
    let r = parse_ring_line(lines.first().ok_or_else(|| Error::Invalid("empty file".into()))?)?;
    let a = koszul_header(&r, lines.get(1).ok_or_else(|| Error::Invalid("missing `koszul` line".into()))?)?;
    let k = KoszulAlgebra::new(&r, &a)?;
    let split = lines.iter().position(|l| l.starts_with("act ")).unwrap_or(lines.len());
    let u = complex_from_lines(&r, &lines[2..split])?;
    let mut action = vec![BTreeMap::new(); k.dim()];
    for line in &lines[split..] {
        let (idx, text) = indexed_line(line, "act", 2)?.ok_or_else(|| Error::Invalid(format!("unexpected line `{line}`")))?;
        let (h, n) = (idx[0], idx[1]);
        if h < 0 || h as usize >= k.dim() {
            return Err(Error::Invalid(format!("no basis element {h}")));
        }
        let kh = k.degree(h as usize) as i64;
        let mat = Matrix::parse(&r, text, u.rank(n + kh), u.rank(n))?;
        if action[h as usize].insert(n, mat).is_some() {
            return Err(Error::Invalid(format!("act {h} {n} given twice")));
        }
    }
    DGModule::new(&k, &u, action)
}

#[cfg(test)]
mod tests;
