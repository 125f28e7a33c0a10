use super::poly::{Family, SymMatrix, SymPoly, Var};
use crate::complex::ChainComplex;
use crate::dg::DGModule;
use crate::error::{Error, Result};
use crate::koszul::{binomial, KoszulAlgebra};
use crate::ring::{parse_ring, Elem, Matrix, Ring};
use std::collections::BTreeMap;
use std::fmt;

/// Ranks `s_0..s_m` of the complex to descend and the Koszul length `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemShape {
    pub m: usize,
    pub e: usize,
    pub s: Vec<usize>,
}

impl SystemShape {
    pub fn new(e: usize, s: Vec<usize>) -> Result<SystemShape> {
        if s.is_empty() {
            return Err(Error::ShapeMismatch("at least one rank s_0 is required".into()));
        }
        Ok(SystemShape { m: s.len() - 1, e, s })
    }

    pub fn of(k: &KoszulAlgebra, p: &ChainComplex) -> Result<SystemShape> {
        if let Some(lo) = p.lo() {
            if lo < 0 {
                return Err(Error::ShapeMismatch(format!("complex has rank in negative degree {lo}")));
            }
        }
        let m = p.hi().unwrap_or(0).max(0) as usize;
        Self::new(k.len(), (0..=m as i64).map(|n| p.rank(n)).collect())
    }

    pub fn s(&self, p: i64) -> usize {
        if p < 0 || p as usize > self.m {
            0
        } else {
            self.s[p as usize]
        }
    }

    /// `r_n = Σ_p C(e, n-p) s_p`.
    pub fn r(&self, n: i64) -> usize {
        (0..=self.m as i64).filter(|p| n - p >= 0).map(|p| binomial(self.e, (n - p) as usize) * self.s(p)).sum()
    }

    pub fn r_all(&self) -> Vec<usize> {
        (0..=(self.m + self.e) as i64).map(|n| self.r(n)).collect()
    }

    /// Rank of the cone in degree `n`: `r_n + r_{n-1}`.
    pub fn c(&self, n: i64) -> usize {
        self.r(n) + self.r(n - 1)
    }

    /// Offset of the summand `K_{n-p} ⊗ A_p` inside degree `n`.
    pub fn offset(&self, n: i64, p: i64) -> usize {
        (0..p.min(self.m as i64 + 1)).filter(|q| n - q >= 0).map(|q| binomial(self.e, (n - q) as usize) * self.s(q)).sum()
    }

    pub fn top(&self) -> i64 {
        (self.m + self.e) as i64
    }

    pub fn header(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("m={} e={} s={} r={}", self.m, self.e, join(&self.s), join(&self.r_all()))
    }

    pub fn parse_header(line: &str) -> Result<SystemShape> {
        let mut fields = BTreeMap::new();
        for part in line.split_whitespace() {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Invalid(format!("bad header field `{part}`")))?;
            fields.insert(k, v);
        }
        let list = |v: &str| -> Result<Vec<usize>> {
            v.split(',').map(|x| x.parse().map_err(|_| Error::Invalid(format!("bad rank `{x}`")))).collect()
        };
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| Error::Invalid(format!("header lacks `{k}`")));
        let m: usize = get("m")?.parse().map_err(|_| Error::Invalid("bad m".into()))?;
        let e: usize = get("e")?.parse().map_err(|_| Error::Invalid("bad e".into()))?;
        let shape = SystemShape::new(e, list(get("s")?)?)?;
        if shape.m != m {
            return Err(Error::ShapeMismatch(format!("m={m} but {} ranks given", shape.s.len())));
        }
        if let Ok(r) = get("r") {
            if list(r)? != shape.r_all() {
                return Err(Error::RankMismatch(format!("header r={r} disagrees with s and e")));
            }
        }
        Ok(shape)
    }

    /// All unknowns in canonical order: X, then Y, then Z, each by `(n, i, j)`.
    pub fn variables(&self) -> Vec<Var> {
        let mut v = Vec::new();
        for n in 1..=self.m as i64 {
            push_block(&mut v, Family::X, n, self.s(n - 1), self.s(n));
        }
        for n in 0..=self.top() {
            push_block(&mut v, Family::Y, n, self.r(n), self.r(n));
        }
        for n in 0..=self.top() {
            push_block(&mut v, Family::Z, n, self.c(n + 1), self.c(n));
        }
        v
    }
}

fn push_block(v: &mut Vec<Var>, f: Family, n: i64, rows: usize, cols: usize) {
    for i in 1..=rows {
        for j in 1..=cols {
            v.push(Var::new(f, n, i, j));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    S1,
    S2,
    S3,
    S4,
}

impl Tag {
    pub const ALL: [Tag; 4] = [Tag::S1, Tag::S2, Tag::S3, Tag::S4];
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", *self as usize + 1)
    }
}

/// Location of an equation; `h` is the 1-based Koszul basis index (S3
/// only); `row` and `col` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub tag: Tag,
    pub h: Option<usize>,
    pub n: i64,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(h) = self.h {
            write!(f, "h={h} ")?;
        }
        write!(f, "n={} row={} col={}", self.n, self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub pos: Position,
    pub poly: SymPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    pub ring: Ring,
    pub shape: SystemShape,
    pub variables: Vec<Var>,
    pub equations: Vec<Equation>,
}

/// One entry of `B_n`: a ring constant or a signed unknown `X_{p,i,j}`.
#[derive(Debug, Clone)]
enum BEntry {
    Const(Elem),
    X { p: i64, i: usize, j: usize, neg: bool },
}

/// Nonzero pattern of `B_n : (K⊗A)_n -> (K⊗A)_{n-1}` with 0-based positions.
fn b_entries(k: &KoszulAlgebra, shape: &SystemShape, n: i64) -> Vec<(usize, usize, BEntry)> {
    let mut out = Vec::new();
    for p in 0..=shape.m as i64 {
        let kd = n - p;
        if kd < 0 || kd as usize > shape.e {
            continue;
        }
        let sp = shape.s(p);
        let c0 = shape.offset(n, p);
        if kd >= 1 {
            let d = k.diff(kd);
            let r0 = shape.offset(n - 1, p);
            for a in 0..d.rows() {
                for b in 0..d.cols() {
                    if k.ring().is_zero(d.get(a, b)) {
                        continue;
                    }
                    for t in 0..sp {
                        out.push((r0 + a * sp + t, c0 + b * sp + t, BEntry::Const(d.get(a, b).clone())));
                    }
                }
            }
        }
        if p >= 1 {
            let sq = shape.s(p - 1);
            let r0 = shape.offset(n - 1, p - 1);
            for a in 0..binomial(shape.e, kd as usize) {
                for i in 0..sq {
                    for j in 0..sp {
                        out.push((r0 + a * sq + i, c0 + a * sp + j, BEntry::X { p, i: i + 1, j: j + 1, neg: kd % 2 == 1 }));
                    }
                }
            }
        }
    }
    out
}

/// `B_n` with unknown `X` entries.
pub fn build_b_symbolic(k: &KoszulAlgebra, shape: &SystemShape, n: i64) -> SymMatrix {
    let r = k.ring();
    let mut b = SymMatrix::zeros(shape.r(n - 1), shape.r(n));
    for (i, j, e) in b_entries(k, shape, n) {
        let p = match e {
            BEntry::Const(c) => SymPoly::constant(r, c),
            BEntry::X { p, i, j, neg } => {
                let v = SymPoly::var(r, Var::new(Family::X, p, i, j));
                if neg {
                    v.neg(r)
                } else {
                    v
                }
            }
        };
        b.set(i, j, p);
    }
    b
}

/// `B_n` with `X_p` given by concrete matrices over the algebra's ring.
pub fn build_b_concrete(k: &KoszulAlgebra, shape: &SystemShape, xs: &BTreeMap<i64, Matrix>, n: i64) -> Result<Matrix> {
    let r = k.ring();
    for p in 1..=shape.m as i64 {
        let want = (shape.s(p - 1), shape.s(p));
        match xs.get(&p) {
            Some(x) if x.shape() == want => {}
            Some(x) => return Err(Error::ShapeMismatch(format!("X_{p} is {:?}, expected {want:?}", x.shape()))),
            None if want.0 * want.1 == 0 => {}
            None => return Err(Error::ShapeMismatch(format!("X_{p} missing"))),
        }
    }
    let mut b = Matrix::zeros(r, shape.r(n - 1), shape.r(n));
    for (i, j, e) in b_entries(k, shape, n) {
        let v = match e {
            BEntry::Const(c) => c,
            BEntry::X { p, i, j, neg } => {
                let x = xs[&p].get(i - 1, j - 1).clone();
                if neg {
                    r.neg(&x)
                } else {
                    x
                }
            }
        };
        b.set(i, j, v);
    }
    Ok(b)
}

/// `w^h_n = ⊕_p t^h_{n-p} ⊗ 1_{s_p}`.
pub fn w_matrix(k: &KoszulAlgebra, shape: &SystemShape, h: usize, n: i64) -> Matrix {
    let r = k.ring();
    let kh = k.degree(h) as i64;
    let mut w = Matrix::zeros(r, shape.r(n + kh), shape.r(n));
    for p in 0..=shape.m as i64 {
        let kd = n - p;
        if kd < 0 || kd as usize + k.degree(h) > shape.e || shape.s(p) == 0 {
            continue;
        }
        let block = k.mult(h, kd).kron(&Matrix::identity(r, shape.s(p))).expect("kron");
        w.put(shape.offset(n + kh, p), shape.offset(n, p), &block);
    }
    w
}

fn push_matrix(eqs: &mut Vec<Equation>, tag: Tag, h: Option<usize>, n: i64, m: SymMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            eqs.push(Equation { pos: Position { tag, h, n, row: i + 1, col: j + 1 }, poly: m.get(i, j).clone() });
        }
    }
}

/// Checks the inputs and materializes S1–S4 for descending `P` along the
/// DG module `F` (matrices `u_n`, `v^h_n`).
pub fn generate_system(k: &KoszulAlgebra, p: &ChainComplex, f: &DGModule) -> Result<PolynomialSystem> {
    let r = k.ring();
    if p.ring() != r || f.algebra() != k {
        return Err(Error::MixedRings);
    }
    let shape = SystemShape::of(k, p)?;
    if r.is_local() {
        if let Some((degree, row, col)) = p.first_unit_entry()? {
            return Err(Error::NotMinimal { degree, row, col });
        }
    }
    let fu = f.underlying();
    for n in -1..=shape.top() + 1 {
        if fu.rank(n) != shape.r(n) {
            return Err(Error::RankMismatch(format!("rank F_{n} = {} but r_{n} = {}", fu.rank(n), shape.r(n))));
        }
    }
    if let Some(c) = f.verify().first_failure() {
        return Err(Error::UnverifiedF(c.to_string()));
    }
    Ok(generate_unchecked(k, &shape, f))
}

fn y_matrix(r: &Ring, shape: &SystemShape, n: i64) -> SymMatrix {
    if n < 0 || n > shape.top() {
        return SymMatrix::zeros(shape.r(n), shape.r(n));
    }
    SymMatrix::unknowns(r, Family::Y, n, shape.r(n), shape.r(n))
}

fn z_matrix(r: &Ring, shape: &SystemShape, n: i64) -> SymMatrix {
    if n < 0 || n > shape.top() {
        return SymMatrix::zeros(shape.c(n + 1), shape.c(n));
    }
    SymMatrix::unknowns(r, Family::Z, n, shape.c(n + 1), shape.c(n))
}

/// Cone differential `D_n = [[B_n, Y_{n-1}], [0, -u_{n-1}]]`.
fn d_matrix(k: &KoszulAlgebra, shape: &SystemShape, f: &DGModule, n: i64) -> SymMatrix {
    let r = k.ring();
    let mut d = SymMatrix::zeros(shape.c(n - 1), shape.c(n));
    d.put(0, 0, &build_b_symbolic(k, shape, n));
    d.put(0, shape.r(n), &y_matrix(r, shape, n - 1));
    d.put(shape.r(n - 1), shape.r(n), &SymMatrix::from_matrix(&f.underlying().diff(n - 1).neg()));
    d
}

fn generate_unchecked(k: &KoszulAlgebra, shape: &SystemShape, f: &DGModule) -> PolynomialSystem {
    let r = k.ring();
    let mut eqs = Vec::new();
    let top = shape.top();

    for n in 1..shape.m as i64 {
        let a = SymMatrix::unknowns(r, Family::X, n, shape.s(n - 1), shape.s(n));
        let b = SymMatrix::unknowns(r, Family::X, n + 1, shape.s(n), shape.s(n + 1));
        push_matrix(&mut eqs, Tag::S1, None, n, a.mul(r, &b));
    }

    for n in 1..=top {
        let u = SymMatrix::from_matrix(&f.underlying().diff(n));
        let lhs = y_matrix(r, shape, n - 1).mul(r, &u);
        let rhs = build_b_symbolic(k, shape, n).mul(r, &y_matrix(r, shape, n));
        push_matrix(&mut eqs, Tag::S2, None, n, lhs.sub(r, &rhs));
    }

    for n in 0..=top {
        for h in 0..k.dim() {
            let kh = k.degree(h) as i64;
            if n + kh > top {
                continue;
            }
            let v = SymMatrix::from_matrix(&f.action(h, n));
            let w = SymMatrix::from_matrix(&w_matrix(k, shape, h, n));
            let lhs = y_matrix(r, shape, n + kh).mul(r, &v);
            let rhs = w.mul(r, &y_matrix(r, shape, n));
            push_matrix(&mut eqs, Tag::S3, Some(h + 1), n, lhs.sub(r, &rhs));
        }
    }

    for n in 0..=top + 1 {
        let a = z_matrix(r, shape, n - 1).mul(r, &d_matrix(k, shape, f, n));
        let b = d_matrix(k, shape, f, n + 1).mul(r, &z_matrix(r, shape, n));
        let m = a.add(r, &b).sub(r, &SymMatrix::identity(r, shape.c(n)));
        push_matrix(&mut eqs, Tag::S4, None, n, m);
    }

    PolynomialSystem { ring: r.clone(), shape: shape.clone(), variables: shape.variables(), equations: eqs }
}

impl PolynomialSystem {
    pub fn count(&self, tag: Tag) -> usize {
        self.equations.iter().filter(|e| e.pos.tag == tag).count()
    }

    pub fn count_variables(&self, family: Family) -> usize {
        self.variables.iter().filter(|v| v.family == family).count()
    }

    /// Line format: `ring`, the shape header, then one equation per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\n{}\n", self.ring, self.shape.header());
        for eq in &self.equations {
            let p = eq.pos;
            let tag = match p.h {
                Some(h) => format!("{}[{h}]", p.tag),
                None => p.tag.to_string(),
            };
            out.push_str(&format!("{tag} {} {} {} : {}\n", p.n, p.row, p.col, eq.poly.format(&self.ring)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<PolynomialSystem> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let ring_line = lines.next().ok_or_else(|| Error::Invalid("empty system file".into()))?;
        let ring = parse_ring(ring_line.strip_prefix("ring").ok_or_else(|| Error::Invalid("expected `ring`".into()))?.trim())?;
        let shape = SystemShape::parse_header(lines.next().ok_or_else(|| Error::Invalid("missing shape header".into()))?)?;
        let mut equations = Vec::new();
        for line in lines {
            let (head, poly) = line.split_once(':').ok_or_else(|| Error::Invalid(format!("missing `:` in `{line}`")))?;
            let f: Vec<&str> = head.split_whitespace().collect();
            if f.len() != 4 {
                return Err(Error::Invalid(format!("bad equation head `{head}`")));
            }
            let (tag, h) = match f[0].split_once('[') {
                Some((t, rest)) => {
                    let h: usize = rest.trim_end_matches(']').parse().map_err(|_| Error::Invalid(format!("bad tag `{}`", f[0])))?;
                    (t, Some(h))
                }
                None => (f[0], None),
            };
            let tag = match tag {
                "S1" => Tag::S1,
                "S2" => Tag::S2,
                "S3" => Tag::S3,
                "S4" => Tag::S4,
                _ => return Err(Error::Invalid(format!("unknown subsystem `{tag}`"))),
            };
            let num = |s: &str| s.parse::<i64>().map_err(|_| Error::Invalid(format!("bad index `{s}`")));
            let pos = Position { tag, h, n: num(f[1])?, row: num(f[2])? as usize, col: num(f[3])? as usize };
            equations.push(Equation { pos, poly: SymPoly::parse(&ring, poly.trim())? });
        }
        let variables = shape.variables();
        Ok(PolynomialSystem { ring, shape, variables, equations })
    }
}
