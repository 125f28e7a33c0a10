use super::poly::{Family, Var};
use super::system::{build_b_concrete, PolynomialSystem, Position, SystemShape, Tag};
use crate::complex::{cone, ChainComplex, ChainMap, Homotopy};
use crate::dg::{first_nonlinear, DGModule};
use crate::error::{Error, Result};
use crate::koszul::KoszulAlgebra;
use crate::linear;
use crate::ring::{parse_ring, Elem, Matrix, Ring, RingHom};
use std::collections::BTreeMap;
use std::fmt;

/// Values for the unknowns in a target ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub ring: Ring,
    pub values: BTreeMap<Var, Elem>,
}

impl Assignment {
    pub fn new(ring: &Ring) -> Assignment {
        Assignment { ring: ring.clone(), values: BTreeMap::new() }
    }

    pub fn get(&self, v: &Var) -> Option<&Elem> {
        self.values.get(v)
    }

    pub fn set(&mut self, v: Var, x: Elem) {
        self.values.insert(v, x);
    }

    /// Stores every entry of `m` as `family_n_i_j`.
    pub fn set_matrix(&mut self, family: Family, n: i64, m: &Matrix) {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                self.values.insert(Var::new(family, n, i + 1, j + 1), m.get(i, j).clone());
            }
        }
    }

    pub fn matrix(&self, family: Family, n: i64, rows: usize, cols: usize) -> Result<Matrix> {
        let mut m = Matrix::zeros(&self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = Var::new(family, n, i + 1, j + 1);
                m.set(i, j, self.values.get(&v).ok_or_else(|| Error::IncompleteAssignment(v.to_string()))?.clone());
            }
        }
        Ok(m)
    }

    /// Same values in another ring.
    pub fn map(&self, f: &RingHom) -> Assignment {
        Assignment { ring: f.target().clone(), values: self.values.iter().map(|(v, x)| (*v, f.apply(x))).collect() }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ring {}\nassignment\n", self.ring);
        for (v, x) in &self.values {
            out.push_str(&format!("{v} = {}\n", self.ring.format(x)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Assignment> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines.next().ok_or_else(|| Error::Invalid("empty assignment file".into()))?;
        let ring = parse_ring(first.strip_prefix("ring").ok_or_else(|| Error::Invalid("expected `ring`".into()))?.trim())?;
        let mut a = Assignment::new(&ring);
        for line in lines.skip_while(|l| *l == "assignment") {
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| Error::Invalid(format!("missing `=` in `{line}`")))?;
            let v = Var::parse(lhs.trim()).ok_or_else(|| Error::Invalid(format!("bad unknown `{}`", lhs.trim())))?;
            if a.values.insert(v, ring.parse(rhs.trim())?).is_some() {
                return Err(Error::Invalid(format!("{v} assigned twice")));
            }
        }
        Ok(a)
    }
}

/// Identity on equal rings, otherwise the map matching variable names.
pub fn coefficient_hom(source: &Ring, target: &Ring) -> Result<RingHom> {
    if source == target {
        Ok(RingHom::identity(source))
    } else {
        RingHom::by_names(source, target)
    }
}

/// First failing equation per subsystem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub failures: BTreeMap<Tag, Position>,
    pub counts: BTreeMap<Tag, usize>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn subsystem_passed(&self, tag: Tag) -> bool {
        !self.failures.contains_key(&tag)
    }

    pub fn first_failure(&self) -> Option<&Position> {
        self.failures.values().next()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}", Tag::ALL.map(|t| format!("{t} ok")).join(" "));
        }
        let lines: Vec<String> = self.failures.iter().map(|(t, p)| format!("{t} FAIL {p}")).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// Evaluates every equation; reports the first nonzero residue of each
/// subsystem in equation order.
pub fn verify_assignment(system: &PolynomialSystem, assignment: &Assignment) -> Result<VerifyReport> {
    for v in &system.variables {
        if !assignment.values.contains_key(v) {
            return Err(Error::IncompleteAssignment(v.to_string()));
        }
    }
    let hom = coefficient_hom(&system.ring, &assignment.ring)?;
    let t = &assignment.ring;
    let mut failures = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for eq in &system.equations {
        *counts.entry(eq.pos.tag).or_insert(0) += 1;
        if failures.contains_key(&eq.pos.tag) {
            continue;
        }
        if !t.is_zero(&eq.poly.eval(&hom, &assignment.values)?) {
            failures.insert(eq.pos.tag, eq.pos);
        }
    }
    Ok(VerifyReport { failures, counts })
}

/// Whether `F` is the extension of `P`: same complex and action.
fn check_canonical(k: &KoszulAlgebra, p: &ChainComplex, f: &DGModule) -> Result<()> {
    let e = DGModule::extend(k, p)?;
    if e.underlying() != f.underlying() {
        return Err(Error::NonCanonicalF("underlying complex differs from K ⊗ P".into()));
    }
    for h in 0..k.dim() {
        for n in e.underlying().degrees() {
            if e.action(h, n) != f.action(h, n) {
                return Err(Error::NonCanonicalF(format!("action of {} differs in degree {n}", k.label(h))));
            }
        }
    }
    Ok(())
}

/// `X = ∂^P`, `Y = 1`, `Z_n` the identity block from `(K⊗P)_n` to `F_n`.
pub fn canonical_solution(k: &KoszulAlgebra, p: &ChainComplex, f: &DGModule) -> Result<Assignment> {
    check_canonical(k, p, f)?;
    let r = k.ring();
    let shape = SystemShape::of(k, p)?;
    let mut a = Assignment::new(r);
    for n in 1..=shape.m as i64 {
        a.set_matrix(Family::X, n, &p.diff(n));
    }
    for n in 0..=shape.top() {
        a.set_matrix(Family::Y, n, &Matrix::identity(r, shape.r(n)));
        let mut z = Matrix::zeros(r, shape.c(n + 1), shape.c(n));
        z.put(shape.r(n + 1), 0, &Matrix::identity(r, shape.r(n)));
        a.set_matrix(Family::Z, n, &z);
    }
    Ok(a)
}

/// Reconstructed complex with its certificate: `φ̃ : F -> K ⊗ A` given by
/// `Y` and a contraction `σ̃` of its cone given by `Z`.
#[derive(Debug, Clone)]
pub struct DescentCertificate {
    pub a: ChainComplex,
    pub extension: DGModule,
    pub target: DGModule,
    pub phi: ChainMap,
    pub sigma: Homotopy,
    pub report: VerifyReport,
}

fn alarm(what: &str) -> Error {
    Error::VerificationFailed(format!("system verification passed but {what}"))
}

/// Builds `A`, `φ̃`, `σ̃` from a verified assignment and re-checks them
/// with the complex-level predicates.
pub fn reconstruct(k: &KoszulAlgebra, f: &DGModule, system: &PolynomialSystem, assignment: &Assignment) -> Result<DescentCertificate> {
    let report = verify_assignment(system, assignment)?;
    if !report.passed() {
        let p = report.first_failure().expect("failure");
        return Err(Error::VerificationFailed(format!("{} fails at {p}", report.failures.keys().next().unwrap())));
    }
    if f.algebra() != k || system.ring != *k.ring() {
        return Err(Error::MixedRings);
    }
    let shape = &system.shape;
    let hom = coefficient_hom(k.ring(), &assignment.ring)?;
    let t = &assignment.ring;
    let kt = k.base_change(&hom)?;
    let ft = f.base_change(&hom)?;

    let mut xs = BTreeMap::new();
    for n in 1..=shape.m as i64 {
        xs.insert(n, assignment.matrix(Family::X, n, shape.s(n - 1), shape.s(n))?);
    }
    let a = ChainComplex::assemble(t, 0, shape.s.clone(), xs.values().cloned().collect());
    if a.verify().is_err() {
        return Err(alarm("d_A^2 != 0"));
    }
    let ext = DGModule::extend(&kt, &a)?;
    for n in 1..=shape.top() {
        if build_b_concrete(&kt, shape, &xs, n)? != ext.underlying().diff(n) {
            return Err(alarm(&format!("B_{n} differs from the differential of K ⊗ A")));
        }
    }

    let mut ycomps = BTreeMap::new();
    let mut zcomps = BTreeMap::new();
    for n in 0..=shape.top() {
        ycomps.insert(n, assignment.matrix(Family::Y, n, shape.r(n), shape.r(n))?);
        zcomps.insert(n, assignment.matrix(Family::Z, n, shape.c(n + 1), shape.c(n))?);
    }
    let phi = ChainMap::new_unchecked(ft.underlying(), ext.underlying(), ycomps);
    if !phi.is_chain_map()? {
        return Err(alarm("φ̃ is not a chain map"));
    }
    if let Some((h, n)) = first_nonlinear(&phi, &ft, &ext)? {
        return Err(alarm(&format!("φ̃ is not K-linear at {} degree {n}", kt.label(h))));
    }
    let c = cone(&phi)?;
    let sigma = Homotopy::new(zcomps);
    if let Some(n) = sigma.contraction_failure(&c)? {
        return Err(alarm(&format!("σ̃ is not a contraction in degree {n}")));
    }
    Ok(DescentCertificate { a, extension: ext, target: ft, phi, sigma, report })
}

/// Two-sided inverse via linear solving.
pub fn invert(g: &Matrix) -> Result<Matrix> {
    let r = g.ring();
    if !g.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix is not invertible", g.rows(), g.cols())));
    }
    let inv = linear::solve_matrix(g, &Matrix::identity(r, g.rows()))?
        .filter(|x| x.mul(g).map(|p| p == Matrix::identity(r, g.rows())).unwrap_or(false))
        .ok_or_else(|| Error::Invalid("matrix is not invertible".into()))?;
    Ok(inv)
}

/// `G_n = ⊕_p 1 ⊗ g_p` on `(K ⊗ A)_n`.
fn tensor_blocks(k: &KoszulAlgebra, shape: &SystemShape, g: &[Matrix], n: i64) -> Result<Matrix> {
    let r = k.ring();
    let mut out = Matrix::zeros(r, shape.r(n), shape.r(n));
    for p in 0..=shape.m as i64 {
        let kd = n - p;
        if kd < 0 || kd as usize > shape.e {
            continue;
        }
        let o = shape.offset(n, p);
        out.put(o, o, &Matrix::identity(r, k.rank(kd)).kron(&g[p as usize])?);
    }
    Ok(out)
}

/// Transports a solution along invertible `g_p : A'_p -> A_p`:
/// `X'_n = g_{n-1}^{-1} X_n g_n`, `Y' = G^{-1} Y`,
/// `Z'_n = diag(G_{n+1}, 1)^{-1} Z_n diag(G_n, 1)`.
pub fn conjugate(k: &KoszulAlgebra, shape: &SystemShape, a: &Assignment, g: &[Matrix]) -> Result<Assignment> {
    let r = &a.ring;
    if k.ring() != r {
        return Err(Error::MixedRings);
    }
    if g.len() != shape.m + 1 || g.iter().zip(&shape.s).any(|(m, s)| m.shape() != (*s, *s)) {
        return Err(Error::ShapeMismatch("need one s_p x s_p matrix per degree".into()));
    }
    let ginv: Vec<Matrix> = g.iter().map(invert).collect::<Result<_>>()?;
    let mut out = Assignment::new(r);
    for n in 1..=shape.m as i64 {
        let x = a.matrix(Family::X, n, shape.s(n - 1), shape.s(n))?;
        out.set_matrix(Family::X, n, &ginv[n as usize - 1].mul(&x)?.mul(&g[n as usize])?);
    }
    let big = |n: i64| -> Result<(Matrix, Matrix)> {
        Ok((tensor_blocks(k, shape, g, n)?, tensor_blocks(k, shape, &ginv, n)?))
    };
    for n in 0..=shape.top() {
        let y = a.matrix(Family::Y, n, shape.r(n), shape.r(n))?;
        out.set_matrix(Family::Y, n, &big(n)?.1.mul(&y)?);
        let z = a.matrix(Family::Z, n, shape.c(n + 1), shape.c(n))?;
        let right = big(n)?.0.block_diag(&Matrix::identity(r, shape.r(n - 1)))?;
        let left = big(n + 1)?.1.block_diag(&Matrix::identity(r, shape.r(n)))?;
        out.set_matrix(Family::Z, n, &left.mul(&z)?.mul(&right)?);
    }
    Ok(out)
}
