use super::presented::{resolve, Presentation, PresentedComplex};
use super::sdc::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::koszul::KoszulAlgebra;
use crate::linear::{self, HomologyModule, Structure};
use crate::ring::{Elem, Matrix, Ring, RingHom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

fn require_solve(r: &Ring) -> Result<()> {
    if !r.capabilities().linear_solve {
        return Err(Error::CapabilityMissing(format!("linear_solve over {r}")));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct ExtTable {
    pub window: usize,
    /// `Ext^i(M, N)` for `i = 0..=window`.
    pub entries: Vec<HomologyModule>,
}

impl ExtTable {
    /// Largest `i` in the window with `Ext^i != 0`.
    pub fn sup(&self) -> Option<i64> {
        self.entries.iter().rposition(|h| !h.is_zero).map(|i| i as i64)
    }
}

impl fmt::Display for ExtTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.entries.iter().enumerate() {
            writeln!(f, "Ext^{i}: {}", h.describe())?;
        }
        Ok(())
    }
}

/// `Ext^i_R(M, N)` for `0 <= i <= window` from a (minimal, over local
/// rings) free resolution of `M`.
pub fn ext_table(m: &Presentation, n: &Presentation, window: usize) -> Result<ExtTable> {
    ext_table_with_budget(m, n, window, DEFAULT_BUDGET)
}

pub fn ext_table_with_budget(m: &Presentation, n: &Presentation, window: usize, budget: usize) -> Result<ExtTable> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings);
    }
    require_solve(m.ring())?;
    let res = resolve(m, window + 1, budget)?;
    let (h, _) = PresentedComplex::hom_from_free(&res.complex, &PresentedComplex::module(n, 0))?;
    let entries = (0..=window as i64).map(|i| h.homology(-i)).collect::<Result<_>>()?;
    Ok(ExtTable { window, entries })
}

/// Both sides of the Ext-vanishing comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtSupReport {
    pub window: usize,
    /// `max { i <= window : Ext^i(M, X) != 0 }`.
    pub direct: Option<i64>,
    /// `-inf (K ⊗ RHom(M, X))`, read off `H(Hom(P, K ⊗ X))` in degrees
    /// `>= -window`.
    pub koszul: Option<i64>,
}

impl ExtSupReport {
    pub fn agree(&self) -> bool {
        self.direct == self.koszul
    }

    /// Both sides find `Ext` nonzero up to the window edge.
    pub fn saturated(&self) -> bool {
        self.agree() && self.direct == Some(self.window as i64)
    }
}

impl fmt::Display for ExtSupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<i64>| match v {
            Some(v) if v == self.window as i64 => format!("{v} (nonzero throughout window)"),
            Some(v) => v.to_string(),
            None => "none (acyclic in window)".to_string(),
        };
        write!(f, "direct: {}\nkoszul: {}\nwindow: {}", show(self.direct), show(self.koszul), self.window)
    }
}

pub fn ext_sup_via_koszul(m: &Presentation, x: &Presentation, k: &KoszulAlgebra, window: usize) -> Result<ExtSupReport> {
    if m.ring() != x.ring() || k.ring() != m.ring() {
        return Err(Error::MixedRings);
    }
    let direct = ext_table(m, x, window)?.sup();
    let e = k.len();
    let res = resolve(m, window + e + 1, DEFAULT_BUDGET)?;
    let (kx, _) = PresentedComplex::tensor_free(k.complex(), &PresentedComplex::module(x, 0))?;
    let (h, _) = PresentedComplex::hom_from_free(&res.complex, &kx)?;
    let mut koszul = None;
    for n in -(window as i64)..=e as i64 {
        if !h.homology(n)?.is_zero {
            koszul = Some(-n);
            break;
        }
    }
    Ok(ExtSupReport { window, direct, koszul })
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoSearch {
    /// `map` sends generators of the first module to the second.
    Isomorphic { map: Option<Matrix> },
    NotIsomorphic(String),
    /// No isomorphism found by the search; not a disproof.
    NotFound,
}

impl IsoSearch {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoSearch::Isomorphic { .. })
    }
}

impl fmt::Display for IsoSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoSearch::Isomorphic { map: Some(m) } => write!(f, "isomorphic via {}", m.to_text()),
            IsoSearch::Isomorphic { map: None } => write!(f, "isomorphic"),
            IsoSearch::NotIsomorphic(why) => write!(f, "not isomorphic: {why}"),
            IsoSearch::NotFound => write!(f, "no isomorphism found"),
        }
    }
}

const RANDOM_TRIES: usize = 64;

/// Whether `phi: R^{g_a} -> R^{g_b}` induces an isomorphism
/// `coker(rel_a) -> coker(rel_b)`.
pub fn induces_iso(phi: &Matrix, a: &Presentation, b: &Presentation) -> Result<bool> {
    let r = a.ring();
    let image = phi.mul(&a.rel)?;
    if !linear::span_contains(&b.rel, &image)? {
        return Ok(false);
    }
    let onto = phi.hcat(&b.rel)?;
    if !linear::span_contains(&onto, &Matrix::identity(r, b.generators()))? {
        return Ok(false);
    }
    let back = linear::preimage_of_span(phi, &b.rel)?;
    linear::span_contains(&a.rel, &back)
}

/// Generators of `{phi : phi(im rel_a) ⊆ im rel_b}`, as `g_b x g_a`
/// matrices.
fn hom_lifts(a: &Presentation, b: &Presentation) -> Result<Vec<Matrix>> {
    let r = a.ring();
    let (ga, ka, gb, kb) = (a.generators(), a.rel.cols(), b.generators(), b.rel.cols());
    let nphi = gb * ga;
    let mut sys = Matrix::zeros(r, gb * ka, nphi + kb * ka);
    for i in 0..gb {
        for q in 0..ka {
            let row = i * ka + q;
            for j in 0..ga {
                sys.set(row, i * ga + j, a.rel.get(j, q).clone());
            }
            for p in 0..kb {
                sys.set(row, nphi + p * ka + q, r.neg(b.rel.get(i, p)));
            }
        }
    }
    let ker = linear::kernel_basis(&sys)?;
    Ok((0..ker.cols()).map(|c| Matrix::from_fn(r, gb, ga, |i, j| ker.get(i * ga + j, c).clone())).collect())
}

fn structure_mismatch(a: &HomologyModule, b: &HomologyModule) -> Option<String> {
    if let (Some(x), Some(y)) = (&a.cardinality, &b.cardinality) {
        if x != y {
            return Some(format!("orders {x} and {y} differ"));
        }
    }
    let definitive = matches!(
        (&a.structure, &b.structure),
        (Structure::Euclid { .. }, Structure::Euclid { .. })
            | (Structure::Vector { .. }, Structure::Vector { .. })
            | (Structure::Abelian { .. }, Structure::Abelian { .. })
    );
    if definitive && a.structure != b.structure {
        return Some(format!("{} and {} differ", a.describe(), b.describe()));
    }
    None
}

/// Searches for an isomorphism `coker(rel_a) -> coker(rel_b)` among
/// lifts `phi` of module maps: the identity, kernel generators and seeded
/// random combinations.
pub fn find_isomorphism(a: &Presentation, b: &Presentation) -> Result<IsoSearch> {
    if a.ring() != b.ring() {
        return Err(Error::MixedRings);
    }
    let r = a.ring().clone();
    require_solve(&r)?;
    let (ma, mb) = (a.module()?, b.module()?);
    if let Some(why) = structure_mismatch(&ma, &mb) {
        return Ok(IsoSearch::NotIsomorphic(why));
    }
    let (pa, ea) = a.minimize()?;
    let (pb, eb) = b.minimize()?;
    if r.is_local() && pa.generators() != pb.generators() {
        return Ok(IsoSearch::NotIsomorphic(format!(
            "minimal generator counts {} and {} differ",
            pa.generators(),
            pb.generators()
        )));
    }
    let definitive = matches!(ma.structure, Structure::Euclid { .. } | Structure::Vector { .. } | Structure::Abelian { .. });

    // Back to the original generators: a -> pa is a left inverse of ea.
    let a_to_pa = section(a, &pa, &ea)?;
    let mut candidates = Vec::new();
    if pa.generators() == pb.generators() {
        candidates.push(Matrix::identity(&r, pb.generators()));
    }
    let gens = hom_lifts(&pa, &pb)?;
    candidates.extend(gens.iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_TRIES {
        if gens.is_empty() {
            break;
        }
        let mut acc = Matrix::zeros(&r, pb.generators(), pa.generators());
        for g in &gens {
            let c = crate::testing::random_elem(&r, &mut rng);
            acc = acc.add(&g.scale(&c))?;
        }
        candidates.push(acc);
    }
    for phi in candidates {
        if induces_iso(&phi, &pa, &pb)? {
            let map = match &a_to_pa {
                Some(s) => Some(eb.mul(&phi)?.mul(s)?),
                None => None,
            };
            if let Some(m) = &map {
                if !induces_iso(m, a, b)? {
                    return Err(Error::VerificationFailed("isomorphism did not transfer to the original generators".into()));
                }
            }
            return Ok(IsoSearch::Isomorphic { map });
        }
    }
    if definitive {
        return Ok(IsoSearch::Isomorphic { map: None });
    }
    Ok(IsoSearch::NotFound)
}

/// A map `R^{g_a} -> R^{g_pa}` inducing the inverse of `ea` on cokernels.
fn section(a: &Presentation, pa: &Presentation, ea: &Matrix) -> Result<Option<Matrix>> {
    let r = a.ring();
    let lhs = ea.hcat(&a.rel)?;
    let mut cols = Vec::new();
    for j in 0..a.generators() {
        let target: Vec<Elem> = (0..a.generators()).map(|i| if i == j { r.one() } else { r.zero() }).collect();
        match linear::solve(&lhs, &target)? {
            Some(x) => cols.push(x[..pa.generators()].to_vec()),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_columns(r, pa.generators(), &cols)))
}

/// Checks that `x_i` is a nonzerodivisor on `R/(x_1, ..., x_{i-1})` and
/// that `R/(x) != 0`.
pub fn check_regular(ring: &Ring, x: &[Elem]) -> Result<()> {
    require_solve(ring)?;
    for i in 0..x.len() {
        let prev = row_matrix(ring, &x[..i]);
        let mult = Matrix::from_rows(ring, vec![vec![x[i].clone()]])?;
        let colon = linear::preimage_of_span(&mult, &prev)?;
        if !linear::span_contains(&prev, &colon)? {
            return Err(Error::NotRegular(format!(
                "multiplication by {} has a kernel on R/({})",
                ring.format(&x[i]),
                x[..i].iter().map(|e| ring.format(e)).collect::<Vec<_>>().join(",")
            )));
        }
    }
    if linear::in_span(&row_matrix(ring, x), &[ring.one()])? {
        return Err(Error::NotRegular("the sequence generates the unit ideal".into()));
    }
    Ok(())
}

fn row_matrix(ring: &Ring, x: &[Elem]) -> Matrix {
    Matrix::from_fn(ring, 1, x.len(), |_, j| x[j].clone())
}

#[derive(Debug, Clone)]
pub struct LiftingVerdict {
    /// `Tor_i^R(R/(x), M)` for `i = 1..=len(x)`.
    pub tor: Vec<HomologyModule>,
    /// `S ⊗ M` as a presentation over `S`.
    pub reduction: Presentation,
    pub iso: IsoSearch,
}

impl LiftingVerdict {
    pub fn tor_vanishes(&self) -> bool {
        self.tor.iter().all(|t| t.is_zero)
    }

    pub fn lifts(&self) -> bool {
        self.tor_vanishes() && self.iso.is_isomorphic()
    }
}

impl fmt::Display for LiftingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tor.iter().enumerate() {
            writeln!(f, "Tor_{}: {}", i + 1, t.describe())?;
        }
        writeln!(f, "reduction: {}", self.iso)?;
        write!(f, "{}", if self.lifts() { "lifting" } else { "not a lifting" })
    }
}

/// Whether `M` over `R` lifts `N` over `S = R/(x)` along `f`: `Tor_{>=1}`
/// vanishes (via the Koszul complex on `x`) and `S ⊗ M ≅ N`.
pub fn lifting_verify(f: &RingHom, x: &[Elem], m: &Presentation, n: &Presentation) -> Result<LiftingVerdict> {
    let (r, s) = (f.source(), f.target());
    if m.ring() != r || n.ring() != s {
        return Err(Error::MixedRings);
    }
    require_solve(r)?;
    require_solve(s)?;
    check_regular(r, x)?;
    if let Some(bad) = x.iter().find(|e| !s.is_zero(&f.apply(e))) {
        return Err(Error::NotAHomomorphism(format!("{} does not map to zero", r.format(bad))));
    }
    let k = KoszulAlgebra::new(r, x)?;
    let (km, _) = PresentedComplex::tensor_free(k.complex(), &PresentedComplex::module(m, 0))?;
    let tor = (1..=x.len() as i64).map(|i| km.homology(i)).collect::<Result<_>>()?;
    let reduction = m.base_change(f)?;
    let iso = find_isomorphism(&reduction, n)?;
    Ok(LiftingVerdict { tor, reduction, iso })
}

/// Two candidate liftings of the same module: compares their reductions,
/// then searches for an isomorphism between them.
pub fn compare_liftings(f: &RingHom, m1: &Presentation, m2: &Presentation) -> Result<(IsoSearch, IsoSearch)> {
    let reductions = find_isomorphism(&m1.base_change(f)?, &m2.base_change(f)?)?;
    Ok((reductions, find_isomorphism(m1, m2)?))
}
