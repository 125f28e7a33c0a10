//! Buchberger's algorithm with the coprime-leading-monomial criterion.

use super::poly::{divides, mono_div, mono_lcm, Poly, PolyCtx};
use crate::error::{Error, Result};

pub const DEFAULT_SPAIR_BUDGET: usize = 100_000;

fn spoly(ctx: &PolyCtx, f: &Poly, g: &Poly) -> Poly {
    let l = mono_lcm(f.lm(), g.lm());
    let one = ctx.field.one();
    let finv = ctx.field.inverse(f.lc()).ok().flatten().expect("field");
    let ginv = ctx.field.inverse(g.lc()).ok().flatten().expect("field");
    let a = ctx.mul_term(f, &mono_div(&l, f.lm()), &ctx.field.mul(&one, &finv));
    let b = ctx.mul_term(g, &mono_div(&l, g.lm()), &ginv);
    ctx.sub(&a, &b)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by
/// decreasing leading monomial.
pub fn reduced_basis(ctx: &PolyCtx, gens: &[Poly], budget: usize) -> Result<Vec<Poly>> {
    let mut g: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(|p| ctx.monic(p)).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut used = 0usize;
    while let Some((i, j)) = pairs.pop() {
        if coprime(g[i].lm(), g[j].lm()) {
            continue;
        }
        used += 1;
        if used > budget {
            return Err(Error::GroebnerBudgetExceeded(budget));
        }
        let r = ctx.reduce(&spoly(ctx, &g[i], &g[j]), &g);
        if !r.is_zero() {
            let r = ctx.monic(&r);
            let k = g.len();
            g.push(r);
            for i in 0..k {
                pairs.insert(0, (i, k));
            }
        }
    }
    // minimal basis
    let mut keep: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    // interreduce
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let r = ctx.reduce(&keep[i], &others);
        out.push(ctx.monic(&r));
    }
    out.sort_by(|a, b| ctx.order.cmp(b.lm(), a.lm()));
    Ok(out)
}
