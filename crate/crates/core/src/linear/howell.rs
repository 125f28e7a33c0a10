//! Howell normal form over Z/N.
//!
//! The row span of a matrix over Z/N is brought into echelon form whose
//! pivots divide N, with every row reduced above its pivots and the extra
//! rows `(N/h) * row` appended so that the span of rows with leading zeros
//! in the first `k` columns is visible directly.

use num_integer::Integer;

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn addmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

fn negmod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

/// Extended gcd on nonnegative integers: `s*a + t*b = g` with `s, t` mod n.
fn xgcd(a: u64, b: u64, n: u64) -> (u64, u64, u64) {
    let e = (a as i128).extended_gcd(&(b as i128));
    let m = n as i128;
    (e.gcd as u64, e.x.rem_euclid(m) as u64, e.y.rem_euclid(m) as u64)
}

/// A unit `u` with `u*a ≡ gcd(a, n) (mod n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let h = a.gcd(&n);
    if h == n {
        return 1;
    }
    let (a1, n1) = (a / h, n / h);
    let u0 = if n1 == 1 { 1 } else { crate::ring::inv_mod(a1 % n1, n1).expect("coprime") };
    let mut u = u0 % n1.max(1);
    if u == 0 {
        u = n1;
    }
    loop {
        if u.gcd(&n) == 1 {
            return u % n;
        }
        u += n1;
    }
}

/// Row operations recorded as a left transform.
#[derive(Debug, Clone)]
pub struct Howell {
    pub n: u64,
    pub cols: usize,
    /// Nonzero rows of the Howell form, ordered by pivot column.
    pub rows: Vec<Vec<u64>>,
    /// `transform[i]` expresses `rows[i]` as a combination of the input rows.
    pub transform: Option<Vec<Vec<u64>>>,
}

struct Builder {
    n: u64,
    rows: Vec<Vec<u64>>,
    trans: Option<Vec<Vec<u64>>>,
}

impl Builder {
    fn combine(&mut self, r: usize, i: usize, m: [[u64; 2]; 2]) {
        let n = self.n;
        let apply = |x: &mut Vec<Vec<u64>>| {
            let (a, b) = (x[r].clone(), x[i].clone());
            for k in 0..a.len() {
                x[r][k] = addmod(mulmod(m[0][0], a[k], n), mulmod(m[0][1], b[k], n), n);
                x[i][k] = addmod(mulmod(m[1][0], a[k], n), mulmod(m[1][1], b[k], n), n);
            }
        };
        apply(&mut self.rows);
        if let Some(t) = self.trans.as_mut() {
            apply(t);
        }
    }

    fn scale(&mut self, r: usize, u: u64) {
        let n = self.n;
        for x in self.rows[r].iter_mut() {
            *x = mulmod(*x, u, n);
        }
        if let Some(t) = self.trans.as_mut() {
            for x in t[r].iter_mut() {
                *x = mulmod(*x, u, n);
            }
        }
    }

    /// row_i += f row_k
    fn add(&mut self, i: usize, k: usize, f: u64) {
        let n = self.n;
        if f == 0 {
            return;
        }
        let src = self.rows[k].clone();
        for (x, y) in self.rows[i].iter_mut().zip(&src) {
            *x = addmod(*x, mulmod(f, *y, n), n);
        }
        if let Some(t) = self.trans.as_mut() {
            let src = t[k].clone();
            for (x, y) in t[i].iter_mut().zip(&src) {
                *x = addmod(*x, mulmod(f, *y, n), n);
            }
        }
    }
}

/// Howell form of the row span of `input` (entries already reduced mod n).
pub fn howell(n: u64, input: &[Vec<u64>], cols: usize, with_transform: bool) -> Howell {
    let nin = input.len();
    let mut b = Builder {
        n,
        rows: input.to_vec(),
        trans: with_transform.then(|| {
            (0..nin).map(|i| (0..nin).map(|j| u64::from(i == j)).collect()).collect()
        }),
    };
    // work area: one spare zero row per column for saturation rows
    for _ in 0..cols.max(1) {
        b.rows.push(vec![0; cols]);
        if let Some(t) = b.trans.as_mut() {
            t.push(vec![0; nin]);
        }
    }
    let mut r = 0;
    for c in 0..cols {
        if r >= b.rows.len() {
            break;
        }
        for i in r + 1..b.rows.len() {
            let bi = b.rows[i][c];
            if bi == 0 {
                continue;
            }
            let a = b.rows[r][c];
            let (g, s, t) = xgcd(a, bi, n);
            let (ag, bg) = (a / g, bi / g);
            b.combine(r, i, [[s, t], [negmod(bg % n, n), ag % n]]);
        }
        let p = b.rows[r][c];
        if p == 0 {
            continue;
        }
        let u = normalizing_unit(p, n);
        b.scale(r, u);
        let h = b.rows[r][c];
        for i in 0..r {
            let q = b.rows[i][c] / h;
            b.add(i, r, negmod(q % n, n));
        }
        let mult = n / h;
        if h != 1 {
            // saturation row: (n/h) * row_r, which vanishes in column c
            let spare = (r + 1..b.rows.len()).find(|&k| b.rows[k].iter().all(|x| *x == 0) && k > r);
            let k = match spare {
                Some(k) => k,
                None => {
                    b.rows.push(vec![0; cols]);
                    if let Some(t) = b.trans.as_mut() {
                        t.push(vec![0; nin]);
                    }
                    b.rows.len() - 1
                }
            };
            b.add(k, r, mult % n);
        }
        r += 1;
    }
    let mut rows = Vec::new();
    let mut trans = Vec::new();
    for i in 0..b.rows.len() {
        if b.rows[i].iter().any(|x| *x != 0) {
            rows.push(b.rows[i].clone());
            if let Some(t) = &b.trans {
                trans.push(t[i].clone());
            }
        }
    }
    // nonzero rows are the first r ones except rare saturation leftovers
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by_key(|&i| rows[i].iter().position(|x| *x != 0).unwrap());
    let rows2: Vec<Vec<u64>> = idx.iter().map(|&i| rows[i].clone()).collect();
    let trans2 = with_transform.then(|| idx.iter().map(|&i| trans[i].clone()).collect());
    Howell { n, cols, rows: rows2, transform: trans2 }
}

impl Howell {
    fn pivot(&self, i: usize) -> (usize, u64) {
        let c = self.rows[i].iter().position(|x| *x != 0).unwrap();
        (c, self.rows[i][c])
    }

    /// Cardinality of the row span.
    pub fn span_size(&self) -> num_bigint::BigUint {
        let mut acc = num_bigint::BigUint::from(1u32);
        for i in 0..self.rows.len() {
            let (_, h) = self.pivot(i);
            acc *= num_bigint::BigUint::from(self.n / h.gcd(&self.n));
        }
        acc
    }

    /// Reduces `v` against the rows whose pivot lies before `limit`;
    /// returns the multipliers used when every such column clears.
    pub fn reduce_prefix(&self, v: &mut [u64], limit: usize) -> Option<Vec<u64>> {
        let n = self.n;
        let mut mult = vec![0u64; self.rows.len()];
        for i in 0..self.rows.len() {
            let (c, h) = self.pivot(i);
            if c >= limit {
                break;
            }
            if v[c] == 0 {
                continue;
            }
            if v[c] % h != 0 {
                return None;
            }
            let q = v[c] / h;
            mult[i] = q;
            for (x, y) in v.iter_mut().zip(&self.rows[i]) {
                *x = addmod(*x, negmod(mulmod(q, *y, n), n), n);
            }
        }
        if v[..limit].iter().any(|x| *x != 0) {
            return None;
        }
        Some(mult)
    }
}

/// Generators of `{x : a x = 0}` for an `m x k` matrix `a` over Z/n.
pub fn kernel(n: u64, a: &[Vec<u64>], m: usize, k: usize) -> Vec<Vec<u64>> {
    // rows of [a^T | I_k]
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut r: Vec<u64> = (0..m).map(|i| a[i][j]).collect();
            r.extend((0..k).map(|t| u64::from(t == j)));
            r
        })
        .collect();
    let h = howell(n, &rows, m + k, false);
    h.rows
        .iter()
        .filter(|r| r[..m].iter().all(|x| *x == 0))
        .map(|r| r[m..].to_vec())
        .collect()
}

/// A solution of `a x = b` over Z/n.
pub fn solve(n: u64, a: &[Vec<u64>], m: usize, k: usize, b: &[u64]) -> Option<Vec<u64>> {
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut r: Vec<u64> = (0..m).map(|i| a[i][j]).collect();
            r.extend((0..k).map(|t| u64::from(t == j)));
            r
        })
        .collect();
    let h = howell(n, &rows, m + k, false);
    let mut v: Vec<u64> = b.to_vec();
    v.extend(std::iter::repeat(0).take(k));
    h.reduce_prefix(&mut v, m)?;
    Some(v[m..].iter().map(|x| negmod(*x, n)).collect())
}

/// Cardinality of the submodule spanned by the given vectors.
pub fn span_size(n: u64, vectors: &[Vec<u64>], dim: usize) -> num_bigint::BigUint {
    howell(n, vectors, dim, false).span_size()
}
