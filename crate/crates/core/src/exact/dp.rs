//! Lowest-label component dynamic programs, generic over the scalar backend.
//!
//! Every DP conditions on the component that contains the smallest vertex
//! label, so each partition of the vertex set is visited exactly once.

use super::arith::Arith;

/// `x^0, x^1, ..., x^max`.
fn powers<A: Arith>(ar: &A, x: &A::E, max: usize) -> Vec<A::E> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(ar.one());
    for i in 1..=max {
        out.push(ar.mul(&out[i - 1], x));
    }
    out
}

/// Pascal rows `C(m, j)` for `m ≤ n`, `j ≤ min(m, cols)`.
fn pascal<A: Arith>(ar: &A, n: usize, cols: usize) -> Vec<Vec<A::E>> {
    let mut rows: Vec<Vec<A::E>> = Vec::with_capacity(n + 1);
    rows.push(vec![ar.one()]);
    for m in 1..=n {
        let width = m.min(cols) + 1;
        let prev = &rows[m - 1];
        let row = (0..width)
            .map(|j| {
                if j == 0 || j == m {
                    ar.one()
                } else {
                    let left = &prev[j - 1];
                    match prev.get(j) {
                        Some(right) => ar.add(left, right),
                        None => left.clone(),
                    }
                }
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn max_cross(n: usize) -> usize {
    (n / 2) * (n - n / 2)
}

/// `P(connected)` on `k` vertices for every `k ≤ n` by the subtractive
/// recursion. Index 0 holds 1 by convention.
pub fn connectivity_table<A: Arith>(ar: &A, q: &A::E, n: usize) -> Vec<A::E> {
    let qp = powers(ar, q, max_cross(n));
    let binom = pascal(ar, n, n);
    let mut conn = vec![ar.one(); n + 1];
    for m in 2..=n {
        let mut acc = ar.zero();
        for k in 1..m {
            let t = ar.mul(&binom[m - 1][k - 1], &conn[k]);
            acc = ar.add(&acc, &ar.mul(&t, &qp[k * (m - k)]));
        }
        conn[m] = ar.sub(&ar.one(), &acc);
    }
    conn
}

/// `P(connected)` on `n` vertices through the logarithm of the exponential
/// generating function. Returns the value scaled by `q^{-C(n,2)}` so callers
/// holding `1/q` avoid the subtraction-heavy recursion; `q_inv` must be
/// `1/q` and `q` nonzero.
///
/// With `g_j = q^{-C(j,2)}/j!` and `W = log Σ g_j y^j`, the connected EGF
/// coefficient is `w_n` and `P(conn n) = n! w_n q^{C(n,2)}`.
pub fn connectivity_scaled<A: Arith>(ar: &A, q_inv: &A::E, n: usize) -> A::E {
    assert!(n >= 1);
    let mut fact = Vec::with_capacity(n + 1);
    fact.push(ar.one());
    for i in 1..=n {
        fact.push(ar.mul(&fact[i - 1], &ar.from_u64(i as u64)));
    }
    let mut inv_fact = vec![ar.zero(); n + 1];
    inv_fact[n] = ar.inv(&fact[n]);
    for i in (1..=n).rev() {
        inv_fact[i - 1] = ar.mul(&inv_fact[i], &ar.from_u64(i as u64));
    }
    // g[0] unused; g[j] for 1..=n
    let mut g = Vec::with_capacity(n + 1);
    g.push(ar.zero());
    let mut qi_tri = ar.one();
    let mut qi_step = ar.one();
    for j in 1..=n {
        if j >= 2 {
            qi_step = ar.mul(&qi_step, q_inv);
            qi_tri = ar.mul(&qi_tri, &qi_step);
        }
        g.push(ar.mul(&qi_tri, &inv_fact[j]));
    }
    // kw[m] = m w_m
    let mut kw = Vec::with_capacity(n + 1);
    kw.push(ar.zero());
    for m in 1..=n {
        let direct = ar.mul(&ar.from_u64(m as u64), &g[m]);
        let conv = ar.dot_rev(&kw[1..m], &g[1..m]);
        kw.push(ar.sub(&direct, &conv));
    }
    // n! w_n = (n-1)! (n w_n)
    ar.mul(&fact[n - 1], &kw[n])
}

/// Tree weights `a_k p^{k-1} q^{C(k,2)-(k-1)}` for `k ≤ r`.
fn tree_weights<A: Arith>(ar: &A, p: &A::E, q: &A::E, r: usize) -> Vec<A::E> {
    let mut out = vec![ar.zero(); r + 1];
    for k in 1..=r {
        let cayley = if k <= 2 {
            ar.one()
        } else {
            ar.pow(&ar.from_u64(k as u64), (k - 2) as u64)
        };
        let pk = ar.pow(p, (k - 1) as u64);
        let slack = (k * (k - 1) / 2 - (k - 1)) as u64;
        out[k] = ar.mul(&ar.mul(&cayley, &pk), &ar.pow(q, slack));
    }
    out
}

/// Generic lowest-label recursion `f(m) = Σ_{k∈ks(m)} C(m-1,k-1) w_k
/// q^{k(m-k)} f(m-k)` with `f(0) = 1`; returns `f(0..=n)`.
fn component_recursion<A: Arith>(
    ar: &A,
    q: &A::E,
    n: usize,
    k_min: usize,
    k_max: usize,
    weight: &[A::E],
) -> Vec<A::E> {
    let qp = powers(ar, q, max_cross(n));
    let binom = pascal(ar, n, k_max);
    let mut f = Vec::with_capacity(n + 1);
    f.push(ar.one());
    for m in 1..=n {
        let mut acc = ar.zero();
        for k in k_min..=k_max.min(m) {
            let t = ar.mul(&binom[m - 1][k - 1], &weight[k]);
            let t = ar.mul(&t, &qp[k * (m - k)]);
            acc = ar.add(&acc, &ar.mul(&t, &f[m - k]));
        }
        f.push(acc);
    }
    f
}

/// `P(no cycles and no component larger than r)` on `n` vertices.
pub fn forest<A: Arith>(ar: &A, p: &A::E, q: &A::E, n: usize, r: usize) -> A::E {
    let r = r.min(n);
    let w = tree_weights(ar, p, q, r);
    component_recursion(ar, q, n, 1, r, &w).pop().expect("n+1 entries")
}

/// `P(no component larger than r)` given the connectivity table up to `r`.
pub fn small_components<A: Arith>(ar: &A, q: &A::E, n: usize, r: usize, conn: &[A::E]) -> A::E {
    let r = r.min(n);
    component_recursion(ar, q, n, 1, r, &conn[..=r])
        .pop()
        .expect("n+1 entries")
}

/// Law of `|V_r|`, the number of vertices in components larger than `r`:
/// entry `m` is `P(|V_r| = m)` for `m = 0..=n`. Needs connectivity up to `n`.
pub fn macro_volume_law<A: Arith>(ar: &A, q: &A::E, n: usize, r: usize, conn: &[A::E]) -> Vec<A::E> {
    let r = r.min(n);
    let small = component_recursion(ar, q, n, 1, r, &conn[..=r]);
    let large = if r < n {
        component_recursion(ar, q, n, r + 1, n, conn)
    } else {
        let mut v = vec![ar.zero(); n + 1];
        v[0] = ar.one();
        v
    };
    let qp = powers(ar, q, max_cross(n));
    let binom = pascal(ar, n, n);
    (0..=n)
        .map(|m| {
            let t = ar.mul(&binom[n][m], &large[m]);
            ar.mul(&ar.mul(&t, &qp[m * (n - m)]), &small[n - m])
        })
        .collect()
}
