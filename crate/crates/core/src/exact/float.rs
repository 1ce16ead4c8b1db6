//! Log-space floating point versions of the exact DPs, for large `n` or real
//! `p`. Every recursion here is a sum of nonnegative terms, so nothing
//! cancels.

use crate::combin::LogFactorials;
use crate::prob::log_sum_exp;

/// `count · ln x` with the convention `0 · (-inf) = 0`.
fn times(count: usize, ln_x: f64) -> f64 {
    if count == 0 {
        0.0
    } else {
        count as f64 * ln_x
    }
}

struct Logs {
    lp: f64,
    lq: f64,
    lf: LogFactorials,
}

impl Logs {
    fn new(p: f64, n: usize) -> Self {
        Logs { lp: p.ln(), lq: (-p).ln_1p(), lf: LogFactorials::new(n) }
    }
}

/// `ln P(connected)` on `k` vertices for `k = 0..=n` (entry 0 is 0).
///
/// Explores the graph from one vertex: with `u` unexplored vertices and
/// `t` exploration steps left, each active vertex reaches each unexplored
/// one independently. `f_t(u)` is the probability that the process
/// absorbs every vertex; `f_t(0) = 1`, `f_t(t) = 0` for `t ≥ 1` and
/// `f_t(u) = Σ_v C(u,v) p^{u-v} q^v f_{t-1}(v)` where `v` is the number
/// still unexplored after one vertex is processed. Then `P(conn k) =
/// f_k(k-1)`.
pub fn connectivity_all(p: f64, n: usize) -> Vec<f64> {
    let logs = Logs::new(p, n);
    let mut out = vec![0.0; n + 1];
    let mut prev = vec![0.0f64]; // t = 0
    let mut terms = Vec::with_capacity(n + 1);
    for t in 1..=n {
        let mut row = vec![f64::NEG_INFINITY; t + 1];
        row[0] = 0.0;
        for (u, slot) in row.iter_mut().enumerate().take(t).skip(1) {
            terms.clear();
            for (v, &fv) in prev.iter().enumerate().take(u + 1) {
                if fv == f64::NEG_INFINITY {
                    continue;
                }
                terms.push(logs.lf.ln_binom(u, v) + times(u - v, logs.lp) + times(v, logs.lq) + fv);
            }
            *slot = log_sum_exp(&terms);
        }
        out[t] = row[t - 1];
        prev = row;
    }
    out
}

fn component_recursion(logs: &Logs, n: usize, k_min: usize, k_max: usize, weight: &[f64]) -> Vec<f64> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(0.0);
    let mut terms = Vec::with_capacity(k_max + 1);
    for m in 1..=n {
        terms.clear();
        for k in k_min..=k_max.min(m) {
            let fm = f[m - k];
            if fm == f64::NEG_INFINITY || weight[k] == f64::NEG_INFINITY {
                continue;
            }
            terms.push(logs.lf.ln_binom(m - 1, k - 1) + weight[k] + times(k * (m - k), logs.lq) + fm);
        }
        f.push(log_sum_exp(&terms));
    }
    f
}

/// `ln P(no cycles, no component larger than r)`.
pub fn forest(p: f64, n: usize, r: usize) -> f64 {
    let r = r.min(n);
    let logs = Logs::new(p, n);
    let mut w = vec![f64::NEG_INFINITY; r + 1];
    for (k, slot) in w.iter_mut().enumerate().skip(1) {
        let ln_cayley = if k <= 2 { 0.0 } else { (k - 2) as f64 * (k as f64).ln() };
        *slot = ln_cayley + times(k - 1, logs.lp) + times(k * (k - 1) / 2 - (k - 1), logs.lq);
    }
    component_recursion(&logs, n, 1, r, &w).pop().expect("n+1 entries")
}

/// `ln P(no component larger than r)`.
pub fn small_components(p: f64, n: usize, r: usize) -> f64 {
    let r = r.min(n);
    let logs = Logs::new(p, n);
    let conn = connectivity_all(p, r);
    component_recursion(&logs, n, 1, r, &conn).pop().expect("n+1 entries")
}

/// `ln P(|V_r| = m)` for `m = 0..=n`.
pub fn macro_volume_law(p: f64, n: usize, r: usize) -> Vec<f64> {
    let r = r.min(n);
    let logs = Logs::new(p, n);
    let conn = connectivity_all(p, n);
    let small = component_recursion(&logs, n, 1, r, &conn[..=r]);
    let large = if r < n {
        component_recursion(&logs, n, r + 1, n, &conn)
    } else {
        let mut v = vec![f64::NEG_INFINITY; n + 1];
        v[0] = 0.0;
        v
    };
    (0..=n)
        .map(|m| {
            if large[m] == f64::NEG_INFINITY || small[n - m] == f64::NEG_INFINITY {
                f64::NEG_INFINITY
            } else {
                logs.lf.ln_binom(n, m) + large[m] + times(m * (n - m), logs.lq) + small[n - m]
            }
        })
        .collect()
}
