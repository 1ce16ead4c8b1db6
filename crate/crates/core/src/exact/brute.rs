//! Exhaustive enumeration oracles for tiny graphs.

use std::collections::HashMap;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rational_to_log_prob, EdgeProb, EventSpec};
use crate::error::{Error, Result};
use crate::prob::LogProb;

/// Largest `n` accepted by [`brute_force_enumerate`] (`2^21` graphs).
pub const BRUTE_MAX_N: usize = 7;
/// Largest `n` accepted by [`brute_force_grounded`] (`2^20` digraphs).
pub const GROUNDED_MAX_N: usize = 5;

/// For every (component sizes, acyclic) class, the number of graphs with
/// each edge count.
struct Census {
    pairs: usize,
    classes: Vec<(Vec<usize>, bool, Vec<u64>)>,
}

fn edge_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Census {
    fn build(n: usize) -> Census {
        let edges = edge_list(n);
        let pairs = edges.len();
        let mut table: HashMap<(Vec<usize>, bool), Vec<u64>> = HashMap::new();
        let mut parent = vec![0usize; n];
        let mut size = vec![0usize; n];
        for mask in 0u32..(1u32 << pairs) {
            for v in 0..n {
                parent[v] = v;
                size[v] = 1;
            }
            let mut acyclic = true;
            for (e, &(a, b)) in edges.iter().enumerate() {
                if mask >> e & 1 == 0 {
                    continue;
                }
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    acyclic = false;
                } else {
                    parent[rb] = ra;
                    size[ra] += size[rb];
                }
            }
            let mut sizes: Vec<usize> = (0..n).filter(|&v| parent[v] == v).map(|v| size[v]).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let counts = table.entry((sizes, acyclic)).or_insert_with(|| vec![0; pairs + 1]);
            counts[mask.count_ones() as usize] += 1;
        }
        let mut classes: Vec<_> = table.into_iter().map(|((s, a), c)| (s, a, c)).collect();
        classes.sort();
        Census { pairs, classes }
    }

    fn edge_count_law(&self, event: &EventSpec) -> Vec<u64> {
        let mut law = vec![0u64; self.pairs + 1];
        for (sizes, acyclic, counts) in &self.classes {
            if event.holds(sizes, *acyclic) {
                for (slot, c) in law.iter_mut().zip(counts) {
                    *slot += c;
                }
            }
        }
        law
    }
}

fn census(n: usize) -> &'static Census {
    static CACHE: [OnceLock<Census>; BRUTE_MAX_N + 1] = [const { OnceLock::new() }; BRUTE_MAX_N + 1];
    CACHE[n].get_or_init(|| Census::build(n))
}

fn check_size(n: usize, event: &EventSpec) -> Result<()> {
    if n == 0 || n > BRUTE_MAX_N {
        return Err(Error::SizeLimit(format!(
            "brute-force enumeration needs 1 <= n <= {BRUTE_MAX_N}, got {n}"
        )));
    }
    event.validate(n)
}

/// Exact probability of `event` in `G(n, p)` by enumerating every graph.
pub fn enumerate_exact(n: usize, p: &BigRational, event: &EventSpec) -> Result<BigRational> {
    check_size(n, event)?;
    let law = census(n).edge_count_law(event);
    let q = BigRational::one() - p;
    let mut total = BigRational::zero();
    let pairs = law.len() - 1;
    for (e, &count) in law.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let w = num_traits::pow(p.clone(), e) * num_traits::pow(q.clone(), pairs - e);
        total += w * BigRational::from_integer(BigInt::from(count));
    }
    Ok(total)
}

/// Floating point version of [`enumerate_exact`].
pub fn enumerate_float(n: usize, p: f64, event: &EventSpec) -> Result<f64> {
    check_size(n, event)?;
    let law = census(n).edge_count_law(event);
    let pairs = law.len() - 1;
    Ok(law
        .iter()
        .enumerate()
        .map(|(e, &c)| c as f64 * p.powi(e as i32) * (1.0 - p).powi((pairs - e) as i32))
        .sum())
}

/// `ln P(event)` by enumerating all `2^{C(n,2)}` graphs; exact when `p` is
/// rational.
pub fn brute_force_enumerate(n: usize, p: &EdgeProb, event: &EventSpec) -> Result<LogProb> {
    match p {
        EdgeProb::Rational(r) => Ok(rational_to_log_prob(&enumerate_exact(n, r, event)?)),
        EdgeProb::Real(x) => LogProb::from_prob(enumerate_float(n, *x, event)?.min(1.0)),
    }
}

/// Square matrix of edge probabilities, symmetric with zero diagonal.
fn check_matrix(probs: &[Vec<BigRational>], max_n: usize) -> Result<usize> {
    let n = probs.len();
    if n == 0 || n > max_n {
        return Err(Error::SizeLimit(format!("enumeration needs 1 <= n <= {max_n}, got {n}")));
    }
    for (i, row) in probs.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Domain("probability matrix must be square".into()));
        }
        if !row[i].is_zero() {
            return Err(Error::Domain("probability matrix must have a zero diagonal".into()));
        }
        for (j, x) in row.iter().enumerate() {
            if x.is_negative() || *x > BigRational::one() {
                return Err(Error::Domain(format!("entry ({i},{j}) is outside [0, 1]")));
            }
            if *x != probs[j][i] {
                return Err(Error::Domain("probability matrix must be symmetric".into()));
            }
        }
    }
    Ok(n)
}

/// Sums `Π_present c_e Π_absent (D - c_e)` over edge subsets accepted by
/// `accept`, with `adjacency[v]` the bitmask of heads of edges out of `v`.
fn weighted_sum<W>(
    n: usize,
    edges: &[(usize, usize, W, W)],
    accept: &dyn Fn(&[u32]) -> bool,
) -> W
where
    W: Clone + Zero + One + Add<Output = W> + Mul<Output = W>,
{
    fn go<W>(
        idx: usize,
        weight: W,
        adjacency: &mut Vec<u32>,
        edges: &[(usize, usize, W, W)],
        accept: &dyn Fn(&[u32]) -> bool,
        total: &mut W,
    ) where
        W: Clone + Zero + One + Add<Output = W> + Mul<Output = W>,
    {
        if weight.is_zero() {
            return;
        }
        if idx == edges.len() {
            if accept(adjacency) {
                *total = total.clone() + weight;
            }
            return;
        }
        let (a, b, ref on, ref off) = edges[idx];
        go(idx + 1, weight.clone() * off.clone(), adjacency, edges, accept, total);
        adjacency[a] |= 1 << b;
        go(idx + 1, weight * on.clone(), adjacency, edges, accept, total);
        adjacency[a] &= !(1 << b);
    }
    let mut adjacency = vec![0u32; n];
    let mut total = W::zero();
    go(0, W::one(), &mut adjacency, edges, accept, &mut total);
    total
}

/// Runs [`weighted_sum`] over a common denominator, in `u128` when it fits.
fn enumerate_weighted(
    n: usize,
    arcs: &[(usize, usize, BigRational)],
    accept: &dyn Fn(&[u32]) -> bool,
) -> BigRational {
    let den = arcs
        .iter()
        .fold(BigInt::one(), |acc, (_, _, x)| acc.lcm(x.denom()));
    let scaled: Vec<(usize, usize, BigUint, BigUint)> = arcs
        .iter()
        .map(|(a, b, x)| {
            let on = (x * BigRational::from_integer(den.clone())).to_integer();
            let off = &den - &on;
            (*a, *b, on.to_biguint().expect("nonnegative"), off.to_biguint().expect("nonnegative"))
        })
        .collect();
    let total_den = num_traits::pow(den.clone(), arcs.len());
    let num: BigUint = if total_den.bits() < 127 {
        let small: Vec<(usize, usize, u128, u128)> = scaled
            .iter()
            .map(|(a, b, on, off)| (*a, *b, on.to_u128().expect("fits"), off.to_u128().expect("fits")))
            .collect();
        BigUint::from(weighted_sum(n, &small, accept))
    } else {
        weighted_sum(n, &scaled, accept)
    };
    BigRational::new(BigInt::from(num), total_den)
}

fn closure_reaches_all(n: usize, start: u32, step: impl Fn(usize) -> u32) -> bool {
    let full = (1u32 << n) - 1;
    let mut reached = start;
    loop {
        let mut next = reached;
        for v in 0..n {
            if reached >> v & 1 == 1 {
                next |= step(v);
            }
        }
        if next == reached {
            return reached == full;
        }
        reached = next;
    }
}

/// Probability that every vertex has a directed path to vertex 0 when each
/// ordered pair `(i, j)` carries an arc `i → j` independently with
/// probability `probs[i][j]`.
pub fn grounded_exact(probs: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = check_matrix(probs, GROUNDED_MAX_N)?;
    let mut arcs = Vec::new();
    for (i, row) in probs.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                arcs.push((i, j, x.clone()));
            }
        }
    }
    // adjacency[v] holds the heads of arcs leaving v; walk backwards from 0
    let accept = |adj: &[u32]| {
        closure_reaches_all(n, 1, |v| {
            (0..n).filter(|&u| adj[u] >> v & 1 == 1).fold(0, |m, u| m | 1 << u)
        })
    };
    Ok(enumerate_weighted(n, &arcs, &accept))
}

/// Probability that the inhomogeneous undirected graph with edge
/// probabilities `probs[i][j]` is connected.
pub fn inhomogeneous_connectivity_exact(probs: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = check_matrix(probs, BRUTE_MAX_N)?;
    let arcs: Vec<_> = edge_list(n).into_iter().map(|(i, j)| (i, j, probs[i][j].clone())).collect();
    let accept = |adj: &[u32]| {
        closure_reaches_all(n, 1, |v| {
            (0..n).fold(adj[v], |m, u| if adj[u] >> v & 1 == 1 { m | 1 << u } else { m })
        })
    };
    Ok(enumerate_weighted(n, &arcs, &accept))
}

/// `ln` of the grounded probability; real entries are converted exactly to
/// rationals.
pub fn brute_force_grounded(probs: &[Vec<EdgeProb>]) -> Result<LogProb> {
    let exact: Vec<Vec<BigRational>> = probs
        .iter()
        .map(|row| row.iter().map(EdgeProb::to_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(rational_to_log_prob(&grounded_exact(&exact)?))
}
