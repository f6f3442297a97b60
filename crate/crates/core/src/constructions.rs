//! Named hypergraphs and closed-form counts.
//!
//! The split hypergraph `F_k(n, t)` holds every k-subset of `[n]` meeting
//! `[t]`. Adding `r` further edges inside `{t+1, ..., n}` gives a member of
//! the family `F_k(n, t, r)`; with `p - 1 = t(q - 1) + r` every such member
//! has the (p,q)-property and `phi(n, k, p, q)` edges.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{enumerate_k_subsets, Hypergraph, VertexSet};
use crate::pq::PQParams;

/// Parameters of a member of `F_k(n, t, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitFamilySpec {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub r: usize,
}

impl SplitFamilySpec {
    pub fn new(n: usize, k: usize, t: usize, r: usize) -> Result<Self> {
        if t < 1 || t > n {
            return Err(invalid(format!("need 1 <= t <= n, got t={t}, n={n}")));
        }
        if k < 2 || k > n {
            return Err(invalid(format!("need 2 <= k <= n, got k={k}, n={n}")));
        }
        let room = binomial((n - t) as u64, k as u64).ok_or(Error::Overflow("C(n-t, k)"))?;
        if r as u128 > room {
            return Err(invalid(format!(
                "r={r} exceeds C(n-t, k) = {room} edges avoiding [t]"
            )));
        }
        Ok(SplitFamilySpec { n, k, t, r })
    }

    /// Edge count `C(n,k) - C(n-t,k) + r`.
    pub fn edge_count(&self) -> Result<u128> {
        split_count(self.n, self.k, self.t).map(|c| c + self.r as u128)
    }
}

fn split_count(n: usize, k: usize, t: usize) -> Result<u128> {
    let all = binomial(n as u64, k as u64).ok_or(Error::Overflow("C(n, k)"))?;
    let avoid = binomial((n - t) as u64, k as u64).ok_or(Error::Overflow("C(n-t, k)"))?;
    Ok(all - avoid)
}

/// `F_k(n, t)`: all k-subsets of `[n]` that meet `[t]`.
pub fn split_hypergraph(n: usize, k: usize, t: usize) -> Result<Hypergraph> {
    if t < 1 || t > n || k > n {
        return Err(invalid(format!(
            "need 1 <= t <= n and k <= n, got n={n}, k={k}, t={t}"
        )));
    }
    let edges = enumerate_k_subsets(n, k).filter(|e| e.iter().next().is_some_and(|v| v <= t));
    Hypergraph::new(n, k, edges)
}

/// k-subsets of `{t+1, ..., n}` in colex order.
fn outer_subsets(n: usize, k: usize, t: usize) -> impl Iterator<Item = VertexSet> {
    enumerate_k_subsets(n - t, k).map(move |s| {
        VertexSet::from_vertices(n, s.iter().map(|v| v + t)).expect("shifted subset in range")
    })
}

/// Canonical member of `F_k(n, t, r)`: the split hypergraph plus the first
/// `r` colex k-subsets of `{t+1, ..., n}`.
pub fn split_family_member(n: usize, k: usize, t: usize, r: usize) -> Result<Hypergraph> {
    let spec = SplitFamilySpec::new(n, k, t, r)?;
    let base = split_hypergraph(spec.n, spec.k, spec.t)?;
    let extra = outer_subsets(n, k, t).take(r);
    Hypergraph::new(n, k, base.edges().iter().cloned().chain(extra))
}

/// A member of `F_k(n, t, r)` whose `r` extra edges are drawn uniformly
/// at random from the k-subsets of `{t+1, ..., n}`.
pub fn random_split_family_member<R: Rng + ?Sized>(
    spec: SplitFamilySpec,
    rng: &mut R,
) -> Result<Hypergraph> {
    let SplitFamilySpec { n, k, t, r } = spec;
    let base = split_hypergraph(n, k, t)?;
    let outer: Vec<VertexSet> = outer_subsets(n, k, t).collect();
    let picks = index::sample(rng, outer.len(), r);
    let extra = picks.into_iter().map(|i| outer[i].clone());
    Hypergraph::new(n, k, base.edges().iter().cloned().chain(extra))
}

/// Euclidean split `p - 1 = t(q - 1) + r` with `0 <= r < q - 1`.
pub fn tq_decompose(p: usize, q: usize) -> Result<(usize, usize)> {
    let pq = PQParams::new(p, q)?;
    Ok((pq.t(), pq.r()))
}

/// `phi_k(n, p, q) = C(n,k) - C(n-t,k) + r`, the edge count of every member
/// of `F_k(n, t, r)`.
pub fn phi(n: usize, k: usize, p: usize, q: usize) -> Result<u128> {
    let (t, r) = tq_decompose(p, q)?;
    if k > n || t > n {
        return Err(invalid(format!(
            "need k <= n and t <= n, got n={n}, k={k}, t={t}"
        )));
    }
    Ok(split_count(n, k, t)? + r as u128)
}

/// `K_{p-1}` on `{1, ..., p-1}` plus the pendant edge `{p-1, p}`.
pub fn complete_plus_edge(p: usize) -> Result<Hypergraph> {
    if p < 3 {
        return Err(invalid(format!("need p >= 3, got {p}")));
    }
    let pendant = VertexSet::from_vertices(p, [p - 1, p])?;
    let clique = enumerate_k_subsets(p - 1, 2)
        .map(|e| VertexSet::from_vertices(p, e.iter()).expect("in range"));
    Hypergraph::new(p, 2, clique.chain(std::iter::once(pendant)))
}

/// The chromatic number formula for q-wise Kneser hypergraphs.
///
/// `raw` is `ceil((n(q-1) - p(k-1)) / (p-1))` as evaluated; `clamped` is
/// `max(raw, 1)`. A raw value `<= 0` forces an edgeless hypergraph, whose
/// chromatic number is 1 by convention here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SarkariaValue {
    pub raw: i128,
    pub clamped: u128,
}

pub fn sarkaria_chi(n: usize, k: usize, p: usize, q: usize) -> Result<SarkariaValue> {
    PQParams::new(p, q)?;
    if k > n {
        return Err(invalid(format!("need n >= k, got n={n}, k={k}")));
    }
    let num = (n as i128) * (q as i128 - 1) - (p as i128) * (k as i128 - 1);
    let den = p as i128 - 1;
    let raw = div_ceil(num, den);
    Ok(SarkariaValue {
        raw,
        clamped: raw.max(1) as u128,
    })
}

fn div_ceil(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

/// Size thresholds past which the extremal number equals `phi` for graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `2p^2`.
    pub simple: u128,
    /// `C(2(p-1),2) + C(t+1,2) - floor(2(p-1)(t-1)/(q-1)) - r`.
    pub refined: i128,
    /// Whether `q - 1` divides `2(p-1)(t-1)`, i.e. no flooring happened.
    pub refined_exact: bool,
}

pub fn theorem_threshold(p: usize, q: usize) -> Result<Thresholds> {
    if q < 3 || p < q {
        return Err(invalid(format!("need p >= q >= 3, got p={p}, q={q}")));
    }
    let (t, r) = tq_decompose(p, q)?;
    let (p, q, t, r) = (p as i128, q as i128, t as i128, r as i128);
    let c2 = |x: i128| x * (x - 1) / 2;
    let numer = 2 * (p - 1) * (t - 1);
    Ok(Thresholds {
        simple: (2 * p * p) as u128,
        refined: c2(2 * (p - 1)) + c2(t + 1) - numer.div_euclid(q - 1) - r,
        refined_exact: numer % (q - 1) == 0,
    })
}
