//! Exact extremal numbers `ex_k(n, D_k(p,q))`: the largest number of
//! k-subsets of `[n]` forming a hypergraph with the (p,q)-property.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::budget::{in_pool, Meter, SearchBudget, SearchStats};
use crate::constructions::{phi, split_family_member};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{enumerate_k_subsets, Hypergraph, VertexSet};
use crate::pq::{has_pq_property, FamilySearch, PQParams};

/// Largest `C(n,k)` the power-set oracle accepts.
pub const ORACLE_MAX_EDGES: usize = 24;

/// Edges decided before the search tree is split into independent tasks.
const SPLIT_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BranchAndBound,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    /// Exact extremal number when `complete`, otherwise a lower bound.
    pub value: usize,
    /// A hypergraph on `[n]` with `value` edges and the (p,q)-property.
    pub witness: Hypergraph,
    pub complete: bool,
    /// Equal to `value` when complete; `C(n,k)` otherwise.
    pub upper_bound: usize,
    /// Edge count of the split family construction, when it exists.
    pub phi: Option<u128>,
    pub method: Method,
    pub stats: SearchStats,
}

fn check_args(n: usize, k: usize, p: usize, q: usize) -> Result<PQParams> {
    let params = PQParams::new(p, q)?;
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(params)
}

fn all_edge_lists(n: usize, k: usize) -> Vec<Vec<usize>> {
    enumerate_k_subsets(n, k).map(|s| s.to_vec()).collect()
}

fn witness_from_indices(n: usize, k: usize, lists: &[Vec<usize>], indices: &[usize]) -> Hypergraph {
    let picked: Vec<&Vec<usize>> = indices.iter().map(|&i| &lists[i]).collect();
    Hypergraph::from_edge_lists(n, k, &picked).expect("indices come from the complete hypergraph")
}

/// Exact maximum over every subset of `([n] choose k)`, by enumeration.
///
/// Subsets are visited as bitmasks in increasing order; a subset is tested
/// whenever it could beat the best count so far in its range. Among
/// maximum subsets the numerically least mask is returned.
pub fn extremal_oracle(n: usize, k: usize, p: usize, q: usize, workers: usize) -> Result<ExtremalResult> {
    let params = check_args(n, k, p, q)?;
    let lists = all_edge_lists(n, k);
    let m = lists.len();
    if m > ORACLE_MAX_EDGES {
        return Err(Error::GuardExceeded(format!(
            "oracle enumerates 2^C(n,k) subsets; C({n},{k}) = {m} > {ORACLE_MAX_EDGES}"
        )));
    }
    let meter = Meter::new(&SearchBudget::default());
    let total: u64 = 1 << m;
    let chunks = total.min(256);
    let chunk_len = total / chunks;
    let best = in_pool(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut search = FamilySearch::new(n, &lists, params.p(), params.q());
                let mut best: (u32, u64) = (0, c * chunk_len);
                let mut pool = Vec::with_capacity(m);
                for mask in c * chunk_len..(c + 1) * chunk_len {
                    let size = mask.count_ones();
                    if size <= best.0 {
                        continue;
                    }
                    meter.tick();
                    pool.clear();
                    pool.extend((0..m).filter(|&i| mask >> i & 1 == 1));
                    if search.find(None, &pool).is_none() {
                        best = (size, mask);
                    }
                }
                best
            })
            .reduce(|| (0, u64::MAX), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
    });
    let indices: Vec<usize> = (0..m).filter(|&i| best.1 >> i & 1 == 1).collect();
    let witness = witness_from_indices(n, k, &lists, &indices);
    Ok(ExtremalResult {
        value: best.0 as usize,
        witness,
        complete: true,
        upper_bound: best.0 as usize,
        phi: phi(n, k, p, q).ok(),
        method: Method::Oracle,
        stats: meter.stats(),
    })
}

/// Seed hypergraph: the canonical split family member, when it exists.
fn seed(n: usize, k: usize, params: PQParams) -> Option<Hypergraph> {
    let h = split_family_member(n, k, params.t(), params.r()).ok()?;
    has_pq_property(&h, params).then_some(h)
}

struct BranchAndBound<'a> {
    lists: &'a [Vec<usize>],
    n: usize,
    params: PQParams,
    meter: &'a Meter,
    global_best: &'a AtomicUsize,
}

struct TaskState<'a> {
    search: FamilySearch<'a>,
    included: Vec<usize>,
    best: usize,
    best_set: Option<Vec<usize>>,
}

impl<'a> BranchAndBound<'a> {
    /// Whether adding edge `e` to `included` keeps the (p,q)-property.
    /// `included` already has it, so any new violation must use `e`.
    fn can_add(&self, search: &mut FamilySearch<'_>, included: &[usize], e: usize) -> bool {
        included.len() + 1 < self.params.p() || search.find(Some(e), included).is_none()
    }

    /// Feasible include/exclude prefixes over the first `depth` edges, in
    /// depth-first (include first) order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<usize>> {
        let mut search = FamilySearch::new(self.n, self.lists, self.params.p(), self.params.q());
        let mut out = Vec::new();
        let mut included = Vec::new();
        self.expand(&mut search, &mut included, 0, depth, &mut out);
        out
    }

    fn expand(
        &self,
        search: &mut FamilySearch<'_>,
        included: &mut Vec<usize>,
        i: usize,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == depth {
            out.push(included.clone());
            return;
        }
        if self.can_add(search, included, i) {
            included.push(i);
            self.expand(search, included, i + 1, depth, out);
            included.pop();
        }
        self.expand(search, included, i + 1, depth, out);
    }

    /// Best completion of `prefix` strictly above `floor`, if found.
    fn run_task(&self, prefix: &[usize], start: usize, floor: usize) -> Option<(usize, Vec<usize>)> {
        let mut st = TaskState {
            search: FamilySearch::new(self.n, self.lists, self.params.p(), self.params.q()),
            included: prefix.to_vec(),
            best: floor,
            best_set: None,
        };
        self.dfs(&mut st, start);
        st.best_set.map(|s| (st.best, s))
    }

    fn dfs(&self, st: &mut TaskState<'_>, i: usize) {
        if !self.meter.tick() {
            return;
        }
        let m = self.lists.len();
        let count = st.included.len();
        if i == m {
            if count > st.best {
                st.best = count;
                st.best_set = Some(st.included.clone());
                self.global_best.fetch_max(count, Ordering::Relaxed);
            }
            return;
        }
        // Ties with the shared bound are explored so that every task finds
        // its own first optimum, which keeps the result independent of
        // scheduling.
        let ub = count + (m - i);
        if ub <= st.best || ub < self.global_best.load(Ordering::Relaxed) {
            self.meter.prune();
            return;
        }
        if self.can_add(&mut st.search, &st.included, i) {
            st.included.push(i);
            self.dfs(st, i + 1);
            st.included.pop();
        }
        self.dfs(st, i + 1);
    }
}

/// `ex_k(n, D_k(p,q))` by branch and bound over the edges of
/// `([n] choose k)` in colex order, include branch first.
///
/// The split family member seeds the lower bound. The tree is cut into a
/// fixed list of subtrees after the first few edges, and these run on
/// `budget.workers` threads; value and witness do not depend on the worker
/// count. If the budget runs out, the result carries the best hypergraph
/// found and `complete == false`.
pub fn extremal_number(n: usize, k: usize, p: usize, q: usize, budget: &SearchBudget) -> Result<ExtremalResult> {
    let params = check_args(n, k, p, q)?;
    let lists = all_edge_lists(n, k);
    let m = lists.len();
    let seed = seed(n, k, params);
    let floor = seed.as_ref().map_or(0, Hypergraph::edge_count);
    let meter = Meter::new(budget);
    let global_best = AtomicUsize::new(floor);
    let bb = BranchAndBound {
        lists: &lists,
        n,
        params,
        meter: &meter,
        global_best: &global_best,
    };
    let depth = m.min(SPLIT_DEPTH);
    let prefixes = bb.prefixes(depth);
    let found: Vec<Option<(usize, Vec<usize>)>> = in_pool(budget.workers, || {
        prefixes
            .par_iter()
            .map(|prefix| bb.run_task(prefix, depth, floor))
            .collect()
    });
    let complete = !meter.exhausted();
    // first task (in tree order) reaching the maximum
    let best = found
        .into_iter()
        .flatten()
        .fold(None::<(usize, Vec<usize>)>, |acc, cur| match acc {
            Some(a) if a.0 >= cur.0 => Some(a),
            _ => Some(cur),
        });
    let (value, witness) = match (best, seed) {
        (Some((v, set)), _) => (v, witness_from_indices(n, k, &lists, &set)),
        (None, Some(seed)) => (seed.edge_count(), seed),
        (None, None) => (0, Hypergraph::empty(n, k)),
    };
    Ok(ExtremalResult {
        value,
        witness,
        complete,
        upper_bound: if complete { value } else { m },
        phi: phi(n, k, p, q).ok(),
        method: Method::BranchAndBound,
        stats: meter.stats(),
    })
}

/// A `t`-set `X` such that exactly `r` edges of `h` avoid `X`, searching
/// t-subsets of `[n]` in colex order.
pub fn find_cover_structure(h: &Hypergraph, t: usize, r: usize) -> Option<VertexSet> {
    enumerate_k_subsets(h.n(), t).find(|x| h.edges().iter().filter(|e| !e.intersects(x)).count() == r)
}

/// Outcome of the exhaustive check that a graph with as many edges as
/// non-isolated vertices (at least 3) has a vertex of degree at least 3 or
/// is 2-regular on its support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeLemmaReport {
    pub max_n: usize,
    /// Edge subsets of `K_max_n` enumerated.
    pub graphs_enumerated: u64,
    /// Subsets with `|support| == e >= 3`.
    pub graphs_checked: u64,
    pub with_degree_at_least_3: u64,
    pub two_regular: u64,
    pub counterexamples: u64,
    pub first_counterexample: Option<Vec<[usize; 2]>>,
    /// Graphs in the checked class with no vertex of degree > 3 that are
    /// not 2-regular (the strict reading of the statement).
    pub strict_reading_failures: u64,
    pub first_strict_failure: Option<Vec<[usize; 2]>>,
}

pub fn verify_lemma_p3(max_n: usize, workers: usize) -> Result<DegreeLemmaReport> {
    if max_n > 7 {
        return Err(Error::GuardExceeded(format!(
            "exhaustive degree check supports max_n <= 7, got {max_n}"
        )));
    }
    let pairs: Vec<[usize; 2]> = enumerate_k_subsets(max_n, 2)
        .map(|s| {
            let v = s.to_vec();
            [v[0], v[1]]
        })
        .collect();
    let m = pairs.len();
    let total: u64 = 1 << m;
    let chunks = total.min(256);
    let chunk_len = total / chunks;

    #[derive(Default, Clone)]
    struct Tally {
        checked: u64,
        high: u64,
        regular: u64,
        bad: u64,
        first_bad: Option<u64>,
        strict_bad: u64,
        first_strict: Option<u64>,
    }

    let tally = in_pool(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut t = Tally::default();
                let mut deg = vec![0u32; max_n + 1];
                for mask in c * chunk_len..(c + 1) * chunk_len {
                    let e = mask.count_ones() as usize;
                    if e < 3 {
                        continue;
                    }
                    deg.iter_mut().for_each(|d| *d = 0);
                    for (i, [a, b]) in pairs.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            deg[*a] += 1;
                            deg[*b] += 1;
                        }
                    }
                    let support = deg.iter().filter(|&&d| d > 0).count();
                    if support != e {
                        continue;
                    }
                    t.checked += 1;
                    let high = deg.iter().any(|&d| d >= 3);
                    let regular = deg.iter().all(|&d| d == 0 || d == 2);
                    if high {
                        t.high += 1;
                    }
                    if regular {
                        t.regular += 1;
                    }
                    if !high && !regular {
                        t.bad += 1;
                        t.first_bad.get_or_insert(mask);
                    }
                    if !deg.iter().any(|&d| d > 3) && !regular {
                        t.strict_bad += 1;
                        t.first_strict.get_or_insert(mask);
                    }
                }
                t
            })
            .reduce(Tally::default, |a, b| Tally {
                checked: a.checked + b.checked,
                high: a.high + b.high,
                regular: a.regular + b.regular,
                bad: a.bad + b.bad,
                first_bad: min_opt(a.first_bad, b.first_bad),
                strict_bad: a.strict_bad + b.strict_bad,
                first_strict: min_opt(a.first_strict, b.first_strict),
            })
    });
    let decode = |mask: u64| -> Vec<[usize; 2]> {
        (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect()
    };
    Ok(DegreeLemmaReport {
        max_n,
        graphs_enumerated: total,
        graphs_checked: tally.checked,
        with_degree_at_least_3: tally.high,
        two_regular: tally.regular,
        counterexamples: tally.bad,
        first_counterexample: tally.first_bad.map(decode),
        strict_reading_failures: tally.strict_bad,
        first_strict_failure: tally.first_strict.map(decode),
    })
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `C(n,k)` as `usize`, for callers sizing searches.
pub fn edge_universe(n: usize, k: usize) -> Result<usize> {
    binomial(n as u64, k as u64)
        .and_then(|c| usize::try_from(c).ok())
        .ok_or(Error::Overflow("C(n, k)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::split_family_member;

    fn bb(n: usize, k: usize, p: usize, q: usize) -> ExtremalResult {
        extremal_number(n, k, p, q, &SearchBudget::default()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(extremal_oracle(4, 2, 4, 3, 1).unwrap().value, 4);
        let r = extremal_oracle(5, 2, 3, 3, 1).unwrap();
        assert_eq!(r.value, 4);
        assert!(has_pq_property(&r.witness, PQParams::new(3, 3).unwrap()));
        for (p, q) in [(2, 2), (3, 2), (4, 3), (5, 5)] {
            assert_eq!(extremal_oracle(4, 4, p, q, 1).unwrap().value, 1);
        }
        assert!(matches!(
            extremal_oracle(8, 2, 3, 3, 1),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn branch_and_bound_examples() {
        assert_eq!(bb(5, 2, 5, 3).value, 7);
        assert_eq!(bb(7, 2, 3, 3).value, 6);
        assert_eq!(bb(6, 2, 4, 3).value, extremal_oracle(6, 2, 4, 3, 1).unwrap().value);
        assert_eq!(bb(3, 3, 2, 2).value, 1);
    }

    #[test]
    fn witnesses_are_valid() {
        for (n, p, q) in [(5, 3, 3), (6, 4, 3), (6, 5, 3), (5, 2, 2)] {
            let params = PQParams::new(p, q).unwrap();
            let r = bb(n, 2, p, q);
            assert!(r.complete);
            assert_eq!(r.witness.edge_count(), r.value);
            assert_eq!(r.witness.n(), n);
            assert!(has_pq_property(&r.witness, params));
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        for (n, k, p, q) in [(6, 2, 4, 3), (6, 2, 5, 4), (5, 3, 3, 3), (6, 2, 6, 3)] {
            let one = bb(n, k, p, q);
            let four = extremal_number(n, k, p, q, &SearchBudget::default().with_workers(4)).unwrap();
            assert_eq!(one.value, four.value);
            assert_eq!(one.witness, four.witness);
        }
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let r = extremal_number(7, 2, 4, 3, &SearchBudget::default().with_max_nodes(5)).unwrap();
        assert!(!r.complete);
        assert_eq!(r.upper_bound, 21);
        assert!(has_pq_property(&r.witness, PQParams::new(4, 3).unwrap()));
        assert_eq!(r.value as u128, r.phi.unwrap());
    }

    #[test]
    fn cover_structure() {
        let h = split_family_member(8, 2, 2, 1).unwrap();
        assert_eq!(find_cover_structure(&h, 2, 1).unwrap().to_vec(), vec![1, 2]);
        let c5 = Hypergraph::from_edge_lists(5, 2, &[[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]]).unwrap();
        assert_eq!(find_cover_structure(&c5, 1, 0), None);
    }

    #[test]
    fn degree_lemma_small() {
        let r = verify_lemma_p3(5, 1).unwrap();
        assert_eq!(r.counterexamples, 0);
        assert!(r.graphs_checked > 0);
        // the triangle with a pendant edge passes only through degree 3
        assert!(r.strict_reading_failures > 0);
        assert!(verify_lemma_p3(8, 1).is_err());
    }
}
