//! q-wise Kneser p-uniform hypergraphs `K_q^p([n] choose k)`.
//!
//! Vertices are the k-subsets of `[n]`, numbered `1..=C(n,k)` by colex rank.
//! `p` of them form an edge when no element of `[n]` lies in `q` of them.
//! An independent set is therefore a family of k-sets with the
//! (p,q)-property, so `alpha` equals the extremal number and, the
//! hypergraph being vertex-transitive, `chi_f = C(n,k) / alpha`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::binom::binomial;
use crate::budget::{Meter, SearchBudget, SearchStats};
use crate::constructions::{phi, tq_decompose};
use crate::error::{invalid, Error, Result};
use crate::extremal::{extremal_number, ExtremalResult};
use crate::hypergraph::{enumerate_k_subsets, Hypergraph, VertexSet};
use crate::lp::solve_covering;
use crate::pq::PQParams;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KneserSpec {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub q: usize,
}

impl KneserSpec {
    pub fn new(n: usize, k: usize, p: usize, q: usize) -> Result<Self> {
        PQParams::new(p, q)?;
        if k == 0 || k > n {
            return Err(invalid(format!("need n >= k >= 1, got n={n}, k={k}")));
        }
        Ok(KneserSpec { n, k, p, q })
    }

    pub fn params(&self) -> PQParams {
        PQParams::new(self.p, self.q).expect("validated on construction")
    }

    /// `C(n, k)`, the number of vertices.
    pub fn vertex_count(&self) -> Result<u128> {
        binomial(self.n as u64, self.k as u64).ok_or(Error::Overflow("C(n, k)"))
    }
}

/// Size limits for [`build_kneser`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KneserGuard {
    pub max_vertices: u128,
    /// Limit on `C(C(n,k), p)`, the number of candidate p-families.
    pub max_candidate_families: u128,
}

impl Default for KneserGuard {
    fn default() -> Self {
        KneserGuard {
            max_vertices: 64,
            max_candidate_families: 100_000_000,
        }
    }
}

/// A Kneser hypergraph together with its vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneserHypergraph {
    pub spec: KneserSpec,
    pub hypergraph: Hypergraph,
    /// `labels[i]` is the k-subset of `[n]` at vertex `i + 1`.
    pub labels: Vec<VertexSet>,
}

impl KneserHypergraph {
    /// Vertex number and label as 1-based lists.
    pub fn label_table(&self) -> Vec<(usize, Vec<usize>)> {
        self.labels.iter().enumerate().map(|(i, s)| (i + 1, s.to_vec())).collect()
    }

    pub fn vertex_of(&self, label: &VertexSet) -> Option<usize> {
        self.labels.binary_search(label).ok().map(|i| i + 1)
    }

    /// Checks that every adjacent transposition of `[n]`, acting on the
    /// labels, maps edges to edges. The transpositions generate the
    /// symmetric group, which is transitive on k-subsets, so a `true`
    /// result certifies vertex-transitivity.
    pub fn symmetric_action_preserves_edges(&self) -> bool {
        let n = self.spec.n;
        let h = &self.hypergraph;
        (1..n).all(|i| {
            let image: Vec<usize> = self
                .labels
                .iter()
                .map(|s| {
                    let moved = s.iter().map(|v| match v {
                        v if v == i => i + 1,
                        v if v == i + 1 => i,
                        v => v,
                    });
                    let moved = VertexSet::from_vertices(n, moved).expect("permuted label in range");
                    self.vertex_of(&moved).expect("labels closed under permutation")
                })
                .collect();
            h.edges().iter().all(|e| {
                let mapped = VertexSet::from_vertices(h.n(), e.iter().map(|v| image[v - 1]))
                    .expect("vertex image in range");
                h.contains_edge(&mapped)
            })
        })
    }
}

/// Whether no element lies in `q` or more of the given sets.
pub fn qwise_disjoint(sets: &[VertexSet], q: usize) -> bool {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sets {
        for v in s.iter() {
            let c = count.entry(v).or_insert(0);
            *c += 1;
            if *c >= q {
                return false;
            }
        }
    }
    true
}

pub fn build_kneser(spec: KneserSpec, guard: &KneserGuard) -> Result<KneserHypergraph> {
    let vertices = spec.vertex_count()?;
    if vertices > guard.max_vertices {
        return Err(Error::GuardExceeded(format!(
            "C({}, {}) = {vertices} vertices exceeds the limit {}",
            spec.n, spec.k, guard.max_vertices
        )));
    }
    let families = binomial(vertices as u64, spec.p as u64).ok_or(Error::Overflow("C(C(n,k), p)"))?;
    if families > guard.max_candidate_families {
        return Err(Error::GuardExceeded(format!(
            "C({vertices}, {}) = {families} candidate families exceeds the limit {}",
            spec.p, guard.max_candidate_families
        )));
    }
    let labels: Vec<VertexSet> = enumerate_k_subsets(spec.n, spec.k).collect();
    let lists: Vec<Vec<usize>> = labels.iter().map(VertexSet::to_vec).collect();
    let v = labels.len();

    let mut edges = Vec::new();
    let mut mult = vec![0usize; spec.n + 1];
    let mut chosen = Vec::with_capacity(spec.p);
    collect_families(&lists, spec.p, spec.q - 1, 0, &mut mult, &mut chosen, &mut |fam| {
        edges.push(VertexSet::from_vertices(v, fam.iter().map(|&i| i + 1)).expect("vertex in range"));
    });
    let hypergraph = Hypergraph::new(v, spec.p, edges)?;
    Ok(KneserHypergraph {
        spec,
        hypergraph,
        labels,
    })
}

/// Calls `emit` for every `p`-family of `sets` (by index) whose element
/// multiplicities stay at or below `cap`.
fn collect_families(
    sets: &[Vec<usize>],
    p: usize,
    cap: usize,
    from: usize,
    mult: &mut [usize],
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == p {
        emit(chosen);
        return;
    }
    for i in from..sets.len() {
        if sets.len() - i < p - chosen.len() {
            break;
        }
        if sets[i].iter().any(|&x| mult[x] >= cap) {
            continue;
        }
        for &x in &sets[i] {
            mult[x] += 1;
        }
        chosen.push(i);
        collect_families(sets, p, cap, i + 1, mult, chosen, emit);
        chosen.pop();
        for &x in &sets[i] {
            mult[x] -= 1;
        }
    }
}

/// For each vertex (0-based), the edges containing it with that vertex
/// removed. With `only_as_max`, keeps just the edges where it is the
/// largest vertex.
fn edge_remainders(h: &Hypergraph, only_as_max: bool) -> Vec<Vec<VertexSet>> {
    let mut out = vec![Vec::new(); h.n()];
    for e in h.edges() {
        let verts = e.to_vec();
        let owners: &[usize] = if only_as_max {
            std::slice::from_ref(verts.last().expect("edges are nonempty"))
        } else {
            &verts
        };
        for &v in owners {
            let mut rest = e.clone();
            rest.remove(v);
            out[v - 1].push(rest);
        }
    }
    out
}

fn blocked(rests: &[VertexSet], set: &VertexSet) -> bool {
    rests.iter().any(|r| r.is_subset(set))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceResult {
    /// Exact when `complete`, otherwise the largest independent set found.
    pub alpha: usize,
    pub witness: VertexSet,
    pub complete: bool,
    pub stats: SearchStats,
}

/// Independence number by branch and bound over vertices in index order.
pub fn independence_number(h: &Hypergraph, budget: &SearchBudget) -> IndependenceResult {
    let meter = Meter::new(budget);
    let rests = edge_remainders(h, true);
    let mut best = VertexSet::empty(h.n());
    let mut current = VertexSet::empty(h.n());
    alpha_dfs(&rests, &meter, 0, 0, &mut current, &mut best);
    IndependenceResult {
        alpha: best.len(),
        witness: best,
        complete: !meter.exhausted(),
        stats: meter.stats(),
    }
}

fn alpha_dfs(
    rests: &[Vec<VertexSet>],
    meter: &Meter,
    i: usize,
    size: usize,
    current: &mut VertexSet,
    best: &mut VertexSet,
) {
    if !meter.tick() {
        return;
    }
    if size > best.len() {
        *best = current.clone();
    }
    if i == rests.len() || size + (rests.len() - i) <= best.len() {
        meter.prune();
        return;
    }
    if !blocked(&rests[i], current) {
        current.set(i);
        alpha_dfs(rests, meter, i + 1, size + 1, current, best);
        current.clear(i);
    }
    alpha_dfs(rests, meter, i + 1, size, current, best);
}

/// `alpha(K_q^p([n] choose k))` through the extremal number `ex_k(n, D_k(p,q))`.
pub fn alpha_kneser(spec: KneserSpec, budget: &SearchBudget) -> Result<ExtremalResult> {
    extremal_number(spec.n, spec.k, spec.p, spec.q, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    /// Proven lower bound; equals `upper` when `complete`.
    pub lower: usize,
    pub upper: usize,
    /// Color (1-based) of each vertex in a coloring with `upper` colors.
    pub coloring: Vec<usize>,
    pub complete: bool,
    pub stats: SearchStats,
}

/// Exact chromatic number: tries `c = lower, lower + 1, ...` colors with a
/// backtracking search that always extends the vertex with the fewest
/// admissible colors. The starting bound is `ceil(v / alpha)`.
///
/// Fails for hypergraphs with single-vertex edges, which have no proper
/// coloring.
pub fn chromatic_number_exact(h: &Hypergraph, budget: &SearchBudget) -> Result<ChromaticResult> {
    let v = h.n();
    let meter = Meter::new(budget);
    if h.k() < 2 && h.edge_count() > 0 {
        return Err(invalid("a hypergraph with singleton edges has no proper coloring"));
    }
    if h.edge_count() == 0 || v == 0 {
        let colors = usize::from(v > 0);
        return Ok(ChromaticResult {
            lower: colors,
            upper: colors,
            coloring: vec![1; v],
            complete: true,
            stats: meter.stats(),
        });
    }
    let rests = edge_remainders(h, false);
    let mut coloring = greedy_coloring(&rests);
    let mut upper = coloring.iter().max().copied().unwrap_or(0) + 1;
    let mut search = Coloring::new(&rests, &meter);

    let alpha = independence_number(h, budget);
    let mut lower = if alpha.complete { v.div_ceil(alpha.alpha).max(2) } else { 2 };
    while lower < upper {
        match search.color(lower) {
            Some(c) => {
                upper = lower;
                coloring = c;
            }
            None if meter.exhausted() => break,
            None => lower += 1,
        }
    }
    Ok(ChromaticResult {
        lower,
        upper,
        coloring: coloring.into_iter().map(|c| c + 1).collect(),
        complete: lower == upper,
        stats: meter.stats(),
    })
}

/// First-fit coloring in vertex order (0-based colors).
fn greedy_coloring(rests: &[Vec<VertexSet>]) -> Vec<usize> {
    let v = rests.len();
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut color = Vec::with_capacity(v);
    for (u, r) in rests.iter().enumerate() {
        let col = match classes.iter().position(|cls| !blocked(r, cls)) {
            Some(col) => col,
            None => {
                classes.push(VertexSet::empty(v));
                classes.len() - 1
            }
        };
        classes[col].set(u);
        color.push(col);
    }
    color
}

struct Coloring<'a> {
    rests: &'a [Vec<VertexSet>],
    meter: &'a Meter,
    classes: Vec<VertexSet>,
    color: Vec<Option<usize>>,
}

impl<'a> Coloring<'a> {
    fn new(rests: &'a [Vec<VertexSet>], meter: &'a Meter) -> Self {
        Coloring {
            rests,
            meter,
            classes: Vec::new(),
            color: Vec::new(),
        }
    }

    /// A proper coloring with at most `c` colors (0-based), if one exists.
    fn color(&mut self, c: usize) -> Option<Vec<usize>> {
        let v = self.rests.len();
        self.classes = vec![VertexSet::empty(v); c];
        self.color = vec![None; v];
        if self.extend(0, c) {
            Some(self.color.iter().map(|c| c.expect("all colored")).collect())
        } else {
            None
        }
    }

    fn admissible(&self, v: usize, col: usize) -> bool {
        !blocked(&self.rests[v], &self.classes[col])
    }

    fn extend(&mut self, used: usize, c: usize) -> bool {
        if !self.meter.tick() {
            return false;
        }
        // vertex with the fewest admissible colors, then highest degree
        let mut pick: Option<(usize, usize)> = None;
        for v in 0..self.rests.len() {
            if self.color[v].is_some() {
                continue;
            }
            let mut options = (0..used).filter(|&col| self.admissible(v, col)).count();
            if used < c {
                options += 1;
            }
            let better = match pick {
                None => true,
                Some((pv, po)) => {
                    options < po || (options == po && self.rests[v].len() > self.rests[pv].len())
                }
            };
            if better {
                pick = Some((v, options));
            }
        }
        let Some((v, options)) = pick else {
            return true;
        };
        if options == 0 {
            self.meter.prune();
            return false;
        }
        let palette = used + usize::from(used < c);
        for col in 0..palette {
            if col < used && !self.admissible(v, col) {
                continue;
            }
            self.color[v] = Some(col);
            self.classes[col].set(v);
            if self.extend(used.max(col + 1), c) {
                return true;
            }
            self.classes[col].clear(v);
            self.color[v] = None;
            if self.meter.exhausted() {
                return false;
            }
        }
        false
    }
}

/// Maximal independent sets of `h`, as 0-based vertex lists in
/// lexicographic order. Fails once more than `limit` are found.
pub fn maximal_independent_sets(h: &Hypergraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let by_max = edge_remainders(h, true);
    let all = edge_remainders(h, false);
    let mut out = Vec::new();
    let mut current = VertexSet::empty(h.n());
    let mut reachable = VertexSet::full(h.n());
    mis_dfs(&by_max, &all, 0, &mut current, &mut reachable, &mut out, limit)?;
    Ok(out)
}

fn mis_dfs(
    by_max: &[Vec<VertexSet>],
    all: &[Vec<VertexSet>],
    i: usize,
    current: &mut VertexSet,
    reachable: &mut VertexSet,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    // `reachable` = current plus every undecided vertex. An excluded vertex
    // that stays addable must be blocked by some edge inside `reachable`.
    for (u, rests) in all.iter().enumerate().take(i) {
        if !current.test(u) && !blocked(rests, reachable) {
            return Ok(());
        }
    }
    if i == by_max.len() {
        if out.len() == limit {
            return Err(Error::GuardExceeded(format!(
                "more than {limit} maximal independent sets"
            )));
        }
        out.push(current.iter().map(|v| v - 1).collect());
        return Ok(());
    }
    if !blocked(&by_max[i], current) {
        current.set(i);
        mis_dfs(by_max, all, i + 1, current, reachable, out, limit)?;
        current.clear(i);
    }
    reachable.clear(i);
    let r = mis_dfs(by_max, all, i + 1, current, reachable, out, limit);
    reachable.set(i);
    r
}

/// Weights on independent sets covering every vertex at least once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub weights: Vec<(Vec<usize>, Rational)>,
}

impl FractionalColoring {
    pub fn weight(&self) -> Rational {
        self.weights.iter().map(|(_, w)| w).sum()
    }

    /// Re-checks the coloring against `h` in exact arithmetic: weights are
    /// nonnegative, every weighted set is independent, and every vertex is
    /// covered with total weight at least 1.
    pub fn check(&self, h: &Hypergraph) -> std::result::Result<(), String> {
        let mut cover = vec![Rational::zero(); h.n()];
        for (set, w) in &self.weights {
            if w.is_negative() {
                return Err(format!("negative weight {w} on {set:?}"));
            }
            let s = VertexSet::from_vertices(h.n(), set.iter().copied()).map_err(|e| e.to_string())?;
            if let Some(e) = h.edges().iter().find(|e| e.is_subset(&s)) {
                return Err(format!("set {set:?} contains edge {e:?}"));
            }
            for &v in set {
                cover[v - 1] = &cover[v - 1] + w;
            }
        }
        match cover.iter().position(|c| *c < Rational::one()) {
            Some(v) => Err(format!("vertex {} covered with weight {}", v + 1, cover[v])),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionalBudget {
    pub max_independent_sets: usize,
    pub max_pivots: usize,
}

impl Default for FractionalBudget {
    fn default() -> Self {
        FractionalBudget {
            max_independent_sets: 200_000,
            max_pivots: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalResult {
    pub value: Rational,
    pub coloring: FractionalColoring,
    /// Optimal vertex prices of the dual packing LP; they sum to `value`
    /// and put load at most 1 on every independent set.
    pub vertex_prices: Vec<Rational>,
    pub maximal_independent_sets: usize,
    pub pivots: usize,
}

/// Exact fractional chromatic number from the covering LP over maximal
/// independent sets. Restricting to maximal sets loses nothing: moving a
/// set's weight to a superset never reduces coverage.
pub fn fractional_chromatic_lp(h: &Hypergraph, budget: &FractionalBudget) -> Result<FractionalResult> {
    let sets = maximal_independent_sets(h, budget.max_independent_sets)?;
    let sol = solve_covering(h.n(), &sets, budget.max_pivots)?;
    let coloring = FractionalColoring {
        weights: sol
            .primal
            .iter()
            .map(|(j, w)| (sets[*j].iter().map(|v| v + 1).collect(), w.clone()))
            .collect(),
    };
    coloring.check(h).map_err(Error::InvalidHypergraph)?;
    debug_assert_eq!(coloring.weight(), sol.value);
    Ok(FractionalResult {
        value: sol.value,
        coloring,
        vertex_prices: sol.dual,
        maximal_independent_sets: sets.len(),
        pivots: sol.pivots,
    })
}

/// `C(n,k) / alpha` with `alpha` from the extremal search.
pub fn fractional_chromatic_transitive(spec: KneserSpec, budget: &SearchBudget) -> Result<Rational> {
    let alpha = alpha_kneser(spec, budget)?;
    if !alpha.complete {
        return Err(Error::BudgetExhausted(format!(
            "independence number of the Kneser hypergraph only bounded below by {}",
            alpha.value
        )));
    }
    let v = spec.vertex_count()?;
    Ok(Rational::new(v, alpha.value as u128))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryValue {
    pub value: Rational,
    /// `n >= 2p^2`; outside this range the closed form is unproven.
    pub within_validity: bool,
}

/// Closed form `C(n,2) / (C(n,2) - C(n-t,2) + r)` for the fractional
/// chromatic number of `K_q^p([n] choose 2)`, `p >= q >= 3`.
pub fn corollary_chi_f(n: usize, p: usize, q: usize) -> Result<CorollaryValue> {
    if q < 3 || p < q {
        return Err(invalid(format!("need p >= q >= 3, got p={p}, q={q}")));
    }
    let (t, _) = tq_decompose(p, q)?;
    if n < 2 || n < t {
        return Err(invalid(format!("need n >= max(2, t), got n={n}, t={t}")));
    }
    let all = binomial(n as u64, 2).ok_or(Error::Overflow("C(n, 2)"))?;
    let denominator = phi(n, 2, p, q)?;
    Ok(CorollaryValue {
        value: Rational::new(all, denominator),
        within_validity: n >= 2 * p * p,
    })
}
