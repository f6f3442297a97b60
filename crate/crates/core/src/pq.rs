//! The (p,q)-property: among any `p` edges, some `q` share a vertex.
//!
//! A hypergraph fails the property exactly when it contains `p` distinct
//! edges in which every vertex lies in at most `q - 1` of them (a member of
//! the bounded degree family). [`find_violation`] searches for such a family.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hypergraph::{EdgeFamily, Hypergraph};

/// `(p, q)` together with the decomposition `p - 1 = t(q - 1) + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PQParams {
    p: usize,
    q: usize,
    t: usize,
    r: usize,
}

impl PQParams {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if q < 2 || p < q {
            return Err(invalid(format!("need p >= q >= 2, got p={p}, q={q}")));
        }
        Ok(PQParams {
            p,
            q,
            t: (p - 1) / (q - 1),
            r: (p - 1) % (q - 1),
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn r(&self) -> usize {
        self.r
    }
}

/// `p` edges of a host in which no vertex is covered more than `q - 1` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation<'a> {
    family: EdgeFamily<'a>,
}

impl<'a> Violation<'a> {
    pub fn family(&self) -> &EdgeFamily<'a> {
        &self.family
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.family.edge_lists()
    }
}

/// Whether `h` itself is a member of the bounded degree family for `params`:
/// exactly `p` edges and maximum degree at most `q - 1`.
pub fn is_bounded_degree_member(h: &Hypergraph, params: PQParams) -> bool {
    h.edge_count() == params.p && h.max_degree() < params.q
}

/// The colex-least violating family of `h`, if any.
pub fn find_violation(h: &Hypergraph, params: PQParams) -> Option<Violation<'_>> {
    let lists = h.edge_lists();
    let mut search = FamilySearch::new(h.n(), &lists, params.p, params.q);
    let pool: Vec<usize> = (0..lists.len()).collect();
    let found = search.find(None, &pool)?;
    let family = EdgeFamily::new(h, found).expect("search returns increasing in-range indices");
    let witness = Violation { family };
    debug_assert!(is_bounded_degree_member(
        &witness.family.to_hypergraph(),
        params
    ));
    Some(witness)
}

/// True iff no `p` edges of `h` form a bounded degree family. Vacuously true
/// when `h` has fewer than `p` edges.
pub fn has_pq_property(h: &Hypergraph, params: PQParams) -> bool {
    h.edge_count() < params.p || find_violation(h, params).is_none()
}

/// Depth-first search for `p` edges with all vertex multiplicities below `q`.
///
/// Edges are 1-based vertex lists, indexed by position in `edges`. The search
/// walks candidates in increasing index order, so the first family found is
/// the lexicographically least one. Branches are cut only when no completion
/// exists, which keeps the least witness unchanged.
pub(crate) struct FamilySearch<'e> {
    edges: &'e [Vec<usize>],
    p: usize,
    cap: u32,
    mult: Vec<u32>,
    chosen: Vec<usize>,
    // scratch for the cover bound
    cand_degree: Vec<u32>,
    order: Vec<usize>,
    covered: Vec<bool>,
}

impl<'e> FamilySearch<'e> {
    pub(crate) fn new(n: usize, edges: &'e [Vec<usize>], p: usize, q: usize) -> Self {
        FamilySearch {
            edges,
            p,
            cap: (q - 1) as u32,
            mult: vec![0; n + 1],
            chosen: Vec::with_capacity(p),
            cand_degree: vec![0; n + 1],
            order: (0..=n).collect(),
            covered: Vec::new(),
        }
    }

    /// Looks for a violating family drawn from `pool` (increasing edge
    /// indices). With `forced = Some(e)` the family must contain `e`, which
    /// must not itself be in `pool`. Returns the family's indices, sorted.
    pub(crate) fn find(&mut self, forced: Option<usize>, pool: &[usize]) -> Option<Vec<usize>> {
        let need = self.p - usize::from(forced.is_some());
        if pool.len() < need {
            return None;
        }
        debug_assert!(self.chosen.is_empty());
        if let Some(e) = forced {
            self.add(e);
        }
        let candidates: Vec<usize> = pool.iter().copied().filter(|&e| self.fits(e)).collect();
        let family = self.descend(&candidates).then(|| {
            let mut f = self.chosen.clone();
            f.sort_unstable();
            f
        });
        for &e in &self.chosen {
            for &v in &self.edges[e] {
                self.mult[v] -= 1;
            }
        }
        self.chosen.clear();
        family
    }

    fn fits(&self, e: usize) -> bool {
        self.edges[e].iter().all(|&v| self.mult[v] < self.cap)
    }

    fn add(&mut self, e: usize) {
        for &v in &self.edges[e] {
            self.mult[v] += 1;
        }
        self.chosen.push(e);
    }

    fn remove(&mut self, e: usize) {
        for &v in &self.edges[e] {
            self.mult[v] -= 1;
        }
        let pos = self.chosen.iter().rposition(|&x| x == e).expect("edge was chosen");
        self.chosen.remove(pos);
    }

    /// Extends `chosen` from `candidates`; on success leaves the family in
    /// `chosen` with multiplicities applied.
    fn descend(&mut self, candidates: &[usize]) -> bool {
        let need = self.p - self.chosen.len();
        if need == 0 {
            return true;
        }
        if candidates.len() < need {
            return false;
        }
        if need >= 2 && self.cover_bound(candidates) < need {
            return false;
        }
        for (i, &e) in candidates.iter().enumerate() {
            if candidates.len() - i < need {
                break;
            }
            self.add(e);
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&f| self.fits(f))
                .collect();
            if self.descend(&next) {
                return true;
            }
            self.remove(e);
        }
        false
    }

    /// Upper bound on how many more edges from `candidates` can join the
    /// family. For any vertex set X, the edges meeting X number at most
    /// `sum over x in X of min(residual capacity, candidate degree)`, and
    /// the rest avoid X. X ranges over prefixes of the vertices sorted by
    /// candidate degree.
    fn cover_bound(&mut self, candidates: &[usize]) -> usize {
        let n = self.mult.len() - 1;
        self.cand_degree.iter_mut().for_each(|d| *d = 0);
        for &e in candidates {
            for &v in &self.edges[e] {
                self.cand_degree[v] += 1;
            }
        }
        let deg = &self.cand_degree;
        self.order.sort_unstable_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        self.covered.clear();
        self.covered.resize(candidates.len(), false);
        let mut uncovered = candidates.len();
        let mut best = uncovered;
        let mut through_prefix = 0usize;
        for idx in 0..=n {
            let x = self.order[idx];
            if x == 0 || self.cand_degree[x] == 0 {
                continue;
            }
            let residual = self.cap - self.mult[x];
            through_prefix += residual.min(self.cand_degree[x]) as usize;
            for (j, &e) in candidates.iter().enumerate() {
                if !self.covered[j] && self.edges[e].contains(&x) {
                    self.covered[j] = true;
                    uncovered -= 1;
                }
            }
            best = best.min(through_prefix + uncovered);
            if through_prefix >= best {
                break;
            }
        }
        best
    }
}
