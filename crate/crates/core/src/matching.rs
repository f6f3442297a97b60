//! Bipartite maximum matching with a König vertex-cover certificate.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Bipartite graph with sides `A = 0..left` and `B = 0..right`. Edges are
/// `(a, b)` pairs, kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= left || b >= right) {
            return Err(invalid(format!(
                "edge ({a},{b}) leaves the sides of sizes {left} and {right}"
            )));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("duplicate edge in bipartite graph"));
        }
        Ok(BipartiteGraph { left, right, edges })
    }

    /// Builds the graph whose edges are the set bits of `mask`, bit
    /// `a * right + b` standing for `(a, b)`.
    pub fn from_mask(left: usize, right: usize, mask: u64) -> Result<Self> {
        if left * right > 64 {
            return Err(invalid("bit-mask graphs need at most 64 possible edges"));
        }
        let edges = (0..left * right)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i / right, i % right));
        Self::new(left, right, edges)
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left];
        for &(a, b) in &self.edges {
            adj[a].push(b);
        }
        adj
    }
}

/// A maximum matching together with a vertex cover of the same size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxMatching {
    /// Matched pairs sorted by left vertex.
    pub edges: Vec<(usize, usize)>,
    pub cover_left: Vec<usize>,
    pub cover_right: Vec<usize>,
}

impl MaxMatching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn cover_size(&self) -> usize {
        self.cover_left.len() + self.cover_right.len()
    }

    /// Checks that the matching is a matching of `g`, the cover touches
    /// every edge of `g`, and the two have equal size.
    pub fn certifies(&self, g: &BipartiteGraph) -> bool {
        let mut used_left = vec![false; g.left];
        let mut used_right = vec![false; g.right];
        for &(a, b) in &self.edges {
            if g.edges.binary_search(&(a, b)).is_err() || used_left[a] || used_right[b] {
                return false;
            }
            used_left[a] = true;
            used_right[b] = true;
        }
        let mut in_left = vec![false; g.left];
        let mut in_right = vec![false; g.right];
        for &a in &self.cover_left {
            match in_left.get_mut(a) {
                Some(x) => *x = true,
                None => return false,
            }
        }
        for &b in &self.cover_right {
            match in_right.get_mut(b) {
                Some(x) => *x = true,
                None => return false,
            }
        }
        g.edges.iter().all(|&(a, b)| in_left[a] || in_right[b]) && self.cover_size() == self.size()
    }
}

fn augment(
    a: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &b in &adj[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if match_right[b].is_none_or(|a2| augment(a2, adj, seen, match_right)) {
            match_right[b] = Some(a);
            return true;
        }
    }
    false
}

/// Maximum matching by augmenting paths. The cover is `(A \ Z) ∪ (B ∩ Z)`
/// where `Z` is everything reachable from unmatched left vertices along
/// alternating paths.
pub fn max_matching(g: &BipartiteGraph) -> MaxMatching {
    let adj = g.adjacency();
    let mut match_right: Vec<Option<usize>> = vec![None; g.right];
    for a in 0..g.left {
        let mut seen = vec![false; g.right];
        augment(a, &adj, &mut seen, &mut match_right);
    }
    let mut match_left: Vec<Option<usize>> = vec![None; g.left];
    for (b, a) in match_right.iter().enumerate() {
        if let Some(a) = *a {
            match_left[a] = Some(b);
        }
    }

    let mut reach_left = vec![false; g.left];
    let mut reach_right = vec![false; g.right];
    let mut stack: Vec<usize> = (0..g.left).filter(|&a| match_left[a].is_none()).collect();
    for &a in &stack {
        reach_left[a] = true;
    }
    while let Some(a) = stack.pop() {
        for &b in &adj[a] {
            if reach_right[b] || match_left[a] == Some(b) {
                continue;
            }
            reach_right[b] = true;
            if let Some(a2) = match_right[b] {
                if !reach_left[a2] {
                    reach_left[a2] = true;
                    stack.push(a2);
                }
            }
        }
    }

    MaxMatching {
        edges: match_left
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (a, b)))
            .collect(),
        cover_left: (0..g.left).filter(|&a| !reach_left[a]).collect(),
        cover_right: (0..g.right).filter(|&b| reach_right[b]).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Vacuous,
    Confirmed,
    Counterexample,
}

/// Outcome of testing "|A| < |B| and e(G) > (t-1)|B| imply a t-matching".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma3Report {
    pub t: usize,
    pub premise: bool,
    pub matching_size: usize,
    pub conclusion: bool,
    pub cover_certified: bool,
    pub verdict: Verdict,
}

pub fn lemma3_check(g: &BipartiteGraph, t: usize) -> Lemma3Report {
    let m = max_matching(g);
    let premise = g.left < g.right && g.edge_count() > t.saturating_sub(1) * g.right;
    let conclusion = m.size() >= t;
    let verdict = match (premise, conclusion) {
        (false, _) => Verdict::Vacuous,
        (true, true) => Verdict::Confirmed,
        (true, false) => Verdict::Counterexample,
    };
    Lemma3Report {
        t,
        premise,
        matching_size: m.size(),
        conclusion,
        cover_certified: m.certifies(g),
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_bipartite() {
        let g = BipartiteGraph::new(2, 3, (0..2).flat_map(|a| (0..3).map(move |b| (a, b)))).unwrap();
        let m = max_matching(&g);
        assert_eq!(m.size(), 2);
        assert!(m.certifies(&g));
    }

    #[test]
    fn empty_and_perfect() {
        let g = BipartiteGraph::new(3, 3, []).unwrap();
        let m = max_matching(&g);
        assert_eq!(m.size(), 0);
        assert_eq!(m.cover_size(), 0);

        let g = BipartiteGraph::new(4, 4, (0..4).map(|i| (i, i))).unwrap();
        let m = max_matching(&g);
        assert_eq!(m.edges, vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        assert!(m.certifies(&g));
    }

    #[test]
    fn needs_augmenting_path() {
        // greedy would match 0-0 and strand vertex 1
        let g = BipartiteGraph::new(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        let m = max_matching(&g);
        assert_eq!(m.size(), 2);
        assert!(m.certifies(&g));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(BipartiteGraph::new(2, 2, [(2, 0)]).is_err());
        assert!(BipartiteGraph::new(2, 2, [(0, 1), (0, 1)]).is_err());
        assert!(BipartiteGraph::from_mask(9, 8, 1).is_err());
        assert_eq!(BipartiteGraph::from_mask(2, 3, 0b100001).unwrap().edges(), &[(0, 0), (1, 2)]);
    }

    #[test]
    fn lemma3_examples() {
        let g = BipartiteGraph::new(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        let r = lemma3_check(&g, 2);
        assert!(r.premise);
        assert!(r.matching_size >= 2);
        assert_eq!(r.verdict, Verdict::Confirmed);

        let g = BipartiteGraph::new(1, 2, [(0, 0)]).unwrap();
        let r = lemma3_check(&g, 2);
        assert!(!r.premise);
        assert_eq!(r.verdict, Verdict::Vacuous);

        let g = BipartiteGraph::new(2, 3, [(1, 2)]).unwrap();
        assert_eq!(lemma3_check(&g, 1).verdict, Verdict::Confirmed);
    }
}
