//! k-uniform hypergraphs on the vertex set `[n] = {1, ..., n}`.
//!
//! Edges are fixed-width bit vectors and are always kept in colexicographic
//! order, which for bit patterns is the order of the patterns read as
//! unsigned integers. Every iteration over edges, every witness and every
//! serialized form follows that order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseErrorKind, Result};

const WORD: usize = 64;

/// A subset of `[n]` stored as a bit vector of width `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(WORD)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 1..=n {
            s.set(v - 1);
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in vertices {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Declared width `n`.
    pub fn width(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v <= self.n && self.test(v - 1)
    }

    pub fn insert(&mut self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.set(v - 1);
        Ok(())
    }

    pub fn remove(&mut self, v: usize) {
        if v >= 1 && v <= self.n {
            self.clear(v - 1);
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Vertices in increasing order (1-based).
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b + 1)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn test(&self, bit: usize) -> bool {
        self.words[bit / WORD] >> (bit % WORD) & 1 == 1
    }

    pub(crate) fn set(&mut self, bit: usize) {
        self.words[bit / WORD] |= 1 << (bit % WORD);
    }

    pub(crate) fn clear(&mut self, bit: usize) {
        self.words[bit / WORD] &= !(1 << (bit % WORD));
    }
}

impl Ord for VertexSet {
    /// Colexicographic order: compare the largest differing element.
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.words.len().max(other.words.len());
        for i in (0..len).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All k-subsets of `[n]` in colexicographic order.
///
/// Yields nothing when `k > n`, and the single empty set when `k == 0`.
pub fn enumerate_k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        n,
        current: if k <= n { Some((1..=k).collect()) } else { None },
    }
}

/// Iterator returned by [`enumerate_k_subsets`].
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl KSubsets {
    /// Advance to the colex successor of `c`, or `None` after the last one.
    fn successor(n: usize, mut c: Vec<usize>) -> Option<Vec<usize>> {
        let k = c.len();
        for i in 0..k {
            let limit = if i + 1 < k { c[i + 1] } else { n + 1 };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (j, x) in c.iter_mut().enumerate().take(i) {
                    *x = j + 1;
                }
                return Some(c);
            }
        }
        None
    }
}

impl Iterator for KSubsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let c = self.current.take()?;
        let set = VertexSet::from_vertices(self.n, c.iter().copied()).expect("k-subset in range");
        self.current = Self::successor(self.n, c);
        Some(set)
    }
}

/// A k-uniform hypergraph on `[n]` with distinct edges in colex order.
///
/// Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting edges into colex order.
    ///
    /// Fails on a wrong-width edge, an edge whose size is not `k`, or a
    /// repeated edge.
    pub fn new<I: IntoIterator<Item = VertexSet>>(n: usize, k: usize, edges: I) -> Result<Self> {
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for e in &edges {
            if e.width() != n {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} has width {}, expected {n}",
                    e.width()
                )));
            }
            if e.len() != k {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {e:?} has {} vertices, expected {k}",
                    e.len()
                )));
            }
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidHypergraph(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Hypergraph { n, k, edges })
    }

    /// Builds from 1-based vertex lists.
    pub fn from_edge_lists<E: AsRef<[usize]>>(n: usize, k: usize, lists: &[E]) -> Result<Self> {
        let edges = lists
            .iter()
            .map(|l| VertexSet::from_vertices(n, l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, edges)
    }

    pub fn empty(n: usize, k: usize) -> Self {
        Hypergraph {
            n,
            k,
            edges: Vec::new(),
        }
    }

    /// The complete k-uniform hypergraph `([n] choose k)`.
    pub fn complete(n: usize, k: usize) -> Self {
        Hypergraph {
            n,
            k,
            edges: enumerate_k_subsets(n, k).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, i: usize) -> &VertexSet {
        &self.edges[i]
    }

    /// Edges as sorted 1-based vertex lists.
    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(VertexSet::to_vec).collect()
    }

    pub fn contains_edge(&self, e: &VertexSet) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.edges.iter().filter(|e| e.test(v - 1)).count())
    }

    /// Degrees of all vertices; entry `i` belongs to vertex `i + 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for v in e.iter() {
                deg[v - 1] += 1;
            }
        }
        deg
    }

    /// Minimum degree over all `n` vertices; isolated vertices count as 0.
    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Minimum degree over the support only (0 for an edgeless hypergraph).
    pub fn min_degree_on_support(&self) -> usize {
        self.degrees().into_iter().filter(|&d| d > 0).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Non-isolated vertices.
    pub fn support(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        for e in &self.edges {
            s.union_with(e);
        }
        s
    }

    /// Sub-hypergraph on the same labels keeping the edges contained in `u`.
    pub fn induced(&self, u: &VertexSet) -> Hypergraph {
        Hypergraph {
            n: self.n,
            k: self.k,
            edges: self.edges.iter().filter(|e| e.is_subset(u)).cloned().collect(),
        }
    }

    /// Sub-hypergraph formed by the edges at the given indices.
    pub fn edge_subset(&self, indices: &[usize]) -> Result<Hypergraph> {
        let edges = indices
            .iter()
            .map(|&i| {
                self.edges
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidParams(format!("edge index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(self.n, self.k, edges)
    }

    /// Parses the `.hg` text format.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut header: Option<(usize, usize)> = None;
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |kind| Error::Parse {
                line: line_no,
                kind,
            };
            let nums = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| err(ParseErrorKind::Malformed(format!("`{tok}` is not a non-negative integer"))))
                })
                .collect::<Result<Vec<_>>>()?;
            let Some((n, k)) = header else {
                if nums.len() != 2 {
                    return Err(err(ParseErrorKind::Malformed(
                        "header must be `n k`".to_string(),
                    )));
                }
                header = Some((nums[0], nums[1]));
                continue;
            };
            if nums.len() != k {
                return Err(err(ParseErrorKind::WrongCardinality {
                    expected: k,
                    found: nums.len(),
                }));
            }
            if let Some(&v) = nums.iter().find(|&&v| v == 0 || v > n) {
                return Err(err(ParseErrorKind::VertexOutOfRange { vertex: v, n }));
            }
            if nums.windows(2).any(|w| w[0] >= w[1]) {
                return Err(err(ParseErrorKind::NotIncreasing));
            }
            let e = VertexSet::from_vertices(n, nums).expect("checked range");
            if !seen.insert(e) {
                return Err(err(ParseErrorKind::DuplicateEdge));
            }
        }
        let (n, k) = header.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            kind: ParseErrorKind::MissingHeader,
        })?;
        Ok(Hypergraph {
            n,
            k,
            edges: seen.into_iter().collect(),
        })
    }

    /// Canonical `.hg` text.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Hypergraph> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("edges", &self.edge_lists())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawHypergraph {
            n: self.n,
            k: self.k,
            edges: self.edge_lists(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(d)?;
        for e in &raw.edges {
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(serde::de::Error::custom(format!(
                    "edge {e:?} is not strictly increasing"
                )));
            }
        }
        Hypergraph::from_edge_lists(raw.n, raw.k, &raw.edges).map_err(serde::de::Error::custom)
    }
}

/// An increasing selection of edge indices of a host hypergraph.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeFamily<'a> {
    host: &'a Hypergraph,
    indices: Vec<usize>,
}

impl<'a> EdgeFamily<'a> {
    pub fn new(host: &'a Hypergraph, indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams(
                "edge family indices must be strictly increasing".into(),
            ));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= host.edge_count()) {
            return Err(Error::InvalidParams(format!("edge index {i} out of range")));
        }
        Ok(EdgeFamily { host, indices })
    }

    pub fn host(&self) -> &'a Hypergraph {
        self.host
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &'a VertexSet> + '_ {
        self.indices.iter().map(|&i| self.host.edge(i))
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges().map(VertexSet::to_vec).collect()
    }

    /// The family as a standalone hypergraph on the host's vertex labels.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.host.n,
            k: self.host.k,
            edges: self.edges().cloned().collect(),
        }
    }
}

impl fmt::Debug for EdgeFamily<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.edge_lists()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star5() -> Hypergraph {
        Hypergraph::from_edge_lists(5, 2, &[[1, 2], [1, 3], [1, 4], [1, 5]]).unwrap()
    }

    #[test]
    fn star_degrees() {
        let h = star5();
        assert_eq!(h.degree(1).unwrap(), 4);
        assert_eq!(h.degree(3).unwrap(), 1);
        assert_eq!((h.min_degree(), h.max_degree()), (1, 4));
        assert_eq!(Hypergraph::empty(3, 2).degree(1).unwrap(), 0);
        assert!(matches!(
            h.degree(6),
            Err(Error::VertexOutOfRange { vertex: 6, n: 5 })
        ));
        assert!(h.degree(0).is_err());
    }

    #[test]
    fn star_with_padding_vertices() {
        let h = Hypergraph::from_edge_lists(7, 2, &[[1, 2], [1, 3], [1, 4], [1, 5]]).unwrap();
        assert_eq!((h.min_degree(), h.max_degree()), (0, 4));
        assert_eq!(h.min_degree_on_support(), 1);
        assert_eq!(h.support().to_vec(), vec![1, 2, 3, 4, 5]);
        assert!(Hypergraph::empty(4, 2).support().is_empty());
    }

    #[test]
    fn cycle_and_single_triple() {
        let c4 = Hypergraph::from_edge_lists(4, 2, &[[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
        assert_eq!((c4.min_degree(), c4.max_degree()), (2, 2));
        let t = Hypergraph::from_edge_lists(3, 3, &[[1, 2, 3]]).unwrap();
        assert_eq!((t.min_degree(), t.max_degree()), (1, 1));
    }

    #[test]
    fn induced_subhypergraphs() {
        let k4 = Hypergraph::complete(4, 2);
        let u = VertexSet::from_vertices(4, [1, 2, 3]).unwrap();
        assert_eq!(k4.induced(&u).edge_count(), 3);
        assert_eq!(k4.induced(&VertexSet::full(4)), k4);
    }

    #[test]
    fn colex_enumeration() {
        let lists: Vec<Vec<usize>> = enumerate_k_subsets(3, 2).map(|s| s.to_vec()).collect();
        assert_eq!(lists, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let singles: Vec<Vec<usize>> = enumerate_k_subsets(4, 1).map(|s| s.to_vec()).collect();
        assert_eq!(singles, vec![vec![1], vec![2], vec![3], vec![4]]);
        let pairs: Vec<VertexSet> = enumerate_k_subsets(5, 2).collect();
        assert_eq!(pairs.len(), 10);
        assert_eq!(pairs[0].to_vec(), vec![1, 2]);
        assert_eq!(pairs[9].to_vec(), vec![4, 5]);
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_k_subsets(3, 0).count(), 1);
        assert_eq!(enumerate_k_subsets(2, 3).count(), 0);
    }

    #[test]
    fn colex_order_across_words() {
        let a = VertexSet::from_vertices(130, [1, 129]).unwrap();
        let b = VertexSet::from_vertices(130, [2, 100]).unwrap();
        assert!(b < a);
        assert_eq!(enumerate_k_subsets(70, 2).count(), 2415);
        let last = enumerate_k_subsets(70, 2).last().unwrap();
        assert_eq!(last.to_vec(), vec![69, 70]);
    }

    #[test]
    fn parse_examples() {
        let h = Hypergraph::parse("5 2\n1 2\n1 3\n").unwrap();
        assert_eq!((h.n(), h.k(), h.edge_count()), (5, 2, 2));
        assert_eq!(
            Hypergraph::parse("3 2\n1 2\n1 2\n"),
            Err(Error::Parse {
                line: 3,
                kind: ParseErrorKind::DuplicateEdge
            })
        );
        assert_eq!(
            Hypergraph::parse("3 2\n1 4\n"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::VertexOutOfRange { vertex: 4, n: 3 }
            })
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# comment\n\n4 3\n1 2 3  # first\n1 2\n";
        assert_eq!(
            Hypergraph::parse(text),
            Err(Error::Parse {
                line: 5,
                kind: ParseErrorKind::WrongCardinality {
                    expected: 3,
                    found: 2
                }
            })
        );
        assert!(matches!(
            Hypergraph::parse("4 2\n2 1\n"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::NotIncreasing
            })
        ));
        assert!(matches!(
            Hypergraph::parse("4 2\n1 x\n"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::Malformed(_)
            })
        ));
        assert!(matches!(
            Hypergraph::parse("# nothing\n"),
            Err(Error::Parse {
                kind: ParseErrorKind::MissingHeader,
                ..
            })
        ));
    }

    #[test]
    fn serialize_is_canonical() {
        let h = Hypergraph::parse("# star\n5 2\n1 5\n\n1 2\n").unwrap();
        assert_eq!(h.serialize(), "5 2\n1 2\n1 5\n");
    }

    #[test]
    fn json_form() {
        let h = star5();
        let json = h.to_json();
        assert_eq!(json, r#"{"n":5,"k":2,"edges":[[1,2],[1,3],[1,4],[1,5]]}"#);
        assert_eq!(Hypergraph::from_json(&json).unwrap(), h);
        assert!(Hypergraph::from_json(r#"{"n":3,"k":2,"edges":[[1,2],[1,2]]}"#).is_err());
        assert!(Hypergraph::from_json(r#"{"n":3,"k":2,"edges":[[2,1]]}"#).is_err());
        assert!(Hypergraph::from_json(r#"{"n":3,"k":2,"edges":[[1,2,3]]}"#).is_err());
    }

    #[test]
    fn edge_family_validation() {
        let h = star5();
        assert!(EdgeFamily::new(&h, vec![0, 2]).is_ok());
        assert!(EdgeFamily::new(&h, vec![2, 0]).is_err());
        assert!(EdgeFamily::new(&h, vec![4]).is_err());
        let fam = EdgeFamily::new(&h, vec![1, 3]).unwrap();
        assert_eq!(fam.edge_lists(), vec![vec![1, 3], vec![1, 5]]);
    }
}
