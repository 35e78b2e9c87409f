//! Finite undirected multigraphs: loops and parallel edges allowed.
//!
//! Vertices are labeled `0..vertex_count`; edges live in a multiset of
//! unordered pairs. All mutating operations return new values, so graphs
//! can be shared freely across threads.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

mod canon;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The referenced edge copy does not exist in the graph.
    #[error("no edge copy {copy} between {u} and {v}")]
    MissingEdge { u: usize, v: usize, copy: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
}

/// Reference to one copy of an edge; `copy` selects among parallel copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
    pub copy: usize,
}

impl EdgeRef {
    /// Normalizes the endpoints so `u <= v`.
    pub fn new(u: usize, v: usize, copy: usize) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        EdgeRef { u, v, copy }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Isomorphism-invariant byte encoding of a multigraph.
///
/// Two multigraphs have equal keys if and only if they are isomorphic,
/// with loops and edge multiplicities respected. Used as a memoization key;
/// exactness keeps the cache sound, unlike a hash.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{:02x}", b)?;
        }
        Ok(())
    }
}

/// Finite undirected multigraph.
///
/// Edge storage: normalized pair `(min, max)` mapped to its multiplicity.
/// Equality is structural (same labels); use [`Multigraph::canonical_key`]
/// for isomorphism comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), usize>,
}

impl Multigraph {
    /// The edgeless graph on `n` vertices; `n = 0` is the empty graph.
    pub fn new(n: usize) -> Self {
        Multigraph {
            vertex_count: n,
            edges: BTreeMap::new(),
        }
    }

    /// The simple path on `n` vertices (no edges for `n <= 1`).
    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// The connected 2-regular graph on `n` vertices: the empty graph for
    /// `n = 0`, a single loop for `n = 1`, a double edge for `n = 2`, and
    /// the simple cycle for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        match n {
            0 => {}
            1 => g.add_edge(0, 0),
            2 => {
                g.add_edge(0, 1);
                g.add_edge(0, 1);
            }
            _ => {
                for i in 0..n {
                    g.add_edge(i, (i + 1) % n);
                }
            }
        }
        g
    }

    /// Adds one copy of the edge `{u, v}`; `u == v` adds a loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u < self.vertex_count && v < self.vertex_count,
            "edge endpoint out of range"
        );
        let key = if u <= v { (u, v) } else { (v, u) };
        *self.edges.entry(key).or_insert(0) += 1;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Total number of edges, counting multiplicities.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    /// Multiplicity of the edge `{u, v}` (or the loop at `u` when `u == v`).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.edges.get(&key).copied().unwrap_or(0)
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.multiplicity(v, v)
    }

    /// Degree of `v`: non-loop incidences plus twice the loop count.
    pub fn degree(&self, v: usize) -> usize {
        let mut d = 2 * self.loops_at(v);
        for (&(a, b), &m) in &self.edges {
            if a != b && (a == v || b == v) {
                d += m;
            }
        }
        d
    }

    pub fn has_loops(&self) -> bool {
        self.edges.keys().any(|&(a, b)| a == b)
    }

    /// Distinct edges with their multiplicities, in label order.
    pub fn edge_multiplicities(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Every edge copy as a separate reference, in label order.
    pub fn edge_refs(&self) -> Vec<EdgeRef> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&(u, v), &m) in &self.edges {
            for copy in 0..m {
                out.push(EdgeRef { u, v, copy });
            }
        }
        out
    }

    fn check_edge(&self, e: &EdgeRef) -> Result<(usize, usize), GraphError> {
        let (u, v) = if e.u <= e.v { (e.u, e.v) } else { (e.v, e.u) };
        let missing = GraphError::MissingEdge {
            u,
            v,
            copy: e.copy,
        };
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(missing);
        }
        if e.copy >= self.multiplicity(u, v) {
            return Err(missing);
        }
        Ok((u, v))
    }

    /// Removes one copy of `e`; vertices are unchanged.
    pub fn delete_edge(&self, e: &EdgeRef) -> Result<Multigraph, GraphError> {
        let (u, v) = self.check_edge(e)?;
        let mut g = self.clone();
        match g.edges.get_mut(&(u, v)) {
            Some(m) if *m > 1 => *m -= 1,
            _ => {
                g.edges.remove(&(u, v));
            }
        }
        Ok(g)
    }

    /// Removes one copy of `e` and identifies its endpoints.
    ///
    /// Remaining parallel copies of `e` become loops, all other incidences
    /// of the vanished endpoint are redirected, and labels are compacted.
    /// Contracting a loop only removes that loop.
    pub fn contract_edge(&self, e: &EdgeRef) -> Result<Multigraph, GraphError> {
        let (u, v) = self.check_edge(e)?;
        if u == v {
            return self.delete_edge(e);
        }
        // v is merged into u, then every label above v shifts down by one
        let relabel = |w: usize| -> usize {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let mut g = Multigraph::new(self.vertex_count - 1);
        for (&(a, b), &m) in &self.edges {
            let m = if (a, b) == (u, v) { m - 1 } else { m };
            if m == 0 {
                continue;
            }
            let (na, nb) = (relabel(a), relabel(b));
            let key = if na <= nb { (na, nb) } else { (nb, na) };
            *g.edges.entry(key).or_insert(0) += m;
        }
        Ok(g)
    }

    /// Removes `e` together with its endpoints and all their incident edges.
    pub fn extract_edge(&self, e: &EdgeRef) -> Result<Multigraph, GraphError> {
        let (u, v) = self.check_edge(e)?;
        let keep: Vec<usize> = (0..self.vertex_count)
            .filter(|&w| w != u && w != v)
            .collect();
        Ok(self.induced(&keep))
    }

    /// Induced sub-multigraph on the given (strictly increasing) labels,
    /// relabeled to `0..keep.len()`.
    fn induced(&self, keep: &[usize]) -> Multigraph {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut index = BTreeMap::new();
        for (new, &old) in keep.iter().enumerate() {
            index.insert(old, new);
        }
        let mut g = Multigraph::new(keep.len());
        for (&(a, b), &m) in &self.edges {
            if let (Some(&na), Some(&nb)) = (index.get(&a), index.get(&b)) {
                g.edges.insert((na, nb), m);
            }
        }
        g
    }

    /// Connected components as relabeled multigraphs, ordered by their
    /// smallest original vertex label.
    pub fn connected_components(&self) -> Vec<Multigraph> {
        let n = self.vertex_count;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (&(a, b), _) in &self.edges {
            if a != b {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut members = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(self.induced(&members));
        }
        components
    }

    /// Isomorphism-invariant key; see [`CanonicalKey`].
    ///
    /// Exact by construction: degree-sequence refinement narrows the
    /// candidate orderings, then the maximal adjacency encoding is chosen
    /// by exhaustive search within refinement cells. Exponential on highly
    /// symmetric dense graphs; intended for desk-scale inputs.
    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonical_key(self)
    }

    /// Parses the graph text format:
    ///
    /// ```text
    /// # comment
    /// n m
    /// u v        (m lines; `u u` is a loop, repeated lines are parallel)
    /// ```
    pub fn parse(text: &str) -> Result<Multigraph, GraphParseError> {
        let invalid = |line: usize, msg: String| GraphParseError::Invalid { line, msg };
        let mut content = text.lines().enumerate().filter_map(|(i, raw)| {
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some((i + 1, t))
            }
        });

        let (header_line, header) = content
            .next()
            .ok_or_else(|| invalid(1, "missing `n m` header".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| invalid(header_line, format!("expected `n m`, got {:?}", header)))?;
        let m: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| invalid(header_line, format!("expected `n m`, got {:?}", header)))?;
        if parts.next().is_some() {
            return Err(invalid(
                header_line,
                format!("trailing tokens after `n m` in {:?}", header),
            ));
        }

        let mut g = Multigraph::new(n);
        for k in 0..m {
            let (line, text) = content.next().ok_or_else(|| {
                invalid(0, format!("expected {} edge lines, found {}", m, k))
            })?;
            let mut parts = text.split_whitespace();
            let parse_endpoint = |tok: Option<&str>| -> Result<usize, GraphParseError> {
                tok.and_then(|s| s.parse().ok())
                    .ok_or_else(|| invalid(line, format!("expected `u v`, got {:?}", text)))
            };
            let u = parse_endpoint(parts.next())?;
            let v = parse_endpoint(parts.next())?;
            if parts.next().is_some() {
                return Err(invalid(line, format!("trailing tokens in {:?}", text)));
            }
            if u >= n || v >= n {
                return Err(invalid(
                    line,
                    format!("endpoint out of range (vertex count {})", n),
                ));
            }
            g.add_edge(u, v);
        }
        if let Some((line, text)) = content.next() {
            return Err(invalid(
                line,
                format!("unexpected content after {} edges: {:?}", m, text),
            ));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_constructors() {
        assert_eq!(Multigraph::path(0), Multigraph::new(0));
        assert_eq!(Multigraph::path(1), Multigraph::new(1));
        let p3 = Multigraph::path(3);
        assert_eq!(p3.vertex_count(), 3);
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.multiplicity(0, 1), 1);
        assert_eq!(p3.multiplicity(1, 2), 1);

        assert_eq!(Multigraph::cycle(0), Multigraph::new(0));
        let c1 = Multigraph::cycle(1);
        assert_eq!((c1.vertex_count(), c1.loops_at(0)), (1, 1));
        let c2 = Multigraph::cycle(2);
        assert_eq!((c2.vertex_count(), c2.multiplicity(0, 1)), (2, 2));
        let c4 = Multigraph::cycle(4);
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert!((0..4).all(|v| c4.degree(v) == 2));
    }

    #[test]
    fn delete_keeps_vertices() {
        let p3 = Multigraph::path(3);
        let g = p3.delete_edge(&EdgeRef::new(1, 2, 0)).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.multiplicity(0, 1), 1);

        // deleting the loop of the 1-cycle leaves a single vertex
        let c1 = Multigraph::cycle(1);
        let g = c1.delete_edge(&EdgeRef::new(0, 0, 0)).unwrap();
        assert_eq!(g, Multigraph::new(1));

        // deleting one parallel copy of the 2-cycle leaves the 2-path
        let c2 = Multigraph::cycle(2);
        let g = c2.delete_edge(&EdgeRef::new(0, 1, 1)).unwrap();
        assert_eq!(g, Multigraph::path(2));
    }

    #[test]
    fn delete_missing_edge_errors() {
        let p2 = Multigraph::path(2);
        assert!(p2.delete_edge(&EdgeRef::new(0, 1, 1)).is_err());
        assert!(p2.delete_edge(&EdgeRef::new(0, 0, 0)).is_err());
        assert!(p2.delete_edge(&EdgeRef::new(0, 7, 0)).is_err());
    }

    #[test]
    fn contract_parallel_copy_leaves_loop() {
        // one copy of the double edge contracts to the loop graph
        let c2 = Multigraph::cycle(2);
        let g = c2.contract_edge(&EdgeRef::new(0, 1, 0)).unwrap();
        assert_eq!(g, Multigraph::cycle(1));
    }

    #[test]
    fn contract_loop_just_removes_it() {
        let c1 = Multigraph::cycle(1);
        let g = c1.contract_edge(&EdgeRef::new(0, 0, 0)).unwrap();
        assert_eq!(g, Multigraph::new(1));
    }

    #[test]
    fn contract_path_edge() {
        let p3 = Multigraph::path(3);
        let g = p3.contract_edge(&EdgeRef::new(0, 1, 0)).unwrap();
        assert_eq!(g, Multigraph::path(2));
    }

    #[test]
    fn contract_redirects_incidences() {
        // triangle: contracting one edge gives a double edge
        let c3 = Multigraph::cycle(3);
        let g = c3.contract_edge(&EdgeRef::new(0, 1, 0)).unwrap();
        assert_eq!(g, Multigraph::cycle(2));
    }

    #[test]
    fn extract_removes_endpoints() {
        let p2 = Multigraph::path(2);
        assert_eq!(p2.extract_edge(&EdgeRef::new(0, 1, 0)).unwrap(), Multigraph::new(0));

        let c1 = Multigraph::cycle(1);
        assert_eq!(c1.extract_edge(&EdgeRef::new(0, 0, 0)).unwrap(), Multigraph::new(0));

        let c4 = Multigraph::cycle(4);
        let g = c4.extract_edge(&EdgeRef::new(0, 1, 0)).unwrap();
        assert_eq!(g, Multigraph::path(2));
    }

    #[test]
    fn elimination_vertex_counts() {
        let c3 = Multigraph::cycle(3);
        let e = EdgeRef::new(1, 2, 0);
        assert_eq!(c3.delete_edge(&e).unwrap().vertex_count(), 3);
        assert_eq!(c3.contract_edge(&e).unwrap().vertex_count(), 2);
        assert_eq!(c3.extract_edge(&e).unwrap().vertex_count(), 1);
        // a loop loses one vertex under extraction
        let c1 = Multigraph::cycle(1);
        let l = EdgeRef::new(0, 0, 0);
        assert_eq!(c1.extract_edge(&l).unwrap().vertex_count(), 0);
        assert_eq!(c1.contract_edge(&l).unwrap().vertex_count(), 1);
    }

    #[test]
    fn components_split_and_relabel() {
        // P_2 plus an isolated vertex
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1);
        let comps = g.connected_components();
        assert_eq!(comps, vec![Multigraph::path(2), Multigraph::new(1)]);

        let c3 = Multigraph::cycle(3);
        assert_eq!(c3.connected_components(), vec![c3.clone()]);

        assert!(Multigraph::new(0).connected_components().is_empty());
    }

    #[test]
    fn components_preserve_vertex_total() {
        let mut g = Multigraph::new(7);
        g.add_edge(6, 2);
        g.add_edge(2, 4);
        g.add_edge(1, 3);
        g.add_edge(5, 5);
        let comps = g.connected_components();
        let total: usize = comps.iter().map(|c| c.vertex_count()).sum();
        assert_eq!(total, 7);
        // ordered by smallest original label: {0}, {1,3}, {2,4,6}, {5}
        assert_eq!(comps.len(), 4);
        assert_eq!(comps[0].vertex_count(), 1);
        assert_eq!(comps[1].vertex_count(), 2);
        assert_eq!(comps[2].vertex_count(), 3);
        assert_eq!(comps[3].loops_at(0), 1);
    }

    #[test]
    fn parse_round_trip() {
        let text = "# a triangle with a doubled edge\n4 4\n0 1\n1 2\n2 0\n\n0 1\n";
        let g = Multigraph::parse(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Multigraph::parse("3 1\n0 bad\n") {
            Err(GraphParseError::Invalid { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        match Multigraph::parse("2 1\n0 5\n") {
            Err(GraphParseError::Invalid { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected range error, got {:?}", other),
        }
        assert!(Multigraph::parse("").is_err());
        assert!(Multigraph::parse("2 2\n0 1\n").is_err());
        assert!(Multigraph::parse("1 0\n0 0\n").is_err());
    }
}
