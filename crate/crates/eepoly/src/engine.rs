//! The edge elimination recursion.
//!
//! `xi` of a multigraph is the unique polynomial with `xi(empty) = 1`,
//! `xi(single vertex) = x`, multiplicativity over disjoint unions, and
//!
//! ```text
//! xi(G) = xi(G - e)  +  y * xi(G / e)  +  z * xi(G † e)
//! ```
//!
//! for any edge `e` (deletion, contraction, extraction). The engine splits
//! connected components before choosing an edge and memoizes subproblems
//! under their canonical keys, so isomorphic subgraphs are expanded once.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::graph::{CanonicalKey, EdgeRef, Multigraph};
use crate::IntPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum XiError {
    /// The recursion is exponential; inputs beyond the configured vertex
    /// limit are rejected up front instead of hanging.
    #[error("graph has {vertices} vertices, above the configured limit {limit}")]
    VertexLimit { vertices: usize, limit: usize },
}

/// Deterministic rule choosing the edge to eliminate at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgePolicy {
    /// An edge at a minimum-degree vertex, smallest labels first. On paths
    /// this picks an end edge and keeps the recursion depth linear.
    MinDegree,
    /// Smallest edge in label order.
    FirstEdge,
    /// Largest edge in label order.
    LastEdge,
    /// Seeded pseudorandom choice; deterministic for a fixed seed.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XiOptions {
    pub memoize: bool,
    /// Upper bound on the vertex count of accepted inputs.
    pub max_vertices: usize,
    pub policy: EdgePolicy,
}

pub const DEFAULT_MAX_VERTICES: usize = 16;

impl Default for XiOptions {
    fn default() -> Self {
        XiOptions {
            memoize: true,
            max_vertices: DEFAULT_MAX_VERTICES,
            policy: EdgePolicy::MinDegree,
        }
    }
}

/// Counters from one `xi` computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct XiStats {
    /// Three-way expansions performed (base cases and cache hits excluded).
    pub recursion_nodes: u64,
    pub cache_hits: u64,
    pub peak_cache_size: usize,
}

/// Computes `xi` with the default options.
pub fn xi(g: &Multigraph) -> Result<IntPoly, XiError> {
    Engine::default().compute(g)
}

/// Computes `xi` and reports recursion counters.
pub fn xi_with_stats(g: &Multigraph) -> Result<(IntPoly, XiStats), XiError> {
    Engine::default().compute_with_stats(g)
}

type Cache = HashMap<CanonicalKey, IntPoly>;

/// Reusable computation context.
///
/// By default every `compute` call uses a fresh memo cache, which keeps
/// cache soundness easy to audit per call. [`Engine::with_shared_cache`]
/// opts into a cache that persists across calls and may be shared between
/// threads; identical keys always carry identical values, so concurrent
/// inserts are harmless.
#[derive(Debug, Default)]
pub struct Engine {
    options: XiOptions,
    shared: Option<Arc<Mutex<Cache>>>,
}

impl Engine {
    pub fn new(options: XiOptions) -> Self {
        Engine {
            options,
            shared: None,
        }
    }

    pub fn with_shared_cache(options: XiOptions) -> Self {
        Engine {
            options,
            shared: Some(Arc::new(Mutex::new(Cache::new()))),
        }
    }

    pub fn options(&self) -> &XiOptions {
        &self.options
    }

    pub fn compute(&self, g: &Multigraph) -> Result<IntPoly, XiError> {
        self.compute_with_stats(g).map(|(p, _)| p)
    }

    pub fn compute_with_stats(&self, g: &Multigraph) -> Result<(IntPoly, XiStats), XiError> {
        if g.vertex_count() > self.options.max_vertices {
            return Err(XiError::VertexLimit {
                vertices: g.vertex_count(),
                limit: self.options.max_vertices,
            });
        }
        let mut run = Run {
            options: self.options,
            local: Cache::new(),
            shared: self.shared.as_deref(),
            stats: XiStats::default(),
        };
        let value = run.product_over_components(g);
        let mut stats = run.stats;
        if run.shared.is_none() {
            stats.peak_cache_size = run.local.len();
        }
        Ok((value, stats))
    }
}

struct Run<'a> {
    options: XiOptions,
    local: Cache,
    shared: Option<&'a Mutex<Cache>>,
    stats: XiStats,
}

impl Run<'_> {
    fn cache_get(&mut self, key: &CanonicalKey) -> Option<IntPoly> {
        match self.shared {
            Some(shared) => shared.lock().expect("cache lock").get(key).cloned(),
            None => self.local.get(key).cloned(),
        }
    }

    fn cache_insert(&mut self, key: CanonicalKey, value: IntPoly) {
        let len = match self.shared {
            Some(shared) => {
                let mut cache = shared.lock().expect("cache lock");
                cache.insert(key, value);
                cache.len()
            }
            None => {
                self.local.insert(key, value);
                self.local.len()
            }
        };
        self.stats.peak_cache_size = self.stats.peak_cache_size.max(len);
    }

    /// Multiplicativity over disjoint union; isolated vertices contribute
    /// a factor of `x` each, the empty graph the empty product 1.
    fn product_over_components(&mut self, g: &Multigraph) -> IntPoly {
        let mut result = IntPoly::one();
        for comp in g.connected_components() {
            let factor = if comp.edge_count() == 0 {
                IntPoly::x()
            } else {
                self.connected(comp)
            };
            result = result * factor;
        }
        result
    }

    fn connected(&mut self, g: Multigraph) -> IntPoly {
        let key = if self.options.memoize {
            let key = g.canonical_key();
            if let Some(hit) = self.cache_get(&key) {
                self.stats.cache_hits += 1;
                return hit;
            }
            Some(key)
        } else {
            None
        };

        let e = self.select_edge(&g);
        self.stats.recursion_nodes += 1;
        let deleted = g.delete_edge(&e).expect("selected edge exists");
        let contracted = g.contract_edge(&e).expect("selected edge exists");
        let extracted = g.extract_edge(&e).expect("selected edge exists");

        let mut value = self.product_over_components(&deleted);
        value = value + IntPoly::y() * self.product_over_components(&contracted);
        value = value + IntPoly::z() * self.product_over_components(&extracted);

        if let Some(key) = key {
            self.cache_insert(key, value.clone());
        }
        value
    }

    fn select_edge(&self, g: &Multigraph) -> EdgeRef {
        match self.options.policy {
            EdgePolicy::MinDegree => {
                let v = (0..g.vertex_count())
                    .filter(|&v| g.degree(v) > 0)
                    .min_by_key(|&v| (g.degree(v), v))
                    .expect("connected graph with an edge");
                g.edge_multiplicities()
                    .filter(|&(a, b, _)| a == v || b == v)
                    .map(|(a, b, _)| EdgeRef::new(a, b, 0))
                    .next()
                    .expect("vertex of positive degree has an edge")
            }
            EdgePolicy::FirstEdge => {
                let (u, v, _) = g.edge_multiplicities().next().expect("graph has an edge");
                EdgeRef::new(u, v, 0)
            }
            EdgePolicy::LastEdge => {
                let (u, v, _) = g.edge_multiplicities().last().expect("graph has an edge");
                EdgeRef::new(u, v, 0)
            }
            EdgePolicy::Random { seed } => {
                let refs = g.edge_refs();
                let index = splitmix64(seed ^ self.stats.recursion_nodes) as usize % refs.len();
                refs[index]
            }
        }
    }
}

fn splitmix64(mut v: u64) -> u64 {
    v = v.wrapping_add(0x9E37_79B9_7F4A_7C15);
    v = (v ^ (v >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    v = (v ^ (v >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    v ^ (v >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use num_bigint::BigInt;

    fn poly(terms: &[(u32, u32, u32, i64)]) -> IntPoly {
        IntPoly::from_terms(
            terms
                .iter()
                .map(|&(a, b, c, k)| (Monomial::new(a, b, c), BigInt::from(k))),
        )
    }

    #[test]
    fn base_cases() {
        assert_eq!(xi(&Multigraph::new(0)).unwrap(), IntPoly::one());
        assert_eq!(xi(&Multigraph::new(1)).unwrap(), IntPoly::x());
    }

    #[test]
    fn single_loop() {
        // x + x*y + z
        let expected = poly(&[(1, 0, 0, 1), (1, 1, 0, 1), (0, 0, 1, 1)]);
        assert_eq!(xi(&Multigraph::cycle(1)).unwrap(), expected);
    }

    #[test]
    fn double_edge() {
        // x^2 + 2*x*y + x*y^2 + y*z + 2*z
        let expected = poly(&[
            (2, 0, 0, 1),
            (1, 1, 0, 2),
            (1, 2, 0, 1),
            (0, 1, 1, 1),
            (0, 0, 1, 2),
        ]);
        assert_eq!(xi(&Multigraph::cycle(2)).unwrap(), expected);
    }

    #[test]
    fn three_path() {
        let expected = poly(&[
            (3, 0, 0, 1),
            (2, 1, 0, 2),
            (1, 2, 0, 1),
            (1, 0, 1, 2),
            (0, 1, 1, 1),
        ]);
        assert_eq!(xi(&Multigraph::path(3)).unwrap(), expected);
    }

    #[test]
    fn triangle() {
        let expected = poly(&[
            (3, 0, 0, 1),
            (2, 1, 0, 3),
            (1, 2, 0, 3),
            (1, 3, 0, 1),
            (1, 0, 1, 3),
            (0, 1, 1, 3),
            (0, 2, 1, 1),
        ]);
        assert_eq!(xi(&Multigraph::cycle(3)).unwrap(), expected);
    }

    #[test]
    fn multiplicative_over_disjoint_union() {
        // P_2 plus a separate loop vertex in one graph
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1);
        g.add_edge(2, 2);
        let product = xi(&Multigraph::path(2)).unwrap() * xi(&Multigraph::cycle(1)).unwrap();
        assert_eq!(xi(&g).unwrap(), product);
    }

    #[test]
    fn stats_for_trivial_graphs() {
        let (value, stats) = xi_with_stats(&Multigraph::new(0)).unwrap();
        assert_eq!(value, IntPoly::one());
        assert_eq!(stats.recursion_nodes, 0);

        let (value, stats) = xi_with_stats(&Multigraph::new(1)).unwrap();
        assert_eq!(value, IntPoly::x());
        assert_eq!(stats.recursion_nodes, 0);
    }

    #[test]
    fn memoization_shrinks_the_tree() {
        let g = Multigraph::path(8);
        let (with_memo, stats_memo) = Engine::default().compute_with_stats(&g).unwrap();
        let engine = Engine::new(XiOptions {
            memoize: false,
            ..XiOptions::default()
        });
        let (without_memo, stats_plain) = engine.compute_with_stats(&g).unwrap();
        assert_eq!(with_memo, without_memo);
        assert!(stats_memo.recursion_nodes < stats_plain.recursion_nodes);
        assert!(stats_memo.cache_hits > 0);
        assert_eq!(stats_plain.cache_hits, 0);
        assert!(stats_memo.peak_cache_size > 0);
    }

    #[test]
    fn policies_agree() {
        let policies = [
            EdgePolicy::MinDegree,
            EdgePolicy::FirstEdge,
            EdgePolicy::LastEdge,
            EdgePolicy::Random { seed: 7 },
        ];
        let mut g = Multigraph::new(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)] {
            g.add_edge(u, v);
        }
        let reference = xi(&g).unwrap();
        for policy in policies {
            let engine = Engine::new(XiOptions {
                policy,
                ..XiOptions::default()
            });
            assert_eq!(engine.compute(&g).unwrap(), reference, "{:?}", policy);
        }
    }

    #[test]
    fn vertex_limit_guard() {
        let g = Multigraph::path(17);
        match xi(&g) {
            Err(XiError::VertexLimit { vertices, limit }) => {
                assert_eq!((vertices, limit), (17, 16));
            }
            other => panic!("expected guard error, got {:?}", other),
        }
        let engine = Engine::new(XiOptions {
            max_vertices: 20,
            ..XiOptions::default()
        });
        assert!(engine.compute(&g).is_ok());
    }

    #[test]
    fn shared_cache_reuses_results() {
        let engine = Engine::with_shared_cache(XiOptions::default());
        let g = Multigraph::path(6);
        let (first, _) = engine.compute_with_stats(&g).unwrap();
        let (second, stats) = engine.compute_with_stats(&g).unwrap();
        assert_eq!(first, second);
        // the whole graph is answered from the cache on the second run
        assert_eq!(stats.recursion_nodes, 0);
        assert!(stats.cache_hits > 0);
    }
}
