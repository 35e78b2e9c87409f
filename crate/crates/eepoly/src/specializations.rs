//! The three specializations of `xi` and independent combinatorial oracles.
//!
//! Substitution identities:
//! - bivariate matching polynomial `M(G,x,y) = xi(G, x, 0, y)` for loop-free `G`,
//! - bivariate chromatic polynomial `P(G,x,y) = xi(G, x, -1, x-y)`,
//! - covered components polynomial `C(G,x,y,z) = xi(G, x, y, xyz - xy)`.
//!
//! Every oracle here enumerates the defining combinatorial objects
//! directly (matchings, colorings, edge subsets) and is exponential by
//! design: a trusted baseline for desk-scale graphs, not an algorithm.

use num_bigint::BigInt;
use thiserror::Error;

use crate::engine::{Engine, XiError};
use crate::graph::Multigraph;
use crate::poly::Monomial;
use crate::IntPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    /// Matching and coloring polynomials are only defined loop-free.
    #[error("graph has loops; this polynomial requires a loop-free graph")]
    LoopsPresent,
    /// The proper-color budget cannot exceed the total color budget.
    #[error("proper-color budget {y_val} exceeds color budget {x_val}")]
    ColorBudget { x_val: u64, y_val: u64 },
    #[error(transparent)]
    Engine(#[from] XiError),
}

/// Bivariate matching polynomial: `xi(G, x, 0, y)`, with the third `xi`
/// variable renamed to `y`. Output lives in `x` and `y` only.
pub fn matching_poly(g: &Multigraph) -> Result<IntPoly, SpecError> {
    if g.has_loops() {
        return Err(SpecError::LoopsPresent);
    }
    let p = xi(g)?;
    Ok(p
        .substitute(&IntPoly::x(), &IntPoly::zero(), &IntPoly::y())
        .expect("variable substitution cannot overflow"))
}

/// Matching oracle: sums `x^(uncovered vertices) * y^(matching size)` over
/// all matchings, enumerated by backtracking. Parallel copies of an edge
/// count as distinct single-edge matchings.
pub fn oracle_matching(g: &Multigraph) -> Result<IntPoly, SpecError> {
    if g.has_loops() {
        return Err(SpecError::LoopsPresent);
    }
    let pairs: Vec<(usize, usize, usize)> = g.edge_multiplicities().collect();
    let n = g.vertex_count();
    let mut acc = IntPoly::zero();
    let mut covered = vec![false; n];

    fn walk(
        pairs: &[(usize, usize, usize)],
        index: usize,
        size: u32,
        ways: u64,
        covered: &mut Vec<bool>,
        n: usize,
        acc: &mut IntPoly,
    ) {
        if index == pairs.len() {
            let uncovered = n as u32 - 2 * size;
            *acc += &IntPoly::term(Monomial::new(uncovered, size, 0), BigInt::from(ways));
            return;
        }
        let (u, v, m) = pairs[index];
        walk(pairs, index + 1, size, ways, covered, n, acc);
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            walk(pairs, index + 1, size + 1, ways * m as u64, covered, n, acc);
            covered[u] = false;
            covered[v] = false;
        }
    }
    walk(&pairs, 0, 0, 1, &mut covered, n, &mut acc);
    Ok(acc)
}

/// Bivariate chromatic polynomial: `xi(G, x, -1, x - y)`.
pub fn bivariate_chromatic(g: &Multigraph) -> Result<IntPoly, SpecError> {
    let p = xi(g)?;
    Ok(p
        .substitute(
            &IntPoly::x(),
            &IntPoly::constant(BigInt::from(-1)),
            &(IntPoly::x() - IntPoly::y()),
        )
        .expect("variable substitution cannot overflow"))
}

/// Coloring oracle: counts maps from vertices to `{1..x_val}` in which no
/// edge is monochromatic in a color from `{1..y_val}` (the proper colors).
pub fn oracle_chromatic2(g: &Multigraph, x_val: u64, y_val: u64) -> Result<u64, SpecError> {
    if y_val > x_val {
        return Err(SpecError::ColorBudget { x_val, y_val });
    }
    if g.has_loops() {
        return Err(SpecError::LoopsPresent);
    }
    Ok(count_colorings(g, x_val, |color| color <= y_val))
}

/// Classical proper-coloring count with `k` colors.
pub fn oracle_chromatic(g: &Multigraph, k: u64) -> Result<u64, SpecError> {
    if g.has_loops() {
        return Err(SpecError::LoopsPresent);
    }
    Ok(count_colorings(g, k, |_| true))
}

/// Backtracking count of vertex colorings; an edge may not have both
/// endpoints in the same color when `forbidden` holds for that color.
fn count_colorings(g: &Multigraph, colors: u64, forbidden: impl Fn(u64) -> bool) -> u64 {
    let n = g.vertex_count();
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v, _) in g.edge_multiplicities() {
        debug_assert_ne!(u, v);
        earlier[u.max(v)].push(u.min(v));
    }

    fn assign(
        v: usize,
        n: usize,
        colors: u64,
        earlier: &[Vec<usize>],
        forbidden: &impl Fn(u64) -> bool,
        chosen: &mut Vec<u64>,
    ) -> u64 {
        if v == n {
            return 1;
        }
        let mut total = 0;
        for color in 1..=colors {
            let clash = forbidden(color) && earlier[v].iter().any(|&w| chosen[w] == color);
            if clash {
                continue;
            }
            chosen[v] = color;
            total += assign(v + 1, n, colors, earlier, forbidden, chosen);
        }
        total
    }
    let mut chosen = vec![0u64; n];
    assign(0, n, colors, &earlier, &forbidden, &mut chosen)
}

/// Covered components polynomial: `xi(G, x, y, xyz - xy)`.
pub fn covered_components(g: &Multigraph) -> Result<IntPoly, SpecError> {
    let p = xi(g)?;
    let xyz_minus_xy = IntPoly::x() * IntPoly::y() * IntPoly::z() - IntPoly::x() * IntPoly::y();
    Ok(p
        .substitute(&IntPoly::x(), &IntPoly::y(), &xyz_minus_xy)
        .expect("small substitution cannot overflow"))
}

/// Edge-subset oracle: sums
/// `x^(components) * y^(subset size) * z^(components containing an edge)`
/// over all subsets of edge copies. Loops count as edges and cover their
/// component.
pub fn oracle_covered(g: &Multigraph) -> IntPoly {
    let refs = g.edge_refs();
    let n = g.vertex_count();
    let mut acc = IntPoly::zero();
    let mut chosen: Vec<usize> = Vec::new();

    fn walk(
        g: &Multigraph,
        refs: &[crate::graph::EdgeRef],
        index: usize,
        chosen: &mut Vec<usize>,
        n: usize,
        acc: &mut IntPoly,
    ) {
        if index == refs.len() {
            let mut dsu = Dsu::new(n);
            for &k in chosen.iter() {
                dsu.union(refs[k].u, refs[k].v);
            }
            let mut covered = vec![false; n];
            for &k in chosen.iter() {
                covered[dsu.find(refs[k].u)] = true;
            }
            let components = (0..n).filter(|&v| dsu.find(v) == v).count() as u32;
            let covered_count = (0..n)
                .filter(|&v| dsu.find(v) == v && covered[v])
                .count() as u32;
            *acc += &IntPoly::term(
                Monomial::new(components, chosen.len() as u32, covered_count),
                BigInt::from(1),
            );
            return;
        }
        walk(g, refs, index + 1, chosen, n, acc);
        chosen.push(index);
        walk(g, refs, index + 1, chosen, n, acc);
        chosen.pop();
    }
    walk(g, &refs, 0, &mut chosen, n, &mut acc);
    acc
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
