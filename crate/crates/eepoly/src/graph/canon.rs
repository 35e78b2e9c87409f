//! Exact canonical form for multigraphs.
//!
//! The key is the lexicographically maximal adjacency encoding over all
//! vertex orderings compatible with an iterated degree refinement. Two
//! steps:
//!
//! 1. Refinement: vertices start colored by `(loop count, degree)` and are
//!    recolored by the multiset of `(neighbor color, multiplicity)` pairs
//!    until the partition stabilizes. Colors are ranked by value, never by
//!    discovery order, so the partition is label-independent.
//! 2. Search: positions are filled cell by cell; each candidate contributes
//!    the row `loops, mult-to-placed...`. Branches whose prefix falls below
//!    the best complete code are cut.
//!
//! Because the search ranges over every ordering within each cell, the
//! resulting code depends only on the isomorphism class, and the code
//! reconstructs the graph, so keys are equal exactly for isomorphic inputs.

use super::{CanonicalKey, Multigraph};

pub(crate) fn canonical_key(g: &Multigraph) -> CanonicalKey {
    let n = g.vertex_count();
    let mut bytes = Vec::with_capacity(4 + 2 * n * (n + 3));
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    if n == 0 {
        return CanonicalKey(bytes);
    }

    // multiplicity matrix; diagonal holds loop counts
    let mut mat = vec![vec![0u32; n]; n];
    for (u, v, m) in g.edge_multiplicities() {
        let m = m as u32;
        if u == v {
            mat[u][u] = m;
        } else {
            mat[u][v] = m;
            mat[v][u] = m;
        }
    }

    let colors = refine(n, &mat);
    let cells = cells_in_color_order(n, &colors);

    let mut search = Search {
        n,
        mat: &mat,
        cells,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        code: Vec::with_capacity(n * (n + 1) / 2 + n),
        best: None,
    };
    search.run(0);
    let best = search.best.expect("search visits at least one ordering");

    for value in best {
        bytes.extend_from_slice(&value.to_le_bytes());
    }
    CanonicalKey(bytes)
}

/// Iterated refinement; returns a stable coloring as ranks `0..k`.
fn refine(n: usize, mat: &[Vec<u32>]) -> Vec<usize> {
    // initial color: (loops, degree)
    let initial: Vec<(u32, u32)> = (0..n)
        .map(|v| {
            let degree: u32 = (0..n)
                .map(|w| if w == v { 2 * mat[v][v] } else { mat[v][w] })
                .sum();
            (mat[v][v], degree)
        })
        .collect();
    let mut colors = rank_by_value(&initial);
    let mut distinct = count_distinct(&colors);

    loop {
        let signatures: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut adj: Vec<(usize, u32)> = (0..n)
                    .filter(|&w| w != v && mat[v][w] > 0)
                    .map(|w| (colors[w], mat[v][w]))
                    .collect();
                adj.sort_unstable();
                (colors[v], adj)
            })
            .collect();
        let next = rank_by_value(&signatures);
        let next_distinct = count_distinct(&next);
        if next_distinct == distinct {
            return next;
        }
        colors = next;
        distinct = next_distinct;
    }
}

/// Dense ranks of the values, ordered by the values themselves.
fn rank_by_value<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("value present"))
        .collect()
}

fn count_distinct(ranks: &[usize]) -> usize {
    ranks.iter().max().map_or(0, |&m| m + 1)
}

/// Vertices grouped by color rank, cells in ascending rank order.
fn cells_in_color_order(n: usize, colors: &[usize]) -> Vec<Vec<usize>> {
    let k = count_distinct(colors);
    let mut cells = vec![Vec::new(); k];
    for v in 0..n {
        cells[colors[v]].push(v);
    }
    cells
}

struct Search<'a> {
    n: usize,
    mat: &'a [Vec<u32>],
    cells: Vec<Vec<usize>>,
    placed: Vec<usize>,
    used: Vec<bool>,
    code: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    /// Cell owning the given position; positions are filled blockwise.
    fn cell_of_position(&self, pos: usize) -> usize {
        let mut offset = 0;
        for (i, cell) in self.cells.iter().enumerate() {
            offset += cell.len();
            if pos < offset {
                return i;
            }
        }
        unreachable!("position within vertex range")
    }

    fn row(&self, v: usize) -> Vec<u32> {
        let mut row = Vec::with_capacity(self.placed.len() + 1);
        row.push(self.mat[v][v]);
        for &w in &self.placed {
            row.push(self.mat[v][w]);
        }
        row
    }

    fn run(&mut self, pos: usize) {
        if pos == self.n {
            if self.best.as_ref().is_none_or(|b| self.code > *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        let cell_index = self.cell_of_position(pos);
        let mut candidates: Vec<(Vec<u32>, usize)> = self.cells[cell_index]
            .iter()
            .copied()
            .filter(|&v| !self.used[v])
            .map(|v| (self.row(v), v))
            .collect();
        // largest row first: finds strong codes early, tightens pruning
        candidates.sort_unstable_by(|a, b| b.cmp(a));

        for (row, v) in candidates {
            let len_before = self.code.len();
            self.code.extend_from_slice(&row);
            // cut branches that already fell below the best complete code
            let viable = match &self.best {
                Some(best) => self.code.as_slice() >= &best[..self.code.len()],
                None => true,
            };
            if viable {
                self.used[v] = true;
                self.placed.push(v);
                self.run(pos + 1);
                self.placed.pop();
                self.used[v] = false;
            }
            self.code.truncate(len_before);
        }
    }
}
