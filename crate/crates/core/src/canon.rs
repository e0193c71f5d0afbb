//! Canonical forms: the lexicographically least row-major upper-triangle
//! adjacency bitstring over all vertex orderings.
//!
//! The search places vertices one position at a time. The unplaced vertices
//! sit in an ordered list of cells, each cell homogeneous with respect to
//! every placed vertex, so all bits of earlier rows are already fixed. The
//! vertex placed at position `p` must come from the first cell; it splits
//! every cell into non-neighbours followed by neighbours, which is the only
//! arrangement that can make row `p` minimal. Only candidates achieving the
//! least row are explored, prefixes worse than the best code so far are cut,
//! and automorphisms found from equal leaves prune equivalent siblings.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub const MAX_CANON_N: usize = 64;

/// Canonical adjacency bitstring packed MSB-first. Equal forms mean
/// isomorphic graphs, and for graphs of the same order byte order is the
/// lexicographic order of the bitstrings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bytes: Vec<u8>,
}

impl CanonicalForm {
    /// Packs rows as produced by [`code_rows`].
    pub fn from_rows(n: usize, rows: &[u64]) -> Self {
        let mut bytes = Vec::with_capacity((n * n.saturating_sub(1) / 2).div_ceil(8));
        let (mut acc, mut filled) = (0u8, 0);
        for (p, &row) in rows.iter().enumerate() {
            let len = n - 1 - p;
            for b in (0..len).rev() {
                acc = (acc << 1) | ((row >> b) & 1) as u8;
                filled += 1;
                if filled == 8 {
                    bytes.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            bytes.push(acc << (8 - filled));
        }
        CanonicalForm { n, bytes }
    }

    /// The canonically labelled graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.n;
        let mut g = Graph::new(n);
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.bytes[bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        g
    }
}

/// Row `p` of the code for the identity ordering: bit `n - 1 - q` holds the
/// edge `(p, q)` for `q > p`, so numeric order of rows is lexicographic order.
pub fn code_rows(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    (0..n)
        .map(|p| {
            let mut r = 0u64;
            for q in p + 1..n {
                r = (r << 1) | (rows[p] >> q & 1);
            }
            r
        })
        .collect()
}

struct Search<'a> {
    n: usize,
    adj: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
    code: Vec<u64>,
    placed: Vec<usize>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl Search<'_> {
    /// Splits the cells after placing `v`; returns the row and the new cells.
    fn refine(&self, cells: &[Vec<usize>], v: usize) -> (u64, Vec<Vec<usize>>) {
        let nb = self.adj[v];
        let mut row = 0u64;
        let mut out = Vec::with_capacity(cells.len() + 1);
        for (ci, cell) in cells.iter().enumerate() {
            let (mut lo, mut hi) = (Vec::new(), Vec::new());
            for &u in cell {
                if ci == 0 && u == v {
                    continue;
                }
                if nb >> u & 1 == 1 {
                    hi.push(u);
                } else {
                    lo.push(u);
                }
            }
            for _ in &lo {
                row <<= 1;
            }
            for _ in &hi {
                row = (row << 1) | 1;
            }
            if !lo.is_empty() {
                out.push(lo);
            }
            if !hi.is_empty() {
                out.push(hi);
            }
        }
        (row, out)
    }

    fn compare_prefix(&self, len: usize) -> std::cmp::Ordering {
        match &self.best {
            None => std::cmp::Ordering::Less,
            Some((b, _)) => self.code[..len].cmp(&b[..len]),
        }
    }

    /// Orbit representatives among `cands` under the found automorphisms
    /// that fix every placed vertex.
    fn same_orbit(&self, a: usize, b: usize) -> bool {
        let stab: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|g| self.placed.iter().all(|&x| g[x] == x))
            .collect();
        if stab.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        for g in stab {
            for x in 0..self.n {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, g[x]));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }

    fn leaf(&mut self) {
        match self.compare_prefix(self.n) {
            std::cmp::Ordering::Less => {
                self.best = Some((self.code.clone(), self.placed.clone()));
            }
            std::cmp::Ordering::Equal => {
                let (_, bp) = self.best.as_ref().unwrap();
                let mut g = vec![0; self.n];
                for (i, &b) in bp.iter().enumerate() {
                    g[b] = self.placed[i];
                }
                if g.iter().enumerate().any(|(i, &x)| i != x) && !self.autos.contains(&g) {
                    self.autos.push(g);
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let p = self.placed.len();
        if p == self.n {
            self.leaf();
            return;
        }
        let options: Vec<(usize, u64, Vec<Vec<usize>>)> = cells[0]
            .iter()
            .map(|&v| {
                let (row, next) = self.refine(&cells, v);
                (v, row, next)
            })
            .collect();
        let least = options.iter().map(|o| o.1).min().unwrap();
        self.code[p] = least;
        if self.compare_prefix(p + 1) == std::cmp::Ordering::Greater {
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for (v, row, next) in options {
            if row != least {
                continue;
            }
            if tried.iter().any(|&t| self.same_orbit(t, v)) {
                continue;
            }
            tried.push(v);
            self.code[p] = least;
            if self.compare_prefix(p + 1) == std::cmp::Ordering::Greater {
                return;
            }
            self.placed.push(v);
            self.descend(next);
            self.placed.pop();
        }
    }
}

/// Canonical form plus the ordering realizing it (`order[p]` is the vertex
/// at position `p`).
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    assert!(n <= MAX_CANON_N, "canonical forms support at most {MAX_CANON_N} vertices");
    if n == 0 {
        return (CanonicalForm { n: 0, bytes: Vec::new() }, Vec::new());
    }
    let adj: Vec<u64> = (0..n).map(|u| g.row_word(u)).collect();

    // Twins give transposition automorphisms for free.
    let mut autos = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            let mask = !((1u64 << u) | (1u64 << w));
            if adj[u] & mask == adj[w] & mask {
                let mut t: Vec<usize> = (0..n).collect();
                t.swap(u, w);
                autos.push(t);
            }
        }
    }

    let mut s = Search { n, adj: &adj, best: None, autos, code: vec![0; n], placed: Vec::with_capacity(n) };
    s.descend(vec![(0..n).collect()]);
    let (rows, order) = s.best.expect("search reaches a leaf");
    (CanonicalForm::from_rows(n, &rows), order)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Canonical rows as numbers, for comparison with [`code_rows`].
pub fn canonical_rows(rows: &[u64]) -> Vec<u64> {
    let g = Graph::from_rows(rows);
    let (_, order) = canonical_labeling(&g);
    let mut pos = vec![0; rows.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    code_rows(&(0..rows.len()).map(|p| relabel_row(rows, &order, &pos, p)).collect::<Vec<_>>())
}

fn relabel_row(rows: &[u64], order: &[usize], pos: &[usize], p: usize) -> u64 {
    let v = order[p];
    let mut r = 0u64;
    for u in 0..rows.len() {
        if rows[v] >> u & 1 == 1 {
            r |= 1 << pos[u];
        }
    }
    r
}

/// Whether the identity ordering already gives the canonical code.
pub fn is_canonical(rows: &[u64]) -> bool {
    code_rows(rows) == canonical_rows(rows)
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::atlas_graph;

    /// Least code over every permutation, by brute force.
    fn brute(g: &Graph) -> CanonicalForm {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<CanonicalForm> = None;
        loop {
            let rows: Vec<u64> = (0..n)
                .map(|p| {
                    let mut r = 0u64;
                    for q in 0..n {
                        if g.has_edge(perm[p], perm[q]) {
                            r |= 1 << q;
                        }
                    }
                    r
                })
                .collect();
            let f = CanonicalForm::from_rows(n, &code_rows(&rows));
            if best.as_ref().map_or(true, |b| f < *b) {
                best = Some(f);
            }
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        best.unwrap()
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        for name in ["K4", "K33", "Y2_prism", "octahedron", "C7_12", "G7", "K5", "cube", "wagner"] {
            let g = atlas_graph(name).unwrap().graph;
            assert_eq!(canonical_form(&g), brute(&g), "{name}");
        }
        let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(canonical_form(&path), brute(&path));
        let odd = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (4, 5)]).unwrap();
        assert_eq!(canonical_form(&odd), brute(&odd));
    }

    #[test]
    fn round_trip_through_graph() {
        let g = atlas_graph("petersen").unwrap().graph;
        let f = canonical_form(&g);
        assert_eq!(canonical_form(&f.to_graph()), f);
        assert!(isomorphic(&g, &f.to_graph()));
    }

    #[test]
    fn wagner_is_the_mobius_ladder() {
        let w = atlas_graph("wagner").unwrap().graph;
        let c = atlas_graph("circulant(8;1,4)").unwrap().graph;
        assert_eq!(canonical_form(&w), canonical_form(&c));
        assert_ne!(
            canonical_form(&atlas_graph("K33").unwrap().graph),
            canonical_form(&atlas_graph("Y2_prism").unwrap().graph)
        );
    }

    #[test]
    fn canonical_rows_are_canonical() {
        let g = atlas_graph("cube").unwrap().graph;
        let f = canonical_form(&g).to_graph();
        let rows: Vec<u64> = (0..f.n()).map(|u| f.row_word(u)).collect();
        assert!(is_canonical(&rows));
        let g_rows: Vec<u64> = (0..g.n()).map(|u| g.row_word(u)).collect();
        assert_eq!(CanonicalForm::from_rows(8, &canonical_rows(&g_rows)), canonical_form(&g));
    }
}
