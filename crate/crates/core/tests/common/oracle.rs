//! Naive labelled-graph enumeration with isomorphism dedup, independent of the
//! library's generator and canonical forms.

use regbound::graph::Graph;

/// Every labelled k-regular graph on n vertices, one per edge set.
pub fn labelled_regular(k: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        k: usize,
        n: usize,
        deg: &mut Vec<usize>,
        adj: &mut Vec<Vec<bool>>,
        edges: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(u) = (0..n).find(|&u| deg[u] < k) else {
            out.push(edges.clone());
            return;
        };
        let start = edges.iter().rev().find(|e| e.0 == u).map_or(u + 1, |e| e.1 + 1);
        for v in start..n {
            if deg[v] < k && !adj[u][v] {
                deg[u] += 1;
                deg[v] += 1;
                adj[u][v] = true;
                adj[v][u] = true;
                edges.push((u, v));
                go(k, n, deg, adj, edges, out);
                edges.pop();
                adj[u][v] = false;
                adj[v][u] = false;
                deg[u] -= 1;
                deg[v] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(k, n, &mut vec![0; n], &mut vec![vec![false; n]; n], &mut Vec::new(), &mut out);
    out
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn connected(a: &[Vec<bool>]) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if a[u][v] && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Plain backtracking search for an isomorphism, independent of the library.
pub fn naive_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || (0..i).any(|p| a[i][p] != b[j][map[p]]) {
                continue;
            }
            map.push(j);
            used[j] = true;
            if extend(a, b, map, used) {
                return true;
            }
            used[j] = false;
            map.pop();
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

pub fn naive_classes(k: usize, n: usize) -> Vec<Vec<Vec<bool>>> {
    let mut reps: Vec<Vec<Vec<bool>>> = Vec::new();
    for edges in labelled_regular(k, n) {
        let a = adjacency(n, &edges);
        if connected(&a) && !reps.iter().any(|r| naive_isomorphic(r, &a)) {
            reps.push(a);
        }
    }
    reps
}

pub fn as_matrix(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}
