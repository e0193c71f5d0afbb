//! Named small regular graphs with their known spectra.
//!
//! The thirteen fixed entries are every connected cubic and quartic graph
//! with `mu_1 <= 1` named in the classification. Edge lists are 1-indexed.
//! The drawings for `G9` and `paley9` carry each other's spectra, so each
//! entry takes the other drawing's edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::spectra::{adjacency_spectrum, group, Spectrum, MULTIPLICITY_GAP};

/// Residual and value tolerance for spectrum checks.
pub const MATCH_TOL: f64 = 1e-7;

/// One expected eigenvalue block: either a plain value, or every root of a
/// monic polynomial (monomial coefficients, constant first), each with the
/// same multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Eigen {
    Value { value: f64, mult: usize },
    Roots { poly: Vec<f64>, mult: usize },
}

impl Eigen {
    fn count(&self) -> usize {
        match self {
            Eigen::Value { mult, .. } => *mult,
            Eigen::Roots { poly, mult } => (poly.len() - 1) * mult,
        }
    }
}

fn residual(poly: &[f64], x: f64) -> f64 {
    poly.iter().rev().fold(0.0, |acc, c| acc * x + c).abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Cubic,
    Quartic,
    Family,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub name: String,
    pub degree: usize,
    pub graph: Graph,
    /// `mu_1` itself, or a polynomial it is a root of.
    pub expected_mu1: Eigen,
    pub expected_spectrum: Vec<Eigen>,
    pub source: Source,
}

impl AtlasEntry {
    pub fn graph6(&self) -> String {
        graph6::encode(&self.graph)
    }

    /// Checks a computed spectrum against the expected multiset.
    pub fn check_spectrum(&self, sp: &Spectrum) -> std::result::Result<(), String> {
        match_spectrum(&self.expected_spectrum, sp)
    }

    pub fn check_mu1(&self, mu1: f64) -> bool {
        match &self.expected_mu1 {
            Eigen::Value { value, .. } => (mu1 - value).abs() < MATCH_TOL,
            Eigen::Roots { poly, .. } => residual(poly, mu1) < MATCH_TOL,
        }
    }
}

/// Matches `sp` to `expected`: every computed eigenvalue is assigned to a
/// value within [`MATCH_TOL`] or to a polynomial with residual below it, and
/// every block gets exactly its multiplicity (each distinct root of a
/// polynomial block appearing `mult` times).
pub fn match_spectrum(expected: &[Eigen], sp: &Spectrum) -> std::result::Result<(), String> {
    let total: usize = expected.iter().map(Eigen::count).sum();
    if total != sp.values.len() {
        return Err(format!("expected {total} eigenvalues, got {}", sp.values.len()));
    }
    let mut buckets: Vec<Vec<f64>> = vec![Vec::new(); expected.len()];
    for &x in &sp.values {
        let slot = expected.iter().position(|e| match e {
            Eigen::Value { value, .. } => (x - value).abs() < MATCH_TOL,
            Eigen::Roots { poly, .. } => residual(poly, x) < MATCH_TOL,
        });
        match slot {
            Some(i) => buckets[i].push(x),
            None => return Err(format!("eigenvalue {x:.10} matches no expected value")),
        }
    }
    for (e, got) in expected.iter().zip(&buckets) {
        match e {
            Eigen::Value { value, mult } => {
                if got.len() != *mult {
                    return Err(format!("{value} has multiplicity {}, expected {mult}", got.len()));
                }
            }
            Eigen::Roots { poly, mult } => {
                let groups = group(got, MULTIPLICITY_GAP);
                if groups.len() != poly.len() - 1 || groups.iter().any(|(_, m)| m != mult) {
                    return Err(format!(
                        "roots of {poly:?}: found groups {groups:?}, expected {} roots x{mult}",
                        poly.len() - 1
                    ));
                }
            }
        }
    }
    Ok(())
}

fn val(value: f64, mult: usize) -> Eigen {
    Eigen::Value { value, mult }
}

fn roots(poly: &[f64], mult: usize) -> Eigen {
    Eigen::Roots { poly: poly.to_vec(), mult }
}

/// Parses `12 15 5-10 ...`: two digits, or `a-b` for larger labels.
fn one_indexed(n: usize, sp: &str) -> Graph {
    let edges: Vec<(usize, usize)> = sp
        .split_whitespace()
        .map(|t| {
            let (a, b) = match t.split_once('-') {
                Some((a, b)) => (a.parse::<usize>().unwrap(), b.parse::<usize>().unwrap()),
                None => {
                    let d: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
                    (d[0], d[1])
                }
            };
            (a - 1, b - 1)
        })
        .collect();
    Graph::from_edges(n, &edges).expect("atlas edge list is simple")
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g
}

/// `C(n; S)`: vertex `i` adjacent to `i +- s (mod n)` for each `s` in `S`.
pub fn circulant(n: usize, connections: &[usize]) -> Result<Graph> {
    let mut g = Graph::new(n);
    for &s in connections {
        if s == 0 || s > n / 2 {
            return Err(Error::InvalidParameter(format!("connection {s} must lie in 1..={}", n / 2)));
        }
        for i in 0..n {
            let j = (i + s) % n;
            if !g.has_edge(i, j) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Eigenvalues of `C(n; S)`: `sum_s 2 cos(2 pi j s / n)`, with `s = n/2`
/// contributing `cos` once.
pub fn circulant_spectrum(n: usize, connections: &[usize]) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|j| {
            connections
                .iter()
                .map(|&s| {
                    let c = (2.0 * std::f64::consts::PI * (j * s) as f64 / n as f64).cos();
                    if 2 * s == n {
                        c
                    } else {
                        2.0 * c
                    }
                })
                .sum()
        })
        .collect();
    v.sort_by(|a: &f64, b| b.total_cmp(a));
    v
}

pub const FIXED_NAMES: [&str; 13] = [
    "K4", "K33", "Y2_prism", "cube", "wagner", "petersen", "K5", "octahedron", "C7_12", "G7", "K44",
    "G9", "paley9",
];

fn fixed(name: &str) -> Option<AtlasEntry> {
    let s2 = 2f64.sqrt();
    let (degree, graph, mu1, spectrum) = match name {
        "K4" => (3, complete(4), val(-1.0, 1), vec![val(3.0, 1), val(-1.0, 3)]),
        "K33" => (3, complete_bipartite(3, 3), val(0.0, 1), vec![val(3.0, 1), val(0.0, 4), val(-3.0, 1)]),
        "Y2_prism" => (
            3,
            one_indexed(6, "12 13 14 23 25 36 45 46 56"),
            val(1.0, 1),
            vec![val(3.0, 1), val(1.0, 1), val(0.0, 2), val(-2.0, 2)],
        ),
        "cube" => (
            3,
            one_indexed(8, "12 13 15 24 26 34 37 48 56 57 68 78"),
            val(1.0, 1),
            vec![val(3.0, 1), val(1.0, 3), val(-1.0, 3), val(-3.0, 1)],
        ),
        "wagner" => (
            3,
            one_indexed(8, "12 18 15 23 26 34 37 45 48 56 67 78"),
            val(1.0, 1),
            vec![val(3.0, 1), val(1.0, 2), val(s2 - 1.0, 2), val(-1.0, 1), val(-1.0 - s2, 2)],
        ),
        "petersen" => (
            3,
            one_indexed(10, "12 15 16 23 27 34 38 45 49 5-10 68 69 79 7-10 8-10"),
            val(1.0, 1),
            vec![val(3.0, 1), val(1.0, 5), val(-2.0, 4)],
        ),
        "K5" => (4, complete(5), val(-1.0, 1), vec![val(4.0, 1), val(-1.0, 4)]),
        "octahedron" => (
            4,
            one_indexed(6, "12 13 15 16 23 24 26 34 35 45 46 56"),
            val(0.0, 1),
            vec![val(4.0, 1), val(0.0, 3), val(-2.0, 2)],
        ),
        "C7_12" => (
            4,
            one_indexed(7, "12 13 16 17 23 24 27 34 35 45 46 56 57 67"),
            roots(&[-1.0, -1.0, 2.0, 1.0], 1),
            vec![val(4.0, 1), roots(&[-1.0, -1.0, 2.0, 1.0], 2)],
        ),
        "G7" => (
            4,
            one_indexed(7, "12 15 16 17 23 24 26 34 35 37 47 45 56 67"),
            val(1.0, 1),
            vec![val(4.0, 1), val(1.0, 1), val(0.0, 2), val(-1.0, 2), val(-3.0, 1)],
        ),
        "K44" => (4, complete_bipartite(4, 4), val(0.0, 1), vec![val(4.0, 1), val(0.0, 6), val(-4.0, 1)]),
        "G9" => (
            4,
            one_indexed(9, "12 17 18 19 23 24 26 34 38 39 45 47 56 58 59 67 69 78"),
            val(1.0, 1),
            vec![val(4.0, 1), val(1.0, 2), roots(&[-1.0, 0.0, 3.0, 1.0], 2)],
        ),
        "paley9" => (
            4,
            one_indexed(9, "12 16 17 19 23 28 29 34 37 38 45 47 49 56 58 59 67 68"),
            val(1.0, 1),
            vec![val(4.0, 1), val(1.0, 4), val(-2.0, 4)],
        ),
        _ => return None,
    };
    Some(AtlasEntry {
        name: name.to_string(),
        degree,
        graph,
        expected_mu1: mu1,
        expected_spectrum: spectrum,
        source: if degree == 3 { Source::Cubic } else { Source::Quartic },
    })
}

fn parse_args(s: &str) -> Option<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn family(name: &str) -> Result<Option<AtlasEntry>> {
    let bad = || Error::InvalidParameter(format!("malformed family name `{name}`"));
    let entry = |name: String, graph: Graph, spectrum: Vec<f64>| -> Result<AtlasEntry> {
        let degree = graph
            .is_regular()
            .ok_or_else(|| Error::Internal(format!("{name} is not regular")))?;
        let mu1 = spectrum.get(1).copied().unwrap_or(f64::NAN);
        let mut expected = Vec::new();
        for (v, m) in group(&spectrum, MULTIPLICITY_GAP) {
            expected.push(val(v, m));
        }
        Ok(AtlasEntry {
            name,
            degree,
            graph,
            expected_mu1: val(mu1, 1),
            expected_spectrum: expected,
            source: Source::Family,
        })
    };

    if let Some(rest) = name.strip_prefix("Kbip(").and_then(|r| r.strip_suffix(')')) {
        let a = parse_args(rest).ok_or_else(bad)?;
        if a.len() != 2 || a[0] != a[1] || a[0] == 0 {
            return Err(Error::InvalidParameter("Kbip takes two equal positive sizes".into()));
        }
        let n = a[0];
        let mut sp = vec![n as f64];
        sp.extend(std::iter::repeat(0.0).take(2 * n - 2));
        sp.push(-(n as f64));
        return entry(format!("Kbip({n},{n})"), complete_bipartite(n, n), sp).map(Some);
    }
    if let Some(rest) = name.strip_prefix("circulant(").and_then(|r| r.strip_suffix(')')) {
        let (n, s) = rest.split_once(';').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let s = parse_args(s).ok_or_else(bad)?;
        let g = circulant(n, &s)?;
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let sp = circulant_spectrum(n, &s);
        let label = s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        return entry(format!("circulant({n};{label})"), g, sp).map(Some);
    }
    let k_arg = name
        .strip_prefix("K(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix('K').filter(|r| r.chars().all(|c| c.is_ascii_digit())));
    if let Some(rest) = k_arg {
        let n: usize = rest.trim().parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(Error::InvalidParameter("K(n) needs n >= 2".into()));
        }
        let mut sp = vec![(n - 1) as f64];
        sp.extend(std::iter::repeat(-1.0).take(n - 1));
        return entry(format!("K({n})"), complete(n), sp).map(Some);
    }
    Ok(None)
}

/// Looks up a fixed entry by name, or builds a family member from
/// `K(n)`, `Kbip(n,n)` or `circulant(n;s1,s2,...)`.
pub fn atlas_graph(name: &str) -> Result<AtlasEntry> {
    if let Some(e) = fixed(name) {
        return Ok(e);
    }
    family(name)?.ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The fixed entries, optionally only those of degree `k`.
pub fn atlas_all(k: Option<usize>) -> Vec<AtlasEntry> {
    FIXED_NAMES
        .iter()
        .filter_map(|n| fixed(n))
        .filter(|e| k.map_or(true, |k| e.degree == k))
        .collect()
}

/// Computes the spectrum of `entry` and checks it against the expected one.
pub fn verify(entry: &AtlasEntry) -> std::result::Result<Spectrum, String> {
    let sp = adjacency_spectrum(&entry.graph);
    entry.check_spectrum(&sp)?;
    if !entry.check_mu1(sp.values[1]) {
        return Err(format!("mu1 = {} does not match", sp.values[1]));
    }
    Ok(sp)
}
