//! Exhaustive generation of connected regular graphs, and classification of
//! those with small second eigenvalue.
//!
//! The generator fills the adjacency matrix row by row. When row `i` is
//! chosen, the later vertices fall into runs with the same adjacency to
//! `0..i`; vertices in one run are interchangeable so far, and only the last
//! members of each run are ever chosen as neighbours. Every graph has a
//! labelling of this shape (its canonical one), so keeping the leaves that
//! equal their own canonical form yields each isomorphism class once.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atlas::atlas_all;
use crate::bound::{BoundCertificate, Method};
use crate::canon::{canonical_form, code_rows, is_canonical, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::optimizer::{best_bound, OptimizerConfig};
use crate::spectra::adjacency_spectrum;

pub const MAX_ENUM_N: usize = 32;

/// Largest vertex count `classify` enumerates unless told otherwise.
pub const DEFAULT_BUDGET: usize = 12;

/// `mu_1 <= z + MU1_SLACK` counts as `mu_1 <= z`.
pub const MU1_SLACK: f64 = 1e-9;

/// Survivors this close to the threshold are flagged for inspection.
pub const BORDERLINE: f64 = 1e-7;

/// Rows fixed before the search fans out across threads.
const SPLIT_ROWS: usize = 3;

struct Gen {
    n: usize,
    k: usize,
    rows: Vec<u64>,
    deg: Vec<usize>,
}

impl Gen {
    fn link(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
        self.rows[j] |= 1 << i;
        self.deg[i] += 1;
        self.deg[j] += 1;
    }

    fn unlink(&mut self, i: usize, j: usize) {
        self.rows[i] &= !(1 << j);
        self.rows[j] &= !(1 << i);
        self.deg[i] -= 1;
        self.deg[j] -= 1;
    }

    /// Runs `[start, end)` of later vertices with equal adjacency to `0..i`.
    fn classes(&self, i: usize) -> Vec<(usize, usize)> {
        let mask = (1u64 << i) - 1;
        let mut out: Vec<(usize, usize)> = Vec::new();
        for j in i + 1..self.n {
            match out.last_mut() {
                Some((s, e)) if self.rows[*s] & mask == self.rows[j] & mask => *e = j + 1,
                _ => out.push((j, j + 1)),
            }
        }
        out
    }

    fn feasible_after(&self, i: usize) -> bool {
        let slots = self.n.saturating_sub(i + 2);
        (i + 1..self.n).all(|j| self.k - self.deg[j] <= slots)
    }

    /// Chooses row `i`, calling `next` for each completed choice.
    fn choose_row(&mut self, i: usize, next: &mut dyn FnMut(&mut Gen)) {
        let need = self.k - self.deg[i];
        let classes = self.classes(i);
        self.pick(i, &classes, 0, need, next);
    }

    fn pick(
        &mut self,
        i: usize,
        classes: &[(usize, usize)],
        ci: usize,
        left: usize,
        next: &mut dyn FnMut(&mut Gen),
    ) {
        if left == 0 {
            if self.feasible_after(i) {
                next(self);
            }
            return;
        }
        if ci == classes.len() {
            return;
        }
        let capacity: usize = classes[ci..]
            .iter()
            .filter(|(s, _)| self.deg[*s] < self.k)
            .map(|(s, e)| e - s)
            .sum();
        if capacity < left {
            return;
        }
        let (s, e) = classes[ci];
        let most = if self.deg[s] < self.k { (e - s).min(left) } else { 0 };
        for c in 0..=most {
            for j in e - c..e {
                self.link(i, j);
            }
            self.pick(i, classes, ci + 1, left - c, next);
            for j in e - c..e {
                self.unlink(i, j);
            }
        }
    }

    fn run(&mut self, i: usize, out: &mut Vec<Vec<u64>>) {
        if i == self.n {
            if connected(&self.rows) && is_canonical(&self.rows) {
                out.push(self.rows.clone());
            }
            return;
        }
        self.choose_row(i, &mut |g: &mut Gen| g.run(i + 1, out));
    }

    fn prefixes(&mut self, i: usize, stop: usize, out: &mut Vec<(Vec<u64>, Vec<usize>)>) {
        if i == stop || i == self.n {
            out.push((self.rows.clone(), self.deg.clone()));
            return;
        }
        self.choose_row(i, &mut |g: &mut Gen| g.prefixes(i + 1, stop, out));
    }
}

fn connected(rows: &[u64]) -> bool {
    let n = rows.len();
    if n == 0 {
        return true;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[u];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == all
}

fn check_enum(k: usize, n: usize) -> Result<()> {
    if n * k % 2 == 1 {
        return Err(Error::InvalidParameter(format!("no {k}-regular graph on {n} vertices: n k is odd")));
    }
    if n <= k {
        return Err(Error::InvalidParameter(format!("need n > k, got n = {n}, k = {k}")));
    }
    if n > MAX_ENUM_N {
        return Err(Error::InvalidParameter(format!("enumeration supports n <= {MAX_ENUM_N}")));
    }
    Ok(())
}

/// One graph per isomorphism class of connected `k`-regular graphs on `n`
/// vertices, each canonically labelled, in ascending canonical order.
///
/// The search is split on its first rows and the parts run in parallel;
/// the merged, sorted output does not depend on the thread count.
pub fn enumerate_regular(k: usize, n: usize) -> Result<Vec<Graph>> {
    check_enum(k, n)?;
    let mut root = Gen { n, k, rows: vec![0; n], deg: vec![0; n] };
    let mut starts = Vec::new();
    root.prefixes(0, SPLIT_ROWS.min(n), &mut starts);
    let mut found: Vec<Vec<u64>> = starts
        .into_par_iter()
        .flat_map_iter(|(rows, deg)| {
            let mut g = Gen { n, k, rows, deg };
            let mut out = Vec::new();
            g.run(SPLIT_ROWS.min(n), &mut out);
            out
        })
        .collect();
    found.sort_by_cached_key(|r| code_rows(r));
    Ok(found.iter().map(|r| Graph::from_rows(r)).collect())
}

/// Compares an externally produced list of graphs with the generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub k: usize,
    pub n: usize,
    pub external: usize,
    pub external_distinct: usize,
    pub generated: usize,
    pub missing_from_external: Vec<String>,
    pub missing_from_generated: Vec<String>,
    pub rejected: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.external == self.external_distinct
            && self.external_distinct == self.generated
            && self.missing_from_external.is_empty()
            && self.missing_from_generated.is_empty()
            && self.rejected.is_empty()
    }
}

/// Checks `graphs` (all of one order and degree) against [`enumerate_regular`].
pub fn cross_check(graphs: &[Graph]) -> Result<CrossCheck> {
    let first = graphs.first().ok_or_else(|| Error::InvalidParameter("no graphs to check".into()))?;
    let n = first.n();
    let k = first.is_regular().ok_or(Error::NotRegular)?;
    let mut rejected = Vec::new();
    let mut ext: Vec<CanonicalForm> = Vec::new();
    for g in graphs {
        if g.n() != n || g.is_regular() != Some(k) || !g.is_connected() {
            rejected.push(graph6::encode(g));
            continue;
        }
        ext.push(canonical_form(g));
    }
    ext.sort();
    ext.dedup();
    let gen: Vec<CanonicalForm> = enumerate_regular(k, n)?.iter().map(canonical_form).collect();
    let show = |f: &CanonicalForm| graph6::encode(&f.to_graph());
    Ok(CrossCheck {
        k,
        n,
        external: graphs.len(),
        external_distinct: ext.len(),
        generated: gen.len(),
        missing_from_external: gen.iter().filter(|f| ext.binary_search(f).is_err()).map(show).collect(),
        missing_from_generated: ext.iter().filter(|f| gen.binary_search(f).is_err()).map(show).collect(),
        rejected,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Survivor {
    pub n: usize,
    pub graph6: String,
    pub mu1: f64,
    pub atlas: Option<String>,
    pub borderline: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountAtN {
    pub n: usize,
    pub graphs: usize,
    pub survivors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub k: usize,
    pub z: f64,
    /// Largest vertex count enumerated.
    pub n_max: usize,
    /// Best vertex bound available at `(k, z)`, and the method behind it.
    pub bound_used: Option<u64>,
    pub bound_method: Option<Method>,
    /// True when `n_max` reaches the vertex bound, so the survivor list is
    /// the full answer rather than a partial one.
    pub complete: bool,
    pub counts: Vec<CountAtN>,
    pub survivors: Vec<Survivor>,
    /// Order of the largest survivor.
    pub max_survivor_n: Option<usize>,
    pub violations: Vec<String>,
}

impl ClassificationReport {
    pub fn survivor_names(&self) -> Vec<Option<String>> {
        self.survivors.iter().map(|s| s.atlas.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Enumerate up to this order instead of the vertex bound.
    pub n_max: Option<usize>,
    /// Most vertices this run may enumerate.
    pub budget: usize,
    /// Refuse with [`Error::BudgetExceeded`] instead of stopping at the budget.
    pub strict: bool,
    pub optimizer: OptimizerConfig,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { n_max: None, budget: DEFAULT_BUDGET, strict: true, optimizer: OptimizerConfig::default() }
    }
}

/// Every connected `k`-regular graph with `mu_1 <= z` on at most `n_max`
/// vertices; `n_max` defaults to the best vertex bound, refused when that
/// exceeds [`DEFAULT_BUDGET`].
pub fn classify(k: usize, z: f64, n_max: Option<usize>) -> Result<ClassificationReport> {
    let budget = n_max.unwrap_or(0).max(DEFAULT_BUDGET);
    classify_with(k, z, &ClassifyOptions { n_max, budget, ..ClassifyOptions::default() })
}

pub fn classify_with(k: usize, z: f64, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("degree k = {k} must be at least 3")));
    }
    let ramanujan = 2.0 * ((k - 1) as f64).sqrt();
    if !(z < ramanujan) {
        return Err(Error::InvalidParameter(format!(
            "z = {z} must be below 2 sqrt(k - 1) = {ramanujan:.6}; infinitely many graphs qualify"
        )));
    }
    let cert: BoundCertificate = best_bound(k as u32, z, &opts.optimizer)?;
    let bound = cert.vertex_bound_int;
    let target = opts.n_max.unwrap_or(bound as usize);
    let n_max = if target > opts.budget {
        if opts.strict {
            return Err(Error::BudgetExceeded { required: target as u64, budget: opts.budget });
        }
        opts.budget
    } else {
        target
    };
    let n_max = n_max.min(MAX_ENUM_N);

    let atlas: Vec<(CanonicalForm, String)> = atlas_all(Some(k))
        .into_iter()
        .map(|e| (canonical_form(&e.graph), e.name))
        .collect();

    let mut counts = Vec::new();
    let mut survivors = Vec::new();
    let mut violations = Vec::new();
    for n in k + 1..=n_max {
        if n * k % 2 == 1 {
            continue;
        }
        let graphs = enumerate_regular(k, n)?;
        let mut kept = 0;
        for g in &graphs {
            let sp = adjacency_spectrum(g);
            let mu1 = sp.values[1];
            if mu1 > z + MU1_SLACK {
                continue;
            }
            kept += 1;
            if !g.is_connected() || g.is_regular() != Some(k) {
                violations.push(format!("{} is not a connected {k}-regular graph", graph6::encode(g)));
            }
            let form = canonical_form(g);
            survivors.push(Survivor {
                n,
                graph6: graph6::encode(g),
                mu1,
                atlas: atlas.iter().find(|(f, _)| *f == form).map(|(_, name)| name.clone()),
                borderline: (mu1 - z).abs() < BORDERLINE,
            });
        }
        counts.push(CountAtN { n, graphs: graphs.len(), survivors: kept });
    }
    let max_survivor_n = survivors.iter().map(|s| s.n).max();
    Ok(ClassificationReport {
        k,
        z,
        n_max,
        bound_used: Some(bound),
        bound_method: Some(cert.method),
        complete: n_max as u64 >= bound,
        counts,
        survivors,
        max_survivor_n,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_regular(3, 4).unwrap().len(), 1);
        assert_eq!(enumerate_regular(3, 6).unwrap().len(), 2);
        assert_eq!(enumerate_regular(3, 8).unwrap().len(), 5);
        assert_eq!(enumerate_regular(4, 5).unwrap().len(), 1);
        assert_eq!(enumerate_regular(4, 6).unwrap().len(), 1);
        assert_eq!(enumerate_regular(4, 7).unwrap().len(), 2);
        assert_eq!(enumerate_regular(2, 7).unwrap().len(), 1);
    }

    #[test]
    fn rejects_impossible_orders() {
        assert!(enumerate_regular(3, 7).is_err());
        assert!(enumerate_regular(4, 4).is_err());
    }

    #[test]
    fn output_is_sorted_and_canonical() {
        let gs = enumerate_regular(3, 10).unwrap();
        assert_eq!(gs.len(), 19);
        let forms: Vec<_> = gs.iter().map(canonical_form).collect();
        assert!(forms.windows(2).all(|w| w[0] < w[1]));
        for (g, f) in gs.iter().zip(&forms) {
            assert_eq!(&f.to_graph(), g);
        }
    }

    #[test]
    fn connectivity_bitset() {
        assert!(connected(&[0b10, 0b01]));
        assert!(!connected(&[0b10, 0b01, 0]));
    }
}
