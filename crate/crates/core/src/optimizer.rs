//! Search for good `N`-term certificates `f = sum_{j=1}^{N} a_j V_j`.
//!
//! `V_0` is left out: adding a constant moves `M1`, `M2` and `c_0` together
//! and leaves the downshifted bound unchanged.
//!
//! Two searches run and the better certificate wins. Nelder-Mead works on
//! `a = exp(t) / |exp(t)|` from seeded random starts, with infeasible points
//! penalized by how far `sup_{I1} f` sits above zero. A cutting-plane linear
//! program then minimizes `f(L)` subject to `f <= -1` on a growing set of
//! points of `I1`, which lands on the exact optimum of the `f(L)` objective
//! whenever Nelder-Mead stalls on the feasibility boundary.

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::{certify, linear_bound, machine_bound, two_term_bound, BoundCertificate, IntervalSplit, Method};
use crate::chebyshev::{sup_on_interval, to_mono, v_eval, ChebCombo};
use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub terms: usize,
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub feasibility_margin: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            terms: 6,
            restarts: 64,
            seed: DEFAULT_SEED,
            max_iters: 2000,
            feasibility_margin: 1e-9,
        }
    }
}

impl OptimizerConfig {
    pub fn with_terms(terms: usize) -> Self {
        OptimizerConfig { terms, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.terms < 1 {
            return Err(Error::InvalidParameter("terms must be at least 1".into()));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidParameter("restarts must be at least 1".into()));
        }
        if !(self.feasibility_margin >= 0.0) {
            return Err(Error::InvalidParameter("feasibility margin must be nonnegative".into()));
        }
        Ok(())
    }
}

struct Objective {
    split: IntervalSplit,
    margin: f64,
}

impl Objective {
    /// Bound for a feasible point, otherwise a penalty above every feasible value.
    fn value(&self, a: &[f64]) -> f64 {
        let f = combo_from(a);
        let p = to_mono(&f);
        let (lo, hi) = self.split.i1();
        let m1 = match sup_on_interval(&p, lo, hi) {
            Ok((_, v)) => v,
            Err(_) => return f64::INFINITY,
        };
        if m1 >= -self.margin {
            return 1e6 * (1.0 + m1 + self.margin);
        }
        let m2 = match sup_on_interval(&p, self.split.z_scaled, self.split.l) {
            Ok((_, v)) => v,
            Err(_) => return f64::INFINITY,
        };
        (m2 - m1) / -m1
    }
}

fn combo_from(a: &[f64]) -> ChebCombo {
    let mut c = Vec::with_capacity(a.len() + 1);
    c.push(0.0);
    c.extend_from_slice(a);
    ChebCombo::new(c)
}

fn from_log(t: &[f64]) -> Vec<f64> {
    let hi = t.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = t.iter().map(|x| (x - hi).exp()).collect();
    let norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
    e.iter().map(|x| x / norm).collect()
}

fn unit(a: &[f64]) -> Vec<f64> {
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    a.iter().map(|x| x / norm).collect()
}

/// Adaptive Nelder-Mead on `g`, starting from a simplex around `x0`.
/// Returns the best point, its value, and the iterations used.
fn nelder_mead(
    g: &impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iters: usize,
) -> (Vec<f64>, f64, usize) {
    let n = x0.len();
    let nf = n as f64;
    let (alpha, gamma) = (1.0, 1.0 + 2.0 / nf);
    let rho = 0.75 - 1.0 / (2.0 * nf);
    let sigma = 1.0 - 1.0 / nf;

    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| g(p)).collect();

    let mut iters = 0;
    while iters < max_iters {
        iters += 1;
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b)));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[n] - vals[0];
        let size = pts[1..]
            .iter()
            .flat_map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if (spread.abs() <= 1e-13 * vals[0].abs().max(1.0)) && size < 1e-10 {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| pts[..n].iter().map(|p| p[j]).sum::<f64>() / nf)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&pts[n]).map(|(c, w)| c + t * (c - w)).collect()
        };

        let xr = along(alpha);
        let fr = g(&xr);
        if fr < vals[0] {
            let xe = along(alpha * gamma);
            let fe = g(&xe);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let x = along(alpha * rho);
            let v = g(&x);
            (x, v)
        } else {
            let x = along(-rho);
            let v = g(&x);
            (x, v)
        };
        if fc < vals[n].min(fr) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        for i in 1..=n {
            let p: Vec<f64> = pts[0].iter().zip(&pts[i]).map(|(b, x)| b + sigma * (x - b)).collect();
            vals[i] = g(&p);
            pts[i] = p;
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b]).then(a.cmp(&b))).unwrap();
    (pts[best].clone(), vals[best], iters)
}

/// One seeded restart: Nelder-Mead, then re-seeded simplices around the
/// incumbent until the iteration budget runs out or nothing improves.
fn restart(obj: &Objective, cfg: &OptimizerConfig, index: usize) -> (Vec<f64>, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let t0: Vec<f64> = (0..cfg.terms).map(|_| rng.gen_range(-3.0..1.0)).collect();
    let g = |t: &[f64]| obj.value(&from_log(t));

    let (mut best_t, mut best_v, used) = nelder_mead(&g, &t0, 1.0, cfg.max_iters);
    let mut left = cfg.max_iters.saturating_sub(used);
    let mut step = 0.5;
    while left > 0 && cfg.terms > 1 {
        let (t, v, used) = nelder_mead(&g, &best_t, step, left);
        left = left.saturating_sub(used.max(1));
        if v < best_v - 1e-12 * best_v.abs() {
            best_t = t;
            best_v = v;
        } else if step > 1e-4 {
            step *= 0.25;
        } else {
            break;
        }
    }
    (from_log(&best_t), best_v)
}

/// Local maxima of `f` on `[a, b]` (endpoints included).
fn local_maxima(f: &ChebCombo, a: f64, b: f64) -> Vec<(f64, f64)> {
    let p = to_mono(f);
    let dp = p.derivative();
    let mut xs = vec![a];
    xs.extend(dp.real_roots(a, b));
    xs.push(b);
    xs.into_iter().map(|x| (x, p.eval(x))).collect()
}

/// Cutting-plane LP: minimize `f(L)` with `f <= -1` on `I1`, `a_j >= 0`.
fn lp_polish(split: &IntervalSplit, terms: usize) -> Option<Vec<f64>> {
    const CAP: f64 = 1e8;
    const ROUNDS: usize = 60;
    let (lo, hi) = split.i1();
    let mut pts: Vec<f64> = (0..=32).map(|i| lo + (hi - lo) * i as f64 / 32.0).collect();
    let mut last = None;
    for _ in 0..ROUNDS {
        let mut lp = Problem::new(OptimizationDirection::Minimize);
        let vars: Vec<_> = (1..=terms).map(|j| lp.add_var(v_eval(j, split.l), (0.0, CAP))).collect();
        for &x in &pts {
            let mut e = LinearExpr::empty();
            for (j, v) in vars.iter().enumerate() {
                e.add(*v, v_eval(j + 1, x));
            }
            lp.add_constraint(e, ComparisonOp::Le, -1.0);
        }
        let sol = lp.solve().ok()?;
        let a: Vec<f64> = vars.iter().map(|v| sol[*v].max(0.0)).collect();
        let f = combo_from(&a);
        let mut added = false;
        for (x, v) in local_maxima(&f, lo, hi) {
            if v > -1.0 + 1e-11 && !pts.iter().any(|p| (p - x).abs() < 1e-13) {
                pts.push(x);
                added = true;
            }
        }
        last = Some(a);
        if !added {
            break;
        }
    }
    last.filter(|a| a.iter().any(|x| *x > 0.0))
}

/// Best `N`-term certificate found at `(k, z)`.
///
/// Restarts run in parallel; the winner is the lowest bound with ties broken
/// by restart index, so the result matches a sequential run bit for bit.
pub fn optimize_nterm(k: u32, z: f64, cfg: &OptimizerConfig) -> Result<BoundCertificate> {
    cfg.validate()?;
    if k < 3 {
        return Err(Error::InvalidParameter(format!("degree k = {k} must be at least 3")));
    }
    let ramanujan = 2.0 * ((k - 1) as f64).sqrt();
    if !(z < ramanujan) {
        return Err(Error::InvalidParameter(format!(
            "z = {z} must be below 2 sqrt(k - 1) = {ramanujan:.6}"
        )));
    }
    let split = IntervalSplit::new(k, z)?;
    let obj = Objective { split, margin: cfg.feasibility_margin };

    let runs: Vec<(Vec<f64>, f64)> =
        (0..cfg.restarts).into_par_iter().map(|i| restart(&obj, cfg, i)).collect();
    let mut candidates: Vec<Vec<f64>> = Vec::new();
    if let Some((a, _)) = runs
        .iter()
        .enumerate()
        .filter(|(_, (_, v))| v.is_finite() && *v < 1e6)
        .min_by(|(i, (_, v)), (j, (_, w))| v.total_cmp(w).then(i.cmp(j)))
        .map(|(_, r)| r)
    {
        candidates.push(a.clone());
    }
    if let Some(a) = lp_polish(&split, cfg.terms) {
        candidates.push(unit(&a));
    }

    let mut best: Option<BoundCertificate> = None;
    for a in candidates {
        let f = combo_from(&a);
        let cert = match certify(&f, k, z, Method::Nterm) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if cert.m1 > -cfg.feasibility_margin {
            continue;
        }
        if best.as_ref().map_or(true, |b| cert.vertex_bound < b.vertex_bound) {
            best = Some(cert);
        }
    }
    best.ok_or(Error::NoFeasiblePoint { k, z, terms: cfg.terms })
}

/// The best bound over every method that applies at `(k, z)`.
pub fn best_bound(k: u32, z: f64, cfg: &OptimizerConfig) -> Result<BoundCertificate> {
    let mut results: Vec<Result<BoundCertificate>> = Vec::new();
    if z < 0.0 {
        results.push(linear_bound(k, z));
    }
    let kf = k as f64;
    if z < (kf - 1.0) / kf {
        results.push(two_term_bound(k, z, None));
    }
    results.push(machine_bound(k, z, None, None));
    results.push(optimize_nterm(k, z, cfg));

    let mut best: Option<BoundCertificate> = None;
    let mut first_err = None;
    for r in results {
        match r {
            Ok(c) => {
                if best.as_ref().map_or(true, |b| c.vertex_bound < b.vertex_bound) {
                    best = Some(c);
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match (best, first_err) {
        (Some(c), _) => Ok(c),
        (None, Some(e)) => Err(e),
        (None, None) => Err(Error::Internal("no method ran".into())),
    }
}

/// [`best_bound`] for each `z`; errors stay with their entry.
pub fn table_bounds(k: u32, z_list: &[f64], cfg: &OptimizerConfig) -> Vec<Result<BoundCertificate>> {
    z_list.iter().map(|&z| best_bound(k, z, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(terms: usize) -> OptimizerConfig {
        OptimizerConfig { terms, restarts: 8, max_iters: 600, ..OptimizerConfig::default() }
    }

    #[test]
    fn nelder_mead_finds_a_quadratic_minimum() {
        let g = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2);
        let (x, v, _) = nelder_mead(&g, &[0.0, 0.0], 1.0, 2000);
        assert!(v < 1e-12 && (x[0] - 1.0).abs() < 1e-5 && (x[1] + 2.0).abs() < 1e-5);
    }

    #[test]
    fn single_term_is_the_linear_bound() {
        let c = optimize_nterm(3, -1.0, &quick(1)).unwrap();
        assert_eq!(c.vertex_bound_int, 4);
        assert_eq!(c.f.degree(), 1);
    }

    #[test]
    fn lp_reaches_known_optima() {
        let split = IntervalSplit::new(3, 1.0).unwrap();
        let a = lp_polish(&split, 5).unwrap();
        let c = certify(&combo_from(&a), 3, 1.0, Method::Nterm).unwrap();
        assert!((c.vertex_bound - 62.0 / 3.0).abs() < 1e-6, "{}", c.vertex_bound);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(optimize_nterm(3, 1.0, &OptimizerConfig { terms: 0, ..quick(1) }).is_err());
        assert!(optimize_nterm(3, 1.0, &OptimizerConfig { restarts: 0, ..quick(1) }).is_err());
        assert!(optimize_nterm(3, 3.0, &quick(3)).is_err());
    }

    #[test]
    fn no_feasible_point_near_the_threshold() {
        match optimize_nterm(3, 2.8, &quick(2)) {
            Err(Error::NoFeasiblePoint { terms: 2, .. }) => {}
            other => panic!("expected NoFeasiblePoint, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = optimize_nterm(3, 0.5, &quick(4)).unwrap();
        let b = optimize_nterm(3, 0.5, &quick(4)).unwrap();
        assert_eq!(a.f.coeffs(), b.f.coeffs());
    }
}
