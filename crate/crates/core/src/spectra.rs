//! Adjacency spectra and the trace-formula moment checks.

use serde::{Deserialize, Serialize};

use crate::chebyshev::v_eval;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Eigenvalue tolerance reported with every spectrum.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// Eigenvalues closer than this are grouped as one multiple eigenvalue.
pub const MULTIPLICITY_GAP: f64 = 1e-6;

const OFF_DIAGONAL_STOP: f64 = 1e-11;
const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Sorted in descending order.
    pub values: Vec<f64>,
    pub tol: f64,
}

impl Spectrum {
    /// `(value, multiplicity)` groups, descending.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        group(&self.values, MULTIPLICITY_GAP)
    }

    /// Compact form such as `3, 1x5, -2x4`.
    pub fn display(&self) -> String {
        self.multiplicities()
            .iter()
            .map(|&(v, m)| {
                let v = if v.abs() < 5e-10 { 0.0 } else { v };
                let r = v.round();
                let s = if (v - r).abs() < 1e-9 { format!("{r}") } else { format!("{v:.9}") };
                if m > 1 {
                    format!("{s}x{m}")
                } else {
                    s
                }
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Groups sorted-descending values whose neighbours differ by less than `gap`.
pub fn group(values: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((sum, count, last)) if (*last - v).abs() < gap => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter().map(|(s, c, _)| (s / c as f64, c)).collect()
}

/// Eigen-decomposition of a symmetric row-major `n x n` matrix by cyclic
/// Jacobi rotations.
///
/// Returns eigenvalues in descending order and the row-major matrix `Q`
/// whose column `i` is the eigenvector for value `i`.
pub fn symmetric_eigen(a: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < OFF_DIAGONAL_STOP {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                let apr = m[p * n + r];
                if apr.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[r * n + r] - m[p * n + p]) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let (mip, mir) = (m[i * n + p], m[i * n + r]);
                    m[i * n + p] = c * mip - s * mir;
                    m[i * n + r] = s * mip + c * mir;
                }
                for i in 0..n {
                    let (mpi, mri) = (m[p * n + i], m[r * n + i]);
                    m[p * n + i] = c * mpi - s * mri;
                    m[r * n + i] = s * mpi + c * mri;
                }
                for i in 0..n {
                    let (qip, qir) = (q[i * n + p], q[i * n + r]);
                    q[i * n + p] = c * qip - s * qir;
                    q[i * n + r] = s * qip + c * qir;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut sorted_q = vec![0.0; n * n];
    for (col, &i) in order.iter().enumerate() {
        for row in 0..n {
            sorted_q[row * n + col] = q[row * n + i];
        }
    }
    (values, sorted_q)
}

/// `max |A - Q diag(values) Q^T|`.
pub fn reconstruction_error(a: &[f64], n: usize, values: &[f64], q: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let r: f64 = (0..n).map(|l| q[i * n + l] * values[l] * q[j * n + l]).sum();
            worst = worst.max((a[i * n + j] - r).abs());
        }
    }
    worst
}

pub fn adjacency_spectrum(g: &Graph) -> Spectrum {
    let (values, _) = symmetric_eigen(&g.adjacency_matrix(), g.n());
    Spectrum { values, tol: SPECTRUM_TOL }
}

/// Second largest adjacency eigenvalue of a connected graph.
pub fn mu1(g: &Graph) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    if g.n() < 2 {
        return Err(Error::InvalidParameter("mu1 needs at least two vertices".into()));
    }
    Ok(adjacency_spectrum(g).values[1])
}

fn regular_degree(g: &Graph) -> Result<usize> {
    match g.is_regular() {
        Some(k) if k >= 2 => Ok(k),
        Some(k) => Err(Error::InvalidParameter(format!("degree {k} is too small for the trace formula"))),
        None => Err(Error::NotRegular),
    }
}

/// `S_m = (k - 1)^{m/2} sum_j V_m(mu_j / sqrt(k - 1))` for `m = 0..=m_max`.
///
/// Nonnegative for every regular graph; `S_m` counts non-backtracking closed
/// walks of length `m` up to lower-order corrections.
pub fn trace_formula_check(g: &Graph, m_max: usize) -> Result<Vec<f64>> {
    let k = regular_degree(g)?;
    let sp = adjacency_spectrum(g);
    Ok(trace_values(&sp.values, k, m_max))
}

pub fn trace_values(values: &[f64], k: usize, m_max: usize) -> Vec<f64> {
    let root = ((k - 1) as f64).sqrt();
    (0..=m_max)
        .map(|m| root.powi(m as i32) * values.iter().map(|mu| v_eval(m, mu / root)).sum::<f64>())
        .collect()
}

/// `(1 / n) sum_j V_m(mu_j / sqrt(k - 1))` for `m = 0..=m_max`: the moments
/// of the spectral measure against the `V` basis.
pub fn spectral_measure_moments(g: &Graph, m_max: usize) -> Result<Vec<f64>> {
    let k = regular_degree(g)?;
    let sp = adjacency_spectrum(g);
    let root = ((k - 1) as f64).sqrt();
    let n = g.n() as f64;
    Ok((0..=m_max)
        .map(|m| sp.values.iter().map(|mu| v_eval(m, mu / root)).sum::<f64>() / n)
        .collect())
}

pub fn is_connected(g: &Graph) -> bool {
    g.is_connected()
}

pub fn is_regular(g: &Graph) -> Option<usize> {
    g.is_regular()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn complete_graph() {
        let s = adjacency_spectrum(&complete(4));
        assert!(close(&s.values, &[3.0, -1.0, -1.0, -1.0], 1e-10));
        assert_eq!(s.multiplicities().len(), 2);
        assert_eq!(s.display(), "3, -1x3");
    }

    #[test]
    fn trace_and_moments_of_k4() {
        let t = trace_formula_check(&complete(4), 3).unwrap();
        assert!((t[0] - 4.0).abs() < 1e-10 && t[1].abs() < 1e-10);
        let mo = spectral_measure_moments(&complete(4), 3).unwrap();
        assert!((mo[0] - 1.0).abs() < 1e-12);
        let root = 2f64.sqrt();
        for m in 0..=3 {
            assert!((mo[m] * 4.0 * root.powi(m as i32) - t[m]).abs() < 1e-9);
        }
    }

    #[test]
    fn disconnected_and_irregular() {
        let mut g = Graph::new(6);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            g.add_edge(u, v);
        }
        assert!(matches!(mu1(&g), Err(Error::DisconnectedGraph)));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(trace_formula_check(&path, 4), Err(Error::NotRegular)));
    }

    #[test]
    fn reconstruction() {
        let a = complete(5).adjacency_matrix();
        let (v, q) = symmetric_eigen(&a, 5);
        assert!(reconstruction_error(&a, 5, &v, &q) < 1e-10);
    }
}
