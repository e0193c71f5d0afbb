//! Vertex bounds from Chebyshev-positive certificate functions.
//!
//! Every bound here rests on the same inequality. Let `nu` be the spectral
//! measure of a connected `k`-regular graph on `n` vertices (uniform mass on
//! `mu_j / sqrt(k - 1)`), `L = k / sqrt(k - 1)` and `z' = z / sqrt(k - 1)`.
//! For `f = sum c_j V_j` with `c_j >= 0` the trace formula gives
//! `int f dnu >= 0`. If `f - c_0 < 0` on `I1 = [-L, z']` then
//!
//! ```text
//! nu(I2) >= (c_0 - M1) / (M2 - M1),   M_i = sup_{I_i} f,
//! ```
//!
//! and when `mu_1 <= z` only `mu_0 = k` lies above `z'`, so `nu(I2) = 1 / n`
//! and `n <= (M2 - M1) / (c_0 - M1)`.

use serde::{Deserialize, Serialize};

use crate::chebyshev::{alpha, sup_combo, to_mono, v_eval, ChebCombo, MonoPoly};
use crate::error::{Error, Result};

/// Relative widening applied to `M1`, `M2` (up) and `c_0` (down) before the
/// final division.
pub const WIDEN: f64 = 1e-9;

/// Minimum gap required between `z / sqrt(k - 1)` and `alpha_m`.
pub const ALPHA_GAP: f64 = 1e-12;

/// Coefficients this close to zero (relative to the largest one) are treated
/// as rounding noise around an exact zero.
const NOISE: f64 = 1e-12;


/// End margin for the shift search over `(0, alpha_m - z')`.
pub const SHIFT_MARGIN: f64 = 1e-6;

const GOLDEN_ITERS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Linear,
    TwoTerm,
    Nterm,
    Machine,
    Downshift,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Linear => "linear",
            Method::TwoTerm => "two_term",
            Method::Nterm => "nterm",
            Method::Machine => "machine",
            Method::Downshift => "downshift",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A reproducible record of one bound computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub k: u32,
    pub z: f64,
    pub method: Method,
    /// The certificate function in the `V` basis.
    pub f: ChebCombo,
    pub s: Option<f64>,
    pub m: Option<u32>,
    pub m1: f64,
    pub m2: f64,
    pub c0: f64,
    /// Real upper bound on the vertex count, rounded up.
    pub vertex_bound: f64,
    /// Integer bound, `floor(vertex_bound)` (vertex counts are integers).
    pub vertex_bound_int: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundCertificate {
    /// The spectral-mass constant `C = 1 / vertex_bound`.
    pub fn constant(&self) -> f64 {
        1.0 / self.vertex_bound
    }
}

/// `I1 = [-L, z']`, `I2 = [z', L]` for a given `(k, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalSplit {
    pub l: f64,
    pub z_scaled: f64,
}

impl IntervalSplit {
    pub fn new(k: u32, z: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("degree k = {k} must be at least 2")));
        }
        if !z.is_finite() {
            return Err(Error::InvalidParameter(format!("z = {z} is not finite")));
        }
        let root = ((k - 1) as f64).sqrt();
        let l = k as f64 / root;
        let z_scaled = z / root;
        if !(z_scaled >= -l && z_scaled < l) {
            return Err(Error::InvalidParameter(format!(
                "z = {z} is outside [-k, k) for k = {k}"
            )));
        }
        Ok(IntervalSplit { l, z_scaled })
    }

    pub fn i1(&self) -> (f64, f64) {
        (-self.l, self.z_scaled)
    }

    pub fn i2(&self) -> (f64, f64) {
        (self.z_scaled, self.l)
    }
}

fn check_params(k: u32, z: f64) -> Result<IntervalSplit> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("degree k = {k} must be at least 3")));
    }
    let ramanujan = 2.0 * ((k - 1) as f64).sqrt();
    if !(z < ramanujan) {
        return Err(Error::InvalidParameter(format!(
            "z = {z} must be below 2 sqrt(k - 1) = {ramanujan:.6}; no finite bound exists"
        )));
    }
    IntervalSplit::new(k, z)
}

fn widen_up(x: f64) -> f64 {
    x + WIDEN * x.abs().max(f64::MIN_POSITIVE)
}

fn widen_down(x: f64) -> f64 {
    x - WIDEN * x.abs().max(f64::MIN_POSITIVE)
}

/// `floor`, except that a value within `1e-9` (relative) below an integer
/// keeps that integer. Only ever rounds the bound up, so it stays valid.
pub fn integer_bound(bound: f64) -> u64 {
    (bound + 1e-9 * bound.max(1.0)).floor() as u64
}

/// Zeroes coefficients that are rounding noise around an exact zero and
/// rejects genuinely negative ones.
fn clean_nonnegative(mut coeffs: Vec<f64>, what: &str, noise: f64) -> Result<Vec<f64>> {
    let scale = coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    for c in coeffs.iter_mut() {
        if *c < 0.0 {
            if *c >= -noise * scale.max(1.0) {
                *c = 0.0;
            } else {
                return Err(Error::Internal(format!("{what} produced a negative coefficient {c}")));
            }
        }
    }
    Ok(coeffs)
}

/// `F_m = sum_{j=0}^{m} V_{2j}`, which equals `V_m^2`.
pub fn f_big(m: usize) -> ChebCombo {
    assert!(m >= 1, "f_big needs m >= 1");
    let mut c = vec![0.0; 2 * m + 1];
    for j in 0..=m {
        c[2 * j] = 1.0;
    }
    ChebCombo::new(c)
}

/// `F_m / (x - alpha_m)` from the closed-form coefficients
/// `c_{2q} = sum_{i=0}^{m-1-q} V_{2i+1}(alpha_m)` and
/// `c_{2q+1} = sum_{i=0}^{m-1-q} V_{2i}(alpha_m)`.
pub fn f_hat(m: usize) -> ChebCombo {
    assert!(m >= 1, "f_hat needs m >= 1");
    let a = alpha(m);
    let vals: Vec<f64> = (0..2 * m).map(|j| v_eval(j, a)).collect();
    let mut c = vec![0.0; 2 * m];
    for q in 0..m {
        c[2 * q] = (0..m - q).map(|i| vals[2 * i + 1]).sum();
        c[2 * q + 1] = (0..m - q).map(|i| vals[2 * i]).sum();
    }
    // c_0 = V_{m-1}(alpha_m) V_m(alpha_m) = 0 exactly; the sum leaves only noise.
    let c = clean_nonnegative(c, "f_hat", NOISE).expect("f_hat coefficients are nonnegative");
    ChebCombo::new(c)
}

/// `Y_m = V_m^2 / (x - alpha_m)` by synthetic division.
///
/// `V_m^2` is formed in the monomial basis and converted back exactly (its
/// coefficients are integers); the division then runs in the `V` basis via
/// `x V_j = V_{j+1} + V_{j-1}`, which keeps the quotient accurate for large `m`.
pub fn y_poly(m: usize) -> Result<ChebCombo> {
    if m < 1 {
        return Err(Error::InvalidParameter("y_poly needs m >= 1".into()));
    }
    let vm = to_mono(&ChebCombo::basis(m));
    let f = crate::chebyshev::from_mono(&vm.mul(&vm));
    let a = alpha(m);
    let d = f.degree();
    // (x - a) sum q_j V_j has V_j coefficient q_{j-1} + q_{j+1} - a q_j.
    let mut q = vec![0.0; d + 1];
    for j in (1..=d).rev() {
        q[j - 1] = f.coeff(j) - q.get(j + 1).copied().unwrap_or(0.0) + a * q[j];
    }
    let rem = f.coeff(0) - (q[1] - a * q[0]);
    let scale: f64 = f.coeffs().iter().map(|c| c.abs()).sum();
    if rem.abs() > 1e-10 * scale {
        return Err(Error::Internal(format!(
            "alpha_{m} is not a root of V_{m}^2 (remainder {rem:e})"
        )));
    }
    q.truncate(d);
    Ok(ChebCombo::new(clean_nonnegative(q, "y_poly", NOISE)?))
}

/// Re-expands `x -> c(x + s)` in the `V` basis.
///
/// Uses `V_j(x + s) = (x + s) V_{j-1}(x + s) - V_{j-2}(x + s)` together with
/// `x V_i = V_{i+1} + V_{i-1}`; for nonnegative input and `s > 0` every output
/// coefficient is nonnegative.
pub fn shift_expand(c: &ChebCombo, s: f64) -> Result<ChebCombo> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter(format!("shift s = {s} must be positive")));
    }
    if !c.is_nonnegative() {
        return Err(Error::InvalidParameter(
            "shift_expand needs nonnegative coefficients".into(),
        ));
    }
    let deg = c.degree();
    let mut out = vec![0.0; deg + 1];
    // eps[j][i]: coefficient of V_i(x) in V_j(x + s)
    let mut prev: Vec<f64> = vec![1.0];
    out[0] += c.coeff(0);
    if deg >= 1 {
        let mut cur = vec![s, 1.0];
        for (i, v) in cur.iter().enumerate() {
            out[i] += c.coeff(1) * v;
        }
        for j in 2..=deg {
            let mut next = vec![0.0; j + 1];
            for i in 0..=j {
                let mut v = 0.0;
                if i >= 1 && i - 1 < cur.len() {
                    v += cur[i - 1];
                }
                if i + 1 < cur.len() {
                    v += cur[i + 1];
                }
                if i < cur.len() {
                    v += s * cur[i];
                }
                if i < prev.len() {
                    v -= prev[i];
                }
                next[i] = v;
            }
            let cj = c.coeff(j);
            if cj != 0.0 {
                for (i, v) in next.iter().enumerate() {
                    out[i] += cj * v;
                }
            }
            prev = std::mem::replace(&mut cur, next);
        }
    }
    Ok(ChebCombo::new(clean_nonnegative(out, "shift_expand", NOISE)?))
}

/// Turns a nonnegative certificate into a vertex bound at `(k, z)`.
///
/// Requires `f - c_0 < 0` on `I1`; the bound is
/// `(M2 - M1) / (c_0 - M1)` with `M1`, `M2` widened up and `c_0` down.
pub fn bound_from_function(f: &ChebCombo, k: u32, z: f64) -> Result<BoundCertificate> {
    certify(f, k, z, Method::Downshift)
}

pub(crate) fn certify(f: &ChebCombo, k: u32, z: f64, method: Method) -> Result<BoundCertificate> {
    let split = check_params(k, z)?;
    if !f.is_nonnegative() {
        return Err(Error::InvalidParameter(
            "certificate coefficients must be nonnegative".into(),
        ));
    }
    let mono = to_mono(f);
    let (lo, hi) = split.i1();
    let (_, m1) = crate::chebyshev::sup_on_interval(&mono, lo, hi)?;
    let (_, m2) = crate::chebyshev::sup_on_interval(&mono, split.z_scaled, split.l)?;
    let c0 = f.coeff(0);

    let (m1u, m2u, c0d) = (widen_up(m1), widen_up(m2), widen_down(c0));
    if !(m1u < c0d) {
        return Err(Error::InfeasibleCertificate(format!(
            "sup of f - c0 on [{lo:.6}, {hi:.6}] is {:.3e}, not negative",
            m1 - c0
        )));
    }
    let vertex_bound = ((m2u - m1u) / (c0d - m1u)).next_up();
    Ok(BoundCertificate {
        k,
        z,
        method,
        f: f.clone(),
        s: None,
        m: None,
        m1,
        m2,
        c0,
        vertex_bound,
        vertex_bound_int: integer_bound(vertex_bound),
        notes: Vec::new(),
    })
}

/// Least `m >= 1` with `z / sqrt(k - 1) < alpha_m`.
///
/// Starts from `ceil(pi / arccos(z / (2 sqrt(k - 1)))) - 1`, bumped by one when
/// the quotient is an integer, then checks strictness directly.
pub fn m_min(k: u32, z: f64) -> Result<usize> {
    let split = check_params(k, z)?;
    let zs = split.z_scaled;
    let r = zs / 2.0;
    let mut m = if r <= -1.0 {
        1
    } else {
        let q = std::f64::consts::PI / r.acos();
        let rounded = q.round();
        let base = if (q - rounded).abs() < 1e-12 { rounded } else { q.ceil() - 1.0 };
        (base.max(1.0)) as usize
    };
    while alpha(m) - zs <= ALPHA_GAP {
        m += 1;
    }
    while m > 1 && alpha(m - 1) - zs > ALPHA_GAP {
        m -= 1;
    }
    Ok(m)
}

/// The shifted `F_hat_m` bound `F_hat_m(L + s) / c_0(s)`.
///
/// `m` defaults to [`m_min`]; `s` defaults to a golden-section search over
/// `(0, alpha_m - z')` with [`SHIFT_MARGIN`] end margins, keeping the best
/// sampled point.
pub fn machine_bound(k: u32, z: f64, m: Option<usize>, s: Option<f64>) -> Result<BoundCertificate> {
    let split = check_params(k, z)?;
    let m = match m {
        Some(0) => return Err(Error::InvalidParameter("m must be at least 1".into())),
        Some(m) => m,
        None => m_min(k, z)?,
    };
    let gap = alpha(m) - split.z_scaled;
    if gap <= ALPHA_GAP {
        return Err(Error::InvalidParameter(format!(
            "alpha_{m} = {:.6} does not exceed z / sqrt(k - 1) = {:.6}",
            alpha(m),
            split.z_scaled
        )));
    }
    let fh = f_hat(m);
    let s = match s {
        Some(s) => {
            if !(s > 0.0 && s < gap) {
                return Err(Error::InvalidParameter(format!(
                    "shift s = {s} must lie in (0, {gap:.6})"
                )));
            }
            s
        }
        None => best_shift(&fh, split.l, gap)?,
    };

    let f = shift_expand(&fh, s)?;
    let c0 = f.coeff(0);
    let (lo, hi) = split.i1();
    let (_, m1) = sup_combo(&f, lo, hi)?;
    let (_, m2) = sup_combo(&f, split.z_scaled, split.l)?;
    // F_hat_m <= 0 below alpha_m, so M1 is 0 up to rounding; a positive
    // rounding excess is kept in the general formula rather than dropped.
    let m1p = widen_up(m1).max(0.0);
    let c0d = widen_down(c0);
    if !(m1p < c0d) {
        return Err(Error::InfeasibleCertificate(format!(
            "rounding swamps the degree-{} certificate (M1 = {m1:e}, c0 = {c0:e}); use a smaller m",
            f.degree()
        )));
    }
    let vertex_bound = ((widen_up(m2) - m1p) / (c0d - m1p)).next_up();
    Ok(BoundCertificate {
        k,
        z,
        method: Method::Machine,
        f,
        s: Some(s),
        m: Some(m as u32),
        m1,
        m2,
        c0,
        vertex_bound,
        vertex_bound_int: integer_bound(vertex_bound),
        notes: Vec::new(),
    })
}

fn shifted_ratio(fh: &ChebCombo, l: f64, s: f64) -> Result<f64> {
    let c0 = shift_expand(fh, s)?.coeff(0);
    Ok(fh.eval(l + s) / c0)
}

fn best_shift(fh: &ChebCombo, l: f64, gap: f64) -> Result<f64> {
    let (mut a, mut b) = (SHIFT_MARGIN, gap - SHIFT_MARGIN);
    if b <= a {
        return Ok(0.5 * gap);
    }
    let mut best = (a, shifted_ratio(fh, l, a)?);
    let note = |s: f64, v: f64, best: &mut (f64, f64)| {
        if v < best.1 {
            *best = (s, v);
        }
    };
    let fb = shifted_ratio(fh, l, b)?;
    note(b, fb, &mut best);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = shifted_ratio(fh, l, x1)?;
    let mut f2 = shifted_ratio(fh, l, x2)?;
    note(x1, f1, &mut best);
    note(x2, f2, &mut best);
    for _ in 0..GOLDEN_ITERS {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = shifted_ratio(fh, l, x1)?;
            note(x1, f1, &mut best);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = shifted_ratio(fh, l, x2)?;
            note(x2, f2, &mut best);
        }
    }
    Ok(best.0)
}

/// `f = V_1`, valid for `z < 0`; gives `(z - k) / z`.
pub fn linear_bound(k: u32, z: f64) -> Result<BoundCertificate> {
    if !(z < 0.0) {
        return Err(Error::InvalidParameter(format!("linear bound needs z < 0, got {z}")));
    }
    certify(&ChebCombo::basis(1), k, z, Method::Linear)
}

/// Open interval of admissible `sigma` for `f = V_1 + sigma V_2`.
pub fn sigma_interval(k: u32, z: f64) -> Result<(f64, f64)> {
    let kf = k as f64;
    let root = (kf - 1.0).sqrt();
    let denom = kf - 1.0 - z * z;
    if !(denom > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "two-term certificate needs z^2 < k - 1, got z = {z}"
        )));
    }
    Ok((z * root / denom, kf * root / (kf * kf - kf + 1.0)))
}

/// `f = V_1 + sigma V_2`, valid for `z < (k - 1) / k`.
///
/// `sigma` defaults to `sqrt(k - 1) / (k - z)`; at `z = 0` this gives
/// `2k^2 / (k - 1)`.
pub fn two_term_bound(k: u32, z: f64, sigma: Option<f64>) -> Result<BoundCertificate> {
    check_params(k, z)?;
    let kf = k as f64;
    if !(z < (kf - 1.0) / kf) {
        return Err(Error::InvalidParameter(format!(
            "two-term bound needs z < (k - 1) / k = {:.6}, got {z}",
            (kf - 1.0) / kf
        )));
    }
    let (lo, hi) = sigma_interval(k, z)?;
    let sigma = sigma.unwrap_or_else(|| (kf - 1.0).sqrt() / (kf - z));
    if !(sigma > lo && sigma < hi) {
        return Err(Error::InvalidParameter(format!(
            "sigma = {sigma} outside the admissible interval ({lo:.6}, {hi:.6})"
        )));
    }
    let mut cert = certify(&ChebCombo::new(vec![0.0, 1.0, sigma]), k, z, Method::TwoTerm)?;
    if cert.vertex_bound_int > 2 * k as u64 + 2 {
        cert.notes.push(format!(
            "integer bound {} exceeds 2k + 2 = {}; floor(2k^2/(k-1)) = 2k + 2 needs k >= 4",
            cert.vertex_bound_int,
            2 * k + 2
        ));
    }
    Ok(cert)
}

/// Samples `(x, f(x))` on `[-L, L]`, for external plotting.
pub fn dump_samples(f: &ChebCombo, k: u32, count: usize) -> Result<Vec<(f64, f64)>> {
    let split = IntervalSplit::new(k, 0.0)?;
    let count = count.max(2);
    let mono: MonoPoly = to_mono(f);
    Ok((0..count)
        .map(|i| {
            let x = -split.l + 2.0 * split.l * i as f64 / (count - 1) as f64;
            (x, mono.eval(x))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn f_big_small_cases() {
        assert_eq!(to_mono(&f_big(1)).coeffs(), &[0.0, 0.0, 1.0]);
        assert_eq!(to_mono(&f_big(2)).coeffs(), &[1.0, 0.0, -2.0, 0.0, 1.0]);
    }

    #[test]
    fn f_hat_small_cases() {
        assert_eq!(f_hat(1).coeffs(), &[0.0, 1.0]);
        let h2 = f_hat(2);
        for (got, want) in h2.coeffs().iter().zip([0.0, 1.0, 1.0, 1.0]) {
            assert!(close(*got, want, 1e-14), "{:?}", h2.coeffs());
        }
    }

    #[test]
    fn y_poly_matches_f_hat() {
        assert_eq!(y_poly(1).unwrap().coeffs(), &[0.0, 1.0]);
        for m in 1..=8 {
            let (y, h) = (y_poly(m).unwrap(), f_hat(m));
            for j in 0..2 * m {
                assert!(close(y.coeff(j), h.coeff(j), 1e-9), "m = {m}, j = {j}");
            }
        }
    }

    #[test]
    fn shift_examples() {
        let s = 0.37;
        let v2 = shift_expand(&ChebCombo::basis(2), s).unwrap();
        assert!(close(v2.coeff(0), s * s, 1e-15));
        assert!(close(v2.coeff(1), 2.0 * s, 1e-15));
        assert!(close(v2.coeff(2), 1.0, 1e-15));

        assert_eq!(shift_expand(&ChebCombo::basis(0), s).unwrap().coeffs(), &[1.0]);

        let h = shift_expand(&f_hat(2), s).unwrap();
        let want = [s * s * s + s * s + 2.0 * s, 3.0 * s * s + 2.0 * s + 1.0, 3.0 * s + 1.0, 1.0];
        for (j, w) in want.iter().enumerate() {
            assert!(close(h.coeff(j), *w, 1e-13), "j = {j}: {} vs {w}", h.coeff(j));
        }
    }

    #[test]
    fn shift_rejects_bad_input() {
        assert!(shift_expand(&ChebCombo::basis(2), 0.0).is_err());
        assert!(shift_expand(&ChebCombo::basis(2), -1.0).is_err());
        assert!(shift_expand(&ChebCombo::new(vec![1.0, -0.5]), 0.3).is_err());
    }

    #[test]
    fn linear_examples() {
        let c = linear_bound(3, -1.0).unwrap();
        assert!(close(c.m1, -1.0 / 2f64.sqrt(), 1e-12));
        assert!(close(c.m2, 3.0 / 2f64.sqrt(), 1e-12));
        assert!(close(c.vertex_bound, 4.0, 1e-7) && c.vertex_bound >= 4.0);
        assert_eq!(c.vertex_bound_int, 4);
        assert_eq!(linear_bound(5, -1.0).unwrap().vertex_bound_int, 6);
        assert!(linear_bound(3, 0.0).is_err());
    }

    #[test]
    fn two_term_examples() {
        let c = two_term_bound(3, 0.0, None).unwrap();
        assert!(close(c.vertex_bound, 9.0, 1e-6));
        assert!(!c.notes.is_empty());
        let c = two_term_bound(4, 0.0, None).unwrap();
        assert!(close(c.vertex_bound, 32.0 / 3.0, 1e-6));
        assert_eq!(c.vertex_bound_int, 10);
        assert!(c.notes.is_empty());
        assert!(two_term_bound(3, 1.0, None).is_err());
        assert!(two_term_bound(4, 0.0, Some(10.0)).is_err());
    }

    #[test]
    fn f_hat_is_not_a_certificate_on_its_own() {
        match bound_from_function(&f_hat(2), 3, 1.0) {
            Err(Error::InfeasibleCertificate(_)) => {}
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn m_min_examples() {
        assert_eq!(m_min(3, 1.0).unwrap(), 2);
        for k in 3..12 {
            assert_eq!(m_min(k, 0.0).unwrap(), 2, "k = {k}");
        }
        assert_eq!(m_min(3, -1.0).unwrap(), 1);
        // z / sqrt(2) = sqrt(2) = alpha_3 exactly, so the footnote bump applies
        assert_eq!(m_min(3, 2.0).unwrap(), 4);
        assert!(m_min(3, 2.0 * 2f64.sqrt()).is_err());
    }

    #[test]
    fn machine_examples() {
        let c = machine_bound(3, -1.0, None, None).unwrap();
        assert_eq!(c.m, Some(1));
        assert_eq!(c.vertex_bound_int, 4);
        let s = c.s.unwrap();
        assert!(close(s, 1.0 / 2f64.sqrt() - SHIFT_MARGIN, 1e-6));
        assert!(close(c.vertex_bound, (3.0 / 2f64.sqrt() + s) / s, 1e-6));

        let c = machine_bound(3, 0.0, None, None).unwrap();
        assert_eq!(c.m, Some(2));
        assert_eq!(c.vertex_bound_int, 9);

        assert!(machine_bound(3, 1.0, Some(1), None).is_err());
        assert!(machine_bound(3, 0.0, Some(2), Some(1.5)).is_err());
    }

    #[test]
    fn machine_with_explicit_shift_matches_closed_form() {
        let s = 0.5;
        let c = machine_bound(3, 0.0, Some(2), Some(s)).unwrap();
        let u = 3.0 / 2f64.sqrt() + s;
        let closed = (u - 1.0) * (u + 1.0) * (u + 1.0) / (s * s * s + s * s + 2.0 * s);
        assert!(close(c.vertex_bound, closed, 1e-7 * closed));
    }

    #[test]
    fn rejects_z_at_ramanujan_threshold() {
        assert!(bound_from_function(&ChebCombo::basis(1), 3, 2.0 * 2f64.sqrt()).is_err());
        assert!(bound_from_function(&ChebCombo::basis(1), 2, -1.0).is_err());
    }

    #[test]
    fn integer_bound_keeps_near_integers() {
        assert_eq!(integer_bound(20.9999), 20);
        assert_eq!(integer_bound(21.0 - 1e-12), 21);
        assert_eq!(integer_bound(4.000001), 4);
    }
}
