//! Rescaled second-kind Chebyshev polynomials `V_m(x) = U_m(x / 2)`.
//!
//! Certificates are stored as combinations `sum c_j V_j` ([`ChebCombo`]).
//! Anything that needs monomial arithmetic (products, division by a linear
//! factor, derivatives, rigorous maxima) goes through [`MonoPoly`].
//!
//! `V_m` has integer monomial coefficients, so basis changes are done with an
//! exact integer table and only the input coefficients carry rounding error.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Bisection stops once the bracket is narrower than this.
pub const ROOT_WIDTH: f64 = 1e-12;

/// Evaluates `V_m(x)` with the three-term recurrence
/// `V_0 = 1`, `V_1 = x`, `V_{j+1} = x V_j - V_{j-1}`.
pub fn v_eval(m: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Largest root of `V_m`, `2 cos(pi / (m + 1))`.
///
/// Written as `2 sin(pi (m - 1) / (2 (m + 1)))` so that `alpha(1)` is exactly 0.
pub fn alpha(m: usize) -> f64 {
    assert!(m >= 1, "alpha(m) needs m >= 1");
    let m = m as f64;
    2.0 * (PI * (m - 1.0) / (2.0 * (m + 1.0))).sin()
}

/// All roots of `V_m`: `2 cos(l pi / (m + 1))` for `l = 1..=m`, descending.
pub fn v_roots(m: usize) -> Vec<f64> {
    (1..=m)
        .map(|l| 2.0 * (l as f64 * PI / (m as f64 + 1.0)).cos())
        .collect()
}

/// Monomial coefficients (increasing power) of `V_0..=V_deg`.
///
/// Entries stay far below `2^53` for the degrees used here, so the `i64` table
/// converts to `f64` exactly.
pub fn v_monomial_table(deg: usize) -> Vec<Vec<i64>> {
    let mut table: Vec<Vec<i64>> = Vec::with_capacity(deg + 1);
    table.push(vec![1]);
    if deg >= 1 {
        table.push(vec![0, 1]);
    }
    for j in 2..=deg {
        let mut next = vec![0i64; j + 1];
        for (i, &c) in table[j - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, &c) in table[j - 2].iter().enumerate() {
            next[i] -= c;
        }
        table.push(next);
    }
    table
}

/// A polynomial in the monomial basis, coefficients in increasing power.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonoPoly {
    coeffs: Vec<f64>,
}

impl MonoPoly {
    /// Builds the polynomial, trimming trailing zero coefficients.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = MonoPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: f64) -> Self {
        MonoPoly::new(vec![c])
    }

    pub fn zero() -> Self {
        MonoPoly { coeffs: Vec::new() }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `sum |c_i| t^i`, the usual scale for Horner rounding error.
    pub fn abs_eval(&self, t: f64) -> f64 {
        let t = t.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c.abs())
    }

    /// Upper bound on the rounding error of [`MonoPoly::eval`] at `x`.
    pub fn eval_error_bound(&self, x: f64) -> f64 {
        let n = self.coeffs.len().max(1) as f64;
        let u = f64::EPSILON / 2.0;
        let gamma = 2.0 * n * u / (1.0 - 2.0 * n * u);
        gamma * self.abs_eval(x) + f64::MIN_POSITIVE
    }

    pub fn derivative(&self) -> MonoPoly {
        MonoPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &MonoPoly) -> MonoPoly {
        if self.is_zero() || other.is_zero() {
            return MonoPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        MonoPoly::new(out)
    }

    pub fn scale(&self, s: f64) -> MonoPoly {
        MonoPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Synthetic division by `(x - r)`: returns `(quotient, remainder)`.
    pub fn divide_linear(&self, r: f64) -> (MonoPoly, f64) {
        if self.coeffs.len() <= 1 {
            return (MonoPoly::zero(), self.coeffs.first().copied().unwrap_or(0.0));
        }
        let d = self.coeffs.len() - 1;
        let mut q = vec![0.0; d];
        let mut carry = 0.0;
        for i in (0..=d).rev() {
            let v = self.coeffs[i] + carry * r;
            if i == 0 {
                return (MonoPoly::new(q), v);
            }
            q[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Real roots in `[a, b]`, ascending.
    ///
    /// Roots are isolated through the derivative cascade: the critical points
    /// of `p` split `[a, b]` into pieces on which `p` is monotone, and each
    /// sign change is bisected down to [`ROOT_WIDTH`]. A critical point where
    /// `|p|` is at rounding level is reported as a (multiple) root.
    pub fn real_roots(&self, a: f64, b: f64) -> Vec<f64> {
        let mut roots = Vec::new();
        self.collect_roots(a, b, &mut roots);
        roots
    }

    fn collect_roots(&self, a: f64, b: f64, out: &mut Vec<f64>) {
        if self.is_zero() || self.degree() == 0 || a > b {
            return;
        }
        if self.degree() == 1 {
            let r = -self.coeffs[0] / self.coeffs[1];
            if r >= a && r <= b {
                out.push(r);
            }
            return;
        }
        let crit = self.derivative().real_roots(a, b);
        let mut knots = Vec::with_capacity(crit.len() + 2);
        knots.push(a);
        knots.extend(crit.iter().copied().filter(|&c| c > a && c < b));
        knots.push(b);

        let near_zero = |x: f64| self.eval(x).abs() <= 4.0 * self.eval_error_bound(x);
        let push = |x: f64, out: &mut Vec<f64>| {
            if out.last().map_or(true, |&last| x - last > ROOT_WIDTH) {
                out.push(x);
            }
        };

        for w in knots.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (flo, fhi) = (self.eval(lo), self.eval(hi));
            if near_zero(lo) {
                push(lo, out);
            }
            if !near_zero(lo) && !near_zero(hi) && (flo < 0.0) != (fhi < 0.0) {
                push(bisect(|x| self.eval(x), lo, hi, flo), out);
            }
        }
        if near_zero(b) {
            push(b, out);
        }
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= ROOT_WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A finite combination `sum_j c_j V_j(x)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebCombo {
    coeffs: Vec<f64>,
}

impl ChebCombo {
    /// Builds the combination, trimming trailing zeros (the constant slot is
    /// always kept so `c_0` is addressable).
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        ChebCombo { coeffs }
    }

    /// The single basis element `V_j`.
    pub fn basis(j: usize) -> Self {
        let mut c = vec![0.0; j + 1];
        c[j] = 1.0;
        ChebCombo::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `V_j` (zero past the degree).
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0.0)
    }

    /// Clenshaw evaluation for the `V` recurrence.
    pub fn eval(&self, x: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            let b0 = c + x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    pub fn to_mono(&self) -> MonoPoly {
        to_mono(self)
    }
}

/// Converts `sum c_j V_j` to the monomial basis.
pub fn to_mono(c: &ChebCombo) -> MonoPoly {
    let table = v_monomial_table(c.degree());
    let mut out = vec![0.0; c.degree() + 1];
    for (j, &cj) in c.coeffs().iter().enumerate() {
        if cj == 0.0 {
            continue;
        }
        for (i, &t) in table[j].iter().enumerate() {
            out[i] += cj * t as f64;
        }
    }
    MonoPoly::new(out)
}

/// Converts a monomial polynomial to the `V` basis by peeling off the leading
/// term (every `V_j` is monic).
pub fn from_mono(p: &MonoPoly) -> ChebCombo {
    if p.is_zero() {
        return ChebCombo::new(vec![0.0]);
    }
    let d = p.degree();
    let table = v_monomial_table(d);
    let mut rest = p.coeffs().to_vec();
    let mut out = vec![0.0; d + 1];
    for j in (0..=d).rev() {
        let cj = rest[j];
        out[j] = cj;
        if cj != 0.0 {
            for (i, &t) in table[j].iter().enumerate() {
                rest[i] -= cj * t as f64;
            }
        }
    }
    ChebCombo::new(out)
}

/// Maximum of `p` on `[a, b]` and a point attaining it.
///
/// Candidates are the endpoints and every critical point found by
/// [`MonoPoly::real_roots`] on `p'`. The reported maximum is widened upward by
/// the evaluation error bound and by the bisection width times a bound on
/// `|p'|`, so it never understates the true supremum.
pub fn sup_on_interval(p: &MonoPoly, a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a <= b) {
        return Err(Error::InvalidParameter(format!(
            "sup_on_interval needs a <= b, got [{a}, {b}]"
        )));
    }
    let dp = p.derivative();
    let mut best = (a, p.eval(a), false);
    let mut consider = |x: f64, interior: bool| {
        let v = p.eval(x);
        if v > best.1 {
            best = (x, v, interior);
        }
    };
    for r in dp.real_roots(a, b) {
        consider(r, true);
    }
    consider(b, false);

    let (x, v, interior) = best;
    let mut slack = p.eval_error_bound(x);
    if interior {
        slack += ROOT_WIDTH * dp.abs_eval(x.abs() + ROOT_WIDTH);
    }
    Ok((x, v + slack))
}

/// [`sup_on_interval`] for a combination, via its monomial form.
pub fn sup_combo(c: &ChebCombo, a: f64, b: f64) -> Result<(f64, f64)> {
    sup_on_interval(&to_mono(c), a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_eval_small_cases() {
        assert_eq!(v_eval(0, 7.3), 1.0);
        for &x in &[-2.5, -0.3, 0.0, 1.1, 2.9] {
            assert!((v_eval(2, x) - (x * x - 1.0)).abs() < 1e-12);
            assert!((v_eval(3, x) - (x * x * x - 2.0 * x)).abs() < 1e-12);
        }
    }

    #[test]
    fn v_eval_matches_sine_ratio() {
        let theta: f64 = 0.3;
        let expected = (6.0 * theta).sin() / theta.sin();
        assert!((v_eval(5, 2.0 * theta.cos()) - expected).abs() < 1e-12);
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(1), 0.0);
        assert!((alpha(2) - 1.0).abs() < 1e-15);
        assert!(v_eval(2, alpha(2)).abs() < 1e-15);
        assert!((alpha(3) - 2f64.sqrt()).abs() < 1e-15);
        assert!(v_eval(3, alpha(3)).abs() < 1e-14);
    }

    #[test]
    fn basis_conversion_examples() {
        let x2 = MonoPoly::new(vec![0.0, 0.0, 1.0]);
        assert_eq!(from_mono(&x2).coeffs(), &[1.0, 0.0, 1.0]);
        assert_eq!(to_mono(&ChebCombo::basis(1)).coeffs(), &[0.0, 1.0]);
        assert_eq!(to_mono(&ChebCombo::basis(3)).coeffs(), &[0.0, -2.0, 0.0, 1.0]);
    }

    #[test]
    fn divide_linear_exact() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let p = MonoPoly::new(vec![-2.0, 1.0, 1.0]);
        let (q, r) = p.divide_linear(1.0);
        assert_eq!(q.coeffs(), &[2.0, 1.0]);
        assert_eq!(r, 0.0);
    }

    #[test]
    fn roots_handle_double_roots() {
        // (x - 1)^2 (x + 1)
        let p = MonoPoly::new(vec![1.0, -1.0, -1.0, 1.0]);
        let r = p.real_roots(-3.0, 3.0);
        assert_eq!(r.len(), 2, "{r:?}");
        assert!((r[0] + 1.0).abs() < 1e-11);
        assert!((r[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn sup_examples() {
        let s = 2f64.sqrt();
        let (x, m) = sup_combo(&ChebCombo::basis(2), -3.0 / s, 1.0 / s).unwrap();
        assert!((x + 3.0 / s).abs() < 1e-15);
        assert!((m - 3.5).abs() < 1e-12 && m >= 3.5);

        let (x, m) = sup_combo(&ChebCombo::basis(1), 1.0 / s, 3.0 / s).unwrap();
        assert!((x - 3.0 / s).abs() < 1e-15);
        assert!((m - 3.0 / s).abs() < 1e-12);

        let (x, m) = sup_on_interval(&MonoPoly::constant(5.0), 0.0, 1.0).unwrap();
        assert_eq!(x, 0.0);
        assert!((m - 5.0).abs() < 1e-12);
    }

    #[test]
    fn sup_interior_maximum() {
        // -(x - 0.3)^2 + 2 peaks inside the interval
        let p = MonoPoly::new(vec![2.0 - 0.09, 0.6, -1.0]);
        let (x, m) = sup_on_interval(&p, -1.0, 1.0).unwrap();
        assert!((x - 0.3).abs() < 1e-9);
        assert!(m >= 2.0 && m < 2.0 + 1e-10);
    }

    #[test]
    fn sup_rejects_reversed_interval() {
        assert!(sup_on_interval(&MonoPoly::constant(1.0), 1.0, 0.0).is_err());
    }
}
