use proptest::prelude::*;

use regbound::bound::{bound_from_function, f_big, f_hat, linear_bound, m_min, machine_bound, shift_expand, y_poly};
use regbound::chebyshev::{alpha, from_mono, sup_on_interval, to_mono, v_eval, ChebCombo, MonoPoly};

fn v_mono(m: usize) -> MonoPoly {
    to_mono(&ChebCombo::basis(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_term_recurrence(m in 1usize..=20, x in -3.0f64..3.0) {
        let lhs = v_eval(m + 1, x);
        let rhs = x * v_eval(m, x) - v_eval(m - 1, x);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()), "m = {m}, x = {x}: {lhs} vs {rhs}");
    }

    #[test]
    fn sup_dominates_samples(
        coeffs in prop::collection::vec(-5.0f64..5.0, 1..=9),
        a in -3.0f64..3.0,
        width in 0.0f64..3.0,
        ts in prop::collection::vec(0.0f64..=1.0, 100),
    ) {
        let p = MonoPoly::new(coeffs);
        let b = a + width;
        let (_, sup) = sup_on_interval(&p, a, b).unwrap();
        for t in ts {
            let x = a + t * width;
            prop_assert!(sup >= p.eval(x), "p({x}) = {} above sup {sup}", p.eval(x));
        }
    }

    #[test]
    fn basis_round_trip(coeffs in prop::collection::vec(-10.0f64..10.0, 1..=14)) {
        let c = ChebCombo::new(coeffs.clone());
        let back = from_mono(&to_mono(&c));
        for (j, want) in coeffs.iter().enumerate() {
            prop_assert!((back.coeff(j) - want).abs() < 1e-8, "coefficient {j}: {} vs {want}", back.coeff(j));
        }
    }

    #[test]
    fn shift_keeps_nonnegative(coeffs in prop::collection::vec(0.0f64..4.0, 1..=12), s in 0.01f64..1.5) {
        let c = ChebCombo::new(coeffs);
        let shifted = shift_expand(&c, s).unwrap();
        prop_assert!(shifted.coeffs().iter().all(|&x| x >= -1e-12));
        for x in [-2.5, -1.0, 0.0, 0.7, 2.0] {
            let want = c.eval(x + s);
            prop_assert!((shifted.eval(x) - want).abs() <= 1e-8 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn linear_matches_generic_certificate(k in 3u32..=12, z in -1.9f64..1.5) {
        let direct = linear_bound(k, z);
        let generic = bound_from_function(&ChebCombo::basis(1), k, z);
        match (direct, generic) {
            (Ok(d), Ok(g)) => {
                prop_assert_eq!(d.vertex_bound, g.vertex_bound);
                prop_assert_eq!(d.vertex_bound_int, g.vertex_bound_int);
            }
            (Err(_), Err(_)) => {}
            (d, g) => prop_assert!(false, "disagree: {d:?} vs {g:?}"),
        }
    }
}

#[test]
fn roots_of_v() {
    for m in 1..=12usize {
        let roots: Vec<f64> = (1..=m)
            .map(|l| 2.0 * (l as f64 * std::f64::consts::PI / (m + 1) as f64).cos())
            .collect();
        for &r in &roots {
            assert!(v_eval(m, r).abs() < 1e-9, "V_{m}({r}) = {}", v_eval(m, r));
        }
        let largest = roots.iter().cloned().fold(f64::MIN, f64::max);
        assert!((alpha(m) - largest).abs() < 1e-12);
    }
}

#[test]
fn f_big_is_square_of_v() {
    for m in 1..=10 {
        let lhs = to_mono(&f_big(m));
        let vm = v_mono(m);
        let rhs = vm.mul(&vm);
        assert_eq!(lhs.degree(), rhs.degree());
        for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            assert!((a - b).abs() < 1e-9, "m = {m}: {a} vs {b}");
        }
        let fh = f_hat(m);
        let y = y_poly(m).unwrap();
        for j in 0..2 * m {
            assert!((fh.coeff(j) - y.coeff(j)).abs() < 1e-9, "m = {m}, j = {j}");
        }
    }
}

#[test]
fn nonnegativity_closure() {
    for m in 1..=12 {
        assert!(f_hat(m).coeffs().iter().all(|&c| c >= -1e-12));
        assert!(y_poly(m).unwrap().coeffs().iter().all(|&c| c >= -1e-12));
        for s in [0.1, 0.5, 1.0] {
            let sh = shift_expand(&f_hat(m), s).unwrap();
            assert!(sh.coeffs().iter().all(|&c| c >= -1e-12), "m = {m}, s = {s}");
        }
    }
}

#[test]
fn sign_of_f_hat() {
    for m in 1..=8 {
        let a = alpha(m);
        let fh = f_hat(m);
        for i in 0..200 {
            let below = -4.0 + (a + 4.0) * i as f64 / 200.0;
            assert!(fh.eval(below) <= 1e-9, "m = {m}: F_hat({below}) = {}", fh.eval(below));
            let above = a + (4.0 - a) * (i + 1) as f64 / 200.0;
            assert!(fh.eval(above) > 0.0, "m = {m}: F_hat({above}) = {}", fh.eval(above));
        }
    }
}

#[test]
fn double_roots_of_f_big() {
    for m in 1..=8 {
        let p = to_mono(&f_big(m));
        let dp = p.derivative();
        for l in 1..=m {
            let x = 2.0 * (l as f64 * std::f64::consts::PI / (m + 1) as f64).cos();
            assert!(p.eval(x).abs() < 1e-8, "m = {m}, l = {l}");
            assert!(dp.eval(x).abs() < 1e-8, "m = {m}, l = {l}: derivative {}", dp.eval(x));
        }
    }
}

#[test]
fn machine_bound_monotone_in_z() {
    for k in [3u32, 4, 5, 7, 10] {
        let top = 2.0 * ((k - 1) as f64).sqrt();
        let zs: Vec<f64> = (0..12).map(|i| -1.5 + (top - 0.05 + 1.5) * i as f64 / 11.0).collect();
        for w in zs.windows(2) {
            let m = m_min(k, w[1]).unwrap();
            if m > 12 {
                continue;
            }
            let lo = machine_bound(k, w[0], Some(m), None).unwrap();
            let hi = machine_bound(k, w[1], Some(m), None).unwrap();
            assert!(
                lo.vertex_bound <= hi.vertex_bound * (1.0 + 1e-9),
                "k = {k}, m = {m}: z = {} gives {}, z = {} gives {}",
                w[0],
                lo.vertex_bound,
                w[1],
                hi.vertex_bound
            );
        }
    }
}

#[test]
fn machine_bound_growth_at_zero() {
    let ratios: Vec<f64> = [4u32, 9, 16, 25, 36]
        .iter()
        .map(|&k| {
            let c = machine_bound(k, 0.0, Some(2), None).unwrap();
            c.vertex_bound / (k as f64).powf(1.5)
        })
        .collect();
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    assert!(hi / lo <= 3.0, "ratios {ratios:?}");
}
