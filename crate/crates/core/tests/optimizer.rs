use proptest::prelude::*;

use regbound::atlas::atlas_all;
use regbound::bound::{bound_from_function, linear_bound, machine_bound, two_term_bound, BoundCertificate};
use regbound::error::Error;
use regbound::optimizer::{best_bound, optimize_nterm, OptimizerConfig};
use regbound::record::{Payload, ResultRecord};
use regbound::spectra::mu1;

fn quick(terms: usize) -> OptimizerConfig {
    OptimizerConfig { restarts: 16, ..OptimizerConfig::with_terms(terms) }
}

fn recheck(c: &BoundCertificate) {
    let again = bound_from_function(&c.f, c.k, c.z).unwrap();
    assert!(again.vertex_bound_int <= c.vertex_bound_int + 1, "{again:?} vs {c:?}");
}

#[test]
fn certificates_pass_their_own_recheck() {
    for (k, z) in [(3, 1.0), (3, 0.0), (4, 1.0), (5, 2.0)] {
        let c = optimize_nterm(k, z, &quick(4)).unwrap();
        recheck(&c);
        recheck(&best_bound(k, z, &quick(4)).unwrap());
    }
    recheck(&machine_bound(3, 1.0, None, None).unwrap());
    recheck(&two_term_bound(4, 0.0, None).unwrap());
}

#[test]
fn bounds_never_beat_known_graphs() {
    let entries = atlas_all(None);
    for k in 3..=6u32 {
        for z in [-1.0, 0.0, 1.0] {
            let c = best_bound(k, z, &quick(5)).unwrap();
            for e in entries.iter().filter(|e| e.degree == k as usize) {
                if mu1(&e.graph).unwrap() <= z + 1e-9 {
                    assert!(c.vertex_bound_int >= e.graph.n() as u64, "k = {k}, z = {z}: {} has {} vertices", e.name, e.graph.n());
                }
            }
            if z >= 0.0 {
                assert!(c.vertex_bound_int >= 2 * k as u64);
            }
        }
    }
}

#[test]
fn same_seed_same_certificate() {
    let cfg = quick(4);
    let a = optimize_nterm(3, 1.0, &cfg).unwrap();
    let b = optimize_nterm(3, 1.0, &cfg).unwrap();
    let bits = |c: &BoundCertificate| c.f.coeffs().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
    assert_eq!(a.vertex_bound.to_bits(), b.vertex_bound.to_bits());
}

#[test]
fn more_terms_never_hurt() {
    for z in [0.0, 1.0] {
        for n in 2..=4 {
            // An empty feasible set counts as an infinite bound.
            let run = |terms| match optimize_nterm(3, z, &OptimizerConfig::with_terms(terms)) {
                Ok(c) => c.vertex_bound,
                Err(Error::NoFeasiblePoint { .. }) => f64::INFINITY,
                Err(e) => panic!("{e}"),
            };
            let (lo, hi) = (run(n), run(n + 1));
            assert!(hi <= lo + 1e-6, "z = {z}: {n} terms give {lo}, {} terms give {hi}", n + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn record_json_round_trip(k in 3u32..=10, z in -1.5f64..-0.05, seed in any::<u64>()) {
        let rec = ResultRecord::new(
            "bound",
            serde_json::json!({"k": k, "z": z}),
            Payload::Bound(linear_bound(k, z).unwrap()),
            Some(seed),
        );
        let text = serde_json::to_string(&rec).unwrap();
        let back: ResultRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, rec);
    }
}
