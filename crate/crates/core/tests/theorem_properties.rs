use gammalcm::checker::{lcm_sign_table, GridSpec};
use gammalcm::specfun::{gamma_ratio, ln_gamma};
use gammalcm::theorem::{self, RegionKind};
use gammalcm::FamilySpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn open_unit(rng: &mut ChaCha8Rng, hi: f64) -> f64 {
    // (0, hi]
    hi * (1.0 - rng.gen::<f64>())
}

#[test]
fn closed_form_matches_series_engine() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..200 {
        let a = open_unit(&mut rng, 5.0);
        let b = open_unit(&mut rng, 5.0);
        let c = open_unit(&mut rng, 10.0);
        let k = rng.gen_range(1..=10);
        let x = rng.gen_range(0.1..=50.0);
        let e = theorem::evaluate_identity(a, b, c, k, x).unwrap();
        assert!(e.relative_gap() < 1e-9, "{e:?}");
    }
}

#[test]
fn boundary_value_is_independent_of_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..50 {
        let a = open_unit(&mut rng, 5.0);
        let b = open_unit(&mut rng, 5.0);
        let c = open_unit(&mut rng, 10.0);
        let want = c.ln() + ln_gamma(a).unwrap() - ln_gamma(b).unwrap();
        for k in 1..=25 {
            let h = theorem::h_capital(a, b, c, k, 0.0).unwrap();
            assert!(
                (h - want).abs() <= 1e-13 * want.abs().max(1.0),
                "a={a} b={b} c={c} k={k}"
            );
        }
    }
}

#[test]
fn h_capital_is_monotone_with_sign_of_a_minus_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let xs = GridSpec::desk().abscissae();
    for _ in 0..20 {
        let a = open_unit(&mut rng, 5.0);
        let b = open_unit(&mut rng, 5.0);
        let c = open_unit(&mut rng, 10.0);
        let sign = (a - b).signum();
        for k in 1..=10 {
            let hs: Vec<_> = xs
                .iter()
                .map(|&x| theorem::h_capital_detailed(a, b, c, k, x).unwrap())
                .collect();
            for w in hs.windows(2) {
                let slack = 1e-13 * (1.0 + w[0].largest_term.max(w[1].largest_term));
                assert!(
                    sign * (w[1].value - w[0].value) >= -slack,
                    "a={a} b={b} c={c} k={k}"
                );
            }
        }
    }
}

#[test]
fn classifier_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let (mut case1, mut reversed) = (0, 0);
    while case1 < 50 || reversed < 50 {
        let a = open_unit(&mut rng, 5.0);
        let b = open_unit(&mut rng, 5.0);
        if a <= b {
            continue;
        }
        let threshold = gamma_ratio(b, a).unwrap();
        if case1 < 50 {
            let c = threshold * (1.0 + rng.gen_range(0.0..2.0));
            assert_eq!(
                theorem::classify(a, b, c).unwrap().kind,
                RegionKind::Case1LCM
            );
            for k in 1..=10 {
                assert_eq!(
                    theorem::find_violation(a, b, c, k, 100.0).unwrap(),
                    None,
                    "a={a} b={b} c={c} k={k}"
                );
            }
            case1 += 1;
        }
        if reversed < 50 {
            let c = threshold * rng.gen_range(0.01..(1.0 - 1e-3));
            let found = (1..=3).any(|k| {
                theorem::find_violation(a, b, c, k, 100.0)
                    .unwrap()
                    .is_some()
            });
            assert!(found, "a={a} b={b} c={c}");
            reversed += 1;
        }
    }
}

#[test]
fn classified_cases_pass_the_checker() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let grid = GridSpec::desk();
    for _ in 0..20 {
        let a = open_unit(&mut rng, 5.0);
        let b = open_unit(&mut rng, 5.0);
        let threshold = gamma_ratio(b, a).unwrap();
        let u = rng.gen_range(0.0..1.0);
        let c = if a > b {
            threshold * (1.0 + 2.0 * u)
        } else {
            threshold * (1.0 - 0.9 * u)
        };
        let region = theorem::classify(a, b, c).unwrap();
        let target = match region.kind {
            RegionKind::Case1LCM => FamilySpec::general_ratio(a, b, c).unwrap(),
            RegionKind::Case2ReciprocalLCM => FamilySpec::general_ratio(b, a, 1.0 / c).unwrap(),
            RegionKind::Undetermined => continue,
        };
        let table = lcm_sign_table(&target, &grid, 10).unwrap();
        assert!(
            table.verdict.is_consistent(),
            "a={a} b={b} c={c}: {:?}",
            table.verdict
        );
    }
}

#[test]
fn reciprocal_entries_are_negations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let grid = GridSpec::desk();
    for _ in 0..20 {
        let a = open_unit(&mut rng, 5.0);
        let b = open_unit(&mut rng, 5.0);
        let c = open_unit(&mut rng, 10.0);
        let t = lcm_sign_table(&FamilySpec::general_ratio(a, b, c).unwrap(), &grid, 10).unwrap();
        let r = lcm_sign_table(
            &FamilySpec::general_ratio(b, a, 1.0 / c).unwrap(),
            &grid,
            10,
        )
        .unwrap();
        for k in t.orders() {
            let (u, v) = (t.row(k), r.row(k));
            for i in 0..u.len() {
                let lo = i.saturating_sub(1);
                let hi = (i + 1).min(u.len() - 1);
                let scale = u[lo..=hi].iter().fold(1.0f64, |m, e| m.max(e.abs()));
                assert!(
                    (u[i] + v[i]).abs() <= 1e-13 * scale,
                    "a={a} b={b} c={c} k={k} i={i}"
                );
            }
        }
    }
}
