use gammalcm::numdiff::richardson;
use gammalcm::specfun::ln_gamma;
use gammalcm::PolySeries;
use proptest::prelude::*;

const X0: f64 = 0.75;
const ORDER: usize = 10;

fn series() -> impl Strategy<Value = PolySeries> {
    prop::collection::vec(-2.0f64..2.0, ORDER + 1).prop_map(|c| PolySeries::new(X0, c).unwrap())
}

/// Series with a nonzero constant term.
fn unit_series() -> impl Strategy<Value = PolySeries> {
    series().prop_filter("constant term must be nonzero", |s| {
        s.coeffs()[0].abs() > 1e-3
    })
}

/// Growth of `1/q` relative to `q`: division by `q` amplifies rounding by about this much.
///
/// A root of `q` close to the expansion point makes this large, and no
/// binary64 algorithm then recovers a round trip to a fixed relative bound.
fn reciprocal_condition(q: &PolySeries) -> f64 {
    let r = PolySeries::one(q.x0(), q.order()).unwrap().div(q).unwrap();
    let sup = |s: &PolySeries| s.coeffs().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    sup(&r) * sup(q)
}

fn close(a: &PolySeries, b: &PolySeries, tol: f64) -> bool {
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| {
        let scale = x.abs().max(y.abs()).max(1.0);
        (x - y).abs() <= tol * scale
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn add_is_commutative_and_associative(p in series(), q in series(), r in series()) {
        prop_assert!(close(&p.add(&q).unwrap(), &q.add(&p).unwrap(), 1e-13));
        let left = p.add(&q).unwrap().add(&r).unwrap();
        let right = p.add(&q.add(&r).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-13));
    }

    #[test]
    fn mul_is_commutative_and_associative(p in series(), q in series(), r in series()) {
        prop_assert!(close(&p.mul(&q).unwrap(), &q.mul(&p).unwrap(), 1e-13));
        let left = p.mul(&q).unwrap().mul(&r).unwrap();
        let right = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-13));
    }

    #[test]
    fn mul_distributes_over_add(p in series(), q in series(), r in series()) {
        let left = p.mul(&q.add(&r).unwrap()).unwrap();
        let right = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-13));
    }

    #[test]
    fn div_undoes_mul(p in series(), q in unit_series()) {
        let back = p.mul(&q).unwrap().div(&q).unwrap();
        prop_assert!(close(&back, &p, 1e-12 * reciprocal_condition(&q)));
    }

    #[test]
    fn exp_undoes_ln(q in unit_series()) {
        let positive = if q.coeffs()[0] < 0.0 { q.neg() } else { q };
        let back = positive.ln_series().unwrap().exp_series().unwrap();
        prop_assert!(close(&back, &positive, 1e-12 * reciprocal_condition(&positive)));
    }
}

#[test]
fn well_conditioned_round_trip_is_tight() {
    // constant term dominates: 1/q has decaying coefficients
    let q = PolySeries::new(
        X0,
        vec![2.0, -0.5, 0.3, 0.1, -0.2, 0.05, 0.0, 0.1, -0.1, 0.2, 0.3],
    )
    .unwrap();
    let p = PolySeries::new(
        X0,
        vec![1.5, -2.0, 0.7, 1.9, -1.1, 0.4, -0.3, 2.0, 0.0, -1.7, 0.9],
    )
    .unwrap();
    assert!(reciprocal_condition(&q) < 10.0);
    assert!(close(&p.mul(&q).unwrap().div(&q).unwrap(), &p, 1e-12));
    assert!(close(
        &q.ln_series().unwrap().exp_series().unwrap(),
        &q,
        1e-12
    ));
}

#[test]
fn lngamma_series_matches_finite_differences() {
    for x0 in [0.2, 1.0, 2.5, 7.0] {
        let s = PolySeries::from_lngamma(x0, 3.0, 4).unwrap();
        for k in 1..=4 {
            let (fd, _) = richardson(|u| ln_gamma(3.0 + u).unwrap(), x0, 0.2, k);
            let d = s.derivative(k).unwrap();
            assert!(
                (d - fd).abs() <= 1e-6 * d.abs(),
                "x0 = {x0}, k = {k}: {d} vs {fd}"
            );
        }
    }
}
