use super::*;
use crate::lattice::coset_rep;
use proptest::prelude::*;

fn point(a: i64, b: i64, c: i64, d: i64) -> ParamPoint {
    ParamPoint::from_ints(a, b, c, d).unwrap()
}

#[test]
fn routes_agree() {
    for n in [12, 24, 36] {
        assert_eq!(
            delta_series(n, DeltaRoute::FromTheta),
            delta_series(n, DeltaRoute::FromPsiKernel),
            "budget {n}"
        );
    }
}

#[test]
fn delta_is_sum_of_class_pairs() {
    let n = 30;
    let mut sum = FormalQSeries::new(n);
    for pair in ClassPair::all() {
        sum = sum.add(&delta_class(pair, n)).unwrap();
    }
    assert_eq!(sum, delta_series(n, DeltaRoute::FromPsiKernel));
}

#[test]
fn class_series_agrees_with_bulk() {
    let n = 24;
    let all = all_class_series(n);
    for (x, y) in [
        (CosetLabel::positive(0), CosetLabel::positive(2)),
        (CosetLabel::Zero, CosetLabel::positive(1)),
    ] {
        assert_eq!(class_series(x, y, n), all[&(x, y)]);
    }
}

#[test]
fn relations_hold() {
    let report = check_relations(24);
    assert!(report.holds(), "{:?}", report.violation);
    assert_eq!(report.identities_checked, 9 + 81 + 81 + 9);
}

#[test]
fn minimal_vectors_per_class() {
    let expected: [&[usize]; 4] = [&[0, 4], &[1, 5], &[2], &[3, 6]];
    for (class, idx) in expected.iter().enumerate() {
        let mut want: Vec<LatticeVector> = idx.iter().map(|&i| minimal_vector(i)).collect();
        want.sort();
        assert_eq!(
            minimal_vectors(CosetLabel::positive(class), 36),
            want,
            "class {class}"
        );
        // the negated class has the negated minimal vectors
        let neg: Vec<LatticeVector> = want.iter().map(|v| -*v).collect();
        let mut got = minimal_vectors(CosetLabel::positive(class).negate(), 36);
        got.sort();
        let mut neg_sorted = neg.clone();
        neg_sorted.sort();
        assert_eq!(got, neg_sorted);
    }
    // a larger budget finds nothing new
    for class in 0..4 {
        assert_eq!(
            minimal_vectors(CosetLabel::positive(class), 48),
            minimal_vectors(CosetLabel::positive(class), 36)
        );
    }
}

#[test]
fn minimal_vectors_lie_in_their_classes() {
    let f = family();
    for (i, v) in MINIMAL_VECTORS.iter().enumerate() {
        let v = LatticeVector(*v);
        assert_eq!(
            f.coset_label(&v).unwrap(),
            CosetLabel::positive(MINIMAL_VECTOR_CLASS[i])
        );
    }
    for i in 0..4 {
        assert_eq!(minimal_vector(i), coset_rep(i));
    }
}

#[test]
fn pair_table() {
    let rows = minimal_pair_table(36).unwrap();
    let got: Vec<((usize, usize), [u32; 4])> =
        rows.iter().map(|r| ((r.i, r.j), r.exponent.0)).collect();
    assert_eq!(got, REFERENCE_PAIR_TABLE.to_vec());
    let minimal: Vec<(usize, usize)> = rows
        .iter()
        .filter(|r| r.minimal)
        .map(|r| (r.i, r.j))
        .collect();
    assert_eq!(minimal, vec![(0, 2), (2, 5)]);
    assert_eq!(
        minimal_pair_table(35),
        Err(Error::InsufficientBudget {
            required: 36,
            got: 35
        })
    );
}

#[test]
fn leading_coefficients() {
    let delta = delta_series(36, DeltaRoute::FromPsiKernel);
    let [p0, p1] = leading_polynomials();
    assert_eq!(delta.coefficient(&ExponentVector(LEADING_EXPONENTS[0])), p0);
    assert_eq!(delta.coefficient(&ExponentVector(LEADING_EXPONENTS[1])), p1);
    assert_eq!(p0.to_string(), "-12*a*c + 12*a*d + 12*b*c - 12*b*d");
    // hand check: pair (v0, v2) with Ψv2 = g2·v2
    let (v0, v2) = (minimal_vector(0), minimal_vector(2));
    let psi_v2 = family().psi(&v2).unwrap();
    assert_eq!(psi_v2, LatticeVector::new(-3, -1, -1, -1));
    let before = v0.inner_poly(&v2);
    let after = v0.inner_poly(&psi_v2);
    // (±v0, ±v2) in both orders: eight pairs with equal kernel, times 1/8
    let k = &(&before * &before) - &(&after * &after);
    assert_eq!(k.scale(&rat(8)).scale(&ratio(1, 8)), p0);
}

#[test]
fn certificate_at_reference_point() {
    let certifier = Certifier::new(40).unwrap();
    let cert = certifier.certify(&point(1, 7, 13, 19)).unwrap();
    assert_eq!(cert.min_exponent, Some(rat(144)));
    assert_eq!(cert.total, Some(rat(-1008)));
    let values: Vec<Rational> = cert.terms.iter().map(|t| t.value.clone()).collect();
    assert_eq!(values, vec![rat(-432), rat(-576)]);
    assert_eq!(cert.verdict, Verdict::NonIsometric);

    let cert = certifier.certify(&point(1, 2, 3, 4)).unwrap();
    assert_eq!(
        (cert.min_exponent, cert.total),
        (Some(rat(44)), Some(rat(-12)))
    );
    assert_eq!(cert.verdict, Verdict::NonIsometric);
}

#[test]
fn certificate_for_unsorted_and_degenerate_points() {
    let certifier = Certifier::new(36).unwrap();
    let shuffled = certifier.certify(&point(13, 1, 19, 7)).unwrap();
    assert_eq!(shuffled.sorted_params, point(1, 7, 13, 19));
    assert_eq!(shuffled.permutation, [1, 3, 0, 2]);
    assert_eq!(shuffled.total, Some(rat(-1008)));
    let degenerate = certifier.certify(&point(1, 1, 2, 3)).unwrap();
    assert_eq!(degenerate.verdict, Verdict::Inconclusive);
    assert!(matches!(
        certify(&point(1, 2, 3, 4), 20),
        Err(Error::InsufficientBudget { .. })
    ));
}

#[test]
fn certificate_round_trips_through_json() {
    let cert = certify(&point(1, 7, 13, 19), 36).unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    for t in &back.terms {
        assert_eq!(t.polynomial.eval(&back.sorted_params), t.value);
    }
}

/// Every pair of vectors from distinct nonzero classes sits above one of
/// the two leading exponent vectors.
#[test]
fn leading_exponents_are_minimal_over_shell() {
    let f = family();
    let shell: Vec<LatticeVector> = f.l1.enumerate(40);
    let lead = LEADING_EXPONENTS.map(ExponentVector);
    for l in &shell {
        for k in &shell {
            let (x, y) = (f.coset_label(l).unwrap(), f.coset_label(k).unwrap());
            if x == CosetLabel::Zero
                || y == CosetLabel::Zero
                || x.group_element() == y.group_element()
            {
                continue;
            }
            let e = l.phi() + k.phi();
            assert!(lead.iter().any(|m| m.dominated_by(&e)), "{l} {k} {e}");
        }
    }
}

fn sorted_rational() -> impl Strategy<Value = ParamPoint> {
    prop::array::uniform4((1i64..60, 1i64..12)).prop_filter_map("distinct", |xs| {
        let mut v: Vec<Rational> = xs.iter().map(|&(n, d)| ratio(n, d)).collect();
        v.sort();
        v.dedup();
        (v.len() == 4).then(|| ParamPoint::from_slice(&v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leading_coefficient_is_negative(p in sorted_rational()) {
        let [p0, p1] = leading_polynomials();
        prop_assert!(p0.eval(&p).is_negative());
        prop_assert!(p1.eval(&p).is_negative());
    }
}

#[test]
fn certify_at_random_points() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let certifier = Certifier::new(36).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let mut done = 0;
    while done < 50 {
        let mut v: Vec<Rational> = (0..4)
            .map(|_| ratio(rng.gen_range(1..60), rng.gen_range(1..12)))
            .collect();
        v.sort();
        v.dedup();
        if v.len() < 4 {
            continue;
        }
        let p = ParamPoint::from_slice(&v).unwrap();
        let cert = certifier.certify(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::NonIsometric, "{p}");
        assert!(cert.total.unwrap().is_negative());
        done += 1;
    }
}

#[test]
fn leading_coefficients_by_class_pair() {
    let [p0, p1] = leading_polynomials();
    let d02 = delta_class(ClassPair::new(0, 2).unwrap(), 36);
    assert_eq!(d02.coefficient(&ExponentVector(LEADING_EXPONENTS[0])), p0);
    let d12 = delta_class(ClassPair::new(1, 2).unwrap(), 36);
    assert_eq!(d12.coefficient(&ExponentVector(LEADING_EXPONENTS[1])), p1);
    assert!(ClassPair::new(2, 2).is_none() && ClassPair::new(3, 1).is_none());
    assert_eq!(ClassPair::all().len(), 6);
}

#[test]
fn delta_is_negative_near_the_cusp() {
    use crate::theta::evaluate_at;
    let delta = delta_series(40, DeltaRoute::FromPsiKernel);
    let v = evaluate_at(&delta, &ParamPoint::schiemann(), &ratio(1, 10));
    assert!(v < 0.0, "{v}");
    // oracle: the leading term alone
    let lead = -1008.0 * (-2.0 * std::f64::consts::PI * 0.1 * 144.0).exp();
    assert!((v - lead).abs() < lead.abs() * 1e-3);
}

#[test]
fn pairs_inside_m_contribute_nothing() {
    let f = family();
    let shell = f.m.enumerate(40);
    for l in &shell {
        for k in &shell {
            assert_eq!(f.psi(l).unwrap(), *l);
            assert_eq!(
                l.inner_poly(k),
                f.psi(l).unwrap().inner_poly(&f.psi(k).unwrap())
            );
        }
    }
}
