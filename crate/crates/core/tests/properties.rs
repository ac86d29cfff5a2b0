use num_traits::Zero;
use proptest::prelude::*;

use siegel_ring::diffop::bracket;
use siegel_ring::exactnum::{
    bernoulli_number, binomial, fundamental_discriminant_split, kronecker_symbol, rat, ratio,
};
use siegel_ring::fourier::{divide_exact, multiply, rank_of_span, sqrt_monic};
use siegel_ring::lattice::{closed_cone, decompositions, enumerate_cone};
use siegel_ring::{EtaIndex, FourierSeries, Rational};

const PREC: u32 = 6;

fn series(weight: i64, prec: u32, entries: &[(usize, i64, i64)], constant: i64) -> FourierSeries {
    let cone = closed_cone(prec as i64);
    let mut s = FourierSeries::constant(weight, prec, rat(constant));
    for &(i, n, d) in entries {
        let eta = cone[1 + i % (cone.len() - 1)];
        s.set_coeff(eta, ratio(n, d));
    }
    s
}

fn arb_series(weight: i64) -> impl Strategy<Value = FourierSeries> {
    (
        prop::collection::vec((0usize..200, -9i64..=9, 1i64..=4), 0..8),
        -3i64..=3,
    )
        .prop_map(move |(entries, c)| series(weight, PREC, &entries, c))
}

fn cone_point(max_grade: i64) -> impl Strategy<Value = EtaIndex> {
    let cone = enumerate_cone(max_grade);
    (0..cone.len()).prop_map(move |i| cone[i])
}

/// Convolution written directly from the decomposition definition.
fn oracle_product(f: &FourierSeries, g: &FourierSeries) -> FourierSeries {
    let prec = f.prec().min(g.prec());
    let mut out = FourierSeries::zero(f.weight() + g.weight(), prec);
    for eta in closed_cone(prec as i64) {
        let c: Rational = decompositions(&eta)
            .iter()
            .map(|(a, b)| f.coeff(a) * g.coeff(b))
            .sum();
        out.set_coeff(eta, c);
    }
    out
}

/// Bernoulli numbers by the Akiyama–Tanigawa algorithm, which yields
/// `B_1 = +1/2`.
fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::new();
    for m in 0..=n {
        a.push(ratio(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = rat(j as i64) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

#[test]
fn bernoulli_recurrence_and_independent_oracle() {
    for m in 1..=40usize {
        let sum: Rational = (0..=m)
            .map(|j| Rational::from_integer(binomial(m as u64 + 1, j as u64)) * bernoulli_number(j))
            .sum();
        assert!(sum.is_zero(), "m = {m}");
    }
    let at = akiyama_tanigawa(40);
    for (m, b) in at.iter().enumerate() {
        let expected = if m == 1 { -b.clone() } else { b.clone() };
        assert_eq!(bernoulli_number(m), expected, "m = {m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_commutative(f in arb_series(2), g in arb_series(4)) {
        prop_assert_eq!(multiply(&f, &g), multiply(&g, &f));
    }

    #[test]
    fn product_is_associative(f in arb_series(2), g in arb_series(4), h in arb_series(6)) {
        prop_assert_eq!(multiply(&multiply(&f, &g), &h), multiply(&f, &multiply(&g, &h)));
    }

    #[test]
    fn product_distributes(f in arb_series(2), g in arb_series(4), h in arb_series(4)) {
        let lhs = multiply(&f, &g.add(&h).unwrap());
        let rhs = multiply(&f, &g).add(&multiply(&f, &h)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_and_zero(f in arb_series(4)) {
        prop_assert_eq!(multiply(&FourierSeries::one(PREC), &f), f.clone());
        prop_assert!(multiply(&FourierSeries::zero(2, PREC), &f).is_zero());
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn product_matches_decomposition_oracle(f in arb_series(2), g in arb_series(5)) {
        prop_assert_eq!(multiply(&f, &g), oracle_product(&f, &g));
    }

    #[test]
    fn cusp_forms_form_an_ideal(f in arb_series(2), g in arb_series(3)) {
        let g = g.sub(&FourierSeries::constant(3, PREC, g.coeff(&EtaIndex::ZERO))).unwrap();
        prop_assert!(g.is_cusp());
        prop_assert!(multiply(&f, &g).is_cusp());
    }

    #[test]
    fn truncation_commutes_with_product(f in arb_series(2), g in arb_series(4), p in 0u32..=PREC) {
        prop_assert_eq!(multiply(&f, &g).truncate(p), multiply(&f.truncate(p), &g.truncate(p)));
    }

    #[test]
    fn sqrt_round_trip(
        entries in prop::collection::vec((0usize..200, -9i64..=9, 1i64..=4), 0..6),
        lead_pick in 0usize..2,
        negative in any::<bool>(),
    ) {
        let lead = [EtaIndex::new(2, 1, -1), EtaIndex::new(2, 0, -1)][lead_pick];
        let sign = if negative { -1 } else { 1 };
        let mut h = FourierSeries::zero(5, 8);
        h.set_coeff(lead, rat(sign as i64));
        let higher: Vec<EtaIndex> = enumerate_cone(8).into_iter().filter(|e| e.grade() > 2).collect();
        for (i, n, d) in entries {
            h.set_coeff(higher[i % higher.len()], ratio(n, d));
        }
        let square = multiply(&h, &h);
        let root = sqrt_monic(&square, lead, sign).unwrap();
        prop_assert_eq!(root.prec(), 6);
        prop_assert_eq!(root, h.truncate(6));
    }

    #[test]
    fn divide_round_trip(f in arb_series(4), extra in prop::collection::vec((0usize..200, -9i64..=9, 1i64..=4), 0..5)) {
        let lead = EtaIndex::new(2, 0, -1);
        let mut b = FourierSeries::zero(5, PREC);
        b.set_coeff(lead, ratio(3, 2));
        let higher: Vec<EtaIndex> = enumerate_cone(PREC as i64).into_iter().filter(|e| e.grade() > 2).collect();
        for (i, n, d) in extra {
            b.set_coeff(higher[i % higher.len()], ratio(n, d));
        }
        let g = multiply(&f, &b);
        let q = divide_exact(&g, &b, lead).unwrap();
        prop_assert_eq!(q, f.truncate(PREC - 2));
    }

    #[test]
    fn rank_is_invariant_under_scaling_and_order(
        forms in prop::collection::vec(arb_series(4), 1..6),
        scale in 1i64..=7,
    ) {
        let r = rank_of_span(&forms).unwrap();
        prop_assert!(r <= forms.len());
        let mut shuffled: Vec<FourierSeries> = forms.iter().rev().map(|f| f.scale(&ratio(-scale, 3))).collect();
        prop_assert_eq!(rank_of_span(&shuffled).unwrap(), r);
        shuffled.push(forms[0].add(&forms[forms.len() - 1]).unwrap());
        prop_assert_eq!(rank_of_span(&shuffled).unwrap(), r);
    }

    #[test]
    fn bracket_alternates(f1 in arb_series(2), f2 in arb_series(4), f3 in arb_series(5), f4 in arb_series(6)) {
        let b = bracket(&f1, &f2, &f3, &f4);
        prop_assert!(b.is_cusp());
        prop_assert_eq!(bracket(&f3, &f2, &f1, &f4), b.scale(&rat(-1)));
        prop_assert_eq!(bracket(&f2, &f3, &f4, &f1), b.scale(&rat(-1)));
        prop_assert!(bracket(&f1, &f2, &f1, &f4).is_zero());
    }

    #[test]
    fn bracket_is_linear(f1 in arb_series(2), f2 in arb_series(4), f3 in arb_series(5), g3 in arb_series(5), f4 in arb_series(6)) {
        let lhs = bracket(&f1, &f2, &f3.add(&g3).unwrap(), &f4);
        let rhs = bracket(&f1, &f2, &f3, &f4).add(&bracket(&f1, &f2, &g3, &f4)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kronecker_is_multiplicative(d in prop::sample::select(vec![-3i64, -4, -7, -8, -11, -15, -19, -20, -24]), m in 1i64..60, n in 1i64..60) {
        prop_assert_eq!(kronecker_symbol(d, m * n), kronecker_symbol(d, m) * kronecker_symbol(d, n));
    }

    #[test]
    fn discriminant_split_round_trip(d in prop::sample::select(vec![-3i64, -4, -7, -8, -11]), f in 1i64..=6) {
        let (d2, f2) = fundamental_discriminant_split(d * f * f).unwrap();
        prop_assert_eq!((d2, f2 as i64), (d, f));
    }

    #[test]
    fn norm_scales_quadratically(eta in cone_point(8), n in 1i64..=5) {
        prop_assert_eq!((n * eta).norm_m(), n * n * eta.norm_m());
        prop_assert!((n * eta).is_positive());
    }

    #[test]
    fn cone_is_closed_under_addition(a in cone_point(6), b in cone_point(6)) {
        prop_assert!((a + b).is_positive());
    }

    #[test]
    fn decompositions_are_symmetric(eta in cone_point(7)) {
        let d = decompositions(&eta);
        for (a, b) in &d {
            prop_assert_eq!(*a + *b, eta);
            prop_assert!(d.contains(&(*b, *a)));
        }
        prop_assert!(d.contains(&(EtaIndex::ZERO, eta)));
    }
}

#[test]
fn akiyama_tanigawa_sanity() {
    let at = akiyama_tanigawa(4);
    assert_eq!(at[1], ratio(1, 2));
    assert_eq!(at[4], ratio(-1, 30));
}
