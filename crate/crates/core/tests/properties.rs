use ceresa_core::ceresa::{f_value, supported};
use ceresa_core::cyclotomic::{embed, CycloElem, EmbeddingIndex};
use ceresa_core::extalg::v_pairing;
use ceresa_core::fermat::{delta_iterated_integral, FermatCurve, FermatIndex};
use ceresa_core::specfun::{
    appell_f3_unit, dixon_disagreement, dixon_family, gamma_quotient, hyp3f2_unit_target, AppellF3Params, Hyp3F2Params,
};
use proptest::prelude::*;
use rug::Rational;

fn elem(n: u32, coeffs: &[i64]) -> CycloElem {
    let terms: Vec<(i64, i64)> = coeffs.iter().enumerate().map(|(j, c)| (j as i64, *c)).collect();
    CycloElem::from_terms(n, &terms)
}

fn arb_elem(n: u32) -> impl Strategy<Value = CycloElem> {
    prop::collection::vec(-6i64..=6, 0..n as usize).prop_map(move |c| elem(n, &c))
}

fn arb_triple() -> impl Strategy<Value = (CycloElem, CycloElem, CycloElem)> {
    (3u32..=15).prop_flat_map(|n| (arb_elem(n), arb_elem(n), arb_elem(n)))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (2u32..=40).prop_flat_map(|q| (1..q).prop_map(move |p| Rational::from((p, q))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
    }

    #[test]
    fn inverse_is_two_sided((a, _, _) in arb_triple()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, CycloElem::one(a.modulus()));
    }

    #[test]
    fn galois_is_a_ring_map((a, b, _) in arb_triple(), h in 1i64..60) {
        let n = a.modulus();
        prop_assume!(ceresa_core::cyclotomic::gcd(h, n as i64) == 1);
        prop_assert_eq!((&a * &b).galois(h).unwrap(), &a.galois(h).unwrap() * &b.galois(h).unwrap());
        prop_assert_eq!((&a + &b).galois(h).unwrap(), &a.galois(h).unwrap() + &b.galois(h).unwrap());
    }

    #[test]
    fn conjugate_embeddings((a, _, _) in arb_triple(), pick in 0usize..100) {
        let all = EmbeddingIndex::all(a.modulus());
        let s = all[pick % all.len()];
        let x = embed(&a, s, 25).unwrap();
        let y = embed(&a, s.conjugate(), 25).unwrap();
        prop_assert!(x.re.overlaps(&y.re));
        prop_assert!(x.im.overlaps(&y.im.neg()));
    }

    #[test]
    fn v_pairing_alternates(vals in prop::collection::vec(-5i64..=5, 36), i in 0usize..6, j in 0usize..6) {
        prop_assume!(i != j);
        // antisymmetric integer pairing on six labels
        let pair = |x: &usize, y: &usize| {
            let (lo, hi, s) = if x < y { (*x, *y, 1) } else { (*y, *x, -1) };
            if lo == hi { 0 } else { s * vals[lo * 6 + hi] }
        };
        let labels: Vec<usize> = (0..6).collect();
        let mut swapped = labels.clone();
        swapped.swap(i, j);
        let a = v_pairing(4, &labels, pair, &0i64).unwrap();
        let b = v_pairing(4, &swapped, pair, &0i64).unwrap();
        prop_assert_eq!(a, -b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tail_bound_is_sound(a in unit_rational(), b in unit_rational(), c in unit_rational(), extra in unit_rational()) {
        // d + e - a - b - c = 1/2 + extra, so the margin stays in (1/2, 3/2)
        let d = Rational::from(1u32) + &a;
        let e = Rational::from(&b + &c) + Rational::from((1, 2)) + &extra - 1u32;
        prop_assume!(e > 0);
        let p = Hyp3F2Params::new(a, b, c, d, e);
        let s = p.series().unwrap();
        let first = hyp3f2_unit_target(&p, 1e-30, 160).unwrap();
        let longer = s.sum_with(first.cutoff * 10, first.order, 160).unwrap();
        let diff = first.value.distance(&longer.value);
        prop_assert!(diff <= first.value.err(), "moved by {diff:e}, err {:e}", first.value.err());
    }

    #[test]
    fn dixon_members_agree(a1 in unit_rational(), b1 in unit_rational(), a2 in unit_rational(), b2 in unit_rational()) {
        let members = dixon_family(&a1, &b1, &a2, &b2, 20).unwrap();
        prop_assert!(members.iter().any(|m| m.value.is_some()));
        prop_assert_eq!(dixon_disagreement(&members), None);
    }

    #[test]
    fn appell_reduction(a1 in unit_rational(), b1 in unit_rational(), a2 in unit_rational(), b2 in unit_rational()) {
        // Γ(α1)Γ(β2)/Γ(α1+β2+1) F₃(α1, β2, 1-β1, 1-α2; α1+β2+1) is the Euler double integral
        let gamma = Rational::from(&a1 + &b2) + 1u32;
        let p = AppellF3Params::new(a1.clone(), b2.clone(), Rational::from(1u32 - &b1), Rational::from(1u32 - &a2), gamma.clone());
        let lhs = gamma_quotient(&[a1.clone(), b2.clone()], &[gamma], 20).unwrap().mul(&appell_f3_unit(&p, 15).unwrap());
        let members = dixon_family(&a1, &b1, &a2, &b2, 20).unwrap();
        let last = members.last().unwrap().value.clone().unwrap();
        prop_assert!(lhs.overlaps(&last), "{:?} vs {:?}", lhs, last);
    }

    #[test]
    fn delta_reversal_symmetry(n in 4u32..=12, a1 in 1i64..12, b1 in 1i64..12, a2 in 1i64..12, b2 in 1i64..12) {
        let ok = |a: i64, b: i64| a % n as i64 != 0 && b % n as i64 != 0 && (a + b) % n as i64 != 0;
        prop_assume!(ok(a1, b1) && ok(a2, b2));
        let c = FermatCurve::new(n).unwrap();
        let i = |a, b| FermatIndex::new(a, b, n).unwrap();
        let x = delta_iterated_integral(c, i(a1, b1), i(a2, b2), 20).unwrap();
        let y = delta_iterated_integral(c, i(b2, a2), i(b1, a1), 20).unwrap();
        prop_assert!(x.overlaps(&y));
    }

    #[test]
    fn precision_is_monotone(n in 4u32..=16, kpick in 0u32..100, digits in 10u32..=40) {
        let k = 1 + kpick % FermatCurve::new(n).unwrap().max_k();
        prop_assume!(supported(n, k, 2 * digits));
        let lo = f_value(n, k, digits).unwrap();
        let hi = f_value(n, k, 2 * digits).unwrap();
        prop_assert!(hi.value.err() <= lo.value.err());
        prop_assert!(lo.value.contains(hi.value.value()));
    }
}
