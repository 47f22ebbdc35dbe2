mod common;

use ceresa_core::ceresa::{f_value, f_value_collapsed, klein_value, table1, Verdict};
use ceresa_core::fermat::{harmonic_volume_trace, FermatCurve, TripleConfig};
use common::{circle_distance, TABLE1};

#[test]
fn printed_table_reproduced() {
    let rows = table1(TABLE1.iter().map(|r| r.0), 1, 12);
    assert_eq!(rows.len(), 96);
    for ((n, r), (m, printed)) in rows.iter().zip(TABLE1) {
        assert_eq!(*n, m);
        let r = r.as_ref().unwrap();
        let d = circle_distance(r.frac_f64(), printed);
        assert!(d < 1e-5, "N = {n}: {} vs {printed}", r.frac_short());
        assert_eq!(r.verdict, Verdict::NonIntegral);
    }
}

#[test]
fn six_digit_rendering_matches_print() {
    for (n, printed) in [(7u32, "0.0389723"), (18, "0.8478"), (39, "0.90578"), (99, "0.72628"), (82, "0.0135158")] {
        assert_eq!(f_value(n, 1, 12).unwrap().frac_short(), printed, "N = {n}");
    }
}

#[test]
fn trace_identity() {
    for n in 4..=12u32 {
        let c = FermatCurve::new(n).unwrap();
        let t = TripleConfig::example(c).unwrap();
        let tr = harmonic_volume_trace(c, &t, 30).unwrap();
        let f = f_value(n, 1, 30).unwrap();
        let twice = tr.mul_rational(&rug::Rational::from(2));
        assert!(f.value.overlaps(&twice), "N = {n}: {:?} vs {:?}", f.value, twice);
    }
}

#[test]
fn collapsed_sum_agrees_for_every_k_at_small_n() {
    for n in 4..=7u32 {
        for k in 1..=FermatCurve::new(n).unwrap().max_k() {
            let a = f_value(n, k, 15).unwrap();
            let b = f_value_collapsed(n, k, 15).unwrap();
            assert!(a.value.overlaps(&b.value), "N = {n}, k = {k}");
        }
    }
}

#[test]
fn klein_value_against_independent_evaluation() {
    // mpmath at 100 digits: 183759970222195481034721888837906.07035756126338838645...
    let r = klein_value(13, 30).unwrap();
    assert_eq!(ceresa_core::ceresa::fixed(&r.frac, 20), "0.07035756126338838645");
    assert_eq!(r.verdict, Verdict::NonIntegral);
}
