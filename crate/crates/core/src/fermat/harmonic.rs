//! The φ^{a,b} pairing and the pointed harmonic volume of a triple.

use rug::Rational;

use super::index::{FermatCurve, FermatIndex, LoopIndex, TripleConfig};
use super::iterated::{delta_iterated_integral, kappa_exact, kappa_rs_exact, DeltaAffine};
use crate::bounded::{BoundedComplex, BoundedReal};
use crate::cyclotomic::{CycloElem, EmbeddingIndex};
use crate::error::{Error, Result};

/// `⟨φ^{a,b}, φ^{c,d}⟩`.
pub fn phi_pairing(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex) -> Result<CycloElem> {
    let n = curve.n();
    if idx1.n() != n || idx2.n() != n {
        return Err(Error::ModulusMismatch(idx1.n().max(idx2.n()), n));
    }
    if idx2 != idx1.neg() {
        return Ok(CycloElem::zero(n));
    }
    let (a, b) = (idx1.a() as i64, idx1.b() as i64);
    let one = CycloElem::one(n);
    let num = (&one - &CycloElem::xi_pow(n, a)) * (&one - &CycloElem::xi_pow(n, b));
    let den = &one - &CycloElem::xi_pow(n, a + b);
    Ok(num.checked_div(&den)?.scale_int(n as i64 * n as i64))
}

fn check_triple(curve: FermatCurve, t: &TripleConfig) -> Result<()> {
    if t.n() != curve.n() {
        return Err(Error::ModulusMismatch(t.n(), curve.n()));
    }
    if !t.flags.sums_to_zero {
        return Err(Error::Precondition("indices do not sum to zero".into()));
    }
    if !t.flags.pairwise_parallel_holo {
        return Err(Error::Precondition("first two indices change type under some twist".into()));
    }
    Ok(())
}

fn denominator(n: u32, third: FermatIndex) -> CycloElem {
    CycloElem::one(n) - CycloElem::xi_pow(n, -((third.a() + third.b()) as i64))
}

/// The weighted sum `Σ_{r,s} ξ^{a3 r + b3 s} ∫_{κ^{r,s}} / (1 - ξ^{-(a3+b3)})`,
/// carried out exactly. Embedding it at `h` gives `m_σ` for `σ(ξ) = ζ^h`.
pub fn harmonic_volume_exact(curve: FermatCurve, t: &TripleConfig) -> Result<DeltaAffine> {
    check_triple(curve, t)?;
    let n = curve.n();
    let [i1, i2, i3] = t.indices;
    let mut acc = DeltaAffine::zero(n);
    for lp in LoopIndex::all(n) {
        let w = CycloElem::xi_pow(n, (i3.a() * lp.r() + i3.b() * lp.s()) as i64);
        acc = acc.add(&kappa_rs_exact(curve, lp, i1, i2)?.mul(&w));
    }
    acc.div(&denominator(n, i3))
}

/// The same quantity from the collapsed form `N² ∫_κ / (1 - ξ^{-(a3+b3)})`.
pub fn harmonic_volume_closed_form(curve: FermatCurve, t: &TripleConfig) -> Result<DeltaAffine> {
    check_triple(curve, t)?;
    let n = curve.n();
    let [i1, i2, i3] = t.indices;
    let k = kappa_exact(curve, i1, i2)?.mul(&CycloElem::from_int(n, n as i64 * n as i64));
    k.div(&denominator(n, i3))
}

/// `m_σ(φ^{a1,b1} ⊗ φ^{a2,b2} ⊗ φ^{a3,b3})` for `σ(ξ) = ζ^h`.
///
/// When the twisted first two indices are both antiholomorphic the value is
/// the conjugate of the one at `-h`.
pub fn harmonic_volume_sigma(curve: FermatCurve, t: &TripleConfig, sigma: EmbeddingIndex, digits: u32) -> Result<BoundedComplex> {
    check_triple(curve, t)?;
    if sigma.n() != curve.n() {
        return Err(Error::ModulusMismatch(sigma.n(), curve.n()));
    }
    let h = sigma.h();
    if !t.holomorphic_twists().contains(&h) {
        return Ok(harmonic_volume_sigma(curve, t, sigma.conjugate(), digits)?.conj());
    }
    let e = harmonic_volume_exact(curve, t)?;
    let [i1, i2, _] = t.indices;
    let mag: f64 = e.coef.coeffs().iter().map(|c| c.to_f64().abs()).sum();
    let extra = mag.max(1.0).log10().ceil() as u32 + 2;
    let d = delta_iterated_integral(curve, i1.twist(h)?, i2.twist(h)?, digits + extra)?;
    e.embed(sigma, &d, digits)
}

/// `N² Σ_h ∫_δ ω^{h a1, h b1} ω^{h a2, h b2}` over the holomorphic twists.
pub fn harmonic_volume_trace(curve: FermatCurve, t: &TripleConfig, digits: u32) -> Result<BoundedReal> {
    check_triple(curve, t)?;
    let n = curve.n();
    let twists = t.holomorphic_twists();
    let extra = (twists.len() as f64 * (n * n) as f64).log10().ceil() as u32 + 1;
    let [i1, i2, _] = t.indices;
    let mut acc = BoundedReal::zero(64);
    for h in twists {
        let d = delta_iterated_integral(curve, i1.twist(h)?, i2.twist(h)?, digits + extra)?;
        acc = acc.add(&d);
    }
    Ok(acc.mul_rational(&Rational::from(n * n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{embed, trace_to_rationals};

    fn idx(a: i64, b: i64, n: u32) -> FermatIndex {
        FermatIndex::new(a, b, n).unwrap()
    }

    #[test]
    fn pairing_values() {
        let c4 = FermatCurve::new(4).unwrap();
        let p = phi_pairing(c4, idx(1, 1, 4), idx(-1, -1, 4)).unwrap();
        let one = CycloElem::one(4);
        let xi = CycloElem::xi_pow(4, 1);
        let expect = ((&one - &xi) * (&one - &xi)).checked_div(&(&one - &xi.pow(2))).unwrap().scale_int(16);
        assert_eq!(p, expect);
        let c7 = FermatCurve::new(7).unwrap();
        assert!(phi_pairing(c7, idx(1, 1, 7), idx(1, 2, 7)).unwrap().is_zero());
    }

    #[test]
    fn pairing_conjugate_embedding() {
        let c = FermatCurve::new(7).unwrap();
        let (i, j) = (idx(2, 3, 7), idx(5, 4, 7));
        let p = phi_pairing(c, i, j).unwrap();
        for s in EmbeddingIndex::all(7) {
            let a = embed(&p, s, 30).unwrap();
            let b = embed(&p, s.conjugate(), 30).unwrap();
            assert!(a.overlaps(&b.conj()));
        }
    }

    #[test]
    fn weighted_sum_collapses() {
        for n in [4u32, 5, 6, 7, 9] {
            let c = FermatCurve::new(n).unwrap();
            let t = TripleConfig::example(c).unwrap();
            assert_eq!(harmonic_volume_exact(c, &t).unwrap(), harmonic_volume_closed_form(c, &t).unwrap(), "n={n}");
        }
        let t = TripleConfig::klein().unwrap();
        let c = FermatCurve::new(7).unwrap();
        assert_eq!(harmonic_volume_exact(c, &t).unwrap(), harmonic_volume_closed_form(c, &t).unwrap());
    }

    #[test]
    fn leading_term_example() {
        let c = FermatCurve::new(5).unwrap();
        let t = TripleConfig::example(c).unwrap();
        let e = harmonic_volume_exact(c, &t).unwrap();
        let one = CycloElem::one(5);
        let zi = CycloElem::xi_pow(5, -1);
        let lead = (&one - &zi) * (&one - &zi);
        let expect = lead.scale_int(25).checked_div(&(&one - &CycloElem::xi_pow(5, -2))).unwrap();
        assert_eq!(e.coef, expect);
    }

    #[test]
    fn conjugate_embedding_conjugates() {
        let c = FermatCurve::new(7).unwrap();
        let t = TripleConfig::example(c).unwrap();
        for s in EmbeddingIndex::all(7) {
            let a = harmonic_volume_sigma(c, &t, s, 25).unwrap();
            let b = harmonic_volume_sigma(c, &t, s.conjugate(), 25).unwrap();
            assert!(a.overlaps(&b.conj()));
        }
    }

    #[test]
    fn trace_agrees_with_embeddings_mod_integers() {
        for n in [5u32, 7, 8] {
            let c = FermatCurve::new(n).unwrap();
            let t = TripleConfig::example(c).unwrap();
            let i3 = t.indices[2];
            let one = CycloElem::one(n);
            let clear = (&one - &CycloElem::xi_pow(n, -(i3.a() as i64))) * (&one - &CycloElem::xi_pow(n, -(i3.b() as i64)));
            let e = harmonic_volume_exact(c, &t).unwrap().div(&clear).unwrap();
            // the constant part has integral trace, the δ-part traces to N² Σ_h D_h
            let tc = trace_to_rationals(&e.constant);
            assert_eq!(*tc.denom(), 1, "n={n} trace {tc}");
            let mut total = BoundedReal::zero(128);
            for s in EmbeddingIndex::all(n) {
                let h = s.h();
                if !t.holomorphic_twists().contains(&h) {
                    continue;
                }
                let d = delta_iterated_integral(c, t.indices[0].twist(h).unwrap(), t.indices[1].twist(h).unwrap(), 30).unwrap();
                let co = embed(&e.coef, s, 30).unwrap();
                total = total.add(&co.re.mul(&d).mul_rational(&Rational::from(2)));
            }
            let tr = harmonic_volume_trace(c, &t, 25).unwrap();
            assert!(total.overlaps(&tr), "n={n}: {total:?} vs {tr:?}");
        }
    }

    #[test]
    fn rejects_broken_assumption() {
        let c = FermatCurve::new(7).unwrap();
        let t = TripleConfig::from_pairs(c, [(1, 1), (1, 2), (2, 1)]).unwrap();
        assert!(harmonic_volume_trace(c, &t, 20).is_err());
        assert!(harmonic_volume_sigma(c, &t, EmbeddingIndex::new(1, 7).unwrap(), 20).is_err());
    }

    #[test]
    fn klein_trace_matches_gamma_display() {
        let c = FermatCurve::new(7).unwrap();
        let t = TripleConfig::klein().unwrap();
        let tr = harmonic_volume_trace(c, &t, 25).unwrap();
        let q = |a, b| Rational::from((a, b));
        let g = |num: [Rational; 2], den: Rational| {
            crate::specfun::gamma_quotient(&num, &[den], 30).unwrap().square()
        };
        let s = g([q(3, 7), q(6, 7)], q(2, 7)).add(&g([q(5, 7), q(6, 7)], q(4, 7))).add(&g([q(3, 7), q(5, 7)], q(1, 7)));
        let f = crate::specfun::hyp3f2_unit(&crate::specfun::Hyp3F2Params::new(q(1, 7), q(2, 7), q(4, 7), q(1, 1), q(1, 1)), 30).unwrap();
        let expect = s.mul(&f).mul_rational(&q(49, 1));
        assert!(tr.overlaps(&expect), "{tr:?} vs {expect:?}");
    }
}
