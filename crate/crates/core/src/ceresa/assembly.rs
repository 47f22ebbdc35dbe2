//! `f(N, k)` rebuilt from `f(N, 1)` through the constrained permutation sum,
//! with the pairing values taken from the exact φ-pairing.

use std::cell::Cell;

use rug::Rational;

use super::value::{check_k, f_value, CeresaResult};
use crate::bounded::{factorial, BoundedReal};
use crate::cyclotomic::CycloElem;
use crate::error::{Error, Result};
use crate::extalg::ceresa_eval_k;
use crate::fermat::{holomorphic_indices, phi_pairing, FermatCurve, FermatIndex, TripleConfig};

/// A cohomology label `scale · φ^{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPhi {
    pub index: FermatIndex,
    pub scale: CycloElem,
}

fn one_minus(n: u32, j: i64) -> CycloElem {
    CycloElem::one(n) - CycloElem::xi_pow(n, j)
}

/// The `2k + 1` labels `φ_1, ..., φ_{2k+1}` for a triple: the triple itself
/// (the third divided by `(1-ξ^{-a3})(1-ξ^{-b3})`) followed by `k - 1`
/// pairs `(c·φ^{a,b}, φ^{-a,-b})` with `⟨c·φ^{a,b}, φ^{-a,-b}⟩ = N²`.
pub fn corollary_labels(curve: FermatCurve, t: &TripleConfig, k: u32) -> Result<Vec<ScaledPhi>> {
    check_k(curve, k)?;
    let n = curve.n();
    let [i1, i2, i3] = t.indices;
    let d3 = one_minus(n, -(i3.a() as i64)) * one_minus(n, -(i3.b() as i64));
    let mut out = vec![
        ScaledPhi { index: i1, scale: CycloElem::one(n) },
        ScaledPhi { index: i2, scale: CycloElem::one(n) },
        ScaledPhi { index: i3, scale: d3.inverse()? },
    ];
    let used: Vec<FermatIndex> = t.indices.iter().flat_map(|i| [*i, i.neg()]).collect();
    let spare = holomorphic_indices(n).into_iter().filter(|i| !used.contains(i));
    for idx in spare.take(k as usize - 1) {
        let (a, b) = (idx.a() as i64, idx.b() as i64);
        let c = one_minus(n, a + b).checked_div(&(one_minus(n, a) * one_minus(n, b)))?;
        out.push(ScaledPhi { index: idx, scale: c });
        out.push(ScaledPhi { index: idx.neg(), scale: CycloElem::one(n) });
    }
    if out.len() != 2 * k as usize + 1 {
        return Err(Error::Precondition(format!("not enough spare indices for k = {k}")));
    }
    Ok(out)
}

/// `⟨x, y⟩` for scaled labels, exactly.
pub fn scaled_pairing(curve: FermatCurve, x: &ScaledPhi, y: &ScaledPhi) -> Result<CycloElem> {
    let p = phi_pairing(curve, x.index, y.index)?;
    Ok(&(&p * &x.scale) * &y.scale)
}

/// `k! · Σ_σ sgn(σ) Φ_1(...) Π ⟨...⟩` with `Φ_1(φ_1 ∧ φ_2 ∧ φ_3) = f(N, 1)`
/// for the example triple.
pub fn f_value_collapsed(n: u32, k: u32, digits: u32) -> Result<CeresaResult> {
    let curve = FermatCurve::new(n)?;
    let t = TripleConfig::example(curve)?;
    let labels = corollary_labels(curve, &t, k)?;
    let base = f_value(n, 1, digits + 2 * k * (n as f64).log10().ceil() as u32 + 4)?;
    let bits = base.value.prec();

    let m = labels.len();
    let mut table = vec![vec![BoundedReal::zero(bits); m]; m];
    for (i, x) in labels.iter().enumerate() {
        for (j, y) in labels.iter().enumerate() {
            let p = scaled_pairing(curve, x, y)?;
            if p.is_zero() {
                continue;
            }
            let q: Rational = p
                .as_rational()
                .ok_or_else(|| Error::Precondition(format!("pairing of labels {i}, {j} is not rational")))?;
            table[i][j] = BoundedReal::from_rational(&q, bits);
        }
    }
    let position = |x: &ScaledPhi| labels.iter().position(|y| y == x).expect("label from the list");
    let stray = Cell::new(false);
    let phi1 = |a: &ScaledPhi, b: &ScaledPhi, c: &ScaledPhi| {
        if (position(a), position(b), position(c)) == (0, 1, 2) {
            base.value.clone()
        } else {
            stray.set(true);
            BoundedReal::zero(bits)
        }
    };
    let pair = |a: &ScaledPhi, b: &ScaledPhi| table[position(a)][position(b)].clone();
    let sum = ceresa_eval_k(k as usize, &labels, phi1, pair, &BoundedReal::zero(bits))?;
    if stray.get() {
        return Err(Error::Precondition("a triple other than (φ1, φ2, φ3) contributed".into()));
    }
    let value = sum.mul_integer(&factorial(k));
    Ok(CeresaResult::from_value(n, k, value, base.h_terms, digits))
}
