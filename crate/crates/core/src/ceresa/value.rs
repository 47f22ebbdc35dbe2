use std::fmt;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bounded::{factorial, BoundedReal, Precision};
use crate::cyclotomic::gcd;
use crate::error::{Error, Result};
use crate::fermat::FermatCurve;
use crate::specfun::{gamma_hyp_product, gamma_quotient, hyp3f2_unit, Hyp3F2Params};

/// Smallest number of correct fractional digits a result is computed to.
pub const MIN_FRACTION_DIGITS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NonIntegral,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NonIntegral => "non-integral",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// `f(N, k)` together with its fractional part and the integrality verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct CeresaResult {
    pub n: u32,
    pub k: u32,
    pub value: BoundedReal,
    pub frac: Float,
    pub int_distance: Float,
    pub err: f64,
    pub h_terms: usize,
    pub verdict: Verdict,
    /// Fractional digits the value was computed to.
    pub digits: u32,
}

/// Fractional part, distance to the nearest integer and verdict for a value.
/// The verdict is non-integral only when the distance exceeds ten times the
/// error bound.
pub fn classify(value: &BoundedReal) -> (Float, Float, Verdict) {
    let (frac, dist) = value.fract_parts();
    let verdict = if dist > 10.0 * value.err() { Verdict::NonIntegral } else { Verdict::Inconclusive };
    (frac, dist, verdict)
}

impl CeresaResult {
    pub(crate) fn from_value(n: u32, k: u32, value: BoundedReal, h_terms: usize, digits: u32) -> Self {
        let (frac, int_distance, verdict) = classify(&value);
        let err = value.err();
        CeresaResult { n, k, value, frac, int_distance, err, h_terms, verdict, digits }
    }

    /// The fractional part rounded to six significant digits, trailing zeros
    /// removed.
    pub fn frac_short(&self) -> String {
        significant(&self.frac, 6)
    }

    pub fn frac_f64(&self) -> f64 {
        self.frac.to_f64()
    }
}

impl Serialize for CeresaResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.digits as usize;
        let mut st = s.serialize_struct("CeresaResult", 8)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("value", &fixed(self.value.value(), d))?;
        st.serialize_field("frac", &fixed(&self.frac, d))?;
        st.serialize_field("int_distance", &self.int_distance.to_f64())?;
        st.serialize_field("err", &self.err)?;
        st.serialize_field("h_terms", &self.h_terms)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.end()
    }
}

fn round_scaled(x: &Float, places: usize) -> Integer {
    let q = x.to_rational().expect("finite value");
    let scaled = q * Integer::from(Integer::u_pow_u(10, places as u32));
    scaled.round().numer().clone()
}

/// `x` rounded to `places` digits after the decimal point.
pub fn fixed(x: &Float, places: usize) -> String {
    let m = round_scaled(x, places);
    let neg = m < 0;
    let mut digits = m.abs().to_string();
    if digits.len() <= places {
        digits = "0".repeat(places + 1 - digits.len()) + &digits;
    }
    let (ip, fp) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// A number in `[0, 1)` to `sig` significant digits, trailing zeros removed.
pub fn significant(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut lead = 0usize;
    let ten = Float::with_val(x.prec(), 10);
    let mut y = x.clone();
    while y < 0.1 && lead < 300 {
        y *= &ten;
        lead += 1;
    }
    let s = fixed(x, lead + sig);
    let s = s.trim_end_matches('0');
    s.trim_end_matches('.').to_string()
}

/// Digits needed inside a sum so that scaling by `prefactor` and adding
/// `terms` summands still leaves `digits` correct fractional digits.
fn working_digits(prefactor: &Integer, terms: usize, digits: u32) -> Result<u32> {
    let mag = prefactor.significant_bits() as f64 * std::f64::consts::LOG10_2;
    let w = digits + mag.ceil() as u32 + (terms.max(1) as f64).log10().ceil() as u32 + 2;
    if w > Precision::MAX_DIGITS {
        return Err(Error::InsufficientPrecision(format!(
            "{w} working digits needed, at most {} are supported",
            Precision::MAX_DIGITS
        )));
    }
    Ok(w)
}

pub(crate) fn check_k(curve: FermatCurve, k: u32) -> Result<()> {
    if k < 1 || k > curve.max_k() {
        return Err(Error::KOutOfRange { k, n: curve.n(), max: curve.max_k() });
    }
    Ok(())
}

/// Whether `f(N, k)` to `digits` fractional digits fits the working range:
/// its integer part plus `digits` must stay within [`Precision::MAX_DIGITS`].
pub fn supported(n: u32, k: u32, digits: u32) -> bool {
    let Ok(curve) = FermatCurve::new(n) else { return false };
    check_k(curve, k).is_ok()
        && working_digits(&prefactor(n, k), half_units(n).len(), digits.max(MIN_FRACTION_DIGITS)).is_ok()
}

/// `k! · 2 N^{2k}`.
pub fn prefactor(n: u32, k: u32) -> Integer {
    factorial(k) * 2u32 * Integer::from(Integer::u_pow_u(n, 2 * k))
}

/// Units `0 < h < N/2`.
pub fn half_units(n: u32) -> Vec<u32> {
    (1..n).filter(|&h| 2 * h < n && gcd(h as i64, n as i64) == 1).collect()
}

/// `Γ(1-h/N)^4 / Γ(1-2h/N)^2 · ₃F₂(h/N, h/N, 1-2h/N; 1, 1; 1)`.
pub fn summand(n: u32, h: u32, digits: u32) -> Result<BoundedReal> {
    let prec = Precision::new(digits)?;
    let t = Rational::from((h, n));
    let a = Rational::from(1u32 - &t);
    let b = Rational::from(1u32 - Rational::from(&t * 2u32));
    let hyp = Hyp3F2Params::new(t.clone(), t, b.clone(), Rational::from(1), Rational::from(1));
    gamma_hyp_product(&[a.clone(), a.clone(), a.clone(), a], &[b.clone(), b], &hyp, prec.tolerance(), prec.bits())
}

/// `f(N, k) = k! · 2N^{2k} Σ_{0<h<N/2, (h,N)=1} summand(N, h)`, with at least
/// `digits` correct fractional digits.
pub fn f_value(n: u32, k: u32, digits: u32) -> Result<CeresaResult> {
    let curve = FermatCurve::new(n)?;
    check_k(curve, k)?;
    let digits = digits.max(MIN_FRACTION_DIGITS);
    Precision::new(digits)?;
    let hs = half_units(n);
    let pre = prefactor(n, k);
    let wd = working_digits(&pre, hs.len(), digits)?;
    let mut acc = BoundedReal::zero(Precision::new(wd)?.bits());
    for &h in &hs {
        acc = acc.add(&summand(n, h, wd)?);
    }
    Ok(CeresaResult::from_value(n, k, acc.mul_integer(&pre), hs.len(), digits))
}

/// `f(N, k)` for every `N` in `ns`, in ascending order. Rows are computed in
/// parallel on the current rayon pool.
pub fn table1(ns: impl IntoIterator<Item = u32>, k: u32, digits: u32) -> Vec<(u32, Result<CeresaResult>)> {
    let mut ns: Vec<u32> = ns.into_iter().collect();
    ns.sort_unstable();
    ns.dedup();
    ns.into_par_iter().map(|n| (n, f_value(n, k, digits))).collect()
}

/// The Klein quartic value
/// `k! · 2 · 7^{2k} (Γ[3/7,6/7;2/7]² + Γ[5/7,6/7;4/7]² + Γ[3/7,5/7;1/7]²) ₃F₂(1/7,2/7,4/7;1,1;1)`.
pub fn klein_value(k: u32, digits: u32) -> Result<CeresaResult> {
    let curve = FermatCurve::new(7)?;
    check_k(curve, k)?;
    let digits = digits.max(MIN_FRACTION_DIGITS);
    let pre = prefactor(7, k);
    let wd = working_digits(&pre, 3, digits)? + 2;
    let q = |a: u32| Rational::from((a, 7));
    let sq = |a, b, c| -> Result<BoundedReal> { Ok(gamma_quotient(&[q(a), q(b)], &[q(c)], wd)?.square()) };
    let gammas = sq(3, 6, 2)?.add(&sq(5, 6, 4)?).add(&sq(3, 5, 1)?);
    let one = Rational::from(1);
    let f = hyp3f2_unit(&Hyp3F2Params::new(q(1), q(2), q(4), one.clone(), one), wd)?;
    let v = gammas.mul(&f).mul_integer(&pre);
    Ok(CeresaResult::from_value(7, k, v, 3, digits))
}
