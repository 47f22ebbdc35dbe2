//! ln Γ for positive rationals via shifted Stirling series with an explicit
//! remainder bound, and Γ-quotients built on it.

use std::sync::{Mutex, OnceLock};

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::bounded::{add_up, mul_up, BoundedReal, Precision};
use crate::error::{Error, Result};

/// Exact B_0, B_1, ..., extended on demand.
fn bernoulli_upto(m: usize) -> Vec<Rational> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut b = table.lock().unwrap();
    while b.len() <= m {
        let n = b.len();
        // B_n = -1/(n+1) sum_{k<n} C(n+1,k) B_k
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(bk * &binom);
            binom *= (n + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        b.push(-acc / Rational::from(n as u32 + 1));
    }
    b[..=m].to_vec()
}

pub fn bernoulli(m: usize) -> Rational {
    bernoulli_upto(m).pop().unwrap()
}

/// `ln Γ(x)` at roughly `bits` of working precision with a rigorous bound.
pub fn ln_gamma_bits(x: &Rational, bits: u32) -> Result<BoundedReal> {
    if *x <= 0 {
        return Err(Error::NonPositiveArgument(x.to_string()));
    }
    if *x == 1 || *x == 2 {
        return Ok(BoundedReal::zero(bits));
    }
    let w = bits + 32;
    let y0 = Rational::from(bits.max(16));
    let shift = if *x >= y0 {
        0u32
    } else {
        Rational::from(&y0 - x).ceil().numer().to_u32().expect("shift fits")
    };
    let y = Rational::from(x + shift);


    let yb = BoundedReal::from_rational(&y, w);
    let lny = yb.ln()?;
    let half = Rational::from((1, 2));
    let mut acc = BoundedReal::from_rational(&Rational::from(&y - &half), w).mul(&lny).sub(&yb);
    let two_pi = BoundedReal::pi(w).mul_rational(&Rational::from(2));
    acc = acc.add(&two_pi.ln()?.mul_rational(&half));

    // sum_{k=1}^{K} B_2k / (2k(2k-1) y^(2k-1)) until the next term is negligible
    // each term is formed exactly and rounded once, so its error stays
    // relative even when y^(1-2k) is below the f64 range
    let y2 = Rational::from(y.square_ref());
    let mut pw = Rational::from(1) / &y;
    let log2_y = Float::with_val(64, &y).log2().to_f64_round(Round::Down);
    let mut k = 1usize;
    loop {
        let b = bernoulli_upto(2 * k + 2);
        let coef = Rational::from(&b[2 * k] / Integer::from((2 * k) * (2 * k - 1)));
        acc = acc.add(&BoundedReal::from_rational(&(coef * &pw), w));
        // for real y > 0 the remainder is bounded by the first omitted term
        let next = Rational::from(&b[2 * k + 2] / Integer::from((2 * k + 2) * (2 * k + 1)));
        let log2_next = Float::with_val(64, &next).abs().log2().to_f64_round(Round::Up) + 1e-9;
        let log2_rem = log2_next - (2 * k + 1) as f64 * log2_y;
        if log2_rem < -(bits as f64) - 8.0 || k > 4 * bits as usize {
            let rem = 2f64.powf(log2_rem + 1e-9).max(f64::from_bits(1));
            acc = acc.inflate(rem);
            break;
        }
        pw /= &y2;
        k += 1;
    }
    // subtract ln of x(x+1)...(x+shift-1), taken in exact chunks small
    // enough for f64 error bounds
    let mut prod = Rational::from(1);
    for i in 0..shift {
        prod *= Rational::from(x + i);
        let mag = prod.numer().significant_bits() as i64 - prod.denom().significant_bits() as i64;
        if mag > 600 || i + 1 == shift {
            acc = acc.sub(&BoundedReal::from_rational(&prod, w).ln()?);
            prod = Rational::from(1);
        }
    }
    Ok(acc.with_prec(bits.max(64)))
}

/// `ln Γ(x)` with absolute error at most `10^-digits`.
pub fn ln_gamma(x: &Rational, digits: u32) -> Result<BoundedReal> {
    let p = Precision::new(digits)?;
    escalate(p, |bits| ln_gamma_bits(x, bits))
}

/// `ln Γ` of an enclosure: evaluated at the midpoint, with the input error
/// carried through `|psi(t)| <= |ln t| + 1/t`.
pub fn ln_gamma_bounded(x: &BoundedReal, digits: u32) -> Result<BoundedReal> {
    let lo = x.lower_f64();
    if !(lo > 0.0) {
        return Err(Error::NonPositiveArgument(format!("{x:?}")));
    }
    let hi = x.upper_f64();
    let psi = add_up(lo.ln().abs().max(hi.ln().abs()), 1.0 / lo) * (1.0 + 1e-12);
    let mid = x.midpoint_rational();
    let v = ln_gamma(&mid, digits)?;
    Ok(v.inflate(mul_up(psi, x.err())))
}

/// `prod Γ(num_i) / prod Γ(den_j)` at `bits` of working precision.
pub fn gamma_quotient_bits(num: &[Rational], den: &[Rational], bits: u32) -> Result<BoundedReal> {
    let mut acc = BoundedReal::zero(bits);
    for a in num {
        acc = acc.add(&ln_gamma_bits(a, bits)?);
    }
    for b in den {
        acc = acc.sub(&ln_gamma_bits(b, bits)?);
    }
    Ok(acc.exp())
}

/// The bracket `Γ[num ; den]` with absolute error at most `10^-digits`.
pub fn gamma_quotient(num: &[Rational], den: &[Rational], digits: u32) -> Result<BoundedReal> {
    let p = Precision::new(digits)?;
    for q in num.iter().chain(den) {
        if *q <= 0 {
            return Err(Error::NonPositiveArgument(q.to_string()));
        }
    }
    escalate(p, |bits| gamma_quotient_bits(num, den, bits))
}

/// Retry `f` with more bits until its bound meets the precision target.
pub(crate) fn escalate<F>(p: Precision, f: F) -> Result<BoundedReal>
where
    F: Fn(u32) -> Result<BoundedReal>,
{
    escalate_to(p.tolerance(), p.bits(), f)
}

pub(crate) fn escalate_to<F>(tol: f64, start_bits: u32, f: F) -> Result<BoundedReal>
where
    F: Fn(u32) -> Result<BoundedReal>,
{
    let mut bits = start_bits;
    for _ in 0..8 {
        let v = f(bits)?;
        if v.err() <= tol {
            return Ok(v);
        }
        let short = (v.err() / tol).log2().ceil();
        if !short.is_finite() || short > 1e5 {
            return Err(Error::PrecisionExhausted(bits));
        }
        bits += short.max(0.0) as u32 + 32;
    }
    Err(Error::PrecisionExhausted(bits))
}
