use rug::Integer;
use serde::Serialize;

use super::value::{classify, f_value, CeresaResult, Verdict};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub result: CeresaResult,
    /// Suggested digits for a retry when the verdict is inconclusive.
    pub retry_digits: Option<u32>,
}

impl CheckOutcome {
    fn from_result(result: CeresaResult) -> Self {
        let retry_digits = match result.verdict {
            Verdict::NonIntegral => None,
            Verdict::Inconclusive => Some(retry_hint(&result)),
        };
        CheckOutcome { result, retry_digits }
    }
}

fn retry_hint(r: &CeresaResult) -> u32 {
    let dist = r.int_distance.to_f64();
    let needed = if dist > 0.0 { (-(dist / 10.0).log10()).ceil() as u32 + 2 } else { 2 * r.digits };
    needed.max(2 * r.digits)
}

/// Whether `f(N, k)` is shown non-integral at `digits`.
pub fn nonintegrality_check(n: u32, k: u32, digits: u32) -> Result<CheckOutcome> {
    Ok(CheckOutcome::from_result(f_value(n, k, digits)?))
}

/// Verdict logic applied to a result whose value was supplied by the caller.
pub fn check_result(result: CeresaResult) -> CheckOutcome {
    CheckOutcome::from_result(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub n: u32,
    pub k: u32,
    pub m_max: u64,
    /// Every `1 <= m <= verified_up_to` gave a non-integral `m f(N, k)`.
    pub verified_up_to: u64,
    pub first_inconclusive: Option<u64>,
}

impl ScanReport {
    pub fn complete(&self) -> bool {
        self.first_inconclusive.is_none() && self.verified_up_to == self.m_max
    }
}

/// Check `m · f(N, k)` for `1 <= m <= m_max`.
pub fn multiples_scan(n: u32, k: u32, m_max: u64, digits: u32) -> Result<ScanReport> {
    if m_max == 0 {
        return Err(Error::Precondition("m_max must be at least 1".into()));
    }
    let base = f_value(n, k, digits)?;
    scan_value(&base, m_max)
}

/// The scan for an already computed value.
pub fn scan_value(base: &CeresaResult, m_max: u64) -> Result<ScanReport> {
    // the guaranteed bound, not the (possibly smaller) achieved one
    let bound = base.err.max(10f64.powi(-(base.digits as i32)));
    let worst = bound * m_max as f64;
    if !(worst < 0.1) {
        return Err(Error::InsufficientPrecision(format!(
            "m_max * err = {worst:e} is not below 0.1; raise digits above {}",
            base.digits
        )));
    }
    let mut report = ScanReport { n: base.n, k: base.k, m_max, verified_up_to: 0, first_inconclusive: None };
    for m in 1..=m_max {
        let v = base.value.mul_integer(&Integer::from(m));
        if classify(&v).2 != Verdict::NonIntegral {
            report.first_inconclusive = Some(m);
            return Ok(report);
        }
        report.verified_up_to = m;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounded::BoundedReal;

    #[test]
    fn forced_integer_is_inconclusive() {
        let mut r = f_value(5, 1, 12).unwrap();
        r = CeresaResult::from_value(r.n, r.k, BoundedReal::from_int(3, 64), r.h_terms, r.digits);
        let out = check_result(r);
        assert_eq!(out.result.verdict, Verdict::Inconclusive);
        assert!(out.retry_digits.is_some());
    }

    #[test]
    fn small_scan() {
        let r = multiples_scan(5, 1, 10, 20).unwrap();
        assert!(r.complete());
    }

    #[test]
    fn scan_needs_precision() {
        assert!(matches!(multiples_scan(5, 1, 1_000_000_000_000, 10), Err(Error::InsufficientPrecision(_))));
        assert!(multiples_scan(5, 1, 0, 10).is_err());
    }

    #[test]
    fn check_small() {
        let out = nonintegrality_check(5, 1, 20).unwrap();
        assert_eq!(out.result.verdict, Verdict::NonIntegral);
        assert_eq!(out.retry_digits, None);
    }
}
