//! ₃F₂ at unit argument.

use rug::Rational;

use super::series::{RatioSeries, SeriesSum};
use crate::bounded::{BoundedReal, Precision};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Hyp3F2Params {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
}

impl Hyp3F2Params {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational) -> Self {
        Hyp3F2Params { a, b, c, d, e }
    }

    /// `d + e - a - b - c`.
    pub fn margin(&self) -> Rational {
        Rational::from(&self.d + &self.e) - &self.a - &self.b - &self.c
    }

    pub fn series(&self) -> Result<RatioSeries> {
        RatioSeries::new(
            Rational::from(1),
            vec![self.a.clone(), self.b.clone(), self.c.clone()],
            vec![self.d.clone(), self.e.clone(), Rational::from(1)],
        )
    }
}

/// Series evaluation with total error at most `target` at `bits` of working precision.
pub fn hyp3f2_unit_target(p: &Hyp3F2Params, target: f64, bits: u32) -> Result<SeriesSum> {
    let s = p.series()?;
    if s.terminates_at().is_none() && p.margin() <= 0 {
        return Err(Error::Divergent(p.margin().to_string()));
    }
    s.sum(target, bits)
}

/// `₃F₂(a, b, c; d, e; 1)` with absolute error at most `10^-digits`.
pub fn hyp3f2_unit(p: &Hyp3F2Params, digits: u32) -> Result<BoundedReal> {
    let prec = Precision::new(digits)?;
    let tol = prec.tolerance();
    let mut bits = prec.bits();
    for _ in 0..6 {
        let s = hyp3f2_unit_target(p, tol, bits)?;
        if s.value.err() <= tol {
            return Ok(s.value);
        }
        bits += 64;
    }
    Err(Error::PrecisionExhausted(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_quotient;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn truncates_at_zero_parameter() {
        let p = Hyp3F2Params::new(q(1, 3), q(2, 7), q(0, 1), q(1, 2), q(5, 4));
        let v = hyp3f2_unit(&p, 30).unwrap();
        assert_eq!(v.to_f64(), 1.0);
    }

    #[test]
    fn gauss_collapse() {
        // c = d reduces to 2F1(1/4, 1/4; 1; 1) = Γ(1)Γ(1/2)/Γ(3/4)^2
        let p = Hyp3F2Params::new(q(1, 4), q(1, 4), q(1, 1), q(1, 1), q(1, 1));
        let v = hyp3f2_unit(&p, 50).unwrap();
        let g = gamma_quotient(&[q(1, 1), q(1, 2)], &[q(3, 4), q(3, 4)], 60).unwrap();
        assert!(v.overlaps(&g), "{v:?} vs {g:?}");
        assert!(v.err() <= 1e-50);
    }

    #[test]
    fn divergent_rejected() {
        let p = Hyp3F2Params::new(q(1, 1), q(1, 1), q(1, 1), q(1, 1), q(1, 1));
        assert!(matches!(hyp3f2_unit(&p, 20), Err(Error::Divergent(_))));
    }

    #[test]
    fn meets_requested_precision() {
        let p = Hyp3F2Params::new(q(1, 5), q(1, 5), q(3, 5), q(1, 1), q(1, 1));
        let lo = hyp3f2_unit(&p, 30).unwrap();
        for d in [60u32, 120] {
            let v = hyp3f2_unit(&p, d).unwrap();
            assert!(v.err() <= Precision::new(d).unwrap().tolerance());
            assert!(lo.overlaps(&v));
        }
    }
}
