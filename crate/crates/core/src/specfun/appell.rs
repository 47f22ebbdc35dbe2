//! Appell F₃ at (1, 1) as a genuine double series.
//!
//! The `(m, n)` plane is split into rows `m < M`, each a one-variable series
//! in `n`, and columns `n < K` of the region `m >= M`, each a one-variable
//! series in `m`. The corner `m >= M, n >= K` is bounded by
//! `|U_0(M)| * sum_{n>=K} (|a'|,n)(|b'|,n) / ((g+M,n) n!)`, using
//! `(g, m+n) >= (g, m) (g+M, n)` for `m >= M`.

use rug::Rational;

use super::gamma::escalate_to;
use super::series::RatioSeries;
use crate::bounded::{BoundedReal, Precision};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct AppellF3Params {
    pub alpha: Rational,
    pub alpha_p: Rational,
    pub beta: Rational,
    pub beta_p: Rational,
    pub gamma: Rational,
}

impl AppellF3Params {
    pub fn new(alpha: Rational, alpha_p: Rational, beta: Rational, beta_p: Rational, gamma: Rational) -> Self {
        AppellF3Params { alpha, alpha_p, beta, beta_p, gamma }
    }

    fn check(&self) -> Result<()> {
        let m1 = Rational::from(&self.gamma - &self.alpha) - &self.beta;
        let m2 = Rational::from(&self.gamma - &self.alpha_p) - &self.beta_p;
        if m1 <= 0 {
            return Err(Error::Divergent(m1.to_string()));
        }
        if m2 <= 0 {
            return Err(Error::Divergent(m2.to_string()));
        }
        if *self.gamma.denom() == 1 && self.gamma <= 0 {
            return Err(Error::PoleParameter(self.gamma.to_string()));
        }
        Ok(())
    }
}

fn poch_ratio(x: &Rational, k: u64) -> Rational {
    Rational::from(x + k)
}

fn abs(q: &Rational) -> Rational {
    Rational::from(q.abs_ref())
}

/// One evaluation at fixed split sizes.
fn f3_split(p: &AppellF3Params, rows: u64, target: f64, bits: u32) -> Result<BoundedReal> {
    let (a, ap, b, bp, g) = (&p.alpha, &p.alpha_p, &p.beta, &p.beta_p, &p.gamma);
    let mut acc = BoundedReal::zero(bits);

    // rows: c_m * 2F1(a', b'; g+m; 1) summed as a series in n
    let mut c = Rational::from(1);
    let piece = target / 8.0;
    for m in 0..rows {
        if c != 0 {
            let row = RatioSeries::new(
                Rational::from(1),
                vec![ap.clone(), bp.clone()],
                vec![Rational::from(g + m), Rational::from(1)],
            )?;
            let scale = c.to_f64().abs().max(1e-300);
            let s = row.sum(piece / (rows as f64 * scale.max(1.0)), bits)?;
            acc = acc.add(&s.value.mul_rational(&c));
        }
        c *= poch_ratio(a, m) * poch_ratio(b, m);
        c /= poch_ratio(g, m) * Rational::from(m + 1);
    }
    // c is now (a,M)(b,M) / ((g,M) M!)
    let corner_first = c;

    // majorant for the corner, independent of the column count
    let major = RatioSeries::new(
        Rational::from(1),
        vec![abs(ap), abs(bp)],
        vec![Rational::from(g + rows), Rational::from(1)],
    )?;
    if major.margin() <= 0 {
        return Err(Error::Precondition("row split too small for a convergent majorant".into()));
    }

    // columns: w_n * U_n(M); U_n(M) = sum_{m>=M} (a,m)(b,m) / ((g,m+n) m!)
    let mut w = Rational::from(1);
    let mut first = corner_first.clone();
    let mut u0_upper = None;
    let mut n = 0u64;
    loop {
        let col = RatioSeries::new(
            first.clone(),
            vec![Rational::from(a + rows), Rational::from(b + rows)],
            vec![Rational::from(g + (rows + n)), Rational::from(rows + 1)],
        )?;
        let scale = w.to_f64().abs().max(1.0);
        let u = col.sum(piece / (64.0 * scale), bits)?;
        if n == 0 {
            u0_upper = Some(u.value.abs_upper());
        }
        acc = acc.add(&u.value.mul_rational(&w));

        w *= poch_ratio(ap, n) * poch_ratio(bp, n);
        w /= Rational::from(n + 1);
        first /= poch_ratio(g, rows + n);
        n += 1;

        // corner bound from column n on
        let tail_series = RatioSeries::new(
            major.term_exact(n),
            vec![Rational::from(abs(ap) + n), Rational::from(abs(bp) + n)],
            vec![Rational::from(g + (rows + n)), Rational::from(n + 1)],
        )?;
        let t = tail_series.sum(f64::MAX, 64)?;
        let corner = u0_upper.unwrap() * t.value.abs_upper() * (1.0 + 1e-12);
        if corner <= target / 4.0 || n >= 4096 {
            if corner > target / 4.0 {
                return Err(Error::NonConvergence(n));
            }
            return Ok(acc.inflate(corner));
        }
    }
}

/// `F₃(α, α', β, β', γ; 1, 1)` with absolute error at most `10^-digits`.
pub fn appell_f3_unit(p: &AppellF3Params, digits: u32) -> Result<BoundedReal> {
    p.check()?;
    if p.beta == 0 && p.beta_p == 0 || p.alpha == 0 && p.alpha_p == 0 {
        return Ok(BoundedReal::one(Precision::new(digits)?.bits()));
    }
    let prec = Precision::new(digits)?;
    let biggest = [&p.alpha, &p.alpha_p, &p.beta, &p.beta_p, &p.gamma]
        .iter()
        .map(|q| q.to_f64().abs())
        .fold(0.0, f64::max);
    let rows = ((digits as f64 / 1.5).ceil() as u64).max(32) + biggest.ceil() as u64 + 2;
    escalate_to(prec.tolerance(), prec.bits(), |bits| f3_split(p, rows, prec.tolerance(), bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma_hyp_product, gamma_quotient, Hyp3F2Params};
    use crate::specfun::quadrature::{euler_double_integral, QuadratureSpec};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn zero_betas_give_one() {
        let p = AppellF3Params::new(q(1, 3), q(1, 5), q(0, 1), q(0, 1), q(2, 1));
        assert_eq!(appell_f3_unit(&p, 20).unwrap().to_f64(), 1.0);
    }

    #[test]
    fn divergence_detected() {
        let p = AppellF3Params::new(q(1, 1), q(1, 5), q(1, 1), q(1, 5), q(3, 2));
        assert!(matches!(appell_f3_unit(&p, 20), Err(Error::Divergent(_))));
    }

    #[test]
    fn euler_integral_identity() {
        let (a1, b1, a2, b2) = (q(1, 3), q(1, 2), q(1, 4), q(2, 5));
        let gamma = Rational::from(&a1 + &b2) + 1u32;
        let p = AppellF3Params::new(a1.clone(), b2.clone(), Rational::from(1u32 - &b1), Rational::from(1u32 - &a2), gamma.clone());
        let f3 = appell_f3_unit(&p, 20).unwrap();
        let pre = gamma_quotient(&[a1.clone(), b2.clone()], &[gamma], 25).unwrap();
        let lhs = pre.mul(&f3);
        let quad = euler_double_integral(&a1, &b1, &a2, &b2, &QuadratureSpec::default()).unwrap();
        assert!((lhs.to_f64() - quad.to_f64()).abs() < 1e-8, "{lhs:?} {quad:?}");
        assert!((lhs.to_f64() - 11.6204657851).abs() < 1e-9);
    }

    #[test]
    fn reduction_to_3f2() {
        let (a, ap, b, bp) = (q(1, 4), q(1, 2), q(3, 4), q(1, 3));
        let g = Rational::from(&a + &ap) + 1u32;
        let f3 = appell_f3_unit(&AppellF3Params::new(a.clone(), ap.clone(), b.clone(), bp.clone(), g.clone()), 25).unwrap();
        let c = Rational::from(&a - &bp) + 1u32;
        let e = Rational::from(&g - &bp);
        let rhs = gamma_hyp_product(
            &[g.clone(), c.clone()],
            &[Rational::from(&a + 1u32), e.clone()],
            &Hyp3F2Params::new(a.clone(), b, c, Rational::from(&a + 1u32), e),
            1e-25,
            200,
        )
        .unwrap();
        assert!(f3.overlaps(&rhs), "{f3:?} vs {rhs:?}");
        assert!(f3.err() <= 1e-25);
    }
}
