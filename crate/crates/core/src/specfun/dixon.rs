//! Γ-bracket × ₃F₂ products, and the ten equal expressions for the Euler
//! double integral.

use rug::Rational;

use super::gamma::{escalate_to, gamma_quotient_bits};
use super::hyp3f2::{hyp3f2_unit_target, Hyp3F2Params};
use crate::bounded::{BoundedReal, Precision};
use crate::error::{Error, Result};

/// `Γ[num; den] · ₃F₂(p; 1)` with absolute error at most `tol`.
pub fn gamma_hyp_product(
    num: &[Rational],
    den: &[Rational],
    p: &Hyp3F2Params,
    tol: f64,
    start_bits: u32,
) -> Result<BoundedReal> {
    for q in num.iter().chain(den) {
        if *q <= 0 {
            return Err(Error::NonPositiveArgument(q.to_string()));
        }
    }
    let g0 = gamma_quotient_bits(num, den, 64)?;
    let f0 = hyp3f2_unit_target(p, 1e-3, 64)?.value;
    let gm = g0.abs_upper().max(1.0);
    let fm = f0.abs_upper().max(1.0);
    escalate_to(tol, start_bits, |bits| {
        let g = escalate_to(tol / (4.0 * fm), bits, |b| gamma_quotient_bits(num, den, b))?;
        let f = hyp3f2_unit_target(p, tol / (4.0 * gm), bits)?.value;
        Ok(g.mul(&f))
    })
}

#[derive(Clone, Debug)]
pub struct DixonExpression {
    pub gamma_num: Vec<Rational>,
    pub gamma_den: Vec<Rational>,
    pub hyp: Hyp3F2Params,
}

impl DixonExpression {
    /// Convergence margin of the ₃F₂ factor.
    pub fn margin(&self) -> Rational {
        self.hyp.margin()
    }
}

#[derive(Clone, Debug)]
pub struct DixonMember {
    /// 1-based position in the family.
    pub index: usize,
    pub margin: Rational,
    /// `None` when the member's series does not converge.
    pub value: Option<BoundedReal>,
}

fn check_unit_interval(ps: [&Rational; 4]) -> Result<()> {
    for p in ps {
        if *p <= 0 || *p >= 1 {
            return Err(Error::Precondition(format!("parameter {p} outside (0, 1)")));
        }
    }
    Ok(())
}

/// The ten expressions, in order; the last is the symmetric default.
pub fn dixon_expressions(a1: &Rational, b1: &Rational, a2: &Rational, b2: &Rational) -> Vec<DixonExpression> {
    let one = Rational::from(1);
    let s = Rational::from(a1 + b1) + a2 + b2;
    let a12 = Rational::from(a1 + a2);
    let b12 = Rational::from(b1 + b2);
    let a1b1 = Rational::from(a1 + b1);
    let a2b2 = Rational::from(a2 + b2);
    let a12b2 = Rational::from(&a12 + b2);
    let a1b12 = Rational::from(a1 + &b12);
    let a1p1 = Rational::from(a1 + 1u32);
    let b2p1 = Rational::from(b2 + 1u32);
    let om_a2 = Rational::from(1u32 - a2);
    let om_b1 = Rational::from(1u32 - b1);
    let sm1 = Rational::from(&s - 1u32);
    let e = |gn: Vec<Rational>, gd: Vec<Rational>, h: [Rational; 5]| {
        let [a, b, c, d, e] = h;
        DixonExpression { gamma_num: gn, gamma_den: gd, hyp: Hyp3F2Params::new(a, b, c, d, e) }
    };
    vec![
        e(
            vec![a1.clone(), b2.clone(), a12.clone()],
            vec![a1p1.clone(), a12b2.clone()],
            [a1.clone(), om_b1.clone(), a12.clone(), a1p1.clone(), a12b2.clone()],
        ),
        e(
            vec![a1.clone(), b2.clone(), b12.clone()],
            vec![b2p1.clone(), a1b12.clone()],
            [om_a2.clone(), b2.clone(), b12.clone(), b2p1.clone(), a1b12.clone()],
        ),
        e(
            vec![a1.clone(), b2.clone(), a12.clone(), b12.clone()],
            vec![a1p1.clone(), a2b2.clone(), a1b12.clone()],
            [a1.clone(), om_a2.clone(), a1b1.clone(), a1p1.clone(), a1b12.clone()],
        ),
        e(
            vec![a1.clone(), b2.clone(), a12.clone(), b12.clone()],
            vec![b2p1.clone(), a1b1.clone(), a12b2.clone()],
            [om_b1.clone(), b2.clone(), a2b2.clone(), b2p1.clone(), a12b2.clone()],
        ),
        e(
            vec![a1.clone(), a12.clone(), b12.clone()],
            vec![a1p1.clone(), s.clone()],
            [a12.clone(), a1b1.clone(), one.clone(), a1p1.clone(), s.clone()],
        ),
        e(
            vec![a12.clone(), b2.clone(), b12.clone()],
            vec![b2p1.clone(), s.clone()],
            [a2b2.clone(), b12.clone(), one.clone(), b2p1.clone(), s.clone()],
        ),
        e(
            vec![a1.clone(), b2.clone(), a12.clone(), b12.clone()],
            vec![om_a2.clone(), a12b2.clone(), s.clone()],
            [a12.clone(), a2b2.clone(), sm1.clone(), a12b2.clone(), s.clone()],
        ),
        e(
            vec![a1.clone(), b2.clone(), a12.clone(), b12.clone()],
            vec![om_b1.clone(), a1b12.clone(), s.clone()],
            [a1b1.clone(), b12.clone(), sm1.clone(), a1b12.clone(), s.clone()],
        ),
        e(
            vec![a1.clone(), b2.clone(), a12.clone(), b12.clone()],
            vec![a1p1.clone(), b2p1.clone(), sm1.clone()],
            [om_a2, om_b1, one, a1p1, b2p1],
        ),
        e(
            vec![a1.clone(), b2.clone(), a12, b12],
            vec![a12b2.clone(), a1b12.clone()],
            [a1.clone(), b2.clone(), sm1, a12b2, a1b12],
        ),
    ]
}

/// Evaluate every member whose own ₃F₂ converges; the rest are skipped.
pub fn dixon_family(a1: &Rational, b1: &Rational, a2: &Rational, b2: &Rational, digits: u32) -> Result<Vec<DixonMember>> {
    check_unit_interval([a1, b1, a2, b2])?;
    let prec = Precision::new(digits)?;
    dixon_expressions(a1, b1, a2, b2)
        .into_iter()
        .enumerate()
        .map(|(i, ex)| {
            let margin = ex.margin();
            let value = if margin > 0 {
                Some(gamma_hyp_product(&ex.gamma_num, &ex.gamma_den, &ex.hyp, prec.tolerance(), prec.bits())?)
            } else {
                None
            };
            Ok(DixonMember { index: i + 1, margin, value })
        })
        .collect()
}

/// The first pair of evaluated members whose enclosures are disjoint, if any.
pub fn dixon_disagreement(members: &[DixonMember]) -> Option<(usize, usize)> {
    let vals: Vec<(usize, &BoundedReal)> = members.iter().filter_map(|m| m.value.as_ref().map(|v| (m.index, v))).collect();
    for (i, (ia, a)) in vals.iter().enumerate() {
        for (ib, b) in &vals[i + 1..] {
            if !a.overlaps(b) {
                return Some((*ia, *ib));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quadrature::{euler_double_integral, QuadratureSpec};

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn ten_way_agreement() {
        let m = dixon_family(&q(1, 3), &q(1, 2), &q(1, 4), &q(2, 5), 30).unwrap();
        assert!(m.iter().all(|x| x.value.is_some()));
        assert_eq!(dixon_disagreement(&m), None);
        let v = m[9].value.as_ref().unwrap().to_f64();
        assert!((v - 11.6204657851).abs() < 1e-9, "{v}");
    }

    #[test]
    fn ninth_member_follows_its_own_margin() {
        let small = dixon_family(&q(1, 8), &q(1, 8), &q(1, 8), &q(1, 8), 25).unwrap();
        assert!(small[8].value.is_none());
        assert!(small[8].margin < 0);
        assert_eq!(small.iter().filter(|m| m.value.is_some()).count(), 9);
        assert_eq!(dixon_disagreement(&small), None);

        let half = dixon_family(&q(1, 2), &q(1, 2), &q(1, 2), &q(1, 2), 25).unwrap();
        assert!(half.iter().all(|m| m.value.is_some()));
        assert_eq!(dixon_disagreement(&half), None);
        assert!((half[8].value.as_ref().unwrap().to_f64() - 4.93480220054).abs() < 1e-10);
    }

    #[test]
    fn matches_quadrature() {
        let (a1, b1, a2, b2) = (q(1, 4), q(3, 4), q(1, 2), q(1, 4));
        let m = dixon_family(&a1, &b1, &a2, &b2, 20).unwrap();
        let quad = euler_double_integral(&a1, &b1, &a2, &b2, &QuadratureSpec::default()).unwrap();
        assert!((m[9].value.as_ref().unwrap().to_f64() - quad.to_f64()).abs() < 1e-8);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(dixon_family(&q(1, 1), &q(1, 2), &q(1, 2), &q(1, 2), 20).is_err());
    }
}
