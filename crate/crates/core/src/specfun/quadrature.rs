//! Adaptive Gauss-Kronrod (7/15) quadrature in `f64`, and the Euler double
//! integral over `0 <= u <= v <= 1` built on it. This is an oracle: the error
//! it reports is an a-posteriori estimate, not a proof.

use rug::{Float, Rational};

use crate::bounded::BoundedReal;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Target absolute accuracy `10^-digits`; at most 14 in `f64`.
    pub digits: u32,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { digits: 12, max_subdivisions: 2000 }
    }
}

impl QuadratureSpec {
    pub fn tolerance(&self) -> f64 {
        10f64.powi(-(self.digits.min(14) as i32))
    }

    /// Endpoint exponents `(alpha_1-1, beta_1-1, alpha_2-1, beta_2-1)` of the
    /// Euler integrand; all must exceed -1.
    pub fn exponents(params: [&Rational; 4]) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for (o, p) in out.iter_mut().zip(params) {
            if *p <= 0 || *p > 1 {
                return Err(Error::Quadrature(format!("parameter {p} outside (0, 1]")));
            }
            *o = p.to_f64() - 1.0;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub err: f64,
    pub intervals: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (f(c - x), f(c + x));
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let (k, g) = (kron * h, gauss * h);
    (k, (k - g).abs())
}

/// Globally adaptive integration of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_subdivisions: usize) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, err: 0.0, intervals: 0 });
    }
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let total: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::Quadrature("non-finite integrand value".into()));
        }
        let floor = 64.0 * f64::EPSILON * parts.iter().map(|p| p.2.abs()).sum::<f64>();
        if err <= tol.max(floor) {
            return Ok(QuadResult { value: total, err: err.max(floor), intervals: parts.len() });
        }
        if parts.len() >= max_subdivisions {
            return Err(Error::Quadrature(format!(
                "subdivision budget {max_subdivisions} exhausted (estimate {err:e})"
            )));
        }
        let worst = (0..parts.len()).max_by(|&i, &j| parts[i].3.total_cmp(&parts[j].3)).unwrap();
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Quadrature("interval underflow".into()));
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// `∫_0^1 u^{s-1} (1-u)^{t-1} du` by quadrature with both endpoint
/// singularities removed.
pub fn beta_quadrature(s: f64, t: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    let tol = spec.tolerance() / 2.0;
    let left = integrate(|w| (1.0 - w.powf(1.0 / s)).powf(t - 1.0) / s, 0.0, 0.5f64.powf(s), tol, spec.max_subdivisions)?;
    let right = integrate(|w| (1.0 - w.powf(1.0 / t)).powf(s - 1.0) / t, 0.0, 0.5f64.powf(t), tol, spec.max_subdivisions)?;
    Ok(QuadResult { value: left.value + right.value, err: left.err + right.err, intervals: left.intervals + right.intervals })
}

/// Incomplete beta `∫_0^v u^{a-1}(1-u)^{b-1} du` for `0 <= v <= 1`.
struct IncompleteBeta {
    a: f64,
    b: f64,
    total: f64,
    tol: f64,
    budget: usize,
}

impl IncompleteBeta {
    fn lower(&self, v: f64) -> Result<(f64, f64)> {
        let (a, b) = (self.a, self.b);
        let r = integrate(|w| (1.0 - w.powf(1.0 / a)).powf(b - 1.0) / a, 0.0, v.powf(a), self.tol, self.budget)?;
        Ok((r.value, r.err))
    }

    /// Takes `1 - v` directly to avoid cancellation near `v = 1`.
    fn upper(&self, one_minus_v: f64) -> Result<(f64, f64)> {
        let (a, b) = (self.a, self.b);
        let r = integrate(|w| (1.0 - w.powf(1.0 / b)).powf(a - 1.0) / b, 0.0, one_minus_v.powf(b), self.tol, self.budget)?;
        Ok((r.value, r.err))
    }

    fn eval(&self, v: f64, one_minus_v: f64) -> Result<(f64, f64)> {
        if v <= 0.5 {
            self.lower(v)
        } else {
            let (u, e) = self.upper(one_minus_v)?;
            Ok((self.total - u, e))
        }
    }
}

/// `∫∫_{0<=u<=v<=1} u^{a1-1}(1-u)^{b1-1} v^{a2-1}(1-v)^{b2-1} du dv`.
pub fn euler_double_integral(
    a1: &Rational,
    b1: &Rational,
    a2: &Rational,
    b2: &Rational,
    spec: &QuadratureSpec,
) -> Result<BoundedReal> {
    QuadratureSpec::exponents([a1, b1, a2, b2])?;
    let (a1, b1, a2, b2) = (a1.to_f64(), b1.to_f64(), a2.to_f64(), b2.to_f64());
    let tol = spec.tolerance();
    let inner_tol = tol * 1e-3;
    let budget = spec.max_subdivisions;
    let beta = beta_quadrature(a1, b1, &QuadratureSpec { digits: spec.digits + 3, max_subdivisions: budget })?;
    let inner = IncompleteBeta { a: a1, b: b1, total: beta.value, tol: inner_tol, budget };
    let failure = std::cell::Cell::new(None::<Error>);
    let inner_err = std::cell::Cell::new(0f64);
    let eval = |v: f64, one_minus_v: f64| -> f64 {
        match inner.eval(v, one_minus_v) {
            Ok((x, e)) => {
                inner_err.set(inner_err.get().max(e));
                x
            }
            Err(err) => {
                failure.set(Some(err));
                f64::NAN
            }
        }
    };

    // [0, 1/2]: v = w^(1/g), g = a1 + a2; integrand (1/g) F(v) v^-a1 (1-v)^(b2-1)
    let g = a1 + a2;
    let left = integrate(
        |w| {
            if w == 0.0 {
                return (1.0 / a1) / g;
            }
            let v = w.powf(1.0 / g);
            eval(v, 1.0 - v) / v.powf(a1) * (1.0 - v).powf(b2 - 1.0) / g
        },
        0.0,
        0.5f64.powf(g),
        tol / 2.0,
        budget,
    );
    // [1/2, 1]: 1 - v = w^(1/b2); integrand (1/b2) v^(a2-1) F(v)
    let right = integrate(
        |w| {
            let t = w.powf(1.0 / b2);
            let v = 1.0 - t;
            v.powf(a2 - 1.0) * eval(v, t) / b2
        },
        0.0,
        0.5f64.powf(b2),
        tol / 2.0,
        budget,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let (left, right) = (left?, right?);
    let outer_mass = beta_quadrature(a2, b2, &QuadratureSpec { digits: 8, max_subdivisions: budget })?.value;
    let err = left.err + right.err + (inner_err.get() + beta.err) * outer_mass;
    Ok(BoundedReal::new(Float::with_val(53, left.value + right.value), err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn simplex_area() {
        let v = euler_double_integral(&q(1, 1), &q(1, 1), &q(1, 1), &q(1, 1), &QuadratureSpec::default()).unwrap();
        assert!((v.to_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hand_integrated_case() {
        let v = euler_double_integral(&q(1, 2), &q(1, 1), &q(1, 1), &q(1, 1), &QuadratureSpec::default()).unwrap();
        assert!((v.to_f64() - 4.0 / 3.0).abs() < 1e-11, "{v:?}");
    }

    #[test]
    fn beta_values() {
        let r = beta_quadrature(0.5, 0.5, &QuadratureSpec::default()).unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_exponents() {
        let spec = QuadratureSpec::default();
        assert!(euler_double_integral(&q(0, 1), &q(1, 2), &q(1, 2), &q(1, 2), &spec).is_err());
        assert!(euler_double_integral(&q(3, 2), &q(1, 2), &q(1, 2), &q(1, 2), &spec).is_err());
    }

    #[test]
    fn strong_singularities() {
        let spec = QuadratureSpec::default();
        let v = euler_double_integral(&q(1, 8), &q(1, 8), &q(1, 8), &q(1, 8), &spec).unwrap();
        assert!(v.err() < 1e-9, "{v:?}");
    }
}
