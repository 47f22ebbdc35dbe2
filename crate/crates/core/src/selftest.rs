//! Self-checks that compare independent evaluations of the same quantity:
//! the ten Euler double-integral expressions against each other, and the
//! closed-form δ-integrals against direct quadrature.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rug::Rational;
use serde::Serialize;

use crate::error::Result;
use crate::fermat::{all_indices, delta_iterated_integral, FermatCurve, FermatIndex};
use crate::specfun::{dixon_disagreement, dixon_family, euler_double_integral, QuadratureSpec};

/// Largest denominator of the random parameters.
pub const MAX_DENOMINATOR: u32 = 97;

/// `count` parameter quadruples in `(0,1)^4` with random denominators up to
/// [`MAX_DENOMINATOR`], reproducible from `seed`.
pub fn random_quadruples(count: usize, seed: u64) -> Vec<[Rational; 4]> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut one = || {
        let q = rng.random_range(2..=MAX_DENOMINATOR);
        let p = rng.random_range(1..q);
        Rational::from((p, q))
    };
    (0..count).map(|_| [one(), one(), one(), one()]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DixonTrial {
    pub params: [String; 4],
    /// Members whose series converge and were evaluated.
    pub evaluated: usize,
    /// First pair of members with disjoint enclosures.
    pub disagreement: Option<(usize, usize)>,
    /// Largest pairwise gap between midpoints.
    pub spread: f64,
}

impl DixonTrial {
    pub fn passed(&self) -> bool {
        self.disagreement.is_none() && self.evaluated > 0
    }
}

/// Evaluate the family on each quadruple (in parallel on the current pool).
pub fn dixon_trials(quads: &[[Rational; 4]], digits: u32) -> Result<Vec<DixonTrial>> {
    quads
        .par_iter()
        .map(|[a1, b1, a2, b2]| {
            let members = dixon_family(a1, b1, a2, b2, digits)?;
            let vals: Vec<f64> = members.iter().filter_map(|m| m.value.as_ref().map(|v| v.to_f64())).collect();
            let spread = match (vals.iter().cloned().reduce(f64::min), vals.iter().cloned().reduce(f64::max)) {
                (Some(lo), Some(hi)) => hi - lo,
                _ => 0.0,
            };
            Ok(DixonTrial {
                params: [a1.to_string(), b1.to_string(), a2.to_string(), b2.to_string()],
                evaluated: vals.len(),
                disagreement: dixon_disagreement(&members),
                spread,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadratureCheck {
    pub first: (u32, u32),
    pub second: (u32, u32),
    pub closed_form: f64,
    pub quadrature: f64,
    pub quadrature_err: f64,
    pub difference: f64,
}

/// The δ-integral of the normalized forms from raw quadrature:
/// `∫∫ / (N² B(α1,β1) B(α2,β2))`.
pub fn delta_by_quadrature(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let raw = euler_double_integral(&idx1.alpha(), &idx1.beta(), &idx2.alpha(), &idx2.beta(), spec)?;
    let n2 = Rational::from(curve.n() * curve.n());
    let norm = idx1.normalization(20)?.mul(&idx2.normalization(20)?).mul_rational(&n2);
    let q = raw.div(&norm)?;
    Ok((q.to_f64(), q.err()))
}

/// Closed form against quadrature for every ordered pair of indices.
pub fn delta_quadrature_checks(curve: FermatCurve, spec: &QuadratureSpec) -> Result<Vec<QuadratureCheck>> {
    let idx = all_indices(curve.n());
    let pairs: Vec<(FermatIndex, FermatIndex)> = idx.iter().flat_map(|a| idx.iter().map(move |b| (*a, *b))).collect();
    pairs
        .par_iter()
        .map(|&(i1, i2)| {
            let closed = delta_iterated_integral(curve, i1, i2, 20)?.to_f64();
            let (quad, err) = delta_by_quadrature(curve, i1, i2, spec)?;
            Ok(QuadratureCheck {
                first: (i1.a(), i1.b()),
                second: (i2.a(), i2.b()),
                closed_form: closed,
                quadrature: quad,
                quadrature_err: err,
                difference: (closed - quad).abs(),
            })
        })
        .collect()
}
