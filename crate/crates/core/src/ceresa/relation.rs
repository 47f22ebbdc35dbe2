//! LLL search for a small integer relation between a real number and a basis
//! of the real cyclotomic field `Q(ζ + ζ^{-1})`. Finding none is evidence,
//! not proof, that the number lies outside `Q(μ_N)`.

use rug::float::Round;
use rug::{Float, Integer};
use serde::Serialize;

use crate::bounded::{BoundedReal, Precision};
use crate::cyclotomic::totient;
use crate::error::{Error, Result};
use crate::fermat::{delta_iterated_integral, FermatCurve, TripleConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationDiagnostic {
    pub n: u32,
    /// Number of basis elements besides the value itself.
    pub field_degree: usize,
    /// Decimal digits of the value used in the lattice.
    pub scale_digits: u32,
    /// Coefficients of the shortest reduced vector: value first, then
    /// `1, 2cos(2π/N), ..., 2cos(2π(d-1)/N)`.
    pub shortest: Vec<String>,
    /// Largest absolute coefficient in `shortest`.
    pub max_coefficient: String,
    /// `|Σ c_i y_i|` for the shortest vector.
    pub residual: f64,
    pub relation_found: bool,
}

/// The basis `1, 2cos(2πj/N)` for `1 <= j < φ(N)/2`.
fn real_basis(n: u32, bits: u32) -> Vec<Float> {
    let d = (totient(n) as usize / 2).max(1);
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    (0..d)
        .map(|j| {
            if j == 0 {
                Float::with_val(bits, 1)
            } else {
                let t = Float::with_val(bits, &pi * (2 * j) as u32) / n;
                2 * t.cos()
            }
        })
        .collect()
}

/// Reduce the rows of `b` in place (δ = 3/4).
fn lll(b: &mut [Vec<Integer>], bits: u32) {
    let rows = b.len();
    let mut mu = vec![vec![Float::new(bits); rows]; rows];
    let mut bb = vec![Float::new(bits); rows];
    // Gram-Schmidt from scratch
    let mut star: Vec<Vec<Float>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut v: Vec<Float> = b[i].iter().map(|x| Float::with_val(bits, x)).collect();
        for j in 0..i {
            let num = b[i].iter().zip(&star[j]).fold(Float::new(bits), |acc, (x, s)| acc + Float::with_val(bits, x * s));
            mu[i][j] = num / &bb[j];
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= Float::with_val(bits, &mu[i][j] * sk);
            }
        }
        bb[i] = v.iter().fold(Float::new(bits), |acc, x| acc + Float::with_val(bits, x.square_ref()));
        star.push(v);
    }
    let reduce = |b: &mut [Vec<Integer>], mu: &mut [Vec<Float>], k: usize, l: usize| {
        if mu[k][l].clone().abs() > 0.5 {
            let q = mu[k][l].clone().round();
            let qi = q.to_integer().expect("finite");
            let (lo, hi) = b.split_at_mut(k);
            for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
                *x -= Integer::from(&qi * y);
            }
            for j in 0..l {
                let t = Float::with_val(bits, &q * &mu[l][j]);
                mu[k][j] -= t;
            }
            mu[k][l] -= &q;
        }
    };
    let delta = Float::with_val(bits, 0.75);
    let mut k = 1;
    let mut guard = 0u64;
    while k < rows && guard < 1_000_000 {
        guard += 1;
        reduce(b, &mut mu, k, k - 1);
        let m = mu[k][k - 1].clone();
        let lhs = bb[k].clone();
        let rhs = Float::with_val(bits, &delta - Float::with_val(bits, m.square_ref())) * &bb[k - 1];
        if lhs < rhs {
            let big = Float::with_val(bits, &bb[k] + Float::with_val(bits, m.square_ref()) * &bb[k - 1]);
            mu[k][k - 1] = Float::with_val(bits, &m * &bb[k - 1]) / &big;
            bb[k] = Float::with_val(bits, &bb[k - 1] * &bb[k]) / &big;
            bb[k - 1] = big;
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let new_m = mu[k][k - 1].clone();
            for row in mu.iter_mut().skip(k + 1) {
                let t = row[k].clone();
                row[k] = Float::with_val(bits, &row[k - 1] - Float::with_val(bits, &m * &t));
                row[k - 1] = t + Float::with_val(bits, &new_m * &row[k]);
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(b, &mut mu, k, l);
            }
            k += 1;
        }
    }
}

/// Search for `c_0 x + Σ c_j b_j = 0` with small integers.
pub fn relation_diagnostic(x: &BoundedReal, n: u32, scale_digits: u32) -> Result<RelationDiagnostic> {
    let usable = (-x.err().max(1e-300).log10()).floor() as u32;
    if scale_digits + 2 > usable {
        return Err(Error::InsufficientPrecision(format!(
            "value is only known to {usable} digits; {scale_digits} requested"
        )));
    }
    let bits = Precision::new(scale_digits.min(Precision::MAX_DIGITS))?.bits() * 2 + 128;
    let mut y = vec![x.value().clone()];
    y.extend(real_basis(n, bits));
    let dim = y.len();
    let scale = Float::with_val(bits, Float::u_pow_u(10, scale_digits));
    let mut b: Vec<Vec<Integer>> = (0..dim)
        .map(|i| {
            let mut row = vec![Integer::new(); dim + 1];
            row[i] = Integer::from(1);
            let s = Float::with_val(bits, &y[i] * &scale);
            row[dim] = s.to_integer_round(Round::Nearest).expect("finite").0;
            row
        })
        .collect();
    lll(&mut b, bits);
    let best = &b[0];
    let coeffs: Vec<Integer> = best[..dim].to_vec();
    let resid = coeffs
        .iter()
        .zip(&y)
        .fold(Float::new(bits), |acc, (c, v)| acc + Float::with_val(bits, c * v))
        .abs();
    let max_c = coeffs.iter().map(|c| c.clone().abs()).max().unwrap_or_default();
    // a genuine relation leaves a residual near the value's own error
    let found = coeffs[0] != 0 && resid.to_f64() <= (x.err() * max_c.to_f64() * 10.0).max(1e-300) * dim as f64;
    Ok(RelationDiagnostic {
        n,
        field_degree: dim - 1,
        scale_digits,
        shortest: coeffs.iter().map(|c| c.to_string()).collect(),
        max_coefficient: max_c.to_string(),
        residual: resid.to_f64(),
        relation_found: found,
    })
}

/// The diagnostic for `∫_δ ω^{1,-2} ω^{-2,1}`.
pub fn delta_relation_diagnostic(n: u32, scale_digits: u32) -> Result<RelationDiagnostic> {
    let curve = FermatCurve::new(n)?;
    let t = TripleConfig::example(curve)?;
    let d = delta_iterated_integral(curve, t.indices[0], t.indices[1], scale_digits + 10)?;
    relation_diagnostic(&d, n, scale_digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_planted_relation() {
        let bits = 400;
        let basis = real_basis(7, bits);
        let x = Float::with_val(bits, 3 + Float::with_val(bits, &basis[1] * 5u32) - Float::with_val(bits, &basis[2] * 2u32)) / 7u32;
        let v = BoundedReal::new(x, 1e-90);
        let d = relation_diagnostic(&v, 7, 60).unwrap();
        assert!(d.relation_found, "{d:?}");
        let c: Vec<i64> = d.shortest.iter().map(|s| s.parse().unwrap()).collect();
        let sign = c[0].signum();
        assert_eq!(c.iter().map(|x| x * sign).collect::<Vec<_>>(), vec![7, -3, -5, 2]);
    }

    #[test]
    fn no_small_relation_for_delta() {
        let d = delta_relation_diagnostic(7, 40).unwrap();
        assert!(!d.relation_found, "{d:?}");
        assert_eq!(d.field_degree, 3);
    }

    #[test]
    fn needs_precision() {
        let v = BoundedReal::new(Float::with_val(64, 0.5), 1e-10);
        assert!(relation_diagnostic(&v, 5, 20).is_err());
    }
}
