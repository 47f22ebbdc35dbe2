//! Periods, δ-iterated integrals and their recomposition along the loops
//! `κ` and `κ^{r,s}`.

use rug::Rational;

use super::index::{FermatCurve, FermatIndex, LoopIndex};
use crate::bounded::{BoundedComplex, BoundedReal, Precision};
use crate::cyclotomic::{embed, CycloElem, EmbeddingIndex};
use crate::error::{Error, Result};
use crate::specfun::{gamma_hyp_product, Hyp3F2Params};

fn xi(n: u32, j: i64) -> CycloElem {
    CycloElem::xi_pow(n, j)
}

fn one_minus(n: u32, j: i64) -> CycloElem {
    CycloElem::one(n) - xi(n, j)
}

fn check_curve(curve: FermatCurve, idx: &[FermatIndex]) -> Result<()> {
    for i in idx {
        if i.n() != curve.n() {
            return Err(Error::ModulusMismatch(i.n(), curve.n()));
        }
    }
    Ok(())
}

/// `∫_{(α^r β^s)_* κ} ω^{a,b} = ξ^{ar+bs} (1-ξ^a)(1-ξ^b)`.
pub fn period_integral(curve: FermatCurve, idx: FermatIndex, lp: LoopIndex) -> Result<CycloElem> {
    check_curve(curve, &[idx])?;
    let n = curve.n();
    let (a, b) = (idx.a() as i64, idx.b() as i64);
    let e = a * lp.r() as i64 + b * lp.s() as i64;
    Ok(xi(n, e) * one_minus(n, a) * one_minus(n, b))
}

/// `∫_δ ω^{a1,b1} ω^{a2,b2}` for the normalized forms, with absolute error at
/// most `10^-digits`.
pub fn delta_iterated_integral(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex, digits: u32) -> Result<BoundedReal> {
    check_curve(curve, &[idx1, idx2])?;
    let prec = Precision::new(digits)?;
    let (a1, b1, a2, b2) = (idx1.alpha(), idx1.beta(), idx2.alpha(), idx2.beta());
    let sum = |xs: &[&Rational]| xs.iter().fold(Rational::new(), |acc, x| acc + *x);
    let e1 = sum(&[&a1, &a2, &b2]);
    let e2 = sum(&[&a1, &b1, &b2]);
    let num = [sum(&[&a1, &a2]), sum(&[&b1, &b2]), sum(&[&a1, &b1]), sum(&[&a2, &b2])];
    let den = [a2.clone(), b1.clone(), e1.clone(), e2.clone()];
    let s1 = sum(&[&a1, &b1, &a2, &b2]) - 1u32;
    let hyp = Hyp3F2Params::new(a1, b2, s1, e1, e2);
    gamma_hyp_product(&num, &den, &hyp, prec.tolerance(), prec.bits())
}

/// `coef · D + constant`, where `D` stands for the real number
/// `∫_δ ω^{a,b} ω^{c,d}` attached to a fixed pair of forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaAffine {
    pub coef: CycloElem,
    pub constant: CycloElem,
}

impl DeltaAffine {
    pub fn zero(n: u32) -> Self {
        DeltaAffine { coef: CycloElem::zero(n), constant: CycloElem::zero(n) }
    }

    pub fn delta(n: u32) -> Self {
        DeltaAffine { coef: CycloElem::one(n), constant: CycloElem::zero(n) }
    }

    pub fn constant(c: CycloElem) -> Self {
        let n = c.modulus();
        DeltaAffine { coef: CycloElem::zero(n), constant: c }
    }

    pub fn add(&self, o: &DeltaAffine) -> DeltaAffine {
        DeltaAffine { coef: &self.coef + &o.coef, constant: &self.constant + &o.constant }
    }

    pub fn sub(&self, o: &DeltaAffine) -> DeltaAffine {
        DeltaAffine { coef: &self.coef - &o.coef, constant: &self.constant - &o.constant }
    }

    pub fn mul(&self, c: &CycloElem) -> DeltaAffine {
        DeltaAffine { coef: &self.coef * c, constant: &self.constant * c }
    }

    pub fn div(&self, c: &CycloElem) -> Result<DeltaAffine> {
        let inv = c.inverse()?;
        Ok(self.mul(&inv))
    }

    pub fn galois(&self, h: i64) -> Result<DeltaAffine> {
        Ok(DeltaAffine { coef: self.coef.galois(h)?, constant: self.constant.galois(h)? })
    }

    /// Complex value under `sigma`, given `D` at that embedding.
    pub fn embed(&self, sigma: EmbeddingIndex, d: &BoundedReal, digits: u32) -> Result<BoundedComplex> {
        let c = embed(&self.coef, sigma, digits + 2)?;
        let k = embed(&self.constant, sigma, digits + 2)?;
        Ok(c.scale(d).add(&k))
    }
}

/// Single and double integrals of a fixed pair `(φ, φ')` along one path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChenRecord {
    pub first: CycloElem,
    pub second: CycloElem,
    pub double: DeltaAffine,
}

impl ChenRecord {
    /// The path `δ` itself: both normalized single integrals are 1.
    pub fn delta(n: u32) -> Self {
        ChenRecord { first: CycloElem::one(n), second: CycloElem::one(n), double: DeltaAffine::delta(n) }
    }

    /// `(α^r β^s)_*` applied to the path, for eigenforms `ω^{a,b}`, `ω^{c,d}`.
    pub fn push_forward(&self, g: LoopIndex, idx1: FermatIndex, idx2: FermatIndex) -> ChenRecord {
        let n = g.n();
        let (r, s) = (g.r() as i64, g.s() as i64);
        let (a, b, c, d) = (idx1.a() as i64, idx1.b() as i64, idx2.a() as i64, idx2.b() as i64);
        let z1 = xi(n, a * r + b * s);
        let z2 = xi(n, c * r + d * s);
        let z12 = &z1 * &z2;
        ChenRecord { first: &self.first * &z1, second: &self.second * &z2, double: self.double.mul(&z12) }
    }

    /// Path `self · other`.
    pub fn concat(&self, other: &ChenRecord) -> ChenRecord {
        let cross = &self.first * &other.second;
        ChenRecord {
            first: &self.first + &other.first,
            second: &self.second + &other.second,
            double: self.double.add(&other.double).add(&DeltaAffine::constant(cross)),
        }
    }

    /// Path traversed backwards.
    pub fn inverse(&self) -> ChenRecord {
        let prod = &self.first * &self.second;
        ChenRecord {
            first: -&self.first,
            second: -&self.second,
            double: DeltaAffine::constant(prod).sub(&self.double),
        }
    }

    /// Closed path `α^{-1} · self · α` for a loop `self`.
    pub fn conjugate_by(&self, alpha: &ChenRecord) -> ChenRecord {
        let corr = &(&alpha.first * &self.second) - &(&self.first * &alpha.second);
        ChenRecord {
            first: self.first.clone(),
            second: self.second.clone(),
            double: self.double.sub(&DeltaAffine::constant(corr)),
        }
    }
}

/// Exact record along `κ = δ · (β_*δ)^{-1} · (αβ)_*δ · (α_*δ)^{-1}` by
/// composing path pieces.
pub fn kappa_record(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex) -> ChenRecord {
    let n = curve.n();
    let d = ChenRecord::delta(n);
    let piece = |r, s| d.push_forward(curve.loop_index(r, s), idx1, idx2);
    d.concat(&piece(0, 1).inverse()).concat(&piece(1, 1)).concat(&piece(1, 0).inverse())
}

/// Exact record along `κ^{r,s} = δ · ((β^s)_*δ)^{-1} · (α^r β^s)_*κ · (β^s)_*δ · δ^{-1}`.
pub fn kappa_rs_record(curve: FermatCurve, lp: LoopIndex, idx1: FermatIndex, idx2: FermatIndex) -> ChenRecord {
    let n = curve.n();
    let d = ChenRecord::delta(n);
    let bs = d.push_forward(curve.loop_index(0, lp.s() as i64), idx1, idx2);
    let moved = kappa_record(curve, idx1, idx2).push_forward(lp, idx1, idx2);
    let path = d.concat(&bs.inverse());
    moved.conjugate_by(&path.inverse())
}

/// `∫_κ ω^{a,b} ω^{c,d}` as an exact affine expression in `D`.
pub fn kappa_exact(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex) -> Result<DeltaAffine> {
    check_curve(curve, &[idx1, idx2])?;
    let n = curve.n();
    let (a, b, c, d) = (idx1.a() as i64, idx1.b() as i64, idx2.a() as i64, idx2.b() as i64);
    let coef = one_minus(n, a + c) * one_minus(n, b + d);
    let constant = one_minus(n, b) * (xi(n, a + c) + xi(n, c + d) - xi(n, c) - xi(n, d));
    Ok(DeltaAffine { coef, constant })
}

/// `∫_{κ^{r,s}} ω^{a,b} ω^{c,d}` as an exact affine expression in `D`.
pub fn kappa_rs_exact(curve: FermatCurve, lp: LoopIndex, idx1: FermatIndex, idx2: FermatIndex) -> Result<DeltaAffine> {
    let k = kappa_exact(curve, idx1, idx2)?;
    let n = curve.n();
    let (a, b, c, d) = (idx1.a() as i64, idx1.b() as i64, idx2.a() as i64, idx2.b() as i64);
    let (r, s) = (lp.r() as i64, lp.s() as i64);
    let lead = k.mul(&xi(n, (a + c) * r + (b + d) * s));
    let p2 = xi(n, a * r + b * s) * one_minus(n, a) * one_minus(n, b) * one_minus(n, d * s);
    let p3 = xi(n, c * r + d * s) * one_minus(n, c) * one_minus(n, d) * one_minus(n, b * s);
    Ok(lead.add(&DeltaAffine::constant(p3 - p2)))
}

fn twisted_delta(curve: FermatCurve, idx1: FermatIndex, idx2: FermatIndex, sigma: EmbeddingIndex, digits: u32) -> Result<BoundedReal> {
    let h = sigma.h();
    delta_iterated_integral(curve, idx1.twist(h)?, idx2.twist(h)?, digits)
}

fn affine_digits(e: &DeltaAffine, digits: u32) -> u32 {
    let mag: f64 = e.coef.coeffs().iter().map(|c| c.to_f64().abs()).sum();
    digits + mag.max(1.0).log10().ceil() as u32 + 2
}

/// `∫_κ` under the embedding `ξ ↦ e^{2πih/N}`.
pub fn kappa_iterated_integral(
    curve: FermatCurve,
    idx1: FermatIndex,
    idx2: FermatIndex,
    sigma: EmbeddingIndex,
    digits: u32,
) -> Result<BoundedComplex> {
    let e = kappa_exact(curve, idx1, idx2)?;
    let d = twisted_delta(curve, idx1, idx2, sigma, affine_digits(&e, digits))?;
    e.embed(sigma, &d, digits)
}

/// `∫_{κ^{r,s}}` under the embedding `ξ ↦ e^{2πih/N}`.
pub fn kappa_rs_iterated_integral(
    curve: FermatCurve,
    lp: LoopIndex,
    idx1: FermatIndex,
    idx2: FermatIndex,
    sigma: EmbeddingIndex,
    digits: u32,
) -> Result<BoundedComplex> {
    let e = kappa_rs_exact(curve, lp, idx1, idx2)?;
    let d = twisted_delta(curve, idx1, idx2, sigma, affine_digits(&e, digits))?;
    e.embed(sigma, &d, digits)
}
