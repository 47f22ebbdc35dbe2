//! Real and complex numbers carrying a conservative absolute error bound.
//!
//! A [`BoundedReal`] is a midpoint `value` (an MPFR float) together with an
//! `err` such that the exact quantity it stands for lies in
//! `[value - err, value + err]`. Every operation folds the rounding error of
//! its own result into the propagated bound, so chains of operations stay
//! rigorous. Error bounds are kept as `f64` and every `f64` step is pushed one
//! ulp upward.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Target absolute accuracy `10^-digits`, plus the binary working precision
/// derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const MAX_DIGITS: u32 = 300;
    const GUARD_BITS: u32 = 32;

    pub fn new(digits: u32) -> Result<Self> {
        if digits == 0 || digits > Self::MAX_DIGITS {
            return Err(Error::Precondition(format!(
                "digits must be in 1..={}, got {digits}",
                Self::MAX_DIGITS
            )));
        }
        Ok(Precision { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// `10^-digits`, rounded down.
    pub fn tolerance(self) -> f64 {
        pow10_down(-(self.digits as i32))
    }

    pub fn bits(self) -> u32 {
        digits_to_bits(self.digits) + Self::GUARD_BITS
    }

    /// A precision with `extra` more decimal digits, saturating at the maximum.
    pub fn raised(self, extra: u32) -> Precision {
        Precision {
            digits: (self.digits + extra).min(Self::MAX_DIGITS),
        }
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

pub(crate) fn pow10_down(e: i32) -> f64 {
    10f64.powi(e).next_down().max(0.0)
}

#[inline]
pub(crate) fn up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    (a + b).next_up()
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    (a * b).next_up()
}

/// Upper bound for `|x|` as an `f64`.
pub(crate) fn abs_up(x: &Float) -> f64 {
    let a = x.clone().abs();
    a.to_f64_round(Round::Up)
}

/// Lower bound for `|x|` as an `f64`.
pub(crate) fn abs_down(x: &Float) -> f64 {
    let a = x.clone().abs();
    a.to_f64_round(Round::Down)
}

/// One unit in the last place of `x` at its own precision; bounds the error of
/// a single round-to-nearest operation that produced `x`.
pub(crate) fn ulp(x: &Float) -> f64 {
    if x.is_zero() || !x.is_finite() {
        return 0.0;
    }
    let e = x.get_exp().expect("finite nonzero float has an exponent");
    let p = x.prec() as i32;
    let v = 2f64.powi(e - p);
    if v == 0.0 {
        f64::from_bits(1)
    } else {
        v
    }
}

fn finish(value: Float, prop: f64) -> BoundedReal {
    let err = add_up(prop, ulp(&value));
    BoundedReal { value, err }
}

#[derive(Clone, PartialEq)]
pub struct BoundedReal {
    value: Float,
    err: f64,
}

impl fmt::Debug for BoundedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.value.to_string_radix(10, Some(40)), self.err)
    }
}

impl fmt::Display for BoundedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = if self.err > 0.0 {
            let mag = abs_up(&self.value).max(1.0).log10();
            ((mag - self.err.log10()).ceil() as usize + 2).clamp(3, 400)
        } else {
            30
        };
        write!(f, "{} ± {:.2e}", self.value.to_string_radix(10, Some(digits)), self.err)
    }
}

impl BoundedReal {
    pub fn new(value: Float, err: f64) -> Self {
        assert!(err.is_finite() && err >= 0.0, "error bound must be finite and non-negative");
        BoundedReal { value, err }
    }

    pub fn exact(value: Float) -> Self {
        BoundedReal { value, err: 0.0 }
    }

    pub fn zero(bits: u32) -> Self {
        BoundedReal::exact(Float::with_val(bits, 0))
    }

    pub fn one(bits: u32) -> Self {
        BoundedReal::exact(Float::with_val(bits, 1))
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        let v = Float::with_val(bits, n);
        let err = if v == n { 0.0 } else { ulp(&v) };
        BoundedReal { value: v, err }
    }

    pub fn from_integer(n: &Integer, bits: u32) -> Self {
        let v = Float::with_val(bits, n);
        let err = if v == *n { 0.0 } else { ulp(&v) };
        BoundedReal { value: v, err }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let v = Float::with_val(bits, q);
        let err = if v == *q { 0.0 } else { ulp(&v) };
        BoundedReal { value: v, err }
    }

    /// `pi`, correctly rounded by MPFR.
    pub fn pi(bits: u32) -> Self {
        let v = Float::with_val(bits, Constant::Pi);
        let err = ulp(&v);
        BoundedReal { value: v, err }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Exact dyadic rational of the midpoint.
    pub fn midpoint_rational(&self) -> Rational {
        self.value.to_rational().expect("finite midpoint")
    }

    /// Same midpoint with the bound enlarged by `extra`.
    pub fn inflate(mut self, extra: f64) -> Self {
        self.err = add_up(self.err, extra);
        self
    }

    /// Upper bound for the magnitude of the represented quantity.
    pub fn abs_upper(&self) -> f64 {
        add_up(abs_up(&self.value), self.err)
    }

    /// Lower bound for the magnitude (zero if the interval straddles zero).
    pub fn abs_lower(&self) -> f64 {
        (abs_down(&self.value) - self.err).next_down().max(0.0)
    }

    pub fn lower_f64(&self) -> f64 {
        (self.value.to_f64_round(Round::Down) - self.err).next_down()
    }

    pub fn upper_f64(&self) -> f64 {
        add_up(self.value.to_f64_round(Round::Up), self.err)
    }

    /// True when the enclosure lies strictly on one side of zero.
    pub fn is_sign_definite(&self) -> bool {
        self.abs_lower() > 0.0
    }

    /// True when the two enclosures intersect.
    pub fn overlaps(&self, other: &BoundedReal) -> bool {
        self.distance(other) <= add_up(self.err, other.err)
    }

    /// `|self.value - other.value|` rounded up.
    pub fn distance(&self, other: &BoundedReal) -> f64 {
        let p = self.prec().max(other.prec()) + 8;
        let d = Float::with_val(p, &self.value - &other.value);
        add_up(abs_up(&d), ulp(&d))
    }

    /// True if `x` lies inside the enclosure.
    pub fn contains(&self, x: &Float) -> bool {
        let p = self.prec().max(x.prec()) + 8;
        let d = Float::with_val(p, &self.value - x);
        abs_down(&d) <= self.err
    }

    pub fn with_prec(&self, bits: u32) -> BoundedReal {
        let v = Float::with_val(bits, &self.value);
        let extra = if v == self.value { 0.0 } else { ulp(&v) };
        BoundedReal { value: v, err: add_up(self.err, extra) }
    }

    pub fn abs(&self) -> BoundedReal {
        BoundedReal { value: self.value.clone().abs(), err: self.err }
    }

    pub fn neg(&self) -> BoundedReal {
        BoundedReal { value: -self.value.clone(), err: self.err }
    }

    fn target_prec(&self, other: &BoundedReal) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add(&self, other: &BoundedReal) -> BoundedReal {
        let v = Float::with_val(self.target_prec(other), &self.value + &other.value);
        finish(v, add_up(self.err, other.err))
    }

    pub fn sub(&self, other: &BoundedReal) -> BoundedReal {
        let v = Float::with_val(self.target_prec(other), &self.value - &other.value);
        finish(v, add_up(self.err, other.err))
    }

    pub fn mul(&self, other: &BoundedReal) -> BoundedReal {
        let v = Float::with_val(self.target_prec(other), &self.value * &other.value);
        let a = abs_up(&self.value);
        let b = abs_up(&other.value);
        let prop = add_up(
            add_up(mul_up(a, other.err), mul_up(b, self.err)),
            mul_up(self.err, other.err),
        );
        finish(v, prop)
    }

    pub fn square(&self) -> BoundedReal {
        self.mul(self)
    }

    pub fn powi(&self, n: u32) -> BoundedReal {
        let mut acc = BoundedReal::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn div(&self, other: &BoundedReal) -> Result<BoundedReal> {
        let y_low = other.abs_lower();
        if y_low <= 0.0 {
            return Err(Error::Precondition("division by an enclosure containing zero".into()));
        }
        let v = Float::with_val(self.target_prec(other), &self.value / &other.value);
        // |X/Y - x/y| <= (e1 |y| + |x| e2) / (|y| (|y| - e2))
        let x = abs_up(&self.value);
        let y = abs_up(&other.value);
        let num = add_up(mul_up(self.err, y), mul_up(x, other.err));
        let den = (abs_down(&other.value) * y_low).next_down();
        let prop = if num == 0.0 { 0.0 } else { up(num / den) };
        Ok(finish(v, prop))
    }

    pub fn mul_rational(&self, q: &Rational) -> BoundedReal {
        let v = Float::with_val(self.prec(), &self.value * q);
        let qa = abs_up(&Float::with_val(64, q));
        finish(v, mul_up(self.err, up(qa)))
    }

    pub fn mul_integer(&self, n: &Integer) -> BoundedReal {
        self.mul_rational(&Rational::from(n))
    }

    pub fn add_rational(&self, q: &Rational) -> BoundedReal {
        let v = Float::with_val(self.prec(), &self.value + q);
        finish(v, self.err)
    }

    pub fn exp(&self) -> BoundedReal {
        let v = self.value.clone().exp();
        // |exp(X) - exp(x)| <= exp(x) (exp(e) - 1)
        let scale = mul_up(abs_up(&v), 1.0 + 1e-15);
        let prop = if self.err == 0.0 { 0.0 } else { mul_up(scale, up(up(self.err.exp_m1()))) };
        finish(v, prop)
    }

    pub fn ln(&self) -> Result<BoundedReal> {
        let low = self.lower_f64();
        if !(low > 0.0) || self.value.is_sign_negative() {
            return Err(Error::NonPositiveArgument(format!("{self:?}")));
        }
        let v = self.value.clone().ln();
        // |ln X - ln x| <= e / (x - e)
        let prop = if self.err == 0.0 { 0.0 } else { up(self.err / low) };
        Ok(finish(v, prop))
    }

    pub fn sin(&self) -> BoundedReal {
        let v = self.value.clone().sin();
        finish(v, self.err)
    }

    pub fn cos(&self) -> BoundedReal {
        let v = self.value.clone().cos();
        finish(v, self.err)
    }

    /// Fractional part in `[0, 1)` of the midpoint and the distance from the
    /// midpoint to the nearest integer.
    pub fn fract_parts(&self) -> (Float, Float) {
        let v = &self.value;
        let floor = v.clone().floor();
        let frac = Float::with_val(v.prec(), v - &floor);
        let one_minus = Float::with_val(v.prec(), 1 - &frac);
        let dist = if frac <= one_minus { frac.clone() } else { one_minus };
        (frac, dist)
    }

    /// Integer nearest the midpoint.
    pub fn nearest_integer(&self) -> Integer {
        self.value.clone().round().to_integer().expect("finite value")
    }

    pub fn cmp_midpoint(&self, other: &BoundedReal) -> Ordering {
        self.value.partial_cmp(&other.value).unwrap_or(Ordering::Equal)
    }
}

impl Add for &BoundedReal {
    type Output = BoundedReal;
    fn add(self, rhs: &BoundedReal) -> BoundedReal {
        BoundedReal::add(self, rhs)
    }
}

impl Sub for &BoundedReal {
    type Output = BoundedReal;
    fn sub(self, rhs: &BoundedReal) -> BoundedReal {
        BoundedReal::sub(self, rhs)
    }
}

impl Mul for &BoundedReal {
    type Output = BoundedReal;
    fn mul(self, rhs: &BoundedReal) -> BoundedReal {
        BoundedReal::mul(self, rhs)
    }
}

impl Neg for &BoundedReal {
    type Output = BoundedReal;
    fn neg(self) -> BoundedReal {
        BoundedReal::neg(self)
    }
}

/// Complex number as a pair of bounded reals.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedComplex {
    pub re: BoundedReal,
    pub im: BoundedReal,
}

impl BoundedComplex {
    pub fn new(re: BoundedReal, im: BoundedReal) -> Self {
        BoundedComplex { re, im }
    }

    pub fn real(re: BoundedReal) -> Self {
        let bits = re.prec();
        BoundedComplex { re, im: BoundedReal::zero(bits) }
    }

    pub fn zero(bits: u32) -> Self {
        BoundedComplex::real(BoundedReal::zero(bits))
    }

    /// `e^{2 pi i num/den}`.
    pub fn root_of_unity(num: i64, den: u32, bits: u32) -> Self {
        let den = den as i64;
        let r = num.rem_euclid(den);
        let work = bits + 16;
        let pi = BoundedReal::pi(work);
        let theta = pi.mul_rational(&Rational::from((2 * r, den)));
        BoundedComplex { re: theta.cos().with_prec(bits), im: theta.sin().with_prec(bits) }
    }

    pub fn add(&self, o: &BoundedComplex) -> BoundedComplex {
        BoundedComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &BoundedComplex) -> BoundedComplex {
        BoundedComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &BoundedComplex) -> BoundedComplex {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        BoundedComplex { re, im }
    }

    pub fn scale(&self, x: &BoundedReal) -> BoundedComplex {
        BoundedComplex { re: self.re.mul(x), im: self.im.mul(x) }
    }

    pub fn mul_rational(&self, q: &Rational) -> BoundedComplex {
        BoundedComplex { re: self.re.mul_rational(q), im: self.im.mul_rational(q) }
    }

    pub fn conj(&self) -> BoundedComplex {
        BoundedComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn max_err(&self) -> f64 {
        self.re.err().max(self.im.err())
    }

    pub fn overlaps(&self, o: &BoundedComplex) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }
}

/// Exact `k!`.
pub fn factorial(k: u32) -> Integer {
    Integer::from(Integer::factorial(k))
}

/// Parse a decimal or fraction literal (`"3/7"`, `"0.25"`, `"-2"`) into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Integer = n.trim().parse().ok()?;
        let d: Integer = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::from((n, d)));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip_abs.is_empty() { "0" } else { ip_abs }, fp);
        let n: Integer = digits.parse().ok()?;
        let d = Integer::from(Integer::u_pow_u(10, fp.len() as u32));
        let q = Rational::from((n, d));
        return Some(if neg { -q } else { q });
    }
    let n: Integer = s.parse().ok()?;
    Some(Rational::from(n))
}
