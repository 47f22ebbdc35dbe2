//! Exact arithmetic in Q(mu_N), stored as residues modulo the N-th
//! cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Integer, Rational};

use crate::bounded::{BoundedComplex, BoundedReal, Precision};
use crate::error::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn totient(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Residues `0 < h < n` coprime to `n`, ascending.
pub fn units(n: u32) -> Vec<u32> {
    (1..n).filter(|&h| gcd(h as i64, n as i64) == 1).collect()
}

/// Reduction data for one modulus: Phi_n and the residues of x^0..x^{n-1}.
struct Modulus {
    phi: Vec<Integer>,
    powers: Vec<Vec<Rational>>,
}

fn registry() -> &'static Mutex<HashMap<u32, Arc<Modulus>>> {
    static REG: OnceLock<Mutex<HashMap<u32, Arc<Modulus>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Integer> {
    modulus(n).phi.clone()
}

fn compute_phi(n: u32) -> Vec<Integer> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<Integer> = vec![Integer::new(); n as usize + 1];
    num[0] = Integer::from(-1);
    num[n as usize] = Integer::from(1);
    for d in 1..n {
        if n % d == 0 {
            let div = modulus(d).phi.clone();
            num = exact_div_monic(&num, &div);
        }
    }
    num
}

fn exact_div_monic(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![Integer::new(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= Integer::from(&c * dj);
            }
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|r| *r == 0));
    q
}

fn modulus(n: u32) -> Arc<Modulus> {
    if let Some(m) = registry().lock().unwrap().get(&n) {
        return m.clone();
    }
    let phi = if n == 1 {
        vec![Integer::from(-1), Integer::from(1)]
    } else {
        compute_phi(n)
    };
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![Rational::new(); deg];
    cur[0] = Rational::from(1);
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[deg - 1].clone();
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = Rational::new();
        if top != 0 {
            for i in 0..deg {
                cur[i] -= Rational::from(&top * &phi[i]);
            }
        }
    }
    let m = Arc::new(Modulus { phi, powers });
    registry().lock().unwrap().entry(n).or_insert(m).clone()
}

/// Element of Q(mu_n) as `sum coeffs[j] xi^j`, `j < phi(n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    n: u32,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem[{}](", self.n)?;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ξ")?,
                _ => write!(f, "({c})ξ^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_modulus(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidModulus(n))
    } else {
        Ok(())
    }
}

/// The class of `xi^j` in Q(mu_n).
pub fn cyclo_from_power(n: u32, j: i64) -> CycloElem {
    CycloElem::xi_pow(n, j)
}

impl CycloElem {
    pub fn degree(n: u32) -> usize {
        totient(n) as usize
    }

    pub fn zero(n: u32) -> Self {
        check_modulus(n).expect("modulus must be positive");
        CycloElem { n, coeffs: vec![Rational::new(); Self::degree(n)] }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::from(1))
    }

    pub fn from_int(n: u32, c: i64) -> Self {
        Self::from_rational(n, Rational::from(c))
    }

    pub fn from_rational(n: u32, c: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = c;
        z
    }

    /// `xi^j`.
    pub fn xi_pow(n: u32, j: i64) -> Self {
        check_modulus(n).expect("modulus must be positive");
        let r = j.rem_euclid(n as i64) as usize;
        CycloElem { n, coeffs: modulus(n).powers[r].clone() }
    }

    /// Reduce an arbitrary polynomial in xi (lowest degree first).
    pub fn from_poly(n: u32, poly: &[Rational]) -> Self {
        let m = modulus(n);
        let mut out = Self::zero(n);
        for (j, c) in poly.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let p = &m.powers[j % n as usize];
            for (o, pj) in out.coeffs.iter_mut().zip(p) {
                if *pj != 0 {
                    *o += Rational::from(c * pj);
                }
            }
        }
        out
    }

    /// `sum c_j xi^{e_j}` for integer exponents.
    pub fn from_terms(n: u32, terms: &[(i64, i64)]) -> Self {
        let mut poly = vec![Rational::new(); n as usize];
        for &(c, e) in terms {
            poly[e.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_poly(n, &poly)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| *c == 0) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same(&self, other: &CycloElem) -> Result<()> {
        if self.n != other.n {
            Err(Error::ModulusMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &CycloElem) -> Result<CycloElem> {
        self.same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Rational::from(a + b)).collect();
        Ok(CycloElem { n: self.n, coeffs })
    }

    pub fn checked_sub(&self, other: &CycloElem) -> Result<CycloElem> {
        self.same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Rational::from(a - b)).collect();
        Ok(CycloElem { n: self.n, coeffs })
    }

    pub fn checked_mul(&self, other: &CycloElem) -> Result<CycloElem> {
        self.same(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![Rational::new(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if *b != 0 {
                    prod[i + j] += Rational::from(a * b);
                }
            }
        }
        Ok(Self::reduce_product(self.n, prod))
    }

    fn reduce_product(n: u32, mut prod: Vec<Rational>) -> CycloElem {
        let m = modulus(n);
        let d = m.phi.len() - 1;
        for i in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[i]);
            if c == 0 {
                continue;
            }
            for j in 0..d {
                if m.phi[j] != 0 {
                    prod[i - d + j] -= Rational::from(&c * &m.phi[j]);
                }
            }
        }
        prod.truncate(d);
        CycloElem { n, coeffs: prod }
    }

    pub fn scale(&self, c: &Rational) -> CycloElem {
        CycloElem { n: self.n, coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> CycloElem {
        self.scale(&Rational::from(c))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inverse(&self) -> Result<CycloElem> {
        if self.is_zero() {
            return Err(Error::ZeroInverse(self.n));
        }
        let m = modulus(self.n);
        let phi: Vec<Rational> = m.phi.iter().map(Rational::from).collect();
        let a = trim(self.coeffs.clone());
        // invariant: r_i = s_i * a (mod phi)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![Rational::new()], vec![Rational::from(1)]);
        while !(r1.len() == 1 && r1[0] != 0) {
            if r1.is_empty() {
                // gcd has positive degree; impossible for a nonzero field element
                return Err(Error::ZeroInverse(self.n));
            }
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = Rational::from(1) / r1[0].clone();
        let s: Vec<Rational> = s1.iter().map(|x| Rational::from(x * &c)).collect();
        Ok(Self::from_poly(self.n, &s))
    }

    pub fn checked_div(&self, other: &CycloElem) -> Result<CycloElem> {
        self.same(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> CycloElem {
        let mut acc = CycloElem::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the automorphism `xi -> xi^h`, `gcd(h, n) = 1`.
    pub fn galois(&self, h: i64) -> Result<CycloElem> {
        if gcd(h, self.n as i64) != 1 {
            return Err(Error::NotAUnit(h, self.n));
        }
        let mut poly = vec![Rational::new(); self.n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                let e = (h * j as i64).rem_euclid(self.n as i64) as usize;
                poly[e] += c;
            }
        }
        Ok(Self::from_poly(self.n, &poly))
    }

    /// Complex conjugate (`xi -> xi^{-1}`).
    pub fn conj(&self) -> CycloElem {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Largest coefficient magnitude, rounded up to `f64`.
    fn coeff_bound(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max) * (1.0 + 1e-12)
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if a.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut q = vec![Rational::new(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = Rational::from(&rem[i + db] / &lead);
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= Rational::from(&c * bj);
            }
        }
        q[i] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: &CycloElem) -> CycloElem {
                self.$checked(rhs).expect("cyclotomic moduli must agree")
            }
        }
        impl $tr for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem {
                (&self).$checked(&rhs).expect("cyclotomic moduli must agree")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem { n: self.n, coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect() }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

/// The embedding `xi -> e^{2 pi i h / n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddingIndex {
    h: u32,
    n: u32,
}

impl EmbeddingIndex {
    pub fn new(h: i64, n: u32) -> Result<Self> {
        check_modulus(n)?;
        let r = h.rem_euclid(n as i64);
        if gcd(r, n as i64) != 1 || (r == 0 && n > 1) {
            return Err(Error::NotAUnit(h, n));
        }
        Ok(EmbeddingIndex { h: r as u32, n })
    }

    pub fn h(self) -> u32 {
        self.h
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn conjugate(self) -> EmbeddingIndex {
        EmbeddingIndex { h: (self.n - self.h) % self.n, n: self.n }
    }

    pub fn all(n: u32) -> Vec<EmbeddingIndex> {
        units(n).into_iter().map(|h| EmbeddingIndex { h, n }).collect()
    }
}

/// Complex value of `a` under `sigma`, with absolute error at most `10^-digits`
/// in each component.
pub fn embed(a: &CycloElem, sigma: EmbeddingIndex, digits: u32) -> Result<BoundedComplex> {
    if a.n != sigma.n {
        return Err(Error::ModulusMismatch(a.n, sigma.n));
    }
    let prec = Precision::new(digits)?;
    let tol = prec.tolerance();
    let scale = a.coeff_bound().max(1.0) * a.coeffs.len() as f64;
    let mut bits = prec.bits() + scale.log2().ceil().max(0.0) as u32 + 8;
    for _ in 0..6 {
        let v = embed_at_bits(a, sigma, bits);
        if v.max_err() <= tol {
            return Ok(v);
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted(bits))
}

pub(crate) fn embed_at_bits(a: &CycloElem, sigma: EmbeddingIndex, bits: u32) -> BoundedComplex {
    let mut acc = BoundedComplex::zero(bits);
    for (j, c) in a.coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let root = BoundedComplex::root_of_unity(sigma.h as i64 * j as i64, a.n, bits);
        let cj = BoundedReal::from_rational(c, bits);
        acc = acc.add(&root.scale(&cj));
    }
    acc
}

/// Exact trace from Q(mu_n) to Q: sum of the Galois conjugates.
pub fn trace_to_rationals(a: &CycloElem) -> Rational {
    let n = a.n;
    let mut out = Rational::new();
    for (j, c) in a.coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        out += Rational::from(c * ramanujan_sum(n, j as u32));
    }
    out
}

/// `sum_{h in units(n)} zeta^{h j}`.
fn ramanujan_sum(n: u32, j: u32) -> i64 {
    let g = gcd(n as i64, j as i64) as u32;
    let m = n / g;
    mobius(m) as i64 * (totient(n) / totient(m)) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn xi(n: u32) -> CycloElem {
        cyclo_from_power(n, 1)
    }

    #[test]
    fn phi_polynomials() {
        let as_i: Vec<i64> = cyclotomic_polynomial(12).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(as_i, vec![1, 0, -1, 0, 1]);
        let p5: Vec<i64> = cyclotomic_polynomial(5).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(p5, vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
    }

    #[test]
    fn powers_reduce() {
        assert_eq!(cyclo_from_power(4, 0), CycloElem::one(4));
        assert_eq!(cyclo_from_power(4, 2), CycloElem::from_int(4, -1));
        let m1 = Rational::from(-1);
        let expected = CycloElem::from_poly(5, &[m1.clone(), m1.clone(), m1.clone(), m1]);
        assert_eq!(cyclo_from_power(5, 4), expected);
        assert_eq!(cyclo_from_power(7, -1), cyclo_from_power(7, 6));
    }

    #[test]
    fn polynomials_differing_by_phi_are_equal() {
        // x^5 + 3 and 3 + 1 are equal mod Phi_5 after x^5 = 1
        let a = CycloElem::from_terms(5, &[(1, 5), (3, 0)]);
        assert_eq!(a, CycloElem::from_int(5, 4));
    }

    #[test]
    fn prime_product_formula() {
        for p in [5u32, 7, 11] {
            let mut prod = CycloElem::one(p);
            for j in 1..p as i64 {
                prod = &prod * &(CycloElem::one(p) - cyclo_from_power(p, j));
            }
            assert_eq!(prod, CycloElem::from_int(p, p as i64));
        }
    }

    #[test]
    fn inverse_law() {
        let a = CycloElem::one(7) - xi(7);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, CycloElem::one(7));
        assert!(CycloElem::zero(7).inverse().is_err());
        let b = CycloElem::from_terms(12, &[(3, 0), (-2, 1), (5, 3)]);
        assert_eq!(&b * &b.inverse().unwrap(), CycloElem::one(12));
    }

    #[test]
    fn modulus_mismatch() {
        assert_eq!(xi(5).checked_add(&xi(7)), Err(Error::ModulusMismatch(5, 7)));
    }

    #[test]
    fn embeddings() {
        let i = embed(&xi(4), EmbeddingIndex::new(1, 4).unwrap(), 30).unwrap();
        assert!(i.re.contains(&Float::with_val(200, 0)));
        assert!(i.im.contains(&Float::with_val(200, 1)));
        let golden = &xi(5) + &cyclo_from_power(5, -1);
        let v = embed(&golden, EmbeddingIndex::new(1, 5).unwrap(), 30).unwrap();
        let expect = (Float::with_val(300, 5).sqrt() - 1u32) / 2u32;
        assert!(v.re.contains(&expect));
        assert!(v.re.err() <= 1e-30);
    }

    #[test]
    fn traces() {
        assert_eq!(trace_to_rationals(&CycloElem::one(5)), 4);
        for p in [3u32, 5, 7, 11, 13] {
            assert_eq!(trace_to_rationals(&xi(p)), -1);
        }
        let one = CycloElem::one(7);
        let t = (&one - &xi(7)).inverse().unwrap() + (&one - &cyclo_from_power(7, -1)).inverse().unwrap();
        assert_eq!(trace_to_rationals(&t), 6);
    }

    #[test]
    fn trace_matches_numeric_sum() {
        let a = CycloElem::from_terms(9, &[(2, 0), (-3, 1), (7, 4), (1, 5)]);
        let exact = trace_to_rationals(&a);
        let mut re = BoundedReal::zero(200);
        for s in EmbeddingIndex::all(9) {
            re = re.add(&embed(&a, s, 40).unwrap().re);
        }
        assert!(re.inflate(1e-38).contains(&Float::with_val(200, &exact)));
    }

    #[test]
    fn galois_action_is_multiplicative() {
        let a = CycloElem::from_terms(7, &[(1, 0), (2, 1)]);
        let b = CycloElem::from_terms(7, &[(-1, 2), (3, 5)]);
        for h in 1..7 {
            assert_eq!((&a * &b).galois(h).unwrap(), &a.galois(h).unwrap() * &b.galois(h).unwrap());
        }
        assert!(a.galois(7).is_err());
    }
}
