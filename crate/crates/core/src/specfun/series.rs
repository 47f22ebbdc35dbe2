//! Summation of hypergeometric-type series `sum t_n` whose term ratio
//! `t_{n+1}/t_n = prod(n + a_i) / prod(n + b_j)` is rational in `n`, with the
//! same number of numerator and denominator factors.
//!
//! The first `M` terms are summed directly. The tail is `t_M g(M)`, where `g`
//! solves `g(n) = 1 + rho(n) g(n+1)`; a truncated asymptotic solution
//! `g_J(n) = sum_{j<=J} c_j n^(1-j)` is computed with exact rational
//! coefficients. The neglected part is `sum_{n>=M} t_n r(n)` with the exact
//! residual `r(n) = 1 + rho(n) g_J(n+1) - g_J(n) = O(n^-(J+1))`, which is
//! bounded explicitly from its rational form.

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::bounded::BoundedReal;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RatioSeries {
    pub first: Rational,
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct SeriesSum {
    pub value: BoundedReal,
    /// Number of directly summed terms.
    pub cutoff: u64,
    /// Order of the tail expansion (0 when the series terminated).
    pub order: usize,
    /// Rigorous bound on the neglected tail part alone.
    pub tail_bound: f64,
}

fn is_nonpositive_integer(q: &Rational) -> bool {
    *q.denom() == 1 && *q <= 0
}

type Poly = Vec<Rational>;

fn ptrim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    p
}

fn pmul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

fn padd(a: &[Rational], b: &[Rational], sign: i32) -> Poly {
    let mut out = vec![Rational::new(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        if sign > 0 {
            out[i] += y;
        } else {
            out[i] -= y;
        }
    }
    out
}

/// `prod (n + r_i)` as a polynomial in `n`.
fn linear_product(roots: &[Rational]) -> Poly {
    let mut p = vec![Rational::from(1)];
    for r in roots {
        p = pmul(&p, &[r.clone(), Rational::from(1)]);
    }
    p
}

fn binomial_row(m: usize) -> Vec<Integer> {
    let mut row = vec![Integer::from(1)];
    for k in 0..m {
        let next = Integer::from(&row[k] * (m - k) as u32) / (k as u32 + 1);
        row.push(next);
    }
    row
}

/// `p(n + 1)`.
fn shift_one(p: &[Rational]) -> Poly {
    let mut out = vec![Rational::new(); p.len()];
    for (i, c) in p.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        for (k, b) in binomial_row(i).iter().enumerate() {
            out[k] += Rational::from(c * b);
        }
    }
    out
}

fn log2_upper(q: &Rational) -> f64 {
    if *q == 0 {
        return f64::NEG_INFINITY;
    }
    Float::with_val(64, q).abs().log2().to_f64_round(Round::Up) + 1e-12
}

impl RatioSeries {
    pub fn new(first: Rational, num: Vec<Rational>, den: Vec<Rational>) -> Result<Self> {
        if num.len() != den.len() {
            return Err(Error::Arity { expected: den.len(), got: num.len() });
        }
        if let Some(b) = den.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::PoleParameter(b.to_string()));
        }
        Ok(RatioSeries { first, num, den })
    }

    /// `sum b - sum a - 1`; the series converges iff this is positive (or it terminates).
    pub fn margin(&self) -> Rational {
        let mut s = Rational::from(-1);
        for b in &self.den {
            s += b;
        }
        for a in &self.num {
            s -= a;
        }
        s
    }

    /// Index of the last nonzero term when a numerator parameter is a
    /// non-positive integer.
    pub fn terminates_at(&self) -> Option<u64> {
        if self.first == 0 {
            return Some(0);
        }
        self.num
            .iter()
            .filter(|a| is_nonpositive_integer(a))
            .map(|a| (-a.numer().clone()).to_u64().unwrap_or(u64::MAX))
            .min()
    }

    fn ratio(&self, n: u64) -> Rational {
        let mut r = Rational::from(1);
        for a in &self.num {
            r *= Rational::from(a + n);
        }
        for b in &self.den {
            r /= Rational::from(b + n);
        }
        r
    }

    /// Exact `t_n`.
    pub fn term_exact(&self, n: u64) -> Rational {
        let mut t = self.first.clone();
        for i in 0..n {
            t *= self.ratio(i);
        }
        t
    }

    /// Sum of the first `count` terms and an enclosure of `t_count`.
    pub fn partial(&self, count: u64, bits: u32) -> (BoundedReal, BoundedReal) {
        let mut t = BoundedReal::from_rational(&self.first, bits);
        let mut acc = BoundedReal::zero(bits);
        for n in 0..count {
            acc = acc.add(&t);
            t = t.mul_rational(&self.ratio(n));
        }
        (acc, t)
    }

    fn max_abs_param(&self) -> Rational {
        self.num
            .iter()
            .chain(&self.den)
            .map(|q| Rational::from(q.abs_ref()))
            .fold(Rational::new(), |m, q| if q > m { q } else { m })
    }

    /// True when `0 < rho(n) <= 1` for every `n >= m`.
    fn monotone_from(&self, m: u64) -> bool {
        let mr = Rational::from(m);
        if self.num.iter().chain(&self.den).any(|q| Rational::from(q + &mr) <= 0) {
            return false;
        }
        let p = self.num.len();
        // D(n) = prod(n+b) - prod(n+a) = sigma n^(p-1) + lower terms
        let d = padd(&linear_product(&self.den), &linear_product(&self.num), -1);
        let sigma = d.get(p - 1).cloned().unwrap_or_default();
        if sigma <= 0 {
            return false;
        }
        let mut lower = Rational::new();
        let mut mp = Rational::from(1);
        for di in d.iter().take(p - 1) {
            lower += Rational::from(di.abs_ref()) * &mp;
            mp *= &mr;
        }
        Rational::from(&sigma * &mp) > lower
    }

    /// Exact coefficients `c_0..c_J` of the asymptotic tail factor.
    fn tail_coefficients(&self, order: usize) -> Vec<Rational> {
        let kmax = order + 1;
        // rho(1/x) = prod(1 + a x) / prod(1 + b x) as a power series in x
        let mut rho = vec![Rational::new(); kmax + 1];
        rho[0] = Rational::from(1);
        for a in &self.num {
            for i in (1..=kmax).rev() {
                let t = Rational::from(&rho[i - 1] * a);
                rho[i] += t;
            }
        }
        for b in &self.den {
            // divide by (1 + b x)
            for i in 1..=kmax {
                let t = Rational::from(&rho[i - 1] * b);
                rho[i] -= t;
            }
        }
        let sigma = self.margin() + 1u32;
        let mut c: Vec<Rational> = Vec::with_capacity(order + 1);
        // binom(1 - j, i) for each j, generated lazily
        let mut binoms: Vec<Vec<Rational>> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut s = Rational::from(if k == 0 { 1 } else { 0 });
            for (j, cj) in c.iter().enumerate() {
                let row = &binoms[j];
                let mut inner = Rational::new();
                for i in 0..=(k + 1 - j) {
                    inner += Rational::from(&rho[k + 1 - j - i] * &row[i]);
                }
                s += inner * cj;
            }
            let denom = Rational::from(&sigma + k as u32) - 1u32;
            c.push(s / denom);
            let top = 1i64 - k as i64;
            let mut row = vec![Rational::from(1)];
            for i in 1..=(kmax + 1) {
                let prev = row[i - 1].clone();
                row.push(prev * Rational::from((top - i as i64 + 1, i as i64)));
            }
            binoms.push(row);
        }
        c
    }

    /// Direct sum of `cutoff` terms plus the order-`order` tail expansion.
    pub fn sum_with(&self, cutoff: u64, order: usize, bits: u32) -> Result<SeriesSum> {
        if let Some(last) = self.terminates_at() {
            let (acc, _) = self.partial(last.saturating_add(1), bits);
            return Ok(SeriesSum { value: acc, cutoff: last + 1, order: 0, tail_bound: 0.0 });
        }
        if self.margin() <= 0 {
            return Err(Error::Divergent(self.margin().to_string()));
        }
        if !self.monotone_from(cutoff) || Rational::from(cutoff) <= self.max_abs_param() {
            return Err(Error::Precondition(format!("term ratio not monotone from n = {cutoff}")));
        }
        let w = bits + 16 + (64 - cutoff.leading_zeros());
        let (direct, t_m) = self.partial(cutoff, w);

        let c = self.tail_coefficients(order);
        let m = Rational::from(cutoff);
        let mut g = Rational::new();
        let mut mp = m.clone();
        for cj in &c {
            g += Rational::from(cj * &mp);
            mp /= &m;
        }
        let tail = t_m.mul_rational(&g);

        // A(n) = sum c_j n^(J+1-j), so g_J(n) = A(n) / n^J
        let jj = order;
        let mut a_poly = vec![Rational::new(); jj + 2];
        for (j, cj) in c.iter().enumerate() {
            a_poly[jj + 1 - j] = cj.clone();
        }
        let pnum = linear_product(&self.num);
        let pden = linear_product(&self.den);
        let nj = {
            let mut v = vec![Rational::new(); jj + 1];
            v[jj] = Rational::from(1);
            v
        };
        let n1j: Poly = binomial_row(jj).into_iter().map(Rational::from).collect();
        let den = pmul(&pmul(&nj, &n1j), &pden);
        let t1 = pmul(&pmul(&nj, &pnum), &shift_one(&a_poly));
        let t2 = pmul(&pmul(&n1j, &pden), &a_poly);
        let numer = ptrim(padd(&padd(&den, &t1, 1), &t2, -1));

        let bound = if numer.is_empty() {
            0.0
        } else {
            let dn = numer.len() - 1;
            let dd = den.len() - 1;
            let q = dd as i64 - dn as i64;
            if q < 2 {
                return Err(Error::Precondition(format!("tail residual decays too slowly (q = {q})")));
            }
            // |Num(n)| <= n^dn sum |p_i| M^(i-dn) for n >= M
            let mut r = Rational::new();
            let mut scale = Rational::from(1);
            for p in numer.iter().rev() {
                r += Rational::from(p.abs_ref()) * &scale;
                scale /= &m;
            }
            // Den(n) >= n^dd prod min(1, 1 + b/M)
            for b in &self.den {
                let f = Rational::from(b / &m) + 1u32;
                if f < 1 {
                    r /= f;
                }
            }
            let log2_tm = t_m.abs_upper().log2();
            let mf = cutoff as f64;
            let log2_sum = -(q as f64) * mf.log2() + (1.0 + mf / (q as f64 - 1.0)).log2();
            let l = log2_tm + log2_upper(&r) + log2_sum + 1e-9;
            if l.is_nan() {
                f64::INFINITY
            } else if l < -1070.0 {
                f64::from_bits(1)
            } else {
                2f64.powf(l) * (1.0 + 1e-12)
            }
        };
        let value = direct.add(&tail).inflate(bound).with_prec(bits.max(64));
        Ok(SeriesSum { value, cutoff, order, tail_bound: bound })
    }

    /// Sum with total error at most `target`, choosing cutoff and order.
    pub fn sum(&self, target: f64, bits: u32) -> Result<SeriesSum> {
        if self.terminates_at().is_some() {
            return self.sum_with(0, 0, bits);
        }
        if self.margin() <= 0 {
            return Err(Error::Divergent(self.margin().to_string()));
        }
        let floor = self.max_abs_param().ceil().numer().to_u64().unwrap_or(u64::MAX / 4) + 2;
        let mut cutoff = floor.max((2 * bits as u64).clamp(256, 8192));
        while !self.monotone_from(cutoff) {
            cutoff *= 2;
            if cutoff > 1 << 24 {
                return Err(Error::NonConvergence(cutoff));
            }
        }
        let mut order = ((bits as f64 + 16.0) / (cutoff as f64).log2()).ceil() as usize + 4;
        for _ in 0..12 {
            let s = self.sum_with(cutoff, order, bits)?;
            if s.value.err() <= target {
                return Ok(s);
            }
            if order as f64 * (cutoff as f64).log2() < 3.0 * bits as f64 {
                order += order / 2 + 2;
            } else {
                cutoff *= 4;
            }
        }
        Err(Error::NonConvergence(cutoff))
    }
}
