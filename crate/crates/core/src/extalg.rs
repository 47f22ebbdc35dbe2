//! Exterior-algebra combinatorics: shuffles, determinant pairings, the
//! matching sum `v_{k-1}` and the constrained permutation sum for `Φ_k`.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::bounded::{factorial, BoundedReal};
use crate::cyclotomic::CycloElem;
use crate::error::{Error, Result};

/// Ring operations needed by the sums in this module.
pub trait Coeff: Clone {
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn times_integer(&self, k: &Integer) -> Self;
    /// The multiplicative identity of the same ring (and modulus).
    fn one_like(&self) -> Self;

    fn signed(&self, sign: i8) -> Self {
        if sign < 0 {
            self.negate()
        } else {
            self.clone()
        }
    }
}

impl Coeff for CycloElem {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn times_integer(&self, k: &Integer) -> Self {
        self.scale(&Rational::from(k))
    }
    fn one_like(&self) -> Self {
        CycloElem::one(self.modulus())
    }
}

impl Coeff for BoundedReal {
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn is_zero_coeff(&self) -> bool {
        self.err() == 0.0 && self.value().is_zero()
    }
    fn times_integer(&self, k: &Integer) -> Self {
        self.mul_integer(k)
    }
    fn one_like(&self) -> Self {
        BoundedReal::one(self.prec())
    }
}

impl Coeff for Rational {
    fn plus(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn times(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn negate(&self) -> Self {
        Rational::from(-self)
    }
    fn is_zero_coeff(&self) -> bool {
        *self == 0
    }
    fn times_integer(&self, k: &Integer) -> Self {
        Rational::from(self * k)
    }
    fn one_like(&self) -> Self {
        Rational::from(1)
    }
}

impl Coeff for i64 {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero_coeff(&self) -> bool {
        *self == 0
    }
    fn times_integer(&self, k: &Integer) -> Self {
        self * k.to_i64().expect("integer factor fits in i64")
    }
    fn one_like(&self) -> Self {
        1
    }
}

/// Sign of the permutation sorting `xs`; zero if two entries coincide.
pub fn sort_sign<T: Ord>(xs: &[T]) -> i8 {
    let mut sign = 1i8;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            match xs[i].cmp(&xs[j]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// `sign · f_1 ∧ ... ∧ f_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeWord<L> {
    pub factors: Vec<L>,
    pub sign: i8,
}

impl<L: Ord + Clone> WedgeWord<L> {
    pub fn new(factors: Vec<L>) -> Self {
        WedgeWord { factors, sign: 1 }
    }

    pub fn grade(&self) -> usize {
        self.factors.len()
    }

    /// Sorted factors with the sign adjusted; `None` if a factor repeats.
    pub fn canonical(&self) -> Option<WedgeWord<L>> {
        let s = sort_sign(&self.factors);
        if s == 0 {
            return None;
        }
        let mut f = self.factors.clone();
        f.sort();
        Some(WedgeWord { factors: f, sign: self.sign * s })
    }

    pub fn wedge(&self, other: &WedgeWord<L>) -> WedgeWord<L> {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        WedgeWord { factors: f, sign: self.sign * other.sign }
    }
}

/// Homogeneous element of the exterior power, keyed by sorted factor lists.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<L> {
    grade: usize,
    n: u32,
    terms: BTreeMap<Vec<L>, CycloElem>,
}

impl<L: Ord + Clone> Multivector<L> {
    pub fn zero(grade: usize, n: u32) -> Self {
        Multivector { grade, n, terms: BTreeMap::new() }
    }

    pub fn from_word(word: &WedgeWord<L>, coef: CycloElem) -> Self {
        let mut m = Multivector::zero(word.grade(), coef.modulus());
        m.add_word(word, &coef).expect("grade matches");
        m
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<L>, &CycloElem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sorted: &[L]) -> CycloElem {
        self.terms.get(sorted).cloned().unwrap_or_else(|| CycloElem::zero(self.n))
    }

    pub fn add_word(&mut self, word: &WedgeWord<L>, coef: &CycloElem) -> Result<()> {
        if word.grade() != self.grade {
            return Err(Error::Arity { expected: self.grade, got: word.grade() });
        }
        let Some(c) = word.canonical() else { return Ok(()) };
        let add = coef.signed(c.sign);
        let sum = &self.coefficient(&c.factors) + &add;
        if sum.is_zero() {
            self.terms.remove(&c.factors);
        } else {
            self.terms.insert(c.factors, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector<L>) -> Result<Multivector<L>> {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_word(&WedgeWord::new(k.clone()), v)?;
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Multivector<L>) -> Multivector<L> {
        let mut out = Multivector::zero(self.grade + other.grade, self.n);
        for (k1, v1) in &self.terms {
            for (k2, v2) in &other.terms {
                let w = WedgeWord::new(k1.clone()).wedge(&WedgeWord::new(k2.clone()));
                out.add_word(&w, &(v1 * v2)).expect("grades add");
            }
        }
        out
    }
}

/// One term `sign · (left ⊗ right)` of a shuffle expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleTerm<L> {
    pub sign: i8,
    pub left: WedgeWord<L>,
    pub right: WedgeWord<L>,
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Positions of `0..n` split into the chosen subset followed by the rest,
/// with the sign of that permutation.
fn split(n: usize, chosen: &[usize]) -> (i8, Vec<usize>) {
    let rest = (0..n).filter(|i| !chosen.contains(i));
    let perm: Vec<usize> = chosen.iter().copied().chain(rest).collect();
    (sort_sign(&perm), perm)
}

/// `π_{p,q}`: the signed `(p, q)`-shuffle expansion, `C(p+q, p)` terms.
pub fn pi_pq<L: Ord + Clone>(word: &WedgeWord<L>, p: usize, q: usize) -> Result<Vec<ShuffleTerm<L>>> {
    let n = word.grade();
    if n != p + q {
        return Err(Error::Arity { expected: p + q, got: n });
    }
    Ok(subsets(n, p)
        .into_iter()
        .map(|c| {
            let (s, perm) = split(n, &c);
            let pick = |r: &[usize]| WedgeWord::new(r.iter().map(|&i| word.factors[i].clone()).collect());
            ShuffleTerm { sign: s * word.sign, left: pick(&perm[..p]), right: pick(&perm[p..]) }
        })
        .collect())
}

/// `det(pair(hom_i, coh_j))`.
pub fn wedge_pairing<L, C, F>(hom: &WedgeWord<L>, coh: &WedgeWord<L>, pair: F, zero: &C) -> Result<C>
where
    L: Ord + Clone,
    C: Coeff,
    F: Fn(&L, &L) -> C,
{
    let n = hom.grade();
    if coh.grade() != n {
        return Err(Error::Arity { expected: n, got: coh.grade() });
    }
    let m: Vec<Vec<C>> = hom.factors.iter().map(|a| coh.factors.iter().map(|b| pair(a, b)).collect()).collect();
    let mut memo: Vec<Option<C>> = vec![None; 1 << n];
    let d = laplace(0, 0, &m, &mut memo, zero);
    Ok(d.signed(hom.sign * coh.sign))
}

/// Expansion along row `row`, memoized on the set of used columns.
fn laplace<C: Coeff>(row: usize, used: usize, m: &[Vec<C>], memo: &mut [Option<C>], zero: &C) -> C {
    if row == m.len() {
        return zero.one_like();
    }
    if let Some(v) = &memo[used] {
        return v.clone();
    }
    let mut acc = zero.clone();
    let mut sign = 1i8;
    for col in 0..m.len() {
        if used & (1 << col) != 0 {
            continue;
        }
        if !m[row][col].is_zero_coeff() {
            let sub = laplace(row + 1, used | (1 << col), m, memo, zero);
            acc = acc.plus(&m[row][col].times(&sub).signed(sign));
        }
        sign = -sign;
    }
    memo[used] = Some(acc.clone());
    acc
}

/// Signed sum over perfect matchings of `items` (pairs listed with the
/// smaller position first, pairs ordered by their first entries) of the
/// product of `pair` values. Zero pairings prune the search.
fn matching_sum<L, C, F>(items: &[L], pair: &F, zero: &C) -> C
where
    L: Clone,
    C: Coeff,
    F: Fn(&L, &L) -> C,
{
    if items.is_empty() {
        return zero.one_like();
    }
    let mut acc = zero.clone();
    let first = &items[0];
    for j in 1..items.len() {
        let p = pair(first, &items[j]);
        if p.is_zero_coeff() {
            continue;
        }
        let rest: Vec<L> = items[1..j].iter().chain(&items[j + 1..]).cloned().collect();
        let sub = matching_sum(&rest, pair, zero);
        if sub.is_zero_coeff() {
            continue;
        }
        // moving items[j] next to items[0] passes j - 1 entries
        let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
        acc = acc.plus(&p.times(&sub).signed(sign));
    }
    acc
}

/// `(v_{k-1}, φ_1 ∧ ... ∧ φ_{2(k-1)}) = k! Σ_σ sgn(σ) Π ⟨φ_σ(2i-1), φ_σ(2i)⟩`.
pub fn v_pairing<L, C, F>(k: usize, labels: &[L], pair: F, zero: &C) -> Result<C>
where
    L: Clone,
    C: Coeff,
    F: Fn(&L, &L) -> C,
{
    if k == 0 || labels.len() != 2 * (k - 1) {
        return Err(Error::Arity { expected: 2 * k.saturating_sub(1), got: labels.len() });
    }
    Ok(matching_sum(labels, &pair, zero).times_integer(&factorial(k as u32)))
}

/// `Σ_σ sgn(σ) Φ_1(φ_σ(1) ∧ φ_σ(2) ∧ φ_σ(3)) Π_{i<k} ⟨φ_σ(2i+2), φ_σ(2i+3)⟩`
/// over the permutations with `σ(1)<σ(2)<σ(3)`, `σ(2i+2)<σ(2i+3)` and
/// `σ(2i+2)<σ(2i+4)`. Multiply by `k!` for `k! Φ_k`.
pub fn ceresa_eval_k<L, C, P, F>(k: usize, labels: &[L], phi1: P, pair: F, zero: &C) -> Result<C>
where
    L: Clone,
    C: Coeff,
    P: Fn(&L, &L, &L) -> C,
    F: Fn(&L, &L) -> C,
{
    if k == 0 || labels.len() != 2 * k + 1 {
        return Err(Error::Arity { expected: 2 * k + 1, got: labels.len() });
    }
    let n = labels.len();
    let mut acc = zero.clone();
    for chosen in subsets(n, 3) {
        let (sign, perm) = split(n, &chosen);
        let rest: Vec<L> = perm[3..].iter().map(|&i| labels[i].clone()).collect();
        let m = matching_sum(&rest, &pair, zero);
        if m.is_zero_coeff() {
            continue;
        }
        let f = phi1(&labels[chosen[0]], &labels[chosen[1]], &labels[chosen[2]]);
        acc = acc.plus(&f.times(&m).signed(sign));
    }
    Ok(acc)
}
