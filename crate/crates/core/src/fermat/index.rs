use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::bounded::BoundedReal;
use crate::cyclotomic::units;
use crate::error::{Error, Result};
use crate::specfun::gamma_quotient;

/// The curve `x^N + y^N = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FermatCurve {
    n: u32,
    genus: u32,
}

impl FermatCurve {
    pub fn new(n: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(FermatCurve { n, genus: (n - 1) * (n - 2) / 2 })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn genus(self) -> u32 {
        self.genus
    }

    /// Largest admissible cycle dimension, `g - 2`.
    pub fn max_k(self) -> u32 {
        self.genus - 2
    }

    pub fn index(self, a: i64, b: i64) -> Result<FermatIndex> {
        FermatIndex::new(a, b, self.n)
    }

    pub fn loop_index(self, r: i64, s: i64) -> LoopIndex {
        LoopIndex::new(r, s, self.n)
    }
}

fn residue(a: i64, n: u32) -> u32 {
    a.rem_euclid(n as i64) as u32
}

/// Representative of a nonzero residue in `1..n`.
pub fn angle_rep(a: i64, n: u32) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidModulus(n));
    }
    match residue(a, n) {
        0 => Err(Error::ZeroResidue),
        r => Ok(r),
    }
}

/// A pair `(a, b)` mod `n` with `a, b, a + b` all nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FermatIndex {
    n: u32,
    a: u32,
    b: u32,
}

impl FermatIndex {
    pub fn new(a: i64, b: i64, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        let (ra, rb) = (residue(a, n), residue(b, n));
        if ra == 0 || rb == 0 || (ra + rb) % n == 0 {
            return Err(Error::NotInIndexSet { a, b, n });
        }
        Ok(FermatIndex { n, a: ra, b: rb })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// `∠a`.
    pub fn a(self) -> u32 {
        self.a
    }

    /// `∠b`.
    pub fn b(self) -> u32 {
        self.b
    }

    pub fn is_holomorphic(self) -> bool {
        self.a + self.b < self.n
    }

    pub fn neg(self) -> FermatIndex {
        FermatIndex { n: self.n, a: self.n - self.a, b: self.n - self.b }
    }

    /// `(ha, hb)`; stays in the index set when `h` is a unit.
    pub fn twist(self, h: u32) -> Result<FermatIndex> {
        FermatIndex::new(h as i64 * self.a as i64, h as i64 * self.b as i64, self.n)
    }

    pub fn alpha(self) -> Rational {
        Rational::from((self.a, self.n))
    }

    pub fn beta(self) -> Rational {
        Rational::from((self.b, self.n))
    }

    /// `B(∠a/N, ∠b/N) / N`, the δ-integral of the unnormalized form.
    pub fn normalization(self, digits: u32) -> Result<BoundedReal> {
        let (al, be) = (self.alpha(), self.beta());
        let s = Rational::from(&al + &be);
        let b = gamma_quotient(&[al, be], &[s], digits + 2)?;
        Ok(b.mul_rational(&Rational::from((1, self.n))))
    }
}

/// Every element of the index set, ordered by `(a, b)`.
pub fn all_indices(n: u32) -> Vec<FermatIndex> {
    let mut out = Vec::new();
    for a in 1..n {
        for b in 1..n {
            if a + b != n {
                out.push(FermatIndex { n, a, b });
            }
        }
    }
    out
}

pub fn holomorphic_indices(n: u32) -> Vec<FermatIndex> {
    all_indices(n).into_iter().filter(|i| i.is_holomorphic()).collect()
}

/// The group element `α^r β^s`, labelling the loop `κ^{r,s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopIndex {
    n: u32,
    r: u32,
    s: u32,
}

impl LoopIndex {
    pub fn new(r: i64, s: i64, n: u32) -> Self {
        LoopIndex { n, r: residue(r, n), s: residue(s, n) }
    }

    pub fn r(self) -> u32 {
        self.r
    }

    pub fn s(self) -> u32 {
        self.s
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn all(n: u32) -> impl Iterator<Item = LoopIndex> {
        (0..n).flat_map(move |r| (0..n).map(move |s| LoopIndex { n, r, s }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionFlags {
    pub sums_to_zero: bool,
    /// Every unit twist leaves indices 1 and 2 both holomorphic or both not.
    pub pairwise_parallel_holo: bool,
    /// The same for all three indices.
    pub strong_holo: bool,
}

impl AssumptionFlags {
    pub fn assumption_holds(self) -> bool {
        self.sums_to_zero && self.pairwise_parallel_holo
    }
}

fn same_type_for_all_units(indices: &[FermatIndex]) -> bool {
    let n = indices[0].n;
    units(n).into_iter().all(|h| {
        let holo: Vec<bool> = indices.iter().map(|i| i.twist(h).unwrap().is_holomorphic()).collect();
        holo.iter().all(|&x| x) || holo.iter().all(|&x| !x)
    })
}

pub fn assumption_check(curve: FermatCurve, indices: &[FermatIndex; 3]) -> Result<AssumptionFlags> {
    for i in indices {
        if i.n != curve.n {
            return Err(Error::ModulusMismatch(i.n, curve.n));
        }
    }
    let n = curve.n;
    let sa: u32 = indices.iter().map(|i| i.a).sum();
    let sb: u32 = indices.iter().map(|i| i.b).sum();
    Ok(AssumptionFlags {
        sums_to_zero: sa % n == 0 && sb % n == 0,
        pairwise_parallel_holo: same_type_for_all_units(&indices[..2]),
        strong_holo: same_type_for_all_units(indices),
    })
}

/// Three indices together with their assumption flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleConfig {
    pub indices: [FermatIndex; 3],
    pub flags: AssumptionFlags,
}

impl TripleConfig {
    pub fn new(curve: FermatCurve, indices: [FermatIndex; 3]) -> Result<Self> {
        let flags = assumption_check(curve, &indices)?;
        Ok(TripleConfig { indices, flags })
    }

    pub fn from_pairs(curve: FermatCurve, pairs: [(i64, i64); 3]) -> Result<Self> {
        let mut idx = [curve.index(pairs[0].0, pairs[0].1)?; 3];
        for (slot, &(a, b)) in idx.iter_mut().zip(&pairs).skip(1) {
            *slot = curve.index(a, b)?;
        }
        TripleConfig::new(curve, idx)
    }

    /// `(1, -2), (-2, 1), (1, 1)`.
    pub fn example(curve: FermatCurve) -> Result<Self> {
        TripleConfig::from_pairs(curve, [(1, -2), (-2, 1), (1, 1)])
    }

    /// `(1, 2), (2, 4), (4, 1)` on the degree 7 curve.
    pub fn klein() -> Result<Self> {
        TripleConfig::from_pairs(FermatCurve::new(7)?, [(1, 2), (2, 4), (4, 1)])
    }

    pub fn n(&self) -> u32 {
        self.indices[0].n
    }

    /// Units `h` with `(h a_i, h b_i)` holomorphic for `i = 1, 2`, ascending.
    pub fn holomorphic_twists(&self) -> Vec<u32> {
        units(self.n())
            .into_iter()
            .filter(|&h| self.indices[..2].iter().all(|i| i.twist(h).unwrap().is_holomorphic()))
            .collect()
    }
}
