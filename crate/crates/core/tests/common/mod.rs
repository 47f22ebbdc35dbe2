#![allow(dead_code)]

use itertools::Itertools;

/// Printed six-significant-digit fractional parts of `f(N, 1)`, `4 <= N <= 99`.
pub const TABLE1: [(u32, f64); 96] = [
    (4, 0.262996), (5, 0.537741), (6, 0.834938), (7, 0.0389723), (8, 0.486831), (9, 0.191617),
    (10, 0.0194112), (11, 0.714331), (12, 0.787413), (13, 0.339364), (14, 0.107307), (15, 0.964777),
    (16, 0.0707329), (17, 0.849791), (18, 0.8478), (19, 0.216837), (20, 0.459979), (21, 0.296951),
    (22, 0.876098), (23, 0.884882), (24, 0.565879), (25, 0.227588), (26, 0.674037), (27, 0.024742),
    (28, 0.860369), (29, 0.862392), (30, 0.706843), (31, 0.753471), (32, 0.389462), (33, 0.736648),
    (34, 0.106166), (35, 0.518381), (36, 0.447655), (37, 0.525754), (38, 0.709018), (39, 0.90578),
    (40, 0.885897), (41, 0.888106), (42, 0.664142), (43, 0.053105), (44, 0.194837), (45, 0.167823),
    (46, 0.581124), (47, 0.0668079), (48, 0.0527443), (49, 0.492313), (50, 0.316991), (51, 0.298819),
    (52, 0.59749), (53, 0.444978), (54, 0.919842), (55, 0.714357), (56, 0.197632), (57, 0.321665),
    (58, 0.688486), (59, 0.0898551), (60, 0.687806), (61, 0.832525), (62, 0.301712), (63, 0.02593),
    (64, 0.920061), (65, 0.706527), (66, 0.0810429), (67, 0.0490554), (68, 0.718085), (69, 0.964278),
    (70, 0.103166), (71, 0.449617), (72, 0.544859), (73, 0.356497), (74, 0.505994), (75, 0.232621),
    (76, 0.992762), (77, 0.581805), (78, 0.102977), (79, 0.822496), (80, 0.517871), (81, 0.960151),
    (82, 0.0135158), (83, 0.686773), (84, 0.791853), (85, 0.862785), (86, 0.698527), (87, 0.169399),
    (88, 0.440793), (89, 0.678576), (90, 0.312135), (91, 0.285791), (92, 0.877431), (93, 0.360037),
    (94, 0.796999), (95, 0.797337), (96, 0.532044), (97, 0.848835), (98, 0.898728), (99, 0.72628),
];

/// Printed fractional part of the Klein quartic value at `k = 13`.
pub const KLEIN_13: f64 = 0.96275;

/// Distance on the circle `R/Z`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Sign of a permutation of `0..n` by counting inversions.
pub fn perm_sign(p: &[usize]) -> i64 {
    let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Every permutation of `0..n` with its sign.
pub fn symmetric_group(n: usize) -> Vec<(Vec<usize>, i64)> {
    (0..n).permutations(n).map(|p| {
        let s = perm_sign(&p);
        (p, s)
    }).collect()
}

pub fn increasing(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] < w[1])
}

use std::collections::BTreeMap;

use ceresa_core::bounded::factorial;
use ceresa_core::cyclotomic::CycloElem;

/// Modulus of the coefficient field used by the combinatorial oracles.
pub const ORACLE_N: u32 = 7;

/// A deliberately asymmetric cyclotomic pairing with some zero values.
pub fn oracle_pair(i: &u32, j: &u32) -> CycloElem {
    let (i, j) = (*i as i64, *j as i64);
    if (i + 2 * j) % 4 == 0 {
        return CycloElem::zero(ORACLE_N);
    }
    CycloElem::xi_pow(ORACLE_N, i * j + 2 * i).scale_int(i + 1) - CycloElem::from_int(ORACLE_N, j)
}

pub fn oracle_phi1(a: &u32, b: &u32, c: &u32) -> CycloElem {
    let (a, b, c) = (*a as i64, *b as i64, *c as i64);
    CycloElem::xi_pow(ORACLE_N, a + 2 * b + 3 * c) + CycloElem::from_int(ORACLE_N, a * b - c)
}

/// Signed `(p, q)`-shuffles of `factors` over the whole symmetric group,
/// keyed by the `(left, right)` factor lists.
pub fn brute_shuffles(factors: &[u32], p: usize) -> BTreeMap<(Vec<u32>, Vec<u32>), i64> {
    let mut out = BTreeMap::new();
    for (s, sign) in symmetric_group(factors.len()) {
        if !increasing(&s[..p]) || !increasing(&s[p..]) {
            continue;
        }
        let pick = |r: &[usize]| r.iter().map(|&i| factors[i]).collect::<Vec<_>>();
        *out.entry((pick(&s[..p]), pick(&s[p..]))).or_insert(0) += sign;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `k! Σ_σ sgn(σ) Π ⟨φ_σ(2i-1), φ_σ(2i)⟩` with the ordering constraints,
/// enumerated over all of `S_{2(k-1)}`.
pub fn brute_v(k: usize, labels: &[u32], pair: impl Fn(&u32, &u32) -> CycloElem) -> CycloElem {
    let m = labels.len();
    let mut acc = CycloElem::zero(ORACLE_N);
    for (s, sign) in symmetric_group(m) {
        let pairs_ok = (0..m / 2).all(|i| s[2 * i] < s[2 * i + 1]);
        let firsts_ok = (0..(m / 2).saturating_sub(1)).all(|i| s[2 * i] < s[2 * i + 2]);
        if !pairs_ok || !firsts_ok {
            continue;
        }
        let mut prod = CycloElem::from_int(ORACLE_N, sign);
        for i in 0..m / 2 {
            prod = &prod * &pair(&labels[s[2 * i]], &labels[s[2 * i + 1]]);
        }
        acc = &acc + &prod;
    }
    let kf = factorial(k as u32).to_i64().expect("small factorial");
    acc.scale_int(kf)
}

/// `Σ_σ sgn(σ) Φ_1(φ_σ(1), φ_σ(2), φ_σ(3)) Π ⟨φ_σ(2i+2), φ_σ(2i+3)⟩` with
/// the ordering constraints, enumerated over all of `S_{2k+1}` (no `k!`).
pub fn brute_eval(
    k: usize,
    labels: &[u32],
    phi1: impl Fn(&u32, &u32, &u32) -> CycloElem,
    pair: impl Fn(&u32, &u32) -> CycloElem,
) -> CycloElem {
    let n = labels.len();
    let mut acc = CycloElem::zero(ORACLE_N);
    for (s, sign) in symmetric_group(n) {
        if !increasing(&s[..3]) {
            continue;
        }
        let pairs_ok = (0..k - 1).all(|j| s[3 + 2 * j] < s[4 + 2 * j]);
        let firsts_ok = (0..(k - 1).saturating_sub(1)).all(|j| s[3 + 2 * j] < s[5 + 2 * j]);
        if !pairs_ok || !firsts_ok {
            continue;
        }
        let mut prod = phi1(&labels[s[0]], &labels[s[1]], &labels[s[2]]).scale_int(sign);
        for j in 0..k - 1 {
            prod = &prod * &pair(&labels[s[3 + 2 * j]], &labels[s[4 + 2 * j]]);
        }
        acc = &acc + &prod;
    }
    acc
}

use ceresa_core::extalg::{ceresa_eval_k, pi_pq, v_pairing, Multivector, WedgeWord};

/// Random-looking but fixed cyclotomic coefficients.
pub fn coefficient(seed: usize) -> CycloElem {
    let s = seed as i64;
    CycloElem::xi_pow(ORACLE_N, s * 3 + 1).scale_int(s % 5 - 2) + CycloElem::from_int(ORACLE_N, s % 3 + 1)
}

fn apply_pi(x: &Multivector<u32>, p: usize) -> BTreeMap<(Vec<u32>, Vec<u32>), CycloElem> {
    let mut out: BTreeMap<(Vec<u32>, Vec<u32>), CycloElem> = BTreeMap::new();
    for (w, c) in x.terms() {
        for t in pi_pq(&WedgeWord::new(w.clone()), p, w.len() - p).expect("arity") {
            let e = out.entry((t.left.factors, t.right.factors)).or_insert_with(|| CycloElem::zero(ORACLE_N));
            *e = &*e + &c.scale_int(t.sign as i64);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn brute_apply_pi(x: &Multivector<u32>, p: usize) -> BTreeMap<(Vec<u32>, Vec<u32>), CycloElem> {
    let mut out: BTreeMap<(Vec<u32>, Vec<u32>), CycloElem> = BTreeMap::new();
    for (w, c) in x.terms() {
        for (key, s) in brute_shuffles(w, p) {
            let e = out.entry(key).or_insert_with(|| CycloElem::zero(ORACLE_N));
            *e = &*e + &c.scale_int(s);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `π_{p,q}` applied to cyclotomic combinations of words of every grade up
/// to 7, against the brute-force shuffle enumeration.
pub fn check_pi_pq() -> Result<usize, String> {
    let mut cases = 0;
    for grade in 1..=7usize {
        let alphabet: Vec<u32> = (0..grade as u32 + 2).collect();
        let mut x = Multivector::zero(grade, ORACLE_N);
        for (i, w) in alphabet.iter().copied().combinations(grade).enumerate() {
            let mut w = w;
            w.rotate_left(i % grade);
            x.add_word(&WedgeWord::new(w), &coefficient(i)).map_err(|e| e.to_string())?;
        }
        for p in 0..=grade {
            let fast = apply_pi(&x, p);
            let slow = brute_apply_pi(&x, p);
            if fast != slow {
                return Err(format!("grade {grade}, p = {p}: shuffle expansions differ"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// The `k!`-scaled matching sum against the constrained permutation sum,
/// for `1 <= k <= 4` (up to six labels) and several label choices.
pub fn check_v_pairing() -> Result<usize, String> {
    let mut cases = 0;
    let mut nonzero = 0;
    for k in 1..=4usize {
        let m = 2 * (k - 1);
        for shift in 0..4u32 {
            let labels: Vec<u32> = (0..m as u32).map(|i| (i * 3 + shift) % 11).collect();
            let fast = v_pairing(k, &labels, oracle_pair, &CycloElem::zero(ORACLE_N)).map_err(|e| e.to_string())?;
            let slow = brute_v(k, &labels, oracle_pair);
            if fast != slow {
                return Err(format!("k = {k}, labels {labels:?}: {fast:?} vs {slow:?}"));
            }
            cases += 1;
            nonzero += usize::from(!fast.is_zero());
        }
    }
    if nonzero * 2 < cases {
        return Err(format!("only {nonzero} of {cases} cases are nonzero"));
    }
    Ok(cases)
}

/// The constrained sum for `Φ_k` against enumeration over `S_{2k+1}`,
/// `1 <= k <= 3`.
pub fn check_ceresa_eval() -> Result<usize, String> {
    let mut cases = 0;
    let mut nonzero = 0;
    for k in 1..=3usize {
        for shift in 0..4u32 {
            let labels: Vec<u32> = (0..2 * k as u32 + 1).map(|i| (i * 5 + shift) % 13).collect();
            let fast = ceresa_eval_k(k, &labels, oracle_phi1, oracle_pair, &CycloElem::zero(ORACLE_N))
                .map_err(|e| e.to_string())?;
            let slow = brute_eval(k, &labels, oracle_phi1, oracle_pair);
            if fast != slow {
                return Err(format!("k = {k}, labels {labels:?}: {fast:?} vs {slow:?}"));
            }
            cases += 1;
            nonzero += usize::from(!fast.is_zero());
        }
    }
    if nonzero * 2 < cases {
        return Err(format!("only {nonzero} of {cases} cases are nonzero"));
    }
    Ok(cases)
}
