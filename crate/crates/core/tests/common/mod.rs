//! Brute-force oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{BigInt, BigUint, One, Zero};
use rand::Rng;
use tvasym::arith::rational::q_pow;
use tvasym::curves::{count_series, CountOptions, CurveModel, PlaneTerm};
use tvasym::{zeta_from_series, BigRat, TVData, ZetaData};

// ---------------------------------------------------------------------------
// matrix groups over F_p

fn det_mod(mut a: Vec<i64>, n: usize, p: i64) -> i64 {
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] % p != 0) else {
            return 0;
        };
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            det = (p - det) % p;
        }
        let pv = a[col * n + col].rem_euclid(p);
        det = det * pv % p;
        let inv = (1..p).find(|x| x * pv % p == 1).unwrap();
        for r in col + 1..n {
            let f = a[r * n + col] * inv % p;
            for c in col..n {
                a[r * n + c] = (a[r * n + c] - f * a[col * n + c]).rem_euclid(p);
            }
        }
    }
    det
}

fn decode(mut idx: u64, len: usize, p: i64) -> Vec<i64> {
    (0..len)
        .map(|_| {
            let d = (idx % p as u64) as i64;
            idx /= p as u64;
            d
        })
        .collect()
}

fn all_matrices(n: usize, p: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (p as u64).pow((n * n) as u32);
    (0..total).map(move |i| decode(i, n * n, p))
}

/// `a^T b a == b` for square matrices mod `p`.
fn preserves(a: &[i64], b: &[i64], n: usize, p: i64) -> bool {
    let mut ba = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            ba[i * n + j] = (0..n).map(|k| b[i * n + k] * a[k * n + j]).sum::<i64>();
        }
    }
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s: i64 = (0..n).map(|k| a[k * n + i] * ba[k * n + j]).sum();
            (s - b[i * n + j]).rem_euclid(p) == 0
        })
    })
}

pub fn count_gl(n: usize, p: i64) -> u64 {
    all_matrices(n, p).filter(|m| det_mod(m.clone(), n, p) != 0).count() as u64
}

pub fn count_sl(n: usize, p: i64) -> u64 {
    all_matrices(n, p).filter(|m| det_mod(m.clone(), n, p) == 1).count() as u64
}

/// `Sp_{2k}(F_p)` for the form `[[0, I], [-I, 0]]`.
pub fn count_sp(k: usize, p: i64) -> u64 {
    let n = 2 * k;
    let mut j = vec![0; n * n];
    for i in 0..k {
        j[i * n + k + i] = 1;
        j[(k + i) * n + i] = p - 1;
    }
    all_matrices(n, p).filter(|m| preserves(m, &j, n, p)).count() as u64
}

/// `SO_3(F_p)`, `p` odd, for the form `x^2 + y^2 + z^2`.
pub fn count_so3(p: i64) -> u64 {
    let id: Vec<i64> = (0..9).map(|i| i64::from(i % 4 == 0)).collect();
    all_matrices(3, p).filter(|m| preserves(m, &id, 3, p) && det_mod(m.clone(), 3, p) == 1).count() as u64
}

// ---------------------------------------------------------------------------
// vector bundles on P^1

fn gl_order(q: u64, m: u32) -> BigInt {
    let qq = BigInt::from(q);
    (0..m).map(|i| qq.pow(m) - qq.pow(i)).product()
}

/// `1 / |Aut(O(a_1) + ... + O(a_n))|` for `a` nonincreasing.
pub fn split_inverse_aut(q: u64, a: &[i64]) -> BigRat {
    let n = a.len();
    let mut unip = 0i64;
    for i in 0..n {
        for j in 0..n {
            if a[i] > a[j] {
                unip += a[i] - a[j] + 1;
            }
        }
    }
    let mut levi = BigInt::one();
    let mut i = 0;
    while i < n {
        let j = (i..n).find(|&j| a[j] != a[i]).unwrap_or(n);
        levi *= gl_order(q, (j - i) as u32);
        i = j;
    }
    BigRat::one() / (BigRat::from_integer(levi) * q_pow(q, unip))
}

/// Split types `a_1 >= ... >= a_n`, `sum a_i = d`, `|a_i| <= bound`.
pub fn split_types(n: usize, d: i64, bound: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, max: i64, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for a in (-bound..=max).rev() {
            cur.push(a);
            rec(n, a, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, bound, bound, &mut Vec::new(), &mut out);
    out.retain(|a| a.iter().sum::<i64>() == d);
    out
}

/// Total mass of rank-2, degree-`d` bundles on P^1 (`d` in `{0, 1}`), by
/// enumerating split types `(a, d - a)` with `a <= bound` and adding the
/// remaining geometric series `sum_{a > bound}` exactly.
pub fn p1_rank2_mass(q: u64, d: i64, bound: i64) -> BigRat {
    assert!(bound >= d);
    let mut s: BigRat =
        (d.div_euclid(2) + d.rem_euclid(2)..=bound).map(|a| split_inverse_aut(q, &[a, d - a])).sum();
    // for a > bound the type (a, d - a) has |Aut| = (q-1)^2 q^{2a - d + 1}
    let first = split_inverse_aut(q, &[bound + 1, d - bound - 1]);
    s += first / (BigRat::one() - q_pow(q, -2));
    s
}

/// Semistable bundles on P^1 are `O(a)^n`.
pub fn p1_semistable_mass(q: u64, n: usize, d: i64) -> BigRat {
    if d % n as i64 != 0 {
        return BigRat::zero();
    }
    split_inverse_aut(q, &vec![d / n as i64; n])
}

// ---------------------------------------------------------------------------
// curves

pub fn opts() -> CountOptions {
    CountOptions::default()
}

pub fn p1(q: u64) -> CurveModel {
    CurveModel::projective_line(q).unwrap()
}

/// `y^2 + y = x^k` over F_2.
pub fn artin_schreier(k: usize) -> CurveModel {
    let mut f = vec![0; k + 1];
    f[k] = 1;
    CurveModel::hyperelliptic(2, vec![1], f, &opts()).unwrap()
}

pub fn klein_quartic() -> CurveModel {
    let t = |e: [u32; 3]| PlaneTerm { coeff: 1, exps: e };
    CurveModel::plane(2, 4, vec![t([3, 1, 0]), t([0, 3, 1]), t([1, 0, 3])], &opts()).unwrap()
}

pub fn zeta_of(c: &CurveModel) -> ZetaData {
    zeta_from_series(&count_series(c, c.genus().max(1), &opts()).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// TV data

/// Random data with `sum_m m beta_m / (q^{m/2} - 1) <= 1`: each `beta_m` is a
/// share of `(floor(q^{m/2}) - 1) / m` and the shares sum to at most one.
pub fn random_feasible_tv<R: Rng>(rng: &mut R, q: u64, max_m: u32, support: usize) -> TVData {
    let ms: Vec<u32> = (0..support).map(|_| rng.gen_range(1..=max_m)).collect();
    let weights: Vec<u64> = ms.iter().map(|_| rng.gen_range(1..=1000)).collect();
    let slack: u64 = rng.gen_range(0..=1000);
    let total: u64 = weights.iter().sum::<u64>() + slack;
    let mut beta: BTreeMap<u32, BigRat> = BTreeMap::new();
    for (&m, &w) in ms.iter().zip(&weights) {
        let root = BigUint::from(q).pow(m).sqrt();
        let cap = BigRat::new(BigInt::from(root) - 1, BigInt::from(m));
        *beta.entry(m).or_insert_with(BigRat::zero) += cap * BigRat::new(w.into(), total.into());
    }
    let tv = TVData::new(q, beta, Vec::new()).unwrap();
    assert!(tv.is_feasible());
    tv
}

pub const QS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 16];
