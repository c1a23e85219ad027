//! Stacky masses of `Bun_G` and of the semistable locus of `Bun_{GL_n}`.
//!
//! * [`mass_bun`]: the Siegel mass `tau_G q^{(g-1) dim G} rho^{c_1} prod_{d_j >= 2} zeta_X(d_j)`.
//! * [`zagier_ss_mass`]: the closed sum over compositions of `n`.
//! * [`hn_ss_mass`]: the Harder–Narasimhan stratification solved for the
//!   semistable part, summing every stratum family exactly.
//! * [`hn_ss_mass_enclosure`]: the same recursion with the strata sums cut at
//!   a slope-gap window and bounded by a geometric tail, giving a certified
//!   interval.
//!
//! All masses use the per-component convention: the mass of rank `n`,
//! degree `d` bundles does not depend on `d`.
//!
//! HN strata. A bundle of type `((n_1, d_1), ..., (n_k, d_k))` with slopes
//! `mu_1 > ... > mu_k` contributes `prod_i M^ss_{n_i, d_i} * q^{-sum_{i<j} chi_ij}`,
//! `chi_ij = n_i n_j (1 - g) + d_i n_j - d_j n_i`. For fixed ranks the degree
//! vectors form the lattice points of an open simplicial cone with apex at
//! equal slopes. Writing `lambda_i = (mu_i - mu_{i+1}) / n`, a shift along the
//! ray `r_j` (slopes of the first `j` parts up by `n - N_j`, the rest down by
//! `N_j`, `N_j = n_1 + ... + n_j`) raises `lambda_j` by one, keeps every
//! `d_i mod n_i`, and multiplies the summand by `q^{-n N_j (n - N_j)}`. So the
//! cone sum is the sum over the half-open unit box `lambda in (0, 1]^{k-1}`
//! times `prod_j 1 / (1 - q^{-n N_j (n - N_j)})`.

use std::collections::HashMap;

use num::{BigInt, One, Signed, Zero};

use crate::arith::rational::{frac, q_pow, q_pow_rat, BigRat};
use crate::error::{Error, Result};
use crate::groups::{builtin_group, Family, GroupSpec};
use crate::zeta::{quasi_residue, special_value, ZetaData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MassKind {
    /// Component of `Bun_G`.
    Total { group: String },
    /// Semistable bundles of rank `n`, degree `d`.
    Semistable { n: u32, d: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassValue {
    pub value: BigRat,
    pub kind: MassKind,
    pub q: u64,
    pub genus: u32,
}

/// Certified interval `lower <= M^ss <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassEnclosure {
    pub lower: BigRat,
    pub upper: BigRat,
}

impl MassEnclosure {
    pub fn contains(&self, x: &BigRat) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn width(&self) -> BigRat {
        &self.upper - &self.lower
    }
}

/// Siegel mass of one component of `Bun_G`.
pub fn mass_bun(spec: &GroupSpec, z: &ZetaData) -> MassValue {
    let q = z.q();
    let g = z.genus() as i64;
    let rho = quasi_residue(z);
    let mut value = &spec.tamagawa * q_pow(q, (g - 1) * spec.dim as i64);
    for &d in &spec.degrees {
        if d == 1 {
            value *= &rho;
        } else {
            value *= special_value(z, d).expect("degrees >= 2 are valid special-value arguments");
        }
    }
    MassValue { value, kind: MassKind::Total { group: spec.name.clone() }, q, genus: z.genus() }
}

/// `M_{GL_n}(X)` with `tau = 1`.
pub fn mass_gl_component(n: u32, z: &ZetaData) -> MassValue {
    assert!(n >= 1, "rank must be positive");
    mass_bun(&builtin_group(Family::GL, n).expect("GL_n exists for n >= 1"), z)
}

/// Ordered compositions of `n`, in lexicographic order.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=rest).rev() {
            prefix.push(first);
            go(rest - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

fn semistable(value: BigRat, n: u32, d: i64, z: &ZetaData) -> MassValue {
    MassValue { value, kind: MassKind::Semistable { n, d }, q: z.q(), genus: z.genus() }
}

/// Semistable mass by the sum over compositions `n_1 + ... + n_k = n`:
///
/// `q^{(g-1) sum_{i<j} n_i n_j} prod_{i<k} q^{(n_i + n_{i+1}) {(n_1 + ... + n_i) d / n}} / (1 - q^{n_i + n_{i+1}}) prod_i M_{GL_{n_i}}`.
pub fn zagier_ss_mass(n: u32, d: i64, z: &ZetaData) -> Result<MassValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let q = z.q();
    let g = z.genus() as i64;
    let totals: Vec<BigRat> = (1..=n).map(|k| mass_gl_component(k, z).value).collect();
    let nn = BigInt::from(n);
    let mut sum = BigRat::zero();
    for comp in compositions(n) {
        let k = comp.len();
        let cross: i64 = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| comp[i] as i64 * comp[j] as i64)
            .sum();
        let mut exponent = BigRat::from_integer(BigInt::from((g - 1) * cross));
        let mut den = BigRat::one();
        let mut prefix = 0i64;
        for i in 0..k - 1 {
            prefix += comp[i] as i64;
            let pair = (comp[i] + comp[i + 1]) as i64;
            let fr = frac(&BigRat::new(BigInt::from(prefix * d), nn.clone()));
            exponent += fr * BigInt::from(pair);
            den *= BigRat::one() - q_pow(q, pair);
        }
        let power = q_pow_rat(q, &exponent).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "composition {comp:?} of n = {n}, d = {d} has noninteger total exponent {exponent}"
            ))
        })?;
        let masses: BigRat = comp.iter().map(|&c| totals[c as usize - 1].clone()).product();
        sum += power * masses / den;
    }
    Ok(semistable(sum, n, d, z))
}

/// Lattice points `(d_1, ..., d_k)` with `sum d_i = d` and
/// `0 < mu_i - mu_{i+1} <= window * n` for every `i`.
fn hn_types(comp: &[u32], d: i64, window: i64) -> Vec<Vec<i64>> {
    let k = comp.len();
    let n: i64 = comp.iter().map(|&c| c as i64).sum();
    let c: Vec<i64> = comp.iter().map(|&x| x as i64).collect();
    // mu_1 - d/n = sum_j lambda_j (n - N_j) <= window * sum_j (n - N_j)
    let mut prefix = 0;
    let mut spread = 0;
    for &ci in &c[..k - 1] {
        prefix += ci;
        spread += n - prefix;
    }
    let lo = (c[0] * d).div_euclid(n) + 1;
    let hi = (c[0] * d + c[0] * n * window * spread).div_euclid(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn extend(
        i: usize,
        c: &[i64],
        n: i64,
        window: i64,
        rest: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = c.len();
        if i == k - 1 {
            // last part is forced; check its gap
            let prev = cur[i - 1];
            let gap = prev * c[i] - rest * c[i - 1];
            if gap > 0 && gap <= window * n * c[i - 1] * c[i] {
                cur.push(rest);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let prev = cur[i - 1];
        // 0 < prev c_i - x c_{i-1} <= window n c_{i-1} c_i
        let hi = (prev * c[i] - 1).div_euclid(c[i - 1]);
        let lo = -((window * n * c[i - 1] * c[i] - prev * c[i]).div_euclid(c[i - 1]));
        for x in lo..=hi {
            cur.push(x);
            extend(i + 1, c, n, window, rest - x, cur, out);
            cur.pop();
        }
    }
    for d1 in lo..=hi {
        cur.push(d1);
        extend(1, &c, n, window, d - d1, &mut cur, &mut out);
        cur.pop();
    }
    out
}

/// `-sum_{i<j} chi_ij` for a type.
fn stratum_exponent(comp: &[u32], degs: &[i64], g: i64) -> i64 {
    let k = comp.len();
    let mut e = 0;
    for i in 0..k {
        for j in i + 1..k {
            let (ni, nj) = (comp[i] as i64, comp[j] as i64);
            e -= ni * nj * (1 - g) + degs[i] * nj - degs[j] * ni;
        }
    }
    e
}

/// Ray exponents `n N_j (n - N_j)`, `j = 1..k-1`.
fn ray_exponents(comp: &[u32]) -> Vec<i64> {
    let n: i64 = comp.iter().map(|&c| c as i64).sum();
    let mut prefix = 0;
    comp[..comp.len() - 1]
        .iter()
        .map(|&c| {
            prefix += c as i64;
            n * prefix * (n - prefix)
        })
        .collect()
}

struct HnSolver<'a> {
    z: &'a ZetaData,
    totals: Vec<BigRat>,
    memo: HashMap<(u32, i64), BigRat>,
}

impl<'a> HnSolver<'a> {
    fn new(n: u32, z: &'a ZetaData) -> Self {
        let totals = (1..=n).map(|k| mass_gl_component(k, z).value).collect();
        HnSolver { z, totals, memo: HashMap::new() }
    }

    fn ss(&mut self, n: u32, d: i64) -> BigRat {
        let key = (n, d.rem_euclid(n as i64));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut v = self.totals[n as usize - 1].clone();
        for comp in compositions(n).into_iter().filter(|c| c.len() > 1) {
            v -= self.cone_sum(&comp, d);
        }
        self.memo.insert(key, v.clone());
        v
    }

    fn cone_sum(&mut self, comp: &[u32], d: i64) -> BigRat {
        let q = self.z.q();
        let g = self.z.genus() as i64;
        let mut box_sum = BigRat::zero();
        for degs in hn_types(comp, d, 1) {
            let mut term = q_pow(q, stratum_exponent(comp, &degs, g));
            for (&ni, &di) in comp.iter().zip(&degs) {
                term *= self.ss(ni, di);
            }
            box_sum += term;
        }
        ray_exponents(comp).into_iter().fold(box_sum, |acc, e| acc / (BigRat::one() - q_pow(q, -e)))
    }
}

/// Semistable mass from the HN stratification, exactly.
pub fn hn_ss_mass(n: u32, d: i64, z: &ZetaData) -> Result<MassValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let v = HnSolver::new(n, z).ss(n, d);
    Ok(semistable(v, n, d, z))
}

struct HnTruncated<'a> {
    z: &'a ZetaData,
    totals: Vec<BigRat>,
    window: i64,
    memo: HashMap<(u32, i64), MassEnclosure>,
}

impl HnTruncated<'_> {
    fn ss(&mut self, n: u32, d: i64) -> MassEnclosure {
        let key = (n, d.rem_euclid(n as i64));
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let total = self.totals[n as usize - 1].clone();
        let (mut strata_lo, mut strata_hi) = (BigRat::zero(), BigRat::zero());
        for comp in compositions(n).into_iter().filter(|c| c.len() > 1) {
            let (lo, hi) = self.strata(&comp, d);
            strata_lo += lo;
            strata_hi += hi;
        }
        let lower = (&total - strata_hi).max(BigRat::zero());
        let upper = (&total - strata_lo).min(total);
        let enc = MassEnclosure { lower, upper };
        self.memo.insert(key, enc.clone());
        enc
    }

    /// Bounds on the sum over all types with these ranks.
    fn strata(&mut self, comp: &[u32], d: i64) -> (BigRat, BigRat) {
        let q = self.z.q();
        let g = self.z.genus() as i64;
        let (mut lo, mut hi) = (BigRat::zero(), BigRat::zero());
        for degs in hn_types(comp, d, self.window) {
            let w = q_pow(q, stratum_exponent(comp, &degs, g));
            let (mut tl, mut th) = (w.clone(), w);
            for (&ni, &di) in comp.iter().zip(&degs) {
                let e = self.ss(ni, di);
                tl *= &e.lower;
                th *= &e.upper;
            }
            lo += tl;
            hi += th;
        }
        (lo, &hi + self.tail(comp))
    }

    /// Geometric bound on the types with some `lambda_j > window`.
    ///
    /// With `M^ss <= M_{GL}` each summand is at most
    /// `prod_i M_{n_i} q^{-(1-g) sum n_i n_j} prod_j q^{-c_j lambda_j}`. Within a
    /// unit box `lambda in (b, b + 1]` there are at most
    /// `(n_1 (k-1) n + 1) prod_{1<i<k} (n n_i + 1)` degree vectors, and
    /// `q^{-c_j lambda_j} <= q^{-c_j b_j}`. Summing over boxes outside
    /// `[0, window)^{k-1}` gives the bound.
    fn tail(&self, comp: &[u32]) -> BigRat {
        let q = self.z.q();
        let g = self.z.genus() as i64;
        let k = comp.len();
        let n: i64 = comp.iter().map(|&c| c as i64).sum();
        let mut bound: BigRat = comp.iter().map(|&c| self.totals[c as usize - 1].clone()).product();
        let mut cross = 0;
        for i in 0..k {
            for j in i + 1..k {
                cross += comp[i] as i64 * comp[j] as i64;
            }
        }
        bound *= q_pow(q, -(1 - g) * cross);
        let mut per_box = comp[0] as i64 * (k as i64 - 1) * n + 1;
        for &c in &comp[1..k - 1] {
            per_box *= n * c as i64 + 1;
        }
        bound *= BigRat::from_integer(BigInt::from(per_box));
        let (mut full, mut inner) = (BigRat::one(), BigRat::one());
        for c in ray_exponents(comp) {
            let ratio = q_pow(q, -c);
            let geo = BigRat::one() / (BigRat::one() - &ratio);
            inner *= (BigRat::one() - ratio.pow(self.window as i32)) * &geo;
            full *= geo;
        }
        bound * (full - inner)
    }
}

/// Certified interval for the semistable mass from the HN recursion with
/// every stratum sum cut at `lambda_j <= window`.
pub fn hn_ss_mass_enclosure(n: u32, d: i64, z: &ZetaData, window: u32) -> Result<MassEnclosure> {
    if n == 0 || window == 0 {
        return Err(Error::InvalidArgument("rank and window must be positive".into()));
    }
    let mut solver = HnTruncated {
        z,
        totals: (1..=n).map(|k| mass_gl_component(k, z).value).collect(),
        window: window as i64,
        memo: HashMap::new(),
    };
    let enc = solver.ss(n, d);
    if enc.lower > enc.upper || enc.upper.is_negative() {
        return Err(Error::InvalidArgument(format!("truncation at window {window} did not converge")));
    }
    Ok(enc)
}
