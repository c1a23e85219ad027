//! Asymptotic mass growth along curve families.
//!
//! Given Tsfasman–Vlăduts invariants `beta_m` (limits of `B_m / g`), the
//! normalized log-mass `log_q M_G(X) / g` tends to
//! `dim G - sum_r beta_r log_q(|G(F_{q^r})| / q^{r dim G})`. This module
//! evaluates that right-hand side with an explicit truncation `M` and a
//! certified bound on the discarded terms, the finite-genus left-hand side,
//! and the comparison of the composition terms in Zagier's formula.
//!
//! Every summand of the form `-w log_q(1 - x)` goes through [`neg_log_q_term`]
//! and is accumulated in increasing index order. Because of this, the
//! specializations (`G_m` against the Picard formula, constant-sheaf local data
//! against the same) agree bit for bit.
//!
//! Tail bound. For `m > M` feasibility gives `beta_m <= (q^{m/2} - 1) / m`, and
//! `-log_q(1 - x) <= x / ((1 - x) ln q)`. With `x = q^{-m}` a summand is at most
//! `1 / (m (q^{m/2} + 1) ln q) < q^{-m/2} / ((M + 1) ln q)`, so the discarded
//! part is at most `q^{-(M+1)/2} / ((M + 1) ln q (1 - q^{-1/2}))`. A group
//! with `k` invariant degrees has `k` such summands per index, each bounded
//! by the `d_j = 1` case. When the support of `beta` lies in `[1, M]` the
//! discarded part is exactly zero and so is the tail.

use std::collections::BTreeMap;

use num::{BigInt, BigUint, One, Signed, ToPrimitive, Zero};

use crate::arith::rational::{
    ln_one_minus, ln_rat, log_q_rat, prime_power, q_pow, sqrt_enclosure, to_f64, BigRat,
};
use crate::error::{Error, Result};
use crate::groups::{builtin_group, Family, GroupSpec};
use crate::mass::{compositions, mass_bun, zagier_ss_mass};
use crate::par::{map_ordered, Strategy};
use crate::zeta::{degree_spectrum, DegreeSpectrum, ZetaData};

/// Bits of the square-root enclosures used for odd `m` in `q^{m/2}`.
const SQRT_BITS: u32 = 64;

/// A local factor: `gamma` points of degree `deg` per unit genus with value `L(1) = local`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TvGroup {
    pub deg: u32,
    pub gamma: BigRat,
    pub local: BigRat,
}

/// Finitely supported TV invariants over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TVData {
    q: u64,
    beta: BTreeMap<u32, BigRat>,
    groups: Vec<TvGroup>,
    feasible: bool,
}

impl TVData {
    /// Zero entries of `beta` are dropped. Infeasible data is accepted and flagged.
    pub fn new(q: u64, beta: BTreeMap<u32, BigRat>, groups: Vec<TvGroup>) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
        }
        if beta.contains_key(&0) {
            return Err(Error::InvalidArgument("beta is indexed from m = 1".into()));
        }
        if let Some((m, b)) = beta.iter().find(|(_, b)| b.is_negative()) {
            return Err(Error::InvalidArgument(format!("beta_{m} = {b} is negative")));
        }
        for (i, gr) in groups.iter().enumerate() {
            if gr.deg == 0 || gr.gamma.is_negative() || !gr.local.is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "group {i}: need deg >= 1, gamma >= 0, L > 0 (got {}, {}, {})",
                    gr.deg, gr.gamma, gr.local
                )));
            }
        }
        let beta: BTreeMap<u32, BigRat> = beta.into_iter().filter(|(_, b)| !b.is_zero()).collect();
        let mut tv = TVData { q, beta, groups, feasible: true };
        tv.feasible = tv_bound(&tv) <= BigRat::one();
        Ok(tv)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn beta(&self, m: u32) -> BigRat {
        self.beta.get(&m).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Nonzero entries in increasing `m`.
    pub fn beta_map(&self) -> &BTreeMap<u32, BigRat> {
        &self.beta
    }

    pub fn groups(&self) -> &[TvGroup] {
        &self.groups
    }

    /// Whether `sum_m m beta_m / (q^{m/2} - 1) <= 1` (using the upper enclosure).
    pub fn is_feasible(&self) -> bool {
        self.feasible
    }

    fn support_max(&self) -> u32 {
        self.beta.keys().next_back().copied().unwrap_or(0)
    }
}

/// Upper end of a certified enclosure of `sum_m m beta_m / (q^{m/2} - 1)`.
pub fn tv_bound(tv: &TVData) -> BigRat {
    let mut total = BigRat::zero();
    for (&m, b) in &tv.beta {
        let qm = BigUint::from(tv.q).pow(m);
        // a lower bound on the denominator bounds the term from above
        let (root_lo, _) = sqrt_enclosure(&qm, SQRT_BITS);
        total += BigRat::from_integer(BigInt::from(m)) * b / (root_lo - BigRat::one());
    }
    total
}

/// `-weight * log_q(1 - x)`, the one place these summands are formed.
fn neg_log_q_term(weight: &BigRat, x: &BigRat, ln_q: f64) -> f64 {
    -(to_f64(weight) * (ln_one_minus(x) / ln_q))
}

/// Certified bound on the discarded summands `m > trunc` for one degree factor.
fn tail_bound(tv: &TVData, trunc: u32) -> f64 {
    if tv.support_max() <= trunc {
        return 0.0;
    }
    let q = tv.q as f64;
    let m1 = trunc as f64 + 1.0;
    let bound = q.powf(-m1 / 2.0) / (m1 * q.ln() * (1.0 - q.powf(-0.5)));
    // outward margin for the binary64 evaluation above
    bound * (1.0 + 1e-12)
}

/// A truncated right-hand side: `value = leading + sum`, with the discarded
/// terms bounded by `tail`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhsValue {
    pub value: f64,
    pub sum: f64,
    pub tail: f64,
}

/// `dim G - sum_{r <= trunc} beta_r log_q(|G(F_{q^r})| / q^{r dim G})`.
pub fn rhs_group(tv: &TVData, spec: &GroupSpec, trunc: u32) -> RhsValue {
    let ln_q = (tv.q as f64).ln();
    let mut sum = 0.0;
    for (&r, b) in tv.beta.range(1..=trunc) {
        for &d in &spec.degrees {
            sum += neg_log_q_term(b, &q_pow(tv.q, -((r * d) as i64)), ln_q);
        }
    }
    RhsValue { value: spec.dim as f64 + sum, sum, tail: spec.degrees.len() as f64 * tail_bound(tv, trunc) }
}

/// `1 - sum_{m <= trunc} beta_m log_q((q^m - 1) / q^m)`; the `G_m` case of [`rhs_group`].
pub fn rhs_pic(tv: &TVData, trunc: u32) -> RhsValue {
    rhs_group(tv, &builtin_group(Family::Gm, 1).expect("Gm is builtin"), trunc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralRhs {
    pub value: f64,
    /// Every `|log_q L_r|` is within `3 d q^{-deg_r / 2}`.
    pub within_envelope: bool,
}

/// `-sum_r gamma_r log_q L_r` over user-supplied local data.
pub fn rhs_general(groups: &[TvGroup], q: u64, d_bound: u32) -> Result<GeneralRhs> {
    if prime_power(q).is_none() {
        return Err(Error::InvalidArgument(format!("q = {q} is not a prime power")));
    }
    let ln_q = (q as f64).ln();
    let mut value = 0.0;
    let mut within_envelope = true;
    for (i, gr) in groups.iter().enumerate() {
        if !gr.local.is_positive() {
            return Err(Error::InvalidArgument(format!("group {i}: L = {} is not positive", gr.local)));
        }
        let one = BigRat::one();
        let term = if gr.local < one {
            neg_log_q_term(&gr.gamma, &(&one - &gr.local), ln_q)
        } else {
            -(to_f64(&gr.gamma) * (ln_rat(&gr.local) / ln_q))
        };
        value += term;
        let log_abs = log_q_rat(&gr.local, q).abs();
        let envelope = 3.0 * d_bound as f64 * (q as f64).powf(-(gr.deg as f64) / 2.0);
        if log_abs > envelope {
            within_envelope = false;
        }
    }
    Ok(GeneralRhs { value, within_envelope })
}

/// Estimates of `beta_m`, `m <= trunc`, from a curve family.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalTv {
    /// `beta_m = B_m / g` of the last member.
    pub tv: TVData,
    /// `B_m / g` for every member, in family order.
    pub quotients: Vec<Vec<BigRat>>,
}

/// `beta_m` estimated as `B_m / g` of the last member. Spectra shorter than
/// `trunc` contribute the indices they have.
pub fn empirical_tv(family: &[DegreeSpectrum], trunc: u32) -> Result<EmpiricalTv> {
    let last = family.last().ok_or_else(|| Error::InvalidArgument("empty family".into()))?;
    let q = last.q;
    let mut quotients = Vec::with_capacity(family.len());
    for (i, s) in family.iter().enumerate() {
        if s.g == 0 {
            return Err(Error::InvalidArgument(format!("family member {i} has genus 0")));
        }
        if s.q != q {
            return Err(Error::InvalidArgument(format!("family member {i} is over F_{}, not F_{q}", s.q)));
        }
        let g = BigInt::from(s.g);
        quotients.push(
            s.b.iter().take(trunc as usize).map(|b| BigRat::new(b.clone(), g.clone())).collect::<Vec<_>>(),
        );
    }
    let beta = quotients
        .last()
        .expect("nonempty")
        .iter()
        .enumerate()
        .map(|(i, b)| (i as u32 + 1, b.clone()))
        .collect();
    Ok(EmpiricalTv { tv: TVData::new(q, beta, Vec::new())?, quotients })
}

/// `(g_i, log_q M_G(X_i) / g_i)` per member.
pub fn lhs_sequence(family: &[ZetaData], spec: &GroupSpec) -> Result<Vec<(u32, f64)>> {
    family
        .iter()
        .enumerate()
        .map(|(i, z)| {
            if z.genus() == 0 {
                return Err(Error::InvalidArgument(format!("family member {i} has genus 0")));
            }
            let m = mass_bun(spec, z).value;
            Ok((z.genus(), log_q_rat(&m, z.q()) / z.genus() as f64))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominanceRow {
    pub composition: Vec<u32>,
    pub exponent: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dominance {
    pub n: u32,
    pub rows: Vec<DominanceRow>,
    /// The composition `(n)` has the strictly largest exponent.
    pub dominant: bool,
}

/// Limit exponent `sum_{i<j} n_i n_j + sum_j rhs(GL_{n_j})` of each
/// composition term in Zagier's formula.
pub fn dominance_check(tv: &TVData, n: u32, trunc: u32) -> Result<Dominance> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidArgument(format!("dominance check needs 1 <= n <= 6, got {n}")));
    }
    let rhs: Vec<f64> = (1..=n)
        .map(|k| Ok(rhs_group(tv, &builtin_group(Family::GL, k)?, trunc).value))
        .collect::<Result<_>>()?;
    let rows: Vec<DominanceRow> = compositions(n)
        .into_iter()
        .map(|comp| {
            let mut cross = 0u32;
            for i in 0..comp.len() {
                for j in i + 1..comp.len() {
                    cross += comp[i] * comp[j];
                }
            }
            let exponent = cross as f64 + comp.iter().map(|&c| rhs[c as usize - 1]).sum::<f64>();
            DominanceRow { composition: comp, exponent }
        })
        .collect();
    let top = rows[0].exponent;
    let dominant = rows[1..].iter().all(|r| r.exponent < top);
    Ok(Dominance { n, rows, dominant })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub index: usize,
    pub genus: u32,
    pub mass: BigRat,
    /// `log_q M_G / g`.
    pub lhs: f64,
    /// `|lhs - rhs|`.
    pub gap: f64,
    /// For `GL_n`: `|log_q M^ss_{n,0} - log_q M_{GL_n}| / g` (infinite when `M^ss = 0`).
    pub ss_gap: Option<f64>,
    pub beta_quotients: Vec<BigRat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub group: String,
    pub trunc: u32,
    pub rows: Vec<ConvergenceRow>,
    pub tv: TVData,
    pub tv_bound: BigRat,
    pub rhs: RhsValue,
    pub dominance: Option<Dominance>,
}

/// Finite-genus terms against the right-hand side built from the last member's
/// degree spectrum. Counts beyond the genus are regenerated from each zeta
/// function, so no enumeration happens here.
pub fn convergence_report(
    family: &[ZetaData],
    spec: &GroupSpec,
    trunc: u32,
    strategy: Strategy,
) -> Result<ConvergenceReport> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("empty family".into()));
    }
    if trunc == 0 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    if family.windows(2).any(|w| w[0].genus() > w[1].genus()) {
        return Err(Error::InvalidArgument("family must be sorted by genus".into()));
    }
    let spectra =
        family.iter().map(|z| degree_spectrum(&z.point_counts(trunc))).collect::<Result<Vec<_>>>()?;
    let emp = empirical_tv(&spectra, trunc)?;
    let rhs = rhs_group(&emp.tv, spec, trunc);
    let lhs = lhs_sequence(family, spec)?;
    let ss_gaps = map_ordered(family, strategy, |z| -> Result<Option<f64>> {
        let Some(n) = spec.gl_rank else { return Ok(None) };
        let total = mass_bun(spec, z).value;
        let ss = zagier_ss_mass(n, 0, z)?.value;
        if ss.is_zero() {
            return Ok(Some(f64::INFINITY));
        }
        let diff = (log_q_rat(&ss, z.q()) - log_q_rat(&total, z.q())).abs();
        Ok(Some(diff / z.genus() as f64))
    });
    let mut rows = Vec::with_capacity(family.len());
    for (i, ((z, (g, l)), ss_gap)) in family.iter().zip(lhs).zip(ss_gaps).enumerate() {
        rows.push(ConvergenceRow {
            index: i,
            genus: g,
            mass: mass_bun(spec, z).value,
            lhs: l,
            gap: (l - rhs.value).abs(),
            ss_gap: ss_gap?,
            beta_quotients: emp.quotients[i].clone(),
        });
    }
    let dominance = match spec.gl_rank {
        Some(n) if n <= 6 => Some(dominance_check(&emp.tv, n, trunc)?),
        _ => None,
    };
    Ok(ConvergenceReport {
        group: spec.name.clone(),
        trunc,
        rows,
        tv_bound: tv_bound(&emp.tv),
        tv: emp.tv,
        rhs,
        dominance,
    })
}

/// `(q^{m/2} - 1) / m` when `q^m` is a perfect square.
pub fn boundary_beta(q: u64, m: u32) -> Option<BigRat> {
    let qm = BigUint::from(q).pow(m);
    let r = qm.sqrt();
    (&r * &r == qm).then(|| BigRat::new(BigInt::from(r) - 1, BigInt::from(m)))
}

impl RhsValue {
    pub fn contains(&self, other: f64) -> bool {
        (other - self.value).abs() <= self.tail
    }
}

impl TVData {
    /// `beta_m` as `f64`, for reporting.
    pub fn beta_f64(&self, m: u32) -> f64 {
        self.beta.get(&m).and_then(|b| b.to_f64()).unwrap_or(0.0)
    }
}
