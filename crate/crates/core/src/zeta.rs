//! Rational zeta functions `Z(T) = P(T) / ((1 - T)(1 - qT))` rebuilt from point
//! counts, and the invariants read off them: class number, quasi-residue,
//! special values and the degree spectrum of closed points.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::arith::rational::{bigint_pow, divisors, mobius, q_pow, BigRat};
use crate::arith::DensePoly;
use crate::curves::{weil_ok, PointCounts};
use crate::error::{Error, Result};

/// Numerator `P(T) = a_0 + a_1 T + ... + a_{2g} T^{2g}` of the zeta function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    q: u64,
    g: u32,
    a: Vec<BigInt>,
}

/// `B[m - 1]` = number of closed points of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSpectrum {
    pub q: u64,
    pub g: u32,
    pub b: Vec<BigInt>,
}

/// How far beyond `2g` regenerated counts are checked against the Weil bound.
const WEIL_CHECK_EXTRA: u32 = 4;

impl ZetaData {
    /// Validates `a_0 = 1`, the functional equation `a_{2g-i} = q^{g-i} a_i`,
    /// `P(1) > 0` and the Weil bound on regenerated counts up to `m = 2g + 4`.
    pub fn new(q: u64, g: u32, a: Vec<BigInt>) -> Result<Self> {
        let inconsistent = |msg: String| Err(Error::InconsistentCounts(msg));
        if q < 2 {
            return Err(Error::InvalidArgument(format!("q = {q} must be >= 2")));
        }
        if a.len() != 2 * g as usize + 1 {
            return inconsistent(format!("expected {} coefficients, got {}", 2 * g + 1, a.len()));
        }
        if !a[0].is_one() {
            return inconsistent(format!("a_0 = {} != 1", a[0]));
        }
        for i in 0..g as usize {
            let expect = bigint_pow(q, g - i as u32) * &a[i];
            if a[2 * g as usize - i] != expect {
                return inconsistent(format!(
                    "functional equation fails: a_{} = {} but q^{}*a_{} = {}",
                    2 * g as usize - i,
                    a[2 * g as usize - i],
                    g as usize - i,
                    i,
                    expect
                ));
            }
        }
        let z = ZetaData { q, g, a };
        let h = z.numerator().eval(&BigInt::one());
        if !h.is_positive() {
            return inconsistent(format!("P(1) = {h} is not positive"));
        }
        for (i, n) in z.regenerate_counts(2 * g + WEIL_CHECK_EXTRA).iter().enumerate() {
            if !weil_ok(q, g, i as u32 + 1, n) {
                return inconsistent(format!("regenerated N_{} = {n} violates the Weil bound", i + 1));
            }
        }
        Ok(z)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.a
    }

    pub fn numerator(&self) -> DensePoly<BigInt> {
        DensePoly::new(self.a.clone())
    }

    /// Power sums `s_m = sum_i alpha_i^m` of the inverse roots of `P`, by
    /// Newton's identities, for `m = 1..=max_m`.
    fn power_sums(&self, max_m: u32) -> Vec<BigInt> {
        let coeff = |i: usize| self.a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let mut s: Vec<BigInt> = Vec::with_capacity(max_m as usize + 1);
        s.push(BigInt::zero());
        for m in 1..=max_m as usize {
            let mut v = -BigInt::from(m) * coeff(m);
            for i in 1..m {
                v -= coeff(i) * &s[m - i];
            }
            s.push(v);
        }
        s
    }

    /// `N_m = q^m + 1 - s_m` for `m = 1..=max_m`.
    pub fn regenerate_counts(&self, max_m: u32) -> Vec<BigInt> {
        let s = self.power_sums(max_m);
        (1..=max_m).map(|m| bigint_pow(self.q, m) + 1 - &s[m as usize]).collect()
    }

    pub fn point_counts(&self, max_m: u32) -> PointCounts {
        PointCounts { q: self.q, g: self.g, counts: self.regenerate_counts(max_m) }
    }
}

/// Rebuilds `P(T)` from exactly `g` counts `N_1..N_g`.
///
/// `a_0..a_g` come from the degree-`<= g` truncation of
/// `(1 - T)(1 - qT) exp(sum_m N_m T^m / m)`, in exact rational series
/// arithmetic; the remaining coefficients follow from the functional equation.
pub fn zeta_from_counts(q: u64, g: u32, counts: &[BigInt]) -> Result<ZetaData> {
    if counts.len() != g as usize {
        return Err(Error::InvalidArgument(format!("need exactly g = {g} counts, got {}", counts.len())));
    }
    if let Some(n) = counts.iter().find(|n| n.is_negative()) {
        return Err(Error::InconsistentCounts(format!("negative count {n}")));
    }
    let n = g as usize + 1;
    // exp series: e_k = (1/k) sum_{j=1..k} N_j e_{k-j}
    let mut e: Vec<BigRat> = vec![BigRat::one()];
    for k in 1..n {
        let mut acc = BigRat::zero();
        for j in 1..=k {
            acc += BigRat::from_integer(counts[j - 1].clone()) * &e[k - j];
        }
        e.push(acc / BigRat::from_integer(BigInt::from(k)));
    }
    let series = DensePoly::new(e);
    let qr = BigRat::from_integer(BigInt::from(q));
    let factor = DensePoly::new(vec![BigRat::one(), -(BigRat::one() + &qr), qr]);
    let prod = (&series * &factor).truncate(n);
    let mut a: Vec<BigInt> = Vec::with_capacity(2 * g as usize + 1);
    for i in 0..n {
        let c = prod.coeff(i);
        if !c.is_integer() {
            return Err(Error::InconsistentCounts(format!(
                "coefficient a_{i} = {c} of P(T) is not an integer"
            )));
        }
        a.push(c.to_integer());
    }
    for i in (0..g as usize).rev() {
        a.push(bigint_pow(q, g - i as u32) * &a[i]);
    }
    ZetaData::new(q, g, a)
}

/// Builds the zeta function from the first `g` counts of a series and checks
/// every further count against the regenerated one.
pub fn zeta_from_series(counts: &PointCounts) -> Result<ZetaData> {
    let g = counts.g as usize;
    if counts.counts.len() < g {
        return Err(Error::InvalidArgument(format!(
            "need at least g = {g} counts, got {}",
            counts.counts.len()
        )));
    }
    let z = zeta_from_counts(counts.q, counts.g, &counts.counts[..g])?;
    let regen = z.regenerate_counts(counts.counts.len() as u32);
    for (m, (have, want)) in counts.counts.iter().zip(&regen).enumerate().skip(g) {
        if have != want {
            return Err(Error::InconsistentCounts(format!(
                "N_{} = {have} but the zeta function predicts {want}",
                m + 1
            )));
        }
    }
    Ok(z)
}

/// `h = P(1) = #Pic^0(X)(F_q)`.
pub fn class_number(z: &ZetaData) -> BigInt {
    z.numerator().eval(&BigInt::one())
}

/// `rho = q^{1-g} h / (q - 1)`.
pub fn quasi_residue(z: &ZetaData) -> BigRat {
    q_pow(z.q, 1 - z.g as i64) * BigRat::from_integer(class_number(z))
        / BigRat::from_integer(BigInt::from(z.q - 1))
}

/// `zeta_X(s) = P(q^-s) / ((1 - q^-s)(1 - q^{1-s}))` for integer `s >= 2`.
pub fn special_value(z: &ZetaData, s: u32) -> Result<BigRat> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!(
            "special_value needs s >= 2 (s = 1 is the pole; use quasi_residue), got {s}"
        )));
    }
    let t = q_pow(z.q, -(s as i64));
    let p = DensePoly::new(z.a.iter().cloned().map(BigRat::from_integer).collect());
    let one = BigRat::one();
    let den = (&one - &t) * (&one - q_pow(z.q, 1 - s as i64));
    Ok(p.eval(&t) / den)
}

/// `B_m = (1/m) sum_{d | m} mu(m/d) N_d`.
pub fn degree_spectrum(counts: &PointCounts) -> Result<DegreeSpectrum> {
    let mut b = Vec::with_capacity(counts.counts.len());
    for m in 1..=counts.counts.len() as u64 {
        let mut acc = BigInt::zero();
        for d in divisors(m) {
            acc += mobius(m / d) * &counts.counts[d as usize - 1];
        }
        let (quot, rem) = acc.div_rem(&BigInt::from(m));
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::InconsistentCounts(format!("B_{m} = {acc}/{m} is not a nonnegative integer")));
        }
        b.push(quot);
    }
    Ok(DegreeSpectrum { q: counts.q, g: counts.g, b })
}

impl DegreeSpectrum {
    /// `sum_{d | m} d B_d`, which must equal `N_m`.
    pub fn count(&self, m: u64) -> BigInt {
        divisors(m).into_iter().map(|d| BigInt::from(d) * &self.b[d as usize - 1]).sum()
    }

    pub fn b_f64(&self, m: usize) -> f64 {
        self.b[m - 1].to_f64().unwrap_or(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reconstruction_examples() {
        assert_eq!(zeta_from_counts(2, 0, &[]).unwrap().coefficients(), bi(&[1]).as_slice());
        assert_eq!(zeta_from_counts(5, 1, &bi(&[8])).unwrap().coefficients(), bi(&[1, 2, 5]).as_slice());
        let e = zeta_from_counts(2, 1, &bi(&[3])).unwrap();
        assert_eq!(e.coefficients(), bi(&[1, 0, 2]).as_slice());
        // supersingular: #E(F_4) = 9 (enumeration gives the same, see curves tests)
        assert_eq!(e.regenerate_counts(2), bi(&[3, 9]));
    }

    #[test]
    fn series_expansion_cross_check() {
        // Z(T) = P(T)/((1-T)(1-qT)) expanded directly must give log-derivative counts.
        let z = zeta_from_counts(2, 2, &bi(&[3, 5])).unwrap();
        let regen = z.regenerate_counts(6);
        // expand Z(T) as a series and take T d/dT log
        let n = 7;
        let p: Vec<BigRat> = (0..n).map(|i| BigRat::from_integer(z.numerator().coeff(i))).collect();
        let mut zs = vec![BigRat::zero(); n];
        for (i, pi) in p.iter().enumerate() {
            for j in 0..n - i {
                // 1/((1-T)(1-2T)) = sum_j (2^{j+1} - 1) T^j
                zs[i + j] += pi * BigRat::from_integer(BigInt::from((1i64 << (j + 1)) - 1));
            }
        }
        // N_m from Z'/Z: m a_m = sum_{k=1..m} N_k a_{m-k}, with a = zs
        let mut counts: Vec<BigRat> = Vec::new();
        for m in 1..n {
            let mut v = BigRat::from_integer(BigInt::from(m as i64)) * &zs[m];
            for k in 1..m {
                v -= &counts[k - 1] * &zs[m - k];
            }
            counts.push(v);
        }
        for (m, c) in counts.iter().enumerate() {
            assert_eq!(c, &BigRat::from_integer(regen[m].clone()));
        }
    }

    #[test]
    fn inconsistent_inputs() {
        assert!(zeta_from_counts(2, 1, &bi(&[3, 5])).is_err());
        assert!(matches!(zeta_from_counts(2, 2, &bi(&[3, 4])), Err(Error::InconsistentCounts(_))));
        // N_1 = 9 over F_2 with g = 1 violates Weil bound
        assert!(matches!(zeta_from_counts(2, 1, &bi(&[9])), Err(Error::InconsistentCounts(_))));
        assert!(ZetaData::new(2, 1, bi(&[1, 0, 3])).is_err());
        assert!(ZetaData::new(2, 1, bi(&[2, 0, 4])).is_err());
    }

    #[test]
    fn class_numbers_and_residues() {
        let p1 = zeta_from_counts(2, 0, &[]).unwrap();
        assert_eq!(class_number(&p1), BigInt::from(1));
        assert_eq!(quasi_residue(&p1), rat(2, 1));
        assert_eq!(quasi_residue(&zeta_from_counts(3, 0, &[]).unwrap()), rat(3, 2));
        let e = zeta_from_counts(2, 1, &bi(&[3])).unwrap();
        assert_eq!(class_number(&e), BigInt::from(3));
        assert_eq!(quasi_residue(&e), rat(3, 1));
        for n1 in 1..=5 {
            let e = zeta_from_counts(2, 1, &bi(&[n1])).unwrap();
            assert_eq!(class_number(&e), BigInt::from(n1));
        }
    }

    #[test]
    fn special_values() {
        let p1 = zeta_from_counts(2, 0, &[]).unwrap();
        assert_eq!(special_value(&p1, 2).unwrap(), rat(8, 3));
        assert_eq!(special_value(&zeta_from_counts(3, 0, &[]).unwrap(), 2).unwrap(), rat(27, 16));
        let e = zeta_from_counts(2, 1, &bi(&[3])).unwrap();
        assert_eq!(special_value(&e, 2).unwrap(), rat(3, 1));
        assert!(special_value(&e, 1).is_err());
        assert!(special_value(&e, 0).is_err());
    }

    #[test]
    fn special_value_matches_series_summation() {
        // Z(1/4) for y^2 + y = x^3 over F_2 by summing exp(sum N_m T^m / m)'s
        // expansion Z(T) = sum_n c_n T^n with c_n from the zeta numerator
        let e = zeta_from_counts(2, 1, &bi(&[3])).unwrap();
        let exact = special_value(&e, 2).unwrap();
        let t = rat(1, 4);
        let mut sum = BigRat::zero();
        let mut tp = BigRat::one();
        for n in 0..30 {
            // coefficient of T^n in (1 + 2T^2) / ((1 - T)(1 - 2T))
            let geo = |j: i64| if j < 0 { 0 } else { (1i64 << (j + 1)) - 1 };
            let c = geo(n) + 2 * geo(n - 2);
            sum += BigRat::from_integer(BigInt::from(c)) * &tp;
            tp *= &t;
        }
        let diff = (&exact - &sum).abs();
        assert!(diff < rat(1, 1 << 20), "{diff}");
    }

    #[test]
    fn degree_spectra() {
        let pc = |v: &[i64]| PointCounts { q: 2, g: 0, counts: bi(v) };
        assert_eq!(degree_spectrum(&pc(&[3, 5])).unwrap().b, bi(&[3, 1]));
        assert_eq!(degree_spectrum(&pc(&[3, 5, 9])).unwrap().b[2], BigInt::from(2));
        assert!(degree_spectrum(&pc(&[3, 4])).is_err());
        assert!(degree_spectrum(&pc(&[3, 1])).is_err());
        let ds = degree_spectrum(&pc(&[3, 5, 9, 17, 33, 65])).unwrap();
        for m in 1..=6 {
            assert_eq!(ds.count(m), BigInt::from((1i64 << m) + 1));
        }
    }

    #[test]
    fn functional_equation_large_genus() {
        // y^2 + y = x^7 over F_2
        let z = zeta_from_counts(2, 3, &bi(&[3, 5, 3])).unwrap();
        let a = z.coefficients();
        for i in 0..3 {
            assert_eq!(a[6 - i], bigint_pow(2, 3 - i as u32) * &a[i]);
        }
    }
}
