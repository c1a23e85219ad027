//! Prime and extension fields `F_{p^m}` for exhaustive enumeration.
//!
//! An element is encoded as a `u64` holding its coefficient vector in base
//! `p`: `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` represents
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` modulo the defining polynomial.
//! The prime subfield is therefore `0..p`, and enumerating `0..p^m` visits
//! every element once.

use crate::arith::rational::is_prime;
use crate::error::{Error, Result};

pub type Elem = u64;

/// Default cap on the size of any enumerated domain.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

const MAX_DEGREE: usize = 64;

/// `F_{p^m}` described by a monic irreducible modulus (constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtFieldSpec {
    p: u64,
    m: u32,
    modulus: Vec<u64>,
}

impl ExtFieldSpec {
    /// The field with the lexicographically smallest irreducible modulus.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let modulus = find_irreducible(p, m)?;
        Ok(ExtFieldSpec { p, m, modulus })
    }

    /// A field with a caller-chosen modulus, checked for irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        check_characteristic(p)?;
        let m = modulus.len().saturating_sub(1) as u32;
        if m == 0 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidArgument("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument("modulus coefficients must lie in 0..p".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidArgument(format!("{modulus:?} is reducible over F_{p}")));
        }
        Ok(ExtFieldSpec { p, m, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^m`; saturates at `u128::MAX` (never reached for buildable fields).
    pub fn order(&self) -> u128 {
        (self.p as u128).saturating_pow(self.m)
    }
}

fn check_characteristic(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime { what: "characteristic", value: p });
    }
    if p >= 1 << 31 {
        return Err(Error::InvalidArgument(format!("characteristic {p} too large")));
    }
    Ok(())
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over `F_p`, ordering the lower coefficient vectors `(c_0, ..., c_{m-1})`
/// with `c_0` most significant. Returned constant term first, with the
/// leading 1 included.
pub fn find_irreducible(p: u64, m: u32) -> Result<Vec<u64>> {
    check_characteristic(p)?;
    if m == 0 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    let m = m as usize;
    if (m as f64) * (p as f64).log2() > 62.0 {
        return Err(Error::InvalidArgument(format!("F_{p}^{m} does not fit in 64 bits")));
    }
    // c_0 = 0 means divisible by x; start at c_0 = 1.
    let mut c = vec![0u64; m + 1];
    c[0] = 1;
    c[m] = 1;
    loop {
        if is_irreducible(p, &c) {
            return Ok(c);
        }
        // increment (c_0 .. c_{m-1}) with c_{m-1} least significant
        let mut i = m - 1;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            if i == 0 {
                unreachable!("irreducible polynomials exist in every degree");
            }
            i -= 1;
        }
    }
}

/// Rabin's test: `f` (monic, degree `m`) is irreducible iff `x^{p^m} = x mod f`
/// and `gcd(x^{p^{m/r}} - x, f) = 1` for every prime `r | m`.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    // frob[k] = x^{p^k} mod f
    let mut frob = Vec::with_capacity(m + 1);
    frob.push(x.clone());
    for k in 1..=m {
        let prev = &frob[k - 1];
        frob.push(fp::powmod(prev, p, f, p));
    }
    if fp::trim(frob[m].clone()) != x {
        return false;
    }
    let mut r = 2;
    let mut n = m;
    while n > 1 {
        if n.is_multiple_of(r) {
            while n.is_multiple_of(r) {
                n /= r;
            }
            let diff = fp::sub(&frob[m / r], &x, p);
            let g = fp::gcd(diff, f.to_vec(), p);
            if g.len() > 1 {
                return false;
            }
        }
        r += 1;
    }
    true
}

/// Polynomials over `F_p` as coefficient vectors, constant term first.
mod fp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as u128 * b as u128) % p as u128) as u64;
            }
            b = ((b as u128 * b as u128) % p as u128) as u64;
            e >>= 1;
        }
        r
    }

    /// Remainder of `a` modulo nonzero `b`.
    pub fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
        let db = b.len() - 1;
        let lead_inv = inv(b[db], p);
        a = trim(a);
        while a.len() > db {
            let da = a.len() - 1;
            let c = ((a[da] as u128 * lead_inv as u128) % p as u128) as u64;
            for (i, &bi) in b.iter().enumerate() {
                let idx = da - db + i;
                let t = ((c as u128 * bi as u128) % p as u128) as u64;
                a[idx] = (a[idx] + p - t) % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        rem(out, f, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut base = rem(a.to_vec(), f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
        a = trim(a);
        b = trim(b);
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Arithmetic context for one field. Immutable and `Sync`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    spec: ExtFieldSpec,
    size: u64,
    pow_p: Vec<u64>,
    /// modulus bits for p = 2 (bit i = coefficient of x^i)
    binary_modulus: u128,
    /// `Tr(x^i)` for the power basis; the trace is linear in the digits
    trace_basis: Vec<u64>,
    /// for p = 2, bit i = `Tr(x^i)`
    trace_mask: u64,
}

impl FiniteField {
    pub fn new(spec: ExtFieldSpec) -> Result<Self> {
        let order = spec.order();
        if order > (1u128 << 62) {
            return Err(Error::InvalidArgument(format!("field of order {order} too large")));
        }
        let size = order as u64;
        let mut pow_p = Vec::with_capacity(spec.m as usize + 1);
        let mut acc = 1u64;
        for _ in 0..=spec.m {
            pow_p.push(acc);
            acc = acc.saturating_mul(spec.p);
        }
        let binary_modulus = if spec.p == 2 {
            spec.modulus.iter().enumerate().fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i))
        } else {
            0
        };
        let mut field =
            FiniteField { spec, size, pow_p, binary_modulus, trace_basis: Vec::new(), trace_mask: 0 };
        field.trace_basis =
            (0..field.spec.m as usize).map(|i| field.trace_by_frobenius(field.pow_p[i])).collect();
        field.trace_mask = field.trace_basis.iter().enumerate().fold(0, |acc, (i, &t)| acc | ((t & 1) << i));
        Ok(field)
    }

    /// `F_{p^m}` with the default modulus.
    pub fn of(p: u64, m: u32) -> Result<Self> {
        Self::new(ExtFieldSpec::new(p, m)?)
    }

    pub fn spec(&self) -> &ExtFieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.m
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    #[inline]
    fn is_binary(&self) -> bool {
        self.spec.p == 2
    }

    #[inline]
    fn digits(&self, mut a: Elem, out: &mut [u64; MAX_DEGREE]) {
        let p = self.spec.p;
        for d in out.iter_mut().take(self.spec.m as usize) {
            *d = a % p;
            a /= p;
        }
    }

    #[inline]
    fn pack_digits(&self, d: &[u64]) -> Elem {
        d.iter().take(self.spec.m as usize).zip(&self.pow_p).map(|(c, w)| c * w).sum()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> Elem {
        c.rem_euclid(self.spec.p as i64) as u64
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The class of `x`, the generator over the prime field.
    pub fn generator(&self) -> Elem {
        if self.spec.m == 1 {
            // x = -c_0 in F_p
            (self.spec.p - self.spec.modulus[0]) % self.spec.p
        } else {
            self.spec.p
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.is_binary() {
            return a ^ b;
        }
        let p = self.spec.p;
        if self.spec.m == 1 {
            return (a + b) % p;
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.digits(a, &mut x);
        self.digits(b, &mut y);
        for i in 0..self.spec.m as usize {
            x[i] = (x[i] + y[i]) % p;
        }
        self.pack_digits(&x)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.is_binary() {
            return a;
        }
        let p = self.spec.p;
        if self.spec.m == 1 {
            return (p - a) % p;
        }
        let mut x = [0u64; MAX_DEGREE];
        self.digits(a, &mut x);
        for d in x.iter_mut().take(self.spec.m as usize) {
            *d = (p - *d) % p;
        }
        self.pack_digits(&x)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let m = self.spec.m as usize;
        if self.is_binary() {
            let mut prod: u128 = 0;
            let mut bb = b;
            let mut shift = 0;
            while bb != 0 {
                if bb & 1 == 1 {
                    prod ^= (a as u128) << shift;
                }
                bb >>= 1;
                shift += 1;
            }
            for i in (m..(2 * m).max(m + 1)).rev() {
                if prod >> i & 1 == 1 {
                    prod ^= self.binary_modulus << (i - m);
                }
            }
            return prod as u64;
        }
        let p = self.spec.p;
        if m == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        let (mut x, mut y) = ([0u64; MAX_DEGREE], [0u64; MAX_DEGREE]);
        self.digits(a, &mut x);
        self.digits(b, &mut y);
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += x[i] as u128 * y[j] as u128;
            }
        }
        let p128 = p as u128;
        let modulus = &self.spec.modulus;
        for k in (m..2 * m - 1).rev() {
            let c = prod[k] % p128;
            prod[k] = 0;
            if c == 0 {
                continue;
            }
            // x^k = -sum_{i<m} f_i x^{k-m+i}
            for (i, &fi) in modulus.iter().take(m).enumerate() {
                prod[k - m + i] += c * (p128 - fi as u128);
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..m {
            out[i] = (prod[i] % p128) as u64;
        }
        self.pack_digits(&out)
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut e: u128) -> Elem {
        let mut result = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        if !self.is_binary() {
            return Some(self.pow(a, self.size as u128 - 2));
        }
        // extended Euclid in F_2[x]
        let deg = |x: u128| 127 - x.leading_zeros() as i32;
        let (mut u, mut v) = (a as u128, self.binary_modulus);
        let (mut g1, mut g2) = (1u128, 0u128);
        while u != 1 {
            let mut j = deg(u) - deg(v);
            if j < 0 {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                j = -j;
            }
            u ^= v << j;
            g1 ^= g2 << j;
        }
        Some(g1 as u64)
    }

    /// Quadratic character: 0, 1 or -1. Odd characteristic only.
    pub fn quadratic_character(&self, a: Elem) -> i32 {
        debug_assert!(!self.is_binary());
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.size as u128 - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Absolute trace to `F_p`, as an element of the prime subfield.
    pub fn trace(&self, a: Elem) -> Elem {
        if self.is_binary() {
            return ((a & self.trace_mask).count_ones() & 1) as Elem;
        }
        let p = self.spec.p;
        let mut digits = [0u64; MAX_DEGREE];
        self.digits(a, &mut digits);
        digits.iter().zip(&self.trace_basis).fold(0, |acc, (&d, &t)| (acc + d * t) % p)
    }

    /// `a + a^p + ... + a^{p^{m-1}}`.
    fn trace_by_frobenius(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut t = a;
        for _ in 0..self.spec.m {
            acc = self.add(acc, t);
            t = self.pow(t, self.spec.p as u128);
        }
        acc
    }

    /// Square root in characteristic 2 (Frobenius is bijective).
    pub fn sqrt_char2(&self, a: Elem) -> Elem {
        debug_assert!(self.is_binary());
        self.pow(a, self.size as u128 / 2)
    }

    /// Number of `y` in this field with `y^2 + a*y = b`.
    pub fn count_quadratic_roots(&self, a: Elem, b: Elem) -> u64 {
        if self.is_binary() {
            if a == 0 {
                return 1;
            }
            let a_inv = self.inv(a).unwrap();
            let c = self.mul(b, self.square(a_inv));
            if self.trace(c) == 0 {
                2
            } else {
                0
            }
        } else {
            // discriminant a^2 + 4b
            let four = self.from_int(4);
            let disc = self.add(self.square(a), self.mul(four, b));
            (1 + self.quadratic_character(disc)) as u64
        }
    }

    /// Smallest-index root in this field of the defining polynomial of `sub`,
    /// giving an embedding `F_{p^e} -> F_{p^m}` for `e | m`.
    pub fn embedding_of(&self, sub: &FiniteField) -> Result<Embedding> {
        if sub.p() != self.p() || !self.degree().is_multiple_of(sub.degree()) {
            return Err(Error::InvalidArgument(format!(
                "F_{}^{} is not a subfield of F_{}^{}",
                sub.p(),
                sub.degree(),
                self.p(),
                self.degree()
            )));
        }
        if sub.spec == self.spec {
            return Ok(Embedding { powers: None, p: self.p() });
        }
        let f = sub.spec.modulus();
        let root = (0..self.size)
            .find(|&a| {
                let v = f.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, a), self.from_int(c as i64)));
                v == 0
            })
            .expect("a subfield's defining polynomial splits in the extension");
        let mut powers = Vec::with_capacity(sub.degree() as usize);
        let mut acc = 1;
        for _ in 0..sub.degree() {
            powers.push(acc);
            acc = self.mul(acc, root);
        }
        Ok(Embedding { powers: Some(powers), p: self.p() })
    }
}

/// Field embedding `F_{p^e} -> F_{p^m}` given by the images of `1, x, ..., x^{e-1}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    powers: Option<Vec<Elem>>,
    p: u64,
}

impl Embedding {
    pub fn apply(&self, target: &FiniteField, a: Elem) -> Elem {
        match &self.powers {
            None => a,
            Some(powers) => {
                let mut acc = 0;
                let mut rest = a;
                for &w in powers {
                    let c = rest % self.p;
                    rest /= self.p;
                    if c != 0 {
                        acc = target.add(acc, target.mul(target.from_int(c as i64), w));
                    }
                }
                acc
            }
        }
    }
}

/// All `p^m` elements in index order, provided the field fits the budget.
pub fn field_elements(spec: &ExtFieldSpec, budget: u64) -> Result<impl Iterator<Item = Elem>> {
    let size = spec.order();
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(0..size as u64)
}
