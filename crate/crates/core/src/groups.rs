//! Split reductive groups described by dimension and invariant degrees, and
//! their point counts over `F_{q^r}` from Steinberg's formula
//! `|G(F_Q)| = Q^dim * prod_j (1 - Q^{-d_j})`.

use std::fmt;

use num::{BigInt, One};

use crate::arith::rational::{bigint_pow, q_pow, BigRat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    GL,
    SL,
    Sp,
    SOOdd,
    SOEven,
    Gm,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "GL" => Family::GL,
            "SL" => Family::SL,
            "Sp" => Family::Sp,
            "SO-odd" => Family::SOOdd,
            "SO-even" => Family::SOEven,
            "Gm" => Family::Gm,
            other => {
                return Err(Error::UnsupportedGroup { family: other.to_string(), n: 0 });
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::Sp => "Sp",
            Family::SOOdd => "SO-odd",
            Family::SOEven => "SO-even",
            Family::Gm => "Gm",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub dim: u32,
    /// Degrees of the generating invariants; entries equal to 1 count the
    /// rank of the character lattice.
    pub degrees: Vec<u32>,
    pub tamagawa: BigRat,
    /// `Some(n)` when this is `GL_n`, which enables semistable masses.
    pub gl_rank: Option<u32>,
}

impl GroupSpec {
    /// A user-defined group; `dim >= sum of degrees` keeps every order an integer.
    pub fn new(name: &str, dim: u32, degrees: Vec<u32>, tamagawa: BigRat) -> Result<Self> {
        let bad = |reason: String| Err(Error::MalformedGroup { name: name.to_string(), reason });
        if dim == 0 {
            return bad("dimension must be positive".into());
        }
        if degrees.is_empty() || degrees.contains(&0) {
            return bad("degrees must be a nonempty list of positive integers".into());
        }
        if degrees.iter().sum::<u32>() > dim {
            return bad(format!("sum of degrees {} exceeds dim {dim}", degrees.iter().sum::<u32>()));
        }
        if tamagawa <= BigRat::from_integer(0.into()) {
            return bad("tamagawa number must be positive".into());
        }
        let mut degrees = degrees;
        degrees.sort_unstable();
        Ok(GroupSpec { name: name.to_string(), dim, degrees, tamagawa, gl_rank: None })
    }

    /// Number of degree-1 entries (rank of the character group).
    pub fn central_rank(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }
}

/// Dimension and invariant degrees of the classical families.
pub fn builtin_group(family: Family, n: u32) -> Result<GroupSpec> {
    let unsupported = || Err(Error::UnsupportedGroup { family: family.to_string(), n });
    let (name, dim, degrees): (String, u32, Vec<u32>) = match family {
        Family::GL if n >= 1 => (format!("GL_{n}"), n * n, (1..=n).collect()),
        Family::SL if n >= 2 => (format!("SL_{n}"), n * n - 1, (2..=n).collect()),
        Family::Gm if n == 1 => ("Gm".to_string(), 1, vec![1]),
        Family::Sp if n >= 1 => (format!("Sp_{}", 2 * n), 2 * n * n + n, (1..=n).map(|i| 2 * i).collect()),
        Family::SOOdd if n >= 1 => {
            (format!("SO_{}", 2 * n + 1), 2 * n * n + n, (1..=n).map(|i| 2 * i).collect())
        }
        Family::SOEven if n >= 2 => {
            let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
            d.push(n);
            (format!("SO_{}", 2 * n), 2 * n * n - n, d)
        }
        _ => return unsupported(),
    };
    let mut spec = GroupSpec::new(&name, dim, degrees, BigRat::one())?;
    if family == Family::GL {
        spec.gl_rank = Some(n);
    }
    Ok(spec)
}

/// `|G(F_{q^r})| = Q^{dim - sum d_j} prod_j (Q^{d_j} - 1)`, `Q = q^r`.
pub fn group_order(spec: &GroupSpec, q: u64, r: u32) -> Result<BigInt> {
    if q < 2 || r == 0 {
        return Err(Error::InvalidArgument(format!("need q >= 2 and r >= 1, got q = {q}, r = {r}")));
    }
    let total: u32 = spec.degrees.iter().sum();
    let excess = spec.dim.checked_sub(total).ok_or_else(|| Error::MalformedGroup {
        name: spec.name.clone(),
        reason: "noninteger order: sum of degrees exceeds dim".into(),
    })?;
    let big_q = |e: u32| bigint_pow(q, r * e);
    Ok(spec.degrees.iter().fold(big_q(excess), |acc, &d| acc * (big_q(d) - 1)))
}

/// `|G(F_{q^r})| / q^{r dim} = prod_j (1 - q^{-r d_j})`.
pub fn mass_ratio(spec: &GroupSpec, q: u64, r: u32) -> BigRat {
    spec.degrees.iter().fold(BigRat::one(), |acc, &d| acc * (BigRat::one() - q_pow(q, -((r * d) as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn builtin_tables() {
        let gl2 = builtin_group(Family::GL, 2).unwrap();
        assert_eq!((gl2.dim, gl2.degrees.clone()), (4, vec![1, 2]));
        let gm = builtin_group(Family::Gm, 1).unwrap();
        assert_eq!((gm.dim, gm.degrees.clone()), (1, vec![1]));
        let sp4 = builtin_group(Family::Sp, 2).unwrap();
        assert_eq!((sp4.dim, sp4.degrees.clone()), (10, vec![2, 4]));
        let so8 = builtin_group(Family::SOEven, 4).unwrap();
        assert_eq!((so8.dim, so8.degrees.clone()), (28, vec![2, 4, 4, 6]));
        assert!(builtin_group(Family::SOEven, 1).is_err());
        assert!(builtin_group(Family::SL, 1).is_err());
        assert!(builtin_group(Family::Gm, 2).is_err());
        assert!(Family::parse("E8").is_err());
    }

    #[test]
    fn dimension_matches_degrees() {
        // dim G = sum_j (2 d_j - 1) for every reductive group
        for fam in [Family::GL, Family::SL, Family::Sp, Family::SOOdd, Family::SOEven] {
            for n in 2..=6 {
                let g = builtin_group(fam, n).unwrap();
                assert_eq!(g.dim, g.degrees.iter().map(|d| 2 * d - 1).sum::<u32>(), "{}", g.name);
            }
        }
    }

    #[test]
    fn orders() {
        let gm = builtin_group(Family::Gm, 1).unwrap();
        for q in [2u64, 3, 4, 5, 7, 9] {
            assert_eq!(group_order(&gm, q, 1).unwrap(), BigInt::from(q - 1));
        }
        let gl2 = builtin_group(Family::GL, 2).unwrap();
        assert_eq!(group_order(&gl2, 2, 1).unwrap(), BigInt::from(6));
        let sp4 = builtin_group(Family::Sp, 2).unwrap();
        assert_eq!(group_order(&sp4, 2, 1).unwrap(), BigInt::from(720));
    }

    #[test]
    fn gl_order_identity() {
        for n in 1..=5u32 {
            let g = builtin_group(Family::GL, n).unwrap();
            for q in [2u64, 3, 4, 5, 8, 9] {
                for r in 1..=3 {
                    let qq = q.pow(r) as i64;
                    let expect: BigInt =
                        (0..n).map(|i| BigInt::from(qq).pow(n) - BigInt::from(qq).pow(i)).product();
                    assert_eq!(group_order(&g, q, r).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn ratios() {
        assert_eq!(mass_ratio(&builtin_group(Family::Gm, 1).unwrap(), 4, 1), rat(3, 4));
        assert_eq!(mass_ratio(&builtin_group(Family::GL, 2).unwrap(), 2, 1), rat(3, 8));
        for n in 1..=4 {
            let g = builtin_group(Family::GL, n).unwrap();
            let mut prev = BigRat::from_integer(0.into());
            for r in 1..=8 {
                let v = mass_ratio(&g, 3, r);
                assert!(v > prev && v < BigRat::one());
                prev = v;
            }
        }
    }

    #[test]
    fn user_groups() {
        let g2 = GroupSpec::new("G2", 14, vec![6, 2], BigRat::one()).unwrap();
        assert_eq!(g2.degrees, vec![2, 6]);
        // |G_2(F_2)| = 12096
        assert_eq!(group_order(&g2, 2, 1).unwrap(), BigInt::from(12096));
        assert!(GroupSpec::new("bad", 3, vec![2, 2], BigRat::one()).is_err());
        assert!(GroupSpec::new("bad", 3, vec![], BigRat::one()).is_err());
        assert!(GroupSpec::new("bad", 3, vec![1], rat(0, 1)).is_err());
    }
}
