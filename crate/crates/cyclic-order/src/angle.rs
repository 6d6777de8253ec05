//! Exact points of Q/Z.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CyclicError;

/// A point of Q/Z, stored as the unique reduced representative in `[0, 1)`.
///
/// `Ord` is the linear order of representatives, i.e. the cyclic order cut
/// at `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle(BigRational);

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Cross-multiply machine-size fractions; denominators are positive.
        let small = |r: &BigRational| Some((r.numer().to_i64()? as i128, r.denom().to_i64()? as i128));
        match (small(&self.0), small(&other.0)) {
            (Some((p, q)), Some((r, s))) => (p * s).cmp(&(r * q)),
            _ => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduce a rational modulo 1 into `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

impl Angle {
    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    /// `num/den` reduced modulo 1.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, CyclicError> {
        let den = den.into();
        if den.is_zero() {
            return Err(CyclicError::InvalidAngle("zero denominator".into()));
        }
        Ok(Angle(frac(&BigRational::new(num.into(), den))))
    }

    /// Panicking shorthand for literals in tests and builtins.
    pub fn frac(num: i64, den: i64) -> Self {
        Angle::new(num, den).expect("nonzero denominator")
    }

    /// Any rational, reduced modulo 1.
    pub fn from_rational(r: &BigRational) -> Self {
        Angle(frac(r))
    }

    /// `k/n` for small integers.
    pub fn ratio(k: u64, n: u64) -> Self {
        Angle::new(k, n).expect("nonzero denominator")
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self + other` in Q/Z.
    pub fn add(&self, other: &Angle) -> Angle {
        Angle(frac(&(&self.0 + &other.0)))
    }

    /// `self - other` in Q/Z.
    pub fn sub(&self, other: &Angle) -> Angle {
        Angle(frac(&(&self.0 - &other.0)))
    }

    /// `-self` in Q/Z.
    pub fn neg(&self) -> Angle {
        Angle(frac(&-&self.0))
    }

    /// Translation by a rational amount.
    pub fn shift(&self, by: &BigRational) -> Angle {
        Angle(frac(&(&self.0 + by)))
    }

    /// Angle doubling `x ↦ 2x`.
    pub fn double(&self) -> Angle {
        Angle(frac(&(&self.0 * BigRational::from_integer(BigInt::from(2)))))
    }

    /// The two preimages of `self` under doubling, `x/2` and `x/2 + 1/2`.
    pub fn halves(&self) -> (Angle, Angle) {
        let two = BigRational::from_integer(BigInt::from(2));
        let h = &self.0 / &two;
        let h2 = &h + BigRational::new(BigInt::one(), BigInt::from(2));
        (Angle(h), Angle(frac(&h2)))
    }

    /// Length of the positively oriented arc from `self` to `other`, in `[0, 1)`.
    pub fn arc_to(&self, other: &Angle) -> BigRational {
        frac(&(&other.0 - &self.0))
    }

    /// Lossy conversion for rendering only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = CyclicError;

    /// Parses the canonical `"p/q"` form; a bare integer is read as `p/1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CyclicError::InvalidAngle(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() || q.is_negative() {
            return Err(bad());
        }
        if p.is_negative() || p >= q || !p.gcd(&q).is_one() {
            return Err(CyclicError::InvalidAngle(format!(
                "{s} is not a reduced fraction in [0,1)"
            )));
        }
        Ok(Angle(BigRational::new(p, q)))
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_modulo_one() {
        assert_eq!(Angle::frac(5, 4), Angle::frac(1, 4));
        assert_eq!(Angle::frac(-1, 4), Angle::frac(3, 4));
        assert_eq!(Angle::frac(2, 4).to_string(), "1/2");
        assert_eq!(Angle::zero().to_string(), "0/1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0/1", "1/2", "3/7", "11/14"] {
            let a: Angle = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert!("2/4".parse::<Angle>().is_err());
        assert!("1/0".parse::<Angle>().is_err());
        assert!("5/4".parse::<Angle>().is_err());
    }

    #[test]
    fn halves_double_back() {
        let a = Angle::frac(3, 7);
        let (h1, h2) = a.halves();
        assert_eq!(h1.double(), a);
        assert_eq!(h2.double(), a);
        assert_eq!(h1, Angle::frac(3, 14));
        assert_eq!(h2, Angle::frac(5, 7));
    }
}
