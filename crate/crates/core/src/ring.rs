//! Coefficient rings: the integers and the residue rings `Z/m`.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("modulus {0} is not allowed (use 0 for Z, or m >= 3)")]
    BadModulus(u64),
    #[error("integer overflow in coefficient arithmetic")]
    Overflow,
    #[error("unrecognized ring {0:?} (expected `z` or `z/<m>`)")]
    BadSpec(String),
}

/// How the theorem's case split sees a ring: whether it has 2-torsion, and
/// whether its characteristic is exactly 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingClass {
    /// `R_2 = {0}`
    R2Zero,
    /// characteristic exactly 4
    Char4,
    /// `R_2 != {0}` and characteristic other than 4
    Other,
}

impl RingClass {
    pub const ALL: [RingClass; 3] = [RingClass::R2Zero, RingClass::Char4, RingClass::Other];

    /// The ring used to decide instances of this class by brute force.
    pub fn representative(self) -> CoeffRing {
        match self {
            RingClass::R2Zero => CoeffRing::integers(),
            RingClass::Char4 => CoeffRing::modulo(4).unwrap(),
            RingClass::Other => CoeffRing::modulo(8).unwrap(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RingClass::R2Zero => "r2zero",
            RingClass::Char4 => "char4",
            RingClass::Other => "other",
        }
    }
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RingClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r2zero" => Ok(RingClass::R2Zero),
            "char4" => Ok(RingClass::Char4),
            "other" => Ok(RingClass::Other),
            _ => Err(format!("unknown ring class {s:?} (expected r2zero|char4|other)")),
        }
    }
}

/// `Z` (modulus 0) or `Z/m` with `m >= 3`. Elements are `i64` values; for
/// `Z/m` they are kept reduced into `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffRing {
    modulus: u64,
}

impl CoeffRing {
    pub fn integers() -> Self {
        CoeffRing { modulus: 0 }
    }

    pub fn modulo(m: u64) -> Result<Self, RingError> {
        if m == 1 || m == 2 || m > i64::MAX as u64 / 2 {
            return Err(RingError::BadModulus(m));
        }
        Ok(CoeffRing { modulus: m })
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_integers(self) -> bool {
        self.modulus == 0
    }

    pub fn characteristic(self) -> u64 {
        self.modulus
    }

    /// Additive generators of the 2-torsion `{r : 2r = 0}`.
    pub fn r2_generators(self) -> Vec<i64> {
        if self.modulus != 0 && self.modulus.is_multiple_of(2) {
            vec![(self.modulus / 2) as i64]
        } else {
            Vec::new()
        }
    }

    pub fn ring_class(self) -> RingClass {
        if self.r2_generators().is_empty() {
            RingClass::R2Zero
        } else if self.modulus == 4 {
            RingClass::Char4
        } else {
            RingClass::Other
        }
    }

    /// Canonical representative of an integer.
    pub fn reduce(self, x: i64) -> i64 {
        if self.modulus == 0 {
            x
        } else {
            x.rem_euclid(self.modulus as i64)
        }
    }

    pub fn zero(self) -> i64 {
        0
    }

    pub fn one(self) -> i64 {
        self.reduce(1)
    }

    pub fn is_zero(self, x: i64) -> bool {
        x == 0
    }

    pub fn add(self, x: i64, y: i64) -> Result<i64, RingError> {
        if self.modulus == 0 {
            x.checked_add(y).ok_or(RingError::Overflow)
        } else {
            // both operands are below m <= i64::MAX / 2
            Ok(self.reduce(x + y))
        }
    }

    pub fn neg(self, x: i64) -> Result<i64, RingError> {
        if self.modulus == 0 {
            x.checked_neg().ok_or(RingError::Overflow)
        } else {
            Ok(self.reduce(-x))
        }
    }

    pub fn sub(self, x: i64, y: i64) -> Result<i64, RingError> {
        self.add(x, self.neg(y)?)
    }

    pub fn mul(self, x: i64, y: i64) -> Result<i64, RingError> {
        if self.modulus == 0 {
            x.checked_mul(y).ok_or(RingError::Overflow)
        } else {
            let m = self.modulus as i128;
            Ok(((x as i128 * y as i128).rem_euclid(m)) as i64)
        }
    }

    /// Prints an element; residues above `m/2` print as negatives so that
    /// `-1` in `Z/4` reads as `-1` rather than `3`.
    pub fn display_value(self, x: i64) -> i64 {
        if self.modulus != 0 && (x as u64) * 2 > self.modulus {
            x - self.modulus as i64
        } else {
            x
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            f.write_str("z")
        } else {
            write!(f, "z/{}", self.modulus)
        }
    }
}

impl FromStr for CoeffRing {
    type Err = RingError;

    /// Accepts `z` and `z/<m>` (case-insensitive).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "z" {
            return Ok(CoeffRing::integers());
        }
        let m = t
            .strip_prefix("z/")
            .and_then(|m| m.parse::<u64>().ok())
            .ok_or_else(|| RingError::BadSpec(s.to_string()))?;
        if m == 0 {
            return Err(RingError::BadSpec(s.to_string()));
        }
        CoeffRing::modulo(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(m: u64) -> CoeffRing {
        CoeffRing::modulo(m).unwrap()
    }

    #[test]
    fn characteristics() {
        assert_eq!(CoeffRing::integers().characteristic(), 0);
        assert_eq!(zm(4).characteristic(), 4);
        assert_eq!(zm(3).characteristic(), 3);
    }

    #[test]
    fn two_torsion_generators() {
        assert!(CoeffRing::integers().r2_generators().is_empty());
        assert_eq!(zm(4).r2_generators(), vec![2]);
        assert_eq!(zm(12).r2_generators(), vec![6]);
        assert!(zm(9).r2_generators().is_empty());
    }

    #[test]
    fn classes() {
        assert_eq!(CoeffRing::integers().ring_class(), RingClass::R2Zero);
        assert_eq!(zm(4).ring_class(), RingClass::Char4);
        assert_eq!(zm(8).ring_class(), RingClass::Other);
        assert_eq!(zm(6).ring_class(), RingClass::Other);
        assert_eq!(zm(5).ring_class(), RingClass::R2Zero);
        for rc in RingClass::ALL {
            assert_eq!(rc.representative().ring_class(), rc);
        }
    }

    #[test]
    fn bad_moduli() {
        assert_eq!(CoeffRing::modulo(1), Err(RingError::BadModulus(1)));
        assert_eq!(CoeffRing::modulo(2), Err(RingError::BadModulus(2)));
        assert!("z/2".parse::<CoeffRing>().is_err());
        assert!("z/0".parse::<CoeffRing>().is_err());
        assert!("q".parse::<CoeffRing>().is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("z".parse::<CoeffRing>().unwrap(), CoeffRing::integers());
        assert_eq!("Z/8".parse::<CoeffRing>().unwrap(), zm(8));
        assert_eq!(zm(8).to_string(), "z/8");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(zm(4).add(2, 2), Ok(0));
        assert_eq!(CoeffRing::integers().add(1, -1), Ok(0));
        assert_eq!(zm(12).mul(6, 2), Ok(0));
        assert_eq!(zm(4).neg(1), Ok(3));
        assert_eq!(zm(4).display_value(3), -1);
        assert_eq!(zm(4).display_value(2), 2);
    }

    #[test]
    fn integer_overflow_is_reported() {
        let z = CoeffRing::integers();
        assert_eq!(z.add(i64::MAX, 1), Err(RingError::Overflow));
        assert_eq!(z.mul(i64::MAX, 2), Err(RingError::Overflow));
        assert_eq!(z.neg(i64::MIN), Err(RingError::Overflow));
    }

    #[test]
    fn two_torsion_is_exactly_half_modulus() {
        for m in 3..=64u64 {
            let r = zm(m);
            let torsion: Vec<i64> = (0..m as i64).filter(|&x| r.add(x, x) == Ok(0)).collect();
            if m % 2 == 0 {
                assert_eq!(torsion, vec![0, (m / 2) as i64]);
                assert_eq!(r.r2_generators(), vec![(m / 2) as i64]);
            } else {
                assert_eq!(torsion, vec![0]);
            }
        }
    }
}
