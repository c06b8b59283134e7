//! Exact rational coordinates for the rectilinear layout.
//!
//! Geometric disjointness checks must be deterministic, so layout
//! coordinates are rationals serialized as `[numerator, denominator]`
//! integer pairs.

use num_rational::Ratio;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A rational coordinate. Always kept in lowest terms with a positive
/// denominator (the `Ratio` invariant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(Ratio<i64>);

impl Q {
    pub fn new(numer: i64, denom: i64) -> Self {
        Q(Ratio::new(numer, denom))
    }

    pub fn int(n: i64) -> Self {
        Q(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn zero() -> Self {
        Q::int(0)
    }

    pub fn is_positive(&self) -> bool {
        *self > Q::zero()
    }

    pub fn is_negative(&self) -> bool {
        *self < Q::zero()
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        Q(self.0 + rhs.0)
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(self.0 - rhs.0)
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        Q(self.0 * rhs.0)
    }
}

impl Div for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        Q(self.0 / rhs.0)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.numer(), self.denom()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [numer, denom] = <[i64; 2]>::deserialize(deserializer)?;
        if denom == 0 {
            return Err(D::Error::custom("rational with zero denominator"));
        }
        Ok(Q::new(numer, denom))
    }
}
