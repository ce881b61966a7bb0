//! The digital semiring `W = N ∪ {∞}`.
//!
//! Addition keeps the operand with the larger decimal digit sum and
//! multiplication the one with the smaller; ties fall back to the numeric
//! max / min. `∞` has a digit sum above every finite one, so it is the
//! multiplicative identity and absorbs under addition, while `0` is the
//! additive identity and absorbs under multiplication.
//!
//! Both operations are selections from a single total order, the order
//! `≤_W` compares `(δ(a), a)` lexicographically with `∞` on top.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::semiring::{IdempotentSemiring, Residuated, Semiring};

/// An element of `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DigitalValue {
    Finite(u64),
    Infinity,
}

/// Digit sum of a [`DigitalValue`]. `Infinite` compares above every finite sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DigitSum {
    Finite(u32),
    Infinite,
}

pub use DigitalValue::{Finite, Infinity};

#[allow(clippy::should_implement_trait)]
impl DigitalValue {
    pub const ZERO: DigitalValue = Finite(0);
    pub const ONE: DigitalValue = Infinity;

    pub fn digit_sum(self) -> DigitSum {
        match self {
            Finite(mut v) => {
                let mut s = 0u32;
                while v > 0 {
                    s += (v % 10) as u32;
                    v /= 10;
                }
                DigitSum::Finite(s)
            }
            Infinity => DigitSum::Infinite,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Infinity)
    }

    /// Total order `≤_W`: digit sum first, numeric value on ties.
    pub fn cmp_w(self, other: DigitalValue) -> Ordering {
        match self.digit_sum().cmp(&other.digit_sum()) {
            Ordering::Equal => match (self, other) {
                (Finite(a), Finite(b)) => a.cmp(&b),
                // equal digit sums and one side infinite means both are
                _ => Ordering::Equal,
            },
            ord => ord,
        }
    }

    /// `a ⊕ b`.
    pub fn add(self, other: DigitalValue) -> DigitalValue {
        if self.cmp_w(other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// `a ⊗ b`.
    pub fn mul(self, other: DigitalValue) -> DigitalValue {
        if self.cmp_w(other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    /// `a ≤_W b`, i.e. `a ⊕ b = b`.
    pub fn leq_w(self, other: DigitalValue) -> bool {
        self.cmp_w(other) != Ordering::Greater
    }
}

impl From<u64> for DigitalValue {
    fn from(v: u64) -> Self {
        Finite(v)
    }
}

impl Semiring for DigitalValue {
    fn zero() -> Self {
        DigitalValue::ZERO
    }

    fn one() -> Self {
        DigitalValue::ONE
    }

    fn add(&self, rhs: &Self) -> Self {
        DigitalValue::add(*self, *rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        DigitalValue::mul(*self, *rhs)
    }
}

impl IdempotentSemiring for DigitalValue {
    fn leq(&self, rhs: &Self) -> bool {
        self.leq_w(*rhs)
    }
}

impl Residuated for DigitalValue {
    /// Greatest `x` with `x ⊗ h ⊕ y = y`: unconstrained (`∞`) when `h ≤_W y`,
    /// otherwise `x ⊗ h = x` is forced and the bound is `y` itself.
    fn max_component(h: &Self, y: &Self) -> Self {
        if h.leq_w(*y) {
            Infinity
        } else {
            *y
        }
    }

    fn meet(&self, rhs: &Self) -> Self {
        DigitalValue::mul(*self, *rhs)
    }
}

impl fmt::Display for DigitalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{v}"),
            Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for DigitalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Infinity);
        }
        s.parse::<u64>()
            .map(Finite)
            .map_err(|e| Error::Parse(format!("digital value {s:?}: {e}")))
    }
}

impl Serialize for DigitalValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(v) => serializer.serialize_u64(*v),
            Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for DigitalValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct DigitalVisitor;

        impl Visitor<'_> for DigitalVisitor {
            type Value = DigitalValue;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<DigitalValue, E> {
                Ok(Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<DigitalValue, E> {
                u64::try_from(v)
                    .map(Finite)
                    .map_err(|_| E::custom(format!("negative digital value {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<DigitalValue, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(DigitalVisitor)
    }
}
