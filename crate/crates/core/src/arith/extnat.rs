use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value in N ∪ {∞}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(u64),
    Infinite,
}

pub use ExtendedNat::{Finite, Infinite};

impl ExtendedNat {
    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(n) => Some(n),
            Infinite => None,
        }
    }

    /// `self - k` saturating at zero; ∞ stays ∞.
    pub fn saturating_sub(self, k: u64) -> ExtendedNat {
        match self {
            Finite(n) => Finite(n.saturating_sub(k)),
            Infinite => Infinite,
        }
    }
}

impl From<u64> for ExtendedNat {
    fn from(n: u64) -> Self {
        Finite(n)
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl Add for ExtendedNat {
    type Output = ExtendedNat;
    fn add(self, rhs: ExtendedNat) -> ExtendedNat {
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinite,
        }
    }
}

impl Add<u64> for ExtendedNat {
    type Output = ExtendedNat;
    fn add(self, rhs: u64) -> ExtendedNat {
        self + Finite(rhs)
    }
}

impl std::iter::Sum for ExtendedNat {
    fn sum<I: Iterator<Item = ExtendedNat>>(iter: I) -> ExtendedNat {
        iter.fold(Finite(0), |a, b| a + b)
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(n) => write!(f, "{}", n),
            Infinite => write!(f, "inf"),
        }
    }
}

/// ∞ travels as the JSON string `"inf"`, finite values as plain numbers.
impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(n) => s.serialize_u64(*n),
            Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExtendedNat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a non-negative integer or the string \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtendedNat, E> {
                Ok(Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtendedNat, E> {
                u64::try_from(v).map(Finite).map_err(|_| E::custom("negative value"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtendedNat, E> {
                if v == "inf" {
                    Ok(Infinite)
                } else {
                    Err(E::custom(format!("unexpected string {v:?}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_absorbing_addition() {
        assert!(Finite(1_000_000) < Infinite);
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(2) + Infinite, Infinite);
        let s: ExtendedNat = [Finite(1), Finite(2)].into_iter().sum();
        assert_eq!(s, Finite(3));
    }

    #[test]
    fn json_encoding() {
        assert_eq!(serde_json::to_string(&Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Finite(8)).unwrap(), "8");
        let back: ExtendedNat = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(back, Infinite);
    }
}
