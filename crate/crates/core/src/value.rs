//! Exact arithmetic and ordering in the value group, normalized so v(p) = 1.
//!
//! Values are exact rationals or +infinity (the value of 0). Infinity absorbs
//! addition and dominates every finite value in the ordering.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of the value group, or +infinity for the value of zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(BigRational),
    Infinity,
}

impl Value {
    pub fn zero() -> Self {
        Value::Finite(BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Value::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Finite(q) if q.is_zero())
    }

    /// Finite part; panics on infinity (callers check `is_finite` first).
    pub fn finite(&self) -> &BigRational {
        match self {
            Value::Finite(q) => q,
            Value::Infinity => panic!("finite() on infinite value"),
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinity,
        }
    }

    pub fn sub(&self, other: &Value) -> Result<Value> {
        Ok(self.add(&other.negate()?))
    }

    pub fn negate(&self) -> Result<Value> {
        match self {
            Value::Finite(q) => Ok(Value::Finite(-q)),
            Value::Infinity => Err(Error::InfiniteNegate),
        }
    }

    pub fn min_with(&self, other: &Value) -> Value {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn scalar_mul(&self, q: &BigRational) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a * q),
            Value::Infinity => Value::Infinity,
        }
    }

    pub fn scalar_mul_int(&self, n: i64) -> Value {
        self.scalar_mul(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn div_int(&self, n: i64) -> Value {
        self.scalar_mul(&BigRational::new(BigInt::one(), BigInt::from(n)))
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
            (Value::Finite(_), Value::Infinity) => Ordering::Less,
            (Value::Infinity, Value::Finite(_)) => Ordering::Greater,
            (Value::Infinity, Value::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(q) => write!(f, "{}", q),
            Value::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The value group as an explicit lattice (1/D)Z, where D = (p-1)*p^n for the
/// backend with tower level n. Dense groups only appear through increasing
/// tower levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValueGroup {
    pub denominator_lattice: u64,
    pub tower_level: u32,
}

impl ValueGroup {
    pub fn for_backend(p: u32, tower_level: u32) -> Self {
        let d = (p as u64 - 1) * (p as u64).pow(tower_level);
        ValueGroup {
            denominator_lattice: d,
            tower_level,
        }
    }

    /// gamma * D, when gamma lies in the lattice.
    pub fn lattice_index(&self, gamma: &Value) -> Option<BigInt> {
        match gamma {
            Value::Finite(q) => {
                let scaled = q * BigRational::from_integer(BigInt::from(self.denominator_lattice));
                scaled.is_integer().then(|| scaled.to_integer())
            }
            Value::Infinity => None,
        }
    }

    pub fn contains(&self, gamma: &Value) -> bool {
        self.lattice_index(gamma).is_some()
    }

    /// Smallest lattice element >= x (x finite).
    pub fn ceil(&self, x: &Value) -> Value {
        let q = x.finite();
        let d = BigInt::from(self.denominator_lattice);
        let scaled = q * BigRational::from_integer(d.clone());
        let n = scaled.ceil().to_integer();
        Value::Finite(BigRational::new(n, d))
    }
}

/// Decides membership t in p*Gamma, i.e. t = p*gamma for some gamma in the
/// lattice. Errors when t is not in Gamma at all.
pub fn in_p_multiple(t: &Value, group: &ValueGroup, p: u32) -> Result<bool> {
    let idx = group
        .lattice_index(t)
        .ok_or_else(|| Error::MalformedValue(t.to_string()))?;
    Ok((idx % BigInt::from(p)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_min() {
        let a = Value::from_ratio(1, 2);
        let b = Value::from_ratio(1, 3);
        assert_eq!(a.add(&b), Value::from_ratio(5, 6));
        assert_eq!(Value::Infinity.min_with(&Value::from_ratio(3, 2)), Value::from_ratio(3, 2));
        assert_eq!(Value::Infinity.add(&a), Value::Infinity);
    }

    #[test]
    fn compare_is_reflexive_and_total() {
        let a = Value::from_ratio(1, 2);
        assert_eq!(a.cmp(&a), Ordering::Equal);
        assert!(Value::Infinity > a);
        assert!(a < Value::from_ratio(2, 3));
    }

    #[test]
    fn negate_infinity_is_error() {
        assert!(Value::Infinity.negate().is_err());
        assert_eq!(Value::from_ratio(1, 2).negate().unwrap(), Value::from_ratio(-1, 2));
    }

    #[test]
    fn lattice_membership() {
        // t=1/2 in (1/2)Z, p=3: 1/6 not in the lattice
        let g2 = ValueGroup { denominator_lattice: 2, tower_level: 0 };
        assert!(!in_p_multiple(&Value::from_ratio(1, 2), &g2, 3).unwrap());
        // t=1/2 in (1/6)Z, p=3: gamma = 1/6
        let g6 = ValueGroup { denominator_lattice: 6, tower_level: 0 };
        assert!(in_p_multiple(&Value::from_ratio(1, 2), &g6, 3).unwrap());
        // t=3/2 in (1/2)Z, p=3: gamma = 1/2
        assert!(in_p_multiple(&Value::from_ratio(3, 2), &g2, 3).unwrap());
        // t not in Gamma at all
        assert!(in_p_multiple(&Value::from_ratio(1, 5), &g2, 3).is_err());
    }

    #[test]
    fn backend_lattice_denominator() {
        assert_eq!(ValueGroup::for_backend(3, 0).denominator_lattice, 2);
        assert_eq!(ValueGroup::for_backend(3, 1).denominator_lattice, 6);
        assert_eq!(ValueGroup::for_backend(2, 0).denominator_lattice, 1);
        assert_eq!(ValueGroup::for_backend(5, 1).denominator_lattice, 20);
    }

    #[test]
    fn ceil_to_lattice() {
        let g = ValueGroup { denominator_lattice: 2, tower_level: 0 };
        assert_eq!(g.ceil(&Value::from_ratio(1, 3)), Value::from_ratio(1, 2));
        assert_eq!(g.ceil(&Value::from_ratio(-1, 3)), Value::zero());
        assert_eq!(g.ceil(&Value::from_ratio(1, 2)), Value::from_ratio(1, 2));
    }

    #[test]
    fn serializes_as_exact_string() {
        assert_eq!(serde_json::to_string(&Value::from_ratio(3, 2)).unwrap(), "\"3/2\"");
        assert_eq!(serde_json::to_string(&Value::Infinity).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Value::from_ratio(2, 1)).unwrap(), "\"2\"");
    }
}
