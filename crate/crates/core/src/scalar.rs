//! Coefficient rings for chains.
//!
//! Every algebraic object in this crate is generic over an exact integer type.
//! Arithmetic goes through the checked helpers below so that a fixed-width
//! type reports overflow instead of wrapping; `BigInt` never overflows.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{AdcError, Result};

/// An exact integer coefficient type.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
{
    fn from_small(v: i64) -> Self {
        Self::from_i64(v).expect("small integer fits every coefficient type")
    }
}

impl Coefficient for i32 {}
impl Coefficient for i64 {}
impl Coefficient for i128 {}
impl Coefficient for BigInt {}

pub(crate) fn add<C: Coefficient>(a: &C, b: &C) -> Result<C> {
    a.checked_add(b).ok_or(AdcError::Overflow("addition"))
}

pub(crate) fn mul<C: Coefficient>(a: &C, b: &C) -> Result<C> {
    a.checked_mul(b).ok_or(AdcError::Overflow("multiplication"))
}

pub(crate) fn neg<C: Coefficient>(a: &C) -> Result<C> {
    C::zero().checked_sub(a).ok_or(AdcError::Overflow("negation"))
}

/// `(-1)^k` as a coefficient.
pub(crate) fn sign<C: Coefficient>(k: i64) -> C {
    if k.rem_euclid(2) == 0 {
        C::one()
    } else {
        -C::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_is_reported() {
        assert_eq!(add(&i32::MAX, &1), Err(AdcError::Overflow("addition")));
        assert_eq!(mul(&i64::MIN, &-1), Err(AdcError::Overflow("multiplication")));
        assert_eq!(neg(&i32::MIN), Err(AdcError::Overflow("negation")));
        let big = BigInt::from(i64::MAX);
        assert_eq!(add(&big, &big).unwrap(), BigInt::from(i64::MAX) * 2);
    }

    #[test]
    fn signs() {
        assert_eq!(sign::<i64>(0), 1);
        assert_eq!(sign::<i64>(3), -1);
        assert_eq!(sign::<i64>(-1), -1);
    }
}
