// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in the group of quadratic residues modulo a safe prime.
//!
//! For a safe prime `p = 2q + 1` the residues `QR_p` form a cyclic group of
//! prime order `q`, so every element other than 1 generates it. Exponents
//! and keyed-function values live in the canonical set `{1, ..., q}`, where
//! `q` plays the role of exponent 0.

mod dlog;
mod group;
mod prime;

use alloc::string::ToString;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use dlog::{discrete_log, BsgsTable, DlogEngine};
pub use group::{generate_instance, generate_instance_with_budget, GroupInstance, InstanceId};
pub use prime::{is_prime, is_safe_prime, DEFAULT_SEARCH_BUDGET};

/// An element of `Z_q` in the canonical representative set `{1, ..., q}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZqElement(pub(crate) BigUint);

impl ZqElement {
    pub fn new(value: BigUint, q: &BigUint) -> Result<Self> {
        if value.is_zero() || &value > q {
            return Err(Error::OutOfRange(alloc::format!("{value} not in {{1, ..., {q}}}")));
        }
        Ok(Self(value))
    }

    /// Canonical representative of an arbitrary exponent: `e mod q`, with the
    /// residue 0 reported as `q`.
    pub fn from_exponent(e: &BigUint, q: &BigUint) -> Self {
        let r = e % q;
        if r.is_zero() {
            Self(q.clone())
        } else {
            Self(r)
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_value(self) -> BigUint {
        self.0
    }
}

impl fmt::Display for ZqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `base^e mod p` by left-to-right square-and-multiply. Not constant time.
pub fn mod_exp(p: &BigUint, base: &BigUint, e: &BigUint) -> BigUint {
    let mut acc = BigUint::one() % p;
    for i in (0..e.bits()).rev() {
        acc = &acc * &acc % p;
        if e.bit(i) {
            acc = acc * base % p;
        }
    }
    acc
}

fn check_unit(p: &BigUint, x: &BigUint) -> Result<()> {
    if x.is_zero() || x >= p {
        return Err(Error::OutOfRange(alloc::format!("{x} not in {{1, ..., p-1}}")));
    }
    Ok(())
}

/// Euler's criterion: `x^((p-1)/2) == 1 (mod p)`.
pub fn is_qr(p: &BigUint, x: &BigUint) -> Result<bool> {
    check_unit(p, x)?;
    let half = (p - 1u32) >> 1;
    Ok(mod_exp(p, x, &half).is_one())
}

fn half_order(p: &BigUint) -> BigUint {
    (p - 1u32) >> 1
}

/// The bijection `QR_p -> {1, ..., q}`: `x` if `x <= q`, else `p - x`.
pub fn f_p(p: &BigUint, x: &BigUint) -> Result<ZqElement> {
    if !is_qr(p, x)? {
        return Err(Error::NotQuadraticResidue(x.to_string()));
    }
    Ok(f_p_unchecked(p, x))
}

/// [`f_p`] without the membership test, for callers that hold a residue by
/// construction.
pub(crate) fn f_p_unchecked(p: &BigUint, x: &BigUint) -> ZqElement {
    let q = half_order(p);
    if x <= &q {
        ZqElement(x.clone())
    } else {
        ZqElement(p - x)
    }
}

/// Inverse of [`f_p`]: `y` if `y` is a residue, else `p - y`.
pub fn f_p_inv(p: &BigUint, y: &BigUint) -> Result<BigUint> {
    let q = half_order(p);
    if y.is_zero() || y > &q {
        return Err(Error::OutOfRange(alloc::format!("{y} not in {{1, ..., {q}}}")));
    }
    if is_qr(p, y)? {
        Ok(y.clone())
    } else {
        Ok(p - y)
    }
}
