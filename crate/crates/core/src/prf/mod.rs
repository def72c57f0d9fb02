// SPDX-License-Identifier: Apache-2.0

//! The DDH length-doubling generator and the GGM keyed function built on it.
//!
//! `prg_eval(b) = (f_p(g^b), f_p(g_a^b))` maps `{1, ..., q}` to a pair in the
//! same set, so it can be iterated: the keyed function walks a binary tree
//! from the root key, taking the left half of the pair on a 0 bit and the
//! right half on a 1 bit, leftmost input bit first.

mod oracle;

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::RngCore;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::numtheory::{f_p_unchecked, mod_exp, GroupInstance, InstanceId, ZqElement};

pub use oracle::{KeyedFunction, LazyRandomFunction, MqOracle, PexOracle, PrfFunction};

/// A key `b` in `{1, ..., q}`, bound to the instance it was drawn for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrfKey {
    b: ZqElement,
    instance: InstanceId,
}

impl PrfKey {
    pub fn new(inst: &GroupInstance, b: BigUint) -> Result<Self> {
        Ok(Self {
            b: ZqElement::new(b, inst.q())?,
            instance: inst.id(),
        })
    }

    /// Uniform key in `{1, ..., q}`.
    pub fn random<R: RngCore + ?Sized>(inst: &GroupInstance, rng: &mut R) -> Self {
        let b = rng.gen_biguint_range(&BigUint::one(), &(inst.q() + 1u32));
        Self {
            b: ZqElement(b),
            instance: inst.id(),
        }
    }

    pub fn value(&self) -> &BigUint {
        self.b.value()
    }

    pub fn element(&self) -> &ZqElement {
        &self.b
    }

    pub fn instance(&self) -> InstanceId {
        self.instance
    }
}

fn step(inst: &GroupInstance, b: &BigUint, bit: bool) -> BigUint {
    let base = if bit { inst.g_a() } else { inst.g() };
    // base is a residue, so base^b is one as well
    f_p_unchecked(inst.p(), &mod_exp(inst.p(), base, b)).into_value()
}

/// The pair `(f_p(g^b mod p), f_p(g_a^b mod p))`.
pub fn prg_eval(inst: &GroupInstance, b: &ZqElement) -> (ZqElement, ZqElement) {
    (
        ZqElement(step(inst, b.value(), false)),
        ZqElement(step(inst, b.value(), true)),
    )
}

/// Walks the tree from an arbitrary node value `b` along `path`.
pub fn prf_walk(inst: &GroupInstance, b: &ZqElement, path: &[bool]) -> ZqElement {
    let mut node = b.value().clone();
    for &bit in path {
        node = step(inst, &node, bit);
    }
    ZqElement(node)
}

/// `F_P(k, x)`: the GGM keyed function on `n`-bit inputs.
pub fn prf_eval(inst: &GroupInstance, key: &PrfKey, x: &BitString) -> Result<ZqElement> {
    if key.instance != inst.id() {
        return Err(Error::KeyInstanceMismatch);
    }
    if x.len() != inst.bits() {
        return Err(Error::LengthMismatch {
            expected: inst.bits(),
            actual: x.len(),
        });
    }
    Ok(prf_walk(inst, &key.b, x.as_slice()))
}
