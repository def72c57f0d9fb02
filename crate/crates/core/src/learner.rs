// SPDX-License-Identifier: Apache-2.0

//! Tree-reversal key recovery and the one-sample generator learner.
//!
//! Each level of the keyed function maps a node `b` to `f_p(base^b)` with
//! `base = g` on a 0 bit and `base = g_a` on a 1 bit. Both maps are
//! bijections on `{1, ..., q}`, so a single leaf together with its path
//! determines the root: undo `f_p` with `f_p^{-1}` and the exponentiation
//! with a discrete log, from the last bit back to the first.
//!
//! The discrete logs are computed classically, which keeps the learner exact
//! but limits it to groups where `sqrt(q)` work is affordable.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::bits::BitString;
use crate::dist::{decode_params, GeneratorSpec, SampleOracle};
use crate::error::{Error, Result};
use crate::numtheory::{discrete_log, f_p_inv, BsgsTable, DlogEngine, GroupInstance, ZqElement};
use crate::prf::PrfKey;

/// Default largest modulus size, in bits, the learner will attack.
pub const DEFAULT_MAX_BITS: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyLearner {
    engine: DlogEngine,
    max_bits: u32,
}

impl Default for KeyLearner {
    fn default() -> Self {
        Self {
            engine: DlogEngine::Bsgs,
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

/// A recovered `(P, k)` with an exact generator for `D_(P,k)`.
#[derive(Clone, Debug)]
pub struct LearnedGenerator {
    pub inst: GroupInstance,
    pub key: PrfKey,
    pub spec: GeneratorSpec,
}

/// Result of [`KeyLearner::pac_generator_learn`].
#[derive(Clone, Debug)]
pub struct PacOutcome {
    pub generator: LearnedGenerator,
    /// SAMPLE queries consumed; always 1.
    pub sample_complexity: u64,
}

enum Inverter {
    Brute,
    Bsgs {
        g: Option<BsgsTable>,
        g_a: Option<BsgsTable>,
    },
}

impl KeyLearner {
    pub fn new(engine: DlogEngine) -> Self {
        Self {
            engine,
            ..Self::default()
        }
    }

    pub fn with_max_bits(mut self, max_bits: u32) -> Self {
        self.max_bits = max_bits;
        self
    }

    pub fn engine(&self) -> DlogEngine {
        self.engine
    }

    /// Recovers `b` from `x` and `F_P(b, x)`.
    pub fn learn_key(&self, inst: &GroupInstance, x: &BitString, fx: &ZqElement) -> Result<PrfKey> {
        if inst.n() > self.max_bits {
            return Err(Error::DlogTooLarge {
                max: self.max_bits,
                actual: inst.n(),
            });
        }
        if x.len() != inst.bits() {
            return Err(Error::LengthMismatch {
                expected: inst.bits(),
                actual: x.len(),
            });
        }
        if fx.value().is_zero() || fx.value() > inst.q() {
            return Err(Error::OutOfRange(alloc::format!("F(k, x) = {fx} not in {{1, ..., q}}")));
        }

        let mut inverter = match self.engine {
            DlogEngine::Brute => Inverter::Brute,
            DlogEngine::Bsgs => Inverter::Bsgs { g: None, g_a: None },
        };
        let mut node: BigUint = fx.value().clone();
        for bit in x.iter().collect::<alloc::vec::Vec<_>>().into_iter().rev() {
            let y = f_p_inv(inst.p(), &node)?;
            let base = if bit { inst.g_a() } else { inst.g() };
            let prev = match &mut inverter {
                Inverter::Brute => discrete_log(inst.p(), base, &y, DlogEngine::Brute)?,
                Inverter::Bsgs { g, g_a } => {
                    let slot = if bit { g_a } else { g };
                    if slot.is_none() {
                        *slot = Some(BsgsTable::new(inst.p(), base)?);
                    }
                    slot.as_ref().expect("filled above").solve(&y)?
                }
            };
            node = prev.into_value();
        }
        PrfKey::new(inst, node)
    }

    /// Parses a `5n`-bit GEN sample `x || BIN_n(F) || BIN_3n(P)` and recovers
    /// the key.
    pub fn learn_from_sample(&self, sample: &BitString) -> Result<LearnedGenerator> {
        let len = sample.len();
        if len == 0 || len % 5 != 0 {
            return Err(Error::MalformedSample(alloc::format!(
                "length {len} is not a positive multiple of 5"
            )));
        }
        let n = len / 5;
        let x = sample.slice(0..n);
        let inst = decode_params(&sample.slice(2 * n..len))?;
        let fx = ZqElement::new(sample.slice(n..2 * n).to_biguint(), inst.q())
            .map_err(|_| Error::MalformedSample("keyed-function field out of range".into()))?;
        let key = self.learn_key(&inst, &x, &fx)?;
        let spec = GeneratorSpec::gen(&inst, &key)?;
        Ok(LearnedGenerator { inst, key, spec })
    }

    /// Learns `D_(P,k)` from one SAMPLE query. `epsilon` and `delta` are
    /// accepted for interface parity only: the output is always exact.
    pub fn pac_generator_learn<R: rand::RngCore>(
        &self,
        oracle: &mut SampleOracle<R>,
        _epsilon: f64,
        _delta: f64,
    ) -> Result<PacOutcome> {
        let before = oracle.draws();
        let sample = oracle.sample();
        let generator = self.learn_from_sample(&sample)?;
        Ok(PacOutcome {
            generator,
            sample_complexity: oracle.draws() - before,
        })
    }
}

/// [`KeyLearner::learn_key`] with the default BSGS learner.
pub fn learn_key(inst: &GroupInstance, x: &BitString, fx: &ZqElement) -> Result<PrfKey> {
    KeyLearner::default().learn_key(inst, x, fx)
}

/// [`KeyLearner::learn_from_sample`] with the default BSGS learner.
pub fn learn_from_sample(sample: &BitString) -> Result<LearnedGenerator> {
    KeyLearner::default().learn_from_sample(sample)
}
