// SPDX-License-Identifier: Apache-2.0

//! Classical oracles over keyed or random functions.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::RngCore;

use super::{prf_eval, PrfKey};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::numtheory::{GroupInstance, ZqElement};

/// A function `{0,1}^n -> {1, ..., q}` that an oracle can serve.
pub trait KeyedFunction {
    fn input_bits(&self) -> usize;

    fn evaluate(&mut self, x: &BitString) -> Result<ZqElement>;
}

impl<F: KeyedFunction + ?Sized> KeyedFunction for Box<F> {
    fn input_bits(&self) -> usize {
        (**self).input_bits()
    }

    fn evaluate(&mut self, x: &BitString) -> Result<ZqElement> {
        (**self).evaluate(x)
    }
}

impl<F: KeyedFunction + ?Sized> KeyedFunction for &mut F {
    fn input_bits(&self) -> usize {
        (**self).input_bits()
    }

    fn evaluate(&mut self, x: &BitString) -> Result<ZqElement> {
        (**self).evaluate(x)
    }
}

/// `F_P(k, .)` for a fixed instance and key.
#[derive(Clone, Debug)]
pub struct PrfFunction {
    inst: GroupInstance,
    key: PrfKey,
}

impl PrfFunction {
    pub fn new(inst: GroupInstance, key: PrfKey) -> Self {
        Self { inst, key }
    }

    pub fn instance(&self) -> &GroupInstance {
        &self.inst
    }

    pub fn key(&self) -> &PrfKey {
        &self.key
    }
}

impl KeyedFunction for PrfFunction {
    fn input_bits(&self) -> usize {
        self.inst.bits()
    }

    fn evaluate(&mut self, x: &BitString) -> Result<ZqElement> {
        prf_eval(&self.inst, &self.key, x)
    }
}

/// A uniformly random function `{0,1}^n -> {1, ..., q}`, sampled lazily:
/// each fresh input gets an independent uniform value which is then
/// remembered.
#[derive(Clone, Debug)]
pub struct LazyRandomFunction<R> {
    n: usize,
    q: BigUint,
    table: BTreeMap<BitString, ZqElement>,
    rng: R,
}

impl<R: RngCore> LazyRandomFunction<R> {
    pub fn new(n: usize, q: BigUint, rng: R) -> Self {
        Self {
            n,
            q,
            table: BTreeMap::new(),
            rng,
        }
    }

    pub fn for_instance(inst: &GroupInstance, rng: R) -> Self {
        Self::new(inst.bits(), inst.q().clone(), rng)
    }

    pub fn distinct_inputs(&self) -> usize {
        self.table.len()
    }
}

impl<R: RngCore> KeyedFunction for LazyRandomFunction<R> {
    fn input_bits(&self) -> usize {
        self.n
    }

    fn evaluate(&mut self, x: &BitString) -> Result<ZqElement> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        if let Some(v) = self.table.get(x) {
            return Ok(v.clone());
        }
        let v = ZqElement(self.rng.gen_biguint_range(&BigUint::one(), &(&self.q + 1u32)));
        self.table.insert(x.clone(), v.clone());
        Ok(v)
    }
}

/// Shared bookkeeping: query count, optional hard budget, transcript.
#[derive(Clone, Debug, Default)]
struct Ledger {
    queries: u64,
    budget: Option<u64>,
    transcript: Vec<(BitString, ZqElement)>,
}

impl Ledger {
    fn charge(&mut self) -> Result<()> {
        if let Some(b) = self.budget {
            if self.queries >= b {
                return Err(Error::QueryBudgetExceeded(b));
            }
        }
        self.queries += 1;
        Ok(())
    }
}

/// Membership-query oracle: `query(x) = f(x)`.
#[derive(Clone, Debug)]
pub struct MqOracle<F> {
    f: F,
    ledger: Ledger,
}

impl<F: KeyedFunction> MqOracle<F> {
    pub fn new(f: F) -> Self {
        Self {
            f,
            ledger: Ledger::default(),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.ledger.budget = Some(budget);
        self
    }

    pub fn input_bits(&self) -> usize {
        self.f.input_bits()
    }

    pub fn query(&mut self, x: &BitString) -> Result<ZqElement> {
        if x.len() != self.f.input_bits() {
            return Err(Error::LengthMismatch {
                expected: self.f.input_bits(),
                actual: x.len(),
            });
        }
        self.ledger.charge()?;
        let y = self.f.evaluate(x)?;
        self.ledger.transcript.push((x.clone(), y.clone()));
        Ok(y)
    }

    pub fn query_count(&self) -> u64 {
        self.ledger.queries
    }

    pub fn transcript(&self) -> &[(BitString, ZqElement)] {
        &self.ledger.transcript
    }

    pub fn was_queried(&self, x: &BitString) -> bool {
        self.ledger.transcript.iter().any(|(q, _)| q == x)
    }

    pub fn into_inner(self) -> F {
        self.f
    }
}

/// Random-example oracle under the uniform distribution: `sample()` returns
/// `(x, f(x))` with `x` fresh and uniform; `sample_value()` is the RPEX
/// projection returning only `f(x)`.
#[derive(Clone, Debug)]
pub struct PexOracle<F, R> {
    f: F,
    rng: R,
    ledger: Ledger,
}

impl<F: KeyedFunction, R: RngCore> PexOracle<F, R> {
    pub fn new(f: F, rng: R) -> Self {
        Self {
            f,
            rng,
            ledger: Ledger::default(),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.ledger.budget = Some(budget);
        self
    }

    pub fn input_bits(&self) -> usize {
        self.f.input_bits()
    }

    pub fn sample(&mut self) -> Result<(BitString, ZqElement)> {
        self.ledger.charge()?;
        let x = BitString::random(self.f.input_bits(), &mut self.rng);
        let y = self.f.evaluate(&x)?;
        self.ledger.transcript.push((x.clone(), y.clone()));
        Ok((x, y))
    }

    pub fn sample_value(&mut self) -> Result<ZqElement> {
        self.sample().map(|(_, y)| y)
    }

    pub fn query_count(&self) -> u64 {
        self.ledger.queries
    }

    pub fn transcript(&self) -> &[(BitString, ZqElement)] {
        &self.ledger.transcript
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::task_rng;

    fn toy_prf(b: u32) -> PrfFunction {
        let inst = GroupInstance::from_public(7u32.into(), 2u32.into(), 4u32.into()).unwrap();
        let key = PrfKey::new(&inst, b.into()).unwrap();
        PrfFunction::new(inst, key)
    }

    #[test]
    fn mq_matches_prf_and_counts() {
        let mut mq = MqOracle::new(toy_prf(1));
        assert_eq!(mq.query(&"111".parse().unwrap()).unwrap().value(), &BigUint::from(3u32));
        assert_eq!(mq.query(&"000".parse().unwrap()).unwrap().value(), &BigUint::from(1u32));
        assert_eq!(mq.query_count(), 2);
        assert!(mq.query(&"00".parse().unwrap()).is_err());
        assert_eq!(mq.query_count(), 2);
        assert!(mq.was_queried(&"111".parse().unwrap()));
        assert!(!mq.was_queried(&"110".parse().unwrap()));
    }

    #[test]
    fn mq_budget_is_enforced() {
        let mut mq = MqOracle::new(toy_prf(1)).with_budget(2);
        let x: BitString = "010".parse().unwrap();
        mq.query(&x).unwrap();
        mq.query(&x).unwrap();
        assert_eq!(mq.query(&x), Err(Error::QueryBudgetExceeded(2)));
    }

    #[test]
    fn lazy_random_function_memoizes() {
        let f = LazyRandomFunction::new(6, BigUint::from(1000u32), task_rng(1, "lazy", 0));
        let mut mq = MqOracle::new(f);
        let x: BitString = "010011".parse().unwrap();
        let a = mq.query(&x).unwrap();
        assert_eq!(mq.query(&x).unwrap(), a);
        assert!(a.value() >= &BigUint::one() && a.value() <= &BigUint::from(1000u32));
        for k in 0..64u64 {
            mq.query(&BitString::from_u64(k, 6).unwrap()).unwrap();
        }
        assert_eq!(mq.query_count(), 66);
        assert_eq!(mq.into_inner().distinct_inputs(), 64);
    }

    #[test]
    fn lazy_random_values_cover_the_codomain() {
        let mut f = LazyRandomFunction::new(10, BigUint::from(3u32), task_rng(2, "lazy", 0));
        let mut counts = [0u32; 4];
        for k in 0..1024u64 {
            let v = f.evaluate(&BitString::from_u64(k, 10).unwrap()).unwrap();
            counts[usize::try_from(v.value().iter_u64_digits().next().unwrap()).unwrap()] += 1;
        }
        assert_eq!(counts[0], 0);
        for c in &counts[1..] {
            // mean 341.3, sd 15.1
            assert!((c.abs_diff(341)) < 70, "{counts:?}");
        }
    }

    #[test]
    fn pex_draws_are_uniform_and_consistent() {
        let mut pex = PexOracle::new(toy_prf(2), task_rng(3, "pex", 0));
        let draws = 10_000u32;
        let mut freq = [0u32; 8];
        for _ in 0..draws {
            let (x, y) = pex.sample().unwrap();
            let mut f = toy_prf(2);
            assert_eq!(f.evaluate(&x).unwrap(), y);
            freq[x.to_u64().unwrap() as usize] += 1;
        }
        // 4 sigma of Binomial(10^4, 1/8)
        let mean = f64::from(draws) / 8.0;
        let sigma = libm::sqrt(f64::from(draws) * (1.0 / 8.0) * (7.0 / 8.0));
        for c in freq {
            assert!(libm::fabs(f64::from(c) - mean) <= 4.0 * sigma, "{freq:?}");
        }
        assert_eq!(pex.query_count(), u64::from(draws));
        let v = pex.sample_value().unwrap();
        assert_eq!(&pex.transcript().last().unwrap().1, &v);
    }
}
