// SPDX-License-Identifier: Apache-2.0

use alloc::string::ToString;
use core::str::FromStr;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};

use super::{is_qr, mod_exp, ZqElement};
use crate::error::{Error, Result};

/// Classical discrete-log engines over `QR_p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DlogEngine {
    /// Walks `base^1, base^2, ...` until it hits the target: `O(q)`.
    Brute,
    /// Baby-step giant-step: `O(sqrt q)` time and memory.
    #[default]
    Bsgs,
}

impl DlogEngine {
    pub fn name(self) -> &'static str {
        match self {
            DlogEngine::Brute => "brute",
            DlogEngine::Bsgs => "bsgs",
        }
    }
}

impl FromStr for DlogEngine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(DlogEngine::Brute),
            "bsgs" => Ok(DlogEngine::Bsgs),
            other => Err(Error::Parse(alloc::format!("unknown dlog engine {other:?}"))),
        }
    }
}

fn check_inputs(p: &BigUint, base: &BigUint, y: &BigUint) -> Result<BigUint> {
    if base.is_one() {
        return Err(Error::DegenerateBase);
    }
    if !is_qr(p, base)? {
        return Err(Error::NotQuadraticResidue(base.to_string()));
    }
    if !is_qr(p, y)? {
        return Err(Error::NotQuadraticResidue(y.to_string()));
    }
    let q: BigUint = (p - 1u32) >> 1;
    if q.bits() > 64 {
        return Err(Error::DlogTooLarge {
            max: 65,
            actual: p.bits() as u32,
        });
    }
    Ok(q)
}

/// Exponent `e` in `{1, ..., q}` with `base^e == y (mod p)`; the residue 0
/// is reported as `q`.
pub fn discrete_log(p: &BigUint, base: &BigUint, y: &BigUint, engine: DlogEngine) -> Result<ZqElement> {
    match engine {
        DlogEngine::Brute => {
            let q = check_inputs(p, base, y)?;
            let mut acc = base.clone();
            let mut e = BigUint::one();
            while e <= q {
                if &acc == y {
                    return Ok(ZqElement(e));
                }
                acc = acc * base % p;
                e += 1u32;
            }
            Err(Error::DlogNotFound)
        }
        DlogEngine::Bsgs => BsgsTable::new(p, base)?.solve(y),
    }
}

/// Precomputed baby steps for one `(p, base)` pair, reusable across targets.
#[derive(Clone, Debug)]
pub struct BsgsTable {
    p: BigUint,
    q: u64,
    m: u64,
    baby: HashMap<BigUint, u64>,
    giant: BigUint,
}

impl BsgsTable {
    pub fn new(p: &BigUint, base: &BigUint) -> Result<Self> {
        let q = check_inputs(p, base, base)?
            .to_u64()
            .ok_or(Error::DlogTooLarge { max: 65, actual: p.bits() as u32 })?;
        let mut m = q.sqrt();
        if m * m < q {
            m += 1;
        }
        let mut baby = HashMap::with_capacity(m as usize);
        let mut acc = BigUint::one();
        for j in 0..m {
            baby.entry(acc.clone()).or_insert(j);
            acc = acc * base % p;
        }
        // base^(-m) = base^(q - m mod q) since base has order q
        let giant = mod_exp(p, base, &BigUint::from((q - m % q) % q));
        Ok(Self {
            p: p.clone(),
            q,
            m,
            baby,
            giant,
        })
    }

    pub fn solve(&self, y: &BigUint) -> Result<ZqElement> {
        if !is_qr(&self.p, y)? {
            return Err(Error::NotQuadraticResidue(y.to_string()));
        }
        let mut gamma = y.clone();
        for i in 0..self.m {
            if let Some(&j) = self.baby.get(&gamma) {
                let e = (u128::from(i) * u128::from(self.m) + u128::from(j)) % u128::from(self.q);
                let e = if e == 0 { self.q } else { e as u64 };
                return Ok(ZqElement(BigUint::from(e)));
            }
            gamma = gamma * &self.giant % &self.p;
        }
        Err(Error::DlogNotFound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{generate_instance, is_safe_prime};
    use crate::seed::task_rng;
    use rand::Rng;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn examples_both_engines() {
        for engine in [DlogEngine::Brute, DlogEngine::Bsgs] {
            assert_eq!(discrete_log(&big(7), &big(2), &big(4), engine).unwrap().value(), &big(2));
            assert_eq!(discrete_log(&big(7), &big(2), &big(1), engine).unwrap().value(), &big(3));
            assert_eq!(discrete_log(&big(7), &big(4), &big(2), engine).unwrap().value(), &big(2));
        }
    }

    #[test]
    fn error_paths() {
        for engine in [DlogEngine::Brute, DlogEngine::Bsgs] {
            assert_eq!(discrete_log(&big(7), &big(1), &big(2), engine), Err(Error::DegenerateBase));
            assert!(matches!(
                discrete_log(&big(7), &big(2), &big(3), engine),
                Err(Error::NotQuadraticResidue(_))
            ));
            assert!(matches!(
                discrete_log(&big(7), &big(3), &big(2), engine),
                Err(Error::NotQuadraticResidue(_))
            ));
        }
    }

    #[test]
    fn engines_agree_exhaustively_on_small_groups() {
        for p in (5u64..600).filter(|&p| is_safe_prime(&big(p))) {
            let q = (p - 1) / 2;
            let g = 4 % p;
            let table = BsgsTable::new(&big(p), &big(g)).unwrap();
            for e in 1..=q {
                let y = mod_exp(&big(p), &big(g), &big(e));
                let brute = discrete_log(&big(p), &big(g), &y, DlogEngine::Brute).unwrap();
                assert_eq!(brute.value(), &big(e));
                assert_eq!(table.solve(&y).unwrap(), brute);
            }
        }
    }

    #[test]
    fn recovers_canonical_exponents_up_to_32_bits() {
        for n in 3..=32u32 {
            let mut rng = task_rng(11, "dlog", u64::from(n));
            let inst = generate_instance(n, &mut rng).unwrap();
            let q = inst.q().to_u64().unwrap();
            let table = BsgsTable::new(inst.p(), inst.g()).unwrap();
            for _ in 0..8 {
                let e = rng.gen_range(0..=q + 3);
                let y = mod_exp(inst.p(), inst.g(), &big(e));
                let expected = ZqElement::from_exponent(&big(e), inst.q());
                assert_eq!(table.solve(&y).unwrap(), expected);
                if n <= 20 {
                    assert_eq!(discrete_log(inst.p(), inst.g(), &y, DlogEngine::Brute).unwrap(), expected);
                }
            }
        }
    }

}
