// SPDX-License-Identifier: Apache-2.0

use alloc::string::ToString;

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::RngCore;
use sha2::{Digest, Sha256};

use super::{is_qr, is_safe_prime, mod_exp, prime::DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};

/// Fingerprint binding keys to the instance they were drawn for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InstanceId(pub u64);

/// A DDH instance `(p, q, g, g^a)` over the quadratic residues mod `p`.
///
/// `n` is the bit length of `p`; it is also the input length of the keyed
/// function built on the instance. The exponent `a` is kept only when the
/// instance was generated locally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInstance {
    n: u32,
    p: BigUint,
    q: BigUint,
    g: BigUint,
    g_a: BigUint,
    a_secret: Option<BigUint>,
}

fn check_generator(p: &BigUint, x: &BigUint, what: &str) -> Result<()> {
    if x.is_one() {
        return Err(Error::InvalidInstance(alloc::format!("{what} is the identity")));
    }
    match is_qr(p, x) {
        Ok(true) => Ok(()),
        Ok(false) => Err(Error::InvalidInstance(alloc::format!(
            "{what} = {x} is not a quadratic residue mod {p}"
        ))),
        Err(_) => Err(Error::InvalidInstance(alloc::format!("{what} = {x} out of range"))),
    }
}

impl GroupInstance {
    /// Validates and assembles an instance from its public parameters.
    pub fn from_public(p: BigUint, g: BigUint, g_a: BigUint) -> Result<Self> {
        if !is_safe_prime(&p) {
            return Err(Error::InvalidInstance(alloc::format!("{p} is not a safe prime")));
        }
        // p = 5 is the only safe prime with p = 1 (mod 4); there -1 = 4 is a
        // residue and f_p folds 1 and 4 onto the same value
        if p == BigUint::from(5u32) {
            return Err(Error::InvalidInstance("f_p is not a bijection for p = 5".to_string()));
        }
        check_generator(&p, &g, "g")?;
        check_generator(&p, &g_a, "g_a")?;
        let q = (&p - 1u32) >> 1;
        Ok(Self {
            n: p.bits() as u32,
            p,
            q,
            g,
            g_a,
            a_secret: None,
        })
    }

    /// Attaches the exponent, checking `g^a == g_a` and `1 <= a < q`.
    pub fn with_secret(mut self, a: BigUint) -> Result<Self> {
        if a < BigUint::one() || a >= self.q {
            return Err(Error::InvalidInstance(alloc::format!("exponent {a} not in [1, q)")));
        }
        if mod_exp(&self.p, &self.g, &a) != self.g_a {
            return Err(Error::InvalidInstance("g^a does not match g_a".to_string()));
        }
        self.a_secret = Some(a);
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> usize {
        self.n as usize
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn g(&self) -> &BigUint {
        &self.g
    }

    pub fn g_a(&self) -> &BigUint {
        &self.g_a
    }

    pub fn a_secret(&self) -> Option<&BigUint> {
        self.a_secret.as_ref()
    }

    pub fn id(&self) -> InstanceId {
        let mut h = Sha256::new();
        for v in [&self.p, &self.g, &self.g_a] {
            let bytes = v.to_bytes_be();
            h.update((bytes.len() as u64).to_be_bytes());
            h.update(&bytes);
        }
        let d = h.finalize();
        let mut first = [0u8; 8];
        first.copy_from_slice(&d[..8]);
        InstanceId(u64::from_be_bytes(first))
    }
}

/// [`generate_instance_with_budget`] with [`DEFAULT_SEARCH_BUDGET`].
pub fn generate_instance<R: RngCore + ?Sized>(n: u32, rng: &mut R) -> Result<GroupInstance> {
    generate_instance_with_budget(n, DEFAULT_SEARCH_BUDGET, rng)
}

/// Draws an `n`-bit safe prime `p > 5` by rejection sampling, a generator by squaring
/// a uniform element of `{2, ..., p-2}`, and an exponent `a` uniform in
/// `{1, ..., q-1}`.
pub fn generate_instance_with_budget<R: RngCore + ?Sized>(
    n: u32,
    budget: u64,
    rng: &mut R,
) -> Result<GroupInstance> {
    if n < 3 {
        return Err(Error::BitLengthTooSmall(n));
    }
    let top = BigUint::one() << (n - 1);
    let mut p = None;
    for _ in 0..budget {
        let candidate = rng.gen_biguint(u64::from(n - 1)) | &top | BigUint::one();
        if candidate != BigUint::from(5u32) && is_safe_prime(&candidate) {
            p = Some(candidate);
            break;
        }
    }
    let p = p.ok_or(Error::SearchBudgetExhausted(budget))?;
    let q: BigUint = (&p - 1u32) >> 1;

    let two = BigUint::from(2u32);
    let p_minus_1 = &p - 1u32;
    let g = loop {
        let h = rng.gen_biguint_range(&two, &p_minus_1);
        let g = &h * &h % &p;
        if !g.is_one() {
            break g;
        }
    };
    let a = rng.gen_biguint_range(&BigUint::one(), &q);
    let g_a = mod_exp(&p, &g, &a);
    GroupInstance::from_public(p, g, g_a)?.with_secret(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::task_rng;
    use alloc::collections::BTreeSet;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn three_bit_instances_use_seven() {
        // 5 and 7 are the 3-bit safe primes; 5 is excluded from the family
        for i in 0..64 {
            let inst = generate_instance(3, &mut task_rng(1, "t", i)).unwrap();
            assert_eq!(inst.p(), &big(7));
        }
        assert!(is_safe_prime(&big(5)));
        assert!(GroupInstance::from_public(big(5), big(4), big(4)).is_err());
    }

    #[test]
    fn four_bit_instance_is_eleven() {
        for i in 0..16 {
            let inst = generate_instance(4, &mut task_rng(2, "t", i)).unwrap();
            assert_eq!(inst.p(), &big(11));
            assert_eq!(inst.q(), &big(5));
        }
    }

    #[test]
    fn too_short_bit_lengths_are_rejected() {
        let mut rng = task_rng(0, "t", 0);
        assert_eq!(generate_instance(2, &mut rng), Err(Error::BitLengthTooSmall(2)));
        assert_eq!(generate_instance(0, &mut rng), Err(Error::BitLengthTooSmall(0)));
    }

    #[test]
    fn zero_budget_is_a_resource_error() {
        let mut rng = task_rng(0, "t", 0);
        assert_eq!(
            generate_instance_with_budget(8, 0, &mut rng),
            Err(Error::SearchBudgetExhausted(0))
        );
    }

    #[test]
    fn generated_instances_satisfy_invariants() {
        for n in [3u32, 5, 8, 16, 32, 48, 64, 96] {
            for i in 0..4 {
                let inst = generate_instance(n, &mut task_rng(3, "t", u64::from(n) * 10 + i)).unwrap();
                assert_eq!(inst.n(), n);
                assert_eq!(inst.p().bits(), u64::from(n));
                assert_eq!(inst.p(), &(inst.q() * 2u32 + 1u32));
                assert!(is_safe_prime(inst.p()));
                assert!(is_qr(inst.p(), inst.g()).unwrap() && !inst.g().is_one());
                assert!(is_qr(inst.p(), inst.g_a()).unwrap() && !inst.g_a().is_one());
                let a = inst.a_secret().unwrap();
                assert_eq!(&mod_exp(inst.p(), inst.g(), a), inst.g_a());
            }
        }
    }

    #[test]
    fn from_public_rejects_bad_parameters() {
        assert!(GroupInstance::from_public(big(7), big(2), big(4)).is_ok());
        assert!(GroupInstance::from_public(big(9), big(4), big(7)).is_err());
        assert!(GroupInstance::from_public(big(13), big(4), big(3)).is_err());
        assert!(GroupInstance::from_public(big(7), big(1), big(4)).is_err());
        assert!(GroupInstance::from_public(big(7), big(3), big(4)).is_err());
        assert!(GroupInstance::from_public(big(7), big(2), big(1)).is_err());
        assert!(GroupInstance::from_public(big(7), big(2), big(9)).is_err());
        let inst = GroupInstance::from_public(big(7), big(2), big(4)).unwrap();
        assert!(inst.clone().with_secret(big(2)).is_ok());
        assert!(inst.clone().with_secret(big(1)).is_err());
        assert!(inst.with_secret(big(3)).is_err());
    }

    #[test]
    fn every_non_identity_residue_generates() {
        for p in (5u64..1 << 12).filter(|&p| is_safe_prime(&big(p))) {
            let q = (p - 1) / 2;
            let residues: BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
            for &g in residues.iter().filter(|&&g| g != 1) {
                let mut powers = BTreeSet::new();
                let mut acc = 1u64;
                for _ in 1..=q {
                    acc = acc * g % p;
                    powers.insert(acc);
                }
                assert_eq!(powers, residues, "p={p} g={g}");
            }
        }
    }

    #[test]
    fn instance_id_depends_on_all_public_fields() {
        let a = GroupInstance::from_public(big(23), big(2), big(4)).unwrap();
        let b = GroupInstance::from_public(big(23), big(2), big(8)).unwrap();
        let c = GroupInstance::from_public(big(23), big(4), big(2)).unwrap();
        assert_ne!(a.id(), b.id());
        assert_ne!(a.id(), c.id());
        assert_eq!(a.id(), a.clone().id());
    }
}
