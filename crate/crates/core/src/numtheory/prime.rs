// SPDX-License-Identifier: Apache-2.0

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use super::mod_exp;

/// Miller-Rabin rounds for candidates at or above 2^16. The first
/// `FIXED_BASES.len()` rounds use fixed prime bases, which alone decide
/// primality for every candidate below 3.3 * 10^24; the rest use bases drawn
/// from a stream seeded by the candidate itself.
const MR_ROUNDS: usize = 64;

const FIXED_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const SMALL_PRIMES: [u32; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// Default number of candidates tried by safe-prime search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

fn trial_division_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primality test: exact trial division below 2^16, otherwise small-prime
/// sieving followed by 64 Miller-Rabin rounds (error below 2^-128).
pub fn is_prime(n: &BigUint) -> bool {
    if n.bits() <= 16 {
        return trial_division_u32(n.to_u32().unwrap_or(0));
    }
    for &sp in &SMALL_PRIMES {
        if (n % sp).is_zero() {
            return false;
        }
    }
    miller_rabin(n)
}

fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let witness = |a: &BigUint| -> bool {
        let mut x = mod_exp(n, a, &d);
        if x == one || x == n_minus_1 {
            return false;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };

    if FIXED_BASES
        .iter()
        .any(|&b| witness(&BigUint::from(b)))
    {
        return false;
    }
    let mut rng = ChaCha20Rng::from_seed(Sha256::digest(n.to_bytes_le()).into());
    let two = BigUint::from(2u32);
    (FIXED_BASES.len()..MR_ROUNDS).all(|_| !witness(&rng.gen_biguint_range(&two, &n_minus_1)))
}

/// True iff `p` and `(p - 1) / 2` are both prime.
pub fn is_safe_prime(p: &BigUint) -> bool {
    if p.is_even() {
        return false;
    }
    let q = (p - 1u32) >> 1;
    is_prime(&q) && is_prime(p)
}
