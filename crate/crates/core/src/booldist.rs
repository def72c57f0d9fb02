// SPDX-License-Identifier: Apache-2.0

//! Distributions induced by Boolean functions.
//!
//! A function `c: {0,1}^n -> {0,1}` induces `D_c`, the distribution of
//! `x || c(x)` for uniform `x`. This module builds the natural generator for
//! `D_c` and its padded and seed-permuted variants, the best generator with
//! fewer than `n` seed bits, and an exhaustive classifier for small `(n, m)`
//! that lists every exact generator for `D_c`.
//!
//! Everything here is computed in exact rational arithmetic.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::bits::BitString;
use crate::dist::{GeneratorKind, GeneratorSpec};
use crate::error::{Error, Result};

/// Largest `n` a truth table may have.
pub const MAX_INPUT_BITS: usize = 24;

/// Largest seed length a [`Permutation`] may act on.
pub const MAX_PERMUTATION_BITS: usize = 16;

/// Upper bound on the number of generators [`classify_exact_generators`] and
/// [`minimum_tv_exhaustive`] will enumerate.
pub const MAX_ENUMERATED_GENERATORS: u64 = 1 << 20;

/// A Boolean function given by its truth table; entry `i` is the value at the
/// big-endian encoding of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolFn {
    n: usize,
    table: Vec<bool>,
}

impl BoolFn {
    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        if n > MAX_INPUT_BITS {
            return Err(Error::BudgetExceeded(alloc::format!("{n}-input truth table")));
        }
        if table.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                actual: table.len(),
            });
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        Self::new(n, (0..1u64 << n).map(f).collect())
    }

    /// The `index`-th function on `n` inputs, reading bit `i` of `index` as
    /// the value at input `i`.
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        Self::from_fn(n, |x| (index >> x) & 1 == 1)
    }

    pub fn random<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        Self::new(n, (0..1usize << n).map(|_| rng.gen()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn at(&self, x: u64) -> bool {
        self.table[x as usize]
    }

    pub fn eval(&self, x: &BitString) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(self.at(x.to_u64().expect("n <= MAX_INPUT_BITS")))
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            table: self.table.iter().map(|b| !b).collect(),
        }
    }

    /// Truth table as lowercase hex, entry 0 in the most significant bit of
    /// the first digit, zero padded to a whole digit.
    pub fn to_hex(&self) -> String {
        self.table
            .chunks(4)
            .map(|chunk| {
                let nibble = chunk
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << (3 - i)));
                core::char::from_digit(nibble, 16).expect("nibble < 16")
            })
            .collect()
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let len = 1usize << n.min(MAX_INPUT_BITS + 1);
        if hex.len() != len.div_ceil(4) {
            return Err(Error::Parse(alloc::format!(
                "{}-digit truth table for n = {n}",
                hex.len()
            )));
        }
        let mut table = Vec::with_capacity(hex.len() * 4);
        for c in hex.chars() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(alloc::format!("bad hex digit {c:?}")))?;
            table.extend((0..4).rev().map(|i| (d >> i) & 1 == 1));
        }
        if table[len..].iter().any(|&b| b) {
            return Err(Error::Parse("nonzero padding bits".into()));
        }
        table.truncate(len);
        Self::new(n, table)
    }
}

fn support_string(c: &BoolFn, x: u64) -> BitString {
    let mut bits = BitString::from_u64(x, c.n)
        .expect("x < 2^n")
        .as_slice()
        .to_vec();
    bits.push(c.at(x));
    BitString::from_bits(bits)
}

/// `GEN_{D_f}(x) = x || f(x)` on `n` seed bits.
pub fn gen_from_function(f: &BoolFn) -> GeneratorSpec {
    let f = f.clone();
    let n = f.n;
    GeneratorSpec::new(n, n + 1, GeneratorKind::BoolFn, move |x| {
        support_string(&f, x.to_u64().expect("n <= MAX_INPUT_BITS"))
    })
}

/// `Pr_x[h(x) != c(x)]` for uniform `x`, as an exact fraction.
pub fn disagreement_prob(h: &BoolFn, c: &BoolFn) -> Result<BigRational> {
    if h.n != c.n {
        return Err(Error::DomainMismatch(h.n, c.n));
    }
    let differ = h.table.iter().zip(&c.table).filter(|(a, b)| a != b).count();
    Ok(BigRational::new(BigInt::from(differ), BigInt::from(1u64) << h.n))
}

/// `GEN_{(D_c, m)}(s) = GEN_{D_c}(s[1..n])`: ignores all but the first `n` of
/// `m` seed bits.
pub fn padded_generator(c: &BoolFn, m: usize) -> Result<GeneratorSpec> {
    if m < c.n {
        return Err(Error::OutOfRange(alloc::format!(
            "padded generator needs m >= n, got m = {m}, n = {}",
            c.n
        )));
    }
    let f = c.clone();
    let n = c.n;
    Ok(GeneratorSpec::new(m, n + 1, GeneratorKind::Padded, move |s| {
        support_string(&f, s.slice(0..n).to_u64().expect("n <= MAX_INPUT_BITS"))
    }))
}

/// A bijection on `{0,1}^m`, stored as the image of each seed index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    m: usize,
    mapping: Vec<u32>,
}

impl Permutation {
    pub fn new(m: usize, mapping: Vec<u32>) -> Result<Self> {
        if m > MAX_PERMUTATION_BITS {
            return Err(Error::InvalidPermutation(alloc::format!("{m} bits is too large")));
        }
        if mapping.len() != 1 << m {
            return Err(Error::InvalidPermutation(alloc::format!(
                "{} images for {} seeds",
                mapping.len(),
                1u32 << m
            )));
        }
        let mut seen = alloc::vec![false; mapping.len()];
        for &v in &mapping {
            let slot = seen
                .get_mut(v as usize)
                .ok_or_else(|| Error::InvalidPermutation(alloc::format!("image {v} out of range")))?;
            if *slot {
                return Err(Error::InvalidPermutation(alloc::format!("image {v} repeated")));
            }
            *slot = true;
        }
        Ok(Self { m, mapping })
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::new(m, (0..1u32 << m.min(MAX_PERMUTATION_BITS + 1)).collect())
    }

    pub fn random<R: RngCore + ?Sized>(m: usize, rng: &mut R) -> Result<Self> {
        let mut mapping: Vec<u32> = (0..1u32 << m.min(MAX_PERMUTATION_BITS + 1)).collect();
        mapping.shuffle(rng);
        Self::new(m, mapping)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn image(&self, s: u64) -> u64 {
        u64::from(self.mapping[s as usize])
    }

    pub fn apply(&self, s: &BitString) -> BitString {
        let idx = s.to_u64().expect("m <= MAX_PERMUTATION_BITS");
        BitString::from_u64(self.image(idx), self.m).expect("image < 2^m")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::DomainMismatch(self.m, other.m));
        }
        Ok(Self {
            m: self.m,
            mapping: other.mapping.iter().map(|&s| self.mapping[s as usize]).collect(),
        })
    }
}

/// `GEN_{(D_c, m, P)}(s) = GEN_{(D_c, m)}(P(s))`.
pub fn permuted_generator(c: &BoolFn, m: usize, perm: &Permutation) -> Result<GeneratorSpec> {
    if perm.m != m {
        return Err(Error::DomainMismatch(perm.m, m));
    }
    let padded = padded_generator(c, m)?;
    let perm = perm.clone();
    Ok(padded.precompose(GeneratorKind::Permuted, move |s| perm.apply(s)))
}

/// Best generator for `D_c` with `m < n` seed bits: seed `s` maps to the
/// `s`-th support string in lexicographic order, i.e. `BIN_n(s) || c(s)`.
/// Its TV distance to `D_c` is `1 - 2^(m-n)`.
pub fn optimal_short_generator(c: &BoolFn, m: usize) -> Result<GeneratorSpec> {
    if m >= c.n {
        return Err(Error::OutOfRange(alloc::format!(
            "short generator needs m < n, got m = {m}, n = {}",
            c.n
        )));
    }
    let f = c.clone();
    Ok(GeneratorSpec::new(
        m,
        c.n + 1,
        GeneratorKind::Custom("optimal-short"),
        move |s| support_string(&f, s.to_u64().expect("m < n <= MAX_INPUT_BITS")),
    ))
}

/// Outcome of [`classify_exact_generators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactGeneratorReport {
    pub n: usize,
    pub m: usize,
    /// Every map `{0,1}^m -> {0,1}^(n+1)`: `(2^(n+1))^(2^m)`.
    pub functions_enumerated: u64,
    /// Maps whose induced distribution is exactly `D_c`.
    pub exact_count: usize,
    /// Seed permutations tried, `(2^m)!`, or 0 when `m < n`.
    pub permutation_count: u64,
    /// Distinct maps of the form `padded ∘ P`.
    pub padded_permuted_count: usize,
    /// Whether the two sets coincide.
    pub sets_equal: bool,
}

fn enumeration_size(c: &BoolFn, m: usize) -> Result<u64> {
    let outputs = 1u64 << (c.n + 1);
    let seeds = 1u32 << m.min(31);
    let total = (m < 31)
        .then(|| outputs.checked_pow(seeds))
        .flatten()
        .filter(|&t| t <= MAX_ENUMERATED_GENERATORS);
    total.ok_or_else(|| {
        Error::BudgetExceeded(alloc::format!(
            "enumerating all maps {{0,1}}^{m} -> {{0,1}}^{} exceeds {MAX_ENUMERATED_GENERATORS}",
            c.n + 1
        ))
    })
}

/// Calls `visit` with every map `{0,1}^m -> {0,1}^(n+1)` as a vector of
/// output indices.
fn for_each_function(c: &BoolFn, m: usize, mut visit: impl FnMut(&[u32])) -> Result<u64> {
    let total = enumeration_size(c, m)?;
    let outputs = 1u64 << (c.n + 1);
    let seeds = 1usize << m;
    let mut f = alloc::vec![0u32; seeds];
    for mut idx in 0..total {
        for slot in f.iter_mut() {
            *slot = (idx % outputs) as u32;
            idx /= outputs;
        }
        visit(&f);
    }
    Ok(total)
}

fn output_index(c: &BoolFn, x: u64) -> u32 {
    ((x << 1) | u64::from(c.at(x))) as u32
}

/// `2^(m+n+1) * TV(D_f, D_c)` as an integer, for `f` given by output indices.
fn scaled_tv(c: &BoolFn, m: usize, f: &[u32]) -> u64 {
    let mut counts = alloc::vec![0u64; 1 << (c.n + 1)];
    for &y in f {
        counts[y as usize] += 1;
    }
    let target = 1u64 << m; // D_c(y) * 2^(m+n)
    counts
        .iter()
        .enumerate()
        .map(|(y, &cnt)| {
            let x = (y >> 1) as u64;
            let on_support = output_index(c, x) as usize == y;
            let have = cnt << c.n;
            let want = if on_support { target } else { 0 };
            have.abs_diff(want)
        })
        .sum()
}

fn permutations(len: usize, mut visit: impl FnMut(&[u32])) {
    // Heap's algorithm
    let mut a: Vec<u32> = (0..len as u32).collect();
    let mut c = alloc::vec![0usize; len];
    visit(&a);
    let mut i = 0;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Enumerates every generator `{0,1}^m -> {0,1}^(n+1)`, keeps the exact ones
/// for `D_c`, and compares them with the set `{padded ∘ P}` over all seed
/// permutations `P`.
pub fn classify_exact_generators(c: &BoolFn, m: usize) -> Result<ExactGeneratorReport> {
    let mut exact: BTreeSet<Vec<u32>> = BTreeSet::new();
    let functions_enumerated = for_each_function(c, m, |f| {
        if scaled_tv(c, m, f) == 0 {
            exact.insert(f.to_vec());
        }
    })?;

    let mut padded_permuted: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut permutation_count = 0u64;
    if m >= c.n {
        let shift = m - c.n;
        permutations(1 << m, |perm| {
            permutation_count += 1;
            let f: Vec<u32> = perm
                .iter()
                .map(|&s| output_index(c, u64::from(s) >> shift))
                .collect();
            padded_permuted.insert(f);
        });
    }

    Ok(ExactGeneratorReport {
        n: c.n,
        m,
        functions_enumerated,
        exact_count: exact.len(),
        permutation_count,
        padded_permuted_count: padded_permuted.len(),
        sets_equal: exact == padded_permuted,
    })
}

/// Smallest TV distance to `D_c` over every generator with `m` seed bits.
pub fn minimum_tv_exhaustive(c: &BoolFn, m: usize) -> Result<BigRational> {
    let mut best = u64::MAX;
    for_each_function(c, m, |f| best = best.min(scaled_tv(c, m, f)))?;
    Ok(BigRational::new(
        BigInt::from(best),
        BigInt::from(1u64) << (m + c.n + 1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{exact_table, tv_distance, DistTable};
    use crate::seed::task_rng;
    use num_traits::{One, Zero};

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn table(spec: &GeneratorSpec) -> DistTable<BigRational> {
        exact_table(spec).unwrap()
    }

    fn d_c(c: &BoolFn) -> DistTable<BigRational> {
        table(&gen_from_function(c))
    }

    #[test]
    fn gen_from_function_examples() {
        let zero = BoolFn::new(1, alloc::vec![false, false]).unwrap();
        let expected = DistTable::new(2, [(bs("00"), r(1, 2)), (bs("10"), r(1, 2))]).unwrap();
        assert_eq!(d_c(&zero), expected);
        let id = BoolFn::new(1, alloc::vec![false, true]).unwrap();
        let expected = DistTable::new(2, [(bs("00"), r(1, 2)), (bs("11"), r(1, 2))]).unwrap();
        assert_eq!(d_c(&id), expected);
        let mut rng = task_rng(1, "bool", 0);
        for n in 0..6 {
            let c = BoolFn::random(n, &mut rng).unwrap();
            assert_eq!(d_c(&c).support_size(), 1 << n);
        }
    }

    #[test]
    fn disagreement_examples() {
        let mut rng = task_rng(2, "bool", 0);
        let c = BoolFn::random(3, &mut rng).unwrap();
        assert!(disagreement_prob(&c, &c).unwrap().is_zero());
        assert!(disagreement_prob(&c, &c.complement()).unwrap().is_one());
        let a = BoolFn::from_index(2, 0b0110).unwrap();
        let b = BoolFn::from_index(2, 0b0111).unwrap();
        assert_eq!(disagreement_prob(&a, &b).unwrap(), r(1, 4));
        assert!(disagreement_prob(&a, &c).is_err());
    }

    #[test]
    fn tv_equals_disagreement_for_all_pairs_at_n2() {
        for i in 0..16 {
            for j in 0..16 {
                let h = BoolFn::from_index(2, i).unwrap();
                let c = BoolFn::from_index(2, j).unwrap();
                assert_eq!(tv_distance(&d_c(&h), &d_c(&c)).unwrap(), disagreement_prob(&h, &c).unwrap());
            }
        }
    }

    #[test]
    fn padded_generator_examples() {
        let mut rng = task_rng(3, "bool", 0);
        let c = BoolFn::random(2, &mut rng).unwrap();
        assert_eq!(table(&padded_generator(&c, 2).unwrap()), d_c(&c));
        assert_eq!(table(&padded_generator(&c, 4).unwrap()), d_c(&c));
        assert!(padded_generator(&c, 1).is_err());
    }

    #[test]
    fn permuted_generators_stay_exact() {
        let mut rng = task_rng(4, "bool", 0);
        let c = BoolFn::random(2, &mut rng).unwrap();
        let id = Permutation::identity(3).unwrap();
        let padded = padded_generator(&c, 3).unwrap();
        let with_id = permuted_generator(&c, 3, &id).unwrap();
        for s in 0..8 {
            let s = BitString::from_u64(s, 3).unwrap();
            assert_eq!(padded.eval(&s).unwrap(), with_id.eval(&s).unwrap());
        }
        for _ in 0..20 {
            let p1 = Permutation::random(3, &mut rng).unwrap();
            let p2 = Permutation::random(3, &mut rng).unwrap();
            assert_eq!(table(&permuted_generator(&c, 3, &p1).unwrap()), d_c(&c));
            let both = p1.compose(&p2).unwrap();
            assert_eq!(table(&permuted_generator(&c, 3, &both).unwrap()), d_c(&c));
        }
        assert!(permuted_generator(&c, 4, &id).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(1, alloc::vec![0, 0]).is_err());
        assert!(Permutation::new(1, alloc::vec![0, 2]).is_err());
        assert!(Permutation::new(2, alloc::vec![0, 1]).is_err());
        assert!(Permutation::new(1, alloc::vec![1, 0]).is_ok());
        let p = Permutation::new(2, alloc::vec![1, 2, 3, 0]).unwrap();
        let q = Permutation::new(2, alloc::vec![3, 0, 1, 2]).unwrap();
        assert_eq!(p.compose(&q).unwrap(), Permutation::identity(2).unwrap());
        assert_eq!(p.apply(&bs("01")), bs("10"));
    }

    #[test]
    fn optimal_short_generator_examples() {
        let mut rng = task_rng(5, "bool", 0);
        let c2 = BoolFn::random(2, &mut rng).unwrap();
        let c3 = BoolFn::random(3, &mut rng).unwrap();
        let tv = |c: &BoolFn, m| tv_distance(&table(&optimal_short_generator(c, m).unwrap()), &d_c(c)).unwrap();
        assert_eq!(tv(&c2, 1), r(1, 2));
        assert_eq!(tv(&c3, 1), r(3, 4));
        assert_eq!(tv(&c3, 0), r(7, 8));
        assert!(optimal_short_generator(&c2, 2).is_err());
        assert_eq!(minimum_tv_exhaustive(&c2, 1).unwrap(), r(1, 2));
    }

    #[test]
    fn scaled_tv_matches_table_route() {
        let mut rng = task_rng(6, "bool", 0);
        for _ in 0..50 {
            let c = BoolFn::random(2, &mut rng).unwrap();
            let m = rng.gen_range(0..3usize);
            let f: Vec<u32> = (0..1 << m).map(|_| rng.gen_range(0..8u32)).collect();
            let spec = {
                let f = f.clone();
                GeneratorSpec::new(m, 3, GeneratorKind::Custom("test"), move |s| {
                    BitString::from_u64(u64::from(f[s.to_u64().unwrap() as usize]), 3).unwrap()
                })
            };
            let via_table = tv_distance(&table(&spec), &d_c(&c)).unwrap();
            let scaled = BigRational::new(scaled_tv(&c, m, &f).into(), (BigInt::from(1) << (m + 3)).into());
            assert_eq!(via_table, scaled);
        }
    }

    /// Number of maps sending exactly 2^(m-n) seeds to each support string:
    /// the multinomial (2^m)! / ((2^(m-n))!)^(2^n).
    fn multinomial_exact_count(n: usize, m: usize) -> usize {
        let fact = |k: usize| (1..=k).product::<usize>();
        fact(1 << m) / fact(1 << (m - n)).pow(1 << n)
    }

    #[test]
    fn exact_generators_are_padded_permutations() {
        for (n, m) in [(1usize, 1usize), (1, 2), (2, 2)] {
            for idx in 0..1u64 << (1 << n) {
                let c = BoolFn::from_index(n, idx).unwrap();
                let rep = classify_exact_generators(&c, m).unwrap();
                assert!(rep.sets_equal, "{rep:?}");
                assert_eq!(rep.exact_count, multinomial_exact_count(n, m));
                assert_eq!(rep.padded_permuted_count, rep.exact_count);
                assert_eq!(rep.permutation_count, (1..=1u64 << m).product::<u64>());
            }
        }
        let c = BoolFn::from_index(2, 5).unwrap();
        let rep = classify_exact_generators(&c, 1).unwrap();
        assert_eq!((rep.exact_count, rep.padded_permuted_count, rep.sets_equal), (0, 0, true));
        assert!(classify_exact_generators(&BoolFn::from_index(3, 1).unwrap(), 3).is_err());
    }

    #[test]
    fn hex_roundtrip_and_errors() {
        let c = BoolFn::from_index(3, 0b1011_0010).unwrap();
        let hex = c.to_hex();
        assert_eq!(hex.len(), 2);
        assert_eq!(BoolFn::from_hex(3, &hex).unwrap(), c);
        let one = BoolFn::new(0, alloc::vec![true]).unwrap();
        assert_eq!(one.to_hex(), "8");
        assert_eq!(BoolFn::from_hex(0, "8").unwrap(), one);
        assert!(BoolFn::from_hex(0, "c").is_err());
        assert!(BoolFn::from_hex(3, "g0").is_err());
        assert!(BoolFn::from_hex(3, "0").is_err());
    }
}
