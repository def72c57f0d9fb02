// SPDX-License-Identifier: Apache-2.0

//! Exhaustive invariant suites behind `ddhgen verify`.

use ddhgen::booldist::{
    classify_exact_generators, disagreement_prob, gen_from_function, minimum_tv_exhaustive, optimal_short_generator,
    permuted_generator, BoolFn, Permutation,
};
use ddhgen::dist::{exact_table, kgen_eval, tv_distance, DistTable, GeneratorSpec};
use ddhgen::learner::KeyLearner;
use ddhgen::numtheory::{
    discrete_log, f_p, f_p_inv, generate_instance, is_qr, is_safe_prime, BsgsTable, DlogEngine, GroupInstance,
};
use ddhgen::prf::prf_eval;
use ddhgen::seed::task_rng;
use ddhgen::{BitString, PrfKey};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Numtheory,
    Kgen,
    Boollemmas,
    All,
}

type Outcome = Result<String, String>;

fn check(name: &str, outcome: Outcome) -> Check {
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

pub fn run(suite: Suite, seed: u64) -> SuiteReport {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Numtheory | Suite::All) {
        checks.extend(numtheory(seed));
    }
    if matches!(suite, Suite::Kgen | Suite::All) {
        checks.extend(kgen(seed));
    }
    if matches!(suite, Suite::Boollemmas | Suite::All) {
        checks.extend(boollemmas(seed));
    }
    let name = match suite {
        Suite::Numtheory => "numtheory",
        Suite::Kgen => "kgen",
        Suite::Boollemmas => "boollemmas",
        Suite::All => "all",
    };
    SuiteReport {
        suite: name.to_string(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

const SMALL_PRIME_LIMIT: u64 = 1 << 12;

fn small_safe_primes() -> Vec<u64> {
    (5..SMALL_PRIME_LIMIT).filter(|&p| is_safe_prime(&BigUint::from(p))).collect()
}

fn numtheory(seed: u64) -> Vec<Check> {
    vec![
        check("f_p bijection", f_p_bijection()),
        check("residues generate", residues_generate()),
        check("dlog engines agree", dlog_engines_agree()),
        check("key learner exact", key_learner_exact(seed)),
    ]
}

/// For each safe prime below 2^12: `f_p` maps `QR_p` onto `{1, ..., q}`
/// exactly when the group family accepts `p`, and `f_p^{-1}` undoes it.
fn f_p_bijection() -> Outcome {
    let primes = small_safe_primes();
    let mut rejected = Vec::new();
    for &p in &primes {
        let pb = BigUint::from(p);
        let q = (p - 1) / 2;
        let mut hit = vec![false; q as usize + 1];
        let mut injective = true;
        for x in 1..p {
            let xb = BigUint::from(x);
            if !is_qr(&pb, &xb).map_err(|e| e.to_string())? {
                continue;
            }
            let y = f_p(&pb, &xb).map_err(|e| e.to_string())?;
            let y_u = y.value().to_u64().unwrap_or(0);
            if y_u == 0 || y_u > q {
                return Err(format!("p = {p}: f_p({x}) = {y_u} outside 1..={q}"));
            }
            injective &= !std::mem::replace(&mut hit[y_u as usize], true);
            if injective && f_p_inv(&pb, y.value()).map_err(|e| e.to_string())? != xb {
                return Err(format!("p = {p}: f_p^-1 does not invert at {x}"));
            }
        }
        let bijective = injective && hit[1..].iter().all(|&h| h);
        let accepted = GroupInstance::from_public(pb.clone(), BigUint::from(4u32), BigUint::from(4u32)).is_ok();
        if bijective != accepted {
            return Err(format!("p = {p}: bijective = {bijective} but accepted = {accepted}"));
        }
        if !accepted {
            rejected.push(p);
        }
    }
    if rejected != [5] {
        return Err(format!("unexpected rejected primes {rejected:?}"));
    }
    Ok(format!(
        "{} safe primes below 2^12; bijection on every accepted prime, only p = 5 fails and is rejected",
        primes.len()
    ))
}

fn residues_generate() -> Outcome {
    let primes = small_safe_primes();
    let mut elements = 0u64;
    for &p in &primes {
        let q = (p - 1) / 2;
        let mut is_res = vec![false; p as usize];
        for x in 1..p {
            is_res[(x * x % p) as usize] = true;
        }
        for g in (2..p).filter(|&g| is_res[g as usize]) {
            let mut seen = vec![false; p as usize];
            let mut acc = 1u64;
            for _ in 0..q {
                acc = acc * g % p;
                seen[acc as usize] = true;
            }
            if seen != is_res {
                return Err(format!("p = {p}: {g} does not generate the residues"));
            }
            elements += 1;
        }
    }
    Ok(format!("{elements} non-identity residues across {} primes", primes.len()))
}

fn dlog_engines_agree() -> Outcome {
    let mut solved = 0u64;
    for p in small_safe_primes().into_iter().filter(|&p| p < 1 << 10) {
        let (pb, g) = (BigUint::from(p), BigUint::from(4u32));
        let table = BsgsTable::new(&pb, &g).map_err(|e| e.to_string())?;
        let mut y = BigUint::one();
        for e in 1..=(p - 1) / 2 {
            y = y * &g % &pb;
            let brute = discrete_log(&pb, &g, &y, DlogEngine::Brute).map_err(|e| e.to_string())?;
            let bsgs = table.solve(&y).map_err(|e| e.to_string())?;
            if brute != bsgs || brute.value() != &BigUint::from(e) {
                return Err(format!("p = {p}: engines disagree at exponent {e}"));
            }
            solved += 1;
        }
    }
    Ok(format!("{solved} logarithms below 2^10"))
}

fn key_learner_exact(seed: u64) -> Outcome {
    let learner = KeyLearner::default();
    let per_n = 50;
    for n in 3..=16u32 {
        for i in 0..per_n {
            let mut rng = task_rng(seed, "verify-learner", u64::from(n) * 1000 + i);
            let inst = generate_instance(n, &mut rng).map_err(|e| e.to_string())?;
            let key = PrfKey::random(&inst, &mut rng);
            let x = BitString::random(n as usize, &mut rng);
            let fx = prf_eval(&inst, &key, &x).map_err(|e| e.to_string())?;
            if learner.learn_key(&inst, &x, &fx).map_err(|e| e.to_string())? != key {
                return Err(format!("n = {n}: wrong key recovered"));
            }
        }
    }
    Ok(format!("{per_n} triples at each n in 3..=16"))
}

fn kgen(seed: u64) -> Vec<Check> {
    vec![
        check("kgen table shape", kgen_table_shape(seed)),
        check("one-sample learning", one_sample_learning(seed)),
    ]
}

fn kgen_table_shape(seed: u64) -> Outcome {
    for n in 3..=10u32 {
        let mut rng = task_rng(seed, "verify-kgen", u64::from(n));
        let inst = generate_instance(n, &mut rng).map_err(|e| e.to_string())?;
        let key = PrfKey::random(&inst, &mut rng);
        let spec = GeneratorSpec::kgen(&inst, &key).map_err(|e| e.to_string())?;
        let table: DistTable<BigRational> = exact_table(&spec).map_err(|e| e.to_string())?;
        let share = BigRational::new(BigInt::one(), BigInt::one() << n);
        let expected = DistTable::new(
            2 * n as usize,
            (0..1u64 << n).map(|x| {
                let x = BitString::from_u64(x, n as usize).expect("x < 2^n");
                (kgen_eval(&inst, &key, &x).expect("valid key"), share.clone())
            }),
        )
        .map_err(|e| e.to_string())?;
        if table != expected || table.support_size() != 1 << n {
            return Err(format!("n = {n}: table differs from the uniform graph distribution"));
        }
    }
    Ok("exact rational tables for n in 3..=10".to_string())
}

fn one_sample_learning(seed: u64) -> Outcome {
    let learner = KeyLearner::default();
    let count = 30;
    for i in 0..count {
        let mut rng = task_rng(seed, "verify-pac", i);
        let n = 3 + (i % 8) as u32;
        let inst = generate_instance(n, &mut rng).map_err(|e| e.to_string())?;
        let key = PrfKey::random(&inst, &mut rng);
        let target = GeneratorSpec::gen(&inst, &key).map_err(|e| e.to_string())?;
        let mut oracle = ddhgen::dist::SampleOracle::new(target.clone(), rng);
        let out = learner
            .pac_generator_learn(&mut oracle, 0.1, 0.1)
            .map_err(|e| e.to_string())?;
        let learned: DistTable<BigRational> = exact_table(&out.generator.spec).map_err(|e| e.to_string())?;
        let want: DistTable<BigRational> = exact_table(&target).map_err(|e| e.to_string())?;
        if learned != want || out.sample_complexity != 1 || oracle.draws() != 1 {
            return Err(format!("instance {i} (n = {n}) not learned exactly from one sample"));
        }
    }
    Ok(format!("{count} instances with n in 3..=10, one sample each"))
}

fn boollemmas(seed: u64) -> Vec<Check> {
    vec![
        check("tv equals disagreement", tv_equals_disagreement(seed)),
        check("short generators", short_generators(seed)),
        check("short seed lower bound", short_seed_lower_bound()),
        check("exact generators", exact_generators()),
        check("permutation invariance", permutation_invariance(seed)),
    ]
}

fn dc(c: &BoolFn) -> Result<DistTable<BigRational>, String> {
    exact_table(&gen_from_function(c)).map_err(|e| e.to_string())
}

fn tv_equals_disagreement(seed: u64) -> Outcome {
    let mut pairs: Vec<(BoolFn, BoolFn)> = Vec::new();
    for i in 0..16 {
        for j in 0..16 {
            pairs.push((BoolFn::from_index(2, i).expect("n = 2"), BoolFn::from_index(2, j).expect("n = 2")));
        }
    }
    let mut rng = task_rng(seed, "verify-inter", 0);
    for _ in 0..200 {
        pairs.push((
            BoolFn::random(4, &mut rng).expect("n = 4"),
            BoolFn::random(4, &mut rng).expect("n = 4"),
        ));
    }
    for (h, c) in &pairs {
        let (th, tc) = (dc(h)?, dc(c)?);
        let tv = tv_distance(&th, &tc).map_err(|e| e.to_string())?;
        let err = disagreement_prob(h, c).map_err(|e| e.to_string())?;
        let tv_f = tv_distance(&th.to_f64_table(), &tc.to_f64_table()).map_err(|e| e.to_string())?;
        if tv != err || (tv_f - err.to_f64().unwrap_or(f64::NAN)).abs() > 1e-12 {
            return Err(format!("h = {}, c = {}: tv {tv} vs disagreement {err}", h.to_hex(), c.to_hex()));
        }
    }
    Ok(format!("{} pairs (all 256 at n = 2, 200 random at n = 4)", pairs.len()))
}

fn short_generators(seed: u64) -> Outcome {
    let mut rng = task_rng(seed, "verify-short", 0);
    let mut cases = 0;
    for n in 1..=4usize {
        for m in 0..n {
            for _ in 0..8 {
                let c = BoolFn::random(n, &mut rng).expect("small n");
                let g = optimal_short_generator(&c, m).map_err(|e| e.to_string())?;
                let tv = tv_distance(&exact_table(&g).map_err(|e| e.to_string())?, &dc(&c)?).map_err(|e| e.to_string())?;
                let want = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << (n - m));
                if tv != want {
                    return Err(format!("n = {n}, m = {m}, c = {}: tv {tv}, expected {want}", c.to_hex()));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("tv = 1 - 2^(m-n) in {cases} cases with m < n <= 4"))
}

fn short_seed_lower_bound() -> Outcome {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for idx in 0..16 {
        let c = BoolFn::from_index(2, idx).expect("n = 2");
        let best = minimum_tv_exhaustive(&c, 1).map_err(|e| e.to_string())?;
        if best != half {
            return Err(format!("c = {}: best one-bit generator has tv {best}", c.to_hex()));
        }
    }
    Ok("all 16 functions at n = 2: best one-bit generator has tv exactly 1/2".to_string())
}

fn exact_generators() -> Outcome {
    let mut summary = Vec::new();
    for (n, m) in [(1usize, 1usize), (1, 2), (2, 2)] {
        let mut counts = Vec::new();
        for idx in 0..1u64 << (1 << n) {
            let c = BoolFn::from_index(n, idx).expect("small n");
            let rep = classify_exact_generators(&c, m).map_err(|e| e.to_string())?;
            if !rep.sets_equal {
                return Err(format!("n = {n}, m = {m}, c = {}: {rep:?}", c.to_hex()));
            }
            counts.push(rep.exact_count);
        }
        counts.dedup();
        summary.push(format!("(n={n}, m={m}): {counts:?}"));
    }
    Ok(format!("exact generators = padded permutations; counts {}", summary.join(", ")))
}

fn permutation_invariance(seed: u64) -> Outcome {
    let mut rng = task_rng(seed, "verify-perm", 0);
    let mut tried = 0;
    for n in 1..=3usize {
        for m in n..=4 {
            let c = BoolFn::random(n, &mut rng).expect("small n");
            let want = dc(&c)?;
            for _ in 0..10 {
                let perm = Permutation::random(m, &mut rng).map_err(|e| e.to_string())?;
                let spec = permuted_generator(&c, m, &perm).map_err(|e| e.to_string())?;
                if exact_table::<BigRational>(&spec).map_err(|e| e.to_string())? != want {
                    return Err(format!("n = {n}, m = {m}: permuted generator is not exact"));
                }
                tried += 1;
            }
        }
    }
    Ok(format!("{tried} random seed permutations"))
}
