// SPDX-License-Identifier: Apache-2.0

use ddhgen::dist::{
    decode_params, empirical_table, encode_params, exact_table, gen_eval, kgen_eval, kl_divergence, sample_oracle,
    tv_distance, DistTable, GeneratorSpec, SampleOracle,
};
use ddhgen::learner::{learn_from_sample, learn_key, KeyLearner};
use ddhgen::numtheory::{generate_instance, DlogEngine, GroupInstance};
use ddhgen::prf::{prf_eval, prg_eval, KeyedFunction, LazyRandomFunction, MqOracle, PexOracle, PrfFunction};
use ddhgen::seed::task_rng;
use ddhgen::{BitString, Error, PrfKey, ZqElement};
use num_bigint::BigUint;
use num_rational::BigRational;

fn toy() -> (GroupInstance, PrfKey) {
    let inst = GroupInstance::from_public(7u32.into(), 2u32.into(), 4u32.into()).unwrap();
    let key = PrfKey::new(&inst, 1u32.into()).unwrap();
    (inst, key)
}

fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

fn z(v: u32) -> ZqElement {
    ZqElement::new(v.into(), &BigUint::from(3u32)).unwrap()
}

#[test]
fn toy_instance_forward_and_backward() {
    let (inst, key) = toy();
    assert_eq!(prg_eval(&inst, &z(1)), (z(2), z(3)));
    assert_eq!(prg_eval(&inst, &z(2)), (z(3), z(2)));
    assert_eq!(prg_eval(&inst, &z(3)), (z(1), z(1)));
    assert_eq!(prf_eval(&inst, &key, &bs("000")).unwrap(), z(1));
    assert_eq!(prf_eval(&inst, &key, &bs("111")).unwrap(), z(3));
    let two = PrfKey::new(&inst, 2u32.into()).unwrap();
    assert_eq!(prf_eval(&inst, &two, &bs("101")).unwrap(), z(1));

    assert_eq!(learn_key(&inst, &bs("111"), &z(3)).unwrap(), key);
    assert_eq!(learn_key(&inst, &bs("000"), &z(1)).unwrap(), key);
    assert_eq!(learn_key(&inst, &bs("101"), &z(1)).unwrap(), two);
}

#[test]
fn toy_instance_encodings() {
    let (inst, key) = toy();
    assert_eq!(encode_params(&inst), bs("111010100"));
    assert_eq!(kgen_eval(&inst, &key, &bs("000")).unwrap(), bs("000001"));
    assert_eq!(kgen_eval(&inst, &key, &bs("111")).unwrap(), bs("111011"));
    assert_eq!(gen_eval(&inst, &key, &bs("111")).unwrap(), bs("111011111010100"));
    assert_eq!(gen_eval(&inst, &key, &bs("000")).unwrap(), bs("000001111010100"));
    let decoded = decode_params(&bs("111010100")).unwrap();
    assert_eq!((decoded.p(), decoded.g(), decoded.g_a()), (inst.p(), inst.g(), inst.g_a()));
}

#[test]
fn one_sample_recovers_instance_and_key() {
    let (inst, key) = toy();
    let learned = learn_from_sample(&bs("111011111010100")).unwrap();
    assert_eq!(learned.inst.p(), inst.p());
    assert_eq!(learned.key.value(), key.value());
    assert!(matches!(learn_from_sample(&bs("11101111101010")), Err(Error::MalformedSample(_))));
    // p = 9 in the suffix
    assert!(matches!(learn_from_sample(&bs("111011001010100")), Err(Error::InvalidInstance(_))));
}

#[test]
fn generate_sample_learn_roundtrip() {
    for (i, n) in [3u32, 6, 9, 12, 16, 24, 32].into_iter().enumerate() {
        let mut rng = task_rng(1, "pipeline", i as u64);
        let inst = generate_instance(n, &mut rng).unwrap();
        let key = PrfKey::random(&inst, &mut rng);
        let spec = GeneratorSpec::gen(&inst, &key).unwrap();
        let sample = sample_oracle(&spec, &mut rng);
        assert_eq!(sample.len(), 5 * n as usize);
        for engine in [DlogEngine::Bsgs, DlogEngine::Brute] {
            if engine == DlogEngine::Brute && n > 16 {
                continue;
            }
            let learned = KeyLearner::new(engine).learn_from_sample(&sample).unwrap();
            assert_eq!(learned.inst, GroupInstance::from_public(inst.p().clone(), inst.g().clone(), inst.g_a().clone()).unwrap());
            assert_eq!(learned.key.value(), key.value());
            let x = BitString::random(n as usize, &mut rng);
            assert_eq!(learned.spec.eval(&x).unwrap(), spec.eval(&x).unwrap());
        }
    }
}

#[test]
fn pac_learning_matches_exactly_at_n8() {
    let learner = KeyLearner::default();
    for i in 0..100 {
        let mut rng = task_rng(2, "pipeline-pac", i);
        let inst = generate_instance(8, &mut rng).unwrap();
        let key = PrfKey::random(&inst, &mut rng);
        let target = GeneratorSpec::kgen(&inst, &key).unwrap();
        let mut oracle = SampleOracle::new(GeneratorSpec::gen(&inst, &key).unwrap(), rng);
        let out = learner.pac_generator_learn(&mut oracle, 0.1, 0.1).unwrap();
        assert_eq!(out.sample_complexity, 1);
        let learned_kgen = GeneratorSpec::kgen(&out.generator.inst, &out.generator.key).unwrap();
        let want: DistTable<BigRational> = exact_table(&target).unwrap();
        assert_eq!(exact_table::<BigRational>(&learned_kgen).unwrap(), want);
    }
}

#[test]
fn oracles_over_the_toy_function() {
    let (inst, key) = toy();
    let mut mq = MqOracle::new(PrfFunction::new(inst.clone(), key.clone()));
    assert_eq!(mq.query(&bs("111")).unwrap(), z(3));
    let mut lazy = MqOracle::new(LazyRandomFunction::for_instance(&inst, task_rng(3, "lazy", 0)));
    let x = bs("010");
    assert_eq!(lazy.query(&x).unwrap(), lazy.query(&x).unwrap());
    assert_eq!(lazy.query_count(), 2);

    let mut pex = PexOracle::new(PrfFunction::new(inst.clone(), key.clone()), task_rng(3, "pex", 0));
    let mut counts = [0u32; 8];
    let draws = 10_000;
    for _ in 0..draws {
        let (x, fx) = pex.sample().unwrap();
        assert_eq!(prf_eval(&inst, &key, &x).unwrap(), fx);
        counts[x.to_u64().unwrap() as usize] += 1;
    }
    let sigma = (f64::from(draws) * (1.0 / 8.0) * (7.0 / 8.0)).sqrt();
    for c in counts {
        assert!((f64::from(c) - f64::from(draws) / 8.0).abs() <= 4.0 * sigma);
    }
    assert!(pex.sample_value().is_ok());
    let f = PrfFunction::new(inst, key);
    assert_eq!(f.input_bits(), 3);
}

#[test]
fn empirical_samples_approach_the_exact_table() {
    let (inst, key) = toy();
    let spec = GeneratorSpec::kgen(&inst, &key).unwrap();
    let mut rng = task_rng(4, "emp", 0);
    let samples: Vec<BitString> = (0..8000).map(|_| sample_oracle(&spec, &mut rng)).collect();
    let emp: DistTable<f64> = empirical_table(&samples).unwrap();
    let exact: DistTable<f64> = exact_table(&spec).unwrap();
    assert_eq!(emp.support_size(), 8);
    assert!(tv_distance(&emp, &exact).unwrap() < 0.03);
    assert!(kl_divergence(&exact, &emp).unwrap().is_finite());
}
