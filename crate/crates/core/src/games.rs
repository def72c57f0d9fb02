// SPDX-License-Identifier: Apache-2.0

//! Monte-Carlo harnesses for the security games.
//!
//! * The distinguisher game pits an [`Adversary`] against either the keyed
//!   function under a uniform key or a lazily sampled random function, seen
//!   through a membership-query or random-example oracle.
//! * The inference game lets an [`InferenceStrategy`] query the keyed
//!   function, pick a fresh exam string, and then tell the true value apart
//!   from a uniform decoy.
//! * [`KearnsReduction`] turns a generator learner into an inference
//!   strategy by simulating its sample oracle with membership queries.
//!
//! Every trial draws its randomness from `(master seed, label, trial index)`,
//! so results are reproducible and independent of evaluation order.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::{BigUint, RandBigInt};
use rand::{Rng, RngCore, SeedableRng};

use crate::bits::BitString;
use crate::dist::GeneratorSpec;
use crate::error::{Error, Result};
use crate::learner::KeyLearner;
use crate::numtheory::{generate_instance, GroupInstance, ZqElement};
use crate::prf::{prf_eval, KeyedFunction, LazyRandomFunction, MqOracle, PexOracle, PrfFunction, PrfKey};
use crate::seed::{task_rng, TaskRng};

/// Failure probability behind every reported confidence half-width.
pub const CONFIDENCE_DELTA: f64 = 0.01;

/// `2 * sqrt(ln(2 / delta) / (2 * trials))` with `delta = 0.01`.
pub fn hoeffding_halfwidth(trials: u64) -> f64 {
    if trials == 0 {
        return f64::INFINITY;
    }
    2.0 * libm::sqrt(libm::log(2.0 / CONFIDENCE_DELTA) / (2.0 * trials as f64))
}

fn rate(hits: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

/// Shared knobs for every game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameConfig {
    pub n: u32,
    pub trials: u64,
    pub seed: u64,
    /// Per-trial oracle budget; `None` means `10 n^2`.
    pub query_budget: Option<u64>,
}

impl GameConfig {
    pub fn new(n: u32, trials: u64, seed: u64) -> Self {
        Self {
            n,
            trials,
            seed,
            query_budget: None,
        }
    }

    pub fn with_query_budget(mut self, budget: u64) -> Self {
        self.query_budget = Some(budget);
        self
    }

    pub fn budget(&self) -> u64 {
        self.query_budget
            .unwrap_or_else(|| 10 * u64::from(self.n) * u64::from(self.n))
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::OutOfRange("a game needs at least one trial".into()));
        }
        if self.n < 3 {
            return Err(Error::BitLengthTooSmall(self.n));
        }
        Ok(())
    }

    fn rng(&self, label: &str, index: u64) -> TaskRng {
        task_rng(self.seed, label, index)
    }
}

/// Which oracle the adversary sees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Membership queries at chosen points.
    Mq,
    /// Random examples `(x, f(x))` at uniform `x`.
    Pex,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Mq => "mq",
            Flavor::Pex => "pex",
        }
    }
}

/// A function under test, as either arm of the distinguisher game sees it.
pub type BoxedFunction = Box<dyn KeyedFunction>;

/// The oracle handed to an adversary; only the calls matching its flavor
/// succeed.
pub enum GameOracle {
    Mq(MqOracle<BoxedFunction>),
    Pex(PexOracle<BoxedFunction, TaskRng>),
}

impl GameOracle {
    fn new(flavor: Flavor, f: BoxedFunction, budget: u64, rng: TaskRng) -> Self {
        match flavor {
            Flavor::Mq => GameOracle::Mq(MqOracle::new(f).with_budget(budget)),
            Flavor::Pex => GameOracle::Pex(PexOracle::new(f, rng).with_budget(budget)),
        }
    }

    pub fn flavor(&self) -> Flavor {
        match self {
            GameOracle::Mq(_) => Flavor::Mq,
            GameOracle::Pex(_) => Flavor::Pex,
        }
    }

    pub fn input_bits(&self) -> usize {
        match self {
            GameOracle::Mq(o) => o.input_bits(),
            GameOracle::Pex(o) => o.input_bits(),
        }
    }

    pub fn query(&mut self, x: &BitString) -> Result<ZqElement> {
        match self {
            GameOracle::Mq(o) => o.query(x),
            GameOracle::Pex(_) => Err(Error::UnsupportedQuery("membership")),
        }
    }

    pub fn sample(&mut self) -> Result<(BitString, ZqElement)> {
        match self {
            GameOracle::Mq(_) => Err(Error::UnsupportedQuery("random-example")),
            GameOracle::Pex(o) => o.sample(),
        }
    }

    pub fn query_count(&self) -> u64 {
        match self {
            GameOracle::Mq(o) => o.query_count(),
            GameOracle::Pex(o) => o.query_count(),
        }
    }
}

/// A distinguisher: returns `true` when it believes it faces the keyed
/// function.
pub trait Adversary {
    fn name(&self) -> &str;
    fn distinguish(&mut self, inst: &GroupInstance, oracle: &mut GameOracle, rng: &mut dyn RngCore) -> Result<bool>;
}

/// Outcome of [`run_distinguisher_game`].
#[derive(Clone, Debug, PartialEq)]
pub struct AdvantageEstimate {
    pub trials: u64,
    /// Acceptance rate against the keyed function.
    pub p_real: f64,
    /// Acceptance rate against a random function.
    pub p_random: f64,
    pub advantage: f64,
    pub ci_halfwidth: f64,
    /// Trials where the adversary overran its query budget; scored as
    /// rejections.
    pub invalid: u64,
}

/// Plays `cfg.trials` rounds, the first half (rounded up) against the keyed
/// function and the rest against a random function. Round `j` of each arm
/// uses the same instance.
pub fn run_distinguisher_game<A: Adversary + ?Sized>(
    adversary: &mut A,
    flavor: Flavor,
    cfg: &GameConfig,
) -> Result<AdvantageEstimate> {
    cfg.check()?;
    let real_trials = cfg.trials - cfg.trials / 2;
    let random_trials = cfg.trials / 2;
    let mut accepted = [0u64; 2];
    let mut invalid = 0;
    for (arm, count) in [real_trials, random_trials].into_iter().enumerate() {
        for j in 0..count {
            let inst = generate_instance(cfg.n, &mut cfg.rng("instance", j))?;
            let f: BoxedFunction = if arm == 0 {
                let key = PrfKey::random(&inst, &mut cfg.rng("key", j));
                Box::new(PrfFunction::new(inst.clone(), key))
            } else {
                Box::new(LazyRandomFunction::for_instance(&inst, cfg.rng("random-function", j)))
            };
            let index = 2 * j + arm as u64;
            let mut oracle = GameOracle::new(flavor, f, cfg.budget(), cfg.rng("examples", index));
            match adversary.distinguish(&inst, &mut oracle, &mut cfg.rng("adversary", index)) {
                Ok(true) => accepted[arm] += 1,
                Ok(false) => {}
                Err(Error::QueryBudgetExceeded(_)) => invalid += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let p_real = rate(accepted[0], real_trials);
    let p_random = rate(accepted[1], random_trials);
    Ok(AdvantageEstimate {
        trials: cfg.trials,
        p_real,
        p_random,
        advantage: p_real - p_random,
        ci_halfwidth: hoeffding_halfwidth(cfg.trials),
        invalid,
    })
}

fn random_input(n: usize, rng: &mut dyn RngCore) -> BitString {
    BitString::random(n, rng)
}

fn fresh_input(n: usize, used: &[BitString], rng: &mut dyn RngCore) -> BitString {
    loop {
        let x = random_input(n, rng);
        if !used.contains(&x) {
            return x;
        }
    }
}

/// Learns a key from one labelled point and checks the prediction at a
/// second, distinct point.
#[derive(Clone, Debug, Default)]
pub struct KeyLearnerAdversary {
    learner: KeyLearner,
}

impl KeyLearnerAdversary {
    pub fn new(learner: KeyLearner) -> Self {
        Self { learner }
    }
}

impl Adversary for KeyLearnerAdversary {
    fn name(&self) -> &str {
        "key-learner"
    }

    fn distinguish(&mut self, inst: &GroupInstance, oracle: &mut GameOracle, rng: &mut dyn RngCore) -> Result<bool> {
        let n = inst.bits();
        let (x1, y1, x2, y2) = match oracle.flavor() {
            Flavor::Mq => {
                let x1 = random_input(n, rng);
                let y1 = oracle.query(&x1)?;
                let x2 = fresh_input(n, core::slice::from_ref(&x1), rng);
                let y2 = oracle.query(&x2)?;
                (x1, y1, x2, y2)
            }
            Flavor::Pex => {
                let (x1, y1) = oracle.sample()?;
                let (x2, y2) = loop {
                    let (x, y) = oracle.sample()?;
                    if x != x1 {
                        break (x, y);
                    }
                };
                (x1, y1, x2, y2)
            }
        };
        let key = self.learner.learn_key(inst, &x1, &y1)?;
        Ok(prf_eval(inst, &key, &x2)? == y2)
    }
}

/// Ignores the oracle and always answers the same way.
#[derive(Clone, Copy, Debug)]
pub struct ConstantAdversary(pub bool);

impl Adversary for ConstantAdversary {
    fn name(&self) -> &str {
        "constant"
    }

    fn distinguish(&mut self, _: &GroupInstance, _: &mut GameOracle, _: &mut dyn RngCore) -> Result<bool> {
        Ok(self.0)
    }
}

/// Ignores the oracle and answers with a fair coin.
#[derive(Clone, Copy, Debug, Default)]
pub struct CoinFlipAdversary;

impl Adversary for CoinFlipAdversary {
    fn name(&self) -> &str {
        "coin-flip"
    }

    fn distinguish(&mut self, _: &GroupInstance, _: &mut GameOracle, rng: &mut dyn RngCore) -> Result<bool> {
        Ok(rng.gen())
    }
}

/// One round of the inference game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceTranscript {
    pub queries: Vec<(BitString, ZqElement)>,
    pub exam_string: BitString,
    /// The true value and the decoy, in presentation order. Absent when the
    /// exam string was rejected.
    pub exam_pair: Option<[ZqElement; 2]>,
    /// Position of the true value in `exam_pair`.
    pub true_index: Option<usize>,
    pub guess: Option<usize>,
    pub passed: bool,
    /// The strategy submitted a queried or malformed exam string.
    pub violation: bool,
}

/// An inference algorithm: queries the function, names a fresh exam string,
/// then picks which of two values is the true one.
pub trait InferenceStrategy {
    fn name(&self) -> &str;

    fn choose_exam(
        &mut self,
        inst: &GroupInstance,
        oracle: &mut MqOracle<BoxedFunction>,
        rng: &mut dyn RngCore,
    ) -> Result<BitString>;

    /// Index into `pair` of the value believed to be `F(k, exam)`.
    fn answer(&mut self, inst: &GroupInstance, exam: &BitString, pair: &[ZqElement; 2], rng: &mut dyn RngCore) -> usize;

    /// Called with the finished transcript.
    fn observe(&mut self, _transcript: &InferenceTranscript) {}
}

/// Outcome of [`run_inference_game`].
#[derive(Clone, Debug, PartialEq)]
pub struct InferenceEstimate {
    pub trials: u64,
    pub passed: u64,
    pub pass_rate: f64,
    pub ci_halfwidth: f64,
    pub violations: u64,
    /// Trials where the strategy overran its query budget; scored as fails.
    pub invalid: u64,
}

/// Plays round `index` of the inference game under `cfg`.
pub fn play_inference_round<S: InferenceStrategy + ?Sized>(
    strategy: &mut S,
    cfg: &GameConfig,
    index: u64,
) -> Result<InferenceTranscript> {
    let inst = generate_instance(cfg.n, &mut cfg.rng("inference-instance", index))?;
    let key = PrfKey::random(&inst, &mut cfg.rng("inference-key", index));
    let f: BoxedFunction = Box::new(PrfFunction::new(inst.clone(), key.clone()));
    let mut oracle = MqOracle::new(f).with_budget(cfg.budget());
    let mut strategy_rng = cfg.rng("inference-strategy", index);
    let exam = strategy.choose_exam(&inst, &mut oracle, &mut strategy_rng)?;
    let queries = oracle.transcript().to_vec();

    let mut transcript = InferenceTranscript {
        queries,
        exam_string: exam.clone(),
        exam_pair: None,
        true_index: None,
        guess: None,
        passed: false,
        violation: false,
    };
    if exam.len() != inst.bits() || oracle.was_queried(&exam) {
        transcript.violation = true;
        strategy.observe(&transcript);
        return Ok(transcript);
    }

    let mut exam_rng = cfg.rng("inference-exam", index);
    let truth = prf_eval(&inst, &key, &exam)?;
    let decoy = ZqElement(exam_rng.gen_biguint_range(&BigUint::from(1u32), &(inst.q() + 1u32)));
    let true_index = usize::from(exam_rng.gen::<bool>());
    let pair = if true_index == 0 {
        [truth.clone(), decoy.clone()]
    } else {
        [decoy.clone(), truth.clone()]
    };
    let guess = strategy.answer(&inst, &exam, &pair, &mut strategy_rng) & 1;
    // equal values cannot be told apart; such rounds are decided by a coin
    transcript.passed = if decoy == truth {
        exam_rng.gen()
    } else {
        guess == true_index
    };
    transcript.exam_pair = Some(pair);
    transcript.true_index = Some(true_index);
    transcript.guess = Some(guess);
    strategy.observe(&transcript);
    Ok(transcript)
}

/// Runs `cfg.trials` independent rounds of the inference game.
pub fn run_inference_game<S: InferenceStrategy + ?Sized>(strategy: &mut S, cfg: &GameConfig) -> Result<InferenceEstimate> {
    cfg.check()?;
    let mut passed = 0;
    let mut violations = 0;
    let mut invalid = 0;
    for i in 0..cfg.trials {
        match play_inference_round(strategy, cfg, i) {
            Ok(t) => {
                passed += u64::from(t.passed);
                violations += u64::from(t.violation);
            }
            Err(Error::QueryBudgetExceeded(_)) => invalid += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(InferenceEstimate {
        trials: cfg.trials,
        passed,
        pass_rate: rate(passed, cfg.trials),
        ci_halfwidth: hoeffding_halfwidth(cfg.trials),
        violations,
        invalid,
    })
}

/// Learns the key from one query, then answers with its own prediction.
#[derive(Clone, Debug, Default)]
pub struct KeyLearnerInference {
    learner: KeyLearner,
    key: Option<PrfKey>,
}

impl KeyLearnerInference {
    pub fn new(learner: KeyLearner) -> Self {
        Self { learner, key: None }
    }
}

impl InferenceStrategy for KeyLearnerInference {
    fn name(&self) -> &str {
        "key-learner"
    }

    fn choose_exam(
        &mut self,
        inst: &GroupInstance,
        oracle: &mut MqOracle<BoxedFunction>,
        rng: &mut dyn RngCore,
    ) -> Result<BitString> {
        let x = random_input(inst.bits(), rng);
        let y = oracle.query(&x)?;
        self.key = self.learner.learn_key(inst, &x, &y).ok();
        Ok(fresh_input(inst.bits(), &[x], rng))
    }

    fn answer(&mut self, inst: &GroupInstance, exam: &BitString, pair: &[ZqElement; 2], rng: &mut dyn RngCore) -> usize {
        let prediction = self.key.take().and_then(|k| prf_eval(inst, &k, exam).ok());
        match prediction {
            Some(v) if pair[0] == v => 0,
            Some(v) if pair[1] == v => 1,
            _ => usize::from(rng.gen::<bool>()),
        }
    }
}

/// Makes no queries and guesses uniformly.
#[derive(Clone, Copy, Debug, Default)]
pub struct RandomGuesser;

impl InferenceStrategy for RandomGuesser {
    fn name(&self) -> &str {
        "random"
    }

    fn choose_exam(
        &mut self,
        inst: &GroupInstance,
        _: &mut MqOracle<BoxedFunction>,
        rng: &mut dyn RngCore,
    ) -> Result<BitString> {
        Ok(random_input(inst.bits(), rng))
    }

    fn answer(&mut self, _: &GroupInstance, _: &BitString, _: &[ZqElement; 2], rng: &mut dyn RngCore) -> usize {
        usize::from(rng.gen::<bool>())
    }
}

/// Queries a point and submits that same point as its exam string.
#[derive(Clone, Copy, Debug, Default)]
pub struct Replayer;

impl InferenceStrategy for Replayer {
    fn name(&self) -> &str {
        "replay"
    }

    fn choose_exam(
        &mut self,
        inst: &GroupInstance,
        oracle: &mut MqOracle<BoxedFunction>,
        rng: &mut dyn RngCore,
    ) -> Result<BitString> {
        let x = random_input(inst.bits(), rng);
        oracle.query(&x)?;
        Ok(x)
    }

    fn answer(&mut self, _: &GroupInstance, _: &BitString, _: &[ZqElement; 2], _: &mut dyn RngCore) -> usize {
        0
    }
}

/// How simulated samples are laid out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SampleForm {
    /// `x || BIN_n(F(k, x))`.
    Kgen,
    /// The same followed by `BIN_n(p) || BIN_n(g) || BIN_n(g_a)`.
    #[default]
    Gen,
}

impl SampleForm {
    pub fn name(self) -> &'static str {
        match self {
            SampleForm::Kgen => "kgen",
            SampleForm::Gen => "gen",
        }
    }
}

/// A generator learner driven by a sample source.
pub trait GeneratorLearner {
    fn name(&self) -> &str;

    fn learn(
        &mut self,
        inst: &GroupInstance,
        form: SampleForm,
        sample: &mut dyn FnMut() -> Result<BitString>,
        epsilon: f64,
        delta: f64,
        rng: &mut dyn RngCore,
    ) -> Result<GeneratorSpec>;
}

/// Recovers the key from a single sample and returns the exact generator.
#[derive(Clone, Debug, Default)]
pub struct ExactKeyLearner {
    learner: KeyLearner,
}

impl ExactKeyLearner {
    pub fn new(learner: KeyLearner) -> Self {
        Self { learner }
    }
}

impl GeneratorLearner for ExactKeyLearner {
    fn name(&self) -> &str {
        "exact"
    }

    fn learn(
        &mut self,
        inst: &GroupInstance,
        form: SampleForm,
        sample: &mut dyn FnMut() -> Result<BitString>,
        _epsilon: f64,
        _delta: f64,
        _rng: &mut dyn RngCore,
    ) -> Result<GeneratorSpec> {
        let s = sample()?;
        match form {
            SampleForm::Gen => Ok(self.learner.learn_from_sample(&s)?.spec),
            SampleForm::Kgen => {
                let n = inst.bits();
                if s.len() != 2 * n {
                    return Err(Error::LengthMismatch {
                        expected: 2 * n,
                        actual: s.len(),
                    });
                }
                let fx = ZqElement::new(s.slice(n..2 * n).to_biguint(), inst.q())
                    .map_err(|_| Error::MalformedSample("label outside {1, ..., q}".into()))?;
                let key = self.learner.learn_key(inst, &s.slice(0..n), &fx)?;
                GeneratorSpec::kgen(inst, &key)
            }
        }
    }
}

/// Ignores its samples and returns the uniform distribution on `2n` bits.
#[derive(Clone, Copy, Debug, Default)]
pub struct UniformLearner;

impl GeneratorLearner for UniformLearner {
    fn name(&self) -> &str {
        "uniform"
    }

    fn learn(
        &mut self,
        inst: &GroupInstance,
        _: SampleForm,
        _: &mut dyn FnMut() -> Result<BitString>,
        _: f64,
        _: f64,
        _: &mut dyn RngCore,
    ) -> Result<GeneratorSpec> {
        Ok(GeneratorSpec::uniform(2 * inst.bits()))
    }
}

/// How each round of a [`KearnsReduction`] was decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CaseCounts {
    /// Fresh `x`, and `y` is the true value.
    pub a1: u64,
    /// Fresh `x`, and `y` is the decoy but not the true value.
    pub a2: u64,
    /// Fresh `x`, and `y` matches neither exam value.
    pub b: u64,
    /// `x` was already queried, or the learner failed.
    pub c: u64,
}

impl CaseCounts {
    pub fn total(&self) -> u64 {
        self.a1 + self.a2 + self.b + self.c
    }
}

#[derive(Clone, Debug)]
enum Plan {
    Predict(BigUint),
    Guess,
}

/// Inference strategy built from a generator learner.
///
/// Sample requests are answered by querying the function at uniform points;
/// the points used form the set `X`. One draw `x || y` from the learned
/// generator then decides the round: if `x` is fresh it becomes the exam
/// string and `y` the predicted value, otherwise a fresh string is chosen and
/// the answer is a coin flip.
pub struct KearnsReduction<L> {
    learner: L,
    form: SampleForm,
    epsilon: f64,
    delta: f64,
    plan: Plan,
    cases: CaseCounts,
    samples_used: u64,
}

impl<L: GeneratorLearner> KearnsReduction<L> {
    pub fn new(learner: L, epsilon: f64, delta: f64) -> Self {
        Self {
            learner,
            form: SampleForm::default(),
            epsilon,
            delta,
            plan: Plan::Guess,
            cases: CaseCounts::default(),
            samples_used: 0,
        }
    }

    pub fn with_form(mut self, form: SampleForm) -> Self {
        self.form = form;
        self
    }

    pub fn form(&self) -> SampleForm {
        self.form
    }

    pub fn cases(&self) -> CaseCounts {
        self.cases
    }

    /// Total simulated samples handed to the learner so far.
    pub fn samples_used(&self) -> u64 {
        self.samples_used
    }

    pub fn learner(&self) -> &L {
        &self.learner
    }
}

fn simulated_sample(
    inst: &GroupInstance,
    form: SampleForm,
    oracle: &mut MqOracle<BoxedFunction>,
    rng: &mut dyn RngCore,
) -> Result<BitString> {
    let n = inst.bits();
    let x = random_input(n, rng);
    let fx = oracle.query(&x)?;
    let mut s = x.concat(&crate::bits::bin_n(fx.value(), n)?);
    if form == SampleForm::Gen {
        s = s.concat(&crate::dist::encode_params(inst));
    }
    Ok(s)
}

impl<L: GeneratorLearner> InferenceStrategy for KearnsReduction<L> {
    fn name(&self) -> &str {
        "reduction"
    }

    fn choose_exam(
        &mut self,
        inst: &GroupInstance,
        oracle: &mut MqOracle<BoxedFunction>,
        rng: &mut dyn RngCore,
    ) -> Result<BitString> {
        let n = inst.bits();
        let form = self.form;
        let mut learn_rng = TaskRng::from_rng(&mut *rng).expect("ChaCha seeding is infallible");
        let mut sample_rng = TaskRng::from_rng(&mut *rng).expect("ChaCha seeding is infallible");
        let mut budget_error = None;
        let mut samples = 0u64;
        let learned = {
            let mut sample = || {
                samples += 1;
                simulated_sample(inst, form, oracle, &mut sample_rng).inspect_err(|e| {
                    if let Error::QueryBudgetExceeded(_) = e {
                        budget_error = Some(e.clone());
                    }
                })
            };
            self.learner
                .learn(inst, form, &mut sample, self.epsilon, self.delta, &mut learn_rng)
        };
        self.samples_used += samples;
        if let Some(e) = budget_error {
            return Err(e);
        }
        let used: Vec<BitString> = oracle.transcript().iter().map(|(x, _)| x.clone()).collect();

        let draw = learned.ok().and_then(|spec| {
            let seed = random_input(spec.seed_bits(), rng);
            spec.eval(&seed).ok().filter(|s| s.len() >= 2 * n)
        });
        match draw {
            Some(s) if !used.contains(&s.slice(0..n)) => {
                self.plan = Plan::Predict(s.slice(n..2 * n).to_biguint());
                Ok(s.slice(0..n))
            }
            _ => {
                self.plan = Plan::Guess;
                Ok(fresh_input(n, &used, rng))
            }
        }
    }

    fn answer(&mut self, _: &GroupInstance, _: &BitString, pair: &[ZqElement; 2], rng: &mut dyn RngCore) -> usize {
        match &self.plan {
            Plan::Predict(y) if pair[0].value() == y => 0,
            Plan::Predict(y) if pair[1].value() == y => 1,
            _ => usize::from(rng.gen::<bool>()),
        }
    }

    fn observe(&mut self, t: &InferenceTranscript) {
        let plan = core::mem::replace(&mut self.plan, Plan::Guess);
        let (Some(pair), Some(true_index)) = (&t.exam_pair, t.true_index) else {
            self.cases.c += 1;
            return;
        };
        match plan {
            Plan::Guess => self.cases.c += 1,
            Plan::Predict(y) if pair[true_index].value() == &y => self.cases.a1 += 1,
            Plan::Predict(y) if pair[1 - true_index].value() == &y => self.cases.a2 += 1,
            Plan::Predict(_) => self.cases.b += 1,
        }
    }
}

/// `1/2 + 1/(11 n^2)`, the pass rate a successful reduction must beat.
pub fn inference_threshold(n: u32) -> f64 {
    0.5 + 1.0 / (11.0 * f64::from(n) * f64::from(n))
}
