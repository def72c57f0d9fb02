// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for the `ddhgen` library.
//!
//! Every command is a pure function of its flags and master seed, so the same
//! invocation always produces the same bytes.

pub mod formats;
pub mod suites;

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ddhgen::dist::{exact_table, gen_eval, kl_divergence, sample_oracle, DistTable, GeneratorSpec};
use ddhgen::games::{
    inference_threshold, run_distinguisher_game, run_inference_game, Adversary, CoinFlipAdversary, ConstantAdversary,
    ExactKeyLearner, Flavor, GameConfig, InferenceStrategy, KearnsReduction, KeyLearnerAdversary, KeyLearnerInference,
    RandomGuesser, Replayer, SampleForm, UniformLearner,
};
use ddhgen::learner::KeyLearner;
use ddhgen::numtheory::{generate_instance, DlogEngine, GroupInstance};
use ddhgen::seed::task_rng;
use ddhgen::PrfKey;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use formats::{CasesJson, GameReport};

#[derive(Debug, Parser)]
#[command(name = "ddhgen", version, about = "Experiments with DDH-based distribution classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Brute,
    #[default]
    Bsgs,
}

impl From<EngineArg> for DlogEngine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Brute => DlogEngine::Brute,
            EngineArg::Bsgs => DlogEngine::Bsgs,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Kgen,
    #[default]
    Gen,
}

impl From<FormArg> for SampleForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Kgen => SampleForm::Kgen,
            FormArg::Gen => SampleForm::Gen,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Game {
    Distinguish,
    Infer,
    Reduction,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum AdversaryArg {
    #[default]
    KeyLearner,
    Constant,
    CoinFlip,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    #[default]
    Mq,
    Pex,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    #[default]
    KeyLearner,
    Random,
    Replay,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum LearnerArg {
    #[default]
    Exact,
    Uniform,
}

/// Flags shared by every command.
#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Master seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a group instance with an n-bit safe prime
    Instance {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Draw samples x || BIN_n(F(k, x)) [|| parameters] for a key
    Sample {
        /// Instance JSON file
        #[arg(long)]
        instance: PathBuf,
        /// Key in 1..=q, decimal
        #[arg(long)]
        key: String,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, value_enum, default_value_t = FormArg::Gen)]
        form: FormArg,
        #[command(flatten)]
        common: Common,
    },
    /// Recover instance and key from a file of full-form samples
    Learn {
        /// Sample file, one bit string per line
        #[arg(long)]
        samples: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Bsgs)]
        engine: EngineArg,
        /// Report the KL divergence from the distribution under this key
        #[arg(long)]
        target_key: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the exact output distribution for a key
    Table {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        key: String,
        #[arg(long, value_enum, default_value_t = FormArg::Kgen)]
        form: FormArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run a distinguisher, inference or reduction game
    Game {
        #[arg(value_enum)]
        game: Game,
        #[arg(long, default_value_t = 8)]
        n: u32,
        #[arg(long, default_value_t = 400)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = AdversaryArg::KeyLearner)]
        adversary: AdversaryArg,
        #[arg(long, value_enum, default_value_t = FlavorArg::Mq)]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::KeyLearner)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = LearnerArg::Exact)]
        learner: LearnerArg,
        #[arg(long, value_enum, default_value_t = FormArg::Gen)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Bsgs)]
        engine: EngineArg,
        /// Per-trial query budget (default 10 n^2)
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run exhaustive invariant suites
    Verify {
        #[arg(long, value_enum, default_value_t = suites::Suite::All)]
        suite: suites::Suite,
        #[command(flatten)]
        common: Common,
    },
}

/// Rendered command output and the exit status it calls for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    /// 0 on success, 1 when a verification suite failed.
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &PathBuf) -> Result<GroupInstance> {
    formats::instance_from_json(&read(path)?).with_context(|| format!("loading {}", path.display()))
}

fn parse_key(inst: &GroupInstance, key: &str) -> Result<PrfKey> {
    let b: BigUint = key.parse().with_context(|| format!("key {key:?} is not a decimal integer"))?;
    PrfKey::new(inst, b).with_context(|| format!("key must lie in 1..={}", inst.q()))
}

fn generator(inst: &GroupInstance, key: &PrfKey, form: FormArg) -> Result<GeneratorSpec> {
    Ok(match form {
        FormArg::Kgen => GeneratorSpec::kgen(inst, key)?,
        FormArg::Gen => GeneratorSpec::gen(inst, key)?,
    })
}

/// Executes a parsed command, returning what should be written.
pub fn execute(command: &Command) -> Result<Output> {
    match command {
        Command::Instance { n, common } => {
            let inst = generate_instance(*n, &mut task_rng(common.seed, "instance", 0))?;
            Ok(Output::ok(match common.format {
                Format::Json => formats::instance_to_json(&inst),
                Format::Text => format!(
                    "n    = {}\np    = {}\nq    = {}\ng    = {}\ng^a  = {}\n",
                    inst.n(),
                    inst.p(),
                    inst.q(),
                    inst.g(),
                    inst.g_a()
                ),
            }))
        }
        Command::Sample {
            instance,
            key,
            count,
            form,
            common,
        } => {
            let inst = load_instance(instance)?;
            let key = parse_key(&inst, key)?;
            let spec = generator(&inst, &key, *form)?;
            let mut rng = task_rng(common.seed, "sample", 0);
            let samples: Vec<_> = (0..*count).map(|_| sample_oracle(&spec, &mut rng)).collect();
            Ok(Output::ok(formats::write_samples(&samples)))
        }
        Command::Learn {
            samples,
            engine,
            target_key,
            common,
        } => learn(samples, (*engine).into(), target_key.as_deref(), common.format),
        Command::Table {
            instance,
            key,
            form,
            common,
        } => {
            let inst = load_instance(instance)?;
            let key = parse_key(&inst, key)?;
            let table: DistTable<BigRational> = exact_table(&generator(&inst, &key, *form)?)?;
            Ok(Output::ok(match common.format {
                Format::Json => formats::table_to_json(&table),
                Format::Text => table.iter().map(|(x, p)| format!("{x} {p}\n")).collect(),
            }))
        }
        Command::Game { .. } => game(command),
        Command::Verify { suite, common } => {
            let report = suites::run(*suite, common.seed);
            let text = match common.format {
                Format::Json => formats::to_json(&report),
                Format::Text => {
                    let mut s: String = report
                        .checks
                        .iter()
                        .map(|c| format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                        .collect();
                    s.push_str(if report.passed { "all checks passed\n" } else { "verification FAILED\n" });
                    s
                }
            };
            Ok(Output {
                text,
                status: u8::from(!report.passed),
            })
        }
    }
}

#[derive(Serialize)]
struct LearnReport {
    n: u32,
    p: String,
    q: String,
    g: String,
    g_a: String,
    key: String,
    engine: &'static str,
    samples: usize,
    consistent: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    kl_to_target: Option<serde_json::Value>,
}

fn learn(path: &PathBuf, engine: DlogEngine, target_key: Option<&str>, format: Format) -> Result<Output> {
    let samples = formats::read_samples(&read(path)?)?;
    let learner = KeyLearner::new(engine);
    let learned = learner.learn_from_sample(&samples[0])?;
    let (inst, key) = (&learned.inst, &learned.key);
    let n = inst.bits();
    let consistent = samples
        .iter()
        .filter(|s| s.len() == 5 * n && gen_eval(inst, key, &s.slice(0..n)).ok().as_ref() == Some(*s))
        .count();
    let kl = match target_key {
        None => None,
        Some(k) => {
            let target = GeneratorSpec::gen(inst, &parse_key(inst, k)?)?;
            let kl = kl_divergence(&exact_table::<f64>(&target)?, &exact_table::<f64>(&learned.spec)?)?;
            Some(if kl.is_finite() {
                serde_json::json!(kl)
            } else {
                serde_json::json!("inf")
            })
        }
    };
    let report = LearnReport {
        n: inst.n(),
        p: inst.p().to_string(),
        q: inst.q().to_string(),
        g: inst.g().to_string(),
        g_a: inst.g_a().to_string(),
        key: key.value().to_string(),
        engine: engine.name(),
        samples: samples.len(),
        consistent,
        kl_to_target: kl,
    };
    Ok(Output::ok(match format {
        Format::Json => formats::to_json(&report),
        Format::Text => {
            let mut s = format!(
                "recovered key {} for p = {}, g = {}, g^a = {}\n{} of {} samples consistent\n",
                report.key, report.p, report.g, report.g_a, consistent, report.samples
            );
            if let Some(kl) = &report.kl_to_target {
                let kl = kl.as_str().map_or_else(|| kl.to_string(), str::to_string);
                s.push_str(&format!("kl to target: {kl}\n"));
            }
            s
        }
    }))
}

fn game(command: &Command) -> Result<Output> {
    let Command::Game {
        game,
        n,
        trials,
        adversary,
        flavor,
        strategy,
        learner,
        form,
        engine,
        budget,
        epsilon,
        delta,
        common,
    } = command
    else {
        unreachable!("game() is only called with Command::Game")
    };
    let mut cfg = GameConfig::new(*n, *trials, common.seed);
    if let Some(b) = budget {
        cfg = cfg.with_query_budget(*b);
    }
    let key_learner = KeyLearner::new((*engine).into());
    let mut report = GameReport {
        game: String::new(),
        n: *n,
        trials: *trials,
        p_real: 0.0,
        p_random: 0.0,
        advantage: 0.0,
        ci: 0.0,
        seed: common.seed,
        adversary: None,
        flavor: None,
        strategy: None,
        learner: None,
        form: None,
        query_budget: cfg.budget(),
        invalid: 0,
        violations: None,
        cases: None,
        threshold: None,
    };
    match game {
        Game::Distinguish => {
            let mut adv: Box<dyn Adversary> = match adversary {
                AdversaryArg::KeyLearner => Box::new(KeyLearnerAdversary::new(key_learner)),
                AdversaryArg::Constant => Box::new(ConstantAdversary(true)),
                AdversaryArg::CoinFlip => Box::new(CoinFlipAdversary),
            };
            let flavor = match flavor {
                FlavorArg::Mq => Flavor::Mq,
                FlavorArg::Pex => Flavor::Pex,
            };
            let est = run_distinguisher_game(adv.as_mut(), flavor, &cfg)?;
            report.game = "distinguish".into();
            report.p_real = est.p_real;
            report.p_random = est.p_random;
            report.advantage = est.advantage;
            report.ci = est.ci_halfwidth;
            report.invalid = est.invalid;
            report.adversary = Some(adv.name().to_string());
            report.flavor = Some(flavor.name().to_string());
        }
        Game::Infer => {
            let mut strat: Box<dyn InferenceStrategy> = match strategy {
                StrategyArg::KeyLearner => Box::new(KeyLearnerInference::new(key_learner)),
                StrategyArg::Random => Box::new(RandomGuesser),
                StrategyArg::Replay => Box::new(Replayer),
            };
            let est = run_inference_game(strat.as_mut(), &cfg)?;
            report.game = "infer".into();
            fill_inference(&mut report, &est);
            report.strategy = Some(strat.name().to_string());
        }
        Game::Reduction => {
            let (est, cases, name) = match learner {
                LearnerArg::Exact => {
                    let mut red = KearnsReduction::new(ExactKeyLearner::new(key_learner), *epsilon, *delta)
                        .with_form((*form).into());
                    (run_inference_game(&mut red, &cfg)?, red.cases(), "exact")
                }
                LearnerArg::Uniform => {
                    let mut red =
                        KearnsReduction::new(UniformLearner, *epsilon, *delta).with_form((*form).into());
                    (run_inference_game(&mut red, &cfg)?, red.cases(), "uniform")
                }
            };
            report.game = "reduction".into();
            fill_inference(&mut report, &est);
            report.learner = Some(name.to_string());
            report.form = Some(SampleForm::from(*form).name().to_string());
            report.cases = Some(CasesJson {
                a1: cases.a1,
                a2: cases.a2,
                b: cases.b,
                c: cases.c,
            });
            report.threshold = Some(inference_threshold(*n));
        }
    }
    Ok(Output::ok(match common.format {
        Format::Json => formats::to_json(&report),
        Format::Text => {
            let mut s = format!(
                "{} game, n = {}, {} trials: p_real {:.4}, p_random {:.4}, advantage {:.4} +/- {:.4}\n",
                report.game, report.n, report.trials, report.p_real, report.p_random, report.advantage, report.ci
            );
            if let Some(v) = report.violations {
                s.push_str(&format!("protocol violations: {v}\n"));
            }
            if let Some(c) = report.cases {
                s.push_str(&format!("cases: a1 {} a2 {} b {} c {}\n", c.a1, c.a2, c.b, c.c));
            }
            s
        }
    }))
}

/// Inference results map onto the common report with the pass rate as
/// `p_real` and the coin-flip baseline 1/2 as `p_random`.
fn fill_inference(report: &mut GameReport, est: &ddhgen::games::InferenceEstimate) {
    report.p_real = est.pass_rate;
    report.p_random = 0.5;
    report.advantage = est.pass_rate - 0.5;
    report.ci = est.ci_halfwidth;
    report.invalid = est.invalid;
    report.violations = Some(est.violations);
}

/// Runs a command and writes its output to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<u8> {
    let out = execute(&cli.command)?;
    let common = match &cli.command {
        Command::Instance { common, .. }
        | Command::Sample { common, .. }
        | Command::Learn { common, .. }
        | Command::Table { common, .. }
        | Command::Game { common, .. }
        | Command::Verify { common, .. } => common,
    };
    match &common.out {
        Some(path) => fs::write(path, &out.text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()) {
                bail!("writing stdout: {e}");
            }
        }
    }
    Ok(out.status)
}
