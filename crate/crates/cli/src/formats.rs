// SPDX-License-Identifier: Apache-2.0

//! On-disk formats: instance and learned-generator JSON, sample files (one
//! bit string per line), distribution tables and game reports.

use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use ddhgen::dist::{DistTable, Weight};
use ddhgen::{BitString, GroupInstance};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// A group instance with every number written in decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: u32,
    pub p: String,
    pub q: String,
    pub g: String,
    pub g_a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_secret: Option<String>,
}

fn decimal(field: &str, s: &str) -> Result<BigUint> {
    BigUint::from_str(s).with_context(|| format!("field {field}: {s:?} is not a decimal integer"))
}

impl InstanceFile {
    pub fn from_instance(inst: &GroupInstance) -> Self {
        Self {
            n: inst.n(),
            p: inst.p().to_string(),
            q: inst.q().to_string(),
            g: inst.g().to_string(),
            g_a: inst.g_a().to_string(),
            a_secret: inst.a_secret().map(ToString::to_string),
        }
    }

    /// Rebuilds and validates the instance.
    pub fn to_instance(&self) -> Result<GroupInstance> {
        let p = decimal("p", &self.p)?;
        let mut inst = GroupInstance::from_public(p, decimal("g", &self.g)?, decimal("g_a", &self.g_a)?)?;
        ensure!(inst.n() == self.n, "n = {} but p has {} bits", self.n, inst.n());
        ensure!(&decimal("q", &self.q)? == inst.q(), "q is not (p - 1) / 2");
        if let Some(a) = &self.a_secret {
            inst = inst.with_secret(decimal("a_secret", a)?)?;
        }
        Ok(inst)
    }
}

pub fn instance_to_json(inst: &GroupInstance) -> String {
    to_json(&InstanceFile::from_instance(inst))
}

pub fn instance_from_json(text: &str) -> Result<GroupInstance> {
    let file: InstanceFile = serde_json::from_str(text).context("malformed instance JSON")?;
    file.to_instance()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_samples(samples: &[BitString]) -> String {
    samples.iter().map(|s| format!("{s}\n")).collect()
}

/// Parses a sample file, skipping blank lines.
pub fn read_samples(text: &str) -> Result<Vec<BitString>> {
    let samples = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<BitString>()
                .with_context(|| format!("line {}", i + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    if samples.is_empty() {
        bail!("sample file contains no samples");
    }
    Ok(samples)
}

#[derive(Serialize)]
struct TableEntry {
    x: String,
    p: String,
}

#[derive(Serialize)]
struct TableFile {
    n_bits: usize,
    support: usize,
    entries: Vec<TableEntry>,
}

/// A table as `{n_bits, support, entries: [{x, p}]}` in lexicographic order;
/// `p` is written with `Display`, so rationals appear as `a/b`.
pub fn table_to_json<W: Weight + std::fmt::Display>(t: &DistTable<W>) -> String {
    to_json(&TableFile {
        n_bits: t.n_bits(),
        support: t.support_size(),
        entries: t
            .iter()
            .map(|(x, p)| TableEntry {
                x: x.to_string(),
                p: p.to_string(),
            })
            .collect(),
    })
}

/// Reduction case tallies.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CasesJson {
    pub a1: u64,
    pub a2: u64,
    pub b: u64,
    pub c: u64,
}

/// Result of a game run. The first eight fields are common to every game;
/// the rest appear only where they apply.
#[derive(Clone, Debug, Serialize)]
pub struct GameReport {
    pub game: String,
    pub n: u32,
    pub trials: u64,
    pub p_real: f64,
    pub p_random: f64,
    pub advantage: f64,
    pub ci: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adversary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub learner: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    pub query_budget: u64,
    pub invalid: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<CasesJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}
