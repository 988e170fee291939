//! Convergence study on synthetic Markov sources.
//!
//! For each source order `m`, the reference source is marginalized to order
//! `m`, sampled under several seeds, and every estimator is evaluated on
//! growing prefixes. Rows report the mean and spread across seeds next to the
//! exact entropy rate of the generating source.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::estimators::Method;
use crate::markov::{exact_entropy_rate, marginalize_to, sample, MarkovError, MarkovSourceSpec};
use crate::window::{build_plan, fmt_bits, summarize, sweep, EstimatorConfig, PlanParams};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub orders: Vec<usize>,
    pub ks: Vec<usize>,
    pub methods: Vec<Method>,
    pub n: usize,
    pub lengths: Vec<usize>,
    pub seeds: usize,
    pub base_seed: u64,
}

impl BenchmarkConfig {
    /// Orders 0..=3, context lengths 0..=4, all five methods, 20 seeds,
    /// prefixes of 50, 100, ..., 1000.
    pub fn full(base_seed: u64) -> Self {
        Self {
            orders: vec![0, 1, 2, 3],
            ks: vec![0, 1, 2, 3, 4],
            methods: Method::ALL.to_vec(),
            n: 1000,
            lengths: PlanParams::lengths_by_step(50, 1000),
            seeds: 20,
            base_seed,
        }
    }

    /// Order 3, context length 3, 5 seeds.
    pub fn quick(base_seed: u64) -> Self {
        Self {
            orders: vec![3],
            ks: vec![3],
            seeds: 5,
            ..Self::full(base_seed)
        }
    }

    pub fn configs(&self) -> Vec<EstimatorConfig> {
        let mut configs = Vec::new();
        for &method in &self.methods {
            match method {
                Method::Ep => configs.extend(self.ks.iter().map(|&k| EstimatorConfig::ep(k))),
                // ESD needs at least one context symbol
                Method::Esd => configs.extend(
                    self.ks
                        .iter()
                        .filter(|&&k| k > 0)
                        .map(|&k| EstimatorConfig::esd(k)),
                ),
                lz => configs.push(EstimatorConfig::lz(lz)),
            }
        }
        configs.sort();
        configs.dedup();
        configs
    }

    pub fn trial_seed(&self, order: usize, trial: usize) -> u64 {
        self.base_seed
            .wrapping_add((order as u64) << 32)
            .wrapping_add(trial as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub order: usize,
    pub method: Method,
    pub k: Option<usize>,
    pub window_length: usize,
    pub mean: f64,
    pub sd: f64,
    pub count: usize,
    /// Exact entropy rate of the order-`m` source.
    pub oracle: f64,
}

pub fn run_benchmark(
    source: &MarkovSourceSpec,
    config: &BenchmarkConfig,
) -> Result<Vec<BenchmarkRow>, MarkovError> {
    let configs = config.configs();
    let mut rows = Vec::new();
    for &order in &config.orders {
        let spec = marginalize_to(source, order)?;
        let oracle = exact_entropy_rate(&spec)?;
        let plan = build_plan(config.n, &PlanParams::growing(config.lengths.clone()))
            .map_err(|e| MarkovError::InvalidSpec(e.to_string()))?;
        let per_trial: Vec<_> = (0..config.seeds)
            .into_par_iter()
            .map(|trial| {
                let seq = sample(&spec, config.n, config.trial_seed(order, trial))?;
                Ok(sweep(&seq, &plan, &configs).records)
            })
            .collect::<Result<_, MarkovError>>()?;
        let records: Vec<_> = per_trial.into_iter().flatten().collect();
        if records.is_empty() {
            continue;
        }
        let stats = summarize(&records).expect("non-empty");
        rows.extend(stats.into_iter().map(|s| BenchmarkRow {
            order,
            method: s.method,
            k: s.k,
            window_length: s.window_length,
            mean: s.mean,
            sd: s.sd,
            count: s.count,
            oracle,
        }));
    }
    Ok(rows)
}

pub const BENCHMARK_HEADER: &str = "m,method,k,window_length,mean_bits,sd_bits,count,oracle_bits";

pub fn write_benchmark_csv<W: Write>(mut w: W, rows: &[BenchmarkRow]) -> std::io::Result<()> {
    writeln!(w, "{BENCHMARK_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.order,
            r.method,
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.window_length,
            fmt_bits(r.mean),
            fmt_bits(r.sd),
            r.count,
            fmt_bits(r.oracle)
        )?;
    }
    Ok(())
}
