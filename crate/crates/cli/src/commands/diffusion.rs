//! `gmrotor classical-diffusion`: exact interval measures of
//! `{θ : |K·H̃′_n(θ)| < N}` with Monte-Carlo cross-checks, the
//! Fibonacci-sum search, and the step-value histogram against the
//! trinomial model.

use crate::config::{parse_u32_list, parse_u64_list, ModelArgs, OutputArgs};
use crate::output::{num, Report};
use anyhow::{anyhow, bail, Result};
use clap::Args;
use gmrotor_core::classical::{
    diffusion_measure_exact, diffusion_measure_montecarlo, diffusion_search,
    h_tilde_prime_distribution, trinomial_masses,
};
use gmrotor_core::goldenmean::{decompose, fibonacci_q};
use num_traits::ToPrimitive;
use serde_json::json;
use std::f64::consts::TAU;

/// Per-side branch probability implied by the limiting `δ_n`: each
/// composition with an even below-golden `q` moves `q²|r−r_n|/4 → 1/(4√5)`
/// of the circle one level up and the same down.
fn default_trinomial_delta() -> f64 {
    0.25 / 5f64.sqrt()
}

#[derive(Args, Debug)]
pub struct DiffusionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Momentum window N: the measure of {θ : |P_n(θ)| < N} is reported.
    #[arg(long, default_value_t = 5.0)]
    pub momentum_bound: f64,
    /// Explicit step counts, comma-separated.
    #[arg(long, conflicts_with_all = ["fib_indices", "search"])]
    pub steps_list: Option<String>,
    /// Fibonacci indices; the step count is the sum of their q's.
    #[arg(long, conflicts_with = "search")]
    pub fib_indices: Option<String>,
    /// Search Fibonacci sums for the smallest measure below the target.
    #[arg(long)]
    pub search: bool,
    /// Search target measure (radians).
    #[arg(long, default_value_t = 0.1 * TAU)]
    pub target_measure: f64,
    /// Search budget: largest step count considered.
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: u64,
    /// Monte-Carlo samples per row (0 disables the cross-check).
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Emit the step-value histogram for a single n instead of measures.
    #[arg(long)]
    pub histogram: bool,
    /// Add trinomial-model columns to the histogram.
    #[arg(long)]
    pub trinomial: bool,
    /// Per-side branch probability for the trinomial columns
    /// (default 1/(4√5), from the limiting δ_n).
    #[arg(long)]
    pub trinomial_delta: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn resolve_steps(args: &DiffusionArgs) -> Result<Vec<u64>> {
    if let Some(list) = &args.steps_list {
        let steps = parse_u64_list(list)?;
        if steps.contains(&0) {
            bail!("step counts must be at least 1");
        }
        return Ok(steps);
    }
    if let Some(list) = &args.fib_indices {
        let indices = parse_u32_list(list)?;
        let mut sum = 0u64;
        for &i in &indices {
            sum += fibonacci_q(i)
                .map_err(|e| anyhow!(e))?
                .to_u64()
                .ok_or_else(|| anyhow!("q_{i} exceeds u64"))?;
        }
        return Ok(vec![sum]);
    }
    bail!("one of --steps-list, --fib-indices, or --search is required")
}

pub fn run(args: DiffusionArgs) -> Result<bool> {
    let params = args.model.params()?;
    let mut metadata = json!({
        "model": args.model.metadata(),
        "momentum_bound": args.momentum_bound,
        "samples": args.samples,
        "seed": args.seed,
    });

    if args.histogram {
        let steps = resolve_steps(&args)?;
        let [n] = steps.as_slice() else {
            bail!("--histogram expects exactly one step count");
        };
        return histogram_report(&args, *n, params, metadata);
    }

    let mut search_result = None;
    let steps = if args.search {
        metadata["search"] = json!({
            "target_measure": args.target_measure,
            "max_steps": args.max_steps,
        });
        let result = diffusion_search(
            args.target_measure,
            args.max_steps,
            args.momentum_bound,
            &params,
        )?;
        let n = result.best_n;
        search_result = Some(result);
        vec![n]
    } else {
        resolve_steps(&args)?
    };

    let mut report = Report::new(
        "classical-diffusion",
        metadata,
        vec![
            "n",
            "momentum_bound",
            "exact_measure",
            "montecarlo_measure",
            "montecarlo_stderr",
        ],
    );
    if let Some(result) = &search_result {
        report.set_runtime(
            "search",
            json!({
                "achieved": result.achieved,
                "best_n": result.best_n,
                "best_measure": result.best_measure,
                "best_indices": result.best_indices,
                "candidates_evaluated": result.evaluated,
            }),
        );
    }
    for &n in &steps {
        let exact = diffusion_measure_exact(n, args.momentum_bound, &params)?;
        let (mc_est, mc_err) = if args.samples > 0 {
            let mc = diffusion_measure_montecarlo(
                n,
                args.momentum_bound,
                &params,
                args.samples,
                args.seed ^ n,
            );
            (num(mc.estimate), num(mc.stderr))
        } else {
            (serde_json::Value::Null, serde_json::Value::Null)
        };
        report.push(vec![
            json!(n),
            num(args.momentum_bound),
            num(exact),
            mc_est,
            mc_err,
        ]);
    }
    report.write(&args.out.output, args.out.format)?;
    Ok(false)
}

fn histogram_report(
    args: &DiffusionArgs,
    n: u64,
    params: gmrotor_core::classical::ModelParams,
    mut metadata: serde_json::Value,
) -> Result<bool> {
    let dist = h_tilde_prime_distribution(n, &params)?;
    let model = if args.trinomial {
        let delta = args.trinomial_delta.unwrap_or_else(default_trinomial_delta);
        let parts = decompose(n)?.len();
        metadata["trinomial"] = json!({"delta": delta, "compositions": parts});
        Some(trinomial_masses(parts, delta)?)
    } else {
        None
    };
    let mut report = Report::new(
        "classical-diffusion-histogram",
        metadata,
        vec!["value", "measure", "fraction", "trinomial_mass"],
    );
    for (value, measure) in dist {
        // The model walks in ±2 jumps; odd step values have no lattice
        // counterpart and get an empty model cell.
        let model_mass = match &model {
            Some(m) if value % 2 == 0 => num(m.mass(value / 2)),
            _ => serde_json::Value::Null,
        };
        report.push(vec![
            json!(value),
            num(measure),
            num(measure / TAU),
            model_mass,
        ]);
    }
    report.write(&args.out.output, args.out.format)?;
    Ok(false)
}
