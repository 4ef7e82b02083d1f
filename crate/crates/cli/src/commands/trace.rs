//! `gmrotor trace`: correspondence-principle diagnostics comparing the
//! classical image `f^n(Λψ)` with the quantum projection `Λ(F^n ψ)`.
//! Purely diagnostic: gaps are reported, never asserted against a bound.

use crate::config::{parse_initial_state, parse_method, ModelArgs, OutputArgs};
use crate::output::{num, Report};
use anyhow::Result;
use clap::Args;
use gmrotor_core::quantum::{default_grid_size, FloquetOperator};
use gmrotor_core::quasiconjugacy::{correspondence_trace, DEFAULT_ITERATION_CAP};
use serde_json::json;

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Initial state: mode:M | gaussian:sigma=S[,center=C] | uniform.
    #[arg(long, default_value = "gaussian:sigma=5")]
    pub initial: String,
    /// Number of steps (the physically meaningful horizon is about 4·10⁴).
    #[arg(long, default_value_t = 1000)]
    pub steps: u64,
    #[arg(long, default_value_t = 256)]
    pub bandwidth: usize,
    #[arg(long)]
    pub mult_bandwidth: Option<usize>,
    #[arg(long)]
    pub grid_size: Option<usize>,
    /// Kick method: grid | convolution.
    #[arg(long, default_value = "grid")]
    pub method: String,
    #[arg(long, default_value_t = 10)]
    pub record_every: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: TraceArgs) -> Result<bool> {
    let params = args.model.params()?;
    let method = parse_method(&args.method)?;
    let mult_bandwidth = args.mult_bandwidth.unwrap_or(2 * args.bandwidth);
    let grid_size = args.grid_size.unwrap_or_else(|| default_grid_size(args.bandwidth));
    let initial = parse_initial_state(&args.initial, args.bandwidth)?;
    if args.steps > DEFAULT_ITERATION_CAP {
        eprintln!(
            "warning: {} steps exceed the physically meaningful horizon of {DEFAULT_ITERATION_CAP}",
            args.steps
        );
    }

    let op = FloquetOperator::with_grid_size(
        &params,
        args.bandwidth,
        mult_bandwidth,
        method,
        grid_size,
    )?;
    let trace = correspondence_trace(&initial, &op, &params, args.steps, args.record_every)?;

    let mut report = Report::new(
        "trace",
        json!({
            "model": args.model.metadata(),
            "initial": args.initial,
            "steps": args.steps,
            "bandwidth": args.bandwidth,
            "mult_bandwidth": mult_bandwidth,
            "grid_size": grid_size,
            "method": args.method,
            "record_every": args.record_every,
            "cumulative_norm_leak": trace.cumulative_leak,
        }),
        vec![
            "n",
            "classical_theta",
            "classical_p",
            "quantum_theta",
            "quantum_p",
            "angle_gap",
            "momentum_gap",
        ],
    );
    for s in &trace.steps {
        report.push(vec![
            json!(s.step),
            num(s.classical_image.theta),
            num(s.classical_image.momentum),
            num(s.quantum_projection.theta),
            num(s.quantum_projection.momentum),
            num(s.angle_gap),
            num(s.momentum_gap),
        ]);
    }
    report.write(&args.out.output, args.out.format)?;
    Ok(false)
}
