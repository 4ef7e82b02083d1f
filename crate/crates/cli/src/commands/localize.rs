//! `gmrotor quantum-localize`: long evolutions of an initial state with
//! per-row localization diagnostics `(n, u, norm_leak, region, theta, p)`.

use crate::config::{parse_initial_state, parse_method, ModelArgs, OutputArgs};
use crate::output::{num, Report};
use anyhow::Result;
use clap::Args;
use gmrotor_core::quantum::{
    default_grid_size, u_observable, Evolution, FloquetOperator, QuantumState,
};
use gmrotor_core::quasiconjugacy::{classify_region, p_of, theta_of, CLASSICAL_REGION_BANDWIDTH};
use serde_json::json;

#[derive(Args, Debug)]
pub struct LocalizeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Initial state: mode:M | gaussian:sigma=S[,center=C] | uniform.
    #[arg(long, default_value = "gaussian:sigma=5")]
    pub initial: String,
    /// Number of Floquet steps.
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    /// Truncation bandwidth M.
    #[arg(long, default_value_t = 1024)]
    pub bandwidth: usize,
    /// Multiplier bandwidth B (default 2M).
    #[arg(long)]
    pub mult_bandwidth: Option<usize>,
    /// Analysis grid size (default: smallest power of two ≥ 8M).
    #[arg(long)]
    pub grid_size: Option<usize>,
    /// Kick method: grid | convolution.
    #[arg(long, default_value = "grid")]
    pub method: String,
    /// Emit a row every this many steps (step 0 and the last always).
    #[arg(long, default_value_t = 100)]
    pub record_every: u64,
    /// Renormalize the state every this many steps (0 = never; the
    /// setting is echoed in the metadata either way).
    #[arg(long, default_value_t = 0)]
    pub renormalize_every: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: LocalizeArgs) -> Result<bool> {
    let params = args.model.params()?;
    let method = parse_method(&args.method)?;
    let mult_bandwidth = args.mult_bandwidth.unwrap_or(2 * args.bandwidth);
    let grid_size = args.grid_size.unwrap_or_else(|| default_grid_size(args.bandwidth));
    let initial = parse_initial_state(&args.initial, args.bandwidth)?;

    if args.bandwidth <= CLASSICAL_REGION_BANDWIDTH {
        eprintln!(
            "warning: bandwidth {} ≤ {CLASSICAL_REGION_BANDWIDTH}: the classical region \
             is empty by construction",
            args.bandwidth
        );
    }

    let op = FloquetOperator::with_grid_size(
        &params,
        args.bandwidth,
        mult_bandwidth,
        method,
        grid_size,
    )?;
    let tail_bound = op.multiplier().tail_bound();
    let mut evolution =
        Evolution::new(op, initial)?.with_renormalize_every(args.renormalize_every);

    let mut report = Report::new(
        "quantum-localize",
        json!({
            "model": args.model.metadata(),
            "initial": args.initial,
            "steps": args.steps,
            "bandwidth": args.bandwidth,
            "mult_bandwidth": mult_bandwidth,
            "grid_size": grid_size,
            "method": args.method,
            "record_every": args.record_every,
            "renormalize_every": args.renormalize_every,
            "multiplier_tail_bound": tail_bound,
        }),
        vec!["n", "u", "norm_leak", "region", "theta", "p"],
    );

    let every = args.record_every.max(1);
    let mut edge_warned = false;
    let mut record = |n: u64, state: &QuantumState, leak: f64| {
        report.push(vec![
            json!(n),
            json!(u_observable(state)),
            num(leak),
            json!(classify_region(state).to_string()),
            num(theta_of(state)),
            json!(p_of(state)),
        ]);
    };
    record(0, evolution.state(), 0.0);
    for n in 1..=args.steps {
        evolution.advance()?;
        if n % every == 0 || n == args.steps {
            let state = evolution.state();
            record(n, state, evolution.cumulative_leak());
            let edge = state.mass_beyond(args.bandwidth - args.bandwidth / 10);
            if edge > 1e-8 && !edge_warned {
                eprintln!(
                    "warning: edge mass {edge:.2e} at step {n}; consider a larger bandwidth"
                );
                edge_warned = true;
            }
        }
    }

    report.set_runtime("cumulative_norm_leak", num(evolution.cumulative_leak()));
    report.write(&args.out.output, args.out.format)?;
    Ok(false)
}
