//! `gmrotor kick-coeffs`: dump the Fourier coefficients of the kick
//! multiplier `e^{icH(θ)}`.

use crate::config::OutputArgs;
use crate::output::{num, Report};
use anyhow::Result;
use clap::Args;
use gmrotor_core::quantum::kick_coeffs;
use serde_json::json;

#[derive(Args, Debug)]
pub struct KickArgs {
    /// Multiplier strength c (the Floquet step uses c = −K/ħ).
    #[arg(long)]
    pub strength: f64,
    /// Coefficient bandwidth B.
    #[arg(long, default_value_t = 256)]
    pub bandwidth: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: KickArgs) -> Result<bool> {
    let mult = kick_coeffs(args.strength, args.bandwidth);
    let mut report = Report::new(
        "kick-coeffs",
        json!({
            "strength": args.strength,
            "bandwidth": args.bandwidth,
            "tail_bound": mult.tail_bound(),
        }),
        vec!["m", "re", "im", "abs"],
    );
    for m in -(args.bandwidth as i64)..=args.bandwidth as i64 {
        let g = mult.coeff(m);
        report.push(vec![json!(m), num(g.re), num(g.im), num(g.norm())]);
    }
    report.write(&args.out.output, args.out.format)?;
    Ok(false)
}
