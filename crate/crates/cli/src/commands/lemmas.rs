//! `gmrotor lemmas`: pass/fail rows for the number-theoretic checks, with
//! the measured quantity, the bound, and the margin. Exits nonzero if any
//! row fails.

use crate::config::OutputArgs;
use crate::output::{num, Report};
use anyhow::{anyhow, bail, Result};
use clap::Args;
use gmrotor_core::classical::{sup_abs_hqn, ModelParams};
use gmrotor_core::goldenmean::{
    convergent, convergent_identities_hold, decompose, decomposition_length_bound, delta_n,
    fibonacci_q, halfcircle_count,
};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::f64::consts::TAU;

#[derive(Args, Debug)]
pub struct LemmasArgs {
    /// Which check to run: convergents, 4.1, 4.2, 4.3, or 4.4.
    #[arg(long)]
    pub selector: String,
    /// Largest convergent index (convergents, 4.1, 4.4).
    #[arg(long, default_value_t = 90)]
    pub max_index: u32,
    /// Largest integer decomposed / iterated (4.2, 4.3).
    #[arg(long, default_value_t = 1_000_000)]
    pub max_k: u64,
    /// Random angles per case (4.1, 4.3).
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn run(args: LemmasArgs) -> Result<bool> {
    let metadata = json!({
        "selector": args.selector,
        "max_index": args.max_index,
        "max_k": args.max_k,
        "samples": args.samples,
        "seed": args.seed,
    });
    let (report, violations) = match args.selector.as_str() {
        "convergents" => convergents_report(&args, metadata)?,
        "4.1" => halfcircle_fibonacci_report(&args, metadata)?,
        "4.2" => decomposition_report(&args, metadata)?,
        "4.3" => halfcircle_general_report(&args, metadata)?,
        "4.4" => envelope_report(&args, metadata)?,
        other => bail!("unknown selector `{other}` (expected convergents, 4.1, 4.2, 4.3, 4.4)"),
    };
    report.write(&args.out.output, args.out.format)?;
    Ok(violations)
}

fn pass_cell(ok: bool) -> serde_json::Value {
    json!(if ok { "pass" } else { "fail" })
}

fn convergents_report(
    args: &LemmasArgs,
    metadata: serde_json::Value,
) -> Result<(Report, bool)> {
    let mut report = Report::new(
        "lemmas-convergents",
        metadata,
        vec!["n", "q_n", "qsq_error", "bound", "margin", "identities", "pass"],
    );
    let mut violations = false;
    for n in 1..=args.max_index {
        let c = convergent(n)?;
        let ident_ok = convergent_identities_hold(n)?;
        // q²|r_n − r| against 1/2, exact in integers; reported as a float.
        let measured = delta_n(n)? * TAU;
        let bound_ok = n < 3 || c.error_qsq_less_than(1, 2);
        let ok = ident_ok && bound_ok;
        violations |= !ok;
        report.push(vec![
            json!(n),
            json!(c.q.to_string()),
            num(measured),
            num(0.5),
            num(0.5 - measured),
            json!(if ident_ok { "ok" } else { "broken" }),
            pass_cell(ok),
        ]);
    }
    Ok((report, violations))
}

fn halfcircle_fibonacci_report(
    args: &LemmasArgs,
    metadata: serde_json::Value,
) -> Result<(Report, bool)> {
    let mut report = Report::new(
        "lemmas-4.1",
        metadata,
        vec!["n", "q_n", "worst_deviation", "bound", "margin", "pass"],
    );
    let mut violations = false;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let thetas: Vec<f64> = (0..args.samples).map(|_| rng.gen::<f64>() * TAU).collect();
    for n in 1..=args.max_index {
        let q = fibonacci_q(n)?
            .to_u64()
            .ok_or_else(|| anyhow!("q_{n} exceeds u64"))?;
        if q > args.max_k {
            break;
        }
        let mut worst = 0.0f64;
        for &theta in &thetas {
            let c = halfcircle_count(theta, q) as f64;
            worst = worst.max((c - q as f64 / 2.0).abs());
        }
        let ok = worst <= 3.0;
        violations |= !ok;
        report.push(vec![
            json!(n),
            json!(q),
            num(worst),
            num(3.0),
            num(3.0 - worst),
            pass_cell(ok),
        ]);
    }
    Ok((report, violations))
}

fn decomposition_report(
    args: &LemmasArgs,
    metadata: serde_json::Value,
) -> Result<(Report, bool)> {
    let mut report = Report::new(
        "lemmas-4.2",
        metadata,
        vec!["k_from", "k_to", "cases", "worst_len_over_bound", "bound", "pass"],
    );
    let mut violations = false;
    let mut k_from = 2u64;
    while k_from <= args.max_k {
        let k_to = (k_from * 10 - 1).min(args.max_k);
        let mut worst = 0.0f64;
        let mut ok = true;
        for k in k_from..=k_to {
            let d = decompose(k)?;
            let valid = d.parts.iter().sum::<u64>() == k
                && d.parts.windows(2).all(|w| w[0] < w[1]);
            let ratio = d.len() as f64 / decomposition_length_bound(k);
            worst = worst.max(ratio);
            if !valid || ratio > 1.0 {
                ok = false;
            }
        }
        violations |= !ok;
        report.push(vec![
            json!(k_from),
            json!(k_to),
            json!(k_to - k_from + 1),
            num(worst),
            num(1.0),
            pass_cell(ok),
        ]);
        k_from = k_to + 1;
    }
    Ok((report, violations))
}

fn halfcircle_general_report(
    args: &LemmasArgs,
    metadata: serde_json::Value,
) -> Result<(Report, bool)> {
    let mut report = Report::new(
        "lemmas-4.3",
        metadata,
        vec!["k_from", "k_to", "samples", "worst_dev_over_bound", "bound", "pass"],
    );
    let mut violations = false;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut k_from = 2u64;
    while k_from <= args.max_k {
        let k_to = (k_from * 10 - 1).min(args.max_k);
        let mut worst = 0.0f64;
        for _ in 0..args.samples {
            let theta = rng.gen::<f64>() * TAU;
            let k = rng.gen_range(k_from..=k_to);
            let c = halfcircle_count(theta, k) as f64;
            let dev = (c - k as f64 / 2.0).abs();
            worst = worst.max(dev / (3.0 * decomposition_length_bound(k)));
        }
        let ok = worst <= 1.0;
        violations |= !ok;
        report.push(vec![
            json!(k_from),
            json!(k_to),
            json!(args.samples),
            num(worst),
            num(1.0),
            pass_cell(ok),
        ]);
        k_from = k_to + 1;
    }
    Ok((report, violations))
}

fn envelope_report(args: &LemmasArgs, metadata: serde_json::Value) -> Result<(Report, bool)> {
    let params = ModelParams::golden(1.0, 1.0).map_err(|e| anyhow!(e))?;
    let mut report = Report::new(
        "lemmas-4.4",
        metadata,
        vec![
            "n",
            "q_n",
            "sup_abs",
            "envelope_n_over_1.5^n",
            "fitted_c",
            "max_abs_slope",
            "slope_bound",
            "pass",
        ],
    );
    let mut violations = false;
    let max_index = args.max_index.min(24);
    for n in 1..=max_index {
        let s = sup_abs_hqn(n, &params).map_err(|e| anyhow!(e))?;
        let envelope = n as f64 / 1.5f64.powi(n as i32);
        let fitted_c = s.sup_abs / envelope;
        let ok = s.max_abs_slope <= 3;
        violations |= !ok;
        report.push(vec![
            json!(n),
            json!(s.q),
            num(s.sup_abs),
            num(envelope),
            num(fitted_c),
            json!(s.max_abs_slope),
            json!(3),
            pass_cell(ok),
        ]);
    }
    Ok((report, violations))
}
