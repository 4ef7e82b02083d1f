//! Shared argument groups and spec-string parsing.

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use gmrotor_core::classical::ModelParams;
use gmrotor_core::quantum::{KickMethod, QuantumState};
use serde_json::json;

/// Model parameters common to every experiment. λ is given as a named
/// rotation ("golden" or "rational:p/q"), never a free float, to avoid
/// silent near-resonances.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Kick strength K (nonzero).
    #[arg(long, default_value_t = 1.0)]
    pub kick: f64,
    /// Planck constant ħ (positive).
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Rotation angle: "golden" or "rational:p/q" (λ = 2π·p/q).
    #[arg(long, default_value = "golden")]
    pub lambda: String,
}

impl ModelArgs {
    pub fn params(&self) -> Result<ModelParams> {
        let spec = self.lambda.trim();
        let params = if spec.eq_ignore_ascii_case("golden") {
            ModelParams::golden(self.kick, self.hbar)
        } else if let Some(frac) = spec.strip_prefix("rational:") {
            let (p, q) = frac
                .split_once('/')
                .ok_or_else(|| anyhow!("rational rotation must be rational:p/q, got `{spec}`"))?;
            let p: u64 = p.trim().parse().context("rational numerator")?;
            let q: u64 = q.trim().parse().context("rational denominator")?;
            ModelParams::rational(self.kick, self.hbar, p, q)
        } else {
            bail!("lambda must be `golden` or `rational:p/q`, got `{spec}`");
        };
        params.map_err(|e| anyhow!(e))
    }

    pub fn metadata(&self) -> serde_json::Value {
        json!({
            "kick": self.kick,
            "hbar": self.hbar,
            "lambda": self.lambda,
        })
    }
}

/// Output destination and format.
#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output path, or "-" for stdout.
    #[arg(long, short, default_value = "-")]
    pub output: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = crate::output::Format::Csv)]
    pub format: crate::output::Format,
}

/// Initial quantum states: "mode:M", "gaussian:sigma=S[,center=C]",
/// "uniform" (flat coefficients across the band; the constant function on
/// the circle is "mode:0").
pub fn parse_initial_state(spec: &str, bandwidth: usize) -> Result<QuantumState> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("uniform") {
        return Ok(QuantumState::uniform_band(bandwidth));
    }
    if let Some(mode) = spec.strip_prefix("mode:") {
        let m: i64 = mode.trim().parse().context("mode index")?;
        return QuantumState::pure_mode(m, bandwidth).map_err(|e| anyhow!(e));
    }
    if let Some(rest) = spec.strip_prefix("gaussian:") {
        let mut sigma = None;
        let mut center = 0i64;
        for part in rest.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| anyhow!("gaussian spec expects key=value, got `{part}`"))?;
            match key.trim() {
                "sigma" => sigma = Some(value.trim().parse::<f64>().context("sigma")?),
                "center" => center = value.trim().parse().context("center")?,
                other => bail!("unknown gaussian key `{other}`"),
            }
        }
        let sigma = sigma.ok_or_else(|| anyhow!("gaussian spec requires sigma="))?;
        return QuantumState::gaussian(sigma, center, bandwidth).map_err(|e| anyhow!(e));
    }
    bail!("initial state must be mode:M, gaussian:sigma=S[,center=C], or uniform; got `{spec}`")
}

pub fn parse_method(spec: &str) -> Result<KickMethod> {
    match spec.trim().to_ascii_lowercase().as_str() {
        "grid" => Ok(KickMethod::Grid),
        "convolution" => Ok(KickMethod::Convolution),
        other => bail!("method must be `grid` or `convolution`, got `{other}`"),
    }
}

/// Comma-separated positive integers.
pub fn parse_u64_list(spec: &str) -> Result<Vec<u64>> {
    spec.split(',')
        .map(|s| s.trim().parse::<u64>().with_context(|| format!("bad integer `{s}`")))
        .collect()
}

pub fn parse_u32_list(spec: &str) -> Result<Vec<u32>> {
    spec.split(',')
        .map(|s| s.trim().parse::<u32>().with_context(|| format!("bad index `{s}`")))
        .collect()
}
