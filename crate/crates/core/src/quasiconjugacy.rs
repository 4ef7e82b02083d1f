//! The map `Λ: M → N` from quantum states to the cylinder, the paired
//! observables `u` and `v`, region classification, and correspondence
//! traces comparing `f^n∘Λ` against `Λ∘F^n`.
//!
//! `Λ(ψ) = (θ(ψ), P(ψ))` where `θ(ψ)` is the median angle of `|ψ|²`
//! (measured from the admittedly arbitrary cut at `θ = 0`) and `P(ψ)` is
//! the one-sided median momentum index. Momentum is emitted as the integer
//! index `m` rather than the eigenvalue `mħ`, so `u`/`v` comparisons are
//! index against index.

use crate::classical::{ClassicalState, ModelParams};
use crate::error::Result;
use crate::fixed;
use crate::quantum::{self, FloquetOperator, QuantumState};
use std::f64::consts::TAU;
use std::fmt;

/// Symmetric bandwidth of the Quantum region mass test.
pub const QUANTUM_REGION_BANDWIDTH: usize = 20;
/// Bandwidth beyond which mass counts toward the Classical region.
pub const CLASSICAL_REGION_BANDWIDTH: usize = 200;
/// Mass threshold for both region tests.
pub const REGION_MASS_THRESHOLD: f64 = 0.9;

/// Iteration budget beyond which long-run behaviour stops being physically
/// meaningful (a kicked particle random-walking by `ħ` per step would
/// ionize in about this many steps).
pub const DEFAULT_ITERATION_CAP: u64 = 40_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionLabel {
    Quantum,
    SemiClassical,
    Classical,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Quantum => write!(f, "quantum"),
            RegionLabel::SemiClassical => write!(f, "semi-classical"),
            RegionLabel::Classical => write!(f, "classical"),
        }
    }
}

/// Exactly one label per state: Quantum when `Σ_{|n|≤20}|a_n|² > 0.9`,
/// Classical when `Σ_{|n|>200}|a_n|² > 0.9`, Semi-Classical otherwise.
/// (The two tests cannot both pass; their masses would sum past 1.)
pub fn classify_region(s: &QuantumState) -> RegionLabel {
    if s.mass_within(QUANTUM_REGION_BANDWIDTH) > REGION_MASS_THRESHOLD {
        RegionLabel::Quantum
    } else if s.mass_beyond(CLASSICAL_REGION_BANDWIDTH) > REGION_MASS_THRESHOLD {
        RegionLabel::Classical
    } else {
        RegionLabel::SemiClassical
    }
}

/// Median angle of `|ψ|²`: `sup{ζ : ∫_0^ζ |ψ|² < 1/2}`, from the cumulative
/// integral on the oversampled grid with linear interpolation per cell.
pub fn theta_of(s: &QuantumState) -> f64 {
    theta_of_with_grid(s, quantum::default_grid_size(s.bandwidth()))
}

pub fn theta_of_with_grid(s: &QuantumState, grid_size: usize) -> f64 {
    let samples = quantum::grid_samples(s, grid_size);
    let density: Vec<f64> = samples.iter().map(|c| c.norm_sqr()).collect();
    let g = density.len();
    // Circular trapezoid masses per cell; their sum equals Σρ_j exactly.
    let total: f64 = density.iter().sum();
    let target = total / 2.0;
    let mut cum = 0.0;
    for j in 0..g {
        let cell = (density[j] + density[(j + 1) % g]) / 2.0;
        if cum + cell >= target && cell > 0.0 {
            let frac = (target - cum) / cell;
            return TAU * (j as f64 + frac) / g as f64;
        }
        cum += cell;
    }
    TAU
}

/// `P(ψ) = sup{m : Σ_{n≤m}|a_n|² ≤ 1/2}`, always an integer. The sup is
/// applied literally, so a cumulative sum that sits exactly at 1/2 keeps
/// extending the set; [`p_of_detailed`] reports when that happened.
pub fn p_of(s: &QuantumState) -> i64 {
    p_of_detailed(s).0
}

/// `p_of` plus a flag marking an exact tie at mass 1/2.
pub fn p_of_detailed(s: &QuantumState) -> (i64, bool) {
    let band = s.bandwidth() as i64;
    let mut cum = 0.0;
    let mut best = -band - 1;
    let mut tie = false;
    for m in -band..=band {
        cum += s.coeff(m).norm_sqr();
        if cum <= 0.5 {
            best = m;
            if cum == 0.5 {
                tie = true;
            }
        } else {
            break;
        }
    }
    (best, tie)
}

/// `Λ(ψ) = (θ(ψ), P(ψ))`.
pub fn lambda_map(s: &QuantumState) -> ClassicalState {
    ClassicalState::new(theta_of(s), p_of(s) as f64)
}

/// `v(θ, P) = |P|`.
pub fn v_observable(s: &ClassicalState) -> f64 {
    s.momentum.abs()
}

/// Shortest arc distance between two angles, in `[0, π]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// One recorded comparison point of `f^n∘Λ` against `Λ∘F^n`.
#[derive(Clone, Copy, Debug)]
pub struct CorrespondenceStep {
    pub step: u64,
    /// `f^n(Λψ₀)`, computed in closed form with fixed-point angles.
    pub classical_image: ClassicalState,
    /// `Λ(F^n ψ₀)`.
    pub quantum_projection: ClassicalState,
    /// Shortest arc between the two angles.
    pub angle_gap: f64,
    /// `|ΔP|` between the two momenta (index units).
    pub momentum_gap: f64,
}

#[derive(Clone, Debug, Default)]
pub struct CorrespondenceTrace {
    pub steps: Vec<CorrespondenceStep>,
    pub cumulative_leak: f64,
}

/// Evolve `ψ` for `n_max` steps, recording every `record_every`-th step
/// (and always step 0 and `n_max`). Purely diagnostic: no bound is
/// asserted, the gaps are reported separately and never combined.
pub fn correspondence_trace(
    initial: &QuantumState,
    op: &FloquetOperator,
    params: &ModelParams,
    n_max: u64,
    record_every: u64,
) -> Result<CorrespondenceTrace> {
    let every = record_every.max(1);
    let start = lambda_map(initial);
    let rot = params.rotation_turn();
    let mut turn = fixed::turn_from_angle(start.theta);
    let mut kick_sum: i64 = 0;
    let mut state = initial.clone();
    let mut trace = CorrespondenceTrace::default();
    trace.steps.push(CorrespondenceStep {
        step: 0,
        classical_image: start,
        quantum_projection: start,
        angle_gap: 0.0,
        momentum_gap: 0.0,
    });
    for n in 1..=n_max {
        kick_sum += if fixed::is_upper_half(turn) { 1 } else { -1 };
        turn = turn.wrapping_add(rot);
        let out = op.step(&state)?;
        trace.cumulative_leak += out.leaked_mass;
        state = out.state;
        if n % every == 0 || n == n_max {
            let classical_image = ClassicalState::new(
                fixed::turn_to_angle(turn),
                start.momentum - params.kick * kick_sum as f64,
            );
            let quantum_projection = lambda_map(&state);
            trace.steps.push(CorrespondenceStep {
                step: n,
                classical_image,
                quantum_projection,
                angle_gap: angle_gap(classical_image.theta, quantum_projection.theta),
                momentum_gap: (classical_image.momentum - quantum_projection.momentum).abs(),
            });
        }
    }
    Ok(trace)
}
