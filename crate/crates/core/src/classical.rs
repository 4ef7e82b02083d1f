//! The classical kicked system `f = Φ∘κ` on the cylinder `T¹ × ℝ`.
//!
//! One step kicks the momentum by `−K·H′(θ)` (tent-map potential `H`) and
//! then rotates the angle by `λ`. Closed-form iterates reduce `n` steps to
//! the single step function `H̃′_n(θ) = Σ_{k<n} H′(θ+kλ)`, which this module
//! represents exactly as maximal constant intervals, and to the continuous
//! piecewise-linear kick sum `H_n(θ) = Σ_{k=1..n} H(θ−kλ)`.

use crate::error::{Error, Result};
use crate::fixed::{self, HALF_TURN};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Largest `n` for which the exact interval machinery will allocate
/// (`2n` breakpoints); beyond this the memory cost is prohibitive.
pub const MAX_EXACT_STEPS: u64 = 10_000_000;

const TAU_PER_TURN: f64 = TAU / 340282366920938463463374607431768211456.0; // 2π/2^128

/// Point `(θ, P)` on the cylinder; `θ` is kept normalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalState {
    pub theta: f64,
    pub momentum: f64,
}

impl ClassicalState {
    pub fn new(theta: f64, momentum: f64) -> Self {
        ClassicalState {
            theta: normalize_angle(theta),
            momentum,
        }
    }
}

/// Angle reduced to `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Model parameters: kick strength `K ≠ 0`, Planck constant `ħ > 0`, and
/// the rotation angle `λ = ωT` (stored normalized to `[0, 2π)`).
///
/// The kick duration `ε` of the Hamiltonian formulation cancels in the
/// time-`ε` map and is deliberately not a parameter. High-precision paths
/// never use the `f64` angle directly: the rotation is carried as a
/// 128-bit fixed-point fraction of a turn, exact to `2^-128` for the
/// golden and rational constructors.
#[derive(Clone, Copy, Debug)]
pub struct ModelParams {
    pub kick: f64,
    pub hbar: f64,
    pub lambda: f64,
    pub golden: bool,
    rot_turn: u128,
}

impl ModelParams {
    /// Golden-mean rotation: `λ/2π = (√5+1)/2` at full precision.
    pub fn golden(kick: f64, hbar: f64) -> Result<Self> {
        let rot = fixed::golden_frac_turn();
        Self::build(kick, hbar, fixed::turn_to_angle(rot), true, rot)
    }

    /// Rational rotation `λ = 2π·p/q` (resonance runs).
    pub fn rational(kick: f64, hbar: f64, p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::parameter("lambda", "rational denominator is zero"));
        }
        let rot = fixed::turn_from_ratio(p, q);
        Self::build(kick, hbar, fixed::turn_to_angle(rot), false, rot)
    }

    /// Arbitrary rotation angle in radians (limited to `f64` precision).
    pub fn with_lambda(kick: f64, hbar: f64, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::parameter("lambda", "must be finite"));
        }
        let norm = normalize_angle(lambda);
        let rot = fixed::turn_from_angle(norm);
        Self::build(kick, hbar, norm, false, rot)
    }

    fn build(kick: f64, hbar: f64, lambda: f64, golden: bool, rot_turn: u128) -> Result<Self> {
        if !kick.is_finite() || kick == 0.0 {
            return Err(Error::parameter("kick", "must be finite and nonzero"));
        }
        if !hbar.is_finite() || hbar <= 0.0 {
            return Err(Error::parameter("hbar", "must be finite and positive"));
        }
        Ok(ModelParams {
            kick,
            hbar,
            lambda,
            golden,
            rot_turn,
        })
    }

    /// Rotation per step as a fixed-point fraction of a turn.
    pub(crate) fn rotation_turn(&self) -> u128 {
        self.rot_turn
    }

    /// Phase strength `c = −K/ħ` of the quantized kick multiplier.
    pub fn kick_phase_strength(&self) -> f64 {
        -self.kick / self.hbar
    }
}

/// Tent-map potential: `θ−π/2` on `[0, π]`, `3π/2−θ` on `(π, 2π)`; mean zero.
pub fn tent(theta: f64) -> f64 {
    let t = normalize_angle(theta);
    if t <= PI {
        t - FRAC_PI_2
    } else {
        1.5 * PI - t
    }
}

/// `H′(θ)`: `+1` on the closed upper half `[0, π]`, `−1` on `(π, 2π)`.
/// The corner convention follows the `Im(z) ≥ 0` rule.
pub fn tent_slope(theta: f64) -> i32 {
    if normalize_angle(theta) <= PI {
        1
    } else {
        -1
    }
}

/// One step of `f = Φ∘κ`: kick first, then rotate.
pub fn step(s: ClassicalState, params: &ModelParams) -> ClassicalState {
    ClassicalState {
        theta: normalize_angle(s.theta + params.lambda),
        momentum: s.momentum - params.kick * f64::from(tent_slope(s.theta)),
    }
}

/// `n` repeated steps (plain composition; see [`h_tilde_prime_n`] for the
/// closed form that this must agree with).
pub fn iterate(s: ClassicalState, n: u64, params: &ModelParams) -> ClassicalState {
    let mut cur = s;
    for _ in 0..n {
        cur = step(cur, params);
    }
    cur
}

/// `H̃′_n(θ) = Σ_{k=0}^{n−1} H′(θ+kλ)`: an integer in `[−n, n]` with the
/// parity of `n`, satisfying `f^n(θ,P) = (θ+nλ, P − K·H̃′_n(θ))`.
/// `n = 0` is the empty sum.
pub fn h_tilde_prime_n(theta: f64, n: u64, params: &ModelParams) -> i64 {
    h_tilde_prime_turn(fixed::turn_from_angle(theta), n, params.rot_turn)
}

fn h_tilde_prime_turn(x0: u128, n: u64, rot: u128) -> i64 {
    let mut x = x0;
    let mut sum = 0i64;
    for _ in 0..n {
        sum += if fixed::is_upper_half(x) { 1 } else { -1 };
        x = x.wrapping_add(rot);
    }
    sum
}

// ---------------------------------------------------------------------------
// Exact step-function machinery
// ---------------------------------------------------------------------------

/// An integer-valued step function on the circle as maximal constant
/// intervals: `levels[i]` holds on `[positions[i], positions[i+1])`, the
/// last interval wrapping around to `positions[0]`.
struct StepProfile {
    positions: Vec<u128>,
    levels: Vec<i64>,
}

/// Breakpoints closer than this (in radians) are merged. Golden-mean
/// breakpoint gaps stay many orders of magnitude above it; the merge only
/// matters for rational rotations with coincident corners.
const MERGE_THRESHOLD_TURN: u128 = 54157620742477416759296; // 1e-15 rad / 2π · 2^128

fn build_step_profile(
    mut events: Vec<(u128, i32)>,
    level_at: impl Fn(u128) -> i64,
) -> StepProfile {
    debug_assert!(!events.is_empty());
    events.sort_unstable_by_key(|e| e.0);
    let mut positions: Vec<u128> = Vec::with_capacity(events.len());
    let mut jumps: Vec<i64> = Vec::with_capacity(events.len());
    for (pos, d) in events {
        match positions.last() {
            Some(&last) if pos.wrapping_sub(last) <= MERGE_THRESHOLD_TURN => {
                *jumps.last_mut().unwrap() += i64::from(d);
            }
            _ => {
                positions.push(pos);
                jumps.push(i64::from(d));
            }
        }
    }
    // Drop corners whose merged jumps cancel.
    let mut write = 0;
    for read in 0..positions.len() {
        if jumps[read] != 0 {
            positions[write] = positions[read];
            jumps[write] = jumps[read];
            write += 1;
        }
    }
    positions.truncate(write);
    jumps.truncate(write);
    if positions.is_empty() {
        // Constant function; evaluate anywhere.
        return StepProfile {
            positions: vec![0],
            levels: vec![level_at(1u128 << 64)],
        };
    }

    // Anchor the levels by evaluating strictly inside the widest interval,
    // where the pointwise corner conventions cannot interfere.
    let m = positions.len();
    let mut widest = 0usize;
    let mut widest_gap = 0u128;
    for i in 0..m {
        let gap = positions[(i + 1) % m].wrapping_sub(positions[i]);
        if gap > widest_gap {
            widest_gap = gap;
            widest = i;
        }
    }
    let sample = positions[widest].wrapping_add(widest_gap / 2);
    let mut prefix = Vec::with_capacity(m);
    let mut acc = 0i64;
    for &j in &jumps {
        acc += j;
        prefix.push(acc);
    }
    let base = level_at(sample) - prefix[widest];
    let levels = prefix.into_iter().map(|p| base + p).collect();
    StepProfile { positions, levels }
}

impl StepProfile {
    fn interval_angles(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let m = self.positions.len();
        (0..m).map(move |i| {
            let gap = self.positions[(i + 1) % m].wrapping_sub(self.positions[i]);
            // gap = 0 only for a single-interval (constant) profile,
            // where the interval is the whole circle.
            let angle = if gap == 0 {
                TAU
            } else {
                gap as f64 * TAU_PER_TURN
            };
            (self.levels[i], angle)
        })
    }
}

fn check_steps(n: u64) -> Result<()> {
    if n > MAX_EXACT_STEPS {
        return Err(Error::InvalidInput(format!(
            "step count {n} exceeds the exact-interval limit {MAX_EXACT_STEPS}"
        )));
    }
    Ok(())
}

fn h_tilde_profile(n: u64, rot: u128) -> StepProfile {
    // H′(θ+kλ) jumps +2 where θ+kλ crosses 0 and −2 where it crosses π.
    let mut events = Vec::with_capacity(2 * n as usize);
    let mut minus_k_rot = 0u128;
    for _ in 0..n {
        events.push((minus_k_rot, 2));
        events.push((minus_k_rot.wrapping_add(HALF_TURN), -2));
        minus_k_rot = minus_k_rot.wrapping_sub(rot);
    }
    build_step_profile(events, |x| h_tilde_prime_turn(x, n, rot))
}

/// Exact distribution of `H̃′_n` over the circle: pairs `(value, measure)`
/// with measures in radians summing to `2π`, sorted by value.
pub fn h_tilde_prime_distribution(n: u64, params: &ModelParams) -> Result<Vec<(i64, f64)>> {
    check_steps(n)?;
    if n == 0 {
        return Ok(vec![(0, TAU)]);
    }
    let profile = h_tilde_profile(n, params.rot_turn);
    let mut acc: BTreeMap<i64, f64> = BTreeMap::new();
    for (level, angle) in profile.interval_angles() {
        *acc.entry(level).or_insert(0.0) += angle;
    }
    Ok(acc.into_iter().collect())
}

/// Exact linear measure of `{θ : |K·H̃′_n(θ)| < N}` in `[0, 2π]`, computed
/// from the maximal-interval decomposition (no sampling involved).
pub fn diffusion_measure_exact(n: u64, momentum_bound: f64, params: &ModelParams) -> Result<f64> {
    let dist = h_tilde_prime_distribution(n, params)?;
    Ok(dist
        .iter()
        .filter(|(v, _)| (params.kick * *v as f64).abs() < momentum_bound)
        .map(|(_, angle)| angle)
        .sum())
}

/// Monte-Carlo estimate of the same measure (independent cross-check that
/// evaluates `H̃′_n` pointwise from its definition, never touching the
/// interval decomposition).
#[derive(Clone, Copy, Debug)]
pub struct MonteCarloMeasure {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

pub fn diffusion_measure_montecarlo(
    n: u64,
    momentum_bound: f64,
    params: &ModelParams,
    samples: u64,
    seed: u64,
) -> MonteCarloMeasure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<u128> = (0..samples)
        .map(|_| fixed::turn_from_unit(rng.gen::<f64>()))
        .collect();
    let kick = params.kick;
    let rot = params.rot_turn;
    let hits = points
        .par_iter()
        .filter(|&&x| (kick * h_tilde_prime_turn(x, n, rot) as f64).abs() < momentum_bound)
        .count() as u64;
    let p = hits as f64 / samples as f64;
    MonteCarloMeasure {
        estimate: TAU * p,
        stderr: TAU * (p * (1.0 - p) / samples as f64).sqrt(),
        hits,
        samples,
    }
}

/// Outcome of a search over Fibonacci-sum step counts for a small exact
/// diffusion measure.
#[derive(Clone, Debug)]
pub struct DiffusionSearch {
    /// Step count with the smallest measure found.
    pub best_n: u64,
    /// Its exact measure (radians).
    pub best_measure: f64,
    /// Fibonacci indices summing to `best_n` (the experiment parameter).
    pub best_indices: Vec<u32>,
    /// Number of candidate step counts evaluated.
    pub evaluated: usize,
    /// Whether `best_measure < target` was reached.
    pub achieved: bool,
}

/// Search sums of distinct Fibonacci numbers `q_n ≤ max_steps` for an
/// exact diffusion measure below `target`. Candidates follow the escape
/// recipe (subsets of the even `q_n`, which carry the `±2` intervals) plus
/// every single `q_n` and the prefix sums; they are evaluated in
/// increasing order of `n` and the search stops at the first success.
pub fn diffusion_search(
    target: f64,
    max_steps: u64,
    momentum_bound: f64,
    params: &ModelParams,
) -> Result<DiffusionSearch> {
    use num_traits::ToPrimitive;
    let mut qs: Vec<(u32, u64)> = Vec::new();
    for n in 1..90u32 {
        let q = crate::goldenmean::fibonacci_q(n)
            .expect("index >= 1")
            .to_u64()
            .unwrap_or(u64::MAX);
        if q > max_steps {
            break;
        }
        qs.push((n, q));
    }
    if qs.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no Fibonacci step counts at or below {max_steps}"
        )));
    }

    // Candidate index lists: subsets of the even q's, singletons, prefixes.
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    let evens: Vec<(u32, u64)> = qs.iter().copied().filter(|&(_, q)| q % 2 == 0).collect();
    for mask in 1u64..(1 << evens.len()) {
        let mut sum = 0u64;
        let mut idx = Vec::new();
        for (bit, &(n, q)) in evens.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                sum += q;
                idx.push(n);
            }
        }
        if sum <= max_steps {
            candidates.push(idx);
        }
    }
    for &(n, _) in &qs {
        candidates.push(vec![n]);
    }
    let mut prefix = Vec::new();
    let mut prefix_sum = 0u64;
    for &(n, q) in &qs {
        prefix_sum += q;
        prefix.push(n);
        if prefix_sum > max_steps {
            break;
        }
        candidates.push(prefix.clone());
    }

    let step_count = |idx: &[u32]| -> u64 {
        idx.iter()
            .map(|&n| qs.iter().find(|&&(m, _)| m == n).map(|&(_, q)| q).unwrap_or(0))
            .sum()
    };
    candidates.sort_by_key(|idx| step_count(idx));
    candidates.dedup_by_key(|idx| step_count(idx));

    let mut best: Option<DiffusionSearch> = None;
    let mut evaluated = 0usize;
    for idx in &candidates {
        let n = step_count(idx);
        if n == 0 || n > max_steps {
            continue;
        }
        let measure = diffusion_measure_exact(n, momentum_bound, params)?;
        evaluated += 1;
        let better = best
            .as_ref()
            .map(|b| measure < b.best_measure)
            .unwrap_or(true);
        if better {
            best = Some(DiffusionSearch {
                best_n: n,
                best_measure: measure,
                best_indices: idx.clone(),
                evaluated,
                achieved: measure < target,
            });
        }
        if measure < target {
            break;
        }
    }
    let mut result = best.expect("at least one candidate evaluated");
    result.evaluated = evaluated;
    Ok(result)
}

// ---------------------------------------------------------------------------
// Piecewise-linear kick sums
// ---------------------------------------------------------------------------

/// A continuous piecewise-linear function on the circle. `values[i]` is the
/// value at `breakpoints[i]`; `slopes[i]` holds on `[b_i, b_{i+1})`, with
/// the last interval wrapping.
#[derive(Clone, Debug)]
pub struct PiecewiseLinear {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty()
            || breakpoints.len() != values.len()
            || breakpoints.len() != slopes.len()
        {
            return Err(Error::InvalidInput(
                "piecewise-linear arrays must be nonempty and equally long".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1])
            || breakpoints[0] < 0.0
            || *breakpoints.last().unwrap() >= TAU
        {
            return Err(Error::InvalidInput(
                "breakpoints must be strictly increasing within [0, 2π)".into(),
            ));
        }
        Ok(PiecewiseLinear {
            breakpoints,
            values,
            slopes,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Linear interpolation at any angle.
    pub fn eval(&self, theta: f64) -> f64 {
        let t = normalize_angle(theta);
        let i = self.breakpoints.partition_point(|&b| b <= t);
        if i == 0 {
            let j = self.len() - 1;
            self.values[j] + self.slopes[j] * (t + TAU - self.breakpoints[j])
        } else {
            self.values[i - 1] + self.slopes[i - 1] * (t - self.breakpoints[i - 1])
        }
    }

    /// Supremum of `|f|`; attained at a breakpoint for piecewise-linear `f`.
    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_slope(&self) -> f64 {
        self.slopes.iter().fold(0.0, |m, s| m.max(s.abs()))
    }

    /// Integral over the full circle.
    pub fn integral(&self) -> f64 {
        let m = self.len();
        let mut acc = 0.0;
        for i in 0..m {
            let gap = if i + 1 < m {
                self.breakpoints[i + 1] - self.breakpoints[i]
            } else {
                self.breakpoints[0] + TAU - self.breakpoints[m - 1]
            };
            acc += self.values[i] * gap + self.slopes[i] * gap * gap / 2.0;
        }
        acc
    }
}

fn h_n_build(n: u64, params: &ModelParams) -> Result<(PiecewiseLinear, i64)> {
    check_steps(n)?;
    if n == 0 {
        return Err(Error::InvalidInput("H_n requires n ≥ 1".into()));
    }
    let rot = params.rot_turn;
    // Slope of H(θ−kλ) jumps +2 at θ ≡ kλ and −2 at θ ≡ kλ+π, k = 1..n.
    let mut events = Vec::with_capacity(2 * n as usize);
    let mut k_rot = 0u128;
    for _ in 0..n {
        k_rot = k_rot.wrapping_add(rot);
        events.push((k_rot, 2));
        events.push((k_rot.wrapping_add(HALF_TURN), -2));
    }
    let slope_at = |x: u128| {
        let mut y = x;
        let mut s = 0i64;
        for _ in 0..n {
            y = y.wrapping_sub(rot);
            s += if fixed::is_upper_half(y) { 1 } else { -1 };
        }
        s
    };
    let profile = build_step_profile(events, slope_at);
    let m = profile.positions.len();

    // Value at the first breakpoint by direct summation, then integrate
    // the integer slopes along exact fixed-point gaps.
    let mut v = 0.0;
    let mut y = profile.positions[0];
    for _ in 0..n {
        y = y.wrapping_sub(rot);
        v += tent(fixed::turn_to_angle(y));
    }
    let mut values = Vec::with_capacity(m);
    let mut breakpoints = Vec::with_capacity(m);
    let mut max_slope = 0i64;
    for i in 0..m {
        breakpoints.push(fixed::turn_to_angle(profile.positions[i]));
        values.push(v);
        let gap = profile.positions[(i + 1) % m].wrapping_sub(profile.positions[i]);
        v += profile.levels[i] as f64 * (gap as f64 * TAU_PER_TURN);
        max_slope = max_slope.max(profile.levels[i].abs());
    }
    debug_assert!(
        (v - values[0]).abs() < 1e-6,
        "H_n walk failed to close: drift {}",
        v - values[0]
    );
    let slopes = profile.levels.iter().map(|&l| l as f64).collect();
    Ok((PiecewiseLinear::new(breakpoints, values, slopes)?, max_slope))
}

/// Exact piecewise-linear representation of `H_n(θ) = Σ_{k=1..n} H(θ−kλ)`,
/// with at most `2n` breakpoints and integer slopes in `[−n, n]`.
pub fn h_n_exact(n: u64, params: &ModelParams) -> Result<PiecewiseLinear> {
    h_n_build(n, params).map(|(pl, _)| pl)
}

/// Exact supremum of `|H_{q_n}|` (golden rotation) with the largest
/// absolute slope, evaluated at the breakpoints of the exact representation.
#[derive(Clone, Copy, Debug)]
pub struct SupHqn {
    pub n: u32,
    pub q: u64,
    pub sup_abs: f64,
    pub max_abs_slope: i64,
}

pub fn sup_abs_hqn(n: u32, params: &ModelParams) -> Result<SupHqn> {
    use num_traits::ToPrimitive;
    let q = crate::goldenmean::fibonacci_q(n)?
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("q_{n} does not fit in 64 bits")))?;
    let (pl, max_abs_slope) = h_n_build(q, params)?;
    Ok(SupHqn {
        n,
        q,
        sup_abs: pl.sup_abs(),
        max_abs_slope,
    })
}

// ---------------------------------------------------------------------------
// Trinomial walk model
// ---------------------------------------------------------------------------

/// Masses `|E_{n,k}|`, `k ∈ [−n, n]`, of the idealized trinomial walk
/// `((1−2δ) + δx + δy)^n`: at each step mass `δ` moves to each neighbor.
#[derive(Clone, Debug)]
pub struct TrinomialModel {
    n: usize,
    delta: f64,
    masses: Vec<f64>,
}

impl TrinomialModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn mass(&self, k: i64) -> f64 {
        if k.unsigned_abs() as usize > self.n {
            0.0
        } else {
            self.masses[(k + self.n as i64) as usize]
        }
    }

    pub fn central_mass(&self) -> f64 {
        self.mass(0)
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let n = self.n as i64;
        self.masses.iter().enumerate().map(move |(i, &m)| (i as i64 - n, m))
    }
}

/// Masses after `n` steps via the recurrence
/// `m_{s+1,k} = (1−2δ)·m_{s,k} + δ·(m_{s,k−1} + m_{s,k+1})` from `m_{0,0}=1`.
pub fn trinomial_masses(n: usize, delta: f64) -> Result<TrinomialModel> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::parameter("delta", "must lie strictly in (0, 1/2)"));
    }
    let width = 2 * n + 1;
    let mut cur = vec![0.0f64; width];
    let mut next = vec![0.0f64; width];
    cur[n] = 1.0;
    let stay = 1.0 - 2.0 * delta;
    for _ in 0..n {
        for i in 0..width {
            let left = if i > 0 { cur[i - 1] } else { 0.0 };
            let right = if i + 1 < width { cur[i + 1] } else { 0.0 };
            next[i] = stay * cur[i] + delta * (left + right);
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(TrinomialModel {
        n,
        delta,
        masses: cur,
    })
}
