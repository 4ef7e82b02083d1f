//! The quantized system `F = Φ′∘κ′` on truncated Fourier coefficient
//! vectors.
//!
//! A state is `ψ = Σ a_m e^{imθ}` with `|m| ≤ M` and `Σ|a_m|² = 1`; states
//! are projective (`ψ ~ e^{iα}ψ`). One Floquet step multiplies by the
//! unimodular kick `e^{icH(θ)}`, `c = −K/ħ`, and then rotates
//! `ψ(θ) ↦ ψ(θ−λ)`, i.e. `a_m ↦ a_m e^{−imλ}`. The kick is implemented two
//! independent ways — spectral convolution against analytically integrated
//! multiplier coefficients, and pointwise multiplication on an oversampled
//! grid — so each can certify the other. Mass pushed outside the band by
//! either route is reported as leak, never silently renormalized.

use crate::classical::{self, ModelParams, PiecewiseLinear};
use crate::error::{Error, Result};
use crate::fixed;
use crate::quasiconjugacy::{classify_region, RegionLabel};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

/// Truncated Fourier state over `m ∈ [−M, M]`, stored densely.
#[derive(Clone, Debug)]
pub struct QuantumState {
    bandwidth: usize,
    coeffs: Vec<Complex64>,
}

impl QuantumState {
    /// Build from raw coefficients (length must be odd, `2M+1`); the vector
    /// is normalized to unit mass.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) || coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "coefficient vector must have odd length 2M+1".into(),
            ));
        }
        let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::InvalidInput(
                "coefficient vector must have positive finite norm".into(),
            ));
        }
        let scale = norm_sq.sqrt().recip();
        let bandwidth = (coeffs.len() - 1) / 2;
        Ok(QuantumState {
            bandwidth,
            coeffs: coeffs.into_iter().map(|c| c * scale).collect(),
        })
    }

    /// Pure momentum eigenstate `a_{m0} = 1`.
    pub fn pure_mode(m0: i64, bandwidth: usize) -> Result<Self> {
        if m0.unsigned_abs() as usize > bandwidth {
            return Err(Error::Configuration(format!(
                "mode {m0} outside band [−{bandwidth}, {bandwidth}]"
            )));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * bandwidth + 1];
        coeffs[(m0 + bandwidth as i64) as usize] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { bandwidth, coeffs })
    }

    /// Gaussian coefficient profile `a_m ∝ exp(−(m−c)²/(4σ²))`.
    pub fn gaussian(sigma: f64, center: i64, bandwidth: usize) -> Result<Self> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::parameter("sigma", "must be positive"));
        }
        let coeffs = (0..2 * bandwidth + 1)
            .map(|i| {
                let m = i as i64 - bandwidth as i64;
                let d = (m - center) as f64;
                Complex64::new((-d * d / (4.0 * sigma * sigma)).exp(), 0.0)
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Flat coefficient profile over the whole band.
    pub fn uniform_band(bandwidth: usize) -> Self {
        let v = ((2 * bandwidth + 1) as f64).sqrt().recip();
        QuantumState {
            bandwidth,
            coeffs: vec![Complex64::new(v, 0.0); 2 * bandwidth + 1],
        }
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `a_m` (zero outside the band).
    pub fn coeff(&self, m: i64) -> Complex64 {
        let i = m + self.bandwidth as i64;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ_{|n| ≤ j} |a_n|²`.
    pub fn mass_within(&self, j: usize) -> f64 {
        let m = self.bandwidth;
        let j = j.min(m);
        let lo = m - j;
        let hi = m + j;
        self.coeffs[lo..=hi].iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ_{|n| > j} |a_n|²` (within the band).
    pub fn mass_beyond(&self, j: usize) -> f64 {
        if j >= self.bandwidth {
            0.0
        } else {
            self.norm_sq() - self.mass_within(j)
        }
    }

    /// Free rotation `Φ′`: `a_m ↦ a_m e^{−imλ}`; exactly norm-preserving.
    pub fn apply_rotation(&self, lambda: f64) -> Self {
        let m = self.bandwidth as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * Complex64::from_polar(1.0, -(i as i64 - m) as f64 * lambda))
            .collect();
        QuantumState {
            bandwidth: self.bandwidth,
            coeffs,
        }
    }

    pub fn renormalized(&self) -> Self {
        let scale = self.norm_sq().sqrt().recip();
        QuantumState {
            bandwidth: self.bandwidth,
            coeffs: self.coeffs.iter().map(|&c| c * scale).collect(),
        }
    }

    /// Projective (phase-free) L² distance `min_α ‖ψ̂ − e^{iα}φ̂‖` for the
    /// normalized states. The optimal phase is applied explicitly and the
    /// difference vector summed directly, which stays accurate well below
    /// the `√ε` floor of the `2(1−|⟨ψ̂,φ̂⟩|)` shortcut.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let band = self.bandwidth.max(other.bandwidth) as i64;
        let mut inner = Complex64::new(0.0, 0.0);
        for m in -band..=band {
            inner += self.coeff(m).conj() * other.coeff(m);
        }
        let na = self.norm_sq().sqrt();
        let nb = other.norm_sq().sqrt();
        let phase = if inner.norm() > 0.0 {
            inner.conj() / inner.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut diff_sq = 0.0;
        for m in -band..=band {
            diff_sq += (self.coeff(m) / na - phase * other.coeff(m) / nb).norm_sqr();
        }
        diff_sq.sqrt()
    }
}

/// Observable `u(ψ)`: the largest `m ≥ 0` with `Σ_{|n|≤m}|a_n|² ≤ 1/2`,
/// or `−1` when already `|a_0|² > 1/2` (the sup of an empty set, resolved
/// literally rather than patched).
pub fn u_observable(s: &QuantumState) -> i64 {
    let mid = s.bandwidth;
    let mut cum = s.coeffs[mid].norm_sqr();
    if cum > 0.5 {
        return -1;
    }
    let mut u = 0i64;
    for j in 1..=mid {
        cum += s.coeffs[mid + j].norm_sqr() + s.coeffs[mid - j].norm_sqr();
        if cum <= 0.5 {
            u = j as i64;
        } else {
            break;
        }
    }
    u
}

// ---------------------------------------------------------------------------
// Kick multiplier
// ---------------------------------------------------------------------------

/// Fourier coefficients `g_m` of the unimodular multiplier `e^{icH(θ)}`,
/// truncated to `|m| ≤ B`, with a certified bound on the discarded mass.
#[derive(Clone, Debug)]
pub struct KickMultiplier {
    strength: f64,
    bandwidth: usize,
    coeffs: Vec<Complex64>,
    tail_bound: f64,
}

impl KickMultiplier {
    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, m: i64) -> Complex64 {
        let i = m + self.bandwidth as i64;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i as usize]
        }
    }

    /// `1 − Σ_{|m|≤B}|g_m|²`: by Parseval, the L² mass of the discarded
    /// coefficients of the (exactly unimodular) multiplier.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }
}

/// `∫_{t0}^{t1} e^{iat} dt`, stable for all `a` (the `e^{id}−1` factor is
/// assembled from `sin²(d/2)` so nothing cancels), exact at `a = 0`.
fn int_exp(a: f64, t0: f64, t1: f64) -> Complex64 {
    if a == 0.0 {
        return Complex64::new(t1 - t0, 0.0);
    }
    let d = a * (t1 - t0);
    let half = 0.5 * d;
    let em1 = Complex64::new(-2.0 * half.sin() * half.sin(), d.sin());
    Complex64::from_polar(1.0, a * t0) * em1 / Complex64::new(0.0, a)
}

/// Closed-form coefficients of `e^{icH(θ)}` for the tent potential:
/// `g_m = (1/2π)[∫_0^π e^{ic(θ−π/2)}e^{−imθ}dθ + ∫_π^{2π} e^{ic(3π/2−θ)}e^{−imθ}dθ]`.
/// The degenerate branches `m = ±c` (integer `c`) fall out of the exact
/// `a = 0` case of the elementary integral.
pub fn kick_coeffs(c: f64, bandwidth: usize) -> KickMultiplier {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * bandwidth + 1];
    if c == 0.0 {
        coeffs[bandwidth] = Complex64::new(1.0, 0.0);
        return KickMultiplier {
            strength: c,
            bandwidth,
            coeffs,
            tail_bound: 0.0,
        };
    }
    let up_phase = Complex64::from_polar(1.0, -c * FRAC_PI_2);
    let down_phase = Complex64::from_polar(1.0, 3.0 * c * FRAC_PI_2);
    let mut captured = 0.0;
    for (i, slot) in coeffs.iter_mut().enumerate() {
        let m = i as i64 - bandwidth as i64;
        let g = (up_phase * int_exp(c - m as f64, 0.0, PI)
            + down_phase * int_exp(-(c + m as f64), PI, TAU))
            / TAU;
        captured += g.norm_sqr();
        *slot = g;
    }
    KickMultiplier {
        strength: c,
        bandwidth,
        coeffs,
        tail_bound: (1.0 - captured).max(0.0),
    }
}

// ---------------------------------------------------------------------------
// Kick application
// ---------------------------------------------------------------------------

/// How the kick multiplier is applied to a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KickMethod {
    /// Spectral convolution against the analytic coefficients.
    Convolution,
    /// Pointwise multiplication on an oversampled grid, with the potential
    /// evaluated exactly (no sampled series), then re-analysis.
    Grid,
}

/// Result of a kick or full step: the truncated state and the mass that the
/// truncation discarded.
#[derive(Clone, Debug)]
pub struct KickOutcome {
    pub state: QuantumState,
    pub leaked_mass: f64,
}

/// Default analysis grid: the smallest power of two ≥ 8M.
pub fn default_grid_size(bandwidth: usize) -> usize {
    (8 * bandwidth.max(4)).next_power_of_two()
}

struct GridEngine {
    size: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl GridEngine {
    fn new(size: usize) -> GridEngine {
        let mut planner = FftPlanner::new();
        GridEngine {
            size,
            forward: planner.plan_fft_forward(size),
            inverse: planner.plan_fft_inverse(size),
        }
    }

    /// `ψ(θ_j) = Σ_m a_m e^{imθ_j}` on the uniform grid `θ_j = 2πj/G`.
    fn synthesize(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let g = self.size as i64;
        let band = (coeffs.len() as i64 - 1) / 2;
        let mut buf = vec![Complex64::new(0.0, 0.0); self.size];
        for (i, &c) in coeffs.iter().enumerate() {
            let m = i as i64 - band;
            buf[m.rem_euclid(g) as usize] = c;
        }
        self.inverse.process(&mut buf);
        buf
    }

    /// Inverse of [`Self::synthesize`]: band-limited coefficients plus the
    /// mass found outside the band.
    fn analyze(&self, mut buf: Vec<Complex64>, bandwidth: usize) -> (Vec<Complex64>, f64) {
        self.forward.process(&mut buf);
        let g = self.size as i64;
        let scale = 1.0 / self.size as f64;
        let total: f64 = buf.iter().map(|c| (c * scale).norm_sqr()).sum();
        let coeffs: Vec<Complex64> = (-(bandwidth as i64)..=bandwidth as i64)
            .map(|m| buf[m.rem_euclid(g) as usize] * scale)
            .collect();
        let band_mass: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        (coeffs, (total - band_mass).max(0.0))
    }
}

fn convolve_kick(s: &QuantumState, mult: &KickMultiplier) -> KickOutcome {
    let m = s.bandwidth as i64;
    let b = mult.bandwidth as i64;
    let out_band = m + b;
    let mut full = vec![Complex64::new(0.0, 0.0); (2 * out_band + 1) as usize];
    for (ki, &a) in s.coeffs.iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let k = ki as i64 - m;
        for (ji, &g) in mult.coeffs.iter().enumerate() {
            let j = ji as i64 - b;
            full[(k + j + out_band) as usize] += g * a;
        }
    }
    let band: Vec<Complex64> = full[(out_band - m) as usize..=(out_band + m) as usize].to_vec();
    let total: f64 = full.iter().map(|c| c.norm_sqr()).sum();
    let band_mass: f64 = band.iter().map(|c| c.norm_sqr()).sum();
    KickOutcome {
        state: QuantumState {
            bandwidth: s.bandwidth,
            coeffs: band,
        },
        leaked_mass: (total - band_mass).max(0.0),
    }
}

fn grid_kick(s: &QuantumState, engine: &GridEngine, samples: &[Complex64]) -> KickOutcome {
    let mut buf = engine.synthesize(&s.coeffs);
    for (v, &m) in buf.iter_mut().zip(samples) {
        *v *= m;
    }
    let (coeffs, leaked_mass) = engine.analyze(buf, s.bandwidth);
    KickOutcome {
        state: QuantumState {
            bandwidth: s.bandwidth,
            coeffs,
        },
        leaked_mass,
    }
}

fn multiplier_samples(c: f64, grid_size: usize) -> Vec<Complex64> {
    (0..grid_size)
        .map(|j| {
            let theta = TAU * j as f64 / grid_size as f64;
            Complex64::from_polar(1.0, c * classical::tent(theta))
        })
        .collect()
}

fn validate_grid(grid_size: usize, bandwidth: usize) -> Result<()> {
    if !grid_size.is_power_of_two() || grid_size < 2 * bandwidth + 2 {
        return Err(Error::Configuration(format!(
            "grid size {grid_size} must be a power of two larger than the band 2·{bandwidth}+1"
        )));
    }
    Ok(())
}

/// Apply one kick by either method; the grid variant uses the default
/// oversampling. Prefer [`FloquetOperator`] when stepping repeatedly.
pub fn apply_kick(
    s: &QuantumState,
    mult: &KickMultiplier,
    method: KickMethod,
) -> Result<KickOutcome> {
    apply_kick_with_grid(s, mult, method, default_grid_size(s.bandwidth))
}

pub fn apply_kick_with_grid(
    s: &QuantumState,
    mult: &KickMultiplier,
    method: KickMethod,
    grid_size: usize,
) -> Result<KickOutcome> {
    match method {
        KickMethod::Convolution => Ok(convolve_kick(s, mult)),
        KickMethod::Grid => {
            validate_grid(grid_size, s.bandwidth)?;
            let engine = GridEngine::new(grid_size);
            let samples = multiplier_samples(mult.strength, grid_size);
            Ok(grid_kick(s, &engine, &samples))
        }
    }
}

// ---------------------------------------------------------------------------
// Floquet step and evolution
// ---------------------------------------------------------------------------

/// One period of the quantum evolution with everything precomputed:
/// multiplier coefficients, grid samples of the exact potential, and the
/// rotation phase table.
pub struct FloquetOperator {
    bandwidth: usize,
    method: KickMethod,
    multiplier: KickMultiplier,
    lambda: f64,
    rotation_phases: Vec<Complex64>,
    grid: Option<(GridEngine, Vec<Complex64>)>,
}

impl FloquetOperator {
    pub fn new(
        params: &ModelParams,
        bandwidth: usize,
        mult_bandwidth: usize,
        method: KickMethod,
    ) -> Result<Self> {
        Self::with_grid_size(
            params,
            bandwidth,
            mult_bandwidth,
            method,
            default_grid_size(bandwidth),
        )
    }

    pub fn with_grid_size(
        params: &ModelParams,
        bandwidth: usize,
        mult_bandwidth: usize,
        method: KickMethod,
        grid_size: usize,
    ) -> Result<Self> {
        let c = params.kick_phase_strength();
        let multiplier = kick_coeffs(c, mult_bandwidth);
        let grid = match method {
            KickMethod::Convolution => None,
            KickMethod::Grid => {
                validate_grid(grid_size, bandwidth)?;
                Some((GridEngine::new(grid_size), multiplier_samples(c, grid_size)))
            }
        };
        let m = bandwidth as i64;
        let rotation_phases = (-m..=m)
            .map(|k| Complex64::from_polar(1.0, -k as f64 * params.lambda))
            .collect();
        Ok(FloquetOperator {
            bandwidth,
            method,
            multiplier,
            lambda: params.lambda,
            rotation_phases,
            grid,
        })
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn method(&self) -> KickMethod {
        self.method
    }

    pub fn multiplier(&self) -> &KickMultiplier {
        &self.multiplier
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `F = Φ′∘κ′`: kick, then rotate.
    pub fn step(&self, s: &QuantumState) -> Result<KickOutcome> {
        if s.bandwidth != self.bandwidth {
            return Err(Error::Configuration(format!(
                "state bandwidth {} does not match operator bandwidth {}",
                s.bandwidth, self.bandwidth
            )));
        }
        let mut out = match (&self.method, &self.grid) {
            (KickMethod::Convolution, _) => convolve_kick(s, &self.multiplier),
            (KickMethod::Grid, Some((engine, samples))) => grid_kick(s, engine, samples),
            (KickMethod::Grid, None) => unreachable!("grid method always carries an engine"),
        };
        for (c, &p) in out.state.coeffs.iter_mut().zip(&self.rotation_phases) {
            *c *= p;
        }
        Ok(out)
    }
}

/// Convenience single step built from model parameters (constructs a
/// throwaway operator; use [`FloquetOperator`] in loops).
pub fn step(s: &QuantumState, params: &ModelParams, method: KickMethod) -> Result<KickOutcome> {
    let op = FloquetOperator::new(params, s.bandwidth(), 2 * s.bandwidth(), method)?;
    op.step(s)
}

/// Closed-form `n`-step evolution:
/// `(F^n ψ)(θ) = e^{−(i/ħ)K H_n(θ)} ψ(θ − nλ)` — one rotation by `nλ`
/// (carried in fixed point, so `n` can be large) and one multiplication by
/// the exactly evaluated piecewise-linear `H_n`.
pub fn iterate_closed_form(
    s: &QuantumState,
    n: u64,
    params: &ModelParams,
    grid_size: Option<usize>,
) -> Result<KickOutcome> {
    if n == 0 {
        return Ok(KickOutcome {
            state: s.clone(),
            leaked_mass: 0.0,
        });
    }
    let grid_size = grid_size.unwrap_or_else(|| default_grid_size(s.bandwidth));
    validate_grid(grid_size, s.bandwidth)?;
    let angle = fixed::turn_to_angle(params.rotation_turn().wrapping_mul(n as u128));
    let rotated = s.apply_rotation(angle);
    let h_n = classical::h_n_exact(n, params)?;
    let c = params.kick_phase_strength();
    let engine = GridEngine::new(grid_size);
    let samples: Vec<Complex64> = (0..grid_size)
        .map(|j| {
            let theta = TAU * j as f64 / grid_size as f64;
            Complex64::from_polar(1.0, c * h_n.eval(theta))
        })
        .collect();
    Ok(grid_kick(&rotated, &engine, &samples))
}

/// Exact multiplier evaluation for external consumers (CLI traces).
pub fn h_n_multiplier_sup(h_n: &PiecewiseLinear, params: &ModelParams) -> f64 {
    (params.kick / params.hbar).abs() * h_n.sup_abs()
}

/// Samples `ψ(θ_j)` on the uniform grid, for position-space observables.
pub(crate) fn grid_samples(s: &QuantumState, grid_size: usize) -> Vec<Complex64> {
    GridEngine::new(grid_size).synthesize(s.coeffs())
}

/// Per-step diagnostics of a traced evolution.
#[derive(Clone, Copy, Debug)]
pub struct EvolutionRecord {
    pub step: u64,
    pub u_value: i64,
    pub norm_leak: f64,
    pub region: RegionLabel,
}

/// Sequential evolution with leak bookkeeping and optional periodic
/// renormalization (off by default; when on, it is the caller's job to
/// report it in output metadata).
pub struct Evolution {
    op: FloquetOperator,
    state: QuantumState,
    steps_done: u64,
    cumulative_leak: f64,
    renormalize_every: Option<u64>,
}

impl Evolution {
    pub fn new(op: FloquetOperator, initial: QuantumState) -> Result<Self> {
        if initial.bandwidth() != op.bandwidth() {
            return Err(Error::Configuration(
                "initial state bandwidth does not match the operator".into(),
            ));
        }
        Ok(Evolution {
            op,
            state: initial,
            steps_done: 0,
            cumulative_leak: 0.0,
            renormalize_every: None,
        })
    }

    pub fn with_renormalize_every(mut self, every: u64) -> Self {
        self.renormalize_every = (every > 0).then_some(every);
        self
    }

    pub fn state(&self) -> &QuantumState {
        &self.state
    }

    pub fn steps_done(&self) -> u64 {
        self.steps_done
    }

    pub fn cumulative_leak(&self) -> f64 {
        self.cumulative_leak
    }

    pub fn operator(&self) -> &FloquetOperator {
        &self.op
    }

    pub fn advance(&mut self) -> Result<()> {
        let out = self.op.step(&self.state)?;
        self.state = out.state;
        self.cumulative_leak += out.leaked_mass;
        self.steps_done += 1;
        if let Some(k) = self.renormalize_every {
            if self.steps_done.is_multiple_of(k) {
                self.state = self.state.renormalized();
            }
        }
        Ok(())
    }

    pub fn record(&self) -> EvolutionRecord {
        EvolutionRecord {
            step: self.steps_done,
            u_value: u_observable(&self.state),
            norm_leak: self.cumulative_leak,
            region: classify_region(&self.state),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(bandwidth: usize, seed: u64) -> QuantumState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs = (0..2 * bandwidth + 1)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        QuantumState::from_coeffs(coeffs).unwrap()
    }

    #[test]
    fn state_constructors() {
        let s = QuantumState::pure_mode(5, 16).unwrap();
        assert_eq!(s.coeff(5), Complex64::new(1.0, 0.0));
        assert_eq!(s.coeff(4), Complex64::new(0.0, 0.0));
        assert!(QuantumState::pure_mode(17, 16).is_err());
        assert!((QuantumState::gaussian(5.0, 0, 64).unwrap().norm_sq() - 1.0).abs() < 1e-12);
        assert!((QuantumState::uniform_band(10).norm_sq() - 1.0).abs() < 1e-12);
        assert!(QuantumState::from_coeffs(vec![Complex64::new(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn rotation_is_diagonal_unitary() {
        let s = QuantumState::pure_mode(5, 8).unwrap();
        let r = s.apply_rotation(PI);
        // a_5 = e^{−5πi} = −1: same projective state.
        assert!((r.coeff(5) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(s.projective_distance(&r) < 1e-12);

        let s = random_state(32, 1);
        assert_eq!(s.apply_rotation(0.0).coeffs(), s.coeffs());
        let r = s.apply_rotation(1.234);
        assert!((r.norm_sq() - s.norm_sq()).abs() < 1e-14);
    }

    #[test]
    fn u_observable_examples() {
        assert_eq!(u_observable(&QuantumState::pure_mode(5, 16).unwrap()), 4);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 9];
        coeffs[4] = Complex64::new(1.0, 0.0);
        coeffs[5] = Complex64::new(1.0, 0.0);
        let s = QuantumState::from_coeffs(coeffs).unwrap(); // a_0 = a_1 = 1/√2
        assert_eq!(u_observable(&s), 0);
        assert_eq!(u_observable(&QuantumState::uniform_band(10)), 4);
        assert_eq!(u_observable(&QuantumState::pure_mode(0, 4).unwrap()), -1);
    }

    #[test]
    fn kick_coeffs_zero_strength() {
        let mult = kick_coeffs(0.0, 8);
        assert_eq!(mult.coeff(0), Complex64::new(1.0, 0.0));
        assert_eq!(mult.coeff(3), Complex64::new(0.0, 0.0));
        assert_eq!(mult.tail_bound(), 0.0);
    }

    #[test]
    fn kick_coeffs_dc_value() {
        // g_0(c) = 2 sin(πc/2)/(πc)
        for c in [0.3, 1.0, 2.7] {
            let mult = kick_coeffs(c, 4);
            let expect = 2.0 * (PI * c / 2.0).sin() / (PI * c);
            assert!(
                (mult.coeff(0) - Complex64::new(expect, 0.0)).norm() < 1e-14,
                "c={c}"
            );
        }
        let m1 = kick_coeffs(1.0, 4);
        assert!((m1.coeff(0).re - 2.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn kick_coeffs_quadratic_decay() {
        // e^{icH} is Lipschitz with corner kinks, so |g_m| ~ C/m².
        let mult = kick_coeffs(1.0, 256);
        for m in [32i64, 64, 128, 256] {
            let scaled = mult.coeff(m).norm() * (m * m) as f64;
            assert!(scaled < 1.0, "m={m}: |g_m|·m² = {scaled}");
        }
    }

    #[test]
    fn kick_coeffs_parseval() {
        let mult = kick_coeffs(1.0, 256);
        assert!(mult.tail_bound() < 1e-6);
        // Integer strength hits the degenerate branches m = ±c.
        let mult = kick_coeffs(2.0, 64);
        assert!(mult.coeff(2).is_finite() && mult.coeff(-2).is_finite());
        assert!(mult.tail_bound() < 1e-4);
    }

    #[test]
    fn kick_identity_both_methods() {
        let s = random_state(32, 2);
        let mult = kick_coeffs(0.0, 64);
        let conv = apply_kick(&s, &mult, KickMethod::Convolution).unwrap();
        assert!(s.projective_distance(&conv.state) < 1e-12);
        assert_eq!(conv.leaked_mass, 0.0);
        let grid = apply_kick(&s, &mult, KickMethod::Grid).unwrap();
        assert!(s.projective_distance(&grid.state) < 1e-12);
        assert!(grid.leaked_mass < 1e-24);
    }

    #[test]
    fn kick_methods_agree() {
        // With B ≥ 2M the convolution is exact on the band; the remaining
        // in-band difference is the grid method's aliasing, which shrinks
        // with the oversampling budget.
        let s = random_state(64, 3);
        let mult = kick_coeffs(1.0, 128);
        let conv = apply_kick(&s, &mult, KickMethod::Convolution).unwrap();
        let grid = apply_kick_with_grid(&s, &mult, KickMethod::Grid, 1 << 16).unwrap();
        let d: f64 = (-64i64..=64)
            .map(|m| (conv.state.coeff(m) - grid.state.coeff(m)).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(d < 1e-8, "method disagreement {d}");
        for out in [conv, grid] {
            let n = out.state.norm_sq();
            assert!(n <= 1.0 + 1e-12);
            assert!(n >= 1.0 - out.leaked_mass - 1e-12);
        }
    }

    #[test]
    fn kick_of_ground_mode_is_multiplier() {
        let s = QuantumState::pure_mode(0, 8).unwrap();
        let mult = kick_coeffs(1.3, 8);
        let out = convolve_kick(&s, &mult);
        for m in -8..=8i64 {
            assert!((out.state.coeff(m) - mult.coeff(m)).norm() < 1e-14);
        }
    }

    #[test]
    fn grid_validation() {
        let s = random_state(16, 4);
        let mult = kick_coeffs(1.0, 16);
        assert!(apply_kick_with_grid(&s, &mult, KickMethod::Grid, 48).is_err());
        assert!(apply_kick_with_grid(&s, &mult, KickMethod::Grid, 16).is_err());
    }

    #[test]
    fn step_is_kick_then_rotate() {
        let params = ModelParams::golden(1.0, 1.0).unwrap();
        let s = QuantumState::gaussian(3.0, 0, 64).unwrap();
        let stepped = step(&s, &params, KickMethod::Convolution).unwrap();
        let mult = kick_coeffs(params.kick_phase_strength(), 128);
        let manual = apply_kick(&s, &mult, KickMethod::Convolution)
            .unwrap()
            .state
            .apply_rotation(params.lambda);
        assert!(stepped.state.projective_distance(&manual) < 1e-12);
    }

    #[test]
    fn closed_form_matches_single_step() {
        // The convolution step is alias-free on the band (B = 2M), so the
        // only numerical gap is the closed form's analysis grid.
        let params = ModelParams::golden(1.0, 1.0).unwrap();
        let s = QuantumState::gaussian(2.5, 0, 32).unwrap();
        let op = FloquetOperator::new(&params, 32, 64, KickMethod::Convolution).unwrap();
        let stepped = op.step(&s).unwrap();
        let closed = iterate_closed_form(&s, 1, &params, Some(1 << 20)).unwrap();
        let d = stepped.state.projective_distance(&closed.state);
        assert!(d < 1e-10, "closed form vs step: {d}");
    }

    #[test]
    fn closed_form_matches_composition() {
        // The floor here is not grid error: composing truncates to the band
        // after every kick while the closed form truncates once, and the
        // re-folded band-edge mass differs by ~2e-4 at this bandwidth.
        // An implementation bug (wrong sign, order, or shift) shows up as
        // an O(1) distance.
        let params = ModelParams::golden(1.0, 1.0).unwrap();
        let s = QuantumState::gaussian(4.0, 0, 128).unwrap();
        let op = FloquetOperator::new(&params, 128, 256, KickMethod::Convolution).unwrap();
        let mut cur = s.clone();
        for _ in 0..20 {
            cur = op.step(&cur).unwrap().state;
        }
        let closed = iterate_closed_form(&s, 20, &params, Some(1 << 17)).unwrap();
        let d = cur.projective_distance(&closed.state);
        assert!(d < 1e-3, "closed form vs 20 steps: {d}");
    }

    #[test]
    fn closed_form_at_fibonacci_times_is_nearly_rotation() {
        // sup|H_q14| ≈ 0.00827, so F^987 deviates from the bare rotation by
        // at most about c·sup in L².
        let params = ModelParams::golden(1.0, 1.0).unwrap();
        let s = QuantumState::gaussian(4.0, 0, 64).unwrap();
        let closed = iterate_closed_form(&s, 987, &params, None).unwrap();
        let angle = fixed::turn_to_angle(params.rotation_turn().wrapping_mul(987));
        let rotation_only = s.apply_rotation(angle);
        let d = closed.state.projective_distance(&rotation_only);
        assert!(d < 0.01, "F^987 vs pure rotation: {d}");
    }

    #[test]
    fn evolution_bookkeeping() {
        let params = ModelParams::golden(1.0, 1.0).unwrap();
        let op = FloquetOperator::new(&params, 64, 128, KickMethod::Grid).unwrap();
        let mut ev = Evolution::new(op, QuantumState::gaussian(3.0, 0, 64).unwrap()).unwrap();
        let mut last_leak = 0.0;
        for _ in 0..50 {
            ev.advance().unwrap();
            let rec = ev.record();
            assert!(rec.norm_leak >= last_leak);
            last_leak = rec.norm_leak;
        }
        assert_eq!(ev.steps_done(), 50);
        assert_eq!(ev.record().region, RegionLabel::Quantum);
    }

    proptest! {
        #[test]
        fn u_is_phase_invariant(seed in 0u64..500, alpha in 0.0..TAU) {
            let s = random_state(24, seed);
            let phase = Complex64::from_polar(1.0, alpha);
            let rotated = QuantumState::from_coeffs(
                s.coeffs().iter().map(|&c| c * phase).collect()
            ).unwrap();
            prop_assert_eq!(u_observable(&s), u_observable(&rotated));
        }

        #[test]
        fn rotation_preserves_norm(seed in 0u64..200, lambda in -10.0..10.0f64) {
            let s = random_state(16, seed);
            let r = s.apply_rotation(lambda);
            prop_assert!((r.norm_sq() - 1.0).abs() < 1e-12);
        }
    }
}
