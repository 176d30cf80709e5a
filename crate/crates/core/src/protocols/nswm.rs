//! Non-statistical weak measurement: one irreversible readout of the total
//! momentum of N particles, plus measurement of the relative positions
//! x_j = Q_j − Q̄, which commute with the total momentum.
//!
//! Each measured x_j rotates the pre-selection of particle j about the
//! observable axis by λ·x_j, so the centre-of-mass pointer is shifted by the
//! sum of the rotated-state weak values σ̃_w^j. The exact CM wavefunction and
//! its weak-value approximation are both evaluated pointwise in closed form.

use super::Scenario;
use crate::error::{Error, Result};
use crate::pointer::{gaussian_on_grid, GridWavefunction, Representation};
use crate::spin::{overlap, rotation_about, weak_value, PrePostSelection, SpinState, ORTHOGONALITY_THRESHOLD};
use crate::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Positions drawn from the initial pointer density.
#[derive(Debug, Clone)]
pub struct SampledPositions {
    /// Raw coordinates Q_j, i.i.d. from the position density of the pointer.
    pub coordinates: Vec<f64>,
    /// Q⁽ᴺ⁾ = Σ Q_j / √N.
    pub cm_coordinate: f64,
    /// x_j = Q_j − Q̄; Σ x_j = 0 exactly by construction.
    pub relative_positions: Vec<f64>,
}

/// Rotated pre-selections with their weak values.
#[derive(Debug, Clone)]
pub struct CorrectedEnsemble {
    pub rotated_states: Vec<SpinState>,
    /// σ̃_w^j, the weak value of the observable for particle j's rotated
    /// pre-selection. Generally complex.
    pub weak_values: Vec<C64>,
    /// Π_j ⟨Ψfin|Ψ⟩_j, the scalar carried by both the exact state and its
    /// weak-value approximation.
    pub overlap_product: C64,
}

/// All artifacts of one total-momentum measurement.
#[derive(Debug, Clone)]
pub struct NswmRun {
    pub coordinates: Vec<f64>,
    pub cm_coordinate: f64,
    pub relative_positions: Vec<f64>,
    pub rotated_states: Vec<SpinState>,
    pub per_particle_weak_values: Vec<C64>,
    pub exact_cm_state: GridWavefunction,
    pub approx_cm_state: GridWavefunction,
    pub momentum_shift_exact: f64,
    pub momentum_shift_formula: f64,
}

/// Particles sharing (within tolerance) one rotated pre-selection.
#[derive(Debug, Clone)]
pub struct WeakValueGroup {
    pub count: usize,
    pub rotated_state: SpinState,
    pub weak_value: C64,
}

#[derive(Debug, Clone)]
pub struct WeightedWeakValueGroup {
    pub groups: Vec<WeakValueGroup>,
}

impl WeightedWeakValueGroup {
    pub fn total_count(&self) -> usize {
        self.groups.iter().map(|g| g.count).sum()
    }

    /// Rebuilds the weak-value CM phase profile from the group weights:
    /// `exp{i(λ/√N)Q·Σᵢ nᵢ·η̃ᵢ}·Φin(Q)`.
    pub fn reconstruct_cm_state(&self, scenario: &Scenario) -> Result<GridWavefunction> {
        let weighted: C64 = self
            .groups
            .iter()
            .map(|g| C64::new(g.count as f64, 0.0) * g.weak_value)
            .sum();
        phase_profile_state(scenario, weighted, C64::new(1.0, 0.0))
    }
}

/// Draws Q_j i.i.d. from the pointer position density and removes the
/// empirical mean, realizing the relative-coordinate record.
pub fn nswm_sample(scenario: &Scenario, rng: &mut ChaCha8Rng) -> SampledPositions {
    let n = scenario.particle_count;
    let normal = Normal::new(0.0, scenario.pointer_spread).expect("spread validated positive");
    let coordinates: Vec<f64> = (0..n).map(|_| normal.sample(rng)).collect();
    let mean = coordinates.iter().sum::<f64>() / n as f64;
    let relative_positions = coordinates.iter().map(|q| q - mean).collect();
    SampledPositions {
        cm_coordinate: coordinates.iter().sum::<f64>() / (n as f64).sqrt(),
        coordinates,
        relative_positions,
    }
}

/// Rotates the pre-selection of each particle by λ·x_j about the observable
/// axis and evaluates the rotated weak values.
pub fn nswm_correct(scenario: &Scenario, relative_positions: &[f64]) -> Result<CorrectedEnsemble> {
    let sel = scenario.selection();
    let op = scenario.observable();
    let mut rotated_states = Vec::with_capacity(relative_positions.len());
    let mut weak_values = Vec::with_capacity(relative_positions.len());
    let mut overlap_product = C64::new(1.0, 0.0);
    for (j, x) in relative_positions.iter().enumerate() {
        let u = rotation_about(&scenario.observable_axis, scenario.lambda * x);
        let raw = u.apply_raw(&sel.pre);
        let rotated = SpinState::new(raw[0], raw[1]).expect("rotation preserves norm");
        let ov = overlap(&sel.post, &rotated);
        if ov.norm() <= ORTHOGONALITY_THRESHOLD {
            return Err(Error::OrthogonalRotatedSelection { particle: j });
        }
        let wv = weak_value(
            &PrePostSelection { pre: rotated, post: sel.post },
            &op,
        )?;
        overlap_product *= ov;
        rotated_states.push(rotated);
        weak_values.push(wv);
    }
    Ok(CorrectedEnsemble {
        rotated_states,
        weak_values,
        overlap_product,
    })
}

/// Exact centre-of-mass wavefunction
/// `Φ(Q) = Π_j ⟨Ψfin| exp{i(λ/√N)Q·σ̂} |Ψ⟩_j · Φin(Q)`, unnormalized:
/// its norm² is the post-selection likelihood carried by the CM factor.
pub fn nswm_exact_cm_state(
    scenario: &Scenario,
    relative_positions: &[f64],
) -> Result<GridWavefunction> {
    scenario.validate()?;
    let corrected = nswm_correct(scenario, relative_positions)?;
    let sel = scenario.selection();
    let op = scenario.observable();
    let n = relative_positions.len();
    let eps = scenario.lambda / (n as f64).sqrt();

    // per-particle scalars: o_j = ⟨fin|Ψ_j⟩, m_j = ⟨fin|σ̂|Ψ_j⟩
    let [p0, p1] = sel.post.amplitudes();
    let scalars: Vec<(C64, C64)> = corrected
        .rotated_states
        .iter()
        .map(|state| {
            let o = overlap(&sel.post, state);
            let applied = op.apply_raw(state);
            let m = p0.conj() * applied[0] + p1.conj() * applied[1];
            (o, m)
        })
        .collect();

    let pointer = gaussian_on_grid(
        &scenario.pointer_gaussian(),
        &scenario.grid,
        Representation::Position,
    )?;
    let i = C64::new(0.0, 1.0);
    let samples: Vec<C64> = scenario
        .grid
        .points()
        .zip(&pointer.samples)
        .map(|(q, g)| {
            let (s, c) = (eps * q).sin_cos();
            let mut acc = *g;
            for (o, m) in &scalars {
                acc *= o * c + i * m * s;
            }
            acc
        })
        .collect();
    Ok(GridWavefunction {
        grid: scenario.grid,
        representation: Representation::Position,
        samples,
    })
}

/// Weak-value approximation of the CM wavefunction:
/// `Φ(Q) = Π_j⟨Ψfin|Ψ⟩_j · exp{i(λ/√N)Q·Σ_j σ̃_w^j} · Φin(Q)`.
///
/// The overlap product matches the scalar carried by the exact state, so the
/// two agree pointwise as the per-particle coupling weakens.
pub fn nswm_approx_cm_state(
    scenario: &Scenario,
    corrected: &CorrectedEnsemble,
) -> Result<GridWavefunction> {
    let sum: C64 = corrected.weak_values.iter().sum();
    phase_profile_state(scenario, sum, corrected.overlap_product)
}

fn phase_profile_state(
    scenario: &Scenario,
    weak_value_sum: C64,
    prefactor: C64,
) -> Result<GridWavefunction> {
    let n = scenario.particle_count;
    let eps = scenario.lambda / (n as f64).sqrt();
    let pointer = gaussian_on_grid(
        &scenario.pointer_gaussian(),
        &scenario.grid,
        Representation::Position,
    )?;
    let i = C64::new(0.0, 1.0);
    let samples = scenario
        .grid
        .points()
        .zip(&pointer.samples)
        .map(|(q, g)| prefactor * (i * eps * q * weak_value_sum).exp() * g)
        .collect();
    Ok(GridWavefunction {
        grid: scenario.grid,
        representation: Representation::Position,
        samples,
    })
}

/// Momentum mean of the normalized CM state.
///
/// The state is rescaled to unit peak amplitude first: the mean is
/// scale-invariant and the raw norm carries an exponentially small
/// post-selection prefactor.
pub fn nswm_momentum_shift(exact_cm_state: &GridWavefunction) -> Result<f64> {
    let peak = exact_cm_state
        .samples
        .iter()
        .map(|s| s.norm())
        .fold(0.0_f64, f64::max);
    if peak <= 0.0 {
        return Err(Error::EmptyState);
    }
    let rescaled = exact_cm_state.scaled(C64::new(1.0 / peak, 0.0));
    let state = match rescaled.representation {
        Representation::Position => rescaled.to_momentum()?,
        Representation::Momentum => rescaled,
    };
    Ok(state.moments()?.mean)
}

/// Predicted shift `(λ/√N)·Σ_j Re σ̃_w^j`.
pub fn nswm_shift_formula(weak_values: &[C64], lambda: f64, n: usize) -> f64 {
    lambda / (n as f64).sqrt() * weak_values.iter().map(|w| w.re).sum::<f64>()
}

/// Clusters particles whose rotated states agree within `angle_tolerance`
/// (squared-overlap fidelity ≥ 1 − tolerance); each cluster keeps its first
/// member as representative.
pub fn group_weak_values(
    rotated_states: &[SpinState],
    weak_values: &[C64],
    angle_tolerance: f64,
) -> WeightedWeakValueGroup {
    let mut groups: Vec<WeakValueGroup> = Vec::new();
    for (state, wv) in rotated_states.iter().zip(weak_values) {
        match groups
            .iter_mut()
            .find(|g| overlap(&g.rotated_state, state).norm_sqr() >= 1.0 - angle_tolerance)
        {
            Some(g) => g.count += 1,
            None => groups.push(WeakValueGroup {
                count: 1,
                rotated_state: *state,
                weak_value: *wv,
            }),
        }
    }
    WeightedWeakValueGroup { groups }
}

/// One full protocol run: sample, correct, build both CM states, read out.
pub fn run_nswm(scenario: &Scenario) -> Result<NswmRun> {
    scenario.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let sampled = nswm_sample(scenario, &mut rng);
    let corrected = nswm_correct(scenario, &sampled.relative_positions)?;
    let exact_cm_state = nswm_exact_cm_state(scenario, &sampled.relative_positions)?;
    let approx_cm_state = nswm_approx_cm_state(scenario, &corrected)?;
    let momentum_shift_exact = nswm_momentum_shift(&exact_cm_state)?;
    let momentum_shift_formula = nswm_shift_formula(
        &corrected.weak_values,
        scenario.lambda,
        scenario.particle_count,
    );
    Ok(NswmRun {
        coordinates: sampled.coordinates,
        cm_coordinate: sampled.cm_coordinate,
        relative_positions: sampled.relative_positions,
        rotated_states: corrected.rotated_states,
        per_particle_weak_values: corrected.weak_values,
        exact_cm_state,
        approx_cm_state,
        momentum_shift_exact,
        momentum_shift_formula,
    })
}
