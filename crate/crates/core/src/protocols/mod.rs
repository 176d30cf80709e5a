//! The measurement protocols: ideal (strong) readout, per-particle Monte
//! Carlo weak measurement, single-trial collective weak measurement, and the
//! collective total-momentum readout with relative-position corrections.

mod ideal;
mod nswm;
mod stwm;
mod swm;

pub use ideal::{run_ideal, IdealResult, MomentumPeak};
pub use nswm::{
    group_weak_values, nswm_approx_cm_state, nswm_correct, nswm_exact_cm_state,
    nswm_momentum_shift, nswm_sample, nswm_shift_formula, run_nswm, CorrectedEnsemble, NswmRun,
    SampledPositions, WeakValueGroup, WeightedWeakValueGroup,
};
pub use stwm::{stwm_pointer_state, StwmResult};
pub use swm::{run_swm, SwmResult};

use crate::error::{Error, Result};
use crate::pointer::{GaussianSpec, GridSpec};
use crate::spin::{eigenstate, spin_along, BlochAxis, PrePostSelection, Sign, SpinOperator, SpinState};
use std::path::PathBuf;

/// Which protocol a scenario drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    Ideal,
    Swm,
    Stwm,
    Nswm,
    Validity,
}

impl Protocol {
    pub fn name(self) -> &'static str {
        match self {
            Protocol::Ideal => "ideal",
            Protocol::Swm => "swm",
            Protocol::Stwm => "stwm",
            Protocol::Nswm => "nswm",
            Protocol::Validity => "validity",
        }
    }
}

/// Fully resolved experiment description.
///
/// `lambda` is the integrated coupling ∫λ(t)dt; each protocol applies its own
/// collective normalization (λ/N inside the collective observable for the
/// single-trial protocol, λ per particle with λ/√N on the centre-of-mass
/// coordinate for the total-momentum protocol).
#[derive(Debug, Clone)]
pub struct Scenario {
    pub protocol: Protocol,
    pub pre_axis: (BlochAxis, Sign),
    pub post_axis: (BlochAxis, Sign),
    pub observable_axis: BlochAxis,
    pub lambda: f64,
    pub pointer_spread: f64,
    pub particle_count: usize,
    pub trial_count: u64,
    pub seed: u64,
    pub grid: GridSpec,
    pub output_dir: Option<PathBuf>,
}

impl Scenario {
    /// Baseline scenario: pre ↑x, post ↑y, observable at 45° in the x–y
    /// plane, λ = 0.1, Δ = 1, N = 20, 10⁵ trials, seed 42.
    pub fn base(protocol: Protocol) -> Scenario {
        let mut sc = Scenario {
            protocol,
            pre_axis: (BlochAxis::x(), Sign::Plus),
            post_axis: (BlochAxis::y(), Sign::Plus),
            observable_axis: BlochAxis::xy_angle_deg(45.0),
            lambda: 0.1,
            pointer_spread: 1.0,
            particle_count: 20,
            trial_count: 100_000,
            seed: 42,
            grid: GridSpec::centered(1024, 0.1).unwrap(),
            output_dir: None,
        };
        sc.grid = sc.auto_grid(1024).unwrap();
        sc
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be ≥ 0, got {}",
                self.lambda
            )));
        }
        if self.particle_count < 1 {
            return Err(Error::InvalidParameter("n_particles must be ≥ 1".into()));
        }
        if !self.pointer_spread.is_finite() || self.pointer_spread <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta must be positive, got {}",
                self.pointer_spread
            )));
        }
        Ok(())
    }

    /// Grid sized from the protocol's largest expected momentum shift.
    pub fn auto_grid(&self, min_count: usize) -> Result<GridSpec> {
        let shift_bound = match self.protocol {
            Protocol::Nswm | Protocol::Validity => {
                2.0 * self.lambda * (self.particle_count as f64).sqrt()
            }
            _ => 2.0 * self.lambda,
        };
        GridSpec::auto(self.pointer_spread, shift_bound, min_count)
    }

    pub fn pre_state(&self) -> SpinState {
        eigenstate(&self.pre_axis.0, self.pre_axis.1)
    }

    pub fn post_state(&self) -> SpinState {
        eigenstate(&self.post_axis.0, self.post_axis.1)
    }

    pub fn selection(&self) -> PrePostSelection {
        PrePostSelection {
            pre: self.pre_state(),
            post: self.post_state(),
        }
    }

    pub fn observable(&self) -> SpinOperator {
        spin_along(&self.observable_axis)
    }

    pub fn pointer_gaussian(&self) -> GaussianSpec {
        GaussianSpec {
            center: 0.0,
            spread: self.pointer_spread,
        }
    }
}
