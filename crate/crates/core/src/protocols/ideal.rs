//! Strong (ideal) measurement readout: the pointer momentum distribution
//! resolves into one peak per eigenvalue, weighted by the projection
//! probabilities.

use super::Scenario;
use crate::error::Result;
use crate::pointer::{conjugate_spread, couple, gaussian_on_grid, JointState, Representation};

/// One resolved momentum peak.
#[derive(Debug, Clone, Copy)]
pub struct MomentumPeak {
    pub center: f64,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct IdealResult {
    /// Peaks sorted by center.
    pub peaks: Vec<MomentumPeak>,
    /// Set when the coupling does not separate the eigenvalue shifts.
    pub warning: Option<String>,
}

/// Couples, traces out the spin, and extracts peaks from the unconditioned
/// momentum density by watershed segmentation at the minima between maxima.
pub fn run_ideal(scenario: &Scenario) -> Result<IdealResult> {
    scenario.validate()?;
    let pointer = gaussian_on_grid(
        &scenario.pointer_gaussian(),
        &scenario.grid,
        Representation::Position,
    )?;
    let joint = JointState::product(&scenario.pre_state(), &pointer);
    let op = scenario.observable();
    let coupled = couple(&joint, &op, scenario.lambda)?;
    let momentum = coupled.to_momentum()?;
    let density = momentum.density();
    let dp = momentum.grid.step;

    // regime check: eigenvalue gap of n·σ is 2|a|
    let (_, [ax, ay, az]) = op.pauli_components();
    let gap = 2.0 * (ax.re * ax.re + ay.re * ay.re + az.re * az.re).sqrt();
    let delta_p = conjugate_spread(scenario.pointer_spread);
    let warning = if scenario.lambda * gap <= 4.0 * delta_p {
        Some(format!(
            "strong-measurement regime violated: lambda*gap = {:.3e} <= 4*deltaP = {:.3e}",
            scenario.lambda * gap,
            4.0 * delta_p
        ))
    } else {
        None
    };

    let max_density = density.iter().copied().fold(0.0_f64, f64::max);
    let threshold = 1e-6 * max_density;
    let mut peak_indices = Vec::new();
    for i in 1..density.len() - 1 {
        if density[i] > threshold && density[i] > density[i - 1] && density[i] >= density[i + 1] {
            peak_indices.push(i);
        }
    }
    // watershed boundaries: minima between consecutive peaks
    let mut boundaries = vec![0usize];
    for pair in peak_indices.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let min_idx = (lo..=hi)
            .min_by(|a, b| density[*a].total_cmp(&density[*b]))
            .unwrap();
        boundaries.push(min_idx);
    }
    boundaries.push(density.len());

    let mut peaks = Vec::with_capacity(peak_indices.len());
    for (k, &idx) in peak_indices.iter().enumerate() {
        let weight: f64 = density[boundaries[k]..boundaries[k + 1]]
            .iter()
            .sum::<f64>()
            * dp;
        peaks.push(MomentumPeak {
            center: momentum.grid.point(idx),
            weight,
        });
    }
    peaks.sort_by(|a, b| a.center.total_cmp(&b.center));
    Ok(IdealResult { peaks, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::Protocol;
    use crate::spin::{BlochAxis, Sign};

    fn strong_scenario(lambda: f64) -> Scenario {
        let mut sc = Scenario::base(Protocol::Ideal);
        sc.lambda = lambda;
        sc.grid = sc.auto_grid(1024).unwrap();
        sc
    }

    #[test]
    fn eigenstate_gives_single_peak() {
        let mut sc = strong_scenario(20.0);
        sc.observable_axis = BlochAxis::x(); // pre ↑x is an eigenstate
        let r = run_ideal(&sc).unwrap();
        assert_eq!(r.peaks.len(), 1);
        assert!((r.peaks[0].center - 20.0).abs() <= sc.grid.conjugate().step);
        assert!((r.peaks[0].weight - 1.0).abs() < 0.02);
        assert!(r.warning.is_none());
    }

    #[test]
    fn sigma_z_on_up_x_splits_evenly() {
        let mut sc = strong_scenario(20.0);
        sc.observable_axis = BlochAxis::z();
        let r = run_ideal(&sc).unwrap();
        assert_eq!(r.peaks.len(), 2);
        let dp = sc.grid.conjugate().step;
        assert!((r.peaks[0].center + 20.0).abs() <= dp);
        assert!((r.peaks[1].center - 20.0).abs() <= dp);
        assert!((r.peaks[0].weight - 0.5).abs() < 0.02);
        assert!((r.peaks[1].weight - 0.5).abs() < 0.02);
    }

    #[test]
    fn sigma_45_weights_are_projection_probabilities() {
        let sc = strong_scenario(20.0);
        let r = run_ideal(&sc).unwrap();
        assert_eq!(r.peaks.len(), 2);
        // |⟨±ξ|↑x⟩|² = cos²(22.5°), sin²(22.5°)
        let c2 = (22.5_f64.to_radians()).cos().powi(2);
        assert!((r.peaks[1].weight - c2).abs() < 0.02);
        assert!((r.peaks[0].weight - (1.0 - c2)).abs() < 0.02);
    }

    #[test]
    fn weak_coupling_attaches_warning() {
        let mut sc = strong_scenario(0.1);
        sc.pre_axis = (BlochAxis::z(), Sign::Plus);
        sc.observable_axis = BlochAxis::z();
        let r = run_ideal(&sc).unwrap();
        assert!(r.warning.is_some());
    }
}
