//! Regime analysis of the weak-value approximation.
//!
//! With every particle carrying the same weak value ᾱ_w, the collective
//! pointer amplitude is `{cos(λQ/√N) + i·ᾱ_w·sin(λQ/√N)}^N · G(Q)`. Its
//! magnitude is a competition between the growing product term,
//! `≈ exp{(ᾱ_w²−1)λ²Q²/2}` for large N, and the declining Gaussian envelope
//! `G(Q) = exp{−Q²/(2Δ²)}`: for `(ᾱ_w²−1)λ² < 1` the profile stays peaked at
//! Q = 0 and the weak-value replacement is sound; well above 1 the dominant
//! weight migrates off the origin and the approximation breaks.

use crate::error::Result;
use crate::pointer::{GaussianSpec, GridSpec, GridWavefunction, Representation};
use crate::C64;
use std::f64::consts::PI;

/// Diagnostics for one (ᾱ_w, λ, N) operating point.
#[derive(Debug, Clone)]
pub struct ValidityReport {
    /// (ᾱ_w² − 1)·λ².
    pub regime_lhs: f64,
    /// regime_lhs < 1.
    pub regime_ok: bool,
    /// argmax of the magnitude profile over the grid.
    pub peak_location: f64,
    /// |peak_location| within two grid steps of zero.
    pub peak_at_origin: bool,
    /// N·λ³, the finite-ensemble correction scale.
    pub finite_n_correction: f64,
    /// momentum shift over momentum spread of the collective pointer.
    pub amplification: f64,
    /// |ᾱ_w| outside the ±1 eigenvalue range.
    pub eccentric: bool,
}

fn envelope(spec: &GaussianSpec, q: f64) -> f64 {
    let norm = (PI * spec.spread * spec.spread).powf(-0.25);
    let d = q - spec.center;
    norm * (-d * d / (2.0 * spec.spread * spec.spread)).exp()
}

/// Collective pointer state with a uniform weak value:
/// `{cos(λQ/√N) + i·α_w·sin(λQ/√N)}^N · G(Q)`, unnormalized.
pub fn uniform_wv_state(
    alpha_w: f64,
    lambda: f64,
    n: usize,
    spec: &GaussianSpec,
    grid: &GridSpec,
) -> GridWavefunction {
    let eps = lambda / (n as f64).sqrt();
    let samples = grid
        .points()
        .map(|q| {
            let (s, c) = (eps * q).sin_cos();
            C64::new(c, alpha_w * s).powu(n as u32) * envelope(spec, q)
        })
        .collect();
    GridWavefunction {
        grid: *grid,
        representation: Representation::Position,
        samples,
    }
}

/// Modulus of [`uniform_wv_state`] coded independently:
/// `{1 + (α_w²−1)·sin²(λQ/√N)}^{N/2} · G(Q)` per grid point.
pub fn magnitude_profile(
    alpha_w: f64,
    lambda: f64,
    n: usize,
    spec: &GaussianSpec,
    grid: &GridSpec,
) -> Vec<f64> {
    let eps = lambda / (n as f64).sqrt();
    grid.points()
        .map(|q| {
            let s = (eps * q).sin();
            (1.0 + (alpha_w * alpha_w - 1.0) * s * s).powf(n as f64 / 2.0) * envelope(spec, q)
        })
        .collect()
}

/// Evaluates the full report at one operating point.
pub fn regime_check(
    alpha_w: f64,
    lambda: f64,
    n: usize,
    spec: &GaussianSpec,
    grid: &GridSpec,
) -> Result<ValidityReport> {
    let regime_lhs = (alpha_w * alpha_w - 1.0) * lambda * lambda;
    let profile = magnitude_profile(alpha_w, lambda, n, spec, grid);
    let peak_idx = profile
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let peak_location = grid.point(peak_idx);
    let state = uniform_wv_state(alpha_w, lambda, n, spec, grid);
    let moments = state.to_momentum()?.moments()?;
    Ok(ValidityReport {
        regime_lhs,
        regime_ok: regime_lhs < 1.0,
        peak_location,
        peak_at_origin: peak_location.abs() <= 2.0 * grid.step,
        finite_n_correction: n as f64 * lambda.powi(3),
        amplification: moments.mean / moments.variance.sqrt(),
        eccentric: alpha_w.abs() > 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointer::l2_error;
    use std::f64::consts::SQRT_2;

    fn grid_for(lambda: f64, n: usize) -> GridSpec {
        let shift = 2.0 * lambda * (n as f64).sqrt() * SQRT_2;
        GridSpec::auto(1.0, shift, 1024).unwrap()
    }

    fn spec() -> GaussianSpec {
        GaussianSpec::standard()
    }

    #[test]
    fn trivial_weak_value_is_a_pure_phase() {
        let grid = grid_for(0.8, 25);
        let state = uniform_wv_state(1.0, 0.8, 25, &spec(), &grid);
        for (q, s) in grid.points().zip(&state.samples) {
            assert!((s.norm() - envelope(&spec(), q)).abs() < 1e-13);
        }
    }

    #[test]
    fn lambda_zero_is_the_bare_envelope() {
        let grid = grid_for(0.0, 10);
        let state = uniform_wv_state(SQRT_2, 0.0, 10, &spec(), &grid);
        for (q, s) in grid.points().zip(&state.samples) {
            assert!((s - C64::new(envelope(&spec(), q), 0.0)).norm() < 1e-15);
        }
        let profile = magnitude_profile(1.0, 0.3, 10, &spec(), &grid);
        for (q, p) in grid.points().zip(&profile) {
            assert!((p - envelope(&spec(), q)).abs() < 1e-15);
        }
    }

    #[test]
    fn modulus_matches_profile_pointwise() {
        for (alpha, lambda, n) in [(SQRT_2, 0.5, 100), (1.3, 1.1, 40), (0.6, 0.9, 15)] {
            let grid = grid_for(lambda, n);
            let state = uniform_wv_state(alpha, lambda, n, &spec(), &grid);
            let profile = magnitude_profile(alpha, lambda, n, &spec(), &grid);
            for (s, p) in state.samples.iter().zip(&profile) {
                assert!((s.norm() - p).abs() <= 1e-12 * (1.0 + p));
            }
        }
    }

    #[test]
    fn large_n_magnitude_matches_quadratic_growth_law() {
        // |Φ(Q)| → exp{(α²−1)λ²Q²/2}·G(Q) for N → ∞ with Q finite
        let grid = GridSpec::auto(1.0, 2.0 * 0.5 * 20.0 * SQRT_2, 4096).unwrap();
        let state = uniform_wv_state(SQRT_2, 0.5, 400, &spec(), &grid);
        for (q, s) in grid.points().zip(&state.samples) {
            if q.abs() <= 3.0 {
                let law = (0.25 * q * q / 2.0).exp() * envelope(&spec(), q);
                assert!((s.norm() - law).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn off_origin_growth_beyond_the_regime() {
        // regime_lhs = 2.25: weight migrates off the origin
        let grid = grid_for(1.5, 100);
        let profile = magnitude_profile(SQRT_2, 1.5, 100, &spec(), &grid);
        let at_origin = profile[grid.count / 2];
        let far = grid
            .points()
            .zip(&profile)
            .filter(|(q, _)| q.abs() > 3.0)
            .map(|(_, p)| *p)
            .fold(0.0_f64, f64::max);
        assert!(far > at_origin);
    }

    #[test]
    fn regime_check_examples() {
        let grid = grid_for(0.5, 100);
        let ok = regime_check(SQRT_2, 0.5, 100, &spec(), &grid).unwrap();
        assert!((ok.regime_lhs - 0.25).abs() < 1e-12);
        assert!(ok.regime_ok && ok.peak_at_origin && ok.eccentric);
        assert!((ok.finite_n_correction - 100.0 * 0.125).abs() < 1e-9);

        let grid = grid_for(1.5, 100);
        let bad = regime_check(SQRT_2, 1.5, 100, &spec(), &grid).unwrap();
        assert!((bad.regime_lhs - 2.25).abs() < 1e-12);
        assert!(!bad.regime_ok && !bad.peak_at_origin);
    }

    #[test]
    fn amplification_grows_as_sqrt_n() {
        let mut ratios = Vec::new();
        for n in [25usize, 100, 400] {
            let grid = grid_for(0.5, n);
            let report = regime_check(SQRT_2, 0.5, n, &spec(), &grid).unwrap();
            ratios.push((n, report.amplification));
        }
        let c = ratios[0].1 / (25.0_f64).sqrt();
        for (n, ratio) in &ratios {
            let scale = ratio / (c * (*n as f64).sqrt());
            assert!((scale - 1.0).abs() < 0.2, "ratio {ratio} at N={n}");
        }
    }

    #[test]
    fn momentum_mean_tracks_lambda_sqrt_n_alpha() {
        for lambda in [0.1, 0.2, 0.3] {
            let grid = grid_for(lambda, 100);
            let state = uniform_wv_state(SQRT_2, lambda, 100, &spec(), &grid);
            let mean = state.to_momentum().unwrap().moments().unwrap().mean;
            let target = lambda * 10.0 * SQRT_2;
            assert!((mean - target).abs() <= 0.03 * target);
        }
    }

    #[test]
    fn peak_stays_at_origin_inside_the_regime() {
        // sweep λ at α=√2, N=100: origin peak for lhs ≤ 0.9, off-origin for
        // lhs ≥ 1.5; the crossover band in between is left unasserted
        for k in 1..=20 {
            let lambda = 0.1 * k as f64;
            let lhs = lambda * lambda;
            let grid = grid_for(lambda.max(0.5), 100);
            let report = regime_check(SQRT_2, lambda, 100, &spec(), &grid).unwrap();
            if lhs <= 0.9 {
                assert!(report.peak_at_origin, "expected origin peak at λ={lambda}");
            } else if lhs >= 1.5 {
                assert!(!report.peak_at_origin, "expected off-origin peak at λ={lambda}");
            }
        }
    }

    #[test]
    fn discrepancy_to_pure_phase_shrinks_with_n_at_fixed_total_coupling() {
        // λ√N held at √5 (λ = 1 at N = 5); the pure-phase idealization is
        // exp{iλ√N·α·Q}·G(Q)
        let total = 5.0_f64.sqrt();
        let mut last = f64::INFINITY;
        for n in [5usize, 10, 20, 40] {
            let lambda = total / (n as f64).sqrt();
            let grid = grid_for(1.0, 40);
            let state = uniform_wv_state(SQRT_2, lambda, n, &spec(), &grid)
                .normalized()
                .unwrap();
            let ideal = GridWavefunction {
                grid,
                representation: Representation::Position,
                samples: grid
                    .points()
                    .map(|q| {
                        C64::new(0.0, total * SQRT_2 * q).exp() * envelope(&spec(), q)
                    })
                    .collect(),
            }
            .normalized()
            .unwrap();
            let d = l2_error(&state, &ideal).unwrap();
            assert!(d < last, "discrepancy {d} at N={n} did not shrink");
            last = d;
        }
    }
}
