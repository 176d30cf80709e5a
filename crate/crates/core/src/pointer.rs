//! One-dimensional Gaussian pointer states on a uniform grid.
//!
//! The measuring device is a wavepacket `Φ(Q) ∝ exp{−(Q−c)²/4Δ²}` with
//! conjugate momentum spread `ΔP = 1/(2Δ)`. Coupling to a spin through
//! `exp{iλQ̂Â}` is applied pointwise in the position representation;
//! representation changes use a unitary discrete Fourier transform with
//! grid-consistent phases, so a round trip is the identity to near machine
//! precision.

use crate::error::{Error, Result};
use crate::spin::{weak_value, PrePostSelection, SpinOperator, SpinState};
use crate::C64;
use std::f64::consts::PI;
use std::io::Write;

/// Which conjugate variable the samples are taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Position,
    Momentum,
}

/// Uniform sampling grid. `count` is a power of two so transforms stay exact
/// under the centered phase convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub origin: f64,
    pub step: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(origin: f64, step: f64, count: usize) -> Result<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        if count < 64 || !count.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "count must be a power of two ≥ 64, got {count}"
            )));
        }
        Ok(Self { origin, step, count })
    }

    /// Grid symmetric about zero: points `(i − count/2)·step`.
    pub fn centered(count: usize, step: f64) -> Result<Self> {
        Self::new(-((count / 2) as f64) * step, step, count)
    }

    /// Centered grid sized for a pointer of spread `delta` whose momentum
    /// content stays within `±max_abs_momentum`: the step keeps the momentum
    /// window open and the count keeps ≥ 8 spreads of position extent.
    pub fn auto(delta: f64, max_abs_momentum: f64, min_count: usize) -> Result<Self> {
        let p_half = max_abs_momentum + 8.0 * conjugate_spread(delta) + 2.0;
        let step = PI / p_half;
        let needed = (16.0 * delta / step).ceil() as usize;
        let count = needed.max(min_count).max(64).next_power_of_two();
        Self::centered(count, step)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.point(i))
    }

    pub fn first(&self) -> f64 {
        self.origin
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    /// The momentum (or position) grid conjugate to this one under the
    /// centered transform: step `2π/(count·step)`, symmetric about zero.
    pub fn conjugate(&self) -> GridSpec {
        let step = 2.0 * PI / (self.count as f64 * self.step);
        GridSpec {
            origin: -((self.count / 2) as f64) * step,
            step,
            count: self.count,
        }
    }

    fn close_to(&self, other: &GridSpec) -> bool {
        self.count == other.count
            && (self.step - other.step).abs() <= 1e-12 * self.step.abs()
            && (self.origin - other.origin).abs() <= 1e-9 * self.step
    }
}

/// Gaussian pointer parameters: `Φ(Q) ∝ exp{−(Q−center)²/(4·spread²)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    pub center: f64,
    pub spread: f64,
}

impl GaussianSpec {
    pub fn new(center: f64, spread: f64) -> Result<Self> {
        if !spread.is_finite() || spread <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gaussian spread must be positive, got {spread}"
            )));
        }
        Ok(Self { center, spread })
    }

    pub fn standard() -> Self {
        Self { center: 0.0, spread: 1.0 }
    }
}

/// Momentum spread conjugate to a position spread: `ΔP = 1/(2Δ)`.
pub fn conjugate_spread(delta: f64) -> f64 {
    1.0 / (2.0 * delta)
}

/// Sampled 1-D wavefunction, tagged with its grid and representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    pub grid: GridSpec,
    pub representation: Representation,
    pub samples: Vec<C64>,
}

/// Quadrature moments of `|samples|²`.
#[derive(Debug, Clone, Copy)]
pub struct Moments {
    pub norm2: f64,
    pub mean: f64,
    pub variance: f64,
}

impl GridWavefunction {
    pub fn norm2(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.grid.step
    }

    pub fn scaled(&self, factor: C64) -> GridWavefunction {
        GridWavefunction {
            grid: self.grid,
            representation: self.representation,
            samples: self.samples.iter().map(|s| s * factor).collect(),
        }
    }

    /// Rescaled to unit norm²; errors on an empty state.
    pub fn normalized(&self) -> Result<GridWavefunction> {
        let n2 = self.norm2();
        if n2 < 1e-12 {
            return Err(Error::EmptyState);
        }
        Ok(self.scaled(C64::new(1.0 / n2.sqrt(), 0.0)))
    }

    /// Midpoint-rule norm², mean, and central variance of `|samples|²`.
    pub fn moments(&self) -> Result<Moments> {
        let norm2 = self.norm2();
        if norm2 < 1e-12 {
            return Err(Error::EmptyState);
        }
        let mut mean = 0.0;
        for (x, s) in self.grid.points().zip(&self.samples) {
            mean += x * s.norm_sqr();
        }
        mean *= self.grid.step / norm2;
        let mut variance = 0.0;
        for (x, s) in self.grid.points().zip(&self.samples) {
            variance += (x - mean) * (x - mean) * s.norm_sqr();
        }
        variance *= self.grid.step / norm2;
        Ok(Moments { norm2, mean, variance })
    }

    /// Unitary transform to the momentum representation,
    /// `φ̃(p) = (2π)^{-1/2} ∫ φ(q) e^{−ipq} dq`, on the conjugate grid.
    pub fn to_momentum(&self) -> Result<GridWavefunction> {
        if self.representation != Representation::Position {
            return Err(Error::WrongRepresentation {
                expected: Representation::Position,
                got: self.representation,
            });
        }
        let out_grid = self.grid.conjugate();
        let mut buf: Vec<C64> = self
            .samples
            .iter()
            .enumerate()
            .map(|(n, s)| if n % 2 == 0 { *s } else { -*s })
            .collect();
        rustfft::FftPlanner::new()
            .plan_fft_forward(self.grid.count)
            .process(&mut buf);
        let scale = self.grid.step / (2.0 * PI).sqrt();
        let samples = buf
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let p_k = out_grid.point(k);
                // e^{−i p_k q0} carries a non-centered input origin exactly
                v * C64::new(0.0, -p_k * self.grid.origin).exp() * scale
            })
            .collect();
        Ok(GridWavefunction {
            grid: out_grid,
            representation: Representation::Momentum,
            samples,
        })
    }

    /// Inverse of [`GridWavefunction::to_momentum`]; returns the centered
    /// conjugate position grid.
    pub fn to_position(&self) -> Result<GridWavefunction> {
        if self.representation != Representation::Momentum {
            return Err(Error::WrongRepresentation {
                expected: Representation::Momentum,
                got: self.representation,
            });
        }
        let out_grid = self.grid.conjugate();
        let n = self.grid.count;
        let mut buf: Vec<C64> = self
            .samples
            .iter()
            .enumerate()
            .map(|(k, s)| *s * C64::new(0.0, k as f64 * self.grid.step * out_grid.origin).exp())
            .collect();
        rustfft::FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
        // rustfft's inverse omits 1/N; dp·dq·N = 2π absorbs it here.
        let scale = self.grid.step / (2.0 * PI).sqrt();
        let samples = buf
            .into_iter()
            .enumerate()
            .map(|(j, v)| {
                let q_j = out_grid.point(j);
                v * C64::new(0.0, self.grid.origin * q_j).exp() * scale
            })
            .collect();
        Ok(GridWavefunction {
            grid: out_grid,
            representation: Representation::Position,
            samples,
        })
    }

    /// CSV rows `x,re,im` with 13 significant digits.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "x,re,im")?;
        for (x, s) in self.grid.points().zip(&self.samples) {
            writeln!(out, "{:.12e},{:.12e},{:.12e}", x, s.re, s.im)?;
        }
        Ok(())
    }
}

/// Normalized Gaussian samples of `spec` on `grid`.
///
/// In the position representation this is `(2πΔ²)^{-1/4} e^{−(q−c)²/4Δ²}`;
/// in the momentum representation it is the exact Fourier pair
/// `(2Δ²/π)^{1/4} e^{−Δ²p²} e^{−ipc}` with spread `ΔP = 1/(2Δ)`.
pub fn gaussian_on_grid(
    spec: &GaussianSpec,
    grid: &GridSpec,
    representation: Representation,
) -> Result<GridWavefunction> {
    let (center, spread) = match representation {
        Representation::Position => (spec.center, spec.spread),
        Representation::Momentum => (0.0, conjugate_spread(spec.spread)),
    };
    let (required_lo, required_hi) = (center - 8.0 * spread, center + 8.0 * spread);
    if grid.first() > required_lo || grid.last() < required_hi {
        return Err(Error::GridTooSmall {
            lo: grid.first(),
            hi: grid.last(),
            required_lo,
            required_hi,
        });
    }
    let samples = match representation {
        Representation::Position => {
            let norm = (2.0 * PI * spec.spread * spec.spread).powf(-0.25);
            grid.points()
                .map(|q| {
                    let d = q - spec.center;
                    C64::new(norm * (-d * d / (4.0 * spec.spread * spec.spread)).exp(), 0.0)
                })
                .collect()
        }
        Representation::Momentum => {
            let d2 = spec.spread * spec.spread;
            let norm = (2.0 * d2 / PI).powf(0.25);
            grid.points()
                .map(|p| {
                    let mag = norm * (-d2 * p * p).exp();
                    mag * C64::new(0.0, -p * spec.center).exp()
                })
                .collect()
        }
    };
    Ok(GridWavefunction {
        grid: *grid,
        representation,
        samples,
    })
}

/// Entangled spin ⊗ pointer state: a spinor-valued grid wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    pub grid: GridSpec,
    pub representation: Representation,
    pub spin_up: Vec<C64>,
    pub spin_down: Vec<C64>,
}

impl JointState {
    /// Product state `|spin⟩ ⊗ |pointer⟩`.
    pub fn product(spin: &SpinState, pointer: &GridWavefunction) -> JointState {
        let [a0, a1] = spin.amplitudes();
        JointState {
            grid: pointer.grid,
            representation: pointer.representation,
            spin_up: pointer.samples.iter().map(|s| s * a0).collect(),
            spin_down: pointer.samples.iter().map(|s| s * a1).collect(),
        }
    }

    pub fn norm2(&self) -> f64 {
        let s: f64 = self
            .spin_up
            .iter()
            .zip(&self.spin_down)
            .map(|(u, d)| u.norm_sqr() + d.norm_sqr())
            .sum();
        s * self.grid.step
    }

    /// Transforms both spin components to the momentum representation.
    pub fn to_momentum(&self) -> Result<JointState> {
        let up = self.component(0).to_momentum()?;
        let down = self.component(1).to_momentum()?;
        Ok(JointState {
            grid: up.grid,
            representation: Representation::Momentum,
            spin_up: up.samples,
            spin_down: down.samples,
        })
    }

    fn component(&self, which: usize) -> GridWavefunction {
        GridWavefunction {
            grid: self.grid,
            representation: self.representation,
            samples: if which == 0 {
                self.spin_up.clone()
            } else {
                self.spin_down.clone()
            },
        }
    }

    /// Pointer probability density traced over the spin.
    pub fn density(&self) -> Vec<f64> {
        self.spin_up
            .iter()
            .zip(&self.spin_down)
            .map(|(u, d)| u.norm_sqr() + d.norm_sqr())
            .collect()
    }
}

/// von Neumann coupling: applies `exp{iλq·op}` to the spinor at each grid
/// point `q`. Requires the position representation, where the coupling is
/// diagonal, and a Hermitian observable.
pub fn couple(joint: &JointState, op: &SpinOperator, lambda: f64) -> Result<JointState> {
    if joint.representation != Representation::Position {
        return Err(Error::WrongRepresentation {
            expected: Representation::Position,
            got: joint.representation,
        });
    }
    if !op.is_hermitian(1e-12) {
        return Err(Error::NotHermitian);
    }
    let (a0, [ax, ay, az]) = op.pauli_components();
    let (a0, ax, ay, az) = (a0.re, ax.re, ay.re, az.re);
    let r = (ax * ax + ay * ay + az * az).sqrt();
    let (ux, uy, uz) = if r > 0.0 { (ax / r, ay / r, az / r) } else { (0.0, 0.0, 0.0) };
    let mut spin_up = Vec::with_capacity(joint.grid.count);
    let mut spin_down = Vec::with_capacity(joint.grid.count);
    for (i, q) in joint.grid.points().enumerate() {
        let t = lambda * q;
        let phase = C64::new(0.0, t * a0).exp();
        let (s, c) = (t * r).sin_cos();
        let i_s = C64::new(0.0, s);
        let up = joint.spin_up[i];
        let down = joint.spin_down[i];
        // cos·I + i·sin·(n̂·σ) applied to the spinor
        let new_up = c * up + i_s * (uz * up + C64::new(ux, -uy) * down);
        let new_down = c * down + i_s * (C64::new(ux, uy) * up - uz * down);
        spin_up.push(phase * new_up);
        spin_down.push(phase * new_down);
    }
    Ok(JointState {
        grid: joint.grid,
        representation: joint.representation,
        spin_up,
        spin_down,
    })
}

/// Projects the joint state on a final spin state.
///
/// Returns the renormalized conditional pointer wavefunction and the
/// post-selection probability (the pre-normalization norm², assuming the
/// joint state was normalized).
pub fn postselect(joint: &JointState, post: &SpinState) -> Result<(GridWavefunction, f64)> {
    let [p0, p1] = post.amplitudes();
    let raw: Vec<C64> = joint
        .spin_up
        .iter()
        .zip(&joint.spin_down)
        .map(|(u, d)| p0.conj() * u + p1.conj() * d)
        .collect();
    let probability: f64 = raw.iter().map(|s| s.norm_sqr()).sum::<f64>() * joint.grid.step;
    if probability < 1e-14 {
        return Err(Error::NullPostSelection);
    }
    let inv = C64::new(1.0 / probability.sqrt(), 0.0);
    Ok((
        GridWavefunction {
            grid: joint.grid,
            representation: joint.representation,
            samples: raw.into_iter().map(|s| s * inv).collect(),
        },
        probability,
    ))
}

/// Weak-value approximation of the post-selected pointer: the analytic
/// momentum-representation state
/// `⟨Ψfin|Ψin⟩ · (2Δ²/π)^{1/4} exp{−Δ²(p − λA_w)²} e^{−i(p−λA_w)c}`,
/// sampled on the momentum grid conjugate to `grid`.
///
/// The state is intentionally not normalized: its momentum mean is
/// `λ·Re(A_w)` and its norm deficit tracks the post-selection probability
/// together with `λ·Im(A_w)`.
pub fn weak_approx_pointer(
    sel: &PrePostSelection,
    op: &SpinOperator,
    lambda: f64,
    spec: &GaussianSpec,
    grid: &GridSpec,
) -> Result<GridWavefunction> {
    let a_w = weak_value(sel, op)?;
    let prefactor = crate::spin::overlap(&sel.post, &sel.pre);
    let out_grid = grid.conjugate();
    let d2 = spec.spread * spec.spread;
    let norm = (2.0 * d2 / PI).powf(0.25);
    let samples = out_grid
        .points()
        .map(|p| {
            let shifted = C64::new(p, 0.0) - lambda * a_w;
            let gauss = (-d2 * shifted * shifted).exp();
            let phase = (C64::new(0.0, -spec.center) * shifted).exp();
            prefactor * norm * gauss * phase
        })
        .collect();
    Ok(GridWavefunction {
        grid: out_grid,
        representation: Representation::Momentum,
        samples,
    })
}

/// Overlap magnitude `|⟨a|b⟩|` after normalizing both states.
///
/// Tolerates very small raw norms: collective post-selected states carry
/// exponentially small probability prefactors.
pub fn fidelity(a: &GridWavefunction, b: &GridWavefunction) -> Result<f64> {
    check_same_grid(a, b)?;
    let (na, nb) = (a.norm2(), b.norm2());
    if na < 1e-280 || nb < 1e-280 {
        return Err(Error::EmptyState);
    }
    let inner: C64 = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(inner.norm() * a.grid.step / (na * nb).sqrt())
}

/// Relative L2 distance `‖a − b‖ / ‖b‖` on the raw samples.
pub fn l2_error(a: &GridWavefunction, b: &GridWavefunction) -> Result<f64> {
    check_same_grid(a, b)?;
    let diff: f64 = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    let denom: f64 = b.samples.iter().map(|s| s.norm_sqr()).sum();
    if denom < 1e-300 {
        return Err(Error::EmptyState);
    }
    Ok((diff / denom).sqrt())
}

fn check_same_grid(a: &GridWavefunction, b: &GridWavefunction) -> Result<()> {
    if a.representation != b.representation || !a.grid.close_to(&b.grid) {
        return Err(Error::GridMismatch);
    }
    Ok(())
}
