//! Exact complex 2×2 algebra for spin-1/2 states and observables.
//!
//! Provides Pauli matrices, eigenstates along arbitrary Bloch axes, weak
//! values for pre- and post-selected pairs, spin rotations in closed form,
//! and the decomposition `Â|Ψ⟩ = Ā|Ψ⟩ + ΔA|Ψ⊥⟩`.

use crate::error::{Error, Result};
use crate::C64;

/// Selections with |⟨Ψfin|Ψin⟩| at or below this are treated as orthogonal;
/// the weak value diverges there and a hard error beats silent overflow.
pub const ORTHOGONALITY_THRESHOLD: f64 = 1e-12;

/// Coordinate axis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Eigenvalue branch selector for [`eigenstate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAxis {
    pub nx: f64,
    pub ny: f64,
    pub nz: f64,
}

impl BlochAxis {
    /// Unit-norm axis; rejects vectors with norm² off 1 by more than 1e-12.
    pub fn new(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        let norm2 = nx * nx + ny * ny + nz * nz;
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitAxis { norm2 });
        }
        Ok(Self { nx, ny, nz })
    }

    /// Axis normalized from arbitrary components; rejects the zero vector.
    pub fn normalized(nx: f64, ny: f64, nz: f64) -> Result<Self> {
        let norm = (nx * nx + ny * ny + nz * nz).sqrt();
        if norm < 1e-12 {
            return Err(Error::NonUnitAxis { norm2: 0.0 });
        }
        Ok(Self {
            nx: nx / norm,
            ny: ny / norm,
            nz: nz / norm,
        })
    }

    pub fn x() -> Self {
        Self { nx: 1.0, ny: 0.0, nz: 0.0 }
    }

    pub fn y() -> Self {
        Self { nx: 0.0, ny: 1.0, nz: 0.0 }
    }

    pub fn z() -> Self {
        Self { nx: 0.0, ny: 0.0, nz: 1.0 }
    }

    /// Axis in the x–y plane at `degrees` from x towards y.
    pub fn xy_angle_deg(degrees: f64) -> Self {
        let rad = degrees.to_radians();
        Self { nx: rad.cos(), ny: rad.sin(), nz: 0.0 }
    }

    pub fn flipped(self) -> Self {
        Self { nx: -self.nx, ny: -self.ny, nz: -self.nz }
    }
}

/// Normalized spin-1/2 state in the σ_z basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    amps: [C64; 2],
}

impl SpinState {
    /// Builds a normalized state from arbitrary amplitudes.
    pub fn new(a0: C64, a1: C64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if norm < 1e-12 {
            return Err(Error::ZeroState);
        }
        Ok(Self {
            amps: [a0 / norm, a1 / norm],
        })
    }

    pub fn up_z() -> Self {
        Self { amps: [C64::new(1.0, 0.0), C64::new(0.0, 0.0)] }
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        self.amps
    }

    /// Global phase fixed so the first component above the orthogonality
    /// threshold is real and positive; keeps example values bit-reproducible.
    pub fn phase_fixed(self) -> Self {
        let [a0, a1] = self.amps;
        let lead = if a0.norm() > ORTHOGONALITY_THRESHOLD { a0 } else { a1 };
        let rot = lead.conj() / lead.norm();
        let mut b0 = a0 * rot;
        let mut b1 = a1 * rot;
        if a0.norm() > ORTHOGONALITY_THRESHOLD {
            b0 = C64::new(a0.norm(), 0.0);
        } else {
            b1 = C64::new(a1.norm(), 0.0);
        }
        Self { amps: [b0, b1] }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps[0].norm_sqr() + self.amps[1].norm_sqr()
    }
}

/// Complex 2×2 matrix acting on [`SpinState`]s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperator {
    m: [[C64; 2]; 2],
}

impl SpinOperator {
    pub fn from_rows(r0: [C64; 2], r1: [C64; 2]) -> Self {
        Self { m: [r0, r1] }
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self { m: [[one, zero], [zero, one]] }
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[row][col]
    }

    pub fn mul(&self, rhs: &SpinOperator) -> SpinOperator {
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        SpinOperator { m: out }
    }

    pub fn adjoint(&self) -> SpinOperator {
        Self {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    /// Applies the operator, returning raw (generally unnormalized) amplitudes.
    pub fn apply_raw(&self, s: &SpinState) -> [C64; 2] {
        let [a0, a1] = s.amplitudes();
        [
            self.m[0][0] * a0 + self.m[0][1] * a1,
            self.m[1][0] * a0 + self.m[1][1] * a1,
        ]
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.m[0][0].im.abs() <= tol
            && self.m[1][1].im.abs() <= tol
            && (self.m[0][1] - self.m[1][0].conj()).norm() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let p = self.mul(&self.adjoint());
        (p.m[0][0] - C64::new(1.0, 0.0)).norm() <= tol
            && (p.m[1][1] - C64::new(1.0, 0.0)).norm() <= tol
            && p.m[0][1].norm() <= tol
            && p.m[1][0].norm() <= tol
    }

    /// Expands `M = a0·I + a·σ`. Coefficients are real for Hermitian `M`.
    pub fn pauli_components(&self) -> (C64, [C64; 3]) {
        let half = C64::new(0.5, 0.0);
        let a0 = (self.m[0][0] + self.m[1][1]) * half;
        let ax = (self.m[0][1] + self.m[1][0]) * half;
        let ay = (self.m[1][0] - self.m[0][1]) * half * C64::new(0.0, -1.0);
        let az = (self.m[0][0] - self.m[1][1]) * half;
        (a0, [ax, ay, az])
    }

    /// Closed-form `exp{i·t·M}` for Hermitian `M` via the Pauli expansion.
    pub fn exp_i(&self, t: f64) -> Result<SpinOperator> {
        if !self.is_hermitian(1e-12) {
            return Err(Error::NotHermitian);
        }
        let (a0, [ax, ay, az]) = self.pauli_components();
        let (a0, ax, ay, az) = (a0.re, ax.re, ay.re, az.re);
        let r = (ax * ax + ay * ay + az * az).sqrt();
        let phase = C64::new(0.0, t * a0).exp();
        if r < 1e-300 {
            let zero = C64::new(0.0, 0.0);
            return Ok(SpinOperator::from_rows([phase, zero], [zero, phase]));
        }
        let axis = BlochAxis::new(ax / r, ay / r, az / r)?;
        let mut u = rotation_about(&axis, t * r);
        for row in u.m.iter_mut() {
            for e in row.iter_mut() {
                *e *= phase;
            }
        }
        Ok(u)
    }
}

/// Pre-selected ket and post-selected bra defining a weak value.
#[derive(Debug, Clone, Copy)]
pub struct PrePostSelection {
    pub pre: SpinState,
    pub post: SpinState,
}

/// Result of [`orthogonal_decomposition`]: `Â|Ψ⟩ = mean·|Ψ⟩ + spread·|Ψ⊥⟩`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub mean: f64,
    pub spread: f64,
    /// `None` when `|Ψ⟩` is an eigenstate (spread below 1e-12).
    pub perp: Option<SpinState>,
}

/// One post-selection branch of [`post_selected_decomposition`].
#[derive(Debug, Clone, Copy)]
pub struct Branch {
    pub probability: f64,
    /// `None` when the branch is orthogonal to the pre-selection.
    pub weak_value: Option<C64>,
}

/// The Pauli matrix for `axis`: Hermitian, unitary, traceless.
pub fn pauli(axis: Axis) -> SpinOperator {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match axis {
        Axis::X => SpinOperator::from_rows([zero, one], [one, zero]),
        Axis::Y => SpinOperator::from_rows([zero, -i], [i, zero]),
        Axis::Z => SpinOperator::from_rows([one, zero], [zero, -one]),
    }
}

/// Spin component `n·σ` along a unit axis; eigenvalues ±1.
pub fn spin_along(axis: &BlochAxis) -> SpinOperator {
    let n = C64::new(axis.nz, 0.0);
    let off = C64::new(axis.nx, -axis.ny);
    SpinOperator::from_rows([n, off], [off.conj(), -n])
}

/// Eigenstate of `n·σ` with eigenvalue `sign`, phase fixed so the first
/// nonzero component is real positive.
pub fn eigenstate(axis: &BlochAxis, sign: Sign) -> SpinState {
    let theta = axis.nz.clamp(-1.0, 1.0).acos();
    let phi = axis.ny.atan2(axis.nx);
    let (h_sin, h_cos) = (theta / 2.0).sin_cos();
    let e_phi = C64::new(0.0, phi).exp();
    let state = match sign {
        Sign::Plus => SpinState {
            amps: [C64::new(h_cos, 0.0), e_phi * h_sin],
        },
        Sign::Minus => SpinState {
            amps: [C64::new(h_sin, 0.0), -e_phi * h_cos],
        },
    };
    state.phase_fixed()
}

/// Inner product `⟨bra|ket⟩`; conjugate-linear in `bra`.
pub fn overlap(bra: &SpinState, ket: &SpinState) -> C64 {
    let [b0, b1] = bra.amplitudes();
    let [k0, k1] = ket.amplitudes();
    b0.conj() * k0 + b1.conj() * k1
}

/// Weak value `⟨Ψfin|Â|Ψin⟩ / ⟨Ψfin|Ψin⟩`; generally complex and unbounded
/// by the spectrum of `Â`.
pub fn weak_value(sel: &PrePostSelection, op: &SpinOperator) -> Result<C64> {
    let denom = overlap(&sel.post, &sel.pre);
    if denom.norm() <= ORTHOGONALITY_THRESHOLD {
        return Err(Error::OrthogonalSelection);
    }
    let applied = op.apply_raw(&sel.pre);
    let [p0, p1] = sel.post.amplitudes();
    let num = p0.conj() * applied[0] + p1.conj() * applied[1];
    Ok(num / denom)
}

/// n-th weak moment `(Âⁿ)_w = ⟨Ψfin|Âⁿ|Ψin⟩ / ⟨Ψfin|Ψin⟩`.
pub fn weak_value_moment(sel: &PrePostSelection, op: &SpinOperator, n: u32) -> Result<C64> {
    let mut power = SpinOperator::identity();
    for _ in 0..n {
        power = power.mul(op);
    }
    weak_value(sel, &power)
}

/// Expectation value `⟨Ψ|Â|Ψ⟩` of a Hermitian operator.
pub fn expectation(state: &SpinState, op: &SpinOperator) -> Result<f64> {
    if !op.is_hermitian(1e-12) {
        return Err(Error::NotHermitian);
    }
    let applied = op.apply_raw(state);
    let [a0, a1] = state.amplitudes();
    Ok((a0.conj() * applied[0] + a1.conj() * applied[1]).re)
}

/// Splits `Â|Ψ⟩` into `Ā|Ψ⟩ + ΔA|Ψ⊥⟩` with `⟨Ψ|Ψ⊥⟩ = 0` and
/// `ΔA = √(⟨Â²⟩ − ⟨Â⟩²) ≥ 0`.
pub fn orthogonal_decomposition(state: &SpinState, op: &SpinOperator) -> Result<Decomposition> {
    let mean = expectation(state, op)?;
    let sq = op.mul(op);
    let second = expectation(state, &sq)?;
    let spread = (second - mean * mean).max(0.0).sqrt();
    if spread < 1e-12 {
        return Ok(Decomposition { mean, spread: 0.0, perp: None });
    }
    // Ψ⊥ = (Â − Ā)|Ψ⟩ / ΔA with its natural phase, so the reconstruction
    // identity holds as a vector equation, not merely up to phase.
    let applied = op.apply_raw(state);
    let [a0, a1] = state.amplitudes();
    let perp = SpinState::new(applied[0] - mean * a0, applied[1] - mean * a1)?;
    Ok(Decomposition { mean, spread, perp: Some(perp) })
}

/// Rotation `exp{i·angle·(n·σ)} = cos(angle)·I + i·sin(angle)·(n·σ)`.
pub fn rotation_about(axis: &BlochAxis, angle: f64) -> SpinOperator {
    let (s, c) = angle.sin_cos();
    let ns = spin_along(axis);
    let i_s = C64::new(0.0, s);
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for (r, row) in m.iter_mut().enumerate() {
        for (col, e) in row.iter_mut().enumerate() {
            let id = if r == col { C64::new(c, 0.0) } else { C64::new(0.0, 0.0) };
            *e = id + i_s * ns.entry(r, col);
        }
    }
    SpinOperator { m }
}

/// Expands `Ā = Σ_j P(j)·A_w(j)` over an orthonormal post-selection basis.
///
/// The weighted real parts of the branch weak values reassemble the
/// expectation value of `op` in `pre`.
pub fn post_selected_decomposition(
    pre: &SpinState,
    op: &SpinOperator,
    basis: &[SpinState; 2],
) -> Result<Vec<Branch>> {
    if !op.is_hermitian(1e-12) {
        return Err(Error::NotHermitian);
    }
    let cross = overlap(&basis[0], &basis[1]).norm();
    if cross > 1e-10
        || (basis[0].norm_sqr() - 1.0).abs() > 1e-10
        || (basis[1].norm_sqr() - 1.0).abs() > 1e-10
    {
        return Err(Error::DegenerateBasis);
    }
    let applied = op.apply_raw(pre);
    let mut branches = Vec::with_capacity(2);
    for post in basis {
        let amp = overlap(post, pre);
        let probability = amp.norm_sqr();
        let weak_value = if amp.norm() <= ORTHOGONALITY_THRESHOLD {
            None
        } else {
            let [p0, p1] = post.amplitudes();
            Some((p0.conj() * applied[0] + p1.conj() * applied[1]) / amp)
        };
        branches.push(Branch { probability, weak_value });
    }
    Ok(branches)
}
