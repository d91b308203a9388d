//! Dense complex linear algebra for N-qubit state vectors and 2x2 operators.
//!
//! Index convention used everywhere: outcome/basis index `k` is 1-based; `k-1`
//! written in binary has the most significant bit holding player 1's strategy
//! bit and the least significant bit player N's. Bit value 0 means the
//! player's first strategy (basis |0>).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Squared-norm tolerance for state normalization.
pub const NORM_TOL: f64 = 1e-12;
/// Unitarity tolerance enforced on strategy operators.
pub const UNITARY_TOL: f64 = 1e-12;

/// A 2x2 complex matrix; a player's local operator.
///
/// Strategy operators are constructed through [`LocalOp::unitary`], which
/// enforces unitarity. [`LocalOp::from_matrix`] skips the check and exists for
/// linear combinations of strategies, whose unitarity is a derived property
/// checked downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOp {
    m: [[C64; 2]; 2],
}

impl LocalOp {
    /// Build a unitary operator; fails if U†U deviates from I beyond `UNITARY_TOL`.
    pub fn unitary(m: [[C64; 2]; 2]) -> Result<Self> {
        let op = Self::from_matrix(m);
        let residual = op.unitarity_residual();
        if !residual.is_finite() || residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(op)
    }

    /// Build an arbitrary 2x2 matrix without the unitarity check.
    pub fn from_matrix(m: [[C64; 2]; 2]) -> Self {
        LocalOp { m }
    }

    pub fn entries(&self) -> &[[C64; 2]; 2] {
        &self.m
    }

    pub fn identity() -> Self {
        Self::diag(C64::new(1.0, 0.0), C64::new(1.0, 0.0))
    }

    pub fn diag(a: C64, b: C64) -> Self {
        let zero = C64::new(0.0, 0.0);
        LocalOp {
            m: [[a, zero], [zero, b]],
        }
    }

    pub fn pauli_x() -> Self {
        let (z, o) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        LocalOp { m: [[z, o], [o, z]] }
    }

    pub fn pauli_y() -> Self {
        let z = C64::new(0.0, 0.0);
        LocalOp {
            m: [[z, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), z]],
        }
    }

    pub fn pauli_z() -> Self {
        Self::diag(C64::new(1.0, 0.0), C64::new(-1.0, 0.0))
    }

    pub fn i_sigma_x() -> Self {
        Self::pauli_x().scale(C64::new(0.0, 1.0))
    }

    /// iσ_y = [[0, 1], [-1, 0]], the real planar rotation by 90 degrees.
    pub fn i_sigma_y() -> Self {
        Self::pauli_y().scale(C64::new(0.0, 1.0))
    }

    pub fn i_sigma_z() -> Self {
        Self::pauli_z().scale(C64::new(0.0, 1.0))
    }

    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let c = |x: f64| C64::new(x, 0.0);
        LocalOp {
            m: [[c(s), c(s)], [c(s), c(-s)]],
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = self.m;
        for row in &mut m {
            for e in row {
                *e *= s;
            }
        }
        LocalOp { m }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.m;
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += other.m[i][j];
            }
        }
        LocalOp { m }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.m;
        let b = &other.m;
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        LocalOp { m }
    }

    pub fn adjoint(&self) -> Self {
        let a = &self.m;
        LocalOp {
            m: [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]],
        }
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Spectral norm (largest singular value).
    pub fn spectral_norm(&self) -> f64 {
        // Eigenvalues of the 2x2 Hermitian M†M via the closed form.
        let g = self.adjoint().mul(self);
        let a = g.m[0][0].re;
        let d = g.m[1][1].re;
        let b2 = g.m[0][1].norm_sqr();
        let tr = a + d;
        let disc = ((a - d) * (a - d) + 4.0 * b2).max(0.0).sqrt();
        (0.5 * (tr + disc)).max(0.0).sqrt()
    }

    /// Spectral norm of U†U - I; zero exactly for unitaries.
    pub fn unitarity_residual(&self) -> f64 {
        let mut g = self.adjoint().mul(self);
        g.m[0][0] -= C64::new(1.0, 0.0);
        g.m[1][1] -= C64::new(1.0, 0.0);
        g.spectral_norm()
    }

    /// Divide out a principal square root of the determinant, mapping a
    /// unitary into SU(2). The analysis built on eigenphases is invariant
    /// under this global phase.
    pub fn det_normalized(&self) -> Result<Self> {
        let d = self.det();
        if d.norm() < 1e-14 {
            return Err(Error::InvalidArgument(
                "cannot det-normalize a singular matrix".into(),
            ));
        }
        let s = d.sqrt();
        Ok(self.scale(C64::new(1.0, 0.0) / s))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }

    fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }
}

/// Normalized pure state of `n_players` qubits, amplitudes in binary order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_players: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Build a state, validating length and normalization.
    pub fn new(n_players: usize, amps: Vec<C64>) -> Result<Self> {
        if n_players == 0 {
            return Err(Error::InvalidArgument("need at least one player".into()));
        }
        if amps.len() != 1_usize << n_players {
            return Err(Error::DimensionMismatch(format!(
                "expected 2^{} = {} amplitudes, got {}",
                n_players,
                1_usize << n_players,
                amps.len()
            )));
        }
        if !amps.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "state not normalized: squared norm {norm_sq}"
            )));
        }
        Ok(StateVector { n_players, amps })
    }

    /// Basis state |index> of `n_players` qubits (0-based binary index).
    pub fn basis(n_players: usize, index: usize) -> Self {
        let dim = 1_usize << n_players;
        assert!(index < dim);
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        StateVector { n_players, amps }
    }

    pub(crate) fn from_amps_unchecked(n_players: usize, amps: Vec<C64>) -> Self {
        StateVector { n_players, amps }
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Bit position (from the least significant end) of player `i` (1-based).
    #[inline]
    pub fn bit_of_player(n_players: usize, player: usize) -> usize {
        debug_assert!(player >= 1 && player <= n_players);
        n_players - player
    }
}

/// Apply a 2x2 operator to the qubit at `bit` (0 = least significant).
pub(crate) fn apply_at_bit(amps: &mut [C64], bit: usize, op: &LocalOp) {
    let m = op.entries();
    let stride = 1_usize << bit;
    let dim = amps.len();
    let mut base = 0;
    while base < dim {
        for offset in base..base + stride {
            let i0 = offset;
            let i1 = offset + stride;
            let a0 = amps[i0];
            let a1 = amps[i1];
            amps[i0] = m[0][0] * a0 + m[0][1] * a1;
            amps[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
        base += stride << 1;
    }
}

/// <bra| (op on qubit `bit`) |ket> without materializing the product state.
pub(crate) fn sandwich_at_bit(bra: &[C64], ket: &[C64], bit: usize, op: &LocalOp) -> C64 {
    let m = op.entries();
    let stride = 1_usize << bit;
    let dim = ket.len();
    let mut acc = C64::new(0.0, 0.0);
    let mut base = 0;
    while base < dim {
        for offset in base..base + stride {
            let i0 = offset;
            let i1 = offset + stride;
            let k0 = ket[i0];
            let k1 = ket[i1];
            acc += bra[i0].conj() * (m[0][0] * k0 + m[0][1] * k1);
            acc += bra[i1].conj() * (m[1][0] * k0 + m[1][1] * k1);
        }
        base += stride << 1;
    }
    acc
}

/// Apply the tensor product of the per-player operators to the state.
///
/// Norm is preserved when every operator is unitary; non-unitary inputs are
/// accepted (strategy mixtures) and the result carries whatever norm falls
/// out.
pub fn tensor_apply(ops: &[LocalOp], state: &StateVector) -> Result<StateVector> {
    if ops.len() != state.n_players() {
        return Err(Error::DimensionMismatch(format!(
            "got {} operators for {} players",
            ops.len(),
            state.n_players()
        )));
    }
    if !ops.iter().all(|op| op.is_finite()) {
        return Err(Error::InvalidArgument("non-finite operator entry".into()));
    }
    let n = state.n_players();
    let mut amps = state.amps().to_vec();
    for (idx, op) in ops.iter().enumerate() {
        let player = idx + 1;
        apply_at_bit(&mut amps, StateVector::bit_of_player(n, player), op);
    }
    Ok(StateVector::from_amps_unchecked(n, amps))
}

/// Inner product <a|b>, conjugate-linear in the first argument.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.n_players() != b.n_players() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} players",
            a.n_players(),
            b.n_players()
        )));
    }
    Ok(a.amps()
        .iter()
        .zip(b.amps())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// SU(2) element from three angles.
///
/// U = [[cos(θ/2) e^{-i(φ+λ)/2}, -sin(θ/2) e^{-i(φ-λ)/2}],
///      [sin(θ/2) e^{ i(φ-λ)/2},  cos(θ/2) e^{ i(φ+λ)/2}]]
///
/// det U = 1 identically and the map is onto SU(2).
pub fn su2_from_angles(theta: f64, phi: f64, lam: f64) -> LocalOp {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    let ep = C64::from_polar(1.0, -(phi + lam) / 2.0);
    let em = C64::from_polar(1.0, -(phi - lam) / 2.0);
    LocalOp::from_matrix([
        [ep * c, -em * s],
        [em.conj() * s, ep.conj() * c],
    ])
}

/// Derivatives of [`su2_from_angles`] with respect to (θ, φ, λ).
///
/// Each entry of U carries a single phase factor, so the φ and λ derivatives
/// are entrywise multiplications by ±i/2.
pub(crate) fn su2_gradients(theta: f64, phi: f64, lam: f64) -> [LocalOp; 3] {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    let ep = C64::from_polar(1.0, -(phi + lam) / 2.0);
    let em = C64::from_polar(1.0, -(phi - lam) / 2.0);
    let d_theta = LocalOp::from_matrix([
        [ep * (-0.5 * s), em * (-0.5 * c)],
        [em.conj() * (0.5 * c), ep.conj() * (-0.5 * s)],
    ]);
    let u = su2_from_angles(theta, phi, lam);
    let e = u.entries();
    let d_phi = LocalOp::from_matrix([
        [e[0][0] * C64::new(0.0, -0.5), e[0][1] * C64::new(0.0, -0.5)],
        [e[1][0] * C64::new(0.0, 0.5), e[1][1] * C64::new(0.0, 0.5)],
    ]);
    let d_lam = LocalOp::from_matrix([
        [e[0][0] * C64::new(0.0, -0.5), e[0][1] * C64::new(0.0, 0.5)],
        [e[1][0] * C64::new(0.0, -0.5), e[1][1] * C64::new(0.0, 0.5)],
    ]);
    [d_theta, d_phi, d_lam]
}

/// Eigen-decomposition of a unitary 2x2 operator.
#[derive(Debug, Clone)]
pub struct Eig2 {
    /// Eigenphases in (-π, π], larger first.
    pub phases: (f64, f64),
    /// Unitary Z with Z·v·Z† = diag(e^{i·phases.0}, e^{i·phases.1}).
    pub diagonalizer: LocalOp,
}

fn wrap_phase(mut p: f64) -> f64 {
    use std::f64::consts::PI;
    while p <= -PI {
        p += 2.0 * PI;
    }
    while p > PI {
        p -= 2.0 * PI;
    }
    p
}

/// Canonical phase: largest-magnitude component made real nonnegative.
fn canonical_eigvec(v: [C64; 2]) -> [C64; 2] {
    let pick = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    if pick.norm() < 1e-300 {
        return v;
    }
    let phase = pick / pick.norm();
    [v[0] * phase.conj(), v[1] * phase.conj()]
}

fn lex_key(v: &[C64; 2]) -> [f64; 4] {
    [v[0].re, v[0].im, v[1].re, v[1].im]
}

/// Diagonalize a unitary 2x2 operator.
///
/// Returns eigenphases in (-π, π] ordered larger-first (ties broken by
/// descending lexicographic order of the canonicalized eigenvectors) and the
/// diagonalizing unitary.
pub fn eig2(v: &LocalOp) -> Result<Eig2> {
    let residual = v.unitarity_residual();
    if residual > 1e-8 {
        return Err(Error::NotUnitary { residual });
    }
    let m = v.entries();
    let tr = v.trace();
    let det = v.det();
    let disc = (tr * tr - det * 4.0).sqrt();
    let l1 = (tr + disc) * 0.5;
    let l2 = (tr - disc) * 0.5;

    // Unitary with a repeated eigenvalue is a scalar matrix.
    if (l1 - l2).norm() < 1e-9 {
        let p = wrap_phase(l1.arg());
        return Ok(Eig2 {
            phases: (p, p),
            diagonalizer: LocalOp::identity(),
        });
    }

    let eigvec = |l: C64| -> [C64; 2] {
        // Null vector of (v - l I): rows of the adjugate give candidates.
        let c1 = [m[0][1], l - m[0][0]];
        let c2 = [l - m[1][1], m[1][0]];
        let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
        let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
        let (v0, v1, n) = if n1 >= n2 {
            (c1[0], c1[1], n1)
        } else {
            (c2[0], c2[1], n2)
        };
        if n < 1e-20 {
            // v is diagonal; match the eigenvalue to the diagonal entry.
            if (m[0][0] - l).norm() <= (m[1][1] - l).norm() {
                return [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
            }
            return [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        }
        let s = n.sqrt();
        [v0 / s, v1 / s]
    };

    let mut pairs = [
        (wrap_phase(l1.arg()), canonical_eigvec(eigvec(l1))),
        (wrap_phase(l2.arg()), canonical_eigvec(eigvec(l2))),
    ];

    let order_desc = |a: &(f64, [C64; 2]), b: &(f64, [C64; 2])| -> std::cmp::Ordering {
        match b.0.partial_cmp(&a.0).unwrap() {
            std::cmp::Ordering::Equal => {
                let ka = lex_key(&a.1);
                let kb = lex_key(&b.1);
                kb.partial_cmp(&ka).unwrap()
            }
            o => o,
        }
    };
    pairs.sort_by(order_desc);

    let (p1, x1) = (pairs[0].0, pairs[0].1);
    let (p2, x2) = (pairs[1].0, pairs[1].1);
    // Rows of Z are the conjugated eigenvectors.
    let z = LocalOp::from_matrix([
        [x1[0].conj(), x1[1].conj()],
        [x2[0].conj(), x2[1].conj()],
    ]);
    Ok(Eig2 {
        phases: (p1, p2),
        diagonalizer: z,
    })
}
