//! Local unitaries: single-qubit rotations, the three-qubit connectors
//! between the alternating-group states, the stabilizer Lie algebra of a
//! state, and reduced-density invariants.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

use nalgebra::{DMatrix, Matrix2, Matrix3};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{Qubit, StateVector, NORM_TOL};
use crate::symmetrize::{make_m4, omega, BlochPoint};

/// Tolerance for `U†U = I`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Relative singular-value cutoff for the stabilizer null space.
pub const NULL_SPACE_TOL: f64 = 1e-8;
/// Largest register accepted by [`stab_algebra_dim`].
pub const STAB_MAX_QUBITS: usize = 10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> Matrix2<Complex64> {
    Matrix2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.))
}

pub fn pauli_y() -> Matrix2<Complex64> {
    Matrix2::new(c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.))
}

pub fn pauli_z() -> Matrix2<Complex64> {
    Matrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.))
}

/// A 2×2 unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitary1Q(Matrix2<Complex64>);

impl LocalUnitary1Q {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self> {
        let defect = (m.adjoint() * m - Matrix2::identity()).norm();
        if !(defect <= UNITARY_TOL) {
            return Err(Error::InvalidInput(format!(
                "matrix is not unitary (defect {defect:.3e})"
            )));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn diagonal(d0: Complex64, d1: Complex64) -> Result<Self> {
        Self::new(Matrix2::new(d0, c(0., 0.), c(0., 0.), d1))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    /// `self · other`.
    pub fn then_after(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }

    pub fn apply_to_qubit(&self, q: &Qubit) -> Qubit {
        let [a, b] = q.amplitudes();
        Qubit::from_raw([
            self.0[(0, 0)] * a + self.0[(0, 1)] * b,
            self.0[(1, 0)] * a + self.0[(1, 1)] * b,
        ])
    }

    /// Applies the gate to qubit `k` (one-based) of `psi`.
    pub fn apply_on(&self, psi: &StateVector, k: usize) -> Result<StateVector> {
        let n = psi.n();
        if k == 0 || k > n {
            return Err(Error::InvalidInput(format!(
                "qubit {k} out of range 1..={n}"
            )));
        }
        let mask = 1usize << (n - k);
        let mut out = psi.clone();
        let src = psi.amplitudes();
        let dst = out.amplitudes_mut();
        for i in 0..src.len() {
            if i & mask != 0 {
                continue;
            }
            let (a0, a1) = (src[i], src[i | mask]);
            dst[i] = self.0[(0, 0)] * a0 + self.0[(0, 1)] * a1;
            dst[i | mask] = self.0[(1, 0)] * a0 + self.0[(1, 1)] * a1;
        }
        Ok(out)
    }
}

/// A tensor product of single-qubit unitaries; factor `k` acts on qubit `k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalUnitaryNQ {
    factors: Vec<LocalUnitary1Q>,
}

impl LocalUnitaryNQ {
    pub fn new(factors: Vec<LocalUnitary1Q>) -> Self {
        Self { factors }
    }

    pub fn uniform(u: LocalUnitary1Q, n: usize) -> Self {
        Self {
            factors: vec![u; n],
        }
    }

    pub fn factors(&self) -> &[LocalUnitary1Q] {
        &self.factors
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.n() != self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: psi.n(),
            });
        }
        let mut out = psi.clone();
        for (k, u) in self.factors.iter().enumerate() {
            out = u.apply_on(&out, k + 1)?;
        }
        Ok(out)
    }
}

/// `exp(-i·angle/2·(n_x X + n_y Y + n_z Z))`.
pub fn rotation_unitary(axis: [f64; 3], angle: f64) -> Result<LocalUnitary1Q> {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNITARY_TOL {
        return Err(Error::InvalidInput(format!(
            "rotation axis has norm {norm}"
        )));
    }
    let (s, co) = (angle / 2.0).sin_cos();
    let generator =
        pauli_x() * c(axis[0], 0.) + pauli_y() * c(axis[1], 0.) + pauli_z() * c(axis[2], 0.);
    LocalUnitary1Q::new(Matrix2::identity() * c(co, 0.) - generator * c(0., s))
}

/// `exp(-i(u/2)Z)`.
pub fn z_rotation(u: f64) -> LocalUnitary1Q {
    rotation_unitary([0., 0., 1.], u).expect("unit axis")
}

/// `exp(iπ/4(αX + βY))` for `α² + β² = 1`.
pub fn xy_quarter_turn(alpha: f64, beta: f64) -> Result<LocalUnitary1Q> {
    rotation_unitary([alpha, beta, 0.0], -FRAC_PI_2)
}

/// The SO(3) matrix `R_ij = ½ tr(σ_i U σ_j U†)` of the Bloch-sphere rotation
/// induced by `U`.
pub fn bloch_rotation(u: &LocalUnitary1Q) -> Matrix3<f64> {
    let paulis = [pauli_x(), pauli_y(), pauli_z()];
    let m = u.matrix();
    Matrix3::from_fn(|i, j| 0.5 * (paulis[i] * m * paulis[j] * m.adjoint()).trace().re)
}

/// Bloch vector `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of a single-qubit state.
pub fn bloch_vector(q: &Qubit) -> [f64; 3] {
    let [a, b] = q.amplitudes();
    let ab = a.conj() * b;
    [2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()]
}

/// Unitary realizing the three-rotation chain that carries the north pole
/// to `p`: a quarter turn about `Y`, a quarter turn back about the
/// equatorial axis at azimuth `π/2 - θ`, then a turn about `Z` by
/// `φ - (π/2 - θ)`.
pub fn compose_north_to(p: &BlochPoint) -> LocalUnitary1Q {
    let tilt = FRAC_PI_2 - p.theta;
    let r1 = rotation_unitary([0., 1., 0.], FRAC_PI_2).expect("unit axis");
    let r2 = rotation_unitary([tilt.cos(), tilt.sin(), 0.], -FRAC_PI_2).expect("unit axis");
    let r3 = z_rotation(p.phi - tilt);
    r3.then_after(&r2).then_after(&r1)
}

/// Spherical coordinates of `a|0⟩ + b|1⟩` after stripping the phase of `a`;
/// `φ = arg b` when `a = 0` and `φ = 0` when `b = 0`.
pub fn bloch_angles(a: Complex64, b: Complex64) -> Result<(f64, f64)> {
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    if b.norm() < NORM_TOL {
        return Ok((0.0, 0.0));
    }
    if a.norm() < NORM_TOL {
        return Ok((PI, b.arg()));
    }
    let b = b * Complex64::from_polar(1.0, -a.arg());
    Ok((2.0 * b.norm().atan2(a.norm()), b.arg()))
}

/// `U` with `U^{⊗3}·M₃(1,0) = M₃(a,b)` up to phase.
pub fn m3_connector(a: Complex64, b: Complex64) -> Result<LocalUnitary1Q> {
    let (theta, phi) = bloch_angles(a, b)?;
    let u1 = rotation_unitary([FRAC_PI_6.cos(), FRAC_PI_6.sin(), 0.], FRAC_PI_2)?;
    let w = FRAC_PI_6 - theta;
    let u2 = rotation_unitary([w.cos(), w.sin(), 0.], -FRAC_PI_2)?;
    let u3 = z_rotation(phi + theta - FRAC_PI_2);
    Ok(u3.then_after(&u2).then_after(&u1))
}

/// `I ⊗ diag(1, ω) ⊗ diag(1, ω²)`, which sends `|α⟩` to its conjugate.
pub fn omega_phase_layer() -> LocalUnitaryNQ {
    let one = c(1., 0.);
    let w = omega();
    LocalUnitaryNQ::new(vec![
        LocalUnitary1Q::identity(),
        LocalUnitary1Q::diagonal(one, w).expect("unitary"),
        LocalUnitary1Q::diagonal(one, w * w).expect("unitary"),
    ])
}

/// Local operator taking `M₃(1,0)` to the conjugate of `M₃(a,b)`:
/// `conj(U)^{⊗3}` after the ω phase layer, with `U = m3_connector(a, b)`.
pub fn m3_conjugate_connector(a: Complex64, b: Complex64) -> Result<LocalUnitaryNQ> {
    let ubar = m3_connector(a, b)?.conjugate();
    Ok(LocalUnitaryNQ::new(
        omega_phase_layer()
            .factors()
            .iter()
            .map(|w| ubar.then_after(w))
            .collect(),
    ))
}

/// The 2×2 matrix sending `(a, b)` to `(a', b')` with
/// `U^{⊗3} M₃(a,b) = M₃(a',b')`, for `U` a `Z` rotation or an equatorial
/// quarter turn `exp(iπ/4(αX + βY))`.
pub fn induced_m3_action(u: &LocalUnitary1Q) -> Result<Matrix2<Complex64>> {
    let m = u.matrix();
    let off = m[(0, 1)].norm() + m[(1, 0)].norm();
    if off < UNITARY_TOL && (m[(0, 0)] * m[(1, 1)] - c(1., 0.)).norm() < UNITARY_TOL {
        return Ok(Matrix2::new(m[(0, 0)], c(0., 0.), c(0., 0.), m[(1, 1)]));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let quarter = (m[(0, 0)] - c(h, 0.)).norm() < UNITARY_TOL
        && (m[(1, 1)] - c(h, 0.)).norm() < UNITARY_TOL
        && (m[(1, 0)].norm() - h).abs() < UNITARY_TOL
        && (m[(0, 1)] + m[(1, 0)].conj()).norm() < UNITARY_TOL;
    if quarter {
        // m[(1,0)] = e^{iφ}/√2 with φ = ξ + π/2
        let xi = m[(1, 0)].arg() - FRAC_PI_2;
        let third = PI / 3.0;
        return Ok(Matrix2::new(
            c(h, 0.),
            Complex64::from_polar(h, FRAC_PI_2 - xi - third),
            Complex64::from_polar(h, FRAC_PI_2 + xi + third),
            c(h, 0.),
        ));
    }
    Err(Error::NotApplicable(
        "unitary is neither a Z rotation nor an equatorial quarter turn".into(),
    ))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabAlgebraResult {
    pub dimension: usize,
    /// Null-space vectors `(s, x₁, y₁, z₁, …, x_n, y_n, z_n)`: the generator
    /// is `i·s·Id + Σ_k i(x_k X + y_k Y + z_k Z)` on qubit `k`.
    pub basis: Vec<Vec<f64>>,
    /// `‖generator·ψ‖` for each basis vector.
    pub residuals: Vec<f64>,
    pub singular_values: Vec<f64>,
}

/// Dimension of the Lie algebra of local unitaries fixing `psi`, found as
/// the real null space of `(s, M₁, …, M_n) ↦ (i s + Σ_k M_k^{(k)})ψ`.
pub fn stab_algebra_dim(psi: &StateVector) -> Result<StabAlgebraResult> {
    let n = psi.n();
    if n > STAB_MAX_QUBITS {
        return Err(Error::CapExceeded {
            what: "stabilizer algebra",
            n,
            cap: STAB_MAX_QUBITS,
        });
    }
    if !psi.is_normalized() {
        return Err(Error::NotNormalized(psi.norm()));
    }
    let dim = psi.dim();
    let cols = 3 * n + 1;
    let mut columns: Vec<StateVector> = Vec::with_capacity(cols);
    columns.push(psi.scaled(c(0., 1.)));
    for k in 1..=n {
        for p in [pauli_x(), pauli_y(), pauli_z()] {
            let gate = LocalUnitary1Q(p * c(0., 1.));
            columns.push(gate.apply_on(psi, k)?);
        }
    }
    let a = DMatrix::<f64>::from_fn(2 * dim, cols, |r, col| {
        let z = columns[col].amplitudes()[r % dim];
        if r < dim {
            z.re
        } else {
            z.im
        }
    });
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma = svd.singular_values;
    let largest = sigma.iter().cloned().fold(0.0, f64::max);
    let cutoff = NULL_SPACE_TOL * largest.max(f64::MIN_POSITIVE);

    let mut basis = Vec::new();
    let mut residuals = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        if s <= cutoff {
            let h: Vec<f64> = v_t.row(i).iter().cloned().collect();
            let image = &a * nalgebra::DVector::from_column_slice(&h);
            residuals.push(image.norm());
            basis.push(h);
        }
    }
    let mut singular_values: Vec<f64> = sigma.iter().cloned().collect();
    singular_values.sort_by(|x, y| y.total_cmp(x));
    Ok(StabAlgebraResult {
        dimension: basis.len(),
        basis,
        residuals,
        singular_values,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BipartiteSpectrum {
    /// One-based qubits on one side of the cut.
    pub block: Vec<usize>,
    /// Eigenvalues of the block's reduced density matrix, descending.
    pub spectrum: Vec<f64>,
    pub entropy: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LuInvariants {
    pub single_qubit_spectra: Vec<Vec<f64>>,
    pub block_size: usize,
    pub bipartite_spectra: Vec<BipartiteSpectrum>,
    pub avg_bipartite_entropy: f64,
}

/// Eigenvalues (descending) of the reduced density matrix of `block`.
pub fn reduced_spectrum(psi: &StateVector, block: &[usize]) -> Result<Vec<f64>> {
    let n = psi.n();
    if block.iter().any(|&k| k == 0 || k > n) {
        return Err(Error::InvalidInput(format!(
            "block {block:?} out of range 1..={n}"
        )));
    }
    let rest: Vec<usize> = (1..=n).filter(|k| !block.contains(k)).collect();
    let bit = |i: usize, k: usize| (i >> (n - k)) & 1;
    let index = |i: usize, qubits: &[usize]| qubits.iter().fold(0, |acc, &k| acc << 1 | bit(i, k));
    let rows = 1usize << block.len();
    let cols = 1usize << rest.len();
    let mut m = DMatrix::<Complex64>::zeros(rows, cols);
    for (i, a) in psi.amplitudes().iter().enumerate() {
        m[(index(i, block), index(i, &rest))] = *a;
    }
    let mut spectrum: Vec<f64> = m
        .svd(false, false)
        .singular_values
        .iter()
        .map(|s| s * s)
        .collect();
    spectrum.resize(rows, 0.0);
    spectrum.sort_by(|x, y| y.total_cmp(x));
    Ok(spectrum)
}

/// Base-2 von Neumann entropy of a spectrum.
pub fn entropy(spectrum: &[f64]) -> f64 {
    -spectrum
        .iter()
        .filter(|&&p| p > 1e-15)
        .map(|p| p * p.log2())
        .sum::<f64>()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            go(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Single-qubit spectra and the spectra of every `block`-qubit cut; cuts
/// into two halves are counted once.
pub fn lu_invariants(psi: &StateVector, block: usize) -> Result<LuInvariants> {
    let n = psi.n();
    if !psi.is_normalized() {
        return Err(Error::NotNormalized(psi.norm()));
    }
    if block == 0 || 2 * block > n {
        return Err(Error::InvalidInput(format!(
            "block size {block} must lie in 1..={}",
            n / 2
        )));
    }
    let single_qubit_spectra = (1..=n)
        .map(|k| reduced_spectrum(psi, &[k]))
        .collect::<Result<Vec<_>>>()?;
    let mut bipartite_spectra = Vec::new();
    for s in subsets(n, block) {
        if 2 * block == n && s[0] != 1 {
            continue;
        }
        let spectrum = reduced_spectrum(psi, &s)?;
        let entropy = entropy(&spectrum);
        bipartite_spectra.push(BipartiteSpectrum {
            block: s,
            spectrum,
            entropy,
        });
    }
    let avg =
        bipartite_spectra.iter().map(|b| b.entropy).sum::<f64>() / bipartite_spectra.len() as f64;
    Ok(LuInvariants {
        single_qubit_spectra,
        block_size: block,
        bipartite_spectra,
        avg_bipartite_entropy: avg,
    })
}

/// Haar-random element of SU(2) from a normalized Gaussian quaternion.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> LocalUnitary1Q {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        let [w, x, y, z] = q.map(|v| v / norm);
        let a = c(w, z);
        let b = c(y, x);
        return LocalUnitary1Q::new(Matrix2::new(a, -b.conj(), b, a.conj())).expect("SU(2)");
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LuSearchEvidence {
    pub trials: usize,
    pub best_overlap: f64,
    /// Always false: a random search cannot prove inequivalence.
    pub certifying: bool,
}

/// Random search for local unitaries taking `|M₄⟩` towards its conjugate.
/// Reports the best overlap found; this is evidence only.
pub fn search_m4_conjugate<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> LuSearchEvidence {
    let m4 = make_m4();
    let target = m4.conjugate();
    let mut best: f64 = 0.0;
    for _ in 0..trials {
        let op = LocalUnitaryNQ::new((0..4).map(|_| haar_su2(rng)).collect());
        let image = op.apply(&m4).expect("four factors");
        best = best.max(target.inner(&image).expect("same arity").norm());
    }
    LuSearchEvidence {
        trials,
        best_overlap: best,
        certifying: false,
    }
}
