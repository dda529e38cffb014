//! Symmetrization of single-qubit product states over a permutation group,
//! and the three- and four-qubit alternating-group states built from it.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::PhaseHom;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::state::{Qubit, StateVector, NORM_TOL};

/// Unnormalized sums below this norm are reported as the zero vector.
pub const ZERO_TOL: f64 = 1e-10;

/// `e^{2πi/3}`.
pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, TAU / 3.0)
}

/// A point on the Bloch sphere in spherical coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub theta: f64,
    pub phi: f64,
}

impl BlochPoint {
    /// `theta` must lie in `[0, π]`; `phi` is reduced mod `2π`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::InvalidInput(format!(
                "Bloch angles ({theta}, {phi}) out of range"
            )));
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(TAU),
        })
    }

    pub fn north() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn south() -> Self {
        Self {
            theta: PI,
            phi: 0.0,
        }
    }

    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn to_qubit(&self) -> Qubit {
        let (s, c) = (self.theta / 2.0).sin_cos();
        Qubit::normalized(Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi))
            .expect("unit vector")
    }

    /// Inverse of [`to_qubit`](Self::to_qubit) up to global phase.
    pub fn from_qubit(q: &Qubit) -> Self {
        let [a, b] = q.amplitudes();
        let theta = 2.0 * b.norm().atan2(a.norm());
        let phi = if b.norm() < NORM_TOL || a.norm() < NORM_TOL {
            0.0
        } else {
            (b.arg() - a.arg()).rem_euclid(TAU)
        };
        Self { theta, phi }
    }
}

/// `n` unit single-qubit states.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitTuple(Vec<Qubit>);

impl QubitTuple {
    pub fn new(qubits: Vec<Qubit>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::InvalidInput("empty qubit tuple".into()));
        }
        for q in &qubits {
            if (q.norm() - 1.0).abs() > NORM_TOL {
                return Err(Error::NotNormalized(q.norm()));
            }
        }
        Ok(Self(qubits))
    }

    pub fn from_bloch(points: &[BlochPoint]) -> Result<Self> {
        Self::new(points.iter().map(BlochPoint::to_qubit).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn qubits(&self) -> &[Qubit] {
        &self.0
    }

    pub fn product_state(&self) -> StateVector {
        StateVector::product(&self.0).expect("non-empty tuple")
    }

    /// Applies the same single-qubit unitary `[[u00, u01], [u10, u11]]`
    /// to every entry.
    pub fn map(&self, u: [[Complex64; 2]; 2]) -> Result<Self> {
        Self::new(
            self.0
                .iter()
                .map(|q| {
                    let [a, b] = q.amplitudes();
                    Qubit::from_raw([u[0][0] * a + u[0][1] * b, u[1][0] * a + u[1][1] * b])
                })
                .collect(),
        )
    }
}

/// `Σ_σ t(σ)⁻¹ σ(|φ₁⟩ ⊗ … ⊗ |φ_n⟩)` without normalization.
pub fn gsym_unnormalized(t: &PhaseHom, phis: &QubitTuple) -> Result<StateVector> {
    let group = t.group();
    if group.n() != phis.len() {
        return Err(Error::ArityMismatch {
            expected: group.n(),
            found: phis.len(),
        });
    }
    let product = phis.product_state();
    let mut acc = vec![Complex64::new(0.0, 0.0); product.dim()];
    for (g, phase) in group.elements().iter().zip(t.values()) {
        let weight = phase.neg().to_complex();
        for (i, a) in product.amplitudes().iter().enumerate() {
            acc[g.act_on_index(i as u64) as usize] += weight * a;
        }
    }
    StateVector::new(group.n(), acc)
}

/// The normalized symmetrization, or `None` when the sum vanishes.
pub fn gsym(t: &PhaseHom, phis: &QubitTuple) -> Result<Option<StateVector>> {
    let raw = gsym_unnormalized(t, phis)?;
    if raw.norm() < ZERO_TOL {
        return Ok(None);
    }
    raw.normalized().map(Some)
}

fn ket(n: usize, terms: &[(&str, Complex64)], scale: f64) -> StateVector {
    let mut s = StateVector::zeros(n);
    for (bits, c) in terms {
        let i = usize::from_str_radix(bits, 2).expect("binary literal");
        s.amplitudes_mut()[i] = c * scale;
    }
    s
}

/// `(|100⟩ + ω|010⟩ + ω²|001⟩)/√3`.
pub fn alpha() -> StateVector {
    let w = omega();
    let one = Complex64::new(1.0, 0.0);
    ket(
        3,
        &[("100", one), ("010", w), ("001", w * w)],
        1.0 / 3f64.sqrt(),
    )
}

/// `(|110⟩ + ω|011⟩ + ω²|101⟩)/√3`.
pub fn beta() -> StateVector {
    let w = omega();
    let one = Complex64::new(1.0, 0.0);
    ket(
        3,
        &[("110", one), ("011", w), ("101", w * w)],
        1.0 / 3f64.sqrt(),
    )
}

/// `a|α⟩ + b|β⟩` for `|a|² + |b|² = 1`.
pub fn make_m3(a: Complex64, b: Complex64) -> Result<StateVector> {
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    alpha().scaled(a).add_scaled(b, &beta())
}

/// The four-qubit state with weight-2 amplitudes `1, ω, ω²` on the pairs
/// `{0011, 1100}`, `{1010, 0101}`, `{1001, 0110}`, over `√6`.
pub fn make_m4() -> StateVector {
    let w = omega();
    let one = Complex64::new(1.0, 0.0);
    ket(
        4,
        &[
            ("0011", one),
            ("1100", one),
            ("1010", w),
            ("0101", w),
            ("1001", w * w),
            ("0110", w * w),
        ],
        1.0 / 6f64.sqrt(),
    )
}

fn check_len(phis: &QubitTuple, n: usize) -> Result<()> {
    if phis.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: phis.len(),
        });
    }
    Ok(())
}

/// All three states coincide up to phase.
pub fn a3_degenerate(phis: &QubitTuple) -> Result<bool> {
    check_len(phis, 3)?;
    let q = phis.qubits();
    Ok(q[0].coincides_up_to_phase(&q[1]) && q[0].coincides_up_to_phase(&q[2]))
}

/// Some three of the four states coincide up to phase.
pub fn a4_degenerate(phis: &QubitTuple) -> Result<bool> {
    check_len(phis, 4)?;
    let q = phis.qubits();
    let same = |i: usize, j: usize| q[i].coincides_up_to_phase(&q[j]);
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    Ok(triples
        .iter()
        .any(|&(i, j, k)| same(i, j) && same(i, k) && same(j, k)))
}

/// The unitary `[[ā, b̄], [-b, a]]` sending `a|0⟩ + b|1⟩` to `|0⟩`.
pub fn to_north(q: &Qubit) -> [[Complex64; 2]; 2] {
    let [a, b] = q.amplitudes();
    [[a.conj(), b.conj()], [-b, a]]
}

/// `|adf + w·bde + w²·bcf|` after rotating the first state to `|0⟩`, with
/// `(a,b)`, `(c,d)`, `(e,f)` the rotated second to fourth states and
/// `w = t((1,2,3))`. The four-qubit symmetrization vanishes exactly when
/// this does; its unnormalized norm is `2√6` times the residual.
pub fn a4_polynomial_residual(t: &PhaseHom, phis: &QubitTuple) -> Result<f64> {
    check_len(phis, 4)?;
    let g = Permutation::cycle(4, &[1, 2, 3])?;
    let w = match (t.phase(&g)?.numer(), t.phase(&g)?.denom()) {
        (1, 3) => omega(),
        (2, 3) => omega().conj(),
        _ => {
            return Err(Error::NotApplicable(
                "the character is trivial on 3-cycles".into(),
            ))
        }
    };
    let rotated = phis.map(to_north(&phis.qubits()[0]))?;
    let q = rotated.qubits();
    let [a, b] = q[1].amplitudes();
    let [c, d] = q[2].amplitudes();
    let [e, f] = q[3].amplitudes();
    Ok((a * d * f + w * b * d * e + w * w * b * c * f).norm())
}
