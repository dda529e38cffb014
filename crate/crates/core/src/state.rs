//! Dense `n`-qubit state vectors.
//!
//! Amplitude index convention is big-endian: the bit string `i₁i₂…i_n`
//! sits at index `Σ i_k 2^{n-k}`, so qubit 1 is the most significant bit
//! and `|0011⟩` is index 3. The convention is fixed and recorded in the
//! file format as `"bigendian-q1msb"`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::BitString;
use crate::perm::Permutation;

/// Amplitudes below this modulus count as structural zeros.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Required `|⟨φ|ψ⟩|` for phase equality is `1 - PHASE_OVERLAP_TOL`.
pub const PHASE_OVERLAP_TOL: f64 = 1e-9;
/// Largest residual `‖ψ - λφ‖` accepted as phase equality.
pub const PHASE_RESIDUAL_TOL: f64 = 1e-8;
/// Norm tolerance for "normalized".
pub const NORM_TOL: f64 = 1e-12;

pub const CONVENTION: &str = "bigendian-q1msb";

/// Largest qubit count accepted for dense vectors.
pub const MAX_QUBITS: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidInput(format!("qubit count {n} out of range")));
        }
        if amps.len() != 1 << n {
            return Err(Error::InvalidInput(format!(
                "{} amplitudes given for {n} qubits (need {})",
                amps.len(),
                1usize << n
            )));
        }
        Ok(Self { n, amps })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0 && n <= MAX_QUBITS, "qubit count {n} out of range");
        Self {
            n,
            amps: vec![Complex64::new(0.0, 0.0); 1 << n],
        }
    }

    pub fn basis(bits: &BitString) -> Self {
        let mut s = Self::zeros(bits.len());
        s.amps[bits.value() as usize] = Complex64::new(1.0, 0.0);
        s
    }

    /// `|φ₁⟩ ⊗ … ⊗ |φ_n⟩`.
    pub fn product(qubits: &[Qubit]) -> Result<Self> {
        let mut it = qubits.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidInput("empty product".into()))?;
        let mut acc = Self {
            n: 1,
            amps: first.amplitudes().to_vec(),
        };
        for q in it {
            acc = acc.tensor(&q.as_state());
        }
        Ok(acc)
    }

    /// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
    pub fn haar_random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let amps = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self { n, amps }
            .normalized()
            .expect("nonzero with probability one")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn amplitude(&self, bits: &BitString) -> Complex64 {
        self.amps[bits.value() as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a * z).collect(),
        }
    }

    /// `self + z·other`.
    pub fn add_scaled(&self, z: Complex64, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        Ok(Self {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + z * b)
                .collect(),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_arity(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_arity(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// `g|ψ⟩`: the coefficient of `|g·I⟩` in the output is that of `|I⟩`.
    pub fn act(&self, g: &Permutation) -> Result<Self> {
        if g.n() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: g.n(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[g.act_on_index(i as u64) as usize] = *a;
        }
        Ok(Self {
            n: self.n,
            amps: out,
        })
    }

    /// Returns `λ` with `self = λ·other` when both conditions hold:
    /// `|⟨other|self⟩| ≥ 1 - 1e-9` and `‖self - λ·other‖ ≤ 1e-8`, where
    /// `λ = ⟨other|self⟩ / |⟨other|self⟩|`.
    pub fn equal_up_to_phase(&self, other: &Self) -> Result<Option<Complex64>> {
        self.check_arity(other)?;
        if self.norm() == 0.0 || other.norm() == 0.0 {
            return Err(Error::ZeroVector);
        }
        let overlap = other.inner(self)?;
        let magnitude = overlap.norm();
        if magnitude < 1.0 - PHASE_OVERLAP_TOL || magnitude == 0.0 {
            return Ok(None);
        }
        let lambda = overlap / magnitude;
        let residual = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - lambda * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        Ok((residual <= PHASE_RESIDUAL_TOL).then_some(lambda))
    }

    pub fn conjugate(&self) -> Self {
        Self {
            n: self.n,
            amps: self.amps.iter().map(Complex64::conj).collect(),
        }
    }

    /// Kronecker product; `self` occupies the leading (more significant) qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self {
            n: self.n + other.n,
            amps,
        }
    }

    /// Hamming weights carrying an amplitude of modulus at least [`SUPPORT_TOL`].
    pub fn weight_support(&self) -> BTreeSet<usize> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() >= SUPPORT_TOL)
            .map(|(i, _)| i.count_ones() as usize)
            .collect()
    }

    pub fn to_file(&self) -> StateFile {
        StateFile {
            n: self.n,
            convention: CONVENTION.to_string(),
            amplitudes: self.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn from_file(file: &StateFile) -> Result<Self> {
        if file.convention != CONVENTION {
            return Err(Error::InvalidInput(format!(
                "unsupported convention {:?} (expected {CONVENTION:?})",
                file.convention
            )));
        }
        Self::new(
            file.n,
            file.amplitudes
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("state serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// On-disk state format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    pub convention: String,
    pub amplitudes: Vec<[f64; 2]>,
}

/// A single-qubit state `a|0⟩ + b|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Qubit {
    amps: [Complex64; 2],
}

impl Qubit {
    /// Fails unless `|a|² + |b|² = 1` within 1e-12.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let q = Self { amps: [a, b] };
        let norm = q.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(q)
    }

    /// Normalizes `a|0⟩ + b|1⟩`.
    pub fn normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amps: [a / norm, b / norm],
        })
    }

    pub fn zero() -> Self {
        Self {
            amps: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    pub fn one() -> Self {
        Self {
            amps: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amps: [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        }
    }

    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amps: [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        (self.amps[0].norm_sqr() + self.amps[1].norm_sqr()).sqrt()
    }

    pub fn inner(&self, other: &Qubit) -> Complex64 {
        self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1]
    }

    /// Same ray: `|⟨self|other⟩| ≥ 1 - 1e-9`.
    pub fn coincides_up_to_phase(&self, other: &Qubit) -> bool {
        self.inner(other).norm() >= 1.0 - PHASE_OVERLAP_TOL
    }

    pub fn as_state(&self) -> StateVector {
        StateVector {
            n: 1,
            amps: self.amps.to_vec(),
        }
    }

    pub(crate) fn from_raw(amps: [Complex64; 2]) -> Self {
        Self { amps }
    }
}
