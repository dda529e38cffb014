//! Generalized Dicke states, invariance testing and the invariant subspace
//! of a character.
//!
//! For a character `t` of `G` and an orbit `[I]` on which `t` is trivial
//! on the stabilizer, the unnormalized Dicke state puts `t(g)⁻¹` on every
//! `|g·L⟩`, `L` being the orbit representative. Every state with
//! `g|ψ⟩ = t(g)|ψ⟩` is a combination of these, one coefficient per orbit
//! (the amplitude at the representative).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{compatible_with_orbit, CharacterSpec, Phase, PhaseHom};
use crate::error::{Error, Result};
use crate::group::{all_orbits, orbit_of, BitString, EnumerationCaps, OrbitRecord, PermSubgroup};
use crate::state::StateVector;

/// Singular values below this count as zero when ranking the projector.
pub const RANK_TOL: f64 = 1e-10;
/// Coefficients below this modulus are dropped from a decomposition.
pub const COEFF_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct GenDickeState {
    pub orbit: OrbitRecord,
    pub character: PhaseHom,
    pub state: StateVector,
    pub unnormalized: StateVector,
}

fn check_arity(group: &PermSubgroup, n: usize) -> Result<()> {
    if group.n() != n {
        return Err(Error::ArityMismatch {
            expected: group.n(),
            found: n,
        });
    }
    Ok(())
}

/// The generalized Dicke state of the orbit through `bits`.
pub fn dicke_state(t: &PhaseHom, bits: &BitString) -> Result<GenDickeState> {
    let orbit = orbit_of(t.group(), bits)?;
    let transversal = orbit.transversal().to_vec();
    dicke_state_with_transversal(t, &orbit, &transversal)
}

/// Same as [`dicke_state`] for an already computed orbit.
pub fn dicke_state_of_orbit(t: &PhaseHom, orbit: &OrbitRecord) -> Result<GenDickeState> {
    dicke_state_with_transversal(t, orbit, orbit.transversal())
}

/// Builds the Dicke state from an explicit transversal: `transversal[i]`
/// is a group-element index carrying the representative to
/// `orbit.members()[i]`. Any valid choice gives the same vector.
pub fn dicke_state_with_transversal(
    t: &PhaseHom,
    orbit: &OrbitRecord,
    transversal: &[usize],
) -> Result<GenDickeState> {
    let group = t.group();
    check_arity(group, orbit.n())?;
    if orbit.group_kind() != group.kind() {
        return Err(Error::InvalidInput(format!(
            "orbit of {}{} used with a character of {}",
            orbit.group_kind(),
            orbit.n(),
            group.label()
        )));
    }
    if !compatible_with_orbit(t, orbit) {
        return Err(Error::IncompatibleOrbit(orbit.representative().to_string()));
    }
    if transversal.len() != orbit.len() {
        return Err(Error::InvalidInput(format!(
            "transversal has {} entries for an orbit of size {}",
            transversal.len(),
            orbit.len()
        )));
    }
    let rep = orbit.representative().value();
    let mut unnormalized = StateVector::zeros(orbit.n());
    for (member, &g) in orbit.members().iter().zip(transversal) {
        if g >= group.order() || group.element(g).act_on_index(rep) != member.value() {
            return Err(Error::InvalidInput(format!(
                "transversal entry for {member} does not map the representative onto it"
            )));
        }
        unnormalized.amplitudes_mut()[member.value() as usize] = t.phase_at(g).neg().to_complex();
    }
    let scale = 1.0 / (orbit.len() as f64).sqrt();
    let state = unnormalized.scaled(Complex64::new(scale, 0.0));
    Ok(GenDickeState {
        orbit: orbit.clone(),
        character: t.clone(),
        state,
        unnormalized,
    })
}

/// The character `g ↦ λ_g` with `g|ψ⟩ = λ_g|ψ⟩`, or `None` when some
/// element of `G` does not fix `ψ` up to phase.
///
/// Only generators are applied to the state; their phases are snapped to
/// roots of unity of the generator's order and extended through the
/// group table, which also checks the homomorphism law.
pub fn extract_character(
    psi: &StateVector,
    group: &crate::group::GroupRef,
) -> Result<Option<PhaseHom>> {
    check_arity(group, psi.n())?;
    if !psi.is_normalized() {
        return Err(Error::NotNormalized(psi.norm()));
    }
    let mut assignment = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let image = psi.act(g)?;
        let Some(lambda) = image.equal_up_to_phase(psi)? else {
            return Ok(None);
        };
        let Some(phase) = Phase::snap(lambda, g.order()) else {
            return Ok(None);
        };
        assignment.push((g.clone(), phase));
    }
    match PhaseHom::from_generator_phases(group, &assignment) {
        Ok(t) => Ok(Some(t)),
        Err(Error::NotAHomomorphism(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One orbit's contribution: `coefficient` times the unnormalized Dicke state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DickeTerm {
    pub representative: BitString,
    #[serde(with = "pair")]
    pub coefficient: Complex64,
}

#[derive(Clone, Debug)]
pub struct DickeDecomposition {
    pub character: PhaseHom,
    pub terms: Vec<DickeTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct DecompositionFile {
    group: String,
    character: CharacterSpec,
    terms: Vec<DickeTerm>,
}

mod pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

impl DickeDecomposition {
    /// Sum of coefficient times unnormalized Dicke state.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let n = self.character.group().n();
        let mut acc = StateVector::zeros(n);
        for term in &self.terms {
            let d = dicke_state(&self.character, &term.representative)?;
            acc = acc.add_scaled(term.coefficient, &d.unnormalized)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DecompositionFile {
            group: self.character.group().label(),
            character: self.character.to_spec(),
            terms: self.terms.clone(),
        })
        .expect("decomposition serializes")
    }

    pub fn from_json(text: &str, caps: EnumerationCaps) -> Result<Self> {
        let file: DecompositionFile = serde_json::from_str(text)?;
        let character = PhaseHom::from_spec(&file.character, caps)?;
        for term in &file.terms {
            let orbit = orbit_of(character.group(), &term.representative)?;
            if orbit.representative() != term.representative {
                return Err(Error::InvalidInput(format!(
                    "{} is not an orbit representative",
                    term.representative
                )));
            }
        }
        Ok(Self {
            character,
            terms: file.terms,
        })
    }
}

/// Expands an invariant state in unnormalized Dicke states.
pub fn dicke_decompose(
    psi: &StateVector,
    group: &crate::group::GroupRef,
) -> Result<DickeDecomposition> {
    let character =
        extract_character(psi, group)?.ok_or_else(|| Error::NotInvariant(group.label()))?;
    let terms = all_orbits(group)?
        .iter()
        .filter_map(|orbit| {
            let c = psi.amplitude(&orbit.representative());
            (c.norm() >= COEFF_TOL).then(|| DickeTerm {
                representative: orbit.representative(),
                coefficient: c,
            })
        })
        .collect();
    Ok(DickeDecomposition { character, terms })
}

/// `P = (1/|G|) Σ_g t(g)⁻¹ ρ(g)` as a dense `2^n × 2^n` matrix, where
/// `ρ(g)` permutes qubits.
pub fn character_projector(t: &PhaseHom) -> Result<DMatrix<Complex64>> {
    let group = t.group();
    let n = group.n();
    let cap = group.caps().max_bits.min(12);
    if n > cap {
        return Err(Error::CapExceeded {
            what: "dense projector",
            n,
            cap,
        });
    }
    let dim = 1usize << n;
    let weight = 1.0 / group.order() as f64;
    let mut p = DMatrix::<Complex64>::zeros(dim, dim);
    for (g, phase) in group.elements().iter().zip(t.values()) {
        let coeff = phase.neg().to_complex() * weight;
        for i in 0..dim {
            p[(g.act_on_index(i as u64) as usize, i)] += coeff;
        }
    }
    Ok(p)
}

fn numerical_rank(m: DMatrix<Complex64>) -> usize {
    m.svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > RANK_TOL)
        .count()
}

/// Rank of the character projector, computed block by block: the qubit
/// permutations preserve each orbit, so `P` is block diagonal over orbits.
pub fn projector_rank(t: &PhaseHom) -> Result<usize> {
    let group = t.group();
    let weight = 1.0 / group.order() as f64;
    let mut rank = 0;
    for orbit in all_orbits(group)? {
        let size = orbit.len();
        let mut block = DMatrix::<Complex64>::zeros(size, size);
        for (col, member) in orbit.members().iter().enumerate() {
            for (g, phase) in group.elements().iter().zip(t.values()) {
                let image = BitString::new(group.n(), g.act_on_index(member.value()))?;
                let row = orbit.position(&image).expect("orbits are closed");
                block[(row, col)] += phase.neg().to_complex() * weight;
            }
        }
        rank += numerical_rank(block);
    }
    Ok(rank)
}

/// Orthonormal basis of `{ψ : g|ψ⟩ = t(g)|ψ⟩ for all g}`: the normalized
/// Dicke states of the compatible orbits, in descending representative
/// order. The count is cross-checked against the projector rank.
pub fn invariant_subspace(t: &PhaseHom) -> Result<Vec<GenDickeState>> {
    let basis: Vec<GenDickeState> = all_orbits(t.group())?
        .iter()
        .filter(|orbit| compatible_with_orbit(t, orbit))
        .map(|orbit| dicke_state_of_orbit(t, orbit))
        .collect::<Result<_>>()?;
    let projector_rank = projector_rank(t)?;
    if projector_rank != basis.len() {
        return Err(Error::SubspaceMismatch {
            projector_rank,
            dicke_count: basis.len(),
        });
    }
    Ok(basis)
}
