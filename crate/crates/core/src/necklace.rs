//! Binary necklaces (cyclic orbits of bit strings), their reflection
//! symmetry, and the tests deciding when a cyclically invariant state is
//! also dihedrally invariant, and a dihedrally invariant one fully
//! symmetric.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::characters::{compatible_with_orbit, Phase, PhaseHom};
use crate::dicke::extract_character;
use crate::error::{Error, Result};
use crate::group::{
    all_orbits, make_subgroup, orbit_of, BitString, GroupKind, GroupRef, OrbitRecord,
};
use crate::perm::Permutation;
use crate::state::StateVector;

/// Amplitude comparison tolerance for the promotion checks.
pub const COEFF_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryType {
    /// Some member equals its own reversal.
    #[serde(rename = "SP")]
    SelfPalindromic,
    /// Even length, no self-palindromic member, and some member's reversal
    /// is its single shift.
    #[serde(rename = "CP")]
    ClassPalindromic,
    #[serde(rename = "chiral")]
    Chiral,
}

impl std::fmt::Display for SymmetryType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::SelfPalindromic => "SP",
            Self::ClassPalindromic => "CP",
            Self::Chiral => "chiral",
        })
    }
}

/// Reflection axes of the `n`-gon by how many vertices they pass through.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MirrorLines {
    pub zero_vertex: usize,
    pub one_vertex: usize,
    pub two_vertex: usize,
}

impl MirrorLines {
    pub fn total(&self) -> usize {
        self.zero_vertex + self.one_vertex + self.two_vertex
    }
}

#[derive(Clone, Debug)]
pub struct NecklaceClass {
    pub orbit: OrbitRecord,
    pub symmetry: SymmetryType,
    pub mirror_lines: MirrorLines,
    pub cycle_order: usize,
}

impl NecklaceClass {
    pub fn mirror_line_count(&self) -> usize {
        self.mirror_lines.total()
    }

    /// Cycle order is `n` without mirror lines and `n / L` with `L` of them.
    pub fn cycle_order_matches_mirror_count(&self) -> bool {
        let n = self.orbit.n();
        match self.mirror_line_count() {
            0 => self.cycle_order == n,
            l => n % l == 0 && self.cycle_order == n / l,
        }
    }
}

/// Smallest `m > 0` with `ε^m·I = I`.
pub fn cycle_order(bits: &BitString) -> usize {
    let n = bits.len();
    (1..=n).find(|&m| bits.rotated(m) == *bits).unwrap_or(n)
}

/// Counts the reflections of the `n`-gon that preserve the coloring.
/// Vertex `k` (zero-based) carries bit `k + 1`; the reflection with
/// parameter `j` sends vertex `k` to `j - k mod n`.
pub fn mirror_lines(bits: &BitString) -> MirrorLines {
    let n = bits.len();
    let colour = |k: usize| bits.bit(k + 1);
    let mut out = MirrorLines::default();
    for j in 0..n {
        if (0..n).all(|k| colour((j + n - k) % n) == colour(k)) {
            if n % 2 == 1 {
                out.one_vertex += 1;
            } else if j % 2 == 0 {
                out.two_vertex += 1;
            } else {
                out.zero_vertex += 1;
            }
        }
    }
    out
}

/// String-level symmetry type of the necklace through `bits`.
pub fn symmetry_type(bits: &BitString) -> SymmetryType {
    let n = bits.len();
    let members: Vec<BitString> = (0..n).map(|k| bits.rotated(k)).collect();
    if members.iter().any(|k| k.reversed() == *k) {
        SymmetryType::SelfPalindromic
    } else if n % 2 == 0 && members.iter().any(|k| k.reversed() == k.rotated(1)) {
        SymmetryType::ClassPalindromic
    } else {
        SymmetryType::Chiral
    }
}

pub fn classify_necklace(bits: &BitString) -> Result<NecklaceClass> {
    let cn = make_subgroup(GroupKind::C, bits.len())?;
    classify_necklace_in(&cn, bits)
}

/// As [`classify_necklace`], reusing an already built `C_n`.
pub fn classify_necklace_in(cn: &GroupRef, bits: &BitString) -> Result<NecklaceClass> {
    if cn.kind() != GroupKind::C {
        return Err(Error::InvalidInput(format!(
            "{} is not a cyclic group",
            cn.label()
        )));
    }
    Ok(NecklaceClass {
        orbit: orbit_of(cn, bits)?,
        symmetry: symmetry_type(bits),
        mirror_lines: mirror_lines(bits),
        cycle_order: cycle_order(bits),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ParityReport {
    pub symmetry: SymmetryType,
    pub cycle_order: usize,
    /// All `k` in `0..n` with `τ·ε^k·I = I`.
    pub shifts: Vec<usize>,
    /// Every shift is even (SP) or every shift is odd (CP).
    pub holds: bool,
}

/// Parity of the shifts `k` for which `τ ε^k` fixes `bits`.
pub fn check_sp_cp_parity(bits: &BitString) -> Result<ParityReport> {
    let n = bits.len();
    let symmetry = symmetry_type(bits);
    let order = cycle_order(bits);
    if symmetry == SymmetryType::Chiral {
        return Err(Error::NotApplicable(format!("{bits} is chiral")));
    }
    if order % 2 == 1 {
        return Err(Error::NotApplicable(format!(
            "{bits} has odd cycle order {order}"
        )));
    }
    let shifts: Vec<usize> = (0..n)
        .filter(|&k| bits.rotated(k).reversed() == *bits)
        .collect();
    let want = usize::from(symmetry == SymmetryType::ClassPalindromic);
    let holds = shifts.iter().all(|k| k % 2 == want);
    Ok(ParityReport {
        symmetry,
        cycle_order: order,
        shifts,
        holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn ok(self) -> bool {
        self != Verdict::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DnConditions {
    /// `t_ε = ±1`.
    pub i: Verdict,
    /// A supported SP orbit forces `s_τ = 1`.
    pub ii: Verdict,
    /// A supported CP orbit forces `s_τ = s_ε`.
    pub iii: Verdict,
    /// On supported chiral orbits `c_J = s_τ c_{τJ}`.
    pub iv: Verdict,
}

impl DnConditions {
    pub fn all_ok(&self) -> bool {
        self.i.ok() && self.ii.ok() && self.iii.ok() && self.iv.ok()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DnCandidate {
    pub s_tau: i8,
    pub conditions: DnConditions,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DnReport {
    pub is_dn: bool,
    pub s_tau: Option<i8>,
    /// Phase of `ε` as a fraction of a turn.
    pub t_epsilon: Phase,
    /// Conditions for the chosen `s_τ`, or for `s_τ = 1` when none works.
    pub conditions: DnConditions,
    pub candidates: Vec<DnCandidate>,
    /// Direct test: `τψ = λψ` for some `λ`.
    pub direct_is_dn: bool,
    pub agrees: bool,
}

fn supported(psi: &StateVector, orbit: &OrbitRecord) -> bool {
    psi.amplitude(&orbit.representative()).norm() >= COEFF_TOL
}

/// Decides dihedral invariance of a cyclically invariant state orbit by
/// orbit, and cross-checks against applying the reversal directly.
pub fn check_dn_promotion(psi: &StateVector) -> Result<DnReport> {
    let n = psi.n();
    let cn = make_subgroup(GroupKind::C, n)?;
    let t = extract_character(psi, &cn)?.ok_or_else(|| Error::NotInvariant(cn.label()))?;
    let t_epsilon = t.phase(&Permutation::full_cycle(n))?;
    let s_epsilon = t_epsilon.as_sign();
    let cond_i = Verdict::from_bool(s_epsilon.is_some());

    let mut sp = false;
    let mut cp = false;
    let mut chiral = Vec::new();
    for orbit in all_orbits(&cn)? {
        if !supported(psi, &orbit) {
            continue;
        }
        match symmetry_type(&orbit.representative()) {
            SymmetryType::SelfPalindromic => sp = true,
            SymmetryType::ClassPalindromic => cp = true,
            SymmetryType::Chiral => chiral.push(orbit),
        }
    }

    let evaluate = |s_tau: i8| -> DnConditions {
        let ii = if sp {
            Verdict::from_bool(s_tau == 1)
        } else {
            Verdict::Vacuous
        };
        let iii = if cp {
            Verdict::from_bool(s_epsilon == Some(s_tau))
        } else {
            Verdict::Vacuous
        };
        let iv = if chiral.is_empty() {
            Verdict::Vacuous
        } else {
            let s = f64::from(s_tau);
            Verdict::from_bool(chiral.iter().all(|orbit| {
                orbit.members().iter().all(|j| {
                    (psi.amplitude(j) - psi.amplitude(&j.reversed()) * s).norm() <= COEFF_TOL
                })
            }))
        };
        DnConditions {
            i: cond_i,
            ii,
            iii,
            iv,
        }
    };

    let candidates: Vec<DnCandidate> = [1i8, -1]
        .iter()
        .map(|&s_tau| DnCandidate {
            s_tau,
            conditions: evaluate(s_tau),
        })
        .collect();
    let chosen = candidates.iter().find(|c| c.conditions.all_ok());
    let is_dn = chosen.is_some();
    let direct_is_dn = psi
        .act(&Permutation::reversal(n))?
        .equal_up_to_phase(psi)?
        .is_some();
    Ok(DnReport {
        is_dn,
        s_tau: chosen.map(|c| c.s_tau),
        t_epsilon,
        conditions: chosen.unwrap_or(&candidates[0]).conditions,
        candidates,
        direct_is_dn,
        agrees: is_dn == direct_is_dn,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SnConditions {
    /// `t_ε = t_τ = 1`.
    pub i: Verdict,
    /// Equal representative coefficients across dihedral orbits of each weight.
    pub ii: Verdict,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SnReport {
    pub is_sn: bool,
    pub conditions: SnConditions,
    /// Weights whose dihedral orbits carry unequal coefficients.
    pub unequal_weights: Vec<usize>,
    /// Direct symmetric-group test, run when `S_n` fits the enumeration cap.
    pub direct_is_sn: Option<bool>,
    pub agrees: Option<bool>,
}

/// Decides full permutation invariance of a dihedrally invariant state.
pub fn check_sn_promotion(psi: &StateVector) -> Result<SnReport> {
    let n = psi.n();
    let dn = make_subgroup(GroupKind::D, n)?;
    let t = extract_character(psi, &dn)?.ok_or_else(|| Error::NotInvariant(dn.label()))?;
    let cond_i = Verdict::from_bool(
        t.phase(&Permutation::full_cycle(n))?.is_zero()
            && t.phase(&Permutation::reversal(n))?.is_zero(),
    );

    let mut by_weight: BTreeMap<usize, Vec<Complex64>> = BTreeMap::new();
    for orbit in all_orbits(&dn)? {
        by_weight
            .entry(orbit.weight())
            .or_default()
            .push(psi.amplitude(&orbit.representative()));
    }
    let unequal_weights: Vec<usize> = by_weight
        .iter()
        .filter(|(_, cs)| cs.iter().any(|c| (c - cs[0]).norm() > COEFF_TOL))
        .map(|(&w, _)| w)
        .collect();
    let cond_ii = Verdict::from_bool(unequal_weights.is_empty());
    let is_sn = cond_i.ok() && cond_ii.ok();

    let direct_is_sn = match make_subgroup(GroupKind::S, n) {
        Ok(sn) => Some(extract_character(psi, &sn)?.is_some_and(|t| t.is_trivial())),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SnReport {
        is_sn,
        conditions: SnConditions {
            i: cond_i,
            ii: cond_ii,
        },
        unequal_weights,
        direct_is_sn,
        agrees: direct_is_sn.map(|d| d == is_sn),
    })
}

/// Orbits of `t`'s group on which `t` is trivial on the stabilizer.
pub fn compatible_orbits(t: &PhaseHom) -> Result<Vec<OrbitRecord>> {
    Ok(all_orbits(t.group())?
        .into_iter()
        .filter(|o| compatible_with_orbit(t, o))
        .collect())
}
