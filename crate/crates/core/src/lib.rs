//! Qubit states invariant, up to a global phase, under permutation subgroups
//! of the symmetric group acting on qubit positions.
//!
//! The crate covers permutation arithmetic, orbit enumeration for the
//! symmetric, alternating, cyclic and dihedral groups, one-dimensional
//! characters, generalized Dicke states, symmetrization of product states,
//! necklace classification and local-unitary tooling.

pub mod characters;
pub mod dicke;
pub mod error;
pub mod group;
pub mod lu;
pub mod necklace;
pub mod perm;
pub mod state;
pub mod symmetrize;

pub use characters::{character_matching, dual_group, CharacterSpec, Phase, PhaseHom};
pub use dicke::{
    dicke_decompose, dicke_state, extract_character, invariant_subspace, DickeDecomposition,
    GenDickeState,
};
pub use error::{Error, Result};
pub use group::{
    act_on_bits, all_orbits, make_subgroup, make_subgroup_with_caps, orbit_of, BitString,
    EnumerationCaps, GroupKind, GroupRef, OrbitRecord, PermSubgroup,
};
pub use lu::{
    lu_invariants, m3_conjugate_connector, m3_connector, stab_algebra_dim, LocalUnitary1Q,
    LocalUnitaryNQ,
};
pub use necklace::{
    check_dn_promotion, check_sn_promotion, check_sp_cp_parity, classify_necklace, NecklaceClass,
    SymmetryType,
};
pub use perm::{parse_cycles, Permutation};
pub use state::{Qubit, StateVector};
pub use symmetrize::{gsym, make_m3, make_m4, BlochPoint, QubitTuple};
