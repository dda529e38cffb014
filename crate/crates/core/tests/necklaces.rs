use std::collections::BTreeSet;

mod common;

use permsym::necklace::{classify_necklace, SymmetryType};
use permsym::{
    act_on_bits, all_orbits, extract_character, make_subgroup, orbit_of, BitString, GroupKind,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn chiral_dihedral_orbits_split_into_two_cyclic_orbits() {
    for n in 3..=10 {
        let cn = make_subgroup(GroupKind::C, n).unwrap();
        let dn = make_subgroup(GroupKind::D, n).unwrap();
        for o in all_orbits(&cn).unwrap() {
            let rep = o.representative();
            let class = classify_necklace(&rep).unwrap();
            let cyclic: BTreeSet<u64> = o.members().iter().map(BitString::value).collect();
            let mirrored: BTreeSet<u64> =
                o.members().iter().map(|m| m.reversed().value()).collect();
            let dihedral: BTreeSet<u64> = orbit_of(&dn, &rep)
                .unwrap()
                .members()
                .iter()
                .map(BitString::value)
                .collect();
            if class.symmetry == SymmetryType::Chiral {
                assert!(cyclic.is_disjoint(&mirrored), "{rep}");
                let union: BTreeSet<u64> = cyclic.union(&mirrored).cloned().collect();
                assert_eq!(union, dihedral, "{rep}");
            } else {
                assert_eq!(cyclic, mirrored, "{rep}");
                assert_eq!(cyclic, dihedral, "{rep}");
            }
        }
    }
}

#[test]
fn necklace_counts_match_burnside() {
    // number of binary necklaces of length n: (1/n) Σ_{d | n} φ(d) 2^{n/d}
    fn phi(mut m: usize) -> usize {
        let mut out = m;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                while m % p == 0 {
                    m /= p;
                }
                out -= out / p;
            }
            p += 1;
        }
        if m > 1 {
            out -= out / m;
        }
        out
    }
    for n in 1..=12 {
        let burnside: usize = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| phi(d) << (n / d))
            .sum::<usize>()
            / n;
        let cn = make_subgroup(GroupKind::C, n).unwrap();
        assert_eq!(all_orbits(&cn).unwrap().len(), burnside, "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflections_fixing_a_supported_string_carry_trivial_phase(seed in any::<u64>(), n in 3usize..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = common::random_dihedral_state(n, &mut rng);
        let dn = make_subgroup(GroupKind::D, n).unwrap();
        let t = extract_character(&psi, &dn).unwrap().unwrap();
        for (i, a) in psi.amplitudes().iter().enumerate() {
            if a.norm() < 1e-10 {
                continue;
            }
            let bits = BitString::new(n, i as u64).unwrap();
            for (k, h) in dn.elements().iter().enumerate() {
                if act_on_bits(h, &bits).unwrap() == bits {
                    prop_assert!(t.phase_at(k).is_zero(), "{bits} fixed by {h}");
                }
            }
        }
    }
}
