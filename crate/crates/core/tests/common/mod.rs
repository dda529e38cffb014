#![allow(dead_code)]

use num_complex::Complex64;
use permsym::dicke::dicke_state_of_orbit;
use permsym::necklace::compatible_orbits;
use permsym::{dual_group, make_subgroup, GroupKind, PhaseHom, StateVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0)
}

pub fn random_coefficient(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(
        rng.gen_range(0.2..1.0),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// Random superposition of the Dicke states compatible with `t`, each
/// orbit kept with probability `keep`; `None` if nothing was kept.
pub fn random_invariant_state(
    t: &PhaseHom,
    rng: &mut ChaCha8Rng,
    keep: f64,
) -> Option<StateVector> {
    let orbits = compatible_orbits(t).unwrap();
    let mut psi = StateVector::zeros(t.group().n());
    let mut any = false;
    for o in &orbits {
        if rng.gen_bool(keep) {
            let d = dicke_state_of_orbit(t, o).unwrap();
            psi = psi.add_scaled(random_coefficient(rng), &d.state).unwrap();
            any = true;
        }
    }
    any.then(|| psi.normalized().unwrap())
}

/// A random cyclically invariant state. Half the draws start from a
/// dihedral character so that both answers to the reversal question occur;
/// some of those get one cyclic orbit re-phased to break the reflection.
pub fn random_cyclic_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    loop {
        let mode = rng.gen_range(0..3);
        let psi = if mode == 0 {
            let cn = make_subgroup(GroupKind::C, n).unwrap();
            let t = dual_group(&cn).choose(rng).unwrap().clone();
            random_invariant_state(&t, rng, 0.6)
        } else {
            let dn = make_subgroup(GroupKind::D, n).unwrap();
            let t = dual_group(&dn).choose(rng).unwrap().clone();
            let psi = random_invariant_state(&t, rng, 0.6);
            if mode == 2 {
                psi.map(|p| rephase_one_cyclic_orbit(&p, rng))
            } else {
                psi
            }
        };
        if let Some(psi) = psi {
            return psi;
        }
    }
}

fn rephase_one_cyclic_orbit(psi: &StateVector, rng: &mut ChaCha8Rng) -> StateVector {
    let n = psi.n();
    let cn = make_subgroup(GroupKind::C, n).unwrap();
    let orbits = permsym::all_orbits(&cn).unwrap();
    let supported: Vec<_> = orbits
        .iter()
        .filter(|o| psi.amplitude(&o.representative()).norm() > 1e-10)
        .collect();
    let o = supported.choose(rng).unwrap();
    let z = Complex64::from_polar(1.0, rng.gen_range(0.5..std::f64::consts::TAU - 0.5));
    let mut out = psi.clone();
    for m in o.members() {
        out.amplitudes_mut()[m.value() as usize] *= z;
    }
    out.normalized().unwrap()
}

/// A random dihedrally invariant state. A third of the draws use the
/// trivial character with one coefficient per weight, so the state is
/// fully symmetric; some of those get one orbit nudged.
pub fn random_dihedral_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let dn = make_subgroup(GroupKind::D, n).unwrap();
    let dual = dual_group(&dn);
    loop {
        let mode = rng.gen_range(0..4);
        let psi = match mode {
            0 | 1 => {
                let t = &dual[0];
                let weights: Vec<Complex64> = (0..=n)
                    .map(|_| {
                        if rng.gen_bool(0.6) {
                            random_coefficient(rng)
                        } else {
                            c(0.0, 0.0)
                        }
                    })
                    .collect();
                let mut amps = vec![c(0.0, 0.0); 1 << n];
                for (i, a) in amps.iter_mut().enumerate() {
                    *a = weights[i.count_ones() as usize];
                }
                if mode == 1 {
                    let orbits = compatible_orbits(t).unwrap();
                    let o = orbits.choose(rng).unwrap();
                    let delta = random_coefficient(rng);
                    for m in o.members() {
                        amps[m.value() as usize] += delta;
                    }
                }
                let raw = StateVector::new(n, amps).unwrap();
                (raw.norm() > 1e-6).then(|| raw.normalized().unwrap())
            }
            2 => random_invariant_state(&dual[0], rng, 0.7),
            _ => random_invariant_state(dual.choose(rng).unwrap(), rng, 0.7),
        };
        if let Some(psi) = psi {
            return psi;
        }
    }
}

/// Reverses the qubit order of every basis index.
pub fn reverse_qubits(psi: &StateVector) -> Vec<Complex64> {
    let n = psi.n();
    let mut out = vec![c(0.0, 0.0); psi.dim()];
    for (i, a) in psi.amplitudes().iter().enumerate() {
        let r = (0..n).fold(0usize, |acc, k| acc | (i >> k & 1) << (n - 1 - k));
        out[r] = *a;
    }
    out
}

/// Swaps qubits `j` and `j + 1` (one-based, qubit 1 most significant).
pub fn swap_adjacent(psi: &StateVector, j: usize) -> Vec<Complex64> {
    let n = psi.n();
    let (p, q) = (n - j, n - j - 1);
    let mut out = vec![c(0.0, 0.0); psi.dim()];
    for (i, a) in psi.amplitudes().iter().enumerate() {
        let (bp, bq) = (i >> p & 1, i >> q & 1);
        let k = (i & !(1 << p) & !(1 << q)) | bq << p | bp << q;
        out[k] = *a;
    }
    out
}

pub fn distance(a: &[Complex64], b: &[Complex64], scale: Complex64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - scale * y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `τψ = ±ψ` for one of the two signs.
pub fn reversal_sign(psi: &StateVector) -> Option<i8> {
    let r = reverse_qubits(psi);
    [1i8, -1]
        .into_iter()
        .find(|&s| distance(&r, psi.amplitudes(), c(f64::from(s), 0.0)) < 1e-8)
}

/// `σψ` is a multiple of `ψ` for every adjacent transposition `σ`, with the
/// multiplier `1` (the sign character cannot occur for three or more
/// qubits, but it is checked rather than assumed).
pub fn fully_symmetric(psi: &StateVector) -> bool {
    (1..psi.n()).all(|j| {
        let s = swap_adjacent(psi, j);
        distance(&s, psi.amplitudes(), c(1.0, 0.0)) < 1e-8
    })
}

pub fn symmetric_subspace_basis(n: usize) -> Vec<StateVector> {
    (0..=n)
        .map(|w| {
            let amps: Vec<Complex64> = (0..1usize << n)
                .map(|i| {
                    if i.count_ones() as usize == w {
                        c(1.0, 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                })
                .collect();
            StateVector::new(n, amps).unwrap().normalized().unwrap()
        })
        .collect()
}

/// Largest distance from a vector of `a` to the span of `b` (both
/// orthonormal families), taken both ways.
pub fn mutual_projection_residual(a: &[StateVector], b: &[StateVector]) -> f64 {
    fn one_way(a: &[StateVector], b: &[StateVector]) -> f64 {
        a.iter()
            .map(|v| {
                let mut rest = v.clone();
                for u in b {
                    let coeff = u.inner(v).unwrap();
                    rest = rest.add_scaled(-coeff, u).unwrap();
                }
                rest.norm()
            })
            .fold(0.0, f64::max)
    }
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    one_way(a, b).max(one_way(b, a))
}

/// Gram-Schmidt on a family of states.
pub fn orthonormalize(vs: &[StateVector]) -> Vec<StateVector> {
    let mut out: Vec<StateVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for u in &out {
            let coeff = u.inner(&w).unwrap();
            w = w.add_scaled(-coeff, u).unwrap();
        }
        if w.norm() > 1e-10 {
            out.push(w.normalized().unwrap());
        }
    }
    out
}

pub fn ket(n: usize, terms: &[(usize, Complex64)], scale: f64) -> StateVector {
    let mut amps = vec![c(0.0, 0.0); 1 << n];
    for &(i, z) in terms {
        amps[i] = z * scale;
    }
    StateVector::new(n, amps).unwrap()
}

/// `(|100⟩ + ω|010⟩ + ω²|001⟩)/√3` and `(|110⟩ + ω|011⟩ + ω²|101⟩)/√3`.
pub fn alpha_beta() -> (StateVector, StateVector) {
    let w = omega();
    let s = 1.0 / 3f64.sqrt();
    let one = c(1.0, 0.0);
    (
        ket(3, &[(0b100, one), (0b010, w), (0b001, w * w)], s),
        ket(3, &[(0b110, one), (0b011, w), (0b101, w * w)], s),
    )
}
