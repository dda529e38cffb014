use num_complex::Complex64;
use permsym::dicke::dicke_state;
use permsym::lu::{bloch_rotation, compose_north_to, haar_su2, stab_algebra_dim, LocalUnitaryNQ};
use permsym::{
    dual_group, m3_connector, make_m3, make_m4, make_subgroup, BitString, BlochPoint, GroupKind,
    Qubit, StateVector,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_pair(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let v = StateVector::haar_random(rng, 1);
    (v.amplitudes()[0], v.amplitudes()[1])
}

fn symmetric_dicke(n: usize, w: usize) -> StateVector {
    let sn = make_subgroup(GroupKind::S, n).unwrap();
    let bits = BitString::new(n, ((1u64 << w) - 1) << (n - w)).unwrap();
    dicke_state(&dual_group(&sn)[0], &bits).unwrap().state
}

#[test]
fn connector_chain_links_any_two_three_qubit_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let (a, b) = random_pair(&mut rng);
        let (a2, b2) = random_pair(&mut rng);
        let u = m3_connector(a, b).unwrap();
        let v = m3_connector(a2, b2).unwrap();
        let op = LocalUnitaryNQ::uniform(v.then_after(&u.dagger()), 3);
        let image = op.apply(&make_m3(a, b).unwrap()).unwrap();
        let overlap = make_m3(a2, b2).unwrap().inner(&image).unwrap().norm();
        assert!(overlap >= 1.0 - 1e-9, "{overlap}");
    }
}

#[test]
fn three_rotations_carry_north_to_every_grid_point() {
    let north = Qubit::zero();
    for i in 0..20 {
        for j in 0..20 {
            let theta = std::f64::consts::PI * i as f64 / 19.0;
            let phi = std::f64::consts::TAU * j as f64 / 20.0;
            let p = BlochPoint::new(theta, phi).unwrap();
            let got = compose_north_to(&p).apply_to_qubit(&north);
            let want = p.to_qubit();
            assert!(1.0 - want.inner(&got).norm() <= 1e-10, "({theta}, {phi})");
        }
    }
}

#[test]
fn symmetric_dicke_generators_lie_in_the_null_space() {
    for n in 2..=6 {
        for w in 0..=n {
            let psi = symmetric_dicke(n, w);
            let r = stab_algebra_dim(&psi).unwrap();
            // (s, x₁, y₁, z₁, …) with s = 2w - n and every z_k = 1
            let mut h = vec![0.0; 3 * n + 1];
            h[0] = 2.0 * w as f64 - n as f64;
            for k in 0..n {
                h[3 + 3 * k] = 1.0;
            }
            let norm: f64 = h.iter().map(|x| x * x).sum::<f64>().sqrt();
            let mut projected = vec![0.0; h.len()];
            for b in &r.basis {
                let dot: f64 = b.iter().zip(&h).map(|(x, y)| x * y).sum();
                for (p, x) in projected.iter_mut().zip(b) {
                    *p += dot * x;
                }
            }
            let miss: f64 = projected
                .iter()
                .zip(&h)
                .map(|(p, x)| (p - x).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(miss / norm < 1e-8, "n={n} w={w}: {miss}");
        }
    }
}

#[test]
fn bloch_rotations_are_proper_rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..20 {
        let r = bloch_rotation(&haar_su2(&mut rng));
        assert!((r.transpose() * r - nalgebra::Matrix3::identity()).norm() < 1e-12);
        assert!((r.determinant() - 1.0).abs() < 1e-12);
    }
}

fn ghz(n: usize) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[(1 << n) - 1] = amps[0];
    StateVector::new(n, amps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stabilizer_dimension_is_local_unitary_invariant(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = match which {
            0 => make_m4(),
            1 => ghz(4),
            2 => symmetric_dicke(4, 2),
            _ => StateVector::product(&[Qubit::zero(), Qubit::plus(), Qubit::one()]).unwrap(),
        };
        let op = LocalUnitaryNQ::new((0..psi.n()).map(|_| haar_su2(&mut rng)).collect());
        let moved = op.apply(&psi).unwrap();
        prop_assert_eq!(
            stab_algebra_dim(&moved).unwrap().dimension,
            stab_algebra_dim(&psi).unwrap().dimension
        );
    }
}

#[test]
fn two_qubit_reductions_of_m4() {
    for block in [[1, 2], [1, 3], [1, 4], [2, 3]] {
        let mut s = permsym::lu::reduced_spectrum(&make_m4(), &block).unwrap();
        s.sort_by(|a, b| b.total_cmp(a));
        let want = [0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0];
        for (x, y) in s.iter().zip(want) {
            assert!((x - y).abs() < 1e-12, "{block:?}: {s:?}");
        }
    }
}
