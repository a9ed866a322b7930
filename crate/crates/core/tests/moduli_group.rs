use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surfkit_core::moduli::{apply_group, orbit, GroupElement, Permutation, VPrimeParams};
use surfkit_core::Field;

fn f7() -> Field {
    Field::prime(7).unwrap()
}

fn element() -> impl Strategy<Value = GroupElement> {
    (0u8..3, any::<bool>(), 0u8..3, 0u8..3, 0u8..2, 1i64..7).prop_map(|(s, t, l0, l1, m, a)| GroupElement {
        rho: Permutation { sigma_power: s, tau: t },
        lambda0: l0,
        lambda1: l1,
        mu0: m,
        a: f7().from_i64(a),
    })
}

fn params(seed: u64) -> VPrimeParams {
    VPrimeParams::random(&mut ChaCha8Rng::seed_from_u64(seed), f7(), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn action_is_compatible_with_product(g in element(), h in element(), seed in 0u64..1000) {
        let v = params(seed);
        let two_steps = apply_group(&g, &apply_group(&h, &v).unwrap()).unwrap();
        let one_step = apply_group(&g.mul(&h), &v).unwrap();
        prop_assert_eq!(two_steps, one_step);
    }

    #[test]
    fn product_is_associative(g in element(), h in element(), k in element()) {
        prop_assert_eq!(g.mul(&h).mul(&k), g.mul(&h.mul(&k)));
    }

    #[test]
    fn orbit_size_divides_group_order(seed in 0u64..10_000) {
        let n = orbit(&params(seed)).unwrap().len();
        prop_assert_eq!(108 % n, 0);
    }
}

#[test]
fn scaling_only_fixes_everything() {
    let v = params(3);
    for a in 1..7 {
        let g = GroupElement { a: f7().from_i64(a), ..GroupElement::identity(f7()) };
        assert_eq!(apply_group(&g, &v).unwrap(), v);
    }
}

#[test]
fn tau_swaps_linear_coefficients() {
    let v = params(4);
    let g = GroupElement { rho: Permutation::TAU, ..GroupElement::identity(f7()) };
    let w = apply_group(&g, &v).unwrap();
    assert_eq!((w.a0.clone(), w.a1.clone(), w.a2.clone()), (v.a0.clone(), v.a2.clone(), v.a1.clone()));
}

#[test]
fn psi_multiplies_a0_by_cube_root() {
    let v = params(5);
    let g = GroupElement { lambda0: 1, ..GroupElement::identity(f7()) };
    let w = apply_group(&g, &v).unwrap();
    assert_eq!(w.a0, &v.a0 * &f7().from_i64(2));
}

#[test]
fn tau_symmetric_point_is_fixed_by_tau() {
    let v = params(6).tau_symmetrized();
    let g = GroupElement { rho: Permutation::TAU, ..GroupElement::identity(f7()) };
    assert_eq!(apply_group(&g, &v).unwrap(), v);
    assert!(orbit(&v).unwrap().len() < orbit(&params(6)).unwrap().len());
}

#[test]
fn generic_orbit_sizes() {
    let sizes: Vec<usize> = (0..20).map(|s| orbit(&params(s)).unwrap().len()).collect();
    assert!(sizes.iter().all(|&n| n <= 36), "{sizes:?}");
    assert!(sizes.contains(&36), "{sizes:?}");
}
