use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surfkit_core::moduli::{orbit, VPrimeParams};
use surfkit_core::scan::{
    count_points, count_points_by_strata, count_points_with_jobs, enumerate_cone_singularities,
    enumerate_cone_singularities_with_jobs,
};
use surfkit_core::surface::{base_locus_empty, random_pair, SurfacePair};
use surfkit_core::wring::{Vars, WPoly, Wps};
use surfkit_core::{Field, Scalar};

fn zero_pair() -> SurfacePair {
    SurfacePair::new(WPoly::zero(Field::Rational), WPoly::zero(Field::Rational)).unwrap()
}

/// Straight evaluation with `Poly::eval` and `Poly::partial` over `F_p`.
fn is_singular_point(pair: &SurfacePair, pt: &[u64; 5], p: u64) -> bool {
    let field = Field::prime(p).unwrap();
    let pair = pair.reduce(field).unwrap();
    let point: Vec<Scalar> = pt.iter().map(|&x| field.from_i64(x as i64)).collect();
    if !pair.f6.eval(&point).is_zero() || !pair.g10.eval(&point).is_zero() {
        return false;
    }
    let grad = |q: &WPoly| (0..Wps::count()).map(|i| q.partial(i).eval(&point)).collect::<Vec<_>>();
    let (a, b) = (grad(&pair.f6), grad(&pair.g10));
    (0..5).all(|i| (0..5).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
}

#[test]
fn diagonal_pair_at_seven() {
    let pair = SurfacePair::diagonal(Field::Rational);
    let report = enumerate_cone_singularities(&pair, 7).unwrap();
    assert_eq!(report.scanned, 7u64.pow(5) - 1);
    let line: Vec<[u64; 5]> = (1..7).map(|t| [0, t, 7 - t, 0, 0]).collect();
    assert!(line.iter().all(|pt| report.singular_points.contains(pt)));
    // the curve X0^2 + Y = 0 on each coordinate line Y0 = 0, Y1 = 0 is singular as well
    let mut expected = line.clone();
    for x in 1..7u64 {
        expected.push([x, 0, 7 - x * x % 7, 0, 0]);
        expected.push([x, 7 - x * x % 7, 0, 0, 0]);
    }
    expected.sort();
    assert_eq!(report.singular_points, expected);
    assert!(report.singular_points.iter().all(|pt| is_singular_point(&pair, pt, 7)));
    assert!(!base_locus_empty(&pair).unwrap());
}

#[test]
fn diagonal_point_count_at_seven() {
    let c = count_points(&SurfacePair::diagonal(Field::Rational), 7).unwrap();
    assert_eq!((c.orbits, c.cone_points, c.orbit_size_sum), (58, 342, 342));
    let (patch, stratum) = count_points_by_strata(&SurfacePair::diagonal(Field::Rational), 7).unwrap();
    assert_eq!(patch + stratum, c.orbits);
}

#[test]
fn ambient_space_count() {
    // all of P(1,2,2,3,5) over F_7, by independent orbit arithmetic:
    // x0 != 0 gives p^4 points; x0 = 0 is P(2,2,3,5)
    let p = 7u64;
    let c = count_points(&zero_pair(), p).unwrap();
    assert_eq!(c.cone_points, p.pow(5) - 1);
    assert_eq!(c.orbit_size_sum, c.cone_points);
    let (patch, stratum) = count_points_by_strata(&zero_pair(), p).unwrap();
    assert_eq!(patch, p.pow(4));
    assert_eq!(patch + stratum, c.orbits);
    assert_eq!(c.orbits, 2811);
}

#[test]
fn unreported_points_fail_the_criterion() {
    let random = random_pair(&mut ChaCha8Rng::seed_from_u64(2), Field::Rational, 2);
    for pair in [SurfacePair::diagonal(Field::Rational), random] {
        let report = enumerate_cone_singularities(&pair, 7).unwrap();
        assert!(report.singular_points.iter().all(|pt| is_singular_point(&pair, pt, 7)));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..300 {
            let pt: [u64; 5] = std::array::from_fn(|_| rand::Rng::gen_range(&mut rng, 0..7));
            if pt != [0; 5] && !report.singular_points.contains(&pt) {
                assert!(!is_singular_point(&pair, &pt, 7), "{pt:?}");
            }
        }
    }
}

#[test]
fn geometric_invariants_are_constant_on_orbits() {
    let field = Field::prime(7).unwrap();
    for seed in 0..3 {
        let v = VPrimeParams::random(&mut ChaCha8Rng::seed_from_u64(seed), field, 3);
        let base = base_locus_empty(&v.expand()).unwrap();
        let members = orbit(&v).unwrap();
        assert!(members.iter().all(|w| base_locus_empty(&w.expand()).unwrap() == base));
        let singular = enumerate_cone_singularities(&v.expand(), 7).unwrap().singular_points.len();
        for w in members.iter().step_by(7) {
            assert_eq!(enumerate_cone_singularities(&w.expand(), 7).unwrap().singular_points.len(), singular);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn results_do_not_depend_on_jobs(seed in 0u64..1000, jobs in 2usize..9) {
        let pair = random_pair(&mut ChaCha8Rng::seed_from_u64(seed), Field::Rational, 2);
        prop_assert_eq!(
            enumerate_cone_singularities_with_jobs(&pair, 7, jobs).unwrap(),
            enumerate_cone_singularities(&pair, 7).unwrap()
        );
        prop_assert_eq!(count_points_with_jobs(&pair, 7, jobs).unwrap(), count_points(&pair, 7).unwrap());
    }
}
