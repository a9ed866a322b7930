use proptest::prelude::*;
use surfkit_core::hilbert::ambient_series;
use surfkit_core::wring::{
    binary_gcd, binary_resultant, monomial_basis, BinaryForm, GradedSubstitution, Vars, WPoly, Wps, U0, X0, Y0, Y1, Z0,
};
use surfkit_core::Field;

fn f7() -> Field {
    Field::prime(7).unwrap()
}

fn form(field: Field, deg: u32, coeffs: &[i64]) -> WPoly {
    let terms = monomial_basis(deg).into_iter().zip(coeffs).map(|(m, &c)| (m, field.from_i64(c)));
    WPoly::from_terms(field, terms.collect::<Vec<_>>())
}

fn homogeneous(deg: u32) -> impl Strategy<Value = WPoly> {
    let n = monomial_basis(deg).len();
    prop::collection::vec(-4i64..=4, n).prop_map(move |c| form(Field::Rational, deg, &c))
}

fn rational_form(deg: u32) -> impl Strategy<Value = WPoly> {
    let n = monomial_basis(deg).len();
    prop::collection::vec((-9i64..=9, 1i64..=6), n).prop_map(move |c| {
        let terms = monomial_basis(deg)
            .into_iter()
            .zip(c)
            .map(|(m, (a, b))| (m, Field::Rational.from_i64(a).checked_div(&Field::Rational.from_i64(b)).unwrap()));
        WPoly::from_terms(Field::Rational, terms.collect::<Vec<_>>())
    })
}

fn binary(field: Field, deg: u32) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(-3i64..=3, deg as usize + 1).prop_map(move |c| BinaryForm::from_i64s(field, &c))
}

fn var(i: usize) -> WPoly {
    WPoly::var(Field::Rational, i)
}

/// `Z0 -> Z0 + c, U0 -> U0 + d` with `c, d` free of `Z0, U0`, scaled by `a`.
fn shear(c: &WPoly, d: &WPoly, a: i64) -> GradedSubstitution {
    let images = |sign: i64| {
        let s = Field::Rational.from_i64(sign);
        vec![var(X0), var(Y0), var(Y1), &var(Z0) + &c.scale(&s), &var(U0) + &d.scale(&s)]
    };
    let shear = GradedSubstitution::new(images(1)).unwrap().with_inverse(images(-1)).unwrap();
    shear.then(&GradedSubstitution::scaling(&Field::Rational.from_i64(a)).unwrap()).unwrap()
}

fn xy_only(p: WPoly) -> WPoly {
    p.filter(|m| m.exp(Z0) == 0 && m.exp(U0) == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_degree_is_additive(p in homogeneous(4), q in homogeneous(5)) {
        let r = &p * &q;
        prop_assume!(!r.is_zero());
        prop_assert_eq!(r.homogeneous_degree(), Some(9));
    }

    #[test]
    fn sum_of_same_degree_stays_homogeneous(p in homogeneous(6), q in homogeneous(6)) {
        let r = &p + &q;
        prop_assert!(r.is_zero() || r.is_homogeneous_of(6));
    }

    #[test]
    fn substitution_then_inverse_is_identity(
        p in homogeneous(7),
        c in homogeneous(3),
        d in homogeneous(5),
        a in prop::sample::select(vec![-3i64, -1, 2, 5]),
    ) {
        let s = shear(&xy_only(c), &xy_only(d), a);
        let back = s.inverse().unwrap();
        prop_assert_eq!(back.apply(&s.apply(&p).unwrap()).unwrap(), p.clone());
        prop_assert!(s.then(&back).unwrap().is_identity());
        prop_assert!(s.apply(&p).unwrap().is_zero() || s.apply(&p).unwrap().is_homogeneous_of(7));
    }

    #[test]
    fn reduction_mod_p_is_a_ring_map(p in rational_form(3), q in rational_form(4)) {
        let r = |x: &WPoly| x.reduce(f7()).unwrap();
        prop_assert_eq!(r(&(&p * &q)), &r(&p) * &r(&q));
        let p2 = &p * &var(X0);
        prop_assert_eq!(r(&(&p2 + &q)), &r(&p2) + &r(&q));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in binary(f7(), 3), g in binary(f7(), 2)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let res = binary_resultant(&f, &g).unwrap();
        let gcd = binary_gcd(&f, &g).unwrap();
        prop_assert_eq!(res.is_zero(), gcd.degree() >= 1, "f = {}, g = {}, gcd = {}", f, g, gcd);
    }

    #[test]
    fn planted_common_factor_kills_resultant(
        h in binary(Field::Rational, 1),
        f in binary(Field::Rational, 2),
        g in binary(Field::Rational, 3),
    ) {
        prop_assume!(!h.is_zero() && !f.is_zero() && !g.is_zero());
        let (fh, gh) = (f.mul(&h), g.mul(&h));
        prop_assert!(binary_resultant(&fh, &gh).unwrap().is_zero());
        let gcd = binary_gcd(&fh, &gh).unwrap();
        prop_assert!(gcd.degree() >= 1);
        prop_assert!(fh.exact_div(&gcd).is_some() && gh.exact_div(&gcd).is_some());
    }
}

#[test]
fn basis_sizes_match_the_ambient_series() {
    let series = ambient_series(20);
    for d in 0..=20u32 {
        let basis = monomial_basis(d);
        assert_eq!(basis.len() as u64, series[d as usize], "degree {d}");
        assert!(basis.iter().all(|m| m.degree() == d));
        assert!(basis.windows(2).all(|w| w[0] != w[1]));
    }
}

#[test]
fn variables_carry_their_weights() {
    let weights: Vec<u32> = (0..Wps::count()).map(|i| var(i).homogeneous_degree().unwrap()).collect();
    assert_eq!(weights, vec![1, 2, 2, 3, 5]);
}
