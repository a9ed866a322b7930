//! Weighted graded polynomial ring over exact fields.

mod binary;
mod parse;
mod poly;
mod subst;

pub use binary::{binary_gcd, binary_gcd_all, binary_resultant, BinaryForm};
pub use parse::parse_poly;
pub use poly::{Monomial, P3Poly, Poly, Vars, WMonomial, WPoly, Wps, P3, U0, X0, Y0, Y1, Z0};
pub use subst::{substitute, GradedSubstitution};

use crate::error::Result;

/// All monomials of weighted degree `d` in `X0, Y0, Y1, Z0, U0`.
pub fn monomial_basis(d: u32) -> Vec<WMonomial> {
    WMonomial::basis(d)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn ring_arith(p: &WPoly, q: &WPoly, op: ArithOp) -> Result<WPoly> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

/// Restriction of `p` to the line `X0 = Z0 = U0 = 0`, as a binary form in
/// `(T0, T1) = (Y0, Y1)`. `p` must be homogeneous of even degree.
pub fn restrict_to_y_line(p: &WPoly, degree: u32) -> BinaryForm {
    assert!(degree.is_multiple_of(2), "restriction needs even degree");
    let half = degree / 2;
    let coeffs = (0..=half).map(|j| p.coeff(&WMonomial::new(&[0, j, half - j, 0, 0]))).collect();
    BinaryForm::new(p.field(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn arith_examples() {
        let f = Field::Rational;
        let a = parse_poly::<Wps>("X0^2 + Y0", f).unwrap();
        let b = parse_poly::<Wps>("Y1", f).unwrap();
        let prod = ring_arith(&a, &b, ArithOp::Mul).unwrap();
        assert_eq!(prod.to_string(), "X0^2*Y1 + Y0*Y1");
        assert_eq!(prod.degree_tag(), Some(4));
        assert!(ring_arith(&a, &a, ArithOp::Sub).unwrap().is_zero());
        let z = WPoly::var(f, Z0).with_degree(3).unwrap();
        assert_eq!(ring_arith(&z, &z, ArithOp::Mul).unwrap().degree_tag(), Some(6));
        let f7 = Field::prime(7).unwrap();
        assert!(ring_arith(&a, &WPoly::var(f7, Y1), ArithOp::Add).is_err());
    }

    #[test]
    fn restriction_reads_y_terms() {
        let p = parse_poly::<Wps>("Z0^2 + 2*Y0^3 - Y1^3 + X0^2*Y0^2", Field::Rational).unwrap();
        let r = restrict_to_y_line(&p, 6);
        assert_eq!(r.to_string(), "2*T0^3 - T1^3");
    }
}
