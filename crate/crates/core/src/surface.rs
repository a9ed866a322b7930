//! Candidate pairs `(f6, g10)`: validation, normal form, base locus and
//! canonical image.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::wring::{
    binary_resultant, monomial_basis, parse_poly, restrict_to_y_line, GradedSubstitution, P3Poly, Vars, WMonomial,
    WPoly, Wps, U0, X0, Y0, Y1, Z0,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePair {
    pub f6: WPoly,
    pub g10: WPoly,
}

fn mono(e: [u32; 5]) -> WMonomial {
    WMonomial::new(&e)
}

fn var(field: Field, i: usize) -> WPoly {
    WPoly::var(field, i).with_degree(Wps::WEIGHTS[i]).expect("variable")
}

impl SurfacePair {
    pub fn new(f6: WPoly, g10: WPoly) -> Result<Self> {
        if f6.field() != g10.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(SurfacePair { f6, g10 })
    }

    /// `Z0^2 + Y0^3 + Y1^3 + X0^6` and `U0^2 + Y0^5 + Y1^5 + X0^10`.
    pub fn diagonal(field: Field) -> Self {
        SurfacePair {
            f6: parse_poly("Z0^2 + Y0^3 + Y1^3 + X0^6", field).expect("fixed text"),
            g10: parse_poly("U0^2 + Y0^5 + Y1^5 + X0^10", field).expect("fixed text"),
        }
    }

    pub fn field(&self) -> Field {
        self.f6.field()
    }

    /// Reads `f6: <poly>` and `g10: <poly>` lines. Blank lines and lines
    /// starting with `#` are skipped. Parse positions are byte offsets into
    /// `text`.
    pub fn parse(text: &str, field: Field) -> Result<Self> {
        let mut f6 = None;
        let mut g10 = None;
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let trimmed = line.trim_start();
            if trimmed.trim_end().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let lead = line.len() - trimmed.len();
            let (slot, prefix) = if trimmed.starts_with("f6:") {
                (&mut f6, "f6:")
            } else if trimmed.starts_with("g10:") {
                (&mut g10, "g10:")
            } else {
                return Err(Error::Parse {
                    pos: start + lead,
                    msg: "expected a line starting with 'f6:' or 'g10:'".into(),
                });
            };
            if slot.is_some() {
                return Err(Error::Parse { pos: start + lead, msg: format!("duplicate '{prefix}' line") });
            }
            let body_at = start + lead + prefix.len();
            let body = trimmed[prefix.len()..].trim_end_matches(['\n', '\r']);
            let p = parse_poly::<Wps>(body, field).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: body_at + pos, msg },
                other => other,
            })?;
            *slot = Some(p);
        }
        match (f6, g10) {
            (Some(f6), Some(g10)) => SurfacePair::new(f6, g10),
            (None, _) => Err(Error::Parse { pos: text.len(), msg: "missing 'f6:' line".into() }),
            (_, None) => Err(Error::Parse { pos: text.len(), msg: "missing 'g10:' line".into() }),
        }
    }

    pub fn reduce(&self, field: Field) -> Result<Self> {
        Ok(SurfacePair { f6: self.f6.reduce(field)?, g10: self.g10.reduce(field)? })
    }
}

impl fmt::Display for SurfacePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f6: {}", self.f6)?;
        writeln!(f, "g10: {}", self.g10)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub z0sq_nonzero: bool,
    pub u0sq_nonzero: bool,
    pub degrees_ok: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.z0sq_nonzero && self.u0sq_nonzero && self.degrees_ok
    }

    pub fn failure_reason(&self) -> Option<String> {
        let mut reasons = Vec::new();
        if !self.degrees_ok {
            reasons.push("f6/g10 are not homogeneous of degrees 6/10");
        }
        if !self.z0sq_nonzero {
            reasons.push("coefficient of Z0^2 in f6 vanishes");
        }
        if !self.u0sq_nonzero {
            reasons.push("coefficient of U0^2 in g10 vanishes");
        }
        (!reasons.is_empty()).then(|| reasons.join("; "))
    }
}

pub fn validate_pair(pair: &SurfacePair) -> ValidationReport {
    ValidationReport {
        z0sq_nonzero: !pair.f6.coeff(&mono([0, 0, 0, 2, 0])).is_zero(),
        u0sq_nonzero: !pair.g10.coeff(&mono([0, 0, 0, 0, 2])).is_zero(),
        degrees_ok: pair.f6.is_homogeneous_of(6)
            && pair.g10.is_homogeneous_of(10)
            && !pair.f6.is_zero()
            && !pair.g10.is_zero(),
    }
}

fn require_valid(pair: &SurfacePair) -> Result<()> {
    match validate_pair(pair).failure_reason() {
        Some(reason) => Err(Error::Validation(reason)),
        None => Ok(()),
    }
}

/// Exponents `(e_W, e_Y0, e_Y1)` of the degree-`d` monomials in
/// `(W, Y0, Y1) = (X0^2, Y0, Y1)`, in descending lexicographic order.
pub fn ternary_basis(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for w in (0..=d).rev() {
        for y0 in (0..=d - w).rev() {
            out.push([w, y0, d - w - y0]);
        }
    }
    out
}

fn ternary_form(coeffs: &[Scalar], d: u32, extra: [u32; 5], field: Field) -> WPoly {
    let terms = ternary_basis(d)
        .into_iter()
        .zip(coeffs)
        .map(|([w, a, b], c)| (mono([2 * w + extra[0], a + extra[1], b + extra[2], extra[3], extra[4]]), c.clone()));
    let deg = 2 * d + extra.iter().zip(Wps::WEIGHTS).map(|(e, w)| e * w).sum::<u32>();
    WPoly::from_terms(field, terms).with_degree(deg).expect("ternary form is homogeneous")
}

fn read_ternary(p: &WPoly, d: u32, extra: [u32; 5]) -> Vec<Scalar> {
    ternary_basis(d)
        .into_iter()
        .map(|[w, a, b]| p.coeff(&mono([2 * w + extra[0], a + extra[1], b + extra[2], extra[3], extra[4]])))
        .collect()
}

/// `f6 = Z0^2 + alpha0 X0 U0 + alpha3(X0^2, Y0, Y1)`,
/// `g10 = U0^2 + beta3(X0^2, Y0, Y1) X0 Z0 + beta5(X0^2, Y0, Y1)`.
/// Vectors follow [`ternary_basis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalFormParams {
    pub alpha0: Scalar,
    pub alpha3: Vec<Scalar>,
    pub beta3: Vec<Scalar>,
    pub beta5: Vec<Scalar>,
}

impl NormalFormParams {
    pub const ALPHA3_LEN: usize = 10;
    pub const BETA3_LEN: usize = 10;
    pub const BETA5_LEN: usize = 21;

    pub fn new(alpha0: Scalar, alpha3: Vec<Scalar>, beta3: Vec<Scalar>, beta5: Vec<Scalar>) -> Result<Self> {
        if alpha3.len() != Self::ALPHA3_LEN || beta3.len() != Self::BETA3_LEN || beta5.len() != Self::BETA5_LEN {
            return Err(Error::Validation(format!(
                "normal-form vectors need lengths {}/{}/{}, got {}/{}/{}",
                Self::ALPHA3_LEN,
                Self::BETA3_LEN,
                Self::BETA5_LEN,
                alpha3.len(),
                beta3.len(),
                beta5.len()
            )));
        }
        let field = alpha0.field();
        if alpha3.iter().chain(&beta3).chain(&beta5).any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(NormalFormParams { alpha0, alpha3, beta3, beta5 })
    }

    pub fn field(&self) -> Field {
        self.alpha0.field()
    }

    pub fn parameter_count(&self) -> usize {
        1 + self.alpha3.len() + self.beta3.len() + self.beta5.len()
    }

    /// Uniform integer coefficients in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, field: Field, bound: i64) -> Self {
        let mut draw = |n: usize| (0..n).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect::<Vec<_>>();
        let alpha0 = draw(1).remove(0);
        NormalFormParams {
            alpha0,
            alpha3: draw(Self::ALPHA3_LEN),
            beta3: draw(Self::BETA3_LEN),
            beta5: draw(Self::BETA5_LEN),
        }
    }

    pub fn alpha3_form(&self) -> WPoly {
        ternary_form(&self.alpha3, 3, [0; 5], self.field())
    }

    /// `beta3(X0^2, Y0, Y1) X0 Z0`.
    pub fn beta3_term(&self) -> WPoly {
        ternary_form(&self.beta3, 3, [1, 0, 0, 1, 0], self.field())
    }

    pub fn beta5_form(&self) -> WPoly {
        ternary_form(&self.beta5, 5, [0; 5], self.field())
    }

    pub fn expand(&self) -> SurfacePair {
        let field = self.field();
        let z0sq = WPoly::monomial(mono([0, 0, 0, 2, 0]), field.one());
        let x0u0 = WPoly::monomial(mono([1, 0, 0, 0, 1]), self.alpha0.clone());
        let u0sq = WPoly::monomial(mono([0, 0, 0, 0, 2]), field.one());
        let f6 = (&(&z0sq + &x0u0) + &self.alpha3_form()).with_degree(6).expect("degree 6");
        let g10 = (&(&u0sq + &self.beta3_term()) + &self.beta5_form()).with_degree(10).expect("degree 10");
        SurfacePair { f6, g10 }
    }

    /// Reads the parameters off a pair already in normal shape.
    pub fn from_normal_pair(pair: &SurfacePair) -> Option<Self> {
        let field = pair.field();
        let z0sq = mono([0, 0, 0, 2, 0]);
        let x0u0 = mono([1, 0, 0, 0, 1]);
        let u0sq = mono([0, 0, 0, 0, 2]);
        if !pair.f6.coeff(&z0sq).is_one() || !pair.g10.coeff(&u0sq).is_one() {
            return None;
        }
        let f_ok = pair
            .f6
            .terms()
            .all(|(m, _)| m.degree() == 6 && (*m == z0sq || *m == x0u0 || (m.exp(Z0) == 0 && m.exp(U0) == 0)));
        let g_ok =
            pair.g10.terms().all(|(m, _)| m.degree() == 10 && (*m == u0sq || (m.exp(U0) == 0 && m.exp(Z0) <= 1)));
        if !f_ok || !g_ok {
            return None;
        }
        let params = NormalFormParams {
            alpha0: pair.f6.coeff(&x0u0),
            alpha3: read_ternary(&pair.f6, 3, [0; 5]),
            beta3: read_ternary(&pair.g10, 3, [1, 0, 0, 1, 0]),
            beta5: read_ternary(&pair.g10, 5, [0; 5]),
        };
        debug_assert_eq!(params.field(), field);
        Some(params)
    }
}

/// `f6' = u (f6 ∘ ψ)` and `g10' = v (g10 ∘ ψ) + h (f6 ∘ ψ)`, with `ψ` the
/// recorded substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationCertificate {
    pub substitution: GradedSubstitution,
    pub u: Scalar,
    pub v: Scalar,
    pub h: WPoly,
}

impl NormalizationCertificate {
    pub fn is_identity(&self) -> bool {
        self.substitution.is_identity() && self.u.is_one() && self.v.is_one() && self.h.is_zero()
    }

    /// Checks both identities exactly.
    pub fn verify(&self, input: &SurfacePair, output: &SurfacePair) -> Result<bool> {
        let f = self.substitution.apply(&input.f6)?;
        let g = self.substitution.apply(&input.g10)?;
        let f_ok = output.f6 == f.scale(&self.u);
        let g_ok = output.g10 == &g.scale(&self.v) + &(&self.h * &f);
        Ok(f_ok && g_ok && self.substitution.is_invertible())
    }
}

struct Normalizer {
    f: WPoly,
    g: WPoly,
    psi: GradedSubstitution,
    u: Scalar,
    v: Scalar,
    h: WPoly,
}

impl Normalizer {
    fn substitute(&mut self, images: Vec<WPoly>, inverse: Vec<WPoly>) -> Result<()> {
        let s = GradedSubstitution::new(images)?.with_inverse(inverse)?;
        self.f = s.apply(&self.f)?;
        self.g = s.apply(&self.g)?;
        self.h = s.apply(&self.h)?;
        self.psi = self.psi.then(&s)?;
        Ok(())
    }

    /// `g -= q f` for every term of `g` divisible by `Z0^2`, until none is
    /// left. Needs `f = Z0^2 + (terms free of Z0)`.
    fn reduce_g_by_f(&mut self) {
        loop {
            let Some((m, c)) = self.g.terms().find(|(m, _)| m.exp(Z0) >= 2).map(|(m, c)| (*m, c.clone())) else {
                break;
            };
            let mut e: Vec<u32> = m.exps().to_vec();
            e[Z0] -= 2;
            let q = WPoly::monomial(WMonomial::new(&e), c).with_degree(4).expect("degree 4");
            self.g = &self.g - &(&q * &self.f);
            self.h = (&self.h - &q.scale(&self.u)).with_degree(4).expect("degree 4");
        }
    }
}

fn identity_images(field: Field) -> Vec<WPoly> {
    (0..Wps::count()).map(|i| var(field, i)).collect()
}

/// Terms of `p` with `exp(i) == 1` and `exp(j) == 0` for `j` in `absent`,
/// divided by the variable `i`.
fn linear_coefficient(p: &WPoly, i: usize, absent: &[usize], degree: u32) -> WPoly {
    let field = p.field();
    let terms = p.terms().filter(|(m, _)| m.exp(i) == 1 && absent.iter().all(|&j| m.exp(j) == 0)).map(|(m, c)| {
        let mut e = m.exps().to_vec();
        e[i] = 0;
        (WMonomial::new(&e), c.clone())
    });
    WPoly::from_terms(field, terms).with_degree(degree).expect("homogeneous slice")
}

/// Brings a validated pair to the shape of [`NormalFormParams`] by a graded
/// coordinate change, rescaling, and adding a multiple of `f6` to `g10`.
pub fn normalize(pair: &SurfacePair) -> Result<(NormalFormParams, NormalizationCertificate)> {
    require_valid(pair)?;
    let field = pair.field();
    if field.characteristic() == 2 {
        return Err(Error::Characteristic2);
    }
    let half = field.from_i64(2).inv().expect("odd characteristic");
    let quarter = &half * &half;
    let mut st = Normalizer {
        f: pair.f6.clone(),
        g: pair.g10.clone(),
        psi: GradedSubstitution::identity(field),
        u: field.one(),
        v: field.one(),
        h: WPoly::zero(field).with_degree(4).expect("zero"),
    };

    let z0sq = st.f.coeff(&mono([0, 0, 0, 2, 0]));
    if !z0sq.is_one() {
        let inv = z0sq.inv().expect("validated");
        st.f = st.f.scale(&inv);
        st.u = &st.u * &inv;
    }

    // complete the square in Z0
    let ell = linear_coefficient(&st.f, Z0, &[U0], 3);
    if !ell.is_zero() {
        let mut images = identity_images(field);
        let mut inverse = identity_images(field);
        images[Z0] = &var(field, Z0) - &ell.scale(&half);
        inverse[Z0] = &var(field, Z0) + &ell.scale(&half);
        st.substitute(images, inverse)?;
    }
    st.reduce_g_by_f();

    let u0sq = st.g.coeff(&mono([0, 0, 0, 0, 2]));
    if u0sq.is_zero() {
        return Err(Error::Validation("coefficient of U0^2 vanished during normalization".into()));
    }
    if !u0sq.is_one() {
        let inv = u0sq.inv().expect("nonzero");
        st.g = st.g.scale(&inv);
        st.v = &st.v * &inv;
        st.h = st.h.scale(&inv);
    }

    // complete the square in U0 against the part of its coefficient free of Z0
    let p5 = linear_coefficient(&st.g, U0, &[Z0], 5);
    if !p5.is_zero() {
        let mut images = identity_images(field);
        let mut inverse = identity_images(field);
        images[U0] = &var(field, U0) - &p5.scale(&half);
        inverse[U0] = &var(field, U0) + &p5.scale(&half);
        st.substitute(images, inverse)?;
    }

    // remove beta1 Z0 U0
    let z0u0 = linear_coefficient(&st.g, U0, &[], 5);
    let beta1 = linear_coefficient(&z0u0, Z0, &[], 2);
    if !beta1.is_zero() {
        let alpha0 = st.f.coeff(&mono([1, 0, 0, 0, 1]));
        let x0 = var(field, X0);
        let z0 = var(field, Z0);
        let u0 = var(field, U0);
        let shift_z = (&x0 * &beta1).scale(&(&alpha0 * &quarter));
        let beta1_sq_x0 = &(&beta1 * &beta1) * &x0;
        let mut images = identity_images(field);
        let mut inverse = identity_images(field);
        images[Z0] = &z0 + &shift_z;
        images[U0] = &(&u0 - &(&beta1 * &z0).scale(&half)) - &beta1_sq_x0.scale(&(&alpha0 * &quarter));
        inverse[Z0] = &z0 - &shift_z;
        inverse[U0] = &(&u0 + &(&beta1 * &z0).scale(&half)) + &beta1_sq_x0.scale(&(&(&alpha0 * &quarter) * &half));
        st.substitute(images, inverse)?;
        st.reduce_g_by_f();
    }

    let out = SurfacePair { f6: st.f.with_degree(6)?, g10: st.g.with_degree(10)? };
    let params = NormalFormParams::from_normal_pair(&out)
        .ok_or_else(|| Error::Internal(format!("normalization did not reach normal shape:\n{out}")))?;
    let cert = NormalizationCertificate { substitution: st.psi, u: st.u, v: st.v, h: st.h };
    Ok((params, cert))
}

/// True iff the restrictions of `f6` and `g10` to `X0 = Z0 = U0 = 0` have
/// no common zero on `P^1`.
pub fn base_locus_empty(pair: &SurfacePair) -> Result<bool> {
    require_valid(pair)?;
    let f = restrict_to_y_line(&pair.f6, 6);
    let g = restrict_to_y_line(&pair.g10, 10);
    Ok(!binary_resultant(&f, &g)?.is_zero())
}

/// A hypersurface in `P^3` with coordinates `xi0, eta0, eta1, zeta0`, and
/// cofactors witnessing that its pullback lies in `(f6, g10)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P3Hypersurface {
    pub poly: P3Poly,
    pub degree: u32,
    pub f6_cofactor: WPoly,
    pub g10_cofactor: WPoly,
}

/// Substitutes `xi0 = X0^3, eta0 = X0 Y0, eta1 = X0 Y1, zeta0 = Z0`.
pub fn pullback(poly: &P3Poly) -> WPoly {
    let field = poly.field();
    let x0 = var(field, X0);
    let images = vec![x0.pow(3), &x0 * &var(field, Y0), &x0 * &var(field, Y1), var(field, Z0)];
    poly.compose::<Wps>(&images).expect("four images over one field")
}

impl P3Hypersurface {
    /// Checks `pullback(poly) = f6_cofactor * f6 + g10_cofactor * g10`.
    pub fn verify(&self, pair: &SurfacePair) -> bool {
        pullback(&self.poly) == &(&self.f6_cofactor * &pair.f6) + &(&self.g10_cofactor * &pair.g10)
    }
}

fn p3_var(field: Field, i: usize) -> P3Poly {
    P3Poly::var(field, i)
}

fn p3_ternary(coeffs: &[Scalar], d: u32, field: Field) -> P3Poly {
    let terms = ternary_basis(d)
        .into_iter()
        .zip(coeffs)
        .map(|([w, a, b], c)| (crate::wring::Monomial::new(&[w, a, b, 0]), c.clone()));
    P3Poly::from_terms(field, terms)
}

/// The image of the canonical map in `P^3`: the cubic
/// `xi0 zeta0^2 + alpha3(xi0, eta0, eta1)` when `alpha0 = 0`, otherwise
/// the sextic `cubic^2 + alpha0^2 (beta3 xi0^2 zeta0 + beta5 xi0)`.
pub fn canonical_image(nf: &NormalFormParams) -> P3Hypersurface {
    let field = nf.field();
    let xi0 = p3_var(field, 0);
    let zeta0 = p3_var(field, 3);
    let cubic = &(&xi0 * &zeta0.pow(2)) + &p3_ternary(&nf.alpha3, 3, field);
    let pair = nf.expand();
    let x0 = var(field, X0);
    if nf.alpha0.is_zero() {
        return P3Hypersurface {
            poly: cubic.with_degree(3).expect("cubic"),
            degree: 3,
            f6_cofactor: x0.pow(3),
            g10_cofactor: WPoly::zero(field),
        };
    }
    let a0sq = &nf.alpha0 * &nf.alpha0;
    let tail =
        &(&p3_ternary(&nf.beta3, 3, field) * &(&xi0.pow(2) * &zeta0)) + &(&p3_ternary(&nf.beta5, 5, field) * &xi0);
    let sextic = &cubic.pow(2) + &tail.scale(&a0sq);
    let two_a0_x0u0 = WPoly::monomial(mono([1, 0, 0, 0, 1]), &nf.alpha0 * &field.from_i64(2));
    P3Hypersurface {
        poly: sextic.with_degree(6).expect("sextic"),
        degree: 6,
        f6_cofactor: &x0.pow(6) * &(&pair.f6 - &two_a0_x0u0),
        g10_cofactor: x0.pow(8).scale(&a0sq),
    }
}

/// `(deg of the canonical map, deg of its image)`.
pub fn canonical_map_degree(nf: &NormalFormParams) -> (u32, u32) {
    if nf.alpha0.is_zero() {
        (2, 3)
    } else {
        (1, 6)
    }
}

/// Uniform integer coefficients in `[-bound, bound]` on every monomial, with
/// the `Z0^2` and `U0^2` coefficients forced nonzero.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, field: Field, bound: i64) -> SurfacePair {
    let mut draw = |deg: u32, forced: WMonomial| {
        let terms = monomial_basis(deg).into_iter().map(|m| {
            let mut c = rng.gen_range(-bound..=bound);
            while m == forced && field.from_i64(c).is_zero() {
                c = rng.gen_range(-bound..=bound);
            }
            (m, field.from_i64(c))
        });
        WPoly::from_terms(field, terms.collect::<Vec<_>>()).with_degree(deg).expect("homogeneous")
    };
    let f6 = draw(6, mono([0, 0, 0, 2, 0]));
    let g10 = draw(10, mono([0, 0, 0, 0, 2]));
    SurfacePair { f6, g10 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> WPoly {
        parse_poly::<Wps>(s, Field::Rational).unwrap()
    }

    #[test]
    fn ternary_order() {
        let b = ternary_basis(3);
        assert_eq!(b.len(), 10);
        assert_eq!(b[0], [3, 0, 0]);
        assert_eq!(b[1], [2, 1, 0]);
        assert_eq!(b[2], [2, 0, 1]);
        assert_eq!(b[9], [0, 0, 3]);
        assert_eq!(ternary_basis(5).len(), 21);
    }

    #[test]
    fn pair_file_round_trip() {
        let pair = SurfacePair::diagonal(Field::Rational);
        let text = format!("# comment\n\n{pair}");
        assert_eq!(SurfacePair::parse(&text, Field::Rational).unwrap(), pair);
        match SurfacePair::parse("f6: Z0^2 + Q\ng10: U0^2\n", Field::Rational) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        assert!(SurfacePair::parse("f6: Z0^2\n", Field::Rational).is_err());
    }

    #[test]
    fn validation_flags() {
        let ok = SurfacePair::diagonal(Field::Rational);
        assert!(validate_pair(&ok).passed());
        let no_z = SurfacePair { f6: q("Y0^3 + Y1^3 + X0^6"), g10: ok.g10.clone() };
        assert!(!validate_pair(&no_z).z0sq_nonzero);
        let no_u = SurfacePair { f6: ok.f6.clone(), g10: q("Y0^5 + Y1^5 + X0^10") };
        assert!(!validate_pair(&no_u).u0sq_nonzero);
        let bad_deg = SurfacePair { f6: q("Z0^2 + Y0"), g10: ok.g10 };
        assert!(!validate_pair(&bad_deg).degrees_ok);
    }

    #[test]
    fn base_locus_examples() {
        let diag = SurfacePair::diagonal(Field::Rational);
        assert!(!base_locus_empty(&diag).unwrap());
        let twisted = SurfacePair { f6: diag.f6.clone(), g10: q("U0^2 + Y0^5 + 2*Y1^5 + X0^10") };
        assert!(base_locus_empty(&twisted).unwrap());
        let coords = SurfacePair { f6: q("Z0^2 + Y0^3"), g10: q("U0^2 + Y1^5") };
        assert!(base_locus_empty(&coords).unwrap());
    }

    #[test]
    fn expand_and_read_back() {
        let mut rng = rand::rngs::mock::StepRng::new(3, 7);
        let nf = NormalFormParams::random(&mut rng, Field::Rational, 3);
        assert_eq!(nf.parameter_count(), 42);
        let pair = nf.expand();
        assert_eq!(NormalFormParams::from_normal_pair(&pair).unwrap(), nf);
    }

    #[test]
    fn normal_input_gives_identity_certificate() {
        let pair = SurfacePair::diagonal(Field::Rational);
        let (nf, cert) = normalize(&pair).unwrap();
        assert!(cert.is_identity());
        assert_eq!(nf.expand(), pair);
    }

    #[test]
    fn square_completion_in_z0() {
        let pair = SurfacePair { f6: q("2*Z0^2 + 4*X0*Y0*Z0 + Y0^3 + Y1^3 + X0^6"), g10: q("U0^2 + Y0^5 + 2*Y1^5") };
        let (nf, cert) = normalize(&pair).unwrap();
        let out = nf.expand();
        assert!(cert.verify(&pair, &out).unwrap());
        assert_eq!(cert.u.to_string(), "1/2");
        assert_eq!(out.f6, q("Z0^2 - X0^2*Y0^2 + 1/2*Y0^3 + 1/2*Y1^3 + 1/2*X0^6"));
    }

    #[test]
    fn z0u0_term_removed() {
        let pair = SurfacePair {
            f6: q("Z0^2 + 3*X0*U0 + Y0^3 + Y1^3"),
            g10: q("U0^2 + 2*Y0*Z0*U0 + Y0^5 + Y1^5 + X0*Z0*Y1^3"),
        };
        let (nf, cert) = normalize(&pair).unwrap();
        let out = nf.expand();
        assert!(cert.verify(&pair, &out).unwrap());
        assert!(out.g10.terms().all(|(m, _)| !(m.exp(Z0) >= 1 && m.exp(U0) >= 1)));
        assert_eq!(nf.alpha0, Field::Rational.from_i64(3));
    }

    #[test]
    fn canonical_image_small_cases() {
        let f = Field::Rational;
        let zero = vec![f.zero(); 10];
        let mut alpha3 = zero.clone();
        alpha3[6] = f.one(); // eta0^3
        let cubic_case = NormalFormParams::new(f.zero(), alpha3.clone(), zero.clone(), vec![f.zero(); 21]).unwrap();
        let img = canonical_image(&cubic_case);
        assert_eq!(img.degree, 3);
        assert_eq!(img.poly.to_string(), "xi0*zeta0^2 + eta0^3");
        assert!(img.verify(&cubic_case.expand()));
        assert_eq!(canonical_map_degree(&cubic_case), (2, 3));

        let mut beta5 = vec![f.zero(); 21];
        beta5[0] = f.one(); // W^5
        let sextic_case = NormalFormParams::new(f.one(), alpha3, zero, beta5).unwrap();
        let img = canonical_image(&sextic_case);
        assert_eq!(img.degree, 6);
        assert!(img.verify(&sextic_case.expand()));
        assert_eq!(canonical_map_degree(&sextic_case), (1, 6));
    }
}
