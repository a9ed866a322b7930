//! Parameter counts of the normal form and the finite group acting on the
//! 34-parameter subfamily.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::surface::{ternary_basis, SurfacePair};
use crate::wring::{monomial_basis, Vars, WMonomial, WPoly, Wps, U0, Y0, Y1, Z0};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ParamCounts {
    pub full: usize,
    pub vprime: usize,
    pub finite_group: usize,
}

fn pure_xy(m: &WMonomial) -> bool {
    m.exp(Z0) == 0 && m.exp(U0) == 0
}

/// Free monomials of `f6` in the subfamily: `X0^2 Y0 Y1, X0^4 Y0, X0^4 Y1`.
pub const VPRIME_F6_MONOMIALS: [[u32; 5]; 3] = [[2, 1, 1, 0, 0], [4, 1, 0, 0, 0], [4, 0, 1, 0, 0]];

/// Monomials of `f6` fixed to coefficient 1 in the subfamily.
pub const VPRIME_F6_FIXED: [[u32; 5]; 5] =
    [[0, 0, 0, 2, 0], [1, 0, 0, 0, 1], [0, 3, 0, 0, 0], [0, 0, 3, 0, 0], [6, 0, 0, 0, 0]];

/// Order of the group generated by `diag(w, w^2)` and the swap, by closure
/// over 2x2 matrices mod 7 with `w = 2`.
pub fn permutation_part_order() -> usize {
    type M = [[u64; 2]; 2];
    let p = 7;
    let mul = |a: &M, b: &M| -> M {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % p;
            }
        }
        c
    };
    let gens: [M; 2] = [[[2, 0], [0, 4]], [[0, 1], [1, 0]]];
    let mut seen: HashSet<M> = HashSet::from([[[1, 0], [0, 1]]]);
    let mut frontier: Vec<M> = seen.iter().copied().collect();
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let n = mul(&m, g);
            if seen.insert(n) {
                frontier.push(n);
            }
        }
    }
    seen.len()
}

pub fn param_counts() -> ParamCounts {
    let count = |d: u32| monomial_basis(d).iter().filter(|m| pure_xy(m)).count();
    let alpha3 = count(6);
    let beta3 = count(7); // times X0 Z0
    let beta5 = count(10);
    ParamCounts {
        full: 1 + alpha3 + beta3 + beta5,
        vprime: VPRIME_F6_MONOMIALS.len() + beta3 + beta5,
        finite_group: permutation_part_order() * 3 * 3 * 2,
    }
}

/// `f6 = Z0^2 + X0 U0 + Y0^3 + Y1^3 + a0 X0^2 Y0 Y1 + X0^4 (a1 Y0 + a2 Y1) + X0^6`,
/// `g10 = U0^2 + beta3 X0 Z0 + beta5`, vectors in ternary-basis order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPrimeParams {
    pub a0: Scalar,
    pub a1: Scalar,
    pub a2: Scalar,
    pub beta3: Vec<Scalar>,
    pub beta5: Vec<Scalar>,
}

fn mono(e: [u32; 5]) -> WMonomial {
    WMonomial::new(&e)
}

fn beta3_monomial([w, a, b]: [u32; 3]) -> WMonomial {
    mono([2 * w + 1, a, b, 1, 0])
}

fn beta5_monomial([w, a, b]: [u32; 3]) -> WMonomial {
    mono([2 * w, a, b, 0, 0])
}

impl VPrimeParams {
    pub const LEN: usize = 34;

    pub fn field(&self) -> Field {
        self.a0.field()
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        [&self.a0, &self.a1, &self.a2]
            .into_iter()
            .cloned()
            .chain(self.beta3.iter().cloned())
            .chain(self.beta5.iter().cloned())
            .collect()
    }

    /// `[a0, a1, a2, beta3 (10), beta5 (21)]`.
    pub fn from_vec(v: Vec<Scalar>) -> Result<Self> {
        if v.len() != Self::LEN {
            return Err(Error::Validation(format!(
                "subfamily point needs {} coefficients, got {}",
                Self::LEN,
                v.len()
            )));
        }
        let field = v[0].field();
        if v.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(VPrimeParams {
            a0: v[0].clone(),
            a1: v[1].clone(),
            a2: v[2].clone(),
            beta3: v[3..13].to_vec(),
            beta5: v[13..].to_vec(),
        })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, field: Field, bound: i64) -> Self {
        let v = (0..Self::LEN).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect();
        Self::from_vec(v).expect("right length")
    }

    /// Symmetrized under `Y0 <-> Y1`, so `tau` fixes it.
    pub fn tau_symmetrized(&self) -> Self {
        let sym = |coeffs: &[Scalar], d: u32| -> Vec<Scalar> {
            let basis = ternary_basis(d);
            basis
                .iter()
                .map(|&[w, a, b]| {
                    let partner = basis.iter().position(|&e| e == [w, b, a]).expect("swap stays in basis");
                    let mine = basis.iter().position(|&e| e == [w, a, b]).expect("in basis");
                    coeffs[mine.min(partner)].clone()
                })
                .collect()
        };
        VPrimeParams {
            a0: self.a0.clone(),
            a1: self.a1.clone(),
            a2: self.a1.clone(),
            beta3: sym(&self.beta3, 3),
            beta5: sym(&self.beta5, 5),
        }
    }

    pub fn expand(&self) -> SurfacePair {
        let field = self.field();
        let mut f_terms: Vec<(WMonomial, Scalar)> = VPRIME_F6_FIXED.iter().map(|&e| (mono(e), field.one())).collect();
        for (e, c) in VPRIME_F6_MONOMIALS.iter().zip([&self.a0, &self.a1, &self.a2]) {
            f_terms.push((mono(*e), c.clone()));
        }
        let mut g_terms = vec![(mono([0, 0, 0, 0, 2]), field.one())];
        g_terms.extend(ternary_basis(3).into_iter().map(beta3_monomial).zip(self.beta3.iter().cloned()));
        g_terms.extend(ternary_basis(5).into_iter().map(beta5_monomial).zip(self.beta5.iter().cloned()));
        SurfacePair {
            f6: WPoly::from_terms(field, f_terms).with_degree(6).expect("degree 6"),
            g10: WPoly::from_terms(field, g_terms).with_degree(10).expect("degree 10"),
        }
    }

    /// Reads a pair in subfamily shape, or reports the first offending term.
    pub fn from_pair(pair: &SurfacePair) -> Result<Self> {
        let field = pair.field();
        let one = field.one();
        for e in VPRIME_F6_FIXED {
            let c = pair.f6.coeff(&mono(e));
            if c != one {
                return Err(Error::LeftVPrime(format!("coefficient of {} in f6 is {c}", mono(e))));
            }
        }
        if let Some((m, _)) = pair.f6.terms().find(|(m, _)| {
            let e = [m.exp(0), m.exp(1), m.exp(2), m.exp(3), m.exp(4)];
            !VPRIME_F6_FIXED.contains(&e) && !VPRIME_F6_MONOMIALS.contains(&e)
        }) {
            return Err(Error::LeftVPrime(format!("f6 contains {m}")));
        }
        let u0sq = mono([0, 0, 0, 0, 2]);
        if pair.g10.coeff(&u0sq) != one {
            return Err(Error::LeftVPrime("coefficient of U0^2 in g10 is not 1".into()));
        }
        if let Some((m, _)) =
            pair.g10.terms().find(|(m, _)| **m != u0sq && !(m.exp(U0) == 0 && m.exp(Z0) <= 1 && m.degree() == 10))
        {
            return Err(Error::LeftVPrime(format!("g10 contains {m}")));
        }
        let [a0, a1, a2] = VPRIME_F6_MONOMIALS.map(|e| pair.f6.coeff(&mono(e)));
        Ok(VPrimeParams {
            a0,
            a1,
            a2,
            beta3: ternary_basis(3).into_iter().map(|e| pair.g10.coeff(&beta3_monomial(e))).collect(),
            beta5: ternary_basis(5).into_iter().map(|e| pair.g10.coeff(&beta5_monomial(e))).collect(),
        })
    }
}

/// `sigma^i tau^j` with `tau sigma = sigma^{-1} tau`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    pub sigma_power: u8,
    pub tau: bool,
}

impl Permutation {
    pub const IDENTITY: Permutation = Permutation { sigma_power: 0, tau: false };
    pub const SIGMA: Permutation = Permutation { sigma_power: 1, tau: false };
    pub const TAU: Permutation = Permutation { sigma_power: 0, tau: true };

    pub fn all() -> Vec<Permutation> {
        (0..3).flat_map(|i| [false, true].map(|tau| Permutation { sigma_power: i, tau })).collect()
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        let k = if self.tau { (3 - other.sigma_power) % 3 } else { other.sigma_power };
        Permutation { sigma_power: (self.sigma_power + k) % 3, tau: self.tau ^ other.tau }
    }
}

/// `rho ∘ Psi(lambda0, lambda1, mu0, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub rho: Permutation,
    pub lambda0: u8,
    pub lambda1: u8,
    pub mu0: u8,
    pub a: Scalar,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sigma^{} tau^{} Psi({},{},{},{})",
            self.rho.sigma_power, self.rho.tau as u8, self.lambda0, self.lambda1, self.mu0, self.a
        )
    }
}

/// Smallest primitive cube root of unity in `field`.
pub fn primitive_cube_root(field: Field) -> Result<Scalar> {
    match field {
        Field::Prime(p) if p % 3 == 1 => (2..p)
            .map(|x| field.from_i64(x as i64))
            .find(|w| w.pow(3).is_one())
            .ok_or_else(|| Error::Internal(format!("no cube root found in F_{p}"))),
        _ => Err(Error::NoCubeRoot(field.to_string())),
    }
}

/// `phi ∘ psi` for ring maps given by variable images: `x -> phi(psi(x))`.
fn compose_maps(phi: &[WPoly], psi: &[WPoly]) -> Vec<WPoly> {
    psi.iter().map(|img| img.compose(phi).expect("five images over one field")).collect()
}

fn scaled_vars(field: Field, scales: [Scalar; 5]) -> Vec<WPoly> {
    (0..Wps::count()).zip(scales).map(|(i, c)| WPoly::var(field, i).scale(&c)).collect()
}

impl GroupElement {
    pub fn identity(field: Field) -> Self {
        GroupElement { rho: Permutation::IDENTITY, lambda0: 0, lambda1: 0, mu0: 0, a: field.one() }
    }

    /// The 108 elements with `a = 1`.
    pub fn finite_part(field: Field) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(108);
        for rho in Permutation::all() {
            for lambda0 in 0..3 {
                for lambda1 in 0..3 {
                    for mu0 in 0..2 {
                        out.push(GroupElement { rho, lambda0, lambda1, mu0, a: field.one() });
                    }
                }
            }
        }
        out
    }

    /// Product in the abstract group: `tau` conjugates `Psi(l0, l1, ..)` to
    /// `Psi(l1, l0, ..)` and `sigma` commutes with every `Psi`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let (l0, l1) = if other.rho.tau { (self.lambda1, self.lambda0) } else { (self.lambda0, self.lambda1) };
        GroupElement {
            rho: self.rho.compose(&other.rho),
            lambda0: (l0 + other.lambda0) % 3,
            lambda1: (l1 + other.lambda1) % 3,
            mu0: (self.mu0 + other.mu0) % 2,
            a: &self.a * &other.a,
        }
    }

    /// Images of `X0, Y0, Y1, Z0, U0` under the ring automorphism.
    pub fn images(&self, omega: &Scalar) -> Vec<WPoly> {
        let field = omega.field();
        let one = field.one();
        let a = &self.a;
        let sign = if self.mu0 == 1 { -&one } else { one.clone() };
        let psi = scaled_vars(
            field,
            [
                a.clone(),
                &omega.pow(self.lambda0 as u32) * &a.pow(2),
                &omega.pow(self.lambda1 as u32) * &a.pow(2),
                &sign * &a.pow(3),
                a.pow(5),
            ],
        );
        let sigma = scaled_vars(field, [one.clone(), omega.clone(), omega.pow(2), one.clone(), one.clone()]);
        let mut tau: Vec<WPoly> = (0..Wps::count()).map(|i| WPoly::var(field, i)).collect();
        tau.swap(Y0, Y1);
        let mut rho: Vec<WPoly> = (0..Wps::count()).map(|i| WPoly::var(field, i)).collect();
        if self.rho.tau {
            rho = tau;
        }
        for _ in 0..self.rho.sigma_power {
            rho = compose_maps(&sigma, &rho);
        }
        compose_maps(&rho, &psi)
    }
}

/// Transforms the pair by `g` and rescales `f6` by `a^-6`, `g10` by `a^-10`.
pub fn apply_group(g: &GroupElement, v: &VPrimeParams) -> Result<VPrimeParams> {
    let field = v.field();
    if g.a.field() != field {
        return Err(Error::FieldMismatch);
    }
    let omega = primitive_cube_root(field)?;
    apply_with_root(g, v, &omega)
}

fn apply_with_root(g: &GroupElement, v: &VPrimeParams, omega: &Scalar) -> Result<VPrimeParams> {
    let images = g.images(omega);
    let pair = v.expand();
    let a_inv = g.a.inv().ok_or_else(|| Error::NotInvertible("a = 0".into()))?;
    let f6 = pair.f6.compose(&images)?.scale(&a_inv.pow(6)).with_degree(6)?;
    let g10 = pair.g10.compose(&images)?.scale(&a_inv.pow(10)).with_degree(10)?;
    VPrimeParams::from_pair(&SurfacePair { f6, g10 })
}

/// Distinct images of `v` under the 108-element finite part, in the order
/// first reached.
pub fn orbit(v: &VPrimeParams) -> Result<Vec<VPrimeParams>> {
    let field = v.field();
    let omega = primitive_cube_root(field)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in GroupElement::finite_part(field) {
        let w = apply_with_root(&g, v, &omega)?;
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Number of distinct coordinate changes among the 108 elements of the
/// finite part. `sigma` equals `Psi(1, 2, 0, 1)`, so this is smaller than 108.
pub fn distinct_finite_transformations(field: Field) -> Result<usize> {
    let omega = primitive_cube_root(field)?;
    let mut distinct: Vec<Vec<WPoly>> = Vec::new();
    for g in GroupElement::finite_part(field) {
        let imgs = g.images(&omega);
        if !distinct.contains(&imgs) {
            distinct.push(imgs);
        }
    }
    Ok(distinct.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(permutation_part_order(), 6);
        assert_eq!(param_counts(), ParamCounts { full: 42, vprime: 34, finite_group: 108 });
    }

    #[test]
    fn cube_roots() {
        assert_eq!(primitive_cube_root(f7()).unwrap(), f7().from_i64(2));
        assert!(matches!(primitive_cube_root(Field::prime(11).unwrap()), Err(Error::NoCubeRoot(_))));
        assert!(matches!(primitive_cube_root(Field::Rational), Err(Error::NoCubeRoot(_))));
    }

    #[test]
    fn sigma_is_a_psi() {
        let w = primitive_cube_root(f7()).unwrap();
        let sigma = GroupElement { rho: Permutation::SIGMA, ..GroupElement::identity(f7()) };
        let psi = GroupElement { lambda0: 1, lambda1: 2, ..GroupElement::identity(f7()) };
        assert_eq!(sigma.images(&w), psi.images(&w));
        assert_eq!(distinct_finite_transformations(f7()).unwrap(), 36);
    }

    #[test]
    fn permutation_relations() {
        let s = Permutation::SIGMA;
        let t = Permutation::TAU;
        let s_inv = s.compose(&s);
        assert_eq!(t.compose(&s), s_inv.compose(&t));
        assert_eq!(s.compose(&s).compose(&s), Permutation::IDENTITY);
        assert_eq!(t.compose(&t), Permutation::IDENTITY);
    }

    #[test]
    fn vec_round_trip() {
        let mut rng = rand::rngs::mock::StepRng::new(1, 5);
        let v = VPrimeParams::random(&mut rng, f7(), 3);
        assert_eq!(VPrimeParams::from_vec(v.to_vec()).unwrap(), v);
        assert_eq!(VPrimeParams::from_pair(&v.expand()).unwrap(), v);
    }
}
