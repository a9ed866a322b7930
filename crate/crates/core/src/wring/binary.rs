//! Binary forms in `(T0, T1)` with a fixed degree tag.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg;

/// `sum_j coeffs[j] * T0^j * T1^(d-j)`. Setting `T1 = 1` turns `coeffs` into
/// the ascending coefficient list of the dehomogenized polynomial, and
/// vanishing at `[1:0]` shows up as trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm[{}]({})", self.degree(), self)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mono = match (j, d as usize - j) {
                (0, 0) => String::new(),
                (a, 0) => pow_str("T0", a),
                (0, b) => pow_str("T1", b),
                (a, b) => format!("{}*{}", pow_str("T0", a), pow_str("T1", b)),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pow_str(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo `b` (ascending lists, `b` trimmed and nonzero).
fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    poly_divrem(a, b).1
}

fn poly_divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let field = b[0].field();
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("trimmed divisor");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = &r[r.len() - 1] * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            let v = &r[shift + i] - &(&f * bc);
            r[shift + i] = v;
        }
        q[shift] = f;
        r = trim(r);
    }
    (q, r)
}

fn univariate_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last() {
        let inv = lead.inv().expect("nonzero lead");
        a = a.iter().map(|c| c * &inv).collect();
    }
    a
}

impl BinaryForm {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree >= 0");
        assert!(coeffs.iter().all(|c| c.field() == field), "field mismatch");
        BinaryForm { field, coeffs }
    }

    /// `coeffs[j]` multiplies `T0^j T1^(d-j)`.
    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        BinaryForm::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field, degree: u32) -> Self {
        BinaryForm { field, coeffs: vec![field.zero(); degree as usize + 1] }
    }

    pub fn constant(c: Scalar) -> Self {
        BinaryForm { field: c.field(), coeffs: vec![c] }
    }

    /// `T0^a T1^b`.
    pub fn monomial(field: Field, a: u32, b: u32) -> Self {
        let mut f = BinaryForm::zero(field, a + b);
        f.coeffs[a as usize] = field.one();
        f
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Scalar {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.degree() != other.degree() {
            return Err(Error::NotHomogeneous { expected: self.degree() });
        }
        Ok(BinaryForm {
            field: self.field,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BinaryForm { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        BinaryForm { field: self.field, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BinaryForm { field: self.field, coeffs: out }
    }

    pub fn eval(&self, t0: &Scalar, t1: &Scalar) -> Scalar {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .fold(self.field.zero(), |acc, (j, c)| &acc + &(&(c * &t0.pow(j as u32)) * &t1.pow(d - j as u32)))
    }

    /// Order of vanishing at `[1:0]`; `None` for the zero form.
    pub fn multiplicity_at_infinity(&self) -> Option<u32> {
        let top = self.coeffs.iter().rposition(|c| !c.is_zero())?;
        Some(self.degree() - top as u32)
    }

    /// Dehomogenization at `T1 = 1`, trimmed.
    pub fn dehomogenize(&self) -> Vec<Scalar> {
        trim(self.coeffs.clone())
    }

    fn rehomogenize(field: Field, mut u: Vec<Scalar>, degree: u32) -> Self {
        debug_assert!(u.len() <= degree as usize + 1);
        u.resize(degree as usize + 1, field.zero());
        BinaryForm { field, coeffs: u }
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not divide.
    pub fn exact_div(&self, divisor: &BinaryForm) -> Option<BinaryForm> {
        if divisor.is_zero() || divisor.degree() > self.degree() {
            return None;
        }
        let qdeg = self.degree() - divisor.degree();
        if self.is_zero() {
            return Some(BinaryForm::zero(self.field, qdeg));
        }
        let (q, r) = poly_divrem(&self.dehomogenize(), &divisor.dehomogenize());
        if !r.is_empty() || q.len() > qdeg as usize + 1 {
            return None;
        }
        let out = BinaryForm::rehomogenize(self.field, trim(q), qdeg);
        (out.mul(divisor) == *self).then_some(out)
    }

    /// Sylvester matrix with the formal degrees as tags, rows ordered by
    /// descending powers of `T0`.
    pub fn sylvester_matrix(&self, other: &BinaryForm) -> Vec<Vec<Scalar>> {
        let m = self.degree() as usize;
        let n = other.degree() as usize;
        let size = m + n;
        let desc = |f: &BinaryForm| f.coeffs.iter().rev().cloned().collect::<Vec<_>>();
        let (fa, ga) = (desc(self), desc(other));
        let mut rows = Vec::with_capacity(size);
        for s in 0..n {
            let mut row = vec![self.field.zero(); size];
            row[s..s + m + 1].clone_from_slice(&fa);
            rows.push(row);
        }
        for s in 0..m {
            let mut row = vec![self.field.zero(); size];
            row[s..s + n + 1].clone_from_slice(&ga);
            rows.push(row);
        }
        rows
    }
}

/// Sylvester resultant of two binary forms of degrees `m, n >= 1`. Zero
/// exactly when the forms share a zero on `P^1` over the algebraic closure.
pub fn binary_resultant(f: &BinaryForm, g: &BinaryForm) -> Result<Scalar> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    if f.degree() == 0 || g.degree() == 0 {
        return Err(Error::NotHomogeneous { expected: 1 });
    }
    Ok(linalg::determinant(&f.sylvester_matrix(g), f.field))
}

/// Monic gcd. Powers of `T1` (zeros at `[1:0]`) are split off first, the
/// rest is a Euclidean gcd of the dehomogenizations.
pub fn binary_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    let field = f.field;
    let normalize = |h: &BinaryForm| -> BinaryForm {
        let u = univariate_gcd(&h.dehomogenize(), &[]);
        let e = h.multiplicity_at_infinity().expect("nonzero");
        let deg = u.len() as u32 - 1 + e;
        BinaryForm::rehomogenize(field, u, deg)
    };
    match (f.is_zero(), g.is_zero()) {
        (true, true) => Err(Error::Internal("gcd of two zero forms".into())),
        (true, false) => Ok(normalize(g)),
        (false, true) => Ok(normalize(f)),
        (false, false) => {
            let e = f.multiplicity_at_infinity().unwrap().min(g.multiplicity_at_infinity().unwrap());
            let u = univariate_gcd(&f.dehomogenize(), &g.dehomogenize());
            let deg = u.len() as u32 - 1 + e;
            Ok(BinaryForm::rehomogenize(field, u, deg))
        }
    }
}

/// Gcd of several forms (zero forms are skipped).
pub fn binary_gcd_all<'a>(forms: impl IntoIterator<Item = &'a BinaryForm>) -> Option<BinaryForm> {
    let mut acc: Option<BinaryForm> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => binary_gcd(f, f).expect("nonzero"),
            Some(a) => binary_gcd(&a, f).expect("same field"),
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64s(Field::Rational, c)
    }

    #[test]
    fn fermat_restrictions_share_a_factor() {
        // Y0^3 + Y1^3 and Y0^5 + Y1^5 with (T0, T1) = (Y0, Y1)
        let f = q(&[1, 0, 0, 1]);
        let g = q(&[1, 0, 0, 0, 0, 1]);
        assert!(binary_resultant(&f, &g).unwrap().is_zero());
        assert_eq!(binary_gcd(&f, &g).unwrap(), q(&[1, 1]));
        assert_eq!(binary_gcd(&f, &g).unwrap().to_string(), "T0 + T1");
    }

    #[test]
    fn perturbed_fermat_is_coprime() {
        let f = q(&[1, 0, 0, 1]);
        let g = q(&[2, 0, 0, 0, 0, 1]);
        assert!(!binary_resultant(&f, &g).unwrap().is_zero());
        assert_eq!(binary_gcd(&f, &g).unwrap().degree(), 0);
    }

    #[test]
    fn coordinate_forms() {
        let y0_cubed = q(&[0, 0, 0, 1]);
        let y1_fifth = q(&[1, 0, 0, 0, 0, 0]);
        assert!(!binary_resultant(&y0_cubed, &y1_fifth).unwrap().is_zero());
        let t0 = q(&[0, 1]);
        let t1 = q(&[1, 0]);
        assert_eq!(binary_gcd(&t0, &t1).unwrap(), q(&[1]));
        // common zero at infinity
        assert!(binary_resultant(&t1, &q(&[3, 0, 0])).unwrap().is_zero());
        assert_eq!(binary_gcd(&q(&[0, 2, 0]), &q(&[5, 0, 0])).unwrap(), t1);
    }

    #[test]
    fn gcd_with_itself_is_monic_multiple() {
        let f = q(&[0, 6, 4]); // 2*T0*(3*T1 + 2*T0)
        let g = binary_gcd(&f, &f).unwrap();
        assert_eq!(g.degree(), 2);
        assert!(g.coeff(2).is_one());
        assert!(f.exact_div(&g).is_some());
    }

    #[test]
    fn exact_division() {
        let a = q(&[1, 1]);
        let b = q(&[-2, 0, 3]);
        let ab = a.mul(&b);
        assert_eq!(ab.exact_div(&a).unwrap(), b);
        assert!(ab.exact_div(&q(&[1, 2])).is_none());
        let t1sq = q(&[1, 0, 0]);
        assert_eq!(t1sq.mul(&a).exact_div(&t1sq).unwrap(), a);
    }
}
