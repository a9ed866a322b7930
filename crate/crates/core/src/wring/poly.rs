//! Sparse weighted polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Maximum number of variables of any polynomial ring in this crate.
pub const MAX_VARS: usize = 5;

/// A set of named, weighted variables.
pub trait Vars: Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static {
    const NAMES: &'static [&'static str];
    const WEIGHTS: &'static [u32];

    fn count() -> usize {
        Self::NAMES.len()
    }
}

/// `C[X0, Y0, Y1, Z0, U0]` with weights `(1, 2, 2, 3, 5)`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Wps;

impl Vars for Wps {
    const NAMES: &'static [&'static str] = &["X0", "Y0", "Y1", "Z0", "U0"];
    const WEIGHTS: &'static [u32] = &[1, 2, 2, 3, 5];
}

/// Homogeneous coordinates `xi0, eta0, eta1, zeta0` of the canonical `P^3`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct P3;

impl Vars for P3 {
    const NAMES: &'static [&'static str] = &["xi0", "eta0", "eta1", "zeta0"];
    const WEIGHTS: &'static [u32] = &[1, 1, 1, 1];
}

pub const X0: usize = 0;
pub const Y0: usize = 1;
pub const Y1: usize = 2;
pub const Z0: usize = 3;
pub const U0: usize = 4;

/// Exponent vector. Unused slots (beyond `V::count()`) stay zero.
pub struct Monomial<V: Vars> {
    exps: [u32; MAX_VARS],
    _vars: PhantomData<V>,
}

pub type WMonomial = Monomial<Wps>;

impl<V: Vars> Clone for Monomial<V> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<V: Vars> Copy for Monomial<V> {}

impl<V: Vars> PartialEq for Monomial<V> {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}
impl<V: Vars> Eq for Monomial<V> {}

impl<V: Vars> Hash for Monomial<V> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

/// Weighted degree first, then lexicographically *descending* exponents, so
/// within a degree `X0^2 < Y0 < Y1` in iteration order.
impl<V: Vars> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl<V: Vars> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Vars> fmt::Debug for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<V: Vars> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate().take(V::count()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", V::NAMES[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl<V: Vars> Monomial<V> {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], _vars: PhantomData }
    }

    /// Panics if `exps` is longer than the variable count.
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= V::count(), "too many exponents");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { exps: e, _vars: PhantomData }
    }

    pub fn var(i: usize) -> Self {
        assert!(i < V::count());
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial { exps: e, _vars: PhantomData }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps[..V::count()]
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().zip(V::WEIGHTS).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a += b;
        }
        Monomial { exps: e, _vars: PhantomData }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// All monomials of weighted degree `d`, in ascending canonical order.
    pub fn basis(d: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fill_basis::<V>(0, d, &mut cur, &mut out);
        out.sort();
        out
    }
}

fn fill_basis<V: Vars>(i: usize, remaining: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial<V>>) {
    if i == V::count() {
        if remaining == 0 {
            out.push(Monomial { exps: *cur, _vars: PhantomData });
        }
        return;
    }
    let w = V::WEIGHTS[i];
    for e in 0..=remaining / w {
        cur[i] = e;
        fill_basis::<V>(i + 1, remaining - e * w, cur, out);
    }
    cur[i] = 0;
}

/// Sparse polynomial: monomial -> nonzero coefficient, plus an optional
/// homogeneous-degree tag.
#[derive(Clone)]
pub struct Poly<V: Vars> {
    field: Field,
    terms: BTreeMap<Monomial<V>, Scalar>,
    degree: Option<u32>,
}

pub type WPoly = Poly<Wps>;
pub type P3Poly = Poly<P3>;

impl<V: Vars> PartialEq for Poly<V> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}
impl<V: Vars> Eq for Poly<V> {}

impl<V: Vars> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl<V: Vars> Poly<V> {
    pub fn zero(field: Field) -> Self {
        Poly { field, terms: BTreeMap::new(), degree: None }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn from_i64(field: Field, c: i64) -> Self {
        Self::constant(field.from_i64(c))
    }

    pub fn var(field: Field, i: usize) -> Self {
        Self::monomial(Monomial::var(i), field.one())
    }

    pub fn monomial(m: Monomial<V>, c: Scalar) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { field, terms, degree: Some(m.degree()) }
    }

    /// Sums repeated monomials and drops zeros. Panics on mixed fields.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial<V>, Scalar)>) -> Self {
        let mut p = Poly::zero(field);
        for (m, c) in terms {
            assert_eq!(c.field(), field, "field mismatch");
            p.add_term(m, c);
        }
        p.degree = p.homogeneous_degree();
        p
    }

    fn add_term(&mut self, m: Monomial<V>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree_tag(&self) -> Option<u32> {
        self.degree
    }

    /// Degree shared by all terms; `None` for zero or mixed polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Tags the polynomial as homogeneous of degree `d`.
    pub fn with_degree(mut self, d: u32) -> Result<Self> {
        if !self.is_homogeneous_of(d) {
            return Err(Error::NotHomogeneous { expected: d });
        }
        self.degree = Some(d);
        Ok(self)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out.degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => out.homogeneous_degree(),
        };
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = Poly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out.degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => out.homogeneous_degree(),
        };
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-&self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        assert_eq!(c.field(), self.field, "field mismatch");
        if c.is_zero() {
            return Poly { field: self.field, terms: BTreeMap::new(), degree: self.degree };
        }
        Poly { field: self.field, terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(), degree: self.degree }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::from_i64(self.field, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Image under the reduction map into `field` (e.g. `Q -> F_p`).
    pub fn reduce(&self, field: Field) -> Result<Self> {
        let mut out = Poly::zero(field);
        for (m, c) in &self.terms {
            out.add_term(*m, field.reduce(c)?);
        }
        out.degree = self.degree;
        Ok(out)
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.exps[i] -= 1;
            out.add_term(d, c * &self.field.from_i64(e as i64));
        }
        out.degree = self.degree.and_then(|d| d.checked_sub(V::WEIGHTS[i]));
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replaces variable `i` by `images[i]` (a ring map into another ring).
    pub fn compose<W: Vars>(&self, images: &[Poly<W>]) -> Result<Poly<W>> {
        if images.len() != V::count() {
            return Err(Error::NotGraded(format!("expected {} images, got {}", V::count(), images.len())));
        }
        let field = images.first().map(|p| p.field).unwrap_or(self.field);
        if images.iter().any(|p| p.field != field) || field != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut powers: Vec<Vec<Poly<W>>> = images.iter().map(|p| vec![Poly::from_i64(field, 1), p.clone()]).collect();
        let mut out = Poly::zero(field);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        out.degree = out.homogeneous_degree();
        if out.is_zero() {
            out.degree = self.degree;
        }
        Ok(out)
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial<V>) -> bool) -> Self {
        Poly {
            field: self.field,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
            degree: self.degree,
        }
    }

    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0)
    }
}

impl<V: Vars> std::ops::Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<V: Vars> std::ops::Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<V: Vars> std::ops::Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl<V: Vars> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
