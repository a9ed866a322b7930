//! Graded dimensions of the `(6,10)` complete intersection in `P(1,2,2,3,5)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::surface::SurfacePair;
use crate::wring::{monomial_basis, Vars, WMonomial, WPoly, Wps};

pub const RELATION_DEGREES: [u32; 2] = [6, 10];

/// Default largest degree the quotient oracle accepts.
pub const DEFAULT_ORACLE_BOUND: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub coefficients: Vec<u64>,
    pub weights: Vec<u32>,
    pub relation_degrees: Vec<u32>,
}

impl HilbertData {
    pub fn coefficient(&self, n: i64) -> u64 {
        if n < 0 {
            return 0;
        }
        self.coefficients.get(n as usize).copied().unwrap_or_else(|| panic!("degree {n} not computed"))
    }

    /// `c_n + c_{3-n} = chi(n)` for every computed `n`.
    pub fn gorenstein_symmetric(&self) -> bool {
        (0..self.coefficients.len() as i64)
            .all(|n| (self.coefficient(n) + self.coefficient(3 - n)) as i64 == chi_riemann_roch(n))
    }
}

/// Power-series coefficients of `1 / prod(1 - t^w)` through degree `n`.
pub fn ambient_series(n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for &w in Wps::WEIGHTS {
        let w = w as usize;
        for d in w..=n {
            c[d] += c[d - w];
        }
    }
    c
}

pub fn ci_hilbert_series(n: usize) -> HilbertData {
    let mut c: Vec<i64> = ambient_series(n).into_iter().map(|x| x as i64).collect();
    for &r in &RELATION_DEGREES {
        let r = r as usize;
        for d in (r..=n).rev() {
            c[d] -= c[d - r];
        }
    }
    HilbertData {
        coefficients: c
            .into_iter()
            .map(|x| u64::try_from(x).expect("complete intersection series is nonnegative"))
            .collect(),
        weights: Wps::WEIGHTS.to_vec(),
        relation_degrees: RELATION_DEGREES.to_vec(),
    }
}

/// `chi(O_S(nL)) = chi(O_S) + nL.(nL - K)/2` with `chi = 5`, `L^2 = 1`, `K = 3L`.
pub fn chi_riemann_roch(n: i64) -> i64 {
    5 + n * (n - 3) / 2
}

pub fn quotient_dim_oracle(pair: &SurfacePair, n: u32) -> Result<usize> {
    quotient_dim_oracle_bounded(pair, n, DEFAULT_ORACLE_BOUND)
}

/// `dim (C[X0..U0] / (f6, g10))_n` by exact row reduction of
/// `{m f6} ∪ {m g10}` inside the degree-`n` monomial basis.
pub fn quotient_dim_oracle_bounded(pair: &SurfacePair, n: u32, bound: u32) -> Result<usize> {
    if n > bound {
        return Err(Error::DegreeOutOfRange { n, bound });
    }
    if !pair.f6.is_homogeneous_of(6) {
        return Err(Error::NotHomogeneous { expected: 6 });
    }
    if !pair.g10.is_homogeneous_of(10) {
        return Err(Error::NotHomogeneous { expected: 10 });
    }
    let basis = monomial_basis(n);
    let column: HashMap<WMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let field = pair.field();
    let mut rows = Vec::new();
    for (rel, deg) in [(&pair.f6, 6u32), (&pair.g10, 10)] {
        if n < deg {
            continue;
        }
        for m in monomial_basis(n - deg) {
            let prod = &WPoly::monomial(m, field.one()) * rel;
            let mut row = vec![field.zero(); basis.len()];
            for (mono, c) in prod.terms() {
                row[column[mono]] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(basis.len() - linalg::rank(&rows, field))
}

/// Degree up to which [`is_regular_sequence`] compares oracle and series.
/// A common factor of degree `e` first shows up in degree `16 - e`, so 15
/// catches every `e >= 1`.
pub const REGULARITY_CHECK_DEGREE: u32 = 15;

/// True when the quotient dimensions agree with the complete-intersection
/// series through [`REGULARITY_CHECK_DEGREE`].
pub fn is_regular_sequence(pair: &SurfacePair) -> Result<bool> {
    let series = ci_hilbert_series(REGULARITY_CHECK_DEGREE as usize);
    for n in 0..=REGULARITY_CHECK_DEGREE {
        if quotient_dim_oracle(pair, n)? as u64 != series.coefficients[n as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}
