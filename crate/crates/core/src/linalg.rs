//! Exact dense linear algebra.
//!
//! Ranks over `Q` go through fraction-free (Bareiss) elimination on integer
//! rows; over `F_p` plain elimination on residues. Determinants use ordinary
//! Gaussian elimination over the field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, Scalar};

/// Rank of the matrix whose rows are `rows`; all entries must lie in `field`.
pub fn rank(rows: &[Vec<Scalar>], field: Field) -> usize {
    match field {
        Field::Rational => bareiss_rank(rows.iter().map(|r| integer_row(r)).collect()),
        Field::Prime(p) => modular_rank(
            rows.iter().map(|r| r.iter().map(|s| s.residue().expect("prime-field entry")).collect()).collect(),
            p,
        ),
    }
}

/// Clears denominators of a rational row.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let qs: Vec<_> = row.iter().map(|s| s.as_rational().expect("rational entry")).collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let v = &prow[c] * &row[j] - &factor * &prow[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = head[r][c].clone();
        r += 1;
    }
    r
}

pub fn modular_rank(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = Field::Prime(p).from_i64(a[r][c] as i64).inv().and_then(|s| s.residue()).expect("nonzero pivot");
        for j in c..ncols {
            a[r][j] = a[r][j] * inv % p;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                row[j] = (row[j] + (p - f) * prow[j]) % p;
            }
        }
        r += 1;
    }
    r
}

/// Rank by Gaussian elimination directly over field scalars. Slower than
/// [`rank`]; kept as an independent route for cross-checks.
pub fn rank_by_elimination(rows: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..nrows {
            let f = &a[i][c] * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..ncols {
                let v = &a[i][j] - &(&f * &a[r][j]);
                a[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

/// Determinant of a square matrix over `field`.
pub fn determinant(rows: &[Vec<Scalar>], field: Field) -> Scalar {
    let n = rows.len();
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let mut det = field.one();
    for c in 0..n {
        assert_eq!(a[c].len(), n, "determinant needs a square matrix");
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return field.zero();
        };
        if piv != c {
            a.swap(c, piv);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            let f = &a[i][c] * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &a[i][j] - &(&f * &a[c][j]);
                a[i][j] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: Field, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rank_over_q_and_fp_differ_when_they_should() {
        // det = 7
        let m = &[&[1i64, 2][..], &[3, 13][..]];
        assert_eq!(rank(&mat(Field::Rational, m), Field::Rational), 2);
        let f7 = Field::prime(7).unwrap();
        assert_eq!(rank(&mat(f7, m), f7), 1);
    }

    #[test]
    fn rank_routes_agree() {
        let m = mat(Field::Rational, &[&[2, 4, 6, 8], &[1, 0, -1, 3], &[3, 4, 5, 11], &[0, 0, 0, 0], &[5, -2, 1, 7]]);
        assert_eq!(rank(&m, Field::Rational), rank_by_elimination(&m));
        assert_eq!(rank(&m, Field::Rational), 3);
    }

    #[test]
    fn determinant_small() {
        let m = mat(Field::Rational, &[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]);
        assert_eq!(determinant(&m, Field::Rational), Field::Rational.from_i64(-3));
    }
}
