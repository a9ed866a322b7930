//! Exhaustive scans of the affine cone over `F_p`.
//!
//! Points are indexed lexicographically with `x0` most significant. The
//! outer coordinates `(x0, y0, y1)` are split into contiguous chunks, one per
//! worker, and each chunk specializes both equations to small polynomials in
//! `(z0, u0)` before the inner loop.

use std::thread;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::surface::SurfacePair;
use crate::wring::{Vars, WPoly, Wps, U0, Z0};

/// Weights of the `G_m` action on the cone.
pub const CONE_WEIGHTS: [u32; 5] = [1, 2, 2, 3, 5];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub prime: u64,
    pub scanned: u64,
    pub singular_points: Vec<[u64; 5]>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub prime: u64,
    /// Orbits of `G_m` on the nonzero cone solutions, i.e. points of `Q`.
    pub orbits: u64,
    pub cone_points: u64,
    /// Sum of the orbit sizes over counted orbits; equals `cone_points`.
    pub orbit_size_sum: u64,
}

#[derive(Clone, Debug)]
struct Compiled {
    p: u64,
    terms: Vec<(u64, [u32; 5])>,
}

impl Compiled {
    fn new(poly: &WPoly, p: u64) -> Self {
        let terms = poly
            .terms()
            .map(|(m, c)| {
                let mut e = [0u32; 5];
                e.copy_from_slice(m.exps());
                (c.residue().expect("prime-field coefficient"), e)
            })
            .collect();
        Compiled { p, terms }
    }

    fn eval(&self, pt: &[u64; 5]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (c, e)| {
            let t = e.iter().zip(pt).fold(*c, |t, (&k, &x)| t * pow_mod(x, k, p) % p);
            (acc + t) % p
        })
    }

    /// Coefficients in `(z0, u0)` after fixing `(x0, y0, y1)`.
    fn specialize(&self, x0: u64, y0: u64, y1: u64, out: &mut Vec<(u64, u32, u32)>) {
        let p = self.p;
        out.clear();
        for (c, e) in &self.terms {
            let v = c * pow_mod(x0, e[0], p) % p * pow_mod(y0, e[1], p) % p * pow_mod(y1, e[2], p) % p;
            if v == 0 {
                continue;
            }
            match out.iter_mut().find(|(_, a, b)| *a == e[Z0] && *b == e[U0]) {
                Some(slot) => slot.0 = (slot.0 + v) % p,
                None => out.push((v, e[Z0], e[U0])),
            }
        }
        out.retain(|t| t.0 != 0);
    }
}

fn pow_mod(mut b: u64, mut e: u32, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn eval_zu(terms: &[(u64, u32, u32)], zp: &[u64], up: &[u64], p: u64) -> u64 {
    terms.iter().fold(0, |acc, &(c, a, b)| (acc + c * zp[a as usize] % p * up[b as usize]) % p)
}

struct Prepared {
    p: u64,
    f: Compiled,
    g: Compiled,
    grad_f: Vec<Compiled>,
    grad_g: Vec<Compiled>,
}

fn prepare(pair: &SurfacePair, prime: u64) -> Result<Prepared> {
    if prime > 1 << 31 {
        return Err(Error::BadPrime(prime));
    }
    let field = Field::prime(prime)?;
    let pair = pair.reduce(field)?;
    let grads = |p: &WPoly| (0..Wps::count()).map(|i| Compiled::new(&p.partial(i), prime)).collect();
    Ok(Prepared {
        p: prime,
        f: Compiled::new(&pair.f6, prime),
        g: Compiled::new(&pair.g10, prime),
        grad_f: grads(&pair.f6),
        grad_g: grads(&pair.g10),
    })
}

impl Prepared {
    fn is_singular(&self, pt: &[u64; 5]) -> bool {
        let p = self.p;
        let a: Vec<u64> = self.grad_f.iter().map(|d| d.eval(pt)).collect();
        let b: Vec<u64> = self.grad_g.iter().map(|d| d.eval(pt)).collect();
        (0..5).all(|i| (i + 1..5).all(|j| (a[i] * b[j] % p + p - a[j] * b[i] % p).is_multiple_of(p)))
    }

    /// Calls `visit` on every nonzero cone solution with outer index
    /// (`x0 p^2 + y0 p + y1`) in `outer`, in lexicographic order.
    fn for_each_solution(&self, outer: std::ops::Range<u64>, mut visit: impl FnMut(&[u64; 5])) {
        let p = self.p;
        let max_z = self.f.terms.iter().chain(&self.g.terms).map(|t| t.1[Z0]).max().unwrap_or(0) as usize;
        let max_u = self.f.terms.iter().chain(&self.g.terms).map(|t| t.1[U0]).max().unwrap_or(0) as usize;
        let powers = |x: u64, n: usize| {
            let mut v = vec![1 % p; n + 1];
            for k in 1..=n {
                v[k] = v[k - 1] * x % p;
            }
            v
        };
        let zpows: Vec<Vec<u64>> = (0..p).map(|z| powers(z, max_z)).collect();
        let upows: Vec<Vec<u64>> = (0..p).map(|u| powers(u, max_u)).collect();
        let (mut fs, mut gs) = (Vec::new(), Vec::new());
        for idx in outer {
            let (x0, y0, y1) = (idx / (p * p), idx / p % p, idx % p);
            self.f.specialize(x0, y0, y1, &mut fs);
            self.g.specialize(x0, y0, y1, &mut gs);
            for z0 in 0..p {
                for u0 in 0..p {
                    if idx == 0 && z0 == 0 && u0 == 0 {
                        continue;
                    }
                    let (zp, up) = (&zpows[z0 as usize], &upows[u0 as usize]);
                    if eval_zu(&fs, zp, up, p) == 0 && eval_zu(&gs, zp, up, p) == 0 {
                        visit(&[x0, y0, y1, z0, u0]);
                    }
                }
            }
        }
    }

    fn chunks(&self, jobs: usize) -> Vec<std::ops::Range<u64>> {
        let total = self.p.pow(3);
        let jobs = (jobs.max(1) as u64).min(total);
        (0..jobs).map(|j| total * j / jobs..total * (j + 1) / jobs).collect()
    }

    fn parallel<T: Send>(&self, jobs: usize, work: impl Fn(std::ops::Range<u64>) -> Vec<T> + Sync) -> Vec<T> {
        let chunks = self.chunks(jobs);
        if chunks.len() == 1 {
            return work(chunks[0].clone());
        }
        thread::scope(|s| {
            let handles: Vec<_> = chunks.into_iter().map(|c| s.spawn(|| work(c))).collect();
            handles.into_iter().flat_map(|h| h.join().expect("scan worker panicked")).collect()
        })
    }
}

/// Nonzero points of the cone where `f6 = g10 = 0` and all ten 2x2 minors
/// of the Jacobian vanish.
pub fn enumerate_cone_singularities(pair: &SurfacePair, prime: u64) -> Result<SingularityReport> {
    enumerate_cone_singularities_with_jobs(pair, prime, 1)
}

/// Same as [`enumerate_cone_singularities`]; the result does not depend on
/// `jobs`.
pub fn enumerate_cone_singularities_with_jobs(
    pair: &SurfacePair,
    prime: u64,
    jobs: usize,
) -> Result<SingularityReport> {
    let prep = prepare(pair, prime)?;
    let singular_points = prep.parallel(jobs, |range| {
        let mut found = Vec::new();
        prep.for_each_solution(range, |pt| {
            if prep.is_singular(pt) {
                found.push(*pt);
            }
        });
        found
    });
    Ok(SingularityReport { prime, scanned: prime.pow(5) - 1, singular_points })
}

fn point_index(pt: &[u64; 5], p: u64) -> u64 {
    pt.iter().fold(0, |acc, &x| acc * p + x)
}

/// `lambda . pt` for the weighted action.
pub fn act(lambda: u64, pt: &[u64; 5], p: u64) -> [u64; 5] {
    let mut out = [0; 5];
    for i in 0..5 {
        out[i] = pt[i] * pow_mod(lambda, CONE_WEIGHTS[i], p) % p;
    }
    out
}

/// Orbit of `pt`, and whether `pt` has the smallest index in it.
fn orbit_info(pt: &[u64; 5], p: u64) -> (u64, bool) {
    let own = point_index(pt, p);
    let mut members: Vec<u64> = (1..p).map(|l| point_index(&act(l, pt, p), p)).collect();
    members.sort_unstable();
    members.dedup();
    (members.len() as u64, members[0] == own)
}

pub fn count_points(pair: &SurfacePair, prime: u64) -> Result<PointCount> {
    count_points_with_jobs(pair, prime, 1)
}

pub fn count_points_with_jobs(pair: &SurfacePair, prime: u64, jobs: usize) -> Result<PointCount> {
    let prep = prepare(pair, prime)?;
    let per_chunk = prep.parallel(jobs, |range| {
        let (mut cone, mut orbits, mut sizes) = (0u64, 0u64, 0u64);
        prep.for_each_solution(range, |pt| {
            cone += 1;
            let (size, leader) = orbit_info(pt, prime);
            if leader {
                orbits += 1;
                sizes += size;
            }
        });
        vec![(cone, orbits, sizes)]
    });
    let (cone_points, orbits, orbit_size_sum) =
        per_chunk.into_iter().fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(PointCount { prime, orbits, cone_points, orbit_size_sum })
}

/// Point count split as (affine points with `x0 = 1`, orbits inside
/// `x0 = 0`). Their sum equals [`count_points`]`.orbits`.
pub fn count_points_by_strata(pair: &SurfacePair, prime: u64) -> Result<(u64, u64)> {
    let prep = prepare(pair, prime)?;
    let p = prime;
    let mut patch = 0;
    prep.for_each_solution(p * p..2 * p * p, |_| patch += 1);
    let mut stratum = 0;
    prep.for_each_solution(0..p * p, |pt| {
        if orbit_info(pt, p).1 {
            stratum += 1;
        }
    });
    Ok((patch, stratum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_mod_small() {
        assert_eq!(pow_mod(3, 4, 7), 4);
        assert_eq!(pow_mod(0, 0, 7), 1);
    }

    #[test]
    fn chunks_cover_outer_range() {
        let prep = prepare(&SurfacePair::diagonal(Field::Rational), 7).unwrap();
        for jobs in [1, 3, 8, 1000] {
            let ch = prep.chunks(jobs);
            assert_eq!(ch.first().unwrap().start, 0);
            assert_eq!(ch.last().unwrap().end, 343);
            assert!(ch.windows(2).all(|w| w[0].end == w[1].start));
        }
    }

    #[test]
    fn bad_primes_rejected() {
        let pair = SurfacePair::diagonal(Field::Rational);
        for p in [2, 3, 5, 9] {
            assert!(matches!(enumerate_cone_singularities(&pair, p), Err(Error::BadPrime(_))));
        }
    }
}
