//! Vector bundles on `P^1`: splitting types, maps between split bundles,
//! cokernel splitting recovery, and the genus-3 pencil case analysis.

use std::fmt;
use std::ops::RangeInclusive;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hilbert::chi_riemann_roch;
use crate::linalg;
use crate::wring::{binary_gcd, binary_gcd_all, BinaryForm};

/// `O(a_1) + ... + O(a_r)` with `a_1 <= ... <= a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    summands: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut summands: Vec<i64>) -> Self {
        summands.sort_unstable();
        SplittingType { summands }
    }

    pub fn summands(&self) -> &[i64] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn degree(&self) -> i64 {
        self.summands.iter().sum()
    }

    pub fn min_summand(&self) -> Option<i64> {
        self.summands.first().copied()
    }

    pub fn max_summand(&self) -> Option<i64> {
        self.summands.last().copied()
    }

    /// `h^0(E(-k)) = sum max(0, a_i - k + 1)`.
    pub fn h0(&self, k: i64) -> i64 {
        self.summands.iter().map(|a| (a - k + 1).max(0)).sum()
    }

    pub fn profile(&self, ks: RangeInclusive<i64>) -> DimensionProfile {
        let start = *ks.start();
        DimensionProfile { k_start: start, dims: ks.map(|k| self.h0(k)).collect() }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `dims[i] = h^0(C(-k))` for `k = k_start + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionProfile {
    pub k_start: i64,
    pub dims: Vec<i64>,
}

impl DimensionProfile {
    pub fn new(k_start: i64, dims: Vec<i64>) -> Self {
        DimensionProfile { k_start, dims }
    }

    pub fn k_end(&self) -> i64 {
        self.k_start + self.dims.len() as i64 - 1
    }

    pub fn at(&self, k: i64) -> Option<i64> {
        usize::try_from(k - self.k_start).ok().and_then(|i| self.dims.get(i).copied())
    }
}

/// A map `sum O(a_i) -> sum O(b_j)`; `entries[j][i]` is a binary form of
/// degree `b_j - a_i`, or zero when that is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMap {
    source: SplittingType,
    target: SplittingType,
    entries: Vec<Vec<BinaryForm>>,
    field: Field,
}

impl BundleMap {
    /// `source` and `target` are taken in the given order (not re-sorted) so
    /// that rows and columns of `entries` line up with them.
    pub fn new(field: Field, source: Vec<i64>, target: Vec<i64>, entries: Vec<Vec<BinaryForm>>) -> Result<Self> {
        if entries.len() != target.len() || entries.iter().any(|row| row.len() != source.len()) {
            return Err(Error::BadBundleMap(format!(
                "matrix must be {}x{} (target x source)",
                target.len(),
                source.len()
            )));
        }
        for (j, row) in entries.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                let want = target[j] - source[i];
                if want < 0 {
                    if !e.is_zero() {
                        return Err(Error::BadBundleMap(format!("entry ({j},{i}) must vanish: degree {want}")));
                    }
                } else if e.degree() as i64 != want {
                    return Err(Error::BadBundleMap(format!(
                        "entry ({j},{i}) has degree {} but needs {want}",
                        e.degree()
                    )));
                }
            }
        }
        Ok(BundleMap {
            source: SplittingType { summands: source },
            target: SplittingType { summands: target },
            entries,
            field,
        })
    }

    pub fn source(&self) -> SplittingType {
        SplittingType::new(self.source.summands.clone())
    }

    pub fn target(&self) -> SplittingType {
        SplittingType::new(self.target.summands.clone())
    }

    pub fn entry(&self, j: usize, i: usize) -> &BinaryForm {
        &self.entries[j][i]
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Rank of `H^0(sum O(a_i + t)) -> H^0(sum O(b_j + t))`.
    fn h0_rank(&self, t: i64) -> usize {
        let src: Vec<i64> = self.source.summands.iter().map(|a| a + t).collect();
        let tgt: Vec<i64> = self.target.summands.iter().map(|b| b + t).collect();
        block_rank(&src, &tgt, |i, j| &self.entries[j][i], self.field)
    }

    /// Rank of `H^1(E(t)) -> H^1(F(t))`, computed as the rank of its Serre
    /// dual `H^0(sum O(-b_j - t - 2)) -> H^0(sum O(-a_i - t - 2))`, whose
    /// block from summand `j` to summand `i` is multiplication by the same
    /// form `entries[j][i]`.
    fn h1_rank(&self, t: i64) -> usize {
        let src: Vec<i64> = self.target.summands.iter().map(|b| -b - t - 2).collect();
        let tgt: Vec<i64> = self.source.summands.iter().map(|a| -a - t - 2).collect();
        block_rank(&src, &tgt, |j, i| &self.entries[j][i], self.field)
    }

    /// Sheaf-injective iff the global-section map is injective at a twist
    /// where any kernel subbundle would already have sections.
    pub fn is_injective(&self) -> bool {
        let r = self.source.rank() as i64;
        if r == 0 {
            return true;
        }
        if self.target.rank() == 0 {
            return false;
        }
        let deg = self.source.degree();
        let bmax = self.target.max_summand().expect("nonempty");
        // a kernel of rank q has a summand of degree >= (deg - (r - q) bmax) / q
        let t = (1..=r).map(|q| -(deg - (r - q) * bmax).div_euclid(q)).max().expect("r >= 1");
        let sections: i64 = self.source.summands.iter().map(|a| (a + t + 1).max(0)).sum();
        self.h0_rank(t) as i64 == sections
    }
}

/// Rank of the block map `sum H^0(O(src_i)) -> sum H^0(O(tgt_j))`, with
/// `form(i, j)` the multiplier from summand `i` to summand `j`. Monomial bases
/// `T0^s T1^(d-s)`, indexed by `s`.
fn block_rank<'a>(src: &[i64], tgt: &[i64], form: impl Fn(usize, usize) -> &'a BinaryForm, field: Field) -> usize {
    let mut offsets = Vec::with_capacity(tgt.len());
    let mut ncols = 0usize;
    for &d in tgt {
        offsets.push(ncols);
        ncols += (d + 1).max(0) as usize;
    }
    let mut rows = Vec::new();
    for (i, &d) in src.iter().enumerate() {
        for s in 0..=d {
            let mut row = vec![field.zero(); ncols];
            for (j, &dt) in tgt.iter().enumerate() {
                let f = form(i, j);
                if dt < 0 || f.is_zero() {
                    continue;
                }
                for (e, c) in f.coeffs().iter().enumerate() {
                    row[offsets[j] + s as usize + e] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    if ncols == 0 {
        return 0;
    }
    linalg::rank(&rows, field)
}

/// `d_k = h^0(Cok(m)(-k))` for `k` in `ks`, from the long exact cohomology
/// sequence: cokernel of the `H^0` map plus kernel of the `H^1` map.
pub fn twisted_section_dims(m: &BundleMap, ks: RangeInclusive<i64>) -> Result<DimensionProfile> {
    if !m.is_injective() {
        return Err(Error::NotInjective);
    }
    let k_start = *ks.start();
    let dims = ks
        .map(|k| {
            let t = -k;
            let h0_target: i64 = m.target.summands.iter().map(|b| (b + t + 1).max(0)).sum();
            let h1_source: i64 = m.source.summands.iter().map(|a| (-a - t - 1).max(0)).sum();
            h0_target - m.h0_rank(t) as i64 + h1_source - m.h1_rank(t) as i64
        })
        .collect();
    Ok(DimensionProfile { k_start, dims })
}

/// Recovers the splitting type from `d_k`: `#{i : b_i >= k} = d_k - d_{k+1}`.
pub fn splitting_from_dims(profile: &DimensionProfile, rank: usize, degree: i64) -> Result<SplittingType> {
    let d = &profile.dims;
    let ks = profile.k_start;
    if rank == 0 {
        return if degree == 0 && d.iter().all(|&x| x == 0) {
            Ok(SplittingType::new(vec![]))
        } else {
            Err(Error::TorsionDetected("rank 0 with nonzero sections or degree".into()))
        };
    }
    if d.len() < 2 {
        return Err(Error::ProfileTooShort("need at least two twists".into()));
    }
    let counts: Vec<i64> = d.windows(2).map(|w| w[0] - w[1]).collect();
    if counts[0] > rank as i64 {
        return Err(Error::TorsionDetected(format!("{} summands of degree >= {ks} exceed rank {rank}", counts[0])));
    }
    if counts[0] < rank as i64 {
        return Err(Error::ProfileTooShort(format!("profile must start at or below the smallest summand (k = {ks})")));
    }
    if counts.iter().any(|&c| c < 0) || counts.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::TorsionDetected(format!("multiplicities {counts:?} are not a decreasing count")));
    }
    let mut summands = Vec::with_capacity(rank);
    for (i, w) in counts.windows(2).enumerate() {
        for _ in 0..w[0] - w[1] {
            summands.push(ks + i as i64);
        }
    }
    let last_k = ks + counts.len() as i64 - 1;
    let leftover = *counts.last().expect("nonempty");
    if leftover > 0 {
        if *d.last().expect("nonempty") == 0 {
            summands.extend(std::iter::repeat_n(last_k, leftover as usize));
        } else if leftover == 1 {
            summands.push(degree - summands.iter().sum::<i64>());
        } else {
            return Err(Error::ProfileTooShort(format!(
                "{leftover} summands of degree >= {last_k} are not pinned down"
            )));
        }
    }
    let out = SplittingType::new(summands);
    if out.rank() != rank || out.degree() != degree {
        return Err(Error::TorsionDetected(format!(
            "recovered {out} has rank {} and degree {}, expected {rank} and {degree}",
            out.rank(),
            out.degree()
        )));
    }
    if out.profile(ks..=profile.k_end()) != *profile {
        return Err(Error::TorsionDetected(format!("{out} does not reproduce the measured profile")));
    }
    Ok(out)
}

/// Splitting type of the cokernel of an injective map, scanning
/// `k in [min b, deg - (rank - 1) min b + 2]`. Every quotient line bundle of
/// the target has degree `>= min b`, which bounds the summands on both sides.
pub fn cokernel_splitting(m: &BundleMap) -> Result<(SplittingType, DimensionProfile)> {
    let rank = m.target.rank() as i64 - m.source.rank() as i64;
    if rank < 0 {
        return Err(Error::NotInjective);
    }
    let degree = m.target.degree() - m.source.degree();
    let bmin = m.target.min_summand().unwrap_or(0);
    let kmax = degree - (rank - 1).max(0) * bmin + 1;
    let profile = twisted_section_dims(m, bmin..=kmax.max(bmin) + 1)?;
    let split = splitting_from_dims(&profile, rank as usize, degree)?;
    Ok((split, profile))
}

/// The normalized degree-2 multiplication data: rows `(a0, 1, a2)`,
/// `(alpha0, 0, alpha2)`, `(beta0, 0, beta2)` with `alpha_j` linear and
/// `beta_j` quadratic forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaData {
    pub a0: Scalar,
    pub a2: Scalar,
    pub alpha0: BinaryForm,
    pub alpha2: BinaryForm,
    pub beta0: BinaryForm,
    pub beta2: BinaryForm,
}

/// Source of the gamma map.
pub const GAMMA_SOURCE: [i64; 1] = [4];
/// Target of the gamma map, in the order `S0^2, S0S1, S1^2, S0S2, S1S2, S2^2`.
pub const GAMMA_TARGET: [i64; 6] = [4, 5, 6, 6, 7, 8];
/// `deg(det V1) + deg(tau) = 7 + 3`.
pub const RULE_OUT_THRESHOLD: i64 = 10;

impl GammaData {
    pub fn field(&self) -> Field {
        self.a0.field()
    }

    fn check(&self) -> Result<()> {
        let f = self.field();
        let forms = [(&self.alpha0, 1), (&self.alpha2, 1), (&self.beta0, 2), (&self.beta2, 2)];
        if self.a2.field() != f || forms.iter().any(|(p, _)| p.field() != f) {
            return Err(Error::FieldMismatch);
        }
        if let Some((p, d)) = forms.iter().find(|(p, d)| p.degree() != *d) {
            return Err(Error::BadBundleMap(format!("form {p} should have degree {d}")));
        }
        Ok(())
    }

    /// `a0 alpha2 + a2 alpha0`.
    pub fn c1(&self) -> BinaryForm {
        self.alpha2.scale(&self.a0).add(&self.alpha0.scale(&self.a2)).expect("degree 1")
    }

    /// `alpha0 alpha2`.
    pub fn c2(&self) -> BinaryForm {
        self.alpha0.mul(&self.alpha2)
    }

    /// `a0 beta2 + a2 beta0`.
    pub fn c3(&self) -> BinaryForm {
        self.beta2.scale(&self.a0).add(&self.beta0.scale(&self.a2)).expect("degree 2")
    }

    /// Rescales the first column by `s` and the last by `1/s`; the case
    /// tree and the gamma cokernel do not change.
    pub fn rescaled(&self, s: &Scalar) -> Result<GammaData> {
        let inv = s.inv().ok_or_else(|| Error::NotInvertible("rescaling by zero".into()))?;
        Ok(GammaData {
            a0: &self.a0 * s,
            a2: &self.a2 * &inv,
            alpha0: self.alpha0.scale(s),
            alpha2: self.alpha2.scale(&inv),
            beta0: self.beta0.scale(s),
            beta2: self.beta2.scale(&inv),
        })
    }
}

/// `O(4) -> O(4) + O(5) + O(6) + O(6) + O(7) + O(8)` with components
/// `(a0 a2 - 1, a0 alpha2 + a2 alpha0, alpha0 alpha2, a0 beta2 + a2 beta0,
/// alpha0 beta2 + alpha2 beta0, beta0 beta2)`.
pub fn gamma_components(g: &GammaData) -> Result<BundleMap> {
    g.check()?;
    let field = g.field();
    let first = BinaryForm::constant(&(&g.a0 * &g.a2) - &field.one());
    let c5 = g.alpha0.mul(&g.beta2).add(&g.alpha2.mul(&g.beta0)).expect("degree 3");
    let column = vec![first, g.c1(), g.c2(), g.c3(), c5, g.beta0.mul(&g.beta2)];
    BundleMap::new(field, GAMMA_SOURCE.to_vec(), GAMMA_TARGET.to_vec(), column.into_iter().map(|e| vec![e]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sigma2Verdict {
    Valid,
    Invalid(String),
}

impl Sigma2Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Sigma2Verdict::Valid)
    }
}

/// The reassembled matrix must have full generic rank, and its rank may drop
/// by at most one at any point of `P^1`. The 2x2 minors that can be nonzero
/// are `alpha0, alpha2, beta0, beta2` and their combinations, so a rank-one
/// point is a common zero of the last two rows.
pub fn validate_sigma2(g: &GammaData) -> Sigma2Verdict {
    if let Err(e) = g.check() {
        return Sigma2Verdict::Invalid(e.to_string());
    }
    let det = g.alpha0.mul(&g.beta2).sub(&g.alpha2.mul(&g.beta0)).expect("degree 3");
    if det.is_zero() {
        return Sigma2Verdict::Invalid("generic rank below 3: alpha0 beta2 - alpha2 beta0 vanishes".into());
    }
    match binary_gcd_all([&g.alpha0, &g.alpha2, &g.beta0, &g.beta2]) {
        Some(common) if common.degree() >= 1 => Sigma2Verdict::Invalid(format!(
            "rank drops by 2 where {common} vanishes (alpha and beta rows vanish together)"
        )),
        _ => Sigma2Verdict::Valid,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TerminalCase {
    One,
    TwoOneOne,
    TwoOneTwo,
    TwoTwoOne,
    TwoTwoTwoOne,
    TwoTwoTwoTwo,
}

impl TerminalCase {
    pub const ALL: [TerminalCase; 6] = [
        TerminalCase::One,
        TerminalCase::TwoOneOne,
        TerminalCase::TwoOneTwo,
        TerminalCase::TwoTwoOne,
        TerminalCase::TwoTwoTwoOne,
        TerminalCase::TwoTwoTwoTwo,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TerminalCase::One => "1",
            TerminalCase::TwoOneOne => "2-1-1",
            TerminalCase::TwoOneTwo => "2-1-2",
            TerminalCase::TwoTwoOne => "2-2-1",
            TerminalCase::TwoTwoTwoOne => "2-2-2-1",
            TerminalCase::TwoTwoTwoTwo => "2-2-2-2",
        }
    }

    pub fn from_name(s: &str) -> Option<TerminalCase> {
        TerminalCase::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for TerminalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A terminal case with the auxiliary data it defines: `lambda` with
/// `a0 beta2 + a2 beta0 = lambda alpha0` (cases 2-1-2 and 2-2-2-*), `a` with
/// `alpha2 = a alpha0` (2-1-2), and `c` with `lambda = c alpha0` (2-2-2-2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseLabel {
    pub case: TerminalCase,
    pub lambda: Option<BinaryForm>,
    pub a: Option<Scalar>,
    pub c: Option<Scalar>,
}

impl CaseLabel {
    fn plain(case: TerminalCase) -> Self {
        CaseLabel { case, lambda: None, a: None, c: None }
    }
}

fn divide(num: &BinaryForm, den: &BinaryForm, what: &str) -> Result<BinaryForm> {
    num.exact_div(den).ok_or_else(|| Error::Internal(format!("{what}: {den} does not divide {num}")))
}

pub fn classify(g: &GammaData) -> Result<CaseLabel> {
    g.check()?;
    let field = g.field();
    if &g.a0 * &g.a2 != field.one() {
        return Ok(CaseLabel::plain(TerminalCase::One));
    }
    let (c1, c2, c3) = (g.c1(), g.c2(), g.c3());
    if !c1.is_zero() {
        let common = binary_gcd_all([&c1, &c2, &c3]).expect("c1 nonzero");
        if common.degree() == 0 {
            return Ok(CaseLabel::plain(TerminalCase::TwoOneOne));
        }
        // alpha0 and alpha2 share their zero, so one is a multiple of the other
        let (base, other) = if g.alpha0.is_zero() { (&g.alpha2, &g.alpha0) } else { (&g.alpha0, &g.alpha2) };
        let a = divide(other, base, "2-1-2 ratio")?.coeff(0).clone();
        let lambda = divide(&c3, base, "2-1-2 lambda")?;
        return Ok(CaseLabel { case: TerminalCase::TwoOneTwo, lambda: Some(lambda), a: Some(a), c: None });
    }
    let common = if c3.is_zero() { binary_gcd(&c2, &c2)? } else { binary_gcd(&c2, &c3)? };
    if common.degree() == 0 {
        return Ok(CaseLabel::plain(TerminalCase::TwoTwoOne));
    }
    let lambda = divide(&c3, &g.alpha0, "2-2-2 lambda")?;
    let shared = if lambda.is_zero() { g.alpha0.degree() } else { binary_gcd(&g.alpha0, &lambda)?.degree() };
    if shared == 0 {
        return Ok(CaseLabel { case: TerminalCase::TwoTwoTwoOne, lambda: Some(lambda), a: None, c: None });
    }
    let c = divide(&lambda, &g.alpha0, "2-2-2-2 c")?.coeff(0).clone();
    Ok(CaseLabel { case: TerminalCase::TwoTwoTwoTwo, lambda: Some(lambda), a: None, c: Some(c) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilVerdict {
    pub case: CaseLabel,
    pub cok_gamma: SplittingType,
    pub ruled_out: bool,
}

/// Classifies `g`, computes the splitting type of `Cok gamma`, and rules the
/// pencil out when `Hom(O(10), Cok gamma) = 0`.
pub fn pencil_case_verdict(g: &GammaData) -> Result<PencilVerdict> {
    if let Sigma2Verdict::Invalid(reason) = validate_sigma2(g) {
        return Err(Error::InvalidSigma2(reason));
    }
    let case = classify(g)?;
    let (cok_gamma, _) = cokernel_splitting(&gamma_components(g)?)?;
    let ruled_out = cok_gamma.max_summand().is_none_or(|m| m < RULE_OUT_THRESHOLD);
    Ok(PencilVerdict { case, cok_gamma, ruled_out })
}

/// `h^0(nL)` in the pencil case: `1, 2, 3, 4` for `n = 0..3`, Riemann-Roch
/// from `n = 4` on, `0` for negative `n`.
pub fn pencil_h0(n: i64) -> i64 {
    match n {
        n if n < 0 => 0,
        0..=3 => n + 1,
        _ => chi_riemann_roch(n),
    }
}

/// `d_k = h^0((5n - k)L)` for `k = n ..= 5n + 1`, the section data of the
/// `n`-th direct image in the pencil case.
pub fn pencil_profile(n: i64) -> DimensionProfile {
    DimensionProfile::new(n, (n..=5 * n + 1).map(|k| pencil_h0(5 * n - k)).collect())
}

/// `(rank, degree) = (4n - 2, 7 + 12 n (n - 1))`, valid for `n >= 2`.
pub fn pencil_rank_degree(n: i64) -> (usize, i64) {
    ((4 * n - 2) as usize, 7 + 12 * n * (n - 1))
}

fn random_form<R: Rng + ?Sized>(rng: &mut R, field: Field, degree: u32, bound: i64) -> BinaryForm {
    let coeffs = (0..=degree).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect();
    BinaryForm::new(field, coeffs)
}

fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, field: Field, bound: i64) -> Scalar {
    loop {
        let c = field.from_i64(rng.gen_range(-bound..=bound));
        if !c.is_zero() {
            return c;
        }
    }
}

/// Attempts per sample before [`random_gamma_data`] gives up.
pub const SAMPLING_BUDGET: usize = 10_000;

/// Valid data over `Q` landing in `case`, built so the defining relations of
/// the case hold by construction and then filtered through
/// [`validate_sigma2`] and [`classify`].
pub fn random_gamma_data<R: Rng + ?Sized>(rng: &mut R, case: TerminalCase, bound: i64) -> Result<GammaData> {
    let field = Field::Rational;
    let one = field.one();
    for _ in 0..SAMPLING_BUDGET {
        let alpha0 = random_form(rng, field, 1, bound);
        let beta0 = random_form(rng, field, 2, bound);
        let lambda = random_form(rng, field, 1, bound);
        let g = match case {
            TerminalCase::One => {
                let a0 = random_nonzero(rng, field, bound);
                let a2 = random_nonzero(rng, field, bound);
                GammaData {
                    a0,
                    a2,
                    alpha0,
                    alpha2: random_form(rng, field, 1, bound),
                    beta0,
                    beta2: random_form(rng, field, 2, bound),
                }
            }
            TerminalCase::TwoOneOne => GammaData {
                a0: one.clone(),
                a2: one.clone(),
                alpha0,
                alpha2: random_form(rng, field, 1, bound),
                beta0,
                beta2: random_form(rng, field, 2, bound),
            },
            TerminalCase::TwoOneTwo => {
                let a = field.from_i64(rng.gen_range(-bound..=bound));
                let beta2 = lambda.mul(&alpha0).sub(&beta0).expect("degree 2");
                GammaData { a0: one.clone(), a2: one.clone(), alpha2: alpha0.scale(&a), alpha0, beta0, beta2 }
            }
            TerminalCase::TwoTwoOne => GammaData {
                a0: one.clone(),
                a2: one.clone(),
                alpha2: alpha0.neg(),
                alpha0,
                beta0,
                beta2: random_form(rng, field, 2, bound),
            },
            TerminalCase::TwoTwoTwoOne | TerminalCase::TwoTwoTwoTwo => {
                let lambda = if case == TerminalCase::TwoTwoTwoTwo {
                    alpha0.scale(&random_nonzero(rng, field, bound))
                } else {
                    lambda
                };
                let beta2 = lambda.mul(&alpha0).sub(&beta0).expect("degree 2");
                GammaData { a0: one.clone(), a2: one.clone(), alpha2: alpha0.neg(), alpha0, beta0, beta2 }
            }
        };
        let g = if case == TerminalCase::One { g } else { g.rescaled(&random_nonzero(rng, field, bound))? };
        if validate_sigma2(&g).is_valid() && classify(&g)?.case == case {
            return Ok(g);
        }
    }
    Err(Error::SamplingExhausted(SAMPLING_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64s(Field::Rational, c)
    }

    #[test]
    fn euler_sequence() {
        // O(-1) -> O + O by (T0, T1)
        let m =
            BundleMap::new(Field::Rational, vec![-1], vec![0, 0], vec![vec![q(&[0, 1])], vec![q(&[1, 0])]]).unwrap();
        let prof = twisted_section_dims(&m, -1..=2).unwrap();
        assert_eq!(prof.dims, vec![3, 2, 1, 0]);
        assert_eq!(cokernel_splitting(&m).unwrap().0, SplittingType::new(vec![1]));
    }

    #[test]
    fn coprime_pair_gives_line_bundle() {
        // O(1) -> O(2) + O(3) by (T0, T0^2 + T1^2)
        let m =
            BundleMap::new(Field::Rational, vec![1], vec![2, 3], vec![vec![q(&[0, 1])], vec![q(&[1, 0, 1])]]).unwrap();
        let (split, prof) = cokernel_splitting(&m).unwrap();
        assert_eq!(split, SplittingType::new(vec![4]));
        assert_eq!(prof, SplittingType::new(vec![4]).profile(prof.k_start..=prof.k_end()));
    }

    #[test]
    fn common_zero_leaves_torsion() {
        // (T0, T0 T1): cokernel has torsion at T0 = 0
        let m =
            BundleMap::new(Field::Rational, vec![1], vec![2, 3], vec![vec![q(&[0, 1])], vec![q(&[0, 1, 0])]]).unwrap();
        assert!(matches!(cokernel_splitting(&m), Err(Error::TorsionDetected(_))));
    }

    #[test]
    fn zero_map_is_not_injective() {
        let m = BundleMap::new(Field::Rational, vec![0], vec![1], vec![vec![q(&[0, 0])]]).unwrap();
        assert!(matches!(twisted_section_dims(&m, 0..=1), Err(Error::NotInjective)));
        let bad = BundleMap::new(Field::Rational, vec![0], vec![1], vec![vec![q(&[1])]]);
        assert!(matches!(bad, Err(Error::BadBundleMap(_))));
    }

    #[test]
    fn short_profile_reported() {
        let prof = DimensionProfile::new(3, vec![1, 0]);
        assert!(matches!(splitting_from_dims(&prof, 3, 7), Err(Error::ProfileTooShort(_))));
    }

    #[test]
    fn gamma_first_component() {
        let f = Field::Rational;
        let g = GammaData {
            a0: f.from_i64(2),
            a2: f.from_i64(3),
            alpha0: q(&[1, 0]),
            alpha2: q(&[0, 1]),
            beta0: q(&[1, 0, 0]),
            beta2: q(&[0, 0, 1]),
        };
        let m = gamma_components(&g).unwrap();
        assert_eq!(*m.entry(0, 0), BinaryForm::constant(f.from_i64(5)));
        let g2 = GammaData { a0: f.one(), a2: f.one(), ..g };
        assert!(gamma_components(&g2).unwrap().entry(0, 0).is_zero());
    }

    #[test]
    fn case_names_round_trip() {
        for c in TerminalCase::ALL {
            assert_eq!(TerminalCase::from_name(c.name()), Some(c));
        }
    }
}
