//! `surfkit` command dispatch. Every command prints one key-sorted JSON
//! document on stdout and a one-line summary on stderr.
//!
//! Exit codes: 0 success, 2 rejected input (parse errors, bad primes, failed
//! validation, missing files), 1 internal failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use surfkit_core::hilbert::{chi_riemann_roch, ci_hilbert_series, is_regular_sequence};
use surfkit_core::moduli::{self, VPrimeParams};
use surfkit_core::p1sheaf::{
    pencil_case_verdict, pencil_profile, pencil_rank_degree, random_gamma_data, splitting_from_dims, validate_sigma2,
    DimensionProfile, GammaData, PencilVerdict, SplittingType, TerminalCase,
};
use surfkit_core::scan::{count_points_with_jobs, enumerate_cone_singularities_with_jobs};
use surfkit_core::surface::{
    base_locus_empty, canonical_image, canonical_map_degree, normalize, validate_pair, NormalFormParams,
    NormalizationCertificate, SurfacePair,
};
use surfkit_core::wring::{binary_gcd, binary_resultant, restrict_to_y_line};
use surfkit_core::{Error, Field, Scalar};

/// Largest `--max-degree` accepted by `hilbert`.
pub const MAX_HILBERT_DEGREE: usize = 10_000;
/// Coefficient bound for `random-surface`.
pub const RANDOM_SURFACE_BOUND: i64 = 3;
/// Default number of draws `random-surface` tries before giving up.
pub const RANDOM_SURFACE_TRIES: usize = 200;
/// Coefficient bound for sampled gamma data.
pub const GAMMA_BOUND: i64 = 5;

#[derive(Parser, Debug)]
#[command(name = "surfkit", version, about = "Exact computations for (6,10) complete intersections in P(1,2,2,3,5)")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert series coefficients of the complete intersection.
    Hilbert {
        #[arg(long)]
        max_degree: usize,
    },
    /// Shape checks and the regular-sequence test.
    Validate(PairArgs),
    /// Reduce a pair to normal form and print the certificate.
    Normalize(PairArgs),
    /// Resultant test on the Y0Y1-line.
    BaseLocus(PairArgs),
    /// Image of the canonical map in P^3 with its membership certificate.
    CanonicalImage(PairArgs),
    /// Degree of the canonical map and of its image.
    MapDegree(PairArgs),
    /// Singular points of the affine cone over F_p.
    SmoothScan {
        #[command(flatten)]
        pair: PairArgs,
        /// One or more primes; several primes are reported side by side.
        #[arg(short = 'p', long = "prime", required = true, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Omit `elapsed_ms`, making the report byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Number of F_p-points of the surface.
    CountPoints {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short = 'p', long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Sample gamma data across the six terminal cases and rule out each pencil.
    RuleOutPencil {
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Cokernel splitting for one terminal case, or `V<n>` for the pencil direct images.
    Splitting {
        #[arg(long = "case")]
        case: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parameter counts of the normal form and of the 34-parameter family.
    ModuliCounts,
    /// Orbit of a 34-parameter point under the 108-element finite group.
    Orbit {
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(short = 'p', long)]
        prime: u64,
    },
    /// Seeded random pair in normal form passing all validity checks.
    RandomSurface {
        #[arg(long)]
        seed: u64,
        #[arg(short = 'p', long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = RANDOM_SURFACE_TRIES)]
        max_tries: usize,
        /// Also write the pair in input-file format.
        #[arg(long)]
        pair_file: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
pub struct PairArgs {
    #[arg(short = 'i', long)]
    pub input: PathBuf,
}

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum Failure {
    Rejected(Value),
    Internal(Value),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Rejected(_) => 2,
            Failure::Internal(_) => 1,
        }
    }

    fn report(&self) -> &Value {
        match self {
            Failure::Rejected(v) | Failure::Internal(v) => v,
        }
    }

    fn rejected(kind: &str, message: impl Into<String>) -> Self {
        Failure::Rejected(json!({"error": kind, "message": message.into()}))
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::FieldMismatch => "field_mismatch",
        Error::BadPrime(_) => "bad_prime",
        Error::NotInvertible(_) => "not_invertible",
        Error::Parse { .. } => "parse",
        Error::NotHomogeneous { .. } => "not_homogeneous",
        Error::NotGraded(_) => "not_graded",
        Error::DegreeOutOfRange { .. } => "degree_out_of_range",
        Error::NotInjective => "not_injective",
        Error::BadBundleMap(_) => "bad_bundle_map",
        Error::TorsionDetected(_) => "torsion_detected",
        Error::ProfileTooShort(_) => "profile_too_short",
        Error::InvalidSigma2(_) => "invalid_sigma2",
        Error::Validation(_) => "validation",
        Error::Characteristic2 => "characteristic_2",
        Error::NoCubeRoot(_) => "no_cube_root",
        Error::LeftVPrime(_) => "left_vprime",
        Error::SamplingExhausted(_) => "sampling_exhausted",
        Error::Internal(_) => "internal",
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut report = json!({"error": error_kind(&e), "message": e.to_string()});
        if let Error::Parse { pos, .. } = &e {
            report["position"] = json!(pos);
        }
        match e {
            Error::Parse { .. }
            | Error::BadPrime(_)
            | Error::NotInvertible(_)
            | Error::NotHomogeneous { .. }
            | Error::DegreeOutOfRange { .. }
            | Error::Validation(_)
            | Error::InvalidSigma2(_)
            | Error::NoCubeRoot(_)
            | Error::Characteristic2
            | Error::FieldMismatch => Failure::Rejected(report),
            _ => Failure::Internal(report),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Parses `argv` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let (report, code) = match dispatch(&cli.command) {
        Ok(v) => (v, 0),
        Err(f) => (f.report().clone(), f.exit_code()),
    };
    let text = serde_json::to_string_pretty(&report).expect("JSON values serialize") + "\n";
    let _ = writeln!(err, "{}", summary(&cli.command, &report, code));
    match &cli.output {
        Some(path) if code == 0 => {
            if let Err(e) = fs::write(path, &text) {
                let _ = writeln!(err, "cannot write {}: {e}", path.display());
                return 2;
            }
        }
        _ => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}

fn summary(cmd: &Command, report: &Value, code: i32) -> String {
    let name = command_name(cmd);
    match code {
        0 => format!("{name}: ok"),
        _ => format!(
            "{name}: {} ({})",
            report["message"].as_str().unwrap_or("failed"),
            report["error"].as_str().unwrap_or("error")
        ),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Hilbert { .. } => "hilbert",
        Command::Validate(_) => "validate",
        Command::Normalize(_) => "normalize",
        Command::BaseLocus(_) => "base-locus",
        Command::CanonicalImage(_) => "canonical-image",
        Command::MapDegree(_) => "map-degree",
        Command::SmoothScan { .. } => "smooth-scan",
        Command::CountPoints { .. } => "count-points",
        Command::RuleOutPencil { .. } => "rule-out-pencil",
        Command::Splitting { .. } => "splitting",
        Command::ModuliCounts => "moduli-counts",
        Command::Orbit { .. } => "orbit",
        Command::RandomSurface { .. } => "random-surface",
    }
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Hilbert { max_degree } => hilbert(*max_degree),
        Command::Validate(a) => validate(&read_pair(&a.input)?),
        Command::Normalize(a) => normalize_cmd(&read_valid_pair(&a.input)?),
        Command::BaseLocus(a) => base_locus(&read_valid_pair(&a.input)?),
        Command::CanonicalImage(a) => canonical(&read_valid_pair(&a.input)?),
        Command::MapDegree(a) => map_degree(&read_valid_pair(&a.input)?),
        Command::SmoothScan { pair, primes, jobs, no_timing } => {
            smooth_scan(&read_valid_pair(&pair.input)?, primes, *jobs, !*no_timing)
        }
        Command::CountPoints { pair, prime, jobs } => {
            let c = count_points_with_jobs(&read_valid_pair(&pair.input)?, *prime, *jobs)?;
            Ok(json!({
                "prime": c.prime,
                "points": c.orbits,
                "cone_points": c.cone_points,
                "orbit_size_sum": c.orbit_size_sum,
            }))
        }
        Command::RuleOutPencil { samples, seed } => rule_out_pencil(*samples, *seed),
        Command::Splitting { case, seed } => splitting(case, *seed),
        Command::ModuliCounts => {
            let c = moduli::param_counts();
            Ok(json!({"full": c.full, "vprime": c.vprime, "finite_group": c.finite_group}))
        }
        Command::Orbit { input, prime } => orbit(input, *prime),
        Command::RandomSurface { seed, prime, max_tries, pair_file } => {
            let s = random_surface(*seed, *prime, *max_tries)?;
            if let Some(path) = pair_file {
                fs::write(path, s.pair.to_string())
                    .map_err(|e| Failure::rejected("io", format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(s.to_json())
        }
    }
}

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::rejected("missing_input", format!("cannot read {}: {e}", path.display())))
}

fn read_pair(path: &Path) -> std::result::Result<SurfacePair, Failure> {
    Ok(SurfacePair::parse(&read_text(path)?, Field::Rational)?)
}

fn read_valid_pair(path: &Path) -> std::result::Result<SurfacePair, Failure> {
    let pair = read_pair(path)?;
    if let Some(reason) = validate_pair(&pair).failure_reason() {
        return Err(Error::Validation(reason).into());
    }
    Ok(pair)
}

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|c| json!(c.to_string())).collect())
}

fn hilbert(max_degree: usize) -> Outcome {
    if max_degree > MAX_HILBERT_DEGREE {
        return Err(Error::DegreeOutOfRange { n: max_degree as u32, bound: MAX_HILBERT_DEGREE as u32 }.into());
    }
    let h = ci_hilbert_series(max_degree);
    Ok(json!({
        "max_degree": max_degree,
        "weights": h.weights,
        "relation_degrees": h.relation_degrees,
        "coefficients": h.coefficients,
        "riemann_roch": (0..=max_degree as i64).map(chi_riemann_roch).collect::<Vec<_>>(),
        "riemann_roch_match": h.gorenstein_symmetric(),
    }))
}

fn validate(pair: &SurfacePair) -> Outcome {
    let shape = validate_pair(pair);
    let regular = if shape.passed() { Some(is_regular_sequence(pair)?) } else { None };
    let mut report = json!({
        "z0sq_nonzero": shape.z0sq_nonzero,
        "u0sq_nonzero": shape.u0sq_nonzero,
        "degrees_ok": shape.degrees_ok,
        "regular_sequence": regular,
        "valid": shape.passed() && regular == Some(true),
    });
    let reason =
        shape.failure_reason().or_else(|| (regular == Some(false)).then(|| "f6, g10 is not a regular sequence".into()));
    match reason {
        None => Ok(report),
        Some(r) => {
            report["error"] = json!("validation");
            report["message"] = json!(r);
            Err(Failure::Rejected(report))
        }
    }
}

fn normal_form_json(nf: &NormalFormParams) -> Value {
    json!({
        "alpha0": nf.alpha0.to_string(),
        "alpha3": scalars(&nf.alpha3),
        "beta3": scalars(&nf.beta3),
        "beta5": scalars(&nf.beta5),
    })
}

fn certificate_json(c: &NormalizationCertificate) -> Value {
    const NAMES: [&str; 5] = ["X0", "Y0", "Y1", "Z0", "U0"];
    let images: serde_json::Map<String, Value> =
        NAMES.iter().zip(c.substitution.images()).map(|(n, p)| (n.to_string(), json!(p.to_string()))).collect();
    json!({"substitution": images, "u": c.u.to_string(), "v": c.v.to_string(), "h": c.h.to_string()})
}

fn normalize_cmd(pair: &SurfacePair) -> Outcome {
    let (nf, cert) = normalize(pair)?;
    let out = nf.expand();
    Ok(json!({
        "normal_form": normal_form_json(&nf),
        "f6": out.f6.to_string(),
        "g10": out.g10.to_string(),
        "certificate": certificate_json(&cert),
        "verified": cert.verify(pair, &out)?,
    }))
}

fn base_locus(pair: &SurfacePair) -> Outcome {
    let f = restrict_to_y_line(&pair.f6, 6);
    let g = restrict_to_y_line(&pair.g10, 10);
    let common = binary_gcd(&f, &g)?;
    Ok(json!({
        "base_locus_empty": base_locus_empty(pair)?,
        "f6_on_line": f.to_string(),
        "g10_on_line": g.to_string(),
        "resultant": binary_resultant(&f, &g)?.to_string(),
        "common_factor": common.to_string(),
    }))
}

fn canonical(pair: &SurfacePair) -> Outcome {
    let (nf, _) = normalize(pair)?;
    let image = canonical_image(&nf);
    let (map_deg, image_deg) = canonical_map_degree(&nf);
    Ok(json!({
        "hypersurface": image.poly.to_string(),
        "degree": image.degree,
        "f6_cofactor": image.f6_cofactor.to_string(),
        "g10_cofactor": image.g10_cofactor.to_string(),
        "verified": image.verify(&nf.expand()),
        "map_degree": map_deg,
        "image_degree": image_deg,
    }))
}

fn map_degree(pair: &SurfacePair) -> Outcome {
    let (nf, _) = normalize(pair)?;
    let (map_deg, image_deg) = canonical_map_degree(&nf);
    Ok(json!({"alpha0_zero": nf.alpha0.is_zero(), "map_degree": map_deg, "image_degree": image_deg}))
}

fn smooth_scan(pair: &SurfacePair, primes: &[u64], jobs: usize, timing: bool) -> Outcome {
    let mut reports = Vec::new();
    for &p in primes {
        let start = Instant::now();
        let r = enumerate_cone_singularities_with_jobs(pair, p, jobs)?;
        let mut v = json!({"prime": r.prime, "scanned": r.scanned, "singular_points": r.singular_points});
        if timing {
            v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        reports.push(v);
    }
    if let [single] = &reports[..] {
        return Ok(single.clone());
    }
    let singular_everywhere = reports.iter().all(|r| !r["singular_points"].as_array().expect("array").is_empty());
    Ok(json!({
        "scans": reports,
        "singular_counts": reports.iter().map(|r| r["singular_points"].as_array().expect("array").len()).collect::<Vec<_>>(),
        "likely_singular_over_q": singular_everywhere,
    }))
}

fn splitting_json(s: &SplittingType) -> Value {
    json!(s.summands())
}

fn verdict_json(g: &GammaData, v: &PencilVerdict) -> Value {
    json!({
        "case": v.case.case.name(),
        "cok_gamma": splitting_json(&v.cok_gamma),
        "max_summand": v.cok_gamma.max_summand(),
        "ruled_out": v.ruled_out,
        "gamma": {
            "a0": g.a0.to_string(),
            "a2": g.a2.to_string(),
            "alpha0": g.alpha0.to_string(),
            "alpha2": g.alpha2.to_string(),
            "beta0": g.beta0.to_string(),
            "beta2": g.beta2.to_string(),
        },
    })
}

fn sample_verdict(rng: &mut ChaCha8Rng, case: TerminalCase) -> Outcome {
    let g = random_gamma_data(rng, case, GAMMA_BOUND)?;
    if let Some(reason) = match validate_sigma2(&g) {
        surfkit_core::p1sheaf::Sigma2Verdict::Valid => None,
        surfkit_core::p1sheaf::Sigma2Verdict::Invalid(r) => Some(r),
    } {
        return Err(Error::Internal(format!("sampler produced invalid data: {reason}")).into());
    }
    let v = pencil_case_verdict(&g)?;
    Ok(verdict_json(&g, &v))
}

fn rule_out_pencil(samples: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..samples)
        .map(|i| sample_verdict(&mut rng, TerminalCase::ALL[i % TerminalCase::ALL.len()]))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let all = entries.iter().all(|e| e["ruled_out"] == json!(true));
    Ok(json!({"samples": samples, "seed": seed, "entries": entries, "all_ruled_out": all}))
}

fn profile_json(p: &DimensionProfile) -> Value {
    json!({"k_start": p.k_start, "dims": p.dims})
}

fn splitting(case: &str, seed: u64) -> Outcome {
    if let Some(n) = case.strip_prefix('V').and_then(|n| n.parse::<i64>().ok()).filter(|&n| n >= 1) {
        let profile = pencil_profile(n);
        // the closed form for rank and degree starts at n = 2
        let (rank, degree) = if n == 1 { (3, 7) } else { pencil_rank_degree(n) };
        let s = splitting_from_dims(&profile, rank, degree)?;
        return Ok(json!({
            "case": case,
            "rank": s.rank(),
            "degree": s.degree(),
            "splitting": splitting_json(&s),
            "profile": profile_json(&profile),
        }));
    }
    let tc = TerminalCase::from_name(case).ok_or_else(|| {
        Failure::rejected(
            "unknown_case",
            format!("unknown case '{case}'; expected one of 1, 2-1-1, 2-1-2, 2-2-1, 2-2-2-1, 2-2-2-2 or V<n>"),
        )
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = sample_verdict(&mut rng, tc)?;
    report["seed"] = json!(seed);
    Ok(report)
}

fn orbit(input: &Path, prime: u64) -> Outcome {
    let field = Field::prime(prime)?;
    let raw: Value = serde_json::from_str(&read_text(input)?)
        .map_err(|e| Failure::rejected("parse", format!("{}: {e}", input.display())))?;
    let coeffs = raw
        .as_array()
        .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Failure::rejected("parse", "expected a JSON array of integers"))?;
    let v = VPrimeParams::from_vec(coeffs.into_iter().map(|c| field.from_i64(c)).collect())?;
    let members = moduli::orbit(&v)?;
    let size = members.len();
    let finite_group = moduli::param_counts().finite_group;
    let to_residues =
        |w: &VPrimeParams| w.to_vec().iter().map(|c| c.residue().expect("prime field")).collect::<Vec<_>>();
    let mut listed: Vec<Vec<u64>> = members.iter().map(to_residues).collect();
    listed.sort();
    Ok(json!({
        "prime": prime,
        "point": to_residues(&v),
        "orbit_size": size,
        "divides_group_order": finite_group.is_multiple_of(size),
        "distinct_transformations": moduli::distinct_finite_transformations(field)?,
        "orbit": listed,
    }))
}

/// A pair drawn by [`random_surface`] with its validity flags.
#[derive(Clone, Debug)]
pub struct RandomSurface {
    pub seed: u64,
    pub prime: Option<u64>,
    pub attempts: usize,
    pub params: NormalFormParams,
    pub pair: SurfacePair,
    pub valid: bool,
    pub base_locus_empty: bool,
    pub regular_sequence: bool,
}

impl RandomSurface {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "prime": self.prime,
            "attempts": self.attempts,
            "normal_form": normal_form_json(&self.params),
            "f6": self.pair.f6.to_string(),
            "g10": self.pair.g10.to_string(),
            "valid": self.valid,
            "base_locus_empty": self.base_locus_empty,
            "regular_sequence": self.regular_sequence,
        })
    }
}

/// Normal-form parameters with integer coefficients in
/// `[-RANDOM_SURFACE_BOUND, RANDOM_SURFACE_BOUND]`, redrawn until the pair is
/// valid, has empty base locus and is a regular sequence. With `prime`, the
/// draws are over `Q` and the accepted pair is reduced mod `prime` and must
/// pass the same checks there.
pub fn random_surface(seed: u64, prime: Option<u64>, max_tries: usize) -> surfkit_core::Result<RandomSurface> {
    let target = prime.map(Field::prime).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_tries {
        let params = NormalFormParams::random(&mut rng, Field::Rational, RANDOM_SURFACE_BOUND);
        let mut pair = params.expand();
        let mut params = params;
        if let Some(field) = target {
            pair = pair.reduce(field)?;
            params = NormalFormParams::from_normal_pair(&pair)
                .ok_or_else(|| Error::Internal("reduction left normal form".into()))?;
        }
        let valid = validate_pair(&pair).passed();
        if !valid || !base_locus_empty(&pair)? || !is_regular_sequence(&pair)? {
            continue;
        }
        return Ok(RandomSurface {
            seed,
            prime,
            attempts: attempt,
            params,
            pair,
            valid,
            base_locus_empty: true,
            regular_sequence: true,
        });
    }
    Err(Error::SamplingExhausted(max_tries))
}
