//! Command-line front end. [`run`] parses arguments, executes one verb and
//! returns the exit code together with the JSON written to standard output.
//!
//! Exit codes: 0 on success, 2 on domain errors (degenerate tensors, bad
//! hyperplanes, wrong formats), 1 on I/O, parse and usage errors.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use steiner_core::io::{
    matrix_to_strings, parse_hyperplane_arg, parse_hyperplanes, parse_tensor, tensor_to_json, tensor_value,
};
use steiner_core::steiner::{
    classify, column_normal_form, elementary_transform, is_member, logarithmic, moduli_dimension,
    nondegenerate_by_minors, schwarzenberger, sections_dim, segre_intersection, unstable_scheme, w_invariant,
    Hyperplane, SteinerBundle, WValue,
};
use steiner_core::tensor::{
    canonical_weights, hm_min_weight, hyperdet_certificate, iso_test, stabilizer_algebra, tom_thumb_check,
    BoundaryFormat, BoundaryTensor, IsoVerdict,
};
use steiner_core::zerodim::ProjectiveVerdict;
use steiner_core::{Error, Field, Fp, Rational, Zero};

/// Primes accepted by `--field fp:<prime>`.
pub const SUPPORTED_PRIMES: [u64; 5] = [2_305_843_009_213_693_951, 2_147_483_647, 1_000_000_007, 998_244_353, 32_003];

#[derive(Parser, Debug)]
#[command(name = "steiner", version, about = "Boundary-format tensors and Steiner bundles, computed exactly")]
pub struct Cli {
    /// `rational` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,

    /// Seed for every randomized step (coordinate changes, generic forms, random instances).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Tensor or bundle JSON file.
    pub input: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct Shape {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validity of a bundle: certificate and maximal-minor checks.
    Check(Input),
    /// Hyperdeterminant certificate of a tensor.
    Hyperdet(Input),
    /// The scheme of unstable hyperplanes.
    Unstable(Input),
    /// Whether a hyperplane is unstable, with `h0`.
    Member {
        input: PathBuf,
        /// Coefficients, e.g. "1,1,0".
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: String,
    },
    /// Dimension of the sections of `S(t)` in the twisted range used by the
    /// Steiner resolution.
    Sections {
        input: PathBuf,
        #[arg(long)]
        t: u32,
    },
    /// Elementary transformation at an unstable hyperplane; prints the new bundle.
    Elm {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: String,
    },
    /// Build an instance; prints a bundle (or tensor) file.
    #[command(subcommand)]
    Make(Make),
    /// Gale transform; prints the new bundle.
    Gale(Input),
    /// Infinitesimal stabilizer of a three-way tensor.
    Stab(Input),
    /// Isomorphism test between two bundles.
    Iso { input: PathBuf, other: PathBuf },
    /// The invariant `w`: length of the unstable scheme, or "infinite".
    Invariant(Input),
    /// Schwarzenberger, logarithmic or plain.
    Classify(Input),
    /// Intersection with the Segre variety and its projection.
    Segre(Input),
    /// Slice counts over admissible paths of a boundary format.
    Tomthumb {
        /// Comma-separated dimensions, e.g. "4,2,3".
        #[arg(long)]
        dims: String,
    },
    /// Canonical weights, and optionally the weight range of a tensor.
    Weights {
        #[arg(long)]
        dims: String,
        #[arg(long, default_value = "1")]
        scale: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Dimension of the moduli of bundles with `i` unstable hyperplanes.
    Modulidim {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        i: i64,
    },
    /// Basis change putting given unstable hyperplanes in the first columns.
    Normalform {
        input: PathBuf,
        #[arg(long)]
        hyperplanes: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Make {
    Schwarzenberger(Shape),
    Identity(Shape),
    Random(Shape),
    Logarithmic {
        #[arg(long)]
        hyperplanes: PathBuf,
    },
    /// Random tensor with the zero pattern of a degenerate block.
    Lem1 {
        #[arg(long)]
        dims: String,
        /// Comma-separated block sizes, one per factor after the first.
        #[arg(long)]
        beta: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e)
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

#[derive(Clone, Copy)]
enum FieldChoice {
    Rational,
    Prime(u64),
}

fn parse_field(s: &str) -> std::result::Result<FieldChoice, String> {
    if s == "rational" {
        return Ok(FieldChoice::Rational);
    }
    let p = s
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format!("unknown field {s:?}; expected rational or fp:<prime>"))?;
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(FieldChoice::Prime(p))
    } else {
        Err(format!("prime {p} is not supported; choose one of {SUPPORTED_PRIMES:?}"))
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut stderr = String::new();
    let result = match parse_field(&cli.field) {
        Err(msg) => Err(Failure::Input(msg)),
        Ok(FieldChoice::Rational) => execute::<Rational>(&cli),
        Ok(FieldChoice::Prime(p)) => {
            stderr.push_str(&format!(
                "warning: computing modulo {p}; a vanishing certificate is re-verified over the rationals\n"
            ));
            match p {
                2_305_843_009_213_693_951 => execute::<Fp<2_305_843_009_213_693_951>>(&cli),
                2_147_483_647 => execute::<Fp<2_147_483_647>>(&cli),
                1_000_000_007 => execute::<Fp<1_000_000_007>>(&cli),
                998_244_353 => execute::<Fp<998_244_353>>(&cli),
                _ => execute::<Fp<32_003>>(&cli),
            }
        }
    };
    match result {
        Ok(text) => Outcome { code: 0, stdout: text, stderr },
        Err(f) => {
            let (code, kind, message) = match f {
                Failure::Domain(e) => (2, error_kind(&e), e.to_string()),
                Failure::Input(m) => (1, "InputError", m),
            };
            stderr.push_str(&format!("error: {message}\n"));
            let body = json!({ "error": { "kind": kind, "message": message } });
            Outcome { code, stdout: format!("{body}\n"), stderr }
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotSquare { .. } => "NotSquare",
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::DependentVectors => "DependentVectors",
        Error::Singular => "Singular",
        Error::NotBoundaryFormat(_) => "NotBoundaryFormat",
        Error::ParityViolation(_) => "ParityViolation",
        Error::EnumerationGuard { .. } => "EnumerationGuard",
        Error::NotThreeWay(_) => "NotThreeWay",
        Error::DegenerateTensor => "DegenerateTensor",
        Error::NotNormalCrossing(_) => "NotNormalCrossing",
        Error::NonMemberHyperplane(_) => "NonMemberHyperplane",
        Error::ZeroHyperplane => "ZeroHyperplane",
        Error::PositiveDimensional(_) => "PositiveDimensional",
        Error::MinorSizeTooLarge { .. } => "MinorSizeTooLarge",
        Error::OutOfRange(_) => "OutOfRange",
        Error::BadPrime(_) => "BadPrime",
        Error::Parse(_) => "ParseError",
        Error::Consistency(_) => "ConsistencyFailure",
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_usizes(s: &str, what: &str) -> Res<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Input(format!("{what}: {x:?} is not a non-negative integer")))
        })
        .collect()
}

fn load_tensor<F: Field>(path: &Path) -> Res<(BoundaryTensor<F>, Option<(usize, usize)>, String)> {
    let text = read(path)?;
    let (t, params) = parse_tensor::<F>(&text).map_err(|e| with_path(e, path))?;
    Ok((t, params, text))
}

fn with_path(e: Error, path: &Path) -> Failure {
    match e {
        Error::Parse(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other.into(),
    }
}

/// Certificate of the rational lift of a file, used to confirm a vanishing
/// certificate computed modulo a prime.
fn rational_certificate(text: &str) -> Res<Rational> {
    let (t, _) = parse_tensor::<Rational>(text)?;
    Ok(hyperdet_certificate(&t)?)
}

fn load_bundle<F: Field>(path: &Path) -> Res<SteinerBundle<F>> {
    let (t, params, text) = load_tensor::<F>(path)?;
    let built = match params {
        Some((n, k)) => SteinerBundle::with_params(t, n, k),
        None => SteinerBundle::new(t),
    };
    match built {
        Err(Error::DegenerateTensor) if F::characteristic() != 0 => {
            if rational_certificate(&text)?.is_zero() {
                Err(Error::DegenerateTensor.into())
            } else {
                Err(Error::BadPrime(format!(
                    "the certificate vanishes modulo {} but not over the rationals",
                    F::characteristic()
                ))
                .into())
            }
        }
        other => Ok(other?),
    }
}

fn strings<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn bundle_text<F: Field>(s: &SteinerBundle<F>) -> String {
    tensor_to_json(s.tensor(), Some((s.n(), s.k()))) + "\n"
}

fn verdict_fields<F: Field>(verdict: &ProjectiveVerdict<F>, out: &mut Map<String, Value>) {
    match verdict {
        ProjectiveVerdict::Infinite => {
            out.insert("verdict".into(), json!("Infinite"));
            out.insert("length".into(), Value::Null);
            out.insert("points".into(), json!([]));
            out.insert("residual".into(), json!([]));
        }
        ProjectiveVerdict::Finite { length, points, residual } => {
            out.insert("verdict".into(), json!("Finite"));
            out.insert("length".into(), json!(length));
            let pts: Vec<Value> =
                points.iter().map(|p| json!({ "y": strings(&p.coords), "mult": p.multiplicity })).collect();
            out.insert("points".into(), Value::Array(pts));
            let res: Vec<Value> =
                residual.iter().map(|r| json!({ "degree": r.degree, "multiplicity": r.multiplicity })).collect();
            out.insert("residual".into(), Value::Array(res));
        }
    }
}

fn w_value(w: WValue) -> Value {
    match w {
        WValue::Finite(n) => json!(n),
        WValue::Infinite => json!("infinite"),
    }
}

fn hyperplane<F: Field>(s: &str) -> Res<Hyperplane<F>> {
    parse_hyperplane_arg::<F>(s).map_err(|e| match e {
        Error::Parse(m) => Failure::Input(format!("--hyperplane: {m}")),
        other => other.into(),
    })
}

fn check_ambient<F: Field>(s: &SteinerBundle<F>, h: &Hyperplane<F>) -> Res<()> {
    if h.ambient() != s.n() + 1 {
        return Err(Error::DimensionMismatch { expected: s.n() + 1, found: h.ambient() }.into());
    }
    Ok(())
}

fn execute<F: Field>(cli: &Cli) -> Res<String> {
    let seed = cli.seed;
    let mut out = Map::new();
    match &cli.command {
        Command::Make(m) => return make::<F>(m, seed),
        Command::Elm { input, hyperplane: h } => {
            let s = load_bundle::<F>(input)?;
            let h = hyperplane::<F>(h)?;
            check_ambient(&s, &h)?;
            return Ok(bundle_text(&elementary_transform(&s, &h)?));
        }
        Command::Gale(Input { input }) => {
            let s = load_bundle::<F>(input)?;
            let g = SteinerBundle::new(s.tensor().gale()?)?;
            return Ok(bundle_text(&g));
        }
        Command::Check(Input { input }) => {
            let (t, params, text) = load_tensor::<F>(input)?;
            let (n, k) = match params {
                Some(nk) => nk,
                None => t.format().steiner_params()?,
            };
            let mut nonzero = !hyperdet_certificate(&t)?.is_zero();
            let mut reverified = false;
            if !nonzero && F::characteristic() != 0 {
                nonzero = !rational_certificate(&text)?.is_zero();
                reverified = true;
            }
            let (minors, valid) = if reverified {
                let q = parse_tensor::<Rational>(&text)?.0;
                (nondegenerate_by_minors(&q)?, SteinerBundle::with_params(q, n, k).is_ok())
            } else {
                (nondegenerate_by_minors(&t)?, SteinerBundle::with_params(t, n, k).is_ok())
            };
            out.insert("n".into(), json!(n));
            out.insert("k".into(), json!(k));
            out.insert("certificate_nonzero".into(), json!(nonzero));
            out.insert("minors_nondegenerate".into(), json!(minors));
            out.insert("valid".into(), json!(valid));
            if reverified {
                out.insert("reverified_over_rational".into(), json!(true));
            }
        }
        Command::Hyperdet(Input { input }) => {
            let (t, _, text) = load_tensor::<F>(input)?;
            let c = hyperdet_certificate(&t)?;
            out.insert("certificate".into(), json!(c.to_string()));
            if c.is_zero() && F::characteristic() != 0 {
                let q = rational_certificate(&text)?;
                out.insert("nonzero".into(), json!(!q.is_zero()));
                out.insert("reverified_over_rational".into(), json!(true));
            } else {
                out.insert("nonzero".into(), json!(!c.is_zero()));
            }
        }
        Command::Unstable(Input { input }) => {
            let s = load_bundle::<F>(input)?;
            let scheme = unstable_scheme(&s, seed)?;
            verdict_fields(&scheme.verdict, &mut out);
            out.insert("classification".into(), json!(classify(&s, seed)?.label()));
        }
        Command::Member { input, hyperplane: h } => {
            let s = load_bundle::<F>(input)?;
            let h = hyperplane::<F>(h)?;
            check_ambient(&s, &h)?;
            let m = is_member(&s, &h)?;
            out.insert("member".into(), json!(m.member));
            out.insert("h0".into(), json!(m.h0));
        }
        Command::Sections { input, t } => {
            let s = load_bundle::<F>(input)?;
            out.insert("t".into(), json!(t));
            out.insert("dim".into(), json!(sections_dim(&s, *t)?));
        }
        Command::Stab(Input { input }) => {
            let (t, _, _) = load_tensor::<F>(input)?;
            let r = stabilizer_algebra(&t)?;
            out.insert("dimension".into(), json!(r.dimension));
            out.insert("kind".into(), serde_json::to_value(r.kind).expect("kind serializes"));
            let gens: Vec<Value> = r
                .generators
                .iter()
                .map(|g| {
                    json!({
                        "x": matrix_to_strings(&g.x),
                        "z": matrix_to_strings(&g.z),
                        "y": matrix_to_strings(&g.y),
                        "lambda": g.lambda.to_string(),
                    })
                })
                .collect();
            out.insert("generators".into(), Value::Array(gens));
            out.insert("v_eigenvalues".into(), json!(r.v_eigenvalues.as_deref().map(strings)));
        }
        Command::Iso { input, other } => {
            let a = load_bundle::<F>(input)?;
            let b = load_bundle::<F>(other)?;
            let v = iso_test(a.tensor(), b.tensor())?;
            out.insert("verdict".into(), json!(v.label()));
            match v {
                IsoVerdict::Iso { p, q } => {
                    out.insert("p".into(), json!(matrix_to_strings(&p)));
                    out.insert("q".into(), json!(matrix_to_strings(&q)));
                }
                IsoVerdict::Indeterminate { nullity } => {
                    out.insert("nullity".into(), json!(nullity));
                }
                IsoVerdict::NotIso => {}
            }
        }
        Command::Invariant(Input { input }) => {
            let s = load_bundle::<F>(input)?;
            out.insert("w".into(), w_value(w_invariant(&s, seed)?));
        }
        Command::Classify(Input { input }) => {
            let s = load_bundle::<F>(input)?;
            let c = classify(&s, seed)?;
            out.insert("classification".into(), json!(c.label()));
            out.insert("length".into(), json!(c.length()));
        }
        Command::Segre(Input { input }) => {
            let s = load_bundle::<F>(input)?;
            let z = segre_intersection(&s, seed)?;
            verdict_fields(&z.verdict, &mut out);
            let projected: Vec<Vec<String>> = z.projected.iter().map(Hyperplane::to_strings).collect();
            out.insert("projected".into(), json!(projected));
        }
        Command::Tomthumb { dims } => {
            let format = BoundaryFormat::new(&parse_usizes(dims, "--dims")?)?;
            let r = tom_thumb_check(&format)?;
            out.insert("holds".into(), json!(r.holds()));
            let Value::Object(fields) = serde_json::to_value(&r).expect("report serializes") else {
                unreachable!("struct serializes to an object")
            };
            out.extend(fields);
        }
        Command::Weights { dims, scale, input } => {
            let format = BoundaryFormat::new(&parse_usizes(dims, "--dims")?)?;
            let scale = steiner_core::field::parse_rational(scale)?;
            let w = canonical_weights(&format, &scale)?;
            out.insert("scale".into(), json!(w.scale));
            out.insert("weights".into(), json!(w.weights));
            if let Some(path) = input {
                let (t, _, _) = load_tensor::<F>(path)?;
                let range = hm_min_weight(&t, &w.weights)?;
                out.insert("weight_range".into(), json!(range.map(|(lo, hi)| [lo, hi])));
                out.insert("nonnegative".into(), json!(range.map(|(lo, _)| lo >= 0)));
            }
        }
        Command::Modulidim { n, k, i } => {
            out.insert("dimension".into(), json!(moduli_dimension(*n, *k, *i)?));
        }
        Command::Normalform { input, hyperplanes } => {
            let s = load_bundle::<F>(input)?;
            let hs = parse_hyperplanes::<F>(&read(hyperplanes)?).map_err(|e| with_path(e, hyperplanes))?;
            let nf = column_normal_form(&s, &hs)?;
            let mut t = Map::new();
            t.insert("n".into(), json!(s.n()));
            t.insert("k".into(), json!(s.k()));
            if let Value::Object(fields) = tensor_value(&nf.tensor) {
                t.extend(fields);
            }
            out.insert("tensor".into(), Value::Object(t));
            let bs: Vec<Vec<String>> = nf.b_vectors.iter().map(|b| strings(b)).collect();
            out.insert("b_vectors".into(), json!(bs));
        }
    }
    out.insert("field".into(), json!(F::field_name()));
    out.insert("seed".into(), json!(seed));
    Ok(Value::Object(out).to_string() + "\n")
}

fn make<F: Field>(m: &Make, seed: u64) -> Res<String> {
    let s = match m {
        Make::Schwarzenberger(Shape { n, k }) => schwarzenberger::<F>(*n, *k)?,
        Make::Identity(Shape { n, k }) => {
            SteinerBundle::with_params(BoundaryTensor::identity(BoundaryFormat::steiner(*n, *k)?), *n, *k)?
        }
        Make::Random(Shape { n, k }) => {
            SteinerBundle::with_params(BoundaryTensor::random(BoundaryFormat::steiner(*n, *k)?, seed), *n, *k)?
        }
        Make::Logarithmic { hyperplanes } => {
            let hs = parse_hyperplanes::<F>(&read(hyperplanes)?).map_err(|e| with_path(e, hyperplanes))?;
            logarithmic(&hs)?
        }
        Make::Lem1 { dims, beta } => {
            let format = BoundaryFormat::new(&parse_usizes(dims, "--dims")?)?;
            let t = BoundaryTensor::<F>::block_zero_pattern(format, &parse_usizes(beta, "--beta")?, seed)?;
            return Ok(tensor_to_json(&t, None) + "\n");
        }
    };
    Ok(bundle_text(&s))
}
