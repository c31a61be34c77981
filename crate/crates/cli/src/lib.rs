//! The `ski` command line.
//!
//! [`run`] parses arguments, dispatches, and returns the exit code and
//! both output streams so that tests can drive it without a process.
//! Exit codes: 0 success, 1 domain error, 2 parse error.

pub mod formats;

use std::fmt::{self, Write as _};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use ski_core::error::Error;
use ski_core::exact::{cone_parameter, validate_holonomy, HolonomyParam, Rational};
use ski_core::floer::{
    check_splitting_identity, euler_characteristic, h_invariant, homology, lefschetz, reduced_homology, validate,
    CobordismEndomorphism, GradedComplex,
};
use ski_core::invariants::{
    mapping_torus_lambda, moduli_dimension, moduli_energy, product_case, zero_dim_series, DonaldsonSeries,
    GeometricHypotheses, MappingTorusInput, ModuliSpec,
};
use ski_core::knotcore::{
    admissible, alexander_polynomial, clh_invariant, levine_tristram_signature, refine_jump, signature_jumps,
    AmbientSphere, SeifertKnot,
};
use ski_core::novikov::{eval_expression, ParseError};
use ski_core::su2oracle::{enumerate_meridian_trace_solutions, herald_consistency, TorusKnotGroup};

use formats::{parse_complex, parse_counts, parse_fraction, parse_knot, parse_pair};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input: exit code 2.
    Parse(String),
    /// Well-formed input outside the domain: exit code 1.
    Domain { code: &'static str, message: String },
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }

    pub fn domain(e: Error) -> Self {
        let code = match &e {
            Error::HolonomyOutOfRange(_) => "holonomy-out-of-range",
            Error::NotCoprime(..) => "not-coprime",
            Error::InvalidSeifert(_) => "invalid-seifert",
            Error::Inadmissible(_) => "inadmissible",
            Error::ZeroElement => "zero-element",
            Error::FloorExhausted(_) => "floor-exhausted",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::Tangency { .. } => "tangency",
            Error::NegativeEnergy { .. } => "negative-energy",
            Error::Domain(_) => "domain",
        };
        CliError::Domain {
            code,
            message: e.to_string(),
        }
    }

    fn failed(code: &'static str, message: impl Into<String>) -> Self {
        CliError::Domain {
            code,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub(crate) fn with_context(self, ctx: String) -> Self {
        match self {
            CliError::Parse(m) => CliError::Parse(format!("{ctx}: {m}")),
            CliError::Domain { code, message } => CliError::Domain {
                code,
                message: format!("{ctx}: {message}"),
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "error[parse]: {m}"),
            CliError::Domain { code, message } => write!(f, "error[{code}]: {}", message.replace('\n', "; ")),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ski", version, about = "Exact knot signatures, Casson-Lin-Herald counts and Novikov-field Floer algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Seifert-matrix invariants.
    #[command(subcommand)]
    Knot(KnotCmd),
    /// lambda_CLH = 4 casson + sigma/2.
    Clh(ClhArgs),
    /// SU(2) representation counts for torus knots.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Furuta-Ohta invariants of product and mapping-torus pairs.
    #[command(subcommand)]
    Fo(FoCmd),
    /// Moduli-space dimension, energy and zero-dimensional series.
    #[command(subcommand)]
    Moduli(ModuliCmd),
    /// Graded complexes over the Novikov field.
    Floer(FloerArgs),
    /// Novikov-field arithmetic.
    #[command(subcommand)]
    Novikov(NovikovCmd),
    /// Minimal cone parameter nu with 2 alpha nu an integer.
    Cone {
        #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
        alpha: Rational,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Depth {
    /// Inversion depth for Novikov series.
    #[arg(long, env = "SKI_DEPTH", default_value_t = 10)]
    depth: u32,
}

#[derive(Args, Debug)]
struct AlphaArg {
    /// Holonomy parameter p/q in (0, 1/2).
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    alpha: Rational,
}

#[derive(Subcommand, Debug)]
enum KnotCmd {
    /// Alexander polynomial.
    Alex { file: PathBuf },
    /// Levine-Tristram signature at exp(-4 pi i alpha).
    Sig {
        file: PathBuf,
        #[command(flatten)]
        alpha: AlphaArg,
    },
    /// Whether the Alexander polynomial is nonzero at exp(-4 pi i alpha).
    Admissible {
        file: PathBuf,
        #[command(flatten)]
        alpha: AlphaArg,
    },
    /// Certified intervals containing each jump of the signature.
    Jumps {
        file: PathBuf,
        /// Refine each interval to at most this width.
        #[arg(long, value_parser = parse_fraction)]
        width: Option<Rational>,
    },
}

#[derive(Args, Debug)]
struct ClhArgs {
    file: PathBuf,
    #[command(flatten)]
    alpha: AlphaArg,
    /// Casson invariant of the ambient homology sphere.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    casson: i64,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Torus knot parameters a,b.
    #[arg(long, value_parser = parse_pair)]
    torus: (i64, i64),
    #[command(flatten)]
    alpha: AlphaArg,
    /// Samples per representation arc.
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Number of irreducible representations with the prescribed meridian trace.
    Count(OracleArgs),
    /// Compare the count with |lambda_CLH|.
    Herald(OracleArgs),
}

#[derive(Subcommand, Debug)]
enum FoCmd {
    /// Product of a circle with (Y, K).
    Product(ClhArgs),
    /// Mapping torus of a finite-order map of a branched cover.
    MappingTorus {
        file: PathBuf,
        #[arg(long = "alpha-prime", value_parser = parse_fraction, allow_hyphen_values = true)]
        alpha_prime: Rational,
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        casson: i64,
        /// Vouch that the branched cover is a homology sphere and the
        /// involution is nondegenerate.
        #[arg(long)]
        assert_geometry: bool,
    },
}

#[derive(Args, Debug)]
struct ModuliArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    l: i64,
    #[arg(long, value_parser = parse_fraction, allow_hyphen_values = true)]
    alpha: Rational,
    #[arg(long, default_value_t = 0)]
    b2plus: u32,
    #[arg(long, default_value_t = 1)]
    b1: u32,
    #[arg(long, default_value_t = 1)]
    genus: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    selfint: i64,
}

impl ModuliArgs {
    fn spec(&self) -> ModuliSpec {
        ModuliSpec {
            k: self.k,
            l: self.l,
            alpha: self.alpha.clone(),
            b2plus: self.b2plus,
            b1: self.b1,
            genus: self.genus,
            self_intersection: self.selfint,
        }
    }
}

#[derive(Subcommand, Debug)]
enum ModuliCmd {
    Dim(ModuliArgs),
    Energy(ModuliArgs),
    /// Sum of D0(k) T^(-k(1-4 alpha)).
    Series {
        #[arg(long, value_parser = parse_fraction)]
        alpha: Rational,
        /// Counts as k1=v1,k2=v2,...
        #[arg(long, allow_hyphen_values = true)]
        d0: String,
    },
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
enum FloerOp {
    Validate,
    Homology,
    Reduced,
    H,
    Lefschetz,
    SplittingCheck,
}

#[derive(Args, Debug)]
struct FloerArgs {
    #[arg(value_enum)]
    op: FloerOp,
    file: PathBuf,
    #[command(flatten)]
    depth: Depth,
}

#[derive(Subcommand, Debug)]
enum NovikovCmd {
    /// Evaluate an expression in T.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        depth: Depth,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => {
                    let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                    Outcome {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!("error[parse]: {first}\n"),
                    }
                }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(()) => Outcome {
            code: 0,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("{e}\n"),
        },
    }
}

type Res = Result<(), CliError>;

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn knot_from(path: &PathBuf) -> Result<SeifertKnot, CliError> {
    parse_knot(&read(path)?).map_err(|e| e.with_context(path.display().to_string()))
}

fn holonomy(a: &AlphaArg) -> Result<HolonomyParam, CliError> {
    Ok(validate_holonomy(&a.alpha)?)
}

fn dispatch(cmd: Command, out: &mut String) -> Res {
    match cmd {
        Command::Cone { alpha } => {
            if !alpha.is_positive() {
                return Err(CliError::domain(Error::Domain(format!("alpha = {alpha} must be positive"))));
            }
            let _ = writeln!(out, "nu = {}", cone_parameter(&alpha));
            Ok(())
        }
        Command::Knot(k) => knot(k, out),
        Command::Clh(a) => {
            let knot = knot_from(&a.file)?;
            let h = holonomy(&a.alpha)?;
            let sigma = levine_tristram_signature(&knot, &h)?;
            let clh = clh_invariant(&AmbientSphere::with_casson(a.casson), &knot, &h)?;
            let _ = writeln!(out, "sigma = {sigma}");
            let _ = writeln!(out, "lambda_CLH = {clh}");
            Ok(())
        }
        Command::Oracle(o) => oracle(o, out),
        Command::Fo(f) => fo(f, out),
        Command::Moduli(m) => moduli(m, out),
        Command::Floer(f) => floer(f, out),
        Command::Novikov(NovikovCmd::Eval { expr, depth }) => {
            let x = eval_expression(&expr, depth.depth).map_err(|e| match e {
                ParseError::Syntax { .. } => CliError::parse(e.to_string()),
                ParseError::Domain(d) => CliError::domain(d),
            })?;
            let _ = writeln!(out, "{x}");
            Ok(())
        }
    }
}

fn knot(cmd: KnotCmd, out: &mut String) -> Res {
    match cmd {
        KnotCmd::Alex { file } => {
            let k = knot_from(&file)?;
            let d = alexander_polynomial(&k);
            let _ = writeln!(out, "alexander = {d}");
        }
        KnotCmd::Sig { file, alpha } => {
            let k = knot_from(&file)?;
            let h = holonomy(&alpha)?;
            let _ = writeln!(out, "sigma = {}", levine_tristram_signature(&k, &h)?);
        }
        KnotCmd::Admissible { file, alpha } => {
            let k = knot_from(&file)?;
            let h = holonomy(&alpha)?;
            let _ = writeln!(out, "admissible = {}", admissible(&k, &h));
        }
        KnotCmd::Jumps { file, width } => {
            let k = knot_from(&file)?;
            let jumps = signature_jumps(&k)?;
            let _ = writeln!(out, "jumps = {}", jumps.len());
            for j in jumps {
                let j = match &width {
                    Some(w) => refine_jump(&k, &j, w)?,
                    None => j,
                };
                let _ = write!(out, "jump in ({}, {}) multiplicity {}", j.lo, j.hi, j.multiplicity);
                if let Some(a) = &j.exact {
                    let _ = write!(out, " at alpha = {a}");
                }
                out.push('\n');
            }
        }
    }
    Ok(())
}

fn oracle(cmd: OracleCmd, out: &mut String) -> Res {
    let (herald, args) = match cmd {
        OracleCmd::Count(a) => (false, a),
        OracleCmd::Herald(a) => (true, a),
    };
    let h = holonomy(&args.alpha)?;
    let (a, b) = args.torus;
    let mut work = || -> Res {
        if herald {
            let r = herald_consistency(a, b, &h, args.grid)?;
            let _ = writeln!(out, "oracle = {}", r.oracle_count);
            let _ = writeln!(out, "lambda_CLH = {}", r.clh);
            let _ = writeln!(out, "pass = {}", r.pass);
            if !r.pass {
                return Err(CliError::failed("oracle-mismatch", "oracle count differs from |lambda_CLH|"));
            }
        } else {
            let g = TorusKnotGroup::new(a, b)?;
            let e = enumerate_meridian_trace_solutions(&g, &h, args.grid)?;
            let _ = writeln!(out, "count = {}", e.count);
        }
        Ok(())
    };
    match args.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CliError::failed("domain", e.to_string()))?
            .install(work),
        None => work(),
    }
}

fn fo(cmd: FoCmd, out: &mut String) -> Res {
    match cmd {
        FoCmd::Product(a) => {
            let knot = knot_from(&a.file)?;
            let h = holonomy(&a.alpha)?;
            let (lambda, series) = product_case(&AmbientSphere::with_casson(a.casson), &knot, &h)?;
            let _ = writeln!(out, "lambda_FO = {lambda}");
            for (k, v) in &series.coefficients {
                let _ = writeln!(out, "D0({k}) = {v}");
            }
            let _ = writeln!(out, "series = {}", zero_dim_series(&series)?);
        }
        FoCmd::MappingTorus {
            file,
            alpha_prime,
            p,
            casson,
            assert_geometry,
        } => {
            let knot = knot_from(&file)?;
            let input = MappingTorusInput {
                p,
                alpha_prime,
                base_casson: casson,
                base_knot: knot,
            };
            let hyp = GeometricHypotheses {
                branched_cover_is_homology_sphere: assert_geometry,
                tau_nondegenerate: assert_geometry,
            };
            let r = mapping_torus_lambda(&input, hyp)?;
            let (p, q, rr) = r.pqr;
            let _ = writeln!(out, "p = {p}, q = {q}, r = {rr}");
            let _ = writeln!(out, "geometry = asserted by caller");
            let _ = writeln!(out, "j  alpha_j  representative  admissible  sigma");
            for l in &r.lifts {
                let _ = writeln!(
                    out,
                    "{}  {}  {}  {}  {}",
                    l.j,
                    l.alpha,
                    l.representative,
                    l.admissible,
                    l.signature.map_or("-".into(), |s| s.to_string())
                );
            }
            let _ = writeln!(out, "casson_term = {}", r.casson_term);
            let _ = writeln!(out, "lambda_FO = {}", r.lambda_fo);
        }
    }
    Ok(())
}

fn moduli(cmd: ModuliCmd, out: &mut String) -> Res {
    match cmd {
        ModuliCmd::Dim(a) => {
            let _ = writeln!(out, "dimension = {}", moduli_dimension(&a.spec()));
        }
        ModuliCmd::Energy(a) => {
            let _ = writeln!(out, "energy = {}", moduli_energy(&a.spec()));
            let _ = writeln!(out, "units = k + 2*alpha*l - alpha^2*S.S");
        }
        ModuliCmd::Series { alpha, d0 } => {
            let coefficients = parse_counts(&d0).map_err(CliError::Parse)?.into_iter().collect();
            let s = DonaldsonSeries { alpha, coefficients };
            let _ = writeln!(out, "series = {}", zero_dim_series(&s)?);
        }
    }
    Ok(())
}

fn load_complex(args: &FloerArgs) -> Result<(GradedComplex, Option<CobordismEndomorphism>), CliError> {
    let src = read(&args.file)?;
    parse_complex(&src, args.depth.depth).map_err(|e| e.with_context(args.file.display().to_string()))
}

fn floer(args: FloerArgs, out: &mut String) -> Res {
    let (c, m) = load_complex(&args)?;
    let report = validate(&c);
    if let FloerOp::Validate = args.op {
        let _ = writeln!(out, "{report}");
        if !report.passed() {
            return Err(CliError::failed("invalid-complex", "the complex fails the identities listed above"));
        }
        return Ok(());
    }
    if !report.passed() {
        let first = report.failures().next().map(|f| f.identity.clone()).unwrap_or_default();
        return Err(CliError::failed("invalid-complex", format!("identity '{first}' fails; run 'floer validate'")));
    }
    let depth = args.depth.depth;
    let m = m.unwrap_or_else(|| CobordismEndomorphism::identity(c.ranks));
    let dims = |d: [usize; 4]| format!("{} {} {} {}", d[0], d[1], d[2], d[3]);
    match args.op {
        FloerOp::Validate => unreachable!(),
        FloerOp::Homology => {
            let h = homology(&c)?;
            let _ = writeln!(out, "dims = {}", dims(h.dims));
            let _ = writeln!(out, "euler = {}", euler_characteristic(&h));
        }
        FloerOp::Reduced => {
            let h = reduced_homology(&c)?;
            let _ = writeln!(out, "dims = {}", dims(h.dims));
            let _ = writeln!(out, "euler = {}", euler_characteristic(&h));
        }
        FloerOp::H => {
            let _ = writeln!(out, "h = {}", h_invariant(&c)?);
        }
        FloerOp::Lefschetz => {
            let _ = writeln!(out, "lefschetz = {}", lefschetz(&c, &m, depth)?);
        }
        FloerOp::SplittingCheck => {
            let r = check_splitting_identity(&c, &m, depth)?;
            let _ = writeln!(out, "{r}");
            if !r.passed() {
                return Err(CliError::failed("splitting-failed", r.failures.join("; ")));
            }
        }
    }
    Ok(())
}
