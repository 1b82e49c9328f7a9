//! Command-line front end: parse ideal specifications, run computations and
//! certification suites, emit text or JSON reports.
//!
//! Exit codes are a stable contract for scripting: 0 success, 2 input/parse
//! failure, 3 stability failure, 4 missing `G_d` property, 5 certification
//! failure.

use std::fs;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::corecalc::{self, CoreError};
use crate::diagonal::{certify_reduction_number, DiagonalReduction, OrderedStrata};
use crate::monomial::parse_monomial;
use crate::stable::{MonomialSet, StableError, StableIdeal2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_STABILITY: i32 = 3;
pub const EXIT_GD: i32 = 4;
pub const EXIT_CERTIFICATION: i32 = 5;

#[derive(Parser)]
#[command(name = "stablecore", version)]
#[command(
    about = "Strongly stable degree-two ideals: tableaux, diagonal reductions, cores, \
and exact certification of every step"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an ideal and report its tableau, height, G_d verdict and
    /// analytic spread
    Check(IdealArgs),
    /// Compute the core via the product formula
    Core(IdealArgs),
    /// Construct the diagonal reduction and certify its reduction number
    Reduction(IdealArgs),
    /// Run the ordering walk and print the stratified sequence
    Algorithm(IdealArgs),
    /// Socle of the quotient by the maximal-square diagonal reduction
    Socle(DimArgs),
    /// Northcott matrix, determinant congruences and the colon comparison
    Northcott(DimArgs),
    /// Run the full certification suite and emit one aggregated report
    CertifyAll(CertifyArgs),
}

#[derive(Args)]
struct IdealArgs {
    /// Path to an ideal JSON file, or inline JSON starting with '{'
    #[arg(long)]
    input: String,
    /// Emit machine-readable JSON instead of text
    #[arg(long)]
    json: bool,
    /// Keep the ambient ring in reports (computations still trim)
    #[arg(long)]
    no_trim: bool,
    /// Reject inputs beyond this dimension
    #[arg(long, default_value_t = 8)]
    max_d: usize,
}

#[derive(Args)]
struct DimArgs {
    /// Number of variables
    #[arg(long)]
    d: usize,
    #[arg(long)]
    json: bool,
    /// Reject inputs beyond this dimension
    #[arg(long, default_value_t = 8)]
    max_d: usize,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    ideal: IdealArgs,
    /// Seed for the sampled upper-triangular coordinate changes
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled coordinate changes
    #[arg(long, default_value_t = 5)]
    trials: usize,
}

#[derive(Deserialize)]
struct IdealInput {
    d: usize,
    #[serde(default)]
    rows: Option<Vec<usize>>,
    #[serde(default)]
    generators: Option<Vec<String>>,
}

enum CliError {
    Parse(String),
    Stability(String),
    Gd(String),
    Certification(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Stability(_) => EXIT_STABILITY,
            CliError::Gd(_) => EXIT_GD,
            CliError::Certification(_) => EXIT_CERTIFICATION,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Stability(m)
            | CliError::Gd(m)
            | CliError::Certification(m) => m,
        }
    }
}

impl From<StableError> for CliError {
    fn from(err: StableError) -> Self {
        match err {
            StableError::EmptyInput
            | StableError::NotDegreeTwo(_)
            | StableError::WrongDimension(..)
            | StableError::InvalidShape(_)
            | StableError::NotStronglyStable { .. } => CliError::Stability(err.to_string()),
            StableError::NotFullWidth { .. } | StableError::GdRequired(_) => {
                CliError::Gd(err.to_string())
            }
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::GdFailure(_) => CliError::Gd(err.to_string()),
            CoreError::Stable(inner) => inner.into(),
            other => CliError::Certification(other.to_string()),
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Core(args) => cmd_core(&args),
        Command::Reduction(args) => cmd_reduction(&args),
        Command::Algorithm(args) => cmd_algorithm(&args),
        Command::Socle(args) => cmd_socle(&args),
        Command::Northcott(args) => cmd_northcott(&args),
        Command::CertifyAll(args) => cmd_certify_all(&args),
    }
}

fn read_input(args: &IdealArgs) -> Result<StableIdeal2, CliError> {
    let text = if args.input.trim_start().starts_with('{') {
        args.input.clone()
    } else {
        fs::read_to_string(&args.input)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", args.input)))?
    };
    let input: IdealInput =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    if input.d == 0 {
        return Err(CliError::Parse("dimension must be positive".into()));
    }
    if input.d > args.max_d {
        return Err(CliError::Parse(format!(
            "dimension {} exceeds --max-d {} (graded components beyond desk scale)",
            input.d, args.max_d
        )));
    }
    match (input.rows, input.generators) {
        (Some(rows), None) => Ok(StableIdeal2::new(input.d, rows)?),
        (None, Some(gens)) => {
            let monomials = gens
                .iter()
                .map(|s| parse_monomial(s, input.d))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Parse(e.to_string()))?;
            let set = MonomialSet::new(input.d, monomials)?;
            Ok(StableIdeal2::from_generators(&set)?)
        }
        (Some(_), Some(_)) => Err(CliError::Parse(
            "give either \"rows\" or \"generators\", not both".into(),
        )),
        (None, None) => Err(CliError::Parse(
            "input needs a \"rows\" or \"generators\" field".into(),
        )),
    }
}

/// Trims unless `--no-trim`; returns the working ideal and the original
/// dimension when a trim happened.
fn working_ideal(ideal: &StableIdeal2, args: &IdealArgs) -> (StableIdeal2, Option<usize>) {
    if ideal.is_full_width() || args.no_trim {
        (ideal.clone(), None)
    } else {
        let (trimmed, original) = ideal.trim();
        (trimmed, Some(original))
    }
}

fn render_tableau(ideal: &StableIdeal2, mark_gd: bool) -> String {
    let g = ideal.height();
    let d = ideal.dim();
    let mut out = String::new();
    for (i, &len) in ideal.rows().iter().enumerate() {
        let i = i + 1;
        out.push_str(&format!("  x{i:<2}|"));
        for j in 1..=d {
            if j < i {
                out.push_str("   ");
            } else if j <= len {
                if mark_gd && i == g - 1 && j == d {
                    out.push_str("  G");
                } else {
                    out.push_str("  #");
                }
            }
        }
        out.push('\n');
    }
    out
}

fn cmd_check(args: &IdealArgs) -> Result<(), CliError> {
    let ideal = read_input(args)?;
    let (working, trimmed_from) = working_ideal(&ideal, args);
    let gd = working.gd_report()?;
    let spread = working.analytic_spread();
    if args.json {
        let report = json!({
            "d": working.dim(),
            "rows": working.rows(),
            "original_d": trimmed_from.unwrap_or(working.dim()),
            "trimmed": trimmed_from.is_some(),
            "g": working.height(),
            "Gd": {
                "holds": gd.holds,
                "convention_g1": gd.convention_g1,
                "witness": gd.witness,
            },
            "analytic_spread": spread,
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("dimension: {}", working.dim());
        if let Some(original) = trimmed_from {
            println!("trimmed from dimension {original}");
        }
        println!("rows: {:?}", working.rows());
        println!("height g: {}", working.height());
        print!(
            "{}",
            render_tableau(&working, gd.holds && working.height() >= 2)
        );
        match (&gd.witness, gd.convention_g1) {
            (None, true) => println!("G_d: true (single row, by convention)"),
            (None, false) => println!(
                "G_d: true (x{}*x{} is a generator)",
                working.height() - 1,
                working.dim()
            ),
            (Some(w), _) => println!(
                "G_d: false (s={}, t={}, prime (x1..x{}) needs {} local generators)",
                w.s,
                w.t,
                w.s,
                w.proof_generators.len()
            ),
        }
        println!("analytic spread: {spread}");
    }
    Ok(())
}

fn cmd_core(args: &IdealArgs) -> Result<(), CliError> {
    let ideal = read_input(args)?;
    let core = corecalc::core_ideal(&ideal)?;
    let generators: Vec<String> = core.generators.iter().map(|m| m.to_string()).collect();
    if args.json {
        let report = json!({
            "ideal": {
                "d": core.source.dim(),
                "rows": core.source.rows(),
                "original_d": core.trimmed_from.unwrap_or(core.source.dim()),
                "trimmed": core.trimmed_from.is_some(),
            },
            "g": core.height,
            "degree": core.height + 1,
            "formula_extrapolated": core.formula_extrapolated,
            "core_generators": generators,
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        if let Some(original) = core.trimmed_from {
            println!(
                "trimmed from dimension {original} to {}; extend generators back to the \
                 ambient ring",
                core.source.dim()
            );
        }
        println!(
            "core = product of the ideal with the (g-1)-st power of the maximal ideal, g = {}",
            core.height
        );
        if core.formula_extrapolated {
            println!("note: g = 1, value is formula-extrapolated");
        }
        println!(
            "{} generators of degree {}:",
            generators.len(),
            core.height + 1
        );
        for gen in &generators {
            println!("  {gen}");
        }
    }
    Ok(())
}

fn cmd_reduction(args: &IdealArgs) -> Result<(), CliError> {
    let ideal = read_input(args)?;
    let (working, _) = working_ideal(&ideal, args);
    let reduction = DiagonalReduction::from_ideal(&working)?;
    let certificate = certify_reduction_number(&working).map_err(CoreError::from)?;
    if !certificate.reduction_holds {
        return Err(CliError::Certification(
            "power equality failed in the witness degree".into(),
        ));
    }
    if args.json {
        let report = json!({
            "d": working.dim(),
            "rows": working.rows(),
            "betas": reduction.betas(),
            "generators": reduction.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "witness_degree": certificate.witness_degree,
            "reduction_holds": certificate.reduction_holds,
            "reduction_number_leq": certificate.minimal_reduction_number,
            "rationale": certificate.rationale,
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("betas: {:?}", reduction.betas());
        println!("diagonal reduction generators:");
        for gen in reduction.generators() {
            println!("  {gen}");
        }
        println!(
            "reduction verified in degree {}; reduction number <= {}",
            certificate.witness_degree, certificate.minimal_reduction_number
        );
    }
    Ok(())
}

fn cmd_algorithm(args: &IdealArgs) -> Result<(), CliError> {
    let ideal = read_input(args)?;
    let (working, _) = working_ideal(&ideal, args);
    let strata =
        OrderedStrata::generate(working.dim(), working.height()).map_err(CoreError::from)?;
    if strata.verify_strata_order().is_err() {
        return Err(CliError::Certification(
            "walk strata do not match their revlex targets".into(),
        ));
    }
    #[derive(serde::Serialize)]
    struct Line<'a> {
        index: usize,
        monomial: &'a str,
        h: usize,
        j: usize,
    }
    for (idx, (monomial, h, j)) in strata.elements().iter().enumerate() {
        if args.json {
            let line = Line {
                index: idx + 1,
                monomial: &monomial.to_string(),
                h: *h,
                j: *j,
            };
            println!("{}", serde_json::to_string(&line).unwrap());
        } else {
            println!("{:>4}: {} (stratum {h}, position {j})", idx + 1, monomial);
        }
    }
    Ok(())
}

fn check_dim(args: &DimArgs, minimum: usize) -> Result<(), CliError> {
    if args.d < minimum {
        return Err(CliError::Parse(format!(
            "this command needs --d at least {minimum}"
        )));
    }
    if args.d > args.max_d {
        return Err(CliError::Parse(format!(
            "dimension {} exceeds --max-d {}",
            args.d, args.max_d
        )));
    }
    Ok(())
}

fn cmd_socle(args: &DimArgs) -> Result<(), CliError> {
    check_dim(args, 1)?;
    let report = corecalc::check_socle(args.d);
    if !report.matches || !report.top_power_outside {
        return Err(CliError::Certification(format!(
            "socle check failed in dimension {}",
            args.d
        )));
    }
    if args.json {
        let out = json!({
            "d": args.d,
            "socle_basis": report.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "matches": report.matches,
            "top_power_outside": report.top_power_outside,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!(
            "socle of the quotient by the maximal-square reduction: spanned by {}",
            report.basis[0]
        );
        println!(
            "x1^{} lies outside the reduction: {}",
            args.d, report.top_power_outside
        );
    }
    Ok(())
}

fn cmd_northcott(args: &DimArgs) -> Result<(), CliError> {
    check_dim(args, 2)?;
    let report = corecalc::check_northcott(args.d);
    if !report.all_hold() {
        return Err(CliError::Certification(format!(
            "northcott check failed in dimension {}",
            args.d
        )));
    }
    if args.json {
        let out = json!({
            "d": args.d,
            "det": report.determinant.to_string(),
            "matrix_consistent": report.matrix_consistent,
            "eq3": report.det_congruence,
            "eq4": report.alternating_congruence,
            "sign_exponent": report.sign_exponent,
            "colon_match": report.colon_match,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("det(A) = {}", report.determinant);
        println!(
            "matrix rows reproduce the diagonal generators: {}",
            report.matrix_consistent
        );
        println!(
            "det(A) congruent to x1^{}: {}",
            args.d, report.det_congruence
        );
        println!(
            "x1^{} congruent to (-1)^{} * x{}^{}: {}",
            args.d, report.sign_exponent, args.d, args.d, report.alternating_congruence
        );
        println!(
            "(det) + J matches J : m in degree {}: {}",
            args.d, report.colon_match
        );
    }
    Ok(())
}

fn cmd_certify_all(args: &CertifyArgs) -> Result<(), CliError> {
    let ideal = read_input(&args.ideal)?;
    let report = corecalc::certify_all(&ideal, args.seed, args.trials)?;
    if args.ideal.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!(
            "ideal: d={}, rows={:?} (original d={}, trimmed={})",
            report.ideal.d, report.ideal.rows, report.ideal.original_d, report.ideal.trimmed
        );
        println!(
            "g = {}, seed = {}, trials = {}",
            report.g, report.seed, report.trials
        );
        println!("core generators: {}", report.core_generators.len());
        let c = &report.checks;
        println!("G_d: {}", c.gd);
        println!("strata order: {}", c.strata_order);
        println!(
            "product containment ({} certificates): {}",
            c.im_in_j_certificates, c.im_in_j
        );
        println!(
            "reduction holds: {} (reduction number <= {})",
            c.reduction_holds, c.reduction_number_leq
        );
        println!("core strongly stable: {}", c.core_strongly_stable);
        println!("socle: {}", c.socle);
        println!("socle ladder: {}", c.socle_ladder);
        match &c.embedded_reduction {
            Some(ok) => println!("embedded reduction: {ok}"),
            None => println!("embedded reduction: skipped (d = 1)"),
        }
        match &c.northcott {
            Some(n) => println!(
                "northcott: det={}, eq3={}, eq4={}, colon={}",
                n.det, n.eq3, n.eq4, n.colon_match
            ),
            None => println!("northcott: skipped (d = 1)"),
        }
        println!(
            "upper bound trials: {} ({})",
            c.upper_bound_trials, c.upper_bound_ok
        );
        println!("lower bound: {}", c.lower_bound);
    }
    if !report.all_passed() {
        return Err(CliError::Certification(
            "at least one certification failed".into(),
        ));
    }
    Ok(())
}
