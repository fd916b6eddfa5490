//! The `shellbound` command line.
//!
//! Every analysis command writes one JSON report (or a flattened TSV view of
//! it) wrapped in an envelope carrying the tool name and version, a tag naming
//! the check performed, and the SHA-256 of the input. Nothing time- or
//! environment-dependent goes into a report, so identical invocations produce
//! identical bytes.
//!
//! Exit codes: `0` every check passed, `1` a mathematical check failed or an
//! order was rejected, `2` usage or input error, `3` search budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{self, BoundsError};
use crate::generators::{self, GeneratorError, GeneratorSpec};
use crate::io::{facet_list_text, lattice_to_json, load_lattice};
use crate::lattice::FaceLattice;
use crate::shelling::{self, SearchOptions, ShellingError, ShellingOrder, Verdict, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const TOOL: &str = env!("CARGO_PKG_NAME");
const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "shellbound", version, about = "Shellings and face-number lower bounds for regular CW spheres and balls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a sphere or ball and write it as lattice JSON or a facet list.
    Gen(GenArgs),
    /// Check whether an explicit facet order is a shelling.
    CheckShelling(CheckArgs),
    /// Search for a shelling, optionally starting with given facets.
    FindShelling(FindArgs),
    /// Verify the lower bound on f_k against f_d and the boundary.
    Bounds(BoundsArgs),
    /// Compute witness pairs for splits of a shelled sphere.
    Witness(WitnessArgs),
    /// Evaluate the linear and min-type corollary bounds on a diamond lattice.
    Corollaries(CorollaryArgs),
    /// Compare f-vectors against a cyclic polytope.
    Gubt(GubtArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    SimplexBoundary,
    CrossPolytope,
    HypercubeBoundary,
    Ngon,
    CyclicBoundary,
    Punctured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BaseFamily {
    SimplexBoundary,
    CrossPolytope,
    HypercubeBoundary,
    Ngon,
    CyclicBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LatticeFormat {
    Json,
    Facets,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    #[default]
    Json,
    Tsv,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    /// Dimension parameter.
    #[arg(long)]
    d: Option<usize>,
    /// Vertex count for polygons and cyclic polytopes.
    #[arg(long)]
    n: Option<usize>,
    /// Sphere family to puncture.
    #[arg(long, value_enum)]
    base: Option<BaseFamily>,
    /// Facet to remove when puncturing; defaults to the least facet id.
    #[arg(long)]
    facet: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: LatticeFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Common {
    /// Lattice JSON or facet-list file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    /// Search node budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated facet ids.
    #[arg(long)]
    order: String,
}

#[derive(Args, Debug)]
struct FindArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated facet ids the shelling must start with.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated shelling order; searched for when omitted.
    #[arg(long)]
    order: Option<String>,
    /// Single k to check; every admissible k when omitted.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    order: Option<String>,
    /// Split position; every split when omitted.
    #[arg(long)]
    split: Option<usize>,
}

#[derive(Args, Debug)]
struct CorollaryArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct GubtArgs {
    #[command(flatten)]
    common: Common,
    /// Polytope dimension; defaults to the sphere's dimension plus one.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: usize,
}

/// A failure that ends a command with a nonzero exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ShellingError> for Failure {
    fn from(e: ShellingError) -> Self {
        let code = match e {
            ShellingError::BudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GeneratorError> for Failure {
    fn from(e: GeneratorError) -> Self {
        match e {
            GeneratorError::Shelling(s) => s.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        let code = match &e {
            BoundsError::Shelling(ShellingError::BudgetExceeded(_)) => EXIT_BUDGET,
            BoundsError::NotAShelling(_)
            | BoundsError::InternalContradiction(_)
            | BoundsError::IdentityViolated { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// A finished report and whether every check in it passed.
struct Outcome {
    check: &'static str,
    passed: bool,
    result: Value,
}

struct Input {
    path: String,
    sha256: String,
    lattice: FaceLattice,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load(path: &PathBuf) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::usage(format!("{} is not UTF-8", path.display())))?;
    let lattice = load_lattice(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(Input {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
        lattice,
    })
}

fn parse_order(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn options(common: &Common) -> SearchOptions {
    SearchOptions {
        budget: common.budget,
        ..SearchOptions::default()
    }
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report values serialize")
}

/// The given order, or the first shelling found.
fn order_or_search(lattice: &FaceLattice, order: &Option<String>, options: SearchOptions) -> Result<Option<ShellingOrder>, Failure> {
    match order {
        Some(text) => Ok(Some(ShellingOrder(parse_order(text)))),
        None => Ok(shelling::find_shelling_with::<&str>(lattice, &[], options)?),
    }
}

fn no_shelling(check: &'static str) -> Outcome {
    Outcome {
        check,
        passed: false,
        result: json!({ "shellable": false }),
    }
}

fn check_shelling(args: &CheckArgs, lattice: &FaceLattice) -> Result<Outcome, Failure> {
    let order = ShellingOrder(parse_order(&args.order));
    let verdict = shelling::is_shelling_with(lattice, &order, options(&args.common))?;
    Ok(match verdict {
        Verdict::Shelling(cert) => {
            let topology = shelling::classify(lattice, &cert)?;
            Outcome {
                check: "shelling",
                passed: true,
                result: json!({ "accepted": true, "topology": topology, "certificate": cert }),
            }
        }
        Verdict::Failure(failure) => Outcome {
            check: "shelling",
            passed: false,
            result: json!({ "accepted": false, "failure": failure }),
        },
    })
}

fn find_shelling(args: &FindArgs, lattice: &FaceLattice) -> Result<Outcome, Failure> {
    let prefix = args.order.as_deref().map(parse_order).unwrap_or_default();
    let found = shelling::find_shelling_with(lattice, &prefix, options(&args.common))?;
    Ok(match found {
        Some(order) => {
            let verdict = shelling::is_shelling_with(lattice, &order, options(&args.common))?;
            let cert = verdict
                .certificate()
                .cloned()
                .ok_or_else(|| Failure {
                    code: EXIT_CHECK_FAILED,
                    message: "search returned an order that does not verify".into(),
                })?;
            let topology = shelling::classify(lattice, &cert)?;
            Outcome {
                check: "shelling-search",
                passed: true,
                result: json!({ "found": true, "prefix": prefix, "order": order, "topology": topology, "certificate": cert }),
            }
        }
        None => Outcome {
            check: "shelling-search",
            passed: false,
            result: json!({ "found": false, "prefix": prefix }),
        },
    })
}

fn run_bounds(args: &BoundsArgs, lattice: &FaceLattice) -> Result<Outcome, Failure> {
    if lattice.dim() < 1 {
        return Err(Failure::usage("lower bounds need dimension at least 1"));
    }
    let d = lattice.dim() as usize;
    let Some(order) = order_or_search(lattice, &args.order, options(&args.common))? else {
        return Ok(no_shelling("lower-bound"));
    };
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => ((d - 1) / 2..=d).collect(),
    };
    let mut reports = Vec::with_capacity(ks.len());
    let mut passed = true;
    for k in ks {
        let report = bounds::verify_lower_bound(lattice, &order, k)?;
        passed &= report.holds();
        reports.push(report.to_json());
    }
    let f = lattice.f_vector();
    Ok(Outcome {
        check: "lower-bound",
        passed,
        result: json!({
            "d": d,
            "order": order,
            "f_vector": f.proper(),
            "simplicial": bounds::is_simplicial(lattice),
            "reports": reports,
        }),
    })
}

fn run_witness(args: &WitnessArgs, lattice: &FaceLattice) -> Result<Outcome, Failure> {
    let Some(order) = order_or_search(lattice, &args.order, options(&args.common))? else {
        return Ok(no_shelling("witness-pair"));
    };
    let n = order.len();
    let splits: Vec<usize> = match args.split {
        Some(j) => vec![j],
        None => (1..n).collect(),
    };
    let mut pairs = Vec::with_capacity(splits.len());
    for j in splits {
        pairs.push(bounds::find_witness_pair(lattice, &order, j)?);
    }
    Ok(Outcome {
        check: "witness-pair",
        passed: true,
        result: json!({ "d": lattice.dim(), "order": order, "pairs": pairs }),
    })
}

fn run_corollaries(args: &CorollaryArgs, lattice: &FaceLattice) -> Result<Outcome, Failure> {
    let mut report = bounds::corollaries_with(lattice, options(&args.common))?;
    if let Some(k) = args.k {
        if k > report.d {
            return Err(Failure::usage(format!("k={k} exceeds dimension {}", report.d)));
        }
        report.rows.retain(|r| r.k == k);
    }
    let barany = (report.dual_cl_shellable && report.cl_shellable)
        .then(|| report.rows.iter().all(|r| r.min_side == Some(true)));
    Ok(Outcome {
        check: "corollary-bounds",
        passed: report.holds(),
        result: json!({ "report": report, "min_bound_all_k": barany }),
    })
}

fn run_gubt(args: &GubtArgs, lattice: &FaceLattice) -> Result<Outcome, Failure> {
    let d = match args.d {
        Some(d) => d,
        None if lattice.dim() >= 0 => lattice.dim() as usize + 1,
        None => return Err(Failure::usage("candidate has no facets")),
    };
    let report = generators::gubt_compare_with(lattice, d, args.n, options(&args.common))?;
    Ok(Outcome {
        check: "cyclic-comparison",
        passed: report.violations.is_empty(),
        result: to_value(&report),
    })
}

fn family_spec(family: Family, args: &GenArgs) -> Result<GeneratorSpec, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::usage(format!("--{flag} is required for this family")));
    let base = |b: BaseFamily| match b {
        BaseFamily::SimplexBoundary => Family::SimplexBoundary,
        BaseFamily::CrossPolytope => Family::CrossPolytope,
        BaseFamily::HypercubeBoundary => Family::HypercubeBoundary,
        BaseFamily::Ngon => Family::Ngon,
        BaseFamily::CyclicBoundary => Family::CyclicBoundary,
    };
    Ok(match family {
        Family::SimplexBoundary => GeneratorSpec::SimplexBoundary { d: need(args.d, "d")? },
        Family::CrossPolytope => GeneratorSpec::CrossPolytope { d: need(args.d, "d")? },
        Family::HypercubeBoundary => GeneratorSpec::HypercubeBoundary { d: need(args.d, "d")? },
        Family::Ngon => GeneratorSpec::Ngon { n: need(args.n, "n")? },
        Family::CyclicBoundary => GeneratorSpec::CyclicBoundary {
            d: need(args.d, "d")?,
            n: need(args.n, "n")?,
        },
        Family::Punctured => {
            let b = args.base.ok_or_else(|| Failure::usage("--base is required for punctured"))?;
            GeneratorSpec::Punctured {
                base: Box::new(family_spec(base(b), args)?),
                facet: args.facet.clone(),
            }
        }
    })
}

fn run_gen(args: &GenArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let spec = family_spec(args.family, args)?;
    let lattice = spec.build()?;
    let text = match args.format {
        LatticeFormat::Json => lattice_to_json(&lattice),
        LatticeFormat::Facets => facet_list_text(&lattice).map_err(|e| Failure::usage(e.to_string()))?,
    };
    emit(&text, &args.out, stdout)
}

fn emit(text: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write output: {e}"))),
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten(&path, v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, out);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}\t{}\n", joined.join(",")));
        }
        other => out.push_str(&format!("{prefix}\t{}\n", scalar(other))),
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Serializes a report envelope in the requested format.
fn render(envelope: &Value, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(envelope).expect("reports serialize");
            text.push('\n');
            text
        }
        ReportFormat::Tsv => {
            let mut text = String::from("field\tvalue\n");
            flatten("", envelope, &mut text);
            text
        }
    }
}

fn analyse(common: &Common, stdout: &mut dyn Write, body: impl FnOnce(&FaceLattice) -> Result<Outcome, Failure>) -> Result<i32, Failure> {
    let input = load(&common.input)?;
    let outcome = body(&input.lattice)?;
    let envelope = json!({
        "tool": TOOL,
        "version": VERSION,
        "check": outcome.check,
        "input": { "path": input.path, "sha256": input.sha256 },
        "passed": outcome.passed,
        "result": outcome.result,
    });
    emit(&render(&envelope, common.format), &common.out, stdout)?;
    Ok(if outcome.passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Gen(args) => run_gen(args, stdout).map(|_| EXIT_OK),
        Command::CheckShelling(args) => analyse(&args.common, stdout, |l| check_shelling(args, l)),
        Command::FindShelling(args) => analyse(&args.common, stdout, |l| find_shelling(args, l)),
        Command::Bounds(args) => analyse(&args.common, stdout, |l| run_bounds(args, l)),
        Command::Witness(args) => analyse(&args.common, stdout, |l| run_witness(args, l)),
        Command::Corollaries(args) => analyse(&args.common, stdout, |l| run_corollaries(args, l)),
        Command::Gubt(args) => analyse(&args.common, stdout, |l| run_gubt(args, l)),
    }
}

/// Runs one command. `args` includes the program name. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "shellbound: {}", failure.message);
            failure.code
        }
    }
}
