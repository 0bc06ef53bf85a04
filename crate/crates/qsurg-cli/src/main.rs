//! `qsurg`: build codes, inspect logicals and distances, and run merges and
//! measurements from the command line.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsurg_core::css::{Basis, CssCode};
use qsurg_core::distance::{
    distance_exact, distance_upper_random, lightest_logicals, refine_gauge, subsystem_distance, DistanceReport,
    GaugeSpec, Method, DEFAULT_TRIALS,
};
use qsurg_core::error::Error;
use qsurg_core::families::{build, FamilySpec};
use qsurg_core::gf2::{BitMatrix, BitVector};
use qsurg_core::io::{parse_code, parse_report, parse_vector, write_code, write_vector, MergeReport};
use qsurg_core::logicals::{is_irreducible, logical_basis, restricted_matrix};
use qsurg_core::ring::{parse_poly, Moduli, RingPoly};
use qsurg_core::surgery::{direct_merge, external_merge, internal_merge, single_qubit_measure, MergeResult};

#[derive(Parser)]
#[command(name = "qsurg", version, about = "CSS code surgery toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a family and write it as a code file.
    Build(BuildArgs),
    /// Print parameters and check weights of a code.
    Info {
        code: PathBuf,
        /// Also compute exact distances.
        #[arg(long)]
        distance: bool,
    },
    /// Print logical operators, one bit line each.
    Logicals(LogicalsArgs),
    /// Compute or estimate the distance of a code.
    Distance(DistanceArgs),
    /// Merge two codes (or two logicals of one code with --internal).
    Merge(MergeArgs),
    /// Measure one logical with a truncated-path patch.
    Measure(MeasureArgs),
    /// Summarise merge reports as a table.
    Report { reports: Vec<PathBuf> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Repetition,
    Shor,
    Steane,
    Qrm15,
    Surface,
    RotatedSurface,
    Toric,
    Hgp,
    Lcs,
    Lcs15,
    Gb,
    Bb,
    Gross,
}

#[derive(Args)]
struct BuildArgs {
    family: Family,
    /// Output code file.
    out: PathBuf,
    /// Length of a repetition code.
    #[arg(long)]
    n: Option<usize>,
    /// Distance of a surface code.
    #[arg(long)]
    d: Option<usize>,
    /// Circulant size (gb, bb, lcs) or first torus side (toric).
    #[arg(long)]
    l: Option<usize>,
    /// Second circulant size (bb) or second torus side (toric).
    #[arg(long)]
    m: Option<usize>,
    /// Base length of an lcs code.
    #[arg(long = "big-l")]
    big_l: Option<usize>,
    /// First polynomial of a gb or bb code, e.g. "x^3+y+y^2".
    #[arg(long = "A", alias = "a")]
    poly_a: Option<String>,
    /// Second polynomial of a gb or bb code.
    #[arg(long = "B", alias = "b")]
    poly_b: Option<String>,
    /// Parity matrices of a hypergraph product as comma-separated bit rows.
    #[arg(long)]
    h1: Option<String>,
    #[arg(long)]
    h2: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Z,
    X,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Z => Basis::Z,
            BasisArg::X => Basis::X,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Random trials for information-set searches.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Seed for random searches.
    #[arg(long, env = "QSURG_SEED", default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct LogicalsArgs {
    code: PathBuf,
    #[arg(long, value_enum, default_value = "z")]
    basis: BasisArg,
    /// List the lightest logicals found by a random search instead of a basis.
    #[arg(long)]
    lightest: bool,
    /// Keep only irreducible logicals.
    #[arg(long)]
    irreducible: bool,
    /// Write the first listed logical to this vector file.
    #[arg(long)]
    save: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct DistanceArgs {
    code: PathBuf,
    /// Exact search (default).
    #[arg(long, conflicts_with = "random")]
    exact: bool,
    /// Random information-set upper bound.
    #[arg(long)]
    random: bool,
    /// Only this basis; both by default.
    #[arg(long, value_enum)]
    basis: Option<BasisArg>,
    /// Give up exact searches above this weight.
    #[arg(long)]
    max_weight: Option<usize>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceMode {
    None,
    Exact,
    Random,
}

#[derive(Args)]
struct OutputArgs {
    /// Merged code file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report file; printed to stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Distances to add to the report, plain and with new logicals gauged.
    #[arg(long, value_enum, default_value = "none")]
    distance: DistanceMode,
    /// Rounds of gauge re-selection before the dressed Z/X distance.
    #[arg(long, default_value_t = 0)]
    refine_gauge: usize,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct MergeArgs {
    code_a: PathBuf,
    /// Second code; omitted with --internal.
    code_b: Option<PathBuf>,
    /// Logical vector file for the first code.
    #[arg(long)]
    u: PathBuf,
    /// Logical vector file for the second code (or second logical with --internal).
    #[arg(long)]
    v: PathBuf,
    #[arg(long, value_enum, default_value = "z")]
    basis: BasisArg,
    /// Depth of the ancilla patch; 0 merges directly.
    #[arg(long, default_value_t = 1)]
    depth: usize,
    /// Merge two logicals of a single code.
    #[arg(long)]
    internal: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MeasureArgs {
    code: PathBuf,
    #[arg(long)]
    u: PathBuf,
    #[arg(long, value_enum, default_value = "z")]
    basis: BasisArg,
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidSpec(_) => 2,
            Error::NoSpan => 3,
            Error::NotIrreducible => 4,
            Error::Overlap(_) => 5,
            Error::NoLogicals => 6,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| failure(1, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| failure(1, format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> CliResult<CssCode> {
    parse_code(&read(path)?).map_err(|e| {
        let f = Failure::from(e);
        failure(f.code, format!("{}: {}", path.display(), f.message))
    })
}

fn load_vector(path: &Path, n: usize) -> CliResult<BitVector> {
    parse_vector(&read(path)?, n).map_err(|e| {
        let f = Failure::from(e);
        failure(f.code, format!("{}: {}", path.display(), f.message))
    })
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    value.ok_or_else(|| failure(2, format!("{family} needs --{flag}")))
}

fn parse_rows(text: &str) -> CliResult<BitMatrix> {
    let rows: Vec<BitVector> = text
        .split(',')
        .map(|r| BitVector::parse(r.trim()))
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map_or(0, BitVector::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(failure(2, "matrix rows differ in length"));
    }
    Ok(BitMatrix::from_rows(cols, &rows))
}

fn polys(args: &BuildArgs, moduli: Moduli, family: &str) -> CliResult<(RingPoly, RingPoly)> {
    let a = parse_poly(&need(args.poly_a.clone(), "A", family)?, moduli)?;
    let b = parse_poly(&need(args.poly_b.clone(), "B", family)?, moduli)?;
    Ok((a, b))
}

fn family_spec(args: &BuildArgs) -> CliResult<FamilySpec> {
    Ok(match args.family {
        Family::Repetition => FamilySpec::Repetition {
            n: need(args.n, "n", "repetition")?,
        },
        Family::Shor => FamilySpec::Shor,
        Family::Steane => FamilySpec::Steane,
        Family::Qrm15 => FamilySpec::Qrm15,
        Family::Surface => FamilySpec::Surface {
            d: need(args.d, "d", "surface")?,
        },
        Family::RotatedSurface => FamilySpec::RotatedSurface {
            d: need(args.d, "d", "rotated-surface")?,
        },
        Family::Toric => FamilySpec::Toric {
            l1: need(args.l, "l", "toric")?,
            l2: need(args.m, "m", "toric")?,
        },
        Family::Hgp => FamilySpec::HypergraphProduct {
            h1: parse_rows(&need(args.h1.clone(), "h1", "hgp")?)?,
            h2: parse_rows(&need(args.h2.clone(), "h2", "hgp")?)?,
        },
        Family::Lcs => FamilySpec::Lcs {
            big_l: need(args.big_l, "big-l", "lcs")?,
            l: need(args.l, "l", "lcs")?,
        },
        Family::Lcs15 => FamilySpec::Lcs15Fixture,
        Family::Gb => {
            let (a, b) = polys(args, Moduli::univariate(need(args.l, "l", "gb")?), "gb")?;
            FamilySpec::Gb { a, b }
        }
        Family::Bb => {
            let moduli = Moduli::bivariate(need(args.l, "l", "bb")?, need(args.m, "m", "bb")?);
            let (a, b) = polys(args, moduli, "bb")?;
            FamilySpec::Bb { a, b }
        }
        Family::Gross => FamilySpec::Gross,
    })
}

fn cmd_build(args: &BuildArgs) -> CliResult<()> {
    let code = build(&family_spec(args)?)?;
    write(&args.out, &write_code(&code))?;
    println!("wrote {} (n={} k={})", args.out.display(), code.n(), code.k());
    Ok(())
}

fn cmd_info(path: &Path, with_distance: bool) -> CliResult<()> {
    let code = load_code(path)?;
    let s = code.stats(with_distance);
    println!("n = {}", s.n);
    println!("k = {}", s.k);
    println!("mz = {}", code.mz());
    println!("mx = {}", code.mx());
    println!("w_z = {}", s.w_z);
    println!("w_x = {}", s.w_x);
    println!("q_z = {}", s.q_z);
    println!("q_x = {}", s.q_x);
    println!("omega = {}", s.omega);
    if let (Some(dz), Some(dx)) = (s.d_z, s.d_x) {
        println!("d_Z = {dz}");
        println!("d_X = {dx}");
    }
    Ok(())
}

fn cmd_logicals(args: &LogicalsArgs) -> CliResult<()> {
    let code = load_code(&args.code)?;
    let basis = Basis::from(args.basis);
    let mut list = if args.lightest {
        lightest_logicals(&code, basis, args.search.trials, args.search.seed)?
    } else {
        let lb = logical_basis(&code);
        if lb.k() == 0 {
            return Err(Error::NoLogicals.into());
        }
        lb.reps(basis).to_vec()
    };
    if args.irreducible {
        list.retain(|v| is_irreducible(&code, v, basis).unwrap_or(false));
    }
    if let Some(path) = &args.save {
        let first = list.first().ok_or_else(|| failure(6, "no logical matched the filters"))?;
        write(path, &write_vector(first))?;
    }
    let mut out = std::io::stdout().lock();
    for v in &list {
        let sub = restricted_matrix(&code, v, basis)?;
        let line = writeln!(
            out,
            "{}  # weight {} checks {} irreducible {}",
            write_vector(v).trim_end(),
            v.weight(),
            sub.n_checks(),
            sub.is_irreducible()
        );
        // A closed pipe (e.g. `| head`) just ends the listing.
        if line.is_err() {
            break;
        }
    }
    Ok(())
}

fn distance_line(name: &str, r: &DistanceReport) -> String {
    if r.exact {
        format!("{name}={}", r.value)
    } else {
        format!("{name}<={}", r.value)
    }
}

fn cmd_distance(args: &DistanceArgs) -> CliResult<()> {
    let code = load_code(&args.code)?;
    let bases = match args.basis {
        Some(b) => vec![Basis::from(b)],
        None => vec![Basis::Z, Basis::X],
    };
    let mut parts = Vec::new();
    let mut values = Vec::new();
    for basis in bases {
        let r = if args.random {
            distance_upper_random(&code, basis, args.search.trials, args.search.seed)?
        } else {
            distance_exact(&code, basis, args.max_weight)?
        };
        parts.push(distance_line(&format!("d_{basis}"), &r));
        values.push(r);
    }
    let min = values.iter().min_by_key(|r| r.value).expect("at least one basis");
    parts.push(distance_line("d", min));
    if args.random {
        parts.push(format!("(random_is trials={} seed={})", args.search.trials, args.search.seed));
    }
    println!("{}", parts.join(" "));
    Ok(())
}

fn add_distances(report: &mut MergeReport, m: &MergeResult, out: &OutputArgs) -> CliResult<()> {
    let method = match out.distance {
        DistanceMode::None => return Ok(()),
        DistanceMode::Exact => Method::Exact { max_weight: None },
        DistanceMode::Random => Method::Random {
            trials: out.search.trials,
            seed: out.search.seed,
        },
    };
    let merged = &m.merged;
    if merged.k() == 0 {
        return Ok(());
    }
    for basis in [Basis::Z, Basis::X] {
        let plain = subsystem_distance(merged, &GaugeSpec::default(), basis, method)?;
        report.add_distance(&format!("d_{basis}"), &plain);
    }
    if m.new_z_logicals.is_empty() || m.old_z_logicals.is_empty() {
        return Ok(());
    }
    // The new classes are fixed only modulo the old ones on the side that
    // was glued, so only that side is re-selected.
    let (kept, gauge, canonical) = match m.basis {
        Basis::Z => (&m.old_z_logicals, &m.new_z_logicals, &m.new_x_logicals),
        Basis::X => (&m.old_x_logicals, &m.new_x_logicals, &m.new_z_logicals),
    };
    let (_, glued) = refine_gauge(merged, m.basis, kept, gauge, method, out.refine_gauge)?;
    let other = m.basis.other();
    let fixed = match other {
        Basis::Z => GaugeSpec {
            gauge_z: canonical.clone(),
            gauge_x: Vec::new(),
        },
        Basis::X => GaugeSpec {
            gauge_z: Vec::new(),
            gauge_x: canonical.clone(),
        },
    };
    let opposite = subsystem_distance(merged, &fixed, other, method)?;
    report.add_distance(&format!("dressed_d_{}", m.basis), &glued);
    report.add_distance(&format!("dressed_d_{other}"), &opposite);
    Ok(())
}

fn emit(m: &MergeResult, out: &OutputArgs) -> CliResult<()> {
    if let Some(path) = &out.out {
        write(path, &write_code(&m.merged))?;
    }
    let mut report = MergeReport::from_result(m);
    add_distances(&mut report, m, out)?;
    let text = report.to_text();
    match &out.report {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_merge(args: &MergeArgs) -> CliResult<()> {
    let basis = Basis::from(args.basis);
    let a = load_code(&args.code_a)?;
    let m = if args.internal {
        if args.code_b.is_some() {
            return Err(failure(2, "--internal takes a single code"));
        }
        let u = load_vector(&args.u, a.n())?;
        let v = load_vector(&args.v, a.n())?;
        internal_merge(&a, &u, &v, basis, args.depth)?
    } else {
        let path_b = args.code_b.as_ref().ok_or_else(|| failure(2, "merge needs two codes or --internal"))?;
        let b = load_code(path_b)?;
        let u = load_vector(&args.u, a.n())?;
        let v = load_vector(&args.v, b.n())?;
        if args.depth == 0 {
            direct_merge(&a, &b, &u, &v, basis)?
        } else {
            external_merge(&a, &b, &u, &v, basis, args.depth)?
        }
    };
    emit(&m, &args.output)
}

fn cmd_measure(args: &MeasureArgs) -> CliResult<()> {
    let code = load_code(&args.code)?;
    let u = load_vector(&args.u, code.n())?;
    let m = single_qubit_measure(&code, &u, Basis::from(args.basis), args.depth)?;
    emit(&m, &args.output)
}

fn cmd_report(paths: &[PathBuf]) -> CliResult<()> {
    let columns = ["kind", "basis", "r", "n_initial", "n_ancilla", "ancilla_ratio", "omega", "k_after"];
    println!("file\t{}", columns.join("\t"));
    for path in paths {
        let pairs = parse_report(&read(path)?)?;
        let get = |key: &str| {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| failure(2, format!("{}: missing key {key}", path.display())))
        };
        let row: Vec<String> = columns.iter().map(|c| get(c)).collect::<CliResult<_>>()?;
        println!("{}\t{}", path.display(), row.join("\t"));
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Info { code, distance } => cmd_info(code, *distance),
        Command::Logicals(args) => cmd_logicals(args),
        Command::Distance(args) => cmd_distance(args),
        Command::Merge(args) => cmd_merge(args),
        Command::Measure(args) => cmd_measure(args),
        Command::Report { reports } => cmd_report(reports),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qsurg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
