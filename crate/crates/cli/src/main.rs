//! Command-line front end: construct unit schemes and codes, run the
//! distance oracles, emit JSON/alist artifacts, and reproduce the worked
//! examples via `repro`.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 enumeration budget
//! exceeded, 3 expected/actual mismatch in `repro`.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use unit_codes_core::block::{self, BlockCode, BlockError, CodeReport, DEFAULT_DISTANCE_CAP};
use unit_codes_core::conv::{self, ConvClass, ConvCode, ConvError, FreeDistance, Twist};
use unit_codes_core::field::FieldSpec;
use unit_codes_core::fourier::FourierScheme;
use unit_codes_core::grouprings::{self, GirthRequirement, GroupRingElem};
use unit_codes_core::linalg::Mat;
use unit_codes_core::named;
use unit_codes_core::poly::PolyMat;
use unit_codes_core::sampling::Rng;
use unit_codes_core::scheme::{SchemeSplit, UnitScheme};

mod repro;

#[derive(Parser)]
#[command(name = "unit-codes", version, about = "Unit-scheme code construction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field literal, e.g. "gf(2^3)" or "gf(5)"
    #[arg(long, global = true)]
    field: Option<String>,

    /// Enumeration cap for distance oracles (codeword / message count)
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Max information-polynomial degree for free-distance search
    #[arg(long, global = true)]
    depth: Option<usize>,

    /// Worker threads for the oracles (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized selections
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file for the JSON artifact (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier scheme codes: row windows and the LCD arrangements
    Fourier(FourierArgs),
    /// Built-in units (hamming, golay, binary-x4, extended-hamming-x, hadamard12)
    Named(NamedArgs),
    /// Derive a code from a unit scheme file by row selection
    Derive(DeriveArgs),
    /// Build convolutional codes from a scheme split
    Conv(ConvArgs),
    /// Group-ring LDPC derivations
    Ldpc(LdpcArgs),
    /// Classify a code from a JSON file
    Analyze(AnalyzeArgs),
    /// Reproduce the worked examples; `repro all` prints the whole table
    Repro(ReproArgs),
}

#[derive(Args)]
struct FourierArgs {
    /// Fourier size n
    #[arg(long)]
    n: usize,
    /// Rows of F_n, e.g. "0..3" (inclusive) or "0,1,2,3"
    #[arg(long)]
    rows: Option<String>,
    /// LCD arrangement parameter r (rows e_r..e_{n-1}, e_0..e_{n-r} generate)
    #[arg(long)]
    lcd: Option<usize>,
    /// Conjugate-paired arrangement parameter r (same code, split feeds the
    /// dual-containing convolutional companion)
    #[arg(long)]
    paired: Option<usize>,
    /// Attach a classification report (runs the distance oracle)
    #[arg(long)]
    analyze: bool,
}

#[derive(Args)]
struct NamedArgs {
    /// Unit name; omit with --list
    name: Option<String>,
    /// List available names
    #[arg(long)]
    list: bool,
    /// Rows of U to derive a block code from
    #[arg(long)]
    rows: Option<String>,
    /// Build the self-dual (I, cX) code from the unit's orthogonal matrix
    #[arg(long = "derive", value_name = "I|X")]
    derive_stack: Option<String>,
    #[arg(long)]
    analyze: bool,
}

#[derive(Args)]
struct DeriveArgs {
    /// Scheme JSON file {"u": matrix, "v": matrix (optional)}
    #[arg(long)]
    scheme: PathBuf,
    /// Row selection, e.g. "0,1,2,3" or "0..3"
    #[arg(long)]
    rows: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwistArg {
    Plain,
    I,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternArg {
    #[value(name = "rate34-mem1")]
    Rate34Mem1,
    #[value(name = "rate34-mem3")]
    Rate34Mem3,
}

#[derive(Args)]
struct ConvArgs {
    /// Scheme JSON file
    #[arg(long)]
    scheme: Option<PathBuf>,
    /// Built-in unit name
    #[arg(long)]
    named: Option<String>,
    /// Fourier size (uses --field)
    #[arg(long)]
    fourier: Option<usize>,
    /// Consecutive row-block sizes, e.g. "4,3"; or explicit index blocks
    /// separated by '/', e.g. "0,1,6,2,5/4,3"
    #[arg(long)]
    split: String,
    /// Memory selector: 1 (two blocks), 2 (three blocks), 3 (four blocks)
    #[arg(long)]
    memory: Option<u32>,
    /// Multiply the z-part by a square root of -1
    #[arg(long, value_enum, default_value_t = TwistArg::Plain)]
    twist: TwistArg,
    /// Mixed-rate pattern over four equal blocks
    #[arg(long, value_enum)]
    pattern: Option<PatternArg>,
    /// Run the free-distance search
    #[arg(long)]
    free_distance: bool,
    /// Classify against the dual (lcd / dc / self_dual)
    #[arg(long)]
    classify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GirthArg {
    None,
    #[value(name = "4")]
    Four,
    #[value(name = "6")]
    Six,
}

#[derive(Args)]
struct LdpcArgs {
    /// Group-ring element literal, e.g. "g^5 + h*g^2 + 1 @ C24xC4"
    #[arg(long)]
    element: String,
    /// Cyclic order n when the literal has no "@ CnxC4" suffix
    #[arg(long)]
    n: Option<usize>,
    /// Row selection: "first:K", "random:K" (seeded) or explicit indices
    #[arg(long)]
    rows: Option<String>,
    /// Reject the derivation on short cycles in the control matrix
    #[arg(long, value_enum, default_value_t = GirthArg::None)]
    girth: GirthArg,
    /// Write the check matrix in alist format
    #[arg(long)]
    alist: Option<PathBuf>,
    /// Build the convolutional LDPC code instead (memory 1 or 3)
    #[arg(long)]
    conv_memory: Option<u32>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Code JSON file {"generator": matrix, "control": matrix (optional)}
    #[arg(long)]
    code: PathBuf,
}

#[derive(Args)]
struct ReproArgs {
    /// Example id, or "all"
    id: Option<String>,
    /// List available ids
    #[arg(long)]
    list: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Budget(String),
    Mismatch(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Budget(m) => write!(f, "budget exceeded: {m}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

fn usage<E: fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn from_block_err(e: BlockError) -> CliError {
    match e {
        BlockError::BudgetExceeded { needed, cap } => {
            CliError::Budget(format!("need {needed} codewords, cap {cap}"))
        }
        other => CliError::Usage(other.to_string()),
    }
}

fn from_conv_err(e: ConvError) -> CliError {
    match e {
        ConvError::BudgetExceeded { needed, cap } => {
            CliError::Budget(format!("need {needed} information polynomials, cap {cap}"))
        }
        other => CliError::Usage(other.to_string()),
    }
}

/// Parses "0..3" (inclusive range) or "0,2,5" into indices.
fn parse_rows(text: &str) -> Result<Vec<usize>, CliError> {
    let t = text.trim();
    if let Some((a, b)) = t.split_once("..") {
        let lo: usize = a.trim().parse().map_err(usage)?;
        let hi: usize = b.trim().parse().map_err(usage)?;
        if hi < lo {
            return Err(CliError::Usage(format!("empty row range {t:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    t.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(usage))
        .collect()
}

fn parse_field(cli_field: &Option<String>, default: Option<&str>) -> Result<FieldSpec, CliError> {
    let literal = cli_field
        .as_deref()
        .or(default)
        .ok_or_else(|| CliError::Usage("--field is required here".into()))?;
    FieldSpec::parse_literal(literal).map_err(usage)
}

#[derive(Serialize, Deserialize)]
struct SchemeFile {
    u: Mat,
    #[serde(default)]
    v: Option<Mat>,
}

#[derive(Serialize, Deserialize)]
struct CodeFile {
    generator: Mat,
    #[serde(default)]
    control: Option<Mat>,
}

#[derive(Serialize)]
struct BlockArtifact {
    n: usize,
    k: usize,
    generator: Mat,
    control: Mat,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<CodeReport>,
}

#[derive(Serialize)]
struct ConvArtifact {
    n: usize,
    k: usize,
    delta: usize,
    mu: usize,
    gsb: u64,
    noncatastrophic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    free_distance: Option<FreeDistance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<ConvClass>,
    generator: PolyMat,
    #[serde(skip_serializing_if = "Option::is_none")]
    control: Option<PolyMat>,
}

#[derive(Serialize)]
struct LdpcArtifact {
    n: usize,
    k: usize,
    four_cycles: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    six_cycles: Option<u64>,
    max_row_support: usize,
    max_col_support: usize,
    report: CodeReport,
}

fn emit(out: &Option<PathBuf>, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(usage)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(usage),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn block_artifact(code: &BlockCode, analyze: bool, cap: u64) -> BlockArtifact {
    BlockArtifact {
        n: code.n(),
        k: code.dim(),
        generator: code.generator().clone(),
        control: code.control().clone(),
        report: analyze.then(|| code.classify(cap)),
    }
}

fn load_named(name: &str, field: &Option<String>) -> Result<named::NamedUnit, CliError> {
    match name {
        "hamming" => Ok(named::hamming_unit()),
        "golay" => Ok(named::golay_unit()),
        "binary-x4" => Ok(named::binary_x4()),
        "extended-hamming-x" => Ok(named::extended_hamming_x()),
        "hadamard12" => {
            let spec = parse_field(field, Some("gf(5)"))?;
            named::hadamard12_unit(&spec).map_err(usage)
        }
        other => Err(CliError::Usage(format!(
            "unknown named unit {other:?}; available: {}",
            named::builtin_names().join(", ")
        ))),
    }
}

/// "4,3" (consecutive sizes) or "0,1,6,2,5/4,3" (explicit index blocks).
fn parse_split(scheme: &UnitScheme, text: &str) -> Result<SchemeSplit, CliError> {
    if text.contains('/') {
        let blocks: Result<Vec<Vec<usize>>, CliError> =
            text.split('/').map(parse_rows).collect();
        scheme.split(blocks?).map_err(usage)
    } else {
        let sizes: Result<Vec<usize>, _> = text
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(usage))
            .collect();
        scheme.split_consecutive(&sizes?).map_err(usage)
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(usage)?;
    }
    let cap = cli.cap.unwrap_or(DEFAULT_DISTANCE_CAP);
    match &cli.command {
        Command::Fourier(args) => {
            let spec = parse_field(&cli.field, None)?;
            let fs = FourierScheme::new(args.n, spec).map_err(usage)?;
            let code = if let Some(rows) = &args.rows {
                fs.scheme().derive(&parse_rows(rows)?).map_err(usage)?
            } else if let Some(r) = args.lcd {
                fs.lcd_arrangement(r).map_err(usage)?.0
            } else if let Some(r) = args.paired {
                fs.conjugate_paired_arrangement(r).map_err(usage)?.0
            } else {
                return Err(CliError::Usage(
                    "one of --rows, --lcd, --paired is required".into(),
                ));
            };
            let artifact = try_block_artifact(&code, args.analyze, cap)?;
            emit(&cli.out, &artifact)
        }
        Command::Named(args) => {
            if args.list {
                for name in named::builtin_names() {
                    println!("{name}");
                }
                return Ok(());
            }
            let name = args
                .name
                .as_deref()
                .ok_or_else(|| CliError::Usage("a unit name or --list is required".into()))?;
            let unit = load_named(name, &cli.field)?;
            let code = if let Some(stack) = &args.derive_stack {
                if stack != "I|X" {
                    return Err(CliError::Usage("--derive only supports \"I|X\"".into()));
                }
                block::self_dual_from_orthogonal(unit.scheme.u()).map_err(from_block_err)?
            } else if let Some(rows) = &args.rows {
                unit.scheme.derive(&parse_rows(rows)?).map_err(usage)?
            } else {
                return Err(CliError::Usage("--rows or --derive is required".into()));
            };
            let artifact = try_block_artifact(&code, args.analyze, cap)?;
            emit(&cli.out, &artifact)
        }
        Command::Derive(args) => {
            let text = std::fs::read_to_string(&args.scheme).map_err(usage)?;
            let file: SchemeFile = serde_json::from_str(&text).map_err(usage)?;
            let scheme = match file.v {
                Some(v) => UnitScheme::from_pair(file.u, v).map_err(usage)?,
                None => UnitScheme::from_unit(file.u).map_err(usage)?,
            };
            let code = scheme.derive(&parse_rows(&args.rows)?).map_err(usage)?;
            let artifact = try_block_artifact(&code, true, cap)?;
            emit(&cli.out, &artifact)
        }
        Command::Conv(args) => {
            let scheme = conv_scheme(cli, args)?;
            let split = parse_split(&scheme, &args.split)?;
            let twist = match args.twist {
                TwistArg::Plain => Twist::Plain,
                TwistArg::I => Twist::SqrtMinusOne,
            };
            let code = build_conv(&split, args, twist)?;
            let free_distance = if args.free_distance {
                Some(
                    conv::free_distance(&code, cli.depth, cap)
                        .map_err(from_conv_err)?,
                )
            } else {
                None
            };
            let class = if args.classify {
                Some(conv::conv_classify(&code).map_err(from_conv_err)?)
            } else {
                None
            };
            let artifact = ConvArtifact {
                n: code.n(),
                k: code.k(),
                delta: code.delta(),
                mu: code.memory(),
                gsb: code.gsb(),
                noncatastrophic: code.is_noncatastrophic(),
                free_distance,
                class,
                generator: code.generator().clone(),
                control: code.control().cloned(),
            };
            emit(&cli.out, &artifact)
        }
        Command::Ldpc(args) => run_ldpc(cli, args, cap),
        Command::Analyze(args) => {
            let text = std::fs::read_to_string(&args.code).map_err(usage)?;
            let file: CodeFile = serde_json::from_str(&text).map_err(usage)?;
            let code = match file.control {
                Some(ctrl) => BlockCode::from_parts(file.generator, ctrl).map_err(from_block_err)?,
                None => BlockCode::from_generator(file.generator).map_err(from_block_err)?,
            };
            let report = classify_checked(&code, cap)?;
            emit(&cli.out, &report)
        }
        Command::Repro(args) => repro::run(cli, args),
    }
}

/// Classification that surfaces a budget refusal as exit code 2 instead of
/// silently omitting the distance.
fn classify_checked(code: &BlockCode, cap: u64) -> Result<CodeReport, CliError> {
    match code.min_distance(cap) {
        Ok(_) => Ok(code.classify(cap)),
        Err(e) => Err(from_block_err(e)),
    }
}

fn try_block_artifact(code: &BlockCode, analyze: bool, cap: u64) -> Result<BlockArtifact, CliError> {
    if analyze {
        let report = classify_checked(code, cap)?;
        let mut artifact = block_artifact(code, false, cap);
        artifact.report = Some(report);
        Ok(artifact)
    } else {
        Ok(block_artifact(code, false, cap))
    }
}

fn conv_scheme(cli: &Cli, args: &ConvArgs) -> Result<UnitScheme, CliError> {
    match (&args.scheme, &args.named, args.fourier) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path).map_err(usage)?;
            let file: SchemeFile = serde_json::from_str(&text).map_err(usage)?;
            match file.v {
                Some(v) => UnitScheme::from_pair(file.u, v).map_err(usage),
                None => UnitScheme::from_unit(file.u).map_err(usage),
            }
        }
        (None, Some(name), None) => Ok(load_named(name, &cli.field)?.scheme),
        (None, None, Some(n)) => {
            let spec = parse_field(&cli.field, None)?;
            Ok(FourierScheme::new(n, spec).map_err(usage)?.scheme().clone())
        }
        _ => Err(CliError::Usage(
            "exactly one of --scheme, --named, --fourier is required".into(),
        )),
    }
}

fn build_conv(split: &SchemeSplit, args: &ConvArgs, twist: Twist) -> Result<ConvCode, CliError> {
    if let Some(pattern) = args.pattern {
        let p = match pattern {
            PatternArg::Rate34Mem1 => conv::MixedPattern::Rate34Mem1,
            PatternArg::Rate34Mem3 => conv::MixedPattern::Rate34Mem3,
        };
        return conv::mixed_rate_builder(split, p).map_err(from_conv_err);
    }
    let blocks = split.block_count();
    let memory = args.memory.unwrap_or(match blocks {
        2 => 1,
        3 => 2,
        4 => 3,
        _ => 0,
    });
    match (memory, blocks) {
        (1, 2) => {
            let sizes = split.block_sizes();
            if sizes[0] == sizes[1] {
                conv::build_memory1_equal(split, twist).map_err(from_conv_err)
            } else {
                conv::build_memory1_unequal(split, twist).map_err(from_conv_err)
            }
        }
        (2, 3) => conv::build_memory2_three_blocks(split).map_err(from_conv_err),
        (3, 4) => conv::build_memory3(split, twist).map_err(from_conv_err),
        (m, b) => Err(CliError::Usage(format!(
            "unsupported combination: memory {m} with {b} blocks"
        ))),
    }
}

fn run_ldpc(cli: &Cli, args: &LdpcArgs, cap: u64) -> Result<(), CliError> {
    let v = GroupRingElem::parse(&args.element, args.n).map_err(usage)?;
    if let Some(memory) = args.conv_memory {
        let code = match memory {
            1 => grouprings::ldpc_conv_memory1(&v).map_err(usage)?,
            3 => grouprings::ldpc_conv_memory3(&v).map_err(usage)?,
            other => {
                return Err(CliError::Usage(format!(
                    "conv memory {other} not supported (1 or 3)"
                )))
            }
        };
        let ctrl = code.control().expect("builders attach controls");
        let mut four_total = 0u64;
        for t in 0..=ctrl.degree() {
            let census =
                grouprings::short_cycle_census(&ctrl.coefficient_matrix(t), false).map_err(usage)?;
            four_total += census.four_cycles;
        }
        let artifact = ConvArtifact {
            n: code.n(),
            k: code.k(),
            delta: code.delta(),
            mu: code.memory(),
            gsb: code.gsb(),
            noncatastrophic: code.is_noncatastrophic(),
            free_distance: None,
            class: None,
            generator: code.generator().clone(),
            control: code.control().cloned(),
        };
        if four_total > 0 && args.girth != GirthArg::None {
            return Err(CliError::Mismatch(format!(
                "{four_total} four-cycles across control coefficient blocks"
            )));
        }
        return emit(&cli.out, &artifact);
    }
    let size = 4 * v.n();
    let rows = match args.rows.as_deref() {
        None => (0..size / 2).collect::<Vec<_>>(),
        Some(spec_text) => {
            if let Some(count) = spec_text.strip_prefix("first:") {
                let k: usize = count.parse().map_err(usage)?;
                (0..k).collect()
            } else if let Some(count) = spec_text.strip_prefix("random:") {
                let k: usize = count.parse().map_err(usage)?;
                let mut rng = Rng::new(cli.seed);
                let mut pool: Vec<usize> = (0..size).collect();
                for i in (1..pool.len()).rev() {
                    let j = rng.below((i + 1) as u64) as usize;
                    pool.swap(i, j);
                }
                let mut picked: Vec<usize> = pool.into_iter().take(k).collect();
                picked.sort_unstable();
                picked
            } else {
                parse_rows(spec_text)?
            }
        }
    };
    let girth = match args.girth {
        GirthArg::None => GirthRequirement::None,
        GirthArg::Four => GirthRequirement::NoFourCycles,
        GirthArg::Six => GirthRequirement::NoSixCycles,
    };
    let derivation = grouprings::ldpc_derive(&v, &rows, girth).map_err(usage)?;
    if let Some(path) = &args.alist {
        let text = grouprings::to_alist(&derivation.code.check_matrix()).map_err(usage)?;
        std::fs::write(path, text).map_err(usage)?;
    }
    let control = derivation.code.control();
    let artifact = LdpcArtifact {
        n: derivation.code.n(),
        k: derivation.code.dim(),
        four_cycles: derivation.cycle_report.four_cycles,
        six_cycles: derivation.cycle_report.six_cycles,
        max_row_support: grouprings::row_supports(control).into_iter().max().unwrap_or(0),
        max_col_support: grouprings::col_supports(control).into_iter().max().unwrap_or(0),
        report: derivation.code.classify(cap),
    };
    emit(&cli.out, &artifact)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits; parse failures are usage
            // errors with exit code 1.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
