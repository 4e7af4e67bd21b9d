//! Command-line front door: analyze one state, generate matrix files,
//! sweep parameter grids to CSV, and check the built-in numeric anchors.
//!
//! Exit codes: 0 success, 1 anchor verification failure, 2 usage or
//! input error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sepscope::criteria::{full_report, Verdict};
use sepscope::io::{
    emit_density_matrix, emit_report_csv, params_string, parse_density_matrix, rows_from_sweep,
    sig12, ReportRow,
};
use sepscope::states::{Family, StateSpec};
use sepscope::truncation::{run_sweep, SweepPlan};
use sepscope::verify;

#[derive(Parser)]
#[command(
    name = "sepscope",
    version,
    about = "Separability screening for bipartite quantum states: realignment and partial-transpose criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run both criteria on one state and print the report
    Analyze(AnalyzeArgs),
    /// Build a family state and emit it in the matrix file format
    Generate(GenerateArgs),
    /// Evaluate a parameter/dimension grid and emit CSV
    Sweep(SweepArgs),
    /// Check every built-in numeric anchor and report pass/fail
    #[command(name = "verify-paper")]
    VerifyPaper,
}

/// Scalar parameters shared by every family-building subcommand. Each set
/// flag is assigned to the state spec under its own name.
#[derive(Args, Clone, Default)]
struct FamilyFlags {
    /// State family name (e.g. rho_alpha, werner_mc)
    #[arg(long)]
    family: Option<String>,
    /// alpha parameter
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Mixing weight t
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Werner parameter c
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Block dimension m
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Tail weight eps
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    /// First diagonal weight
    #[arg(long, allow_negative_numbers = true)]
    q1: Option<f64>,
    /// Second diagonal weight
    #[arg(long, allow_negative_numbers = true)]
    q2: Option<f64>,
    /// Third diagonal weight
    #[arg(long, allow_negative_numbers = true)]
    q3: Option<f64>,
    /// Fourth diagonal weight
    #[arg(long, allow_negative_numbers = true)]
    q4: Option<f64>,
    /// Visibility parameter p
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    /// Geometric tail ratio
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
}

impl FamilyFlags {
    fn pairs(&self) -> Vec<(&'static str, f64)> {
        [
            ("alpha", self.alpha),
            ("t", self.t),
            ("c", self.c),
            ("m", self.m),
            ("eps", self.eps),
            ("q1", self.q1),
            ("q2", self.q2),
            ("q3", self.q3),
            ("q4", self.q4),
            ("p", self.p),
            ("r", self.r),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }

    fn spec(&self, dim: Option<usize>) -> Result<StateSpec, String> {
        let name = self
            .family
            .as_deref()
            .ok_or("no input given: pass --family <name> (or --file <path> where accepted)")?;
        let family: Family = name.parse().map_err(|e| format!("{e}"))?;
        let mut spec = StateSpec::new(family);
        for (key, value) in self.pairs() {
            spec.assign(key, value).map_err(|e| format!("{e}"))?;
        }
        if let Some(d) = dim {
            spec = spec.with_dim(d);
        }
        Ok(spec)
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Matrix file to analyze (alternative to --family)
    #[arg(long)]
    file: Option<String>,
    #[command(flatten)]
    flags: FamilyFlags,
    /// Local truncation dimension
    #[arg(long)]
    dim: Option<usize>,
    /// Also write the report as a one-row CSV to this path
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    flags: FamilyFlags,
    /// Local truncation dimension
    #[arg(long)]
    dim: Option<usize>,
    /// Write to this path instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    flags: FamilyFlags,
    /// Grid over one parameter as name:lo:hi:n (repeatable)
    #[arg(long)]
    grid: Vec<String>,
    /// Truncation dimensions, comma separated (e.g. 6,8,12)
    #[arg(long, value_delimiter = ',')]
    dim: Vec<usize>,
    /// Write CSV to this path instead of stdout
    #[arg(long)]
    csv: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Generate(args) => generate(args),
        Command::Sweep(args) => sweep(args),
        Command::VerifyPaper => verify_paper(),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn human_verdict(v: Verdict, reason_entangled: &str) -> String {
    match v {
        Verdict::Entangled => format!("ENTANGLED ({reason_entangled})"),
        Verdict::Inconclusive => "inconclusive (criterion is necessary-only)".into(),
    }
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode, String> {
    if args.file.is_some() && args.flags.family.is_some() {
        return Err("pass exactly one of --file or --family, not both".into());
    }
    let (rho, family_label, params_label, dim_label) = if let Some(path) = &args.file {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        let rho = parse_density_matrix(&text).map_err(|e| format!("{path}: {e}"))?;
        let dims = rho.dims();
        let dim = dims.dim_a().max(dims.dim_b());
        (rho, "file".to_string(), path.clone(), dim)
    } else {
        let spec = args.flags.spec(args.dim)?;
        let rho = spec.build().map_err(|e| format!("{e}"))?;
        let params: Vec<(String, f64)> = spec
            .params
            .iter()
            .map(|(k, v)| (k.clone(), *v))
            .collect();
        let dim = spec.effective_dim().map_err(|e| format!("{e}"))?;
        (rho, spec.family.to_string(), params_string(&params), dim)
    };

    let report = full_report(&rho).map_err(|e| format!("{e}"))?;
    let dims = rho.dims();
    let state_label = if params_label.is_empty() {
        family_label.clone()
    } else {
        format!("{family_label} ({params_label})")
    };
    println!("state                {state_label}");
    println!("dims                 {} x {}", dims.dim_a(), dims.dim_b());
    println!(
        "realign trace norm   {}",
        sig12(report.realignment_trace_norm)
    );
    println!("ccn                  {}", sig12(report.ccn));
    println!("ppt min eigenvalue   {}", sig12(report.ppt_min_eigenvalue));
    println!("symmetric            {}", report.is_symmetric);
    println!(
        "rccn verdict         {}",
        human_verdict(report.rccn_verdict, "norm > 1")
    );
    println!(
        "ppt verdict          {}",
        human_verdict(report.ppt_verdict, "negative partial transpose")
    );

    if let Some(path) = &args.csv {
        let row = ReportRow {
            family: family_label,
            params: params_label,
            dim: dim_label,
            report,
        };
        std::fs::write(path, emit_report_csv(&[row]))
            .map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(args: GenerateArgs) -> Result<ExitCode, String> {
    let spec = args.flags.spec(args.dim)?;
    let rho = spec.build().map_err(|e| format!("{e}"))?;
    let params: Vec<(String, f64)> = spec.params.iter().map(|(k, v)| (k.clone(), *v)).collect();
    let mut text = format!("# {} {}\n", spec.family, params_string(&params));
    text.push_str(&emit_density_matrix(&rho));
    match &args.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_grid(raw: &str) -> Result<(String, Vec<f64>), String> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 4 {
        return Err(format!("grid {raw:?} must have the form name:lo:hi:n"));
    }
    let name = parts[0].trim();
    if name.is_empty() {
        return Err(format!("grid {raw:?} has an empty parameter name"));
    }
    let lo: f64 = parts[1]
        .parse()
        .map_err(|_| format!("grid {raw:?}: bad lower bound {:?}", parts[1]))?;
    let hi: f64 = parts[2]
        .parse()
        .map_err(|_| format!("grid {raw:?}: bad upper bound {:?}", parts[2]))?;
    let n: usize = parts[3]
        .parse()
        .map_err(|_| format!("grid {raw:?}: bad point count {:?}", parts[3]))?;
    if n == 0 {
        return Err(format!("grid {raw:?} is empty (n must be at least 1)"));
    }
    let points = if n == 1 {
        vec![lo]
    } else {
        (0..n)
            .map(|i| lo + (hi - lo) * (i as f64) / ((n - 1) as f64))
            .collect()
    };
    Ok((name.to_string(), points))
}

#[cfg(feature = "parallel")]
fn init_thread_pool() -> Result<(), String> {
    if let Ok(raw) = std::env::var("SEPSCOPE_THREADS") {
        let n: usize = raw
            .parse()
            .map_err(|_| format!("SEPSCOPE_THREADS must be a positive integer, got {raw:?}"))?;
        if n == 0 {
            return Err("SEPSCOPE_THREADS must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("cannot size the thread pool: {e}"))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn init_thread_pool() -> Result<(), String> {
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<ExitCode, String> {
    init_thread_pool()?;
    let template = args.flags.spec(None)?;
    let family = template.family;
    let varying = args
        .grid
        .iter()
        .map(|raw| parse_grid(raw))
        .collect::<Result<Vec<_>, _>>()?;
    let dims = if args.dim.is_empty() {
        vec![template.effective_dim().map_err(|e| format!("{e}"))?]
    } else {
        args.dim.clone()
    };
    let plan = SweepPlan {
        template,
        varying,
        dims,
    };
    let result = run_sweep(&plan).map_err(|e| format!("{e}"))?;
    for row in &result.rows {
        if let Some(message) = &row.error {
            eprintln!(
                "warning: skipped {} dim={}: {message}",
                params_string(&row.params),
                row.dim
            );
        }
    }
    let csv = emit_report_csv(&rows_from_sweep(family, &result));
    match &args.csv {
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| format!("cannot write {path}: {e}"))?
        }
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_paper() -> Result<ExitCode, String> {
    let anchors = verify::run_all().map_err(|e| format!("{e}"))?;
    let mut passed = 0usize;
    for anchor in &anchors {
        let status = if anchor.passed() {
            passed += 1;
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "{status}  {:<28} computed {} | expected {} | tol {:.0e}  ({})",
            anchor.id,
            sig12(anchor.computed),
            sig12(anchor.expected),
            anchor.tolerance,
            anchor.detail
        );
    }
    println!("{passed}/{} anchors passed", anchors.len());
    if passed == anchors.len() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
