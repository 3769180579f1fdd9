use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cwc_core::bounds;
use cwc_core::format::read_file;
use cwc_core::pipeline::{
    construct_ag, construct_rs, AgAugment, AgParams, Construction, CurveChoice, RsAugment, RsParams, DEFAULT_BUDGET,
};
use cwc_core::tables::{manifest, run_row, Verdict};
use cwc_core::verify::verify_claim;
use cwc_core::CwcError;

#[derive(Parser)]
#[command(name = "cwc", version, about = "Explicit binary constant weight codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RsAugmentArg {
    None,
    T21,
    T22,
}

#[derive(Clone, Copy, ValueEnum)]
enum AgAugmentArg {
    None,
    T31,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveArg {
    Elliptic,
    Hermitian,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from Reed-Solomon evaluation words.
    ConstructRs {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, value_enum, default_value = "none")]
        augment: RsAugmentArg,
        /// Number of words to pack on top of the base code (t22 only).
        #[arg(long)]
        extra: Option<usize>,
        #[arg(long)]
        max_cols: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a code from functions on an elliptic or Hermitian curve.
    ConstructAg {
        #[arg(long, value_enum)]
        curve: CurveArg,
        /// Field characteristic (elliptic).
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Weierstrass coefficients a1,a2,a3,a4,a6; omitted means the first maximal curve.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<i64>>,
        /// Hermitian parameter q, giving a curve over the field of q^2 elements.
        #[arg(long)]
        q: Option<u32>,
        /// Use only the first N affine points.
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value = "none")]
        augment: AgAugmentArg,
        #[arg(long)]
        extra: Option<usize>,
        #[arg(long)]
        max_cols: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a .cwc file from scratch.
    Verify { file: PathBuf },
    /// Gilbert, Graham-Sloane and Johnson bounds with traces.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        w: u64,
    },
    /// Rebuild every published table row and print a verdict for each.
    ReproduceTables,
}

fn emit(c: &Construction, out: Option<PathBuf>) -> Result<ExitCode, CwcError> {
    if let Some(report) = &c.report {
        for line in report.comment_lines() {
            eprintln!("{line}");
        }
    }
    if let Some(path) = out {
        std::fs::write(&path, c.to_cwc())?;
        eprintln!("wrote {}", path.display());
    }
    println!("{}", c.summary());
    if let Some(reason) = c.certificate.failure_reason() {
        eprintln!("verification failed: {reason}");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CwcError> {
    match cli.command {
        Command::ConstructRs { p, m, r, w, augment, extra, max_cols, budget, out } => {
            let augment = match augment {
                RsAugmentArg::None => RsAugment::None,
                RsAugmentArg::T21 => RsAugment::T21,
                RsAugmentArg::T22 => RsAugment::T22,
            };
            let mut params = RsParams::new(p, m, r, w, augment);
            params.extra = extra;
            params.max_cols = max_cols;
            params.budget = budget;
            emit(&construct_rs(&params)?, out)
        }
        Command::ConstructAg { curve, p, m, coeffs, q, points, s, augment, extra, max_cols, budget, out } => {
            let choice = match curve {
                CurveArg::Elliptic => {
                    let p =
                        p.ok_or_else(|| CwcError::InvalidParameter("--p is required for elliptic curves".into()))?;
                    match coeffs {
                        Some(c) => {
                            let coeffs: [i64; 5] = c.try_into().map_err(|c: Vec<i64>| {
                                CwcError::InvalidParameter(format!("--coeffs needs 5 values, got {}", c.len()))
                            })?;
                            CurveChoice::Elliptic { p, m, coeffs }
                        }
                        None => CurveChoice::EllipticMaximal { p, m },
                    }
                }
                CurveArg::Hermitian => {
                    let q =
                        q.ok_or_else(|| CwcError::InvalidParameter("--q is required for Hermitian curves".into()))?;
                    CurveChoice::Hermitian { q }
                }
            };
            let augment = match augment {
                AgAugmentArg::None => AgAugment::None,
                AgAugmentArg::T31 => AgAugment::T31,
            };
            let mut params = AgParams::new(choice, s, augment);
            params.points = points;
            params.extra = extra;
            params.max_cols = max_cols;
            params.budget = budget;
            emit(&construct_ag(&params)?, out)
        }
        Command::Verify { file } => {
            let book = read_file(&file)?;
            let cert = verify_claim(&book);
            for line in cert.comment_lines() {
                println!("# {line}");
            }
            println!("{}", cert.summary());
            match cert.failure_reason() {
                Some(reason) => {
                    println!("FAIL");
                    eprintln!("error: {reason}");
                    Ok(ExitCode::FAILURE)
                }
                None => {
                    println!("PASS");
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Bounds { n, d, w } => {
            print!("{}", bounds::report(n, d, w)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproduceTables => {
            let mut counts = [0usize; 4];
            for row in manifest() {
                let outcome = run_row(&row);
                for line in outcome.lines() {
                    println!("{line}");
                }
                counts[match outcome.verdict {
                    Verdict::Match => 0,
                    Verdict::Better => 1,
                    Verdict::Discrepancy => 2,
                    Verdict::OutOfScope => 3,
                }] += 1;
            }
            println!(
                "summary: {} MATCH, {} BETTER, {} DISCREPANCY, {} OUT-OF-SCOPE",
                counts[0], counts[1], counts[2], counts[3]
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
