//! `trisum`: triangulation counts, sumset bounds and mixed subdivisions from the shell.
//!
//! Exit status: 0 when the command succeeds and every reported bound holds, 1 when a check
//! fails or a campaign records findings, 2 for usage and input errors.

mod verbs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "trisum", version, about = "Exact triangulation and sumset computations for planar point sets")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for campaigns; 0 uses every core.
    #[arg(long, global = true, env = "TRISUM_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequality {
    /// tr(A+B) >= (sqrt tr(A) + sqrt tr(B))^2.
    Conj1,
    /// tr(A+B) >= 2 tr(A) + 2 tr(B).
    Strong,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Triangle count of a point set.
    Tr { set: PathBuf },
    /// Convex hull, boundary and interior counts.
    Hull {
        set: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Minkowski sum of two sets.
    Sum { a: PathBuf, b: PathBuf },
    /// Evaluates one of the triangle-count inequalities.
    Check { inequality: Inequality, a: PathBuf, b: PathBuf },
    /// Classifies the equality case of tr(A+A) = 4 tr(A).
    Classify { set: PathBuf },
    /// Points of A visible from an exterior point.
    Visible {
        set: PathBuf,
        #[arg(long, value_name = "X,Y")]
        point: String,
    },
    /// The one-extra-point bound for A and A plus a point.
    OneExtra {
        set: PathBuf,
        #[arg(long, value_name = "X,Y")]
        point: String,
    },
    /// Mixed subdivision of A + B for a triangle B, built from a proper star.
    MixedTriangle {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Mixed subdivision of A + B for sets in convex position.
    MixedConvex {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Self-sum subdivision of a triangulated set, in any dimension.
    MixedSelf {
        points: PathBuf,
        /// Simplex exchange file; planar sets are triangulated when omitted.
        #[arg(long)]
        triangulation: Option<PathBuf>,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// A proper star of A for the triangle B.
    Star {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// A longest horizontal-vertical path found by the column sweep.
    Hvpath { set: PathBuf },
    /// The fixed-triangulation family with no large subdivision.
    Counterexample {
        #[arg(long, default_value_t = 145)]
        k: i64,
        /// Check the membership facts and the numeric threshold.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_name = "OUT")]
        svg: Option<PathBuf>,
    },
    /// Doubling bounds for |A+A| and the cover-line bounds.
    Freiman {
        set: PathBuf,
        /// Cover direction; defaults to a longest hull side.
        #[arg(long, value_name = "X,Y")]
        direction: Option<String>,
    },
    /// Line-cover stability for small doubling.
    Stability {
        set: PathBuf,
        #[arg(long, default_value = "1/6")]
        eps: String,
    },
    /// Runs a verification campaign.
    Campaign {
        #[arg(long)]
        config: PathBuf,
    },
    /// Draws a triangulation of a point set, or a serialized mixed subdivision.
    Svg {
        input: PathBuf,
        #[arg(long, value_name = "OUT")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match verbs::run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize"));
            } else {
                print!("{}", out.text);
            }
            if let Some(note) = &out.stderr {
                eprint!("{note}");
            }
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("trisum: {e}");
            ExitCode::from(2)
        }
    }
}
