use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gcmwb_cli::{dispatch, parse_job, render, EXIT_ERROR};
use gcmwb_core::config::EngineConfig;
use gcmwb_core::report::ReportFormat;

/// Checks uniform bounds for generalized Cohen-Macaulay local rings given
/// as polynomial quotients localized at the origin.
#[derive(Parser, Debug)]
#[command(name = "gcmwb", version)]
struct Args {
    /// Job file; standard input when omitted.
    #[arg(long, env = "GCMWB_INPUT")]
    input: Option<PathBuf>,
    /// Report format.
    #[arg(long, env = "GCMWB_FORMAT", default_value = "text", value_parser = ["json", "csv", "text"])]
    format: String,
    #[arg(long, env = "GCMWB_SEED")]
    seed: Option<u64>,
    /// Largest m-adic truncation order.
    #[arg(long, env = "GCMWB_CAP_TRUNC")]
    cap_trunc: Option<u32>,
    /// Largest n tried when confirming the multiplicity.
    #[arg(long, env = "GCMWB_CAP_FIT")]
    cap_fit: Option<u32>,
    /// Working horizon for graded computations, overriding the bound.
    #[arg(long, env = "GCMWB_HORIZON")]
    horizon: Option<u32>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("stdin: {e}"))
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("gcmwb: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let spec = match parse_job(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("gcmwb: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let mut cfg = EngineConfig::default();
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.cap_trunc {
        cfg.truncation_cap = n;
    }
    if let Some(n) = args.cap_fit {
        cfg.fit_cap = n;
    }
    cfg.horizon = args.horizon;
    let format: ReportFormat = args.format.parse().expect("clap restricts the value");
    let report = dispatch(&spec, &cfg);
    print!("{}", render(&report, format));
    ExitCode::from(report.exit_code as u8)
}
