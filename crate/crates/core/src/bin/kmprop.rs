use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kmprop::campaign::{self, CampaignReport, Status};
use kmprop::gcm::{classify, parse_gcm_json, GeneralizedCartanMatrix};
use kmprop::roots::root_dump;

/// Exact finite-level checks for Kac-Moody root systems and pro-p Sylow models.
#[derive(Parser)]
#[command(name = "kmprop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a generalized Cartan matrix given as JSON.
    Classify {
        gcm_file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List the positive roots up to a height.
    Roots {
        gcm_file: PathBuf,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification campaign (the bundled default when no file is given).
    Verify {
        campaign_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Recompute the campaign stored in a previous report and compare.
        #[arg(long, conflicts_with = "campaign_file")]
        verify_report: Option<PathBuf>,
    },
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read_gcm(path: &PathBuf) -> Result<GeneralizedCartanMatrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_gcm_json(&text).map_err(|e| e.to_string())
}

fn print_summary(report: &CampaignReport) {
    for r in &report.results {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
            Status::Report => "report",
        };
        let inst = &report.campaign.instances[r.instance];
        let shape = match (&inst.gcm, inst.m, inst.k, inst.h) {
            (Some(g), _, _, Some(h)) => format!("gcm={} q={} H={h}", serde_json::to_string(g).unwrap_or_default(), inst.q),
            (_, Some(m), Some(k), _) => format!("m={m} k={k} q={}", inst.q),
            _ => String::new(),
        };
        let reason = r.reason.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
        println!("#{:<3} {:<11} {:<8} {shape}{reason}", r.instance, serde_json::to_value(r.check).expect("name").as_str().unwrap_or("").to_string(), status);
    }
    println!(
        "{} passed, {} failed, {} skipped, {} report-only",
        report.passed, report.failed, report.skipped, report.reported
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { gcm_file, json } => {
            let gcm = match read_gcm(&gcm_file) {
                Ok(g) => g,
                Err(e) => return config_error(e),
            };
            let ty = classify(&gcm);
            if json {
                println!("{}", serde_json::to_string(&ty).expect("serializable"));
            } else if let Some(c) = ty.class() {
                println!("{c}");
            } else {
                println!("decomposable");
                for b in &ty.blocks {
                    let labels: Vec<&str> = b.indices.iter().map(|&i| gcm.label(i)).collect();
                    println!("  {{{}}}: {}", labels.join(", "), b.class);
                }
            }
            ExitCode::SUCCESS
        }
        Command::Roots { gcm_file, height, json } => {
            if height == 0 {
                return config_error("--height must be at least 1");
            }
            let gcm = match read_gcm(&gcm_file) {
                Ok(g) => g,
                Err(e) => return config_error(e),
            };
            let dump = root_dump(&gcm, height);
            if json {
                println!("{}", serde_json::to_string_pretty(&dump).expect("serializable"));
            } else {
                for r in &dump {
                    println!("{:>3}  {:?}  {}", r.height, r.coords, serde_json::to_value(r.status).expect("tag").as_str().unwrap_or(""));
                }
                let imaginary = dump.iter().filter(|r| r.status == kmprop::roots::RootTag::Imaginary).count();
                println!("{} positive roots, {} imaginary", dump.len(), imaginary);
            }
            ExitCode::SUCCESS
        }
        Command::Verify { campaign_file, out, seed, cap, json, verify_report } => {
            if let Some(path) = verify_report {
                let stored: CampaignReport = match std::fs::read_to_string(&path)
                    .map_err(|e| e.to_string())
                    .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))
                {
                    Ok(r) => r,
                    Err(e) => return config_error(format!("{}: {e}", path.display())),
                };
                if let Err(e) = campaign::validate(&stored.campaign) {
                    return config_error(e);
                }
                let fresh = campaign::run_campaign(&stored.campaign);
                let (a, b) = (stored.normalized_results(), fresh.normalized_results());
                let mismatches: Vec<usize> = (0..a.len().max(b.len())).filter(|&i| a.get(i) != b.get(i)).collect();
                if mismatches.is_empty() {
                    println!("report reproduced: {} results match", a.len());
                    return ExitCode::from(fresh.exit_code() as u8);
                }
                for i in &mismatches {
                    eprintln!("mismatch in result {i}");
                }
                return ExitCode::from(1);
            }
            let text = match &campaign_file {
                Some(p) => match std::fs::read_to_string(p) {
                    Ok(t) => t,
                    Err(e) => return config_error(format!("{}: {e}", p.display())),
                },
                None => campaign::DEFAULT_CAMPAIGN.to_string(),
            };
            let mut spec = match campaign::parse_campaign(&text) {
                Ok(s) => s,
                Err(e) => return config_error(e),
            };
            if let Some(s) = seed {
                spec.seed = s;
            }
            if let Some(c) = cap {
                spec.cap = c;
            }
            if let Err(e) = campaign::validate(&spec) {
                return config_error(e);
            }
            let report = campaign::run_campaign(&spec);
            if let Some(path) = out {
                let body = serde_json::to_string_pretty(&report).expect("serializable");
                if let Err(e) = std::fs::write(&path, body) {
                    return config_error(format!("{}: {e}", path.display()));
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print_summary(&report);
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
