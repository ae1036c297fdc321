//! Runs the bundled verification campaign in-process.

use kmprop::campaign::{parse_campaign, run_campaign, Status, DEFAULT_CAMPAIGN};

fn main() -> kmprop::Result<()> {
    let spec = parse_campaign(DEFAULT_CAMPAIGN)?;
    let report = run_campaign(&spec);
    for r in report.results.iter().filter(|r| r.status != Status::Pass) {
        println!("instance {} {:?}: {:?} {}", r.instance, r.check, r.status, r.reason.as_deref().unwrap_or(""));
    }
    println!("{} passed, {} failed, {} skipped, {} report-only", report.passed, report.failed, report.skipped, report.reported);
    std::process::exit(report.exit_code());
}
