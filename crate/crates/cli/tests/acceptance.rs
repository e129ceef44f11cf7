//! One line per acceptance criterion, followed by its individual checks.
//! Known deviations are printed as `FAIL (known: ...)` and do not fail the run.

use std::process::ExitCode;
use std::time::Instant;

use vortexlab::verify::{run_unit, units, Check, CheckStatus};

const CRITERIA: [(u8, &str, f64); 10] = [
    (1, "polygon rotation law", 10.0),
    (2, "polygon stability threshold", 5.0),
    (3, "three-vortex collapse", 30.0),
    (4, "shifted-perturbation oracle", 60.0),
    (5, "Gaussian filament collapse", 120.0),
    (6, "self-similar triangle regimes", 30.0),
    (7, "traveling waves", 20.0),
    (8, "self-similar amplitude law", 10.0),
    (9, "binormal corner law", 10.0),
    (10, "property suites", 600.0),
];

fn main() -> ExitCode {
    let seed = std::env::var("SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let all = units();
    let mut unexpected = 0usize;
    let start = Instant::now();
    for (n, title, limit) in CRITERIA {
        let t0 = Instant::now();
        let mut checks: Vec<Check> = Vec::new();
        let mut error = None;
        for unit in all.iter().filter(|u| u.criterion == Some(n)) {
            match run_unit(unit, seed) {
                Ok(c) => checks.extend(c),
                Err(e) => error = Some(format!("{}: {e}", unit.name)),
            }
        }
        let secs = t0.elapsed().as_secs_f64();
        let failed = checks.iter().any(|c| c.status == CheckStatus::Fail) || error.is_some() || secs > limit;
        let known: Vec<&str> =
            checks.iter().filter(|c| c.status == CheckStatus::Deviation).filter_map(|c| c.note.as_deref()).collect();
        let head = if failed {
            unexpected += 1;
            "FAIL".to_string()
        } else if !known.is_empty() {
            let mut k = known.clone();
            k.dedup();
            format!("FAIL (known: {})", k.join("; "))
        } else {
            "PASS".to_string()
        };
        println!("criterion {n:>2} {title}: {head} [{secs:.2} s, limit {limit} s]");
        if let Some(e) = error {
            println!("    error: {e}");
        }
        for c in &checks {
            println!("    {}", c.line());
        }
    }
    println!("total {:.1} s, {unexpected} unexpected failures", start.elapsed().as_secs_f64());
    if unexpected == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
