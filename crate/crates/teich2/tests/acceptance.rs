//! Acceptance run: one PASS/FAIL line per criterion at the default tolerances.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use teich2::validate::{criterion, Check, ValidateConfig, CRITERIA};
use teich2_core::{ball, generators, BallOptions, DomainGrid, OctagonParams};

fn time_limit(k: u8) -> Option<Duration> {
    match k {
        1 => Some(Duration::from_secs(1)),
        2 | 8 => Some(Duration::from_secs(5)),
        10 => Some(Duration::from_secs(60)),
        _ => None,
    }
}

fn worst(checks: &[Check]) -> Option<&Check> {
    checks.iter().max_by(|x, y| {
        let score = |c: &Check| {
            if c.passed {
                if c.tolerance > 0.0 {
                    c.max_residual / c.tolerance
                } else {
                    0.0
                }
            } else {
                f64::INFINITY
            }
        };
        score(x).total_cmp(&score(y))
    })
}

fn main() -> ExitCode {
    let cfg = ValidateConfig::default();
    let grid = match DomainGrid::new(cfg.n_a, cfg.n_alpha, cfg.margin) {
        Ok(g) => g,
        Err(e) => {
            println!("FAIL grid: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failures = 0;
    for (k, title) in CRITERIA {
        let start = Instant::now();
        let result = criterion(k, &cfg, &grid);
        let mut elapsed = start.elapsed();
        let mut notes = Vec::new();
        let mut ok = match &result {
            Ok(checks) => !checks.is_empty() && checks.iter().all(|c| c.passed),
            Err(_) => false,
        };
        if let Some(limit) = time_limit(k) {
            if elapsed > limit {
                ok = false;
                notes.push(format!("over {limit:?}"));
            }
        }
        if k == 11 {
            let start = Instant::now();
            let size = ball(&generators(&OctagonParams::regular()), 4, BallOptions::default())
                .map(|b| b.len());
            let ball4 = start.elapsed();
            elapsed += ball4;
            notes.push(format!("ball(4) = {size:?} in {ball4:.2?}"));
            if ball4 > Duration::from_secs(10) || size.is_err() {
                ok = false;
            }
        }
        let detail = match &result {
            Ok(checks) => match worst(checks) {
                Some(c) => format!(
                    "worst {} = {:.3e} (tol {:.1e})",
                    c.name, c.max_residual, c.tolerance
                ),
                None => "no checks".into(),
            },
            Err(e) => format!("error: {e}"),
        };
        if let Ok(checks) = &result {
            for c in checks.iter().filter(|c| !c.passed) {
                notes.push(format!("{} = {:.3e} > {:.1e}", c.name, c.max_residual, c.tolerance));
            }
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        let notes = if notes.is_empty() {
            String::new()
        } else {
            format!(" [{}]", notes.join("; "))
        };
        println!("{verdict} {k:>2} {title}: {detail}, {elapsed:.2?}{notes}");
        failures += usize::from(!ok);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
