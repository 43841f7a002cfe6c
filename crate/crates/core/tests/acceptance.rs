//! Runs the fourteen acceptance criteria and prints one line per
//! criterion. Exits non-zero when any criterion fails.
//!
//! `PFAFFKIT_CACHE_DIR` enables the census cache.

use std::process::ExitCode;
use std::time::Instant;

use pfaffkit::verifyctl::{CheckStatus, SuiteConfig, SuiteContext, VerificationReport, CHECKS, REPORT_SCHEMA_VERSION};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        for c in CHECKS {
            println!("criterion_{:02}_{}: test", c.criterion, c.name);
        }
        println!("determinism: test");
        return ExitCode::SUCCESS;
    }
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    let selected = |name: &str| filters.is_empty() || filters.iter().any(|f| name.contains(f.as_str()) || "acceptance".contains(f.as_str()));
    let checks: Vec<_> = CHECKS.iter().filter(|c| selected(&format!("criterion_{:02}_{}", c.criterion, c.name))).collect();
    let run_determinism = selected("determinism");
    if checks.is_empty() && !run_determinism {
        return ExitCode::SUCCESS;
    }

    let ctx = SuiteContext::new(SuiteConfig::default()).expect("suite configuration");
    if checks.iter().any(|c| c.geometry) {
        let start = Instant::now();
        match ctx.geometry() {
            Ok(g) => println!(
                "census p = {} built in {} ms ({} points of X sampled{})",
                g.census.p,
                start.elapsed().as_millis(),
                g.points.len(),
                if g.census.from_cache { ", census from cache" } else { "" }
            ),
            Err(e) => println!("census failed: {e}"),
        }
    }

    let mut failed = 0;
    for c in &checks {
        let r = ctx.run_check(c);
        let tag = match r.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Unknown => "UNKNOWN",
        };
        if r.status != CheckStatus::Pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<7} {:<20} {:>6} ms / {:>6} ms  {}",
            c.criterion, tag, c.name, r.wall_ms, r.budget_ms, r.detail
        );
    }

    if run_determinism {
        let ok = determinism();
        if !ok {
            failed += 1;
        }
        println!("determinism  {:<7} two runs of the seeded checks give identical reports", if ok { "PASS" } else { "FAIL" });
    }

    println!("{} run, {failed} not passing", checks.len() + run_determinism as usize);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Two fresh contexts with equal seeds must produce identical reports.
fn determinism() -> bool {
    let names = ["pencil", "semi_invariance", "smoothness", "fixed_point_weights"];
    let run = || {
        let ctx = SuiteContext::new(SuiteConfig {
            cache_dir: None,
            ..SuiteConfig::default()
        })
        .expect("suite configuration");
        VerificationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            seed: ctx.config.seed,
            primes: ctx.config.primes.clone(),
            fixture_checksum: ctx.registry.checksum().into(),
            checks: names.iter().map(|n| ctx.run_named(n).expect("known check")).collect(),
        }
        .without_timings()
        .to_json()
    };
    run() == run()
}
