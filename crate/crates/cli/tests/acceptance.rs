//! Acceptance battery: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! All comparisons are exact (rational arithmetic); the only tolerances are the wall-clock
//! budgets in `BUDGET_SECS`. Criterion 1 also drives the `cornerkit` binary end to end.

use std::process::{Command, ExitCode};

use cornerkit::battery::{run_criterion, BatteryConfig, BUDGET_SECS};
use serde_json::Value;

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cornerkit"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run cornerkit: {e}"))?;
    let code = out.status.code().unwrap_or(-1);
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

/// The worked 2x4 example through the binary: one corner vertex, and a tight CSV row.
fn cli_worked_example() -> Result<(), String> {
    let (code, out) = cli(&["corner", "--instance", "paper2x4"])?;
    if code != 0 {
        return Err(format!("corner exited {code}"));
    }
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let want = serde_json::json!([["0", "1", "1", "3"]]);
    if v["vertices"] != want {
        return Err(format!("corner vertices {}", v["vertices"]));
    }
    let (code, out) = cli(&["verify", "thm1", "--instance", "paper2x4", "--format", "csv"])?;
    if code != 0 {
        return Err(format!("verify exited {code}"));
    }
    let row = out.lines().nth(1).unwrap_or_default();
    if row != "paper2x4,thm1,2,0,10,1,20,1,true,true" {
        return Err(format!("csv row {row:?}"));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cfg = BatteryConfig::default();
    let mut failed = 0;
    for id in 1..=9 {
        let mut res = run_criterion(id, &cfg);
        if id == 1 {
            match cli_worked_example() {
                Ok(()) => res.detail.push_str("; cli corner/verify ok"),
                Err(e) => {
                    res.checks_passed = false;
                    res.detail = format!("cli: {e}");
                }
            }
        }
        assert_eq!(res.budget.as_secs(), BUDGET_SECS[id - 1]);
        println!("{}", res.line());
        if !res.passed() {
            failed += 1;
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
