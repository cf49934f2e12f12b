//! The twelve acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails. Positional arguments filter criteria by
//! id or name, e.g. `cargo test --test acceptance -- pentagon 9`.

use std::process::ExitCode;

use ncgraph::suite::{criteria, render_table, SuiteConfig};

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria() {
        if !filters.is_empty() && !filters.iter().any(|f| c.matches(f)) {
            continue;
        }
        let report = c.run(&cfg);
        ran += 1;
        println!(
            "{} criterion {:>2} {:<24} {:>8.1} s",
            if report.pass() { "PASS" } else { "FAIL" },
            report.id,
            report.name,
            report.seconds
        );
        if !report.pass() {
            failed += 1;
            print!("{}", render_table(std::slice::from_ref(&report)));
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
