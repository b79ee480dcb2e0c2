//! Runs the twelve acceptance criteria and prints one PASS/FAIL line each.

use latori_core::selftest::run_all;

fn main() {
    let results = run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
