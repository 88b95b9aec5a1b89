//! Runs every seeded verification suite, as `otlab verify` does.

use otlab::verify::{run_suite, SUITES};

fn main() -> otlab::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for suite in SUITES {
        let r = run_suite(suite, seed, 50)?;
        println!("{suite:<14} pass = {:<5} max_error = {:.3e}", r.pass, r.max_error);
    }
    Ok(())
}
