//! Run every oracle cross-check on seeded random draws and print the report.
//!
//! ```bash
//! cargo run --release --example validate_oracles -- 7 5000
//! ```

use std::env;
use std::process::ExitCode;

use xxz_teleport::validate::validate;

fn main() -> ExitCode {
    let mut args = env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    match validate(seed, samples) {
        Ok(report) => {
            println!("{report}");
            if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
