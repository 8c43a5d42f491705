//! Average fidelity against temperature for several fields, written as CSV.
//!
//! ```bash
//! cargo run --example fidelity_curves > curves.csv
//! ```

use std::collections::BTreeMap;
use std::io;

use xxz_teleport::scan::{sweep, write_csv, AxisSpec, InputMode, Param, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SweepSpec {
        axis1: AxisSpec::new(Param::H, 0.0, 3.0, 4)?,
        axis2: Some(AxisSpec::new(Param::T, 0.05, 2.0, 40)?),
        fixed: BTreeMap::from([(Param::J1, 1.0), (Param::Delta, 2.0)]),
        input: InputMode::Maximal,
    };
    let rows = sweep(&spec)?;
    write_csv(io::stdout().lock(), &rows)?;

    let best = rows.iter().max_by(|a, b| a.measures.f_avg.total_cmp(&b.measures.f_avg)).unwrap();
    eprintln!(
        "best F_A = {:.4} at h = {}, T = {:.3}",
        best.measures.f_avg, best.point.h, best.point.temperature
    );
    Ok(())
}
