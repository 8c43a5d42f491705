//! Boundary of the region where the average fidelity beats the classical
//! bound 2/3, in the (J1, h) plane.

use std::f64::consts::FRAC_PI_2;

use xxz_teleport::measures::CLASSICAL_FIDELITY_BOUND;
use xxz_teleport::scan::{contour, AxisSpec, ContourSpec, Param, PointValues};

fn main() -> xxz_teleport::Result<()> {
    for delta in [1.0, 2.0] {
        let spec = ContourSpec {
            axis1: AxisSpec::new(Param::J1, -3.0, 3.0, 25)?,
            axis2: AxisSpec::new(Param::H, 0.0, 4.0, 81)?,
            base: PointValues { j1: 0.0, delta, h: 0.0, temperature: 0.2, theta: FRAC_PI_2, phi: 0.0 },
            level: CLASSICAL_FIDELITY_BOUND,
        };
        let result = contour(&spec)?;
        println!("Delta = {delta}: {}", result.summary());
        for (j1, h) in &result.points {
            println!("  J1 = {j1:>5.2}  h = {h:.4}");
        }
    }
    Ok(())
}
