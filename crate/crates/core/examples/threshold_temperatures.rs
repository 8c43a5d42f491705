//! Threshold temperatures where the channel and output entanglement vanish.

use std::f64::consts::FRAC_PI_2;

use xxz_teleport::scan::{threshold, Param, PointValues, Quantity};

fn main() -> xxz_teleport::Result<()> {
    println!("{:>5} {:>4} {:>8} {:>8}", "Delta", "h", "T(C_ch)", "T(C_out)");
    for delta in [1.1, 2.0] {
        for h in [0.0, 2.0] {
            let base = PointValues { j1: 1.0, delta, h, temperature: 1.0, theta: FRAC_PI_2, phi: 0.0 };
            let ch = threshold(Quantity::CChZero, Param::T, &base, (0.3, 2.0))?;
            let out = threshold(Quantity::COutZero, Param::T, &base, (0.01, 1.0))?;
            println!("{delta:>5} {h:>4} {ch:>8.4} {out:>8.4}");
        }
    }
    Ok(())
}
