//! The thermal X-state channel of one dimer, with its entanglement, as the
//! temperature rises.

use xxz_teleport::channel::channel_density;
use xxz_teleport::measures::channel_concurrence;
use xxz_teleport::model::ModelParams;

fn main() -> xxz_teleport::Result<()> {
    let params = ModelParams::new(1.0, 2.0, 0.0)?;
    println!("{:>6} {:>9} {:>9} {:>9} {:>9} {:>7}", "T", "r11", "r22", "r23", "r44", "C_ch");
    for t in [0.05, 0.2, 0.5, 1.0, 1.07, 1.2, 3.0] {
        let rho = channel_density(&params, t)?;
        println!(
            "{t:>6.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>7.4}",
            rho.r11,
            rho.r22,
            rho.r23,
            rho.r44,
            channel_concurrence(&rho)
        );
    }
    Ok(())
}
