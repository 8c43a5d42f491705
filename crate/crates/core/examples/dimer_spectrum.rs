//! Print the four dimer energies for every Ising neighbour pair, and the
//! normalized Boltzmann weights at a few temperatures.
//!
//! ```bash
//! cargo run --example dimer_spectrum
//! ```

use xxz_teleport::model::{beta_from_temperature, boltzmann_weight, dimer_spectrum, IsingPair, ModelParams};

fn main() -> xxz_teleport::Result<()> {
    let params = ModelParams::new(1.0, 1.5, 0.5)?;
    println!("J1 = {}, Delta = {}, h = {}", params.j1, params.delta, params.h);
    for pair in IsingPair::ALL {
        let e = dimer_spectrum(&params, pair).energies;
        println!("m = {:+}: energies {:>8.4} {:>8.4} {:>8.4} {:>8.4}", pair.sum(), e[0], e[1], e[2], e[3]);
    }

    for t in [0.01, 0.5, 5.0] {
        let beta = beta_from_temperature(t)?;
        let ws: Vec<f64> = IsingPair::ALL
            .iter()
            .map(|&p| boltzmann_weight(&params, beta, p).map(|w| w.ln()))
            .collect::<Result<_, _>>()?;
        println!("T = {t:<5} ln w: {:?}", ws.iter().map(|w| format!("{w:.3}")).collect::<Vec<_>>());
    }
    Ok(())
}
