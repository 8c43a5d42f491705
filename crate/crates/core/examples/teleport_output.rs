//! Teleport one input state through a thermal channel. Compares the closed
//! form with the explicit sum over the four Pauli corrections.

use nalgebra::Complex;
use xxz_teleport::channel::channel_density;
use xxz_teleport::model::ModelParams;
use xxz_teleport::oracle::max_abs;
use xxz_teleport::teleport::{
    bell_probabilities, input_density, teleport_closed_form, teleport_depolarizing_sum, InputState,
};

fn print(m: &nalgebra::Matrix4<Complex<f64>>) {
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|z| format!("{:>7.4}{:+.4}i", z.re, z.im)).collect();
        println!("  {}", cells.join("  "));
    }
}

fn main() -> xxz_teleport::Result<()> {
    let rho = channel_density(&ModelParams::new(1.0, 1.5, 0.5)?, 0.4)?;
    let state = InputState::new(1.0, 0.7)?;

    let probs = bell_probabilities(&rho);
    println!("Bell probabilities {:.5?} (sum {:.3})", probs.p, probs.sum());

    let out = teleport_closed_form(&rho, &state);
    println!("output state:");
    print(&out.to_matrix());

    let (rho_in, _) = input_density(&state);
    let diff = max_abs(&(out.to_matrix() - teleport_depolarizing_sum(&rho, &rho_in)));
    println!("max |closed form - Pauli sum| = {diff:.2e}");
    Ok(())
}
