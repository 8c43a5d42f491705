//! Finite rings approach the infinite-chain channel geometrically in the
//! number of cells.

use xxz_teleport::channel::channel_density;
use xxz_teleport::model::ModelParams;
use xxz_teleport::oracle::{
    finite_ring_channel_density, finite_ring_enumeration, finite_ring_error_bound, max_abs,
    transfer_eigenvalue_ratio, RingSpec,
};

fn main() -> xxz_teleport::Result<()> {
    let params = ModelParams::new(1.0, 1.5, 1.0)?;
    let t = 1.0;
    let limit = channel_density(&params, t)?.to_matrix();
    let ratio = transfer_eigenvalue_ratio(&params, t)?;
    println!("|lambda-/lambda+| = {ratio:.4}");
    println!("{:>3} {:>11} {:>11}", "N", "deviation", "bound");
    for n in [2, 4, 6, 8, 12, 16, 24] {
        let ring = finite_ring_channel_density(&params, t, RingSpec::new(n)?)?;
        let dev = max_abs(&(ring.to_matrix() - limit));
        println!("{n:>3} {dev:>11.3e} {:>11.3e}", finite_ring_error_bound(ratio, n));
    }

    let ring = RingSpec::new(6)?;
    let a = finite_ring_channel_density(&params, t, ring)?.to_matrix();
    let b = finite_ring_enumeration(&params, t, ring)?.to_matrix();
    println!("N = 6 matrix power vs 2^N enumeration: {:.2e}", max_abs(&(a - b)));
    Ok(())
}
