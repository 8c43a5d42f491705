//! Entanglement and fidelity figures of merit.

use crate::channel::XStateDensity;
use crate::teleport::{teleport_closed_form, InputState, OutputState};

/// Best average fidelity reachable by measure-and-resend strategies.
pub const CLASSICAL_FIDELITY_BOUND: f64 = 2.0 / 3.0;

/// All scalar measures at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSet {
    pub c_in: f64,
    pub c_ch: f64,
    pub c_out: f64,
    pub fidelity: f64,
    pub f_avg: f64,
}

impl MeasureSet {
    pub fn evaluate(rho_ch: &XStateDensity, state: &InputState) -> Self {
        let c_in = state.concurrence();
        Self {
            c_in,
            c_ch: channel_concurrence(rho_ch),
            c_out: output_concurrence(rho_ch, c_in),
            fidelity: fidelity(rho_ch, state.theta()),
            f_avg: average_fidelity(rho_ch),
        }
    }

    pub fn is_quantum(&self) -> bool {
        classical_bound_exceeded(self.f_avg)
    }
}

/// `2 r23^2 C_in - 2 r22 (r11 + r44)`. Positive exactly when the output is
/// entangled; its zero crossing is the output threshold.
pub fn output_concurrence_margin(rho_ch: &XStateDensity, c_in: f64) -> f64 {
    rho_ch.expect_normalized();
    2.0 * rho_ch.r23.powi(2) * c_in - 2.0 * rho_ch.r22 * rho_ch.aligned()
}

/// Concurrence of the teleported state for an input of concurrence `c_in`.
pub fn output_concurrence(rho_ch: &XStateDensity, c_in: f64) -> f64 {
    2.0 * output_concurrence_margin(rho_ch, c_in).max(0.0)
}

/// Eigenvalues of `rho (sy x sy) rho* (sy x sy)` for the output state,
/// the first two in decreasing order.
pub fn wootters_eigenvalues(out: &OutputState) -> [f64; 4] {
    let root_ad = (out.a * out.d).max(0.0).sqrt();
    let modulus = out.b.norm();
    let alpha_sq = out.alpha * out.alpha;
    [
        (root_ad + modulus).powi(2),
        (root_ad - modulus).powi(2),
        alpha_sq,
        alpha_sq,
    ]
}

/// `max(sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4), 0)` with `l1` the largest.
pub fn concurrence_from_eigenvalues(eigenvalues: &[f64; 4]) -> f64 {
    let mut roots = eigenvalues.map(|l| l.max(0.0).sqrt());
    roots.sort_by(|a, b| b.total_cmp(a));
    (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0)
}

/// `|r23| - sqrt(r11 r44)`; the channel is entangled when positive.
pub fn channel_concurrence_margin(rho_ch: &XStateDensity) -> f64 {
    rho_ch.r23.abs() - (rho_ch.r11 * rho_ch.r44).max(0.0).sqrt()
}

pub fn channel_concurrence(rho_ch: &XStateDensity) -> f64 {
    rho_ch.expect_normalized();
    2.0 * channel_concurrence_margin(rho_ch).max(0.0)
}

/// `(A, B)` with `F(theta) = A sin^2(theta) / 2 + B`.
fn fidelity_coefficients(rho_ch: &XStateDensity) -> (f64, f64) {
    rho_ch.expect_normalized();
    let anti_sq = 4.0 * rho_ch.r22.powi(2);
    (
        rho_ch.aligned().powi(2) + 4.0 * rho_ch.r23.powi(2) - anti_sq,
        anti_sq,
    )
}

/// Fidelity `<psi_in| rho_out |psi_in>`; independent of `phi`.
pub fn fidelity(rho_ch: &XStateDensity, theta: f64) -> f64 {
    let (bracket, base) = fidelity_coefficients(rho_ch);
    theta.sin().powi(2) / 2.0 * bracket + base
}

/// Fidelity averaged uniformly over the input Bloch sphere.
pub fn average_fidelity(rho_ch: &XStateDensity) -> f64 {
    let (bracket, base) = fidelity_coefficients(rho_ch);
    bracket / 3.0 + base
}

pub fn classical_bound_exceeded(f_avg: f64) -> bool {
    f_avg > CLASSICAL_FIDELITY_BOUND
}

/// Output concurrence through the closed-form output state and its Wootters
/// eigenvalues.
pub fn output_concurrence_via_eigenvalues(rho_ch: &XStateDensity, state: &InputState) -> f64 {
    concurrence_from_eigenvalues(&wootters_eigenvalues(&teleport_closed_form(rho_ch, state)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::channel_density;
    use crate::model::ModelParams;
    use crate::teleport::{input_density, teleport_depolarizing_sum, C64};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn random_channel(rng: &mut ChaCha8Rng) -> XStateDensity {
        let params = ModelParams::new(
            rng.random_range(-5.0..5.0),
            rng.random_range(-3.0..5.0),
            rng.random_range(-10.0..10.0),
        )
        .unwrap();
        channel_density(&params, 10f64.powf(rng.random_range(-2.0..2.0))).unwrap()
    }

    fn fig10(delta: f64, h: f64, t: f64) -> XStateDensity {
        channel_density(&ModelParams::new(1.0, delta, h).unwrap(), t).unwrap()
    }

    #[test]
    fn output_concurrence_examples() {
        assert_eq!(output_concurrence(&XStateDensity::singlet(), 1.0), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            assert_eq!(output_concurrence(&random_channel(&mut rng), 0.0), 0.0);
        }
        // output threshold near T/J = 0.58 for Delta = 2, h = 0
        assert!(output_concurrence(&fig10(2.0, 0.0, 0.55), 1.0) > 0.0);
        assert_eq!(output_concurrence(&fig10(2.0, 0.0, 0.61), 1.0), 0.0);
    }

    #[test]
    fn channel_concurrence_examples() {
        assert_eq!(channel_concurrence(&XStateDensity::singlet()), 1.0);
        assert_eq!(channel_concurrence(&XStateDensity::maximally_mixed()), 0.0);
        assert!(channel_concurrence(&fig10(1.1, 0.0, 0.72)) > 0.0);
        assert_eq!(channel_concurrence(&fig10(1.1, 0.0, 0.76)), 0.0);

        // channel still entangled at T/J = 0.3 while the output is not
        let rho = fig10(1.1, 0.0, 0.3);
        assert!(channel_concurrence(&rho) > 0.0);
        assert_eq!(output_concurrence(&rho, 1.0), 0.0);
    }

    #[test]
    fn eigenvalue_examples() {
        let state = InputState::maximal();
        let out = teleport_closed_form(&XStateDensity::singlet(), &state);
        let l = wootters_eigenvalues(&out);
        for (got, want) in l.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(concurrence_from_eigenvalues(&l), 1.0, epsilon = 1e-15);

        let mixed = OutputState { alpha: 0.25, a: 0.25, b: C64::new(0.0, 0.0), d: 0.25 };
        let l = wootters_eigenvalues(&mixed);
        assert_eq!(l, [1.0 / 16.0; 4]);
        assert_eq!(concurrence_from_eigenvalues(&l), 0.0);
    }

    #[test]
    fn eigenvalue_route_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..1000 {
            let rho = random_channel(&mut rng);
            let state = InputState::new(rng.random_range(0.0..PI), rng.random_range(0.0..TAU)).unwrap();
            let via_eig = output_concurrence_via_eigenvalues(&rho, &state);
            assert_abs_diff_eq!(via_eig, output_concurrence(&rho, state.concurrence()), epsilon = 1e-10);

            // the product ad through the input concurrence
            let out = teleport_closed_form(&rho, &state);
            let c_in = state.concurrence();
            let aligned_sq = rho.aligned().powi(2);
            let anti_sq = 4.0 * rho.r22.powi(2);
            let ad = (aligned_sq / 2.0 + anti_sq / 2.0).powi(2)
                - (aligned_sq / 2.0 - anti_sq / 2.0).powi(2) * (1.0 - c_in * c_in);
            assert_abs_diff_eq!(out.a * out.d, ad, epsilon = 1e-12);
            assert_abs_diff_eq!(out.b.norm_sqr(), 4.0 * rho.r23.powi(4) * c_in * c_in, epsilon = 1e-12);
        }
    }

    #[test]
    fn fidelity_examples() {
        for theta in [0.0, 0.4, FRAC_PI_2, 2.9, PI] {
            assert_abs_diff_eq!(fidelity(&XStateDensity::singlet(), theta), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(fidelity(&XStateDensity::maximally_mixed(), theta), 0.25, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(average_fidelity(&XStateDensity::singlet()), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(average_fidelity(&XStateDensity::maximally_mixed()), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn fidelity_is_overlap_with_brute_force_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..1000 {
            let rho = random_channel(&mut rng);
            let state = InputState::new(rng.random_range(0.0..PI), rng.random_range(0.0..TAU)).unwrap();
            let (rho_in, _) = input_density(&state);
            let out = teleport_depolarizing_sum(&rho, &rho_in);
            let ket = state.ket();
            let overlap = (ket.adjoint() * out * ket)[(0, 0)].re;
            assert_abs_diff_eq!(fidelity(&rho, state.theta()), overlap, epsilon = 1e-12);
        }
    }

    #[test]
    fn average_fidelity_limits() {
        let hot = fig10(2.0, 0.0, 1e6);
        assert_abs_diff_eq!(average_fidelity(&hot), 0.25, epsilon = 1e-6);
        let polarized = XStateDensity::normalized(1.0, 0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(average_fidelity(&polarized), 1.0 / 3.0, epsilon = 1e-15);
        let strong_field = fig10(1.1, 50.0, 0.01);
        assert_abs_diff_eq!(average_fidelity(&strong_field), 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn algebraic_self_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..1000 {
            let rho = random_channel(&mut rng);
            let f0 = fidelity(&rho, 0.0);
            let f90 = fidelity(&rho, FRAC_PI_2);
            assert_abs_diff_eq!(f0, 4.0 * rho.r22.powi(2), epsilon = 1e-15);
            assert_abs_diff_eq!(average_fidelity(&rho), 2.0 / 3.0 * f90 + f0 / 3.0, epsilon = 1e-14);

            // linear and nondecreasing in c_in
            let lo = output_concurrence(&rho, 0.3);
            let hi = output_concurrence(&rho, 0.8);
            assert!(hi >= lo);
            if lo > 0.0 {
                assert_abs_diff_eq!(hi - lo, 4.0 * rho.r23.powi(2) * 0.5, epsilon = 1e-14);
            }

            let m = MeasureSet::evaluate(&rho, &InputState::new(1.0, 0.0).unwrap());
            let n = MeasureSet::evaluate(&rho, &InputState::new(1.0, 1.7).unwrap());
            assert_eq!(m, n);
            for v in [m.c_in, m.c_ch, m.c_out, m.fidelity, m.f_avg] {
                assert!((-1e-12..=1.0 + 1e-12).contains(&v), "{m:?}");
            }
        }
    }

    #[test]
    fn classical_bound() {
        assert!(classical_bound_exceeded(1.0));
        assert!(!classical_bound_exceeded(0.25));
        assert!(!classical_bound_exceeded(CLASSICAL_FIDELITY_BOUND));
        assert!(classical_bound_exceeded(average_fidelity(&fig10(2.0, 0.0, 0.1))));
    }
}
