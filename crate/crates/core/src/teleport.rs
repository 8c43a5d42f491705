//! Standard two-qubit teleportation through two copies of the dimer channel.
//!
//! Each input qubit is teleported through its own chain. Teleporting through
//! a mixed resource acts on the input as a generalized depolarizing channel:
//! a Pauli conjugation `sigma_k` is applied with the probability `p_k` of
//! finding the resource in the Bell state `(sigma_k x 1)|Psi->`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::{Complex, Matrix2, Matrix4, Vector4};

use crate::channel::XStateDensity;
use crate::error::{invalid, Result};

pub type C64 = Complex<f64>;

/// Pure input `cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    theta: f64,
    phi: f64,
}

impl InputState {
    /// `theta` must lie in `[0, pi]`; `phi` is reduced modulo `2 pi`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(invalid("theta", format!("must lie in [0, pi], got {theta}")));
        }
        if !phi.is_finite() {
            return Err(invalid("phi", format!("must be finite, got {phi}")));
        }
        Ok(Self { theta, phi: phi.rem_euclid(TAU) })
    }

    /// The maximally entangled input, `theta = pi/2`, `phi = 0`.
    pub fn maximal() -> Self {
        Self { theta: FRAC_PI_2, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Concurrence `|sin theta|`.
    pub fn concurrence(&self) -> f64 {
        self.theta.sin().abs()
    }

    /// State vector in the basis `|00>, |01>, |10>, |11>`.
    pub fn ket(&self) -> Vector4<C64> {
        let (s, c) = (self.theta / 2.0).sin_cos();
        Vector4::new(
            C64::new(0.0, 0.0),
            C64::from_polar(s, self.phi),
            C64::new(c, 0.0),
            C64::new(0.0, 0.0),
        )
    }
}

/// Projector `|psi_in><psi_in|` and its concurrence.
pub fn input_density(state: &InputState) -> (Matrix4<C64>, f64) {
    let ket = state.ket();
    (ket * ket.adjoint(), state.concurrence())
}

/// Populations of the resource in the four Bell states, indexed
/// `Psi-, Phi-, Phi+, Psi+`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellProbabilities {
    pub p: [f64; 4],
}

impl BellProbabilities {
    pub fn sum(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// Bell-basis populations of an X-form resource. The `Phi+-` pair is
/// degenerate because the outer anti-diagonal is zero.
pub fn bell_probabilities(rho: &XStateDensity) -> BellProbabilities {
    rho.expect_normalized();
    let phi = rho.aligned() / 2.0;
    BellProbabilities {
        p: [rho.r22 - rho.r23, phi, phi, rho.r22 + rho.r23],
    }
}

/// Teleported state
///
/// ```text
/// [ alpha  0   0    0    ]
/// [  0     a   b    0    ]
/// [  0     b*  d    0    ]
/// [  0     0   0  alpha  ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputState {
    pub alpha: f64,
    pub a: f64,
    pub b: C64,
    pub d: f64,
}

impl OutputState {
    pub fn trace(&self) -> f64 {
        2.0 * self.alpha + self.a + self.d
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        let mean = (self.a + self.d) / 2.0;
        let spread = ((self.a - self.d) / 2.0).hypot(self.b.norm());
        [self.alpha, self.alpha, mean + spread, mean - spread]
    }

    pub fn to_matrix(&self) -> Matrix4<C64> {
        let c = |x: f64| C64::new(x, 0.0);
        let z = c(0.0);
        Matrix4::new(
            c(self.alpha), z, z, z, //
            z, c(self.a), self.b, z, //
            z, self.b.conj(), c(self.d), z, //
            z, z, z, c(self.alpha),
        )
    }
}

/// Closed-form output of teleporting `state` through two copies of `rho_ch`.
pub fn teleport_closed_form(rho_ch: &XStateDensity, state: &InputState) -> OutputState {
    rho_ch.expect_normalized();
    let aligned_sq = rho_ch.aligned().powi(2);
    let anti_sq = 4.0 * rho_ch.r22.powi(2);
    let (s, c) = (state.theta() / 2.0).sin_cos();
    let (s2, c2) = (s * s, c * c);
    OutputState {
        alpha: 2.0 * rho_ch.r22 * rho_ch.aligned(),
        a: aligned_sq * c2 + anti_sq * s2,
        b: C64::from_polar(2.0 * rho_ch.r23.powi(2) * state.theta().sin(), state.phi()),
        d: anti_sq * c2 + aligned_sq * s2,
    }
}

/// Pauli matrices `sigma_0, sigma_x, sigma_y, sigma_z`.
pub fn paulis() -> [Matrix2<C64>; 4] {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        Matrix2::new(l, o, o, l),
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

pub fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Brute-force output `sum_{i,j} p_i p_j (s_i x s_j) rho_in (s_i x s_j)` with
/// `sigma_0 <-> Psi-`, `sigma_x <-> Phi-`, `sigma_y <-> Phi+`,
/// `sigma_z <-> Psi+`.
pub fn teleport_depolarizing_sum(rho_ch: &XStateDensity, rho_in: &Matrix4<C64>) -> Matrix4<C64> {
    let probs = bell_probabilities(rho_ch).p;
    let sigma = paulis();
    let mut out = Matrix4::zeros();
    for (i, si) in sigma.iter().enumerate() {
        for (j, sj) in sigma.iter().enumerate() {
            let weight = probs[i] * probs[j];
            if weight == 0.0 {
                continue;
            }
            let u = kron(si, sj);
            out += (u * rho_in * u) * C64::new(weight, 0.0);
        }
    }
    out
}
