//! Heisenberg dimer block of the Ising-XXZ diamond chain.
//!
//! Each diamond cell holds a quantum XXZ dimer `(a, b)` coupled through an
//! Ising exchange to the two nodal spins `mu` and `mu'` that bracket it. With
//! the nodal spins frozen, the dimer Hamiltonian is diagonal in the fixed
//! basis
//!
//! ```text
//! |up,up>,  (|up,dn> + |dn,up>)/sqrt2,  (|up,dn> - |dn,up>)/sqrt2,  |dn,dn>
//! ```
//!
//! and its energies depend on the nodal spins only through `m = mu + mu'`.
//! Energies are in units of `J`, temperatures in units of `J / k_B`.

use nalgebra::Matrix4;

use crate::error::{invalid, Error, Result};

/// Couplings of the diamond chain.
///
/// `j` is the Heisenberg exchange and sets the energy scale; the remaining
/// couplings are ratios to it in every public constructor except
/// [`ModelParams::with_exchange`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub j: f64,
    pub j1: f64,
    pub delta: f64,
    pub h: f64,
}

impl ModelParams {
    /// Couplings with `J = 1`.
    pub fn new(j1: f64, delta: f64, h: f64) -> Result<Self> {
        Self::with_exchange(1.0, j1, delta, h)
    }

    /// Couplings with an explicit Heisenberg exchange. Any finite nonzero `j` is
    /// accepted.
    pub fn with_exchange(j: f64, j1: f64, delta: f64, h: f64) -> Result<Self> {
        for (name, v) in [("J", j), ("J1", j1), ("Delta", delta), ("h", h)] {
            if !v.is_finite() {
                return Err(invalid(name, format!("must be finite, got {v}")));
            }
        }
        if j == 0.0 {
            return Err(invalid("J", "must be nonzero"));
        }
        Ok(Self { j, j1, delta, h })
    }
}

/// Value of a nodal Ising spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }
}

/// The two nodal spins bonded to one dimer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IsingPair {
    pub mu: Spin,
    pub mu_prime: Spin,
}

impl IsingPair {
    pub const UP_UP: IsingPair = IsingPair::new(Spin::Up, Spin::Up);
    pub const DOWN_DOWN: IsingPair = IsingPair::new(Spin::Down, Spin::Down);
    pub const UP_DOWN: IsingPair = IsingPair::new(Spin::Up, Spin::Down);
    pub const DOWN_UP: IsingPair = IsingPair::new(Spin::Down, Spin::Up);

    pub const ALL: [IsingPair; 4] = [
        IsingPair::UP_UP,
        IsingPair::UP_DOWN,
        IsingPair::DOWN_UP,
        IsingPair::DOWN_DOWN,
    ];

    pub const fn new(mu: Spin, mu_prime: Spin) -> Self {
        Self { mu, mu_prime }
    }

    /// `mu + mu'`, one of -1, 0, 1.
    pub fn sum(self) -> f64 {
        self.mu.value() + self.mu_prime.value()
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Dimer eigenstates in the basis `|up,up>, |up,dn>, |dn,up>, |dn,dn>`.
pub const DIMER_EIGENSTATES: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0],
    [0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

/// Exact spectrum of one dimer for frozen nodal spins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerSpectrum {
    /// Energies of the triplet `|up,up>`, triplet zero, singlet and `|dn,dn>`
    /// states, in that order.
    pub energies: [f64; 4],
}

impl DimerSpectrum {
    pub fn states(&self) -> &'static [[f64; 4]; 4] {
        &DIMER_EIGENSTATES
    }

    pub fn min_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `J (S_a . S_b)_Delta` as a 4x4 matrix.
pub fn heisenberg_block(params: &ModelParams) -> Matrix4<f64> {
    let diag = params.j * params.delta / 4.0;
    let flip = params.j / 2.0;
    Matrix4::new(
        diag, 0.0, 0.0, 0.0, //
        0.0, -diag, flip, 0.0, //
        0.0, flip, -diag, 0.0, //
        0.0, 0.0, 0.0, diag,
    )
}

/// Total `S^z_a + S^z_b` of the dimer.
pub fn total_sz() -> Matrix4<f64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 0.0, 0.0, -1.0))
}

/// Full cell Hamiltonian for fixed nodal spins, including the Ising exchange
/// and the Zeeman terms of dimer and nodal spins:
///
/// `J (S_a . S_b)_Delta + (J1 m - h) S^z_tot - (h/2) m`.
pub fn dimer_hamiltonian(params: &ModelParams, pair: IsingPair) -> Matrix4<f64> {
    let m = pair.sum();
    heisenberg_block(params) + total_sz() * (params.j1 * m - params.h)
        - Matrix4::identity() * (params.h / 2.0 * m)
}

pub fn dimer_spectrum(params: &ModelParams, pair: IsingPair) -> DimerSpectrum {
    let ModelParams { j, j1, delta, h } = *params;
    let m = pair.sum();
    let quarter = j * delta / 4.0;
    DimerSpectrum {
        energies: [
            quarter + (j1 - h / 2.0) * m - h,
            j / 2.0 - quarter - h / 2.0 * m,
            -j / 2.0 - quarter - h / 2.0 * m,
            quarter - (j1 + h / 2.0) * m + h,
        ],
    }
}

/// Lowest dimer energy over every nodal configuration. Used as the common
/// shift for all Boltzmann factors of one parameter point.
pub fn ground_energy(params: &ModelParams) -> f64 {
    [IsingPair::UP_UP, IsingPair::UP_DOWN, IsingPair::DOWN_DOWN]
        .into_iter()
        .map(|p| dimer_spectrum(params, p).min_energy())
        .fold(f64::INFINITY, f64::min)
}

/// A positive number stored as `mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledWeight {
    pub mantissa: f64,
    pub log_scale: f64,
}

impl ScaledWeight {
    /// Natural logarithm of the represented value.
    pub fn ln(&self) -> f64 {
        self.mantissa.ln() + self.log_scale
    }

    /// The represented value; may overflow to infinity at low temperature.
    pub fn value(&self) -> f64 {
        self.mantissa * self.log_scale.exp()
    }
}

pub fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidBeta(beta))
    }
}

pub fn beta_from_temperature(temperature: f64) -> Result<f64> {
    if temperature.is_finite() && temperature > 0.0 {
        Ok(1.0 / temperature)
    } else {
        Err(Error::InvalidTemperature(temperature))
    }
}

/// `exp(-beta (e_i - shift))` for the four dimer levels.
pub(crate) fn shifted_exponentials(
    params: &ModelParams,
    beta: f64,
    pair: IsingPair,
    shift: f64,
) -> [f64; 4] {
    dimer_spectrum(params, pair)
        .energies
        .map(|e| (-beta * (e - shift)).exp())
}

/// Boltzmann factor `w(mu, mu') = sum_i exp(-beta e_i)`.
///
/// The mantissa is measured against the global ground energy from
/// [`ground_energy`], so weights of different nodal sectors at the same
/// parameter point share one `log_scale` and can be compared directly.
pub fn boltzmann_weight(params: &ModelParams, beta: f64, pair: IsingPair) -> Result<ScaledWeight> {
    check_beta(beta)?;
    let shift = ground_energy(params);
    let mantissa = shifted_exponentials(params, beta, pair, shift).iter().sum();
    Ok(ScaledWeight {
        mantissa,
        log_scale: -beta * shift,
    })
}
