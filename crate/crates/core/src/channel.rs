//! Thermal reduced state of one dimer in the infinite chain.
//!
//! The nodal Ising spins are traced out with a 2x2 transfer matrix built from
//! the sector weights `w(mu, mu')`. Every weight and local operator at a
//! parameter point is measured against the same ground energy, so the ratios
//! that form the channel state never see overflow even at `T/J ~ 1e-3`.

use nalgebra::{Complex, Matrix4};

use crate::error::{Error, Result};
use crate::model::{
    beta_from_temperature, check_beta, ground_energy, shifted_exponentials, IsingPair, ModelParams,
};

/// Guard below which the transfer-matrix discriminant is treated as zero.
const DEGENERATE_DISCRIMINANT: f64 = 1e-300;

/// Two-qubit operator of X form with equal middle diagonal and a real inner
/// coherence:
///
/// ```text
/// [ r11   0    0    0  ]
/// [  0   r22  r23   0  ]
/// [  0   r23  r22   0  ]
/// [  0    0    0   r44 ]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateDensity {
    pub r11: f64,
    pub r22: f64,
    pub r23: f64,
    pub r44: f64,
    normalized: bool,
}

impl XStateDensity {
    /// An unnormalized operator (a Boltzmann-weighted local operator).
    pub fn unnormalized(r11: f64, r22: f64, r23: f64, r44: f64) -> Self {
        Self { r11, r22, r23, r44, normalized: false }
    }

    /// A density matrix. Rejects entries that are not a unit-trace PSD X state
    /// within `1e-12`.
    pub fn normalized(r11: f64, r22: f64, r23: f64, r44: f64) -> Result<Self> {
        let rho = Self { r11, r22, r23, r44, normalized: true };
        if [r11, r22, r23, r44].iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite density entry".into()));
        }
        if (rho.trace() - 1.0).abs() > 1e-12 {
            return Err(Error::Numeric(format!("trace {} is not 1", rho.trace())));
        }
        if rho.eigenvalues().iter().any(|&e| e < -1e-12) {
            return Err(Error::Numeric(format!("not positive semidefinite: {:?}", rho.eigenvalues())));
        }
        Ok(rho)
    }

    /// The singlet `(|01> - |10>)/sqrt2`.
    pub fn singlet() -> Self {
        Self { r11: 0.0, r22: 0.5, r23: -0.5, r44: 0.0, normalized: true }
    }

    /// `I / 4`.
    pub fn maximally_mixed() -> Self {
        Self { r11: 0.25, r22: 0.25, r23: 0.0, r44: 0.25, normalized: true }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn trace(&self) -> f64 {
        self.r11 + 2.0 * self.r22 + self.r44
    }

    /// Eigenvalues `r11, r44, r22 + r23, r22 - r23`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        [self.r11, self.r44, self.r22 + self.r23, self.r22 - self.r23]
    }

    /// Population of the aligned sector, `r11 + r44`.
    pub fn aligned(&self) -> f64 {
        self.r11 + self.r44
    }

    pub fn to_matrix(&self) -> Matrix4<Complex<f64>> {
        let c = |x: f64| Complex::new(x, 0.0);
        let z = c(0.0);
        Matrix4::new(
            c(self.r11), z, z, z, //
            z, c(self.r22), c(self.r23), z, //
            z, c(self.r23), c(self.r22), z, //
            z, z, z, c(self.r44),
        )
    }

    /// Divides by the trace.
    pub fn normalize(&self) -> Self {
        let t = self.trace();
        Self {
            r11: self.r11 / t,
            r22: self.r22 / t,
            r23: self.r23 / t,
            r44: self.r44 / t,
            normalized: true,
        }
    }

    pub(crate) fn expect_normalized(&self) {
        assert!(self.normalized, "operation requires a normalized density matrix");
    }

    fn combine(terms: &[(f64, &XStateDensity)]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (coef, op) in terms {
            out[0] += coef * op.r11;
            out[1] += coef * op.r22;
            out[2] += coef * op.r23;
            out[3] += coef * op.r44;
        }
        out
    }
}

/// An unnormalized local operator whose true value is
/// `density * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledOperator {
    pub density: XStateDensity,
    pub log_scale: f64,
}

/// Local density operator `sum_i exp(-beta e_i) |phi_i><phi_i|` of the dimer
/// bonded to `pair`.
pub fn local_dimer_operator(params: &ModelParams, beta: f64, pair: IsingPair) -> Result<ScaledOperator> {
    check_beta(beta)?;
    let shift = ground_energy(params);
    Ok(ScaledOperator {
        density: shifted_local(params, beta, pair, shift),
        log_scale: -beta * shift,
    })
}

fn shifted_local(params: &ModelParams, beta: f64, pair: IsingPair, shift: f64) -> XStateDensity {
    let [e1, e2, e3, e4] = shifted_exponentials(params, beta, pair, shift);
    XStateDensity::unnormalized(e1, (e2 + e3) / 2.0, (e2 - e3) / 2.0, e4)
}

/// Weights of the nodal transfer matrix `[[w++, w+-], [w+-, w--]]` and its
/// eigenvalues, all on the shared scale `exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferData {
    pub w_pp: f64,
    pub w_mm: f64,
    pub w_pm: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub log_scale: f64,
}

impl TransferData {
    /// `sqrt((w++ - w--)^2 + 4 w+-^2)`, the eigenvalue gap.
    pub fn discriminant(&self) -> f64 {
        (self.w_pp - self.w_mm).hypot(2.0 * self.w_pm)
    }
}

pub fn transfer_data(params: &ModelParams, beta: f64) -> Result<TransferData> {
    check_beta(beta)?;
    let shift = ground_energy(params);
    let [pp, pm, _, mm] = IsingPair::ALL.map(|pair| shifted_local(params, beta, pair, shift).trace());
    Ok(transfer_from_weights(pp, mm, pm, -beta * shift))
}

fn transfer_from_weights(w_pp: f64, w_mm: f64, w_pm: f64, log_scale: f64) -> TransferData {
    let root = (w_pp - w_mm).hypot(2.0 * w_pm);
    let mean = (w_pp + w_mm) / 2.0;
    TransferData {
        w_pp,
        w_mm,
        w_pm,
        lambda_plus: mean + root / 2.0,
        lambda_minus: mean - root / 2.0,
        log_scale,
    }
}

/// Thermal state of one dimer in the thermodynamic limit at temperature `T/J`.
pub fn channel_density(params: &ModelParams, temperature: f64) -> Result<XStateDensity> {
    let beta = beta_from_temperature(temperature)?;
    let shift = ground_energy(params);
    let up = shifted_local(params, beta, IsingPair::UP_UP, shift);
    let down = shifted_local(params, beta, IsingPair::DOWN_DOWN, shift);
    let mixed = shifted_local(params, beta, IsingPair::UP_DOWN, shift);
    let t = transfer_from_weights(up.trace(), down.trace(), mixed.trace(), -beta * shift);

    let root = t.discriminant();
    let lam = t.lambda_plus;
    let [r11, r22, r23, r44] = if root < DEGENERATE_DISCRIMINANT {
        XStateDensity::combine(&[(0.5 / lam, &up), (0.5 / lam, &down)])
    } else {
        let skew = (t.w_pp - t.w_mm) / (2.0 * root);
        XStateDensity::combine(&[
            ((0.5 + skew) / lam, &up),
            ((0.5 - skew) / lam, &down),
            (2.0 * t.w_pm / root / lam, &mixed),
        ])
    };
    Ok(XStateDensity { r11, r22, r23, r44, normalized: true })
}
