//! Brute-force reference computations.
//!
//! Nothing here shares a code path with the closed forms it checks: the ring
//! density uses explicit matrix powers or full enumeration of the nodal
//! spins, concurrence goes through a general complex eigensolver, and the
//! average fidelity is integrated numerically.

use nalgebra::{Complex, Matrix2, Matrix4};

use crate::channel::{local_dimer_operator, XStateDensity};
use crate::error::{invalid, Error, Result};
use crate::measures::fidelity;
use crate::model::{beta_from_temperature, IsingPair, Spin, ModelParams};
use crate::teleport::{kron, paulis, C64};

/// Largest ring handled by [`finite_ring_channel_density`].
pub const MAX_RING_CELLS: usize = 24;
/// Largest ring handled by the literal enumeration.
pub const MAX_ENUMERATED_CELLS: usize = 10;
/// Nodes of the default quadrature rule.
pub const QUADRATURE_NODES: usize = 64;

/// Periodic ring of `n_cells` diamond cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingSpec {
    n_cells: usize,
}

impl RingSpec {
    pub fn new(n_cells: usize) -> Result<Self> {
        if !(2..=MAX_RING_CELLS).contains(&n_cells) {
            return Err(invalid(
                "n_cells",
                format!("must lie in 2..={MAX_RING_CELLS}, got {n_cells}"),
            ));
        }
        Ok(Self { n_cells })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }
}

struct RingSectors {
    /// Local operators indexed `[mu][mu']`, all on one scale.
    local: [[XStateDensity; 2]; 2],
    weights: Matrix2<f64>,
}

fn ring_sectors(params: &ModelParams, temperature: f64) -> Result<RingSectors> {
    let beta = beta_from_temperature(temperature)?;
    let op = |a: Spin, b: Spin| local_dimer_operator(params, beta, IsingPair::new(a, b)).map(|o| o.density);
    let local = [
        [op(Spin::Up, Spin::Up)?, op(Spin::Up, Spin::Down)?],
        [op(Spin::Down, Spin::Up)?, op(Spin::Down, Spin::Down)?],
    ];
    let weights = Matrix2::from_fn(|r, c| local[r][c].trace());
    Ok(RingSectors { local, weights })
}

fn accumulate(acc: &mut [f64; 4], op: &XStateDensity, coef: f64) {
    acc[0] += coef * op.r11;
    acc[1] += coef * op.r22;
    acc[2] += coef * op.r23;
    acc[3] += coef * op.r44;
}

fn finish(acc: [f64; 4], z: f64) -> XStateDensity {
    XStateDensity::unnormalized(acc[0] / z, acc[1] / z, acc[2] / z, acc[3] / z).normalize()
}

/// Exact reduced state of one dimer on an `N`-cell ring,
/// `sum rho(mu1, mu2) [W^(N-1)]_{mu2, mu1} / tr W^N`.
pub fn finite_ring_channel_density(
    params: &ModelParams,
    temperature: f64,
    ring: RingSpec,
) -> Result<XStateDensity> {
    let s = ring_sectors(params, temperature)?;
    // rescale so that powers stay O(1)
    let scale = s.weights.max();
    let w = s.weights / scale;
    let mut power: Matrix2<f64> = Matrix2::identity();
    for _ in 0..ring.n_cells() - 1 {
        power *= w;
    }
    let z = (power * w).trace();
    let mut acc = [0.0; 4];
    for a in 0..2 {
        for b in 0..2 {
            accumulate(&mut acc, &s.local[a][b], power[(b, a)] / scale);
        }
    }
    Ok(finish(acc, z))
}

/// Same quantity by summing over all `2^N` nodal configurations.
pub fn finite_ring_enumeration(
    params: &ModelParams,
    temperature: f64,
    ring: RingSpec,
) -> Result<XStateDensity> {
    let n = ring.n_cells();
    if n > MAX_ENUMERATED_CELLS {
        return Err(invalid(
            "n_cells",
            format!("enumeration is limited to {MAX_ENUMERATED_CELLS} cells, got {n}"),
        ));
    }
    let s = ring_sectors(params, temperature)?;
    let spin = |config: usize, site: usize| (config >> (site % n)) & 1;
    let mut acc = [0.0; 4];
    let mut z = 0.0;
    for config in 0..1usize << n {
        // weight of every cell except the first
        let rest: f64 = (1..n)
            .map(|i| s.weights[(spin(config, i), spin(config, i + 1))])
            .product();
        let first = &s.local[spin(config, 0)][spin(config, 1)];
        accumulate(&mut acc, first, rest);
        z += first.trace() * rest;
    }
    Ok(finish(acc, z))
}

/// `|lambda_-| / lambda_+` of the nodal transfer matrix, from a general
/// symmetric eigensolver.
pub fn transfer_eigenvalue_ratio(params: &ModelParams, temperature: f64) -> Result<f64> {
    let s = ring_sectors(params, temperature)?;
    let eig = nalgebra::SymmetricEigen::new(s.weights).eigenvalues;
    let (hi, lo) = if eig[0] >= eig[1] { (eig[0], eig[1]) } else { (eig[1], eig[0]) };
    Ok(lo.abs() / hi)
}

/// A-priori bound on `max |rho(N) - rho(inf)|` for a ring of `n` cells with
/// transfer eigenvalue ratio `r`: `4 r^(N-1) (1 + r) / (1 - r^N)`.
pub fn finite_ring_error_bound(ratio: f64, n_cells: usize) -> f64 {
    let n = n_cells as i32;
    4.0 * ratio.powi(n - 1) * (1.0 + ratio) / (1.0 - ratio.powi(n))
}

/// Wootters concurrence of an arbitrary two-qubit density matrix from the
/// eigenvalues of `rho (sy x sy) rho* (sy x sy)`.
///
/// Eigenvalues with negative real part down to `-1e-10` are roundoff and are
/// clamped to zero. Accuracy degrades to about `sqrt(eps)` when `R` has
/// eigenvalues near zero that are not exactly zero.
pub fn wootters_concurrence_general(rho: &Matrix4<C64>) -> Result<f64> {
    let herm_dev = rho
        .iter()
        .zip(rho.adjoint().iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if herm_dev > 1e-10 {
        return Err(Error::NotHermitian(herm_dev));
    }
    let sy = paulis()[2];
    let flip = kron(&sy, &sy);
    let tilde = flip * rho.map(|z| z.conj()) * flip;
    let r = rho * tilde;
    let eig = r
        .eigenvalues()
        .ok_or_else(|| Error::Numeric("Schur decomposition did not triangularize R".into()))?;
    let mut lambdas = [0.0; 4];
    for (k, z) in eig.iter().enumerate() {
        if z.re < -1e-10 {
            return Err(Error::Numeric(format!("R has a negative eigenvalue {z}")));
        }
        lambdas[k] = z.re.max(0.0);
    }
    let mut roots = lambdas.map(f64::sqrt);
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n` from the Chebyshev guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = (hi - lo) / 2.0;
        let mid = (hi + lo) / 2.0;
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Average fidelity by integrating `F(theta) sin(theta)` over the sphere
/// with the default 64-node rule. The azimuthal integral is exact because
/// `F` does not depend on `phi`.
pub fn average_fidelity_quadrature(rho_ch: &XStateDensity) -> f64 {
    average_fidelity_quadrature_with(rho_ch, &GaussLegendre::new(QUADRATURE_NODES))
}

pub fn average_fidelity_quadrature_with(rho_ch: &XStateDensity, rule: &GaussLegendre) -> f64 {
    let polar = rule.integrate(0.0, std::f64::consts::PI, |theta| fidelity(rho_ch, theta) * theta.sin());
    polar / 2.0
}

/// Reduces a complex matrix to its largest entry modulus.
pub fn max_abs(m: &Matrix4<Complex<f64>>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
