//! Seeded cross-checks of every closed form against its brute-force oracle.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{channel_density, XStateDensity};
use crate::error::{invalid, Result};
use crate::measures::{
    average_fidelity, channel_concurrence, output_concurrence, output_concurrence_via_eigenvalues,
};
use crate::model::ModelParams;
use crate::oracle::{
    average_fidelity_quadrature, finite_ring_channel_density, finite_ring_enumeration,
    finite_ring_error_bound, max_abs, transfer_eigenvalue_ratio, wootters_concurrence_general,
    RingSpec, MAX_ENUMERATED_CELLS, MAX_RING_CELLS,
};
use crate::teleport::{input_density, teleport_closed_form, teleport_depolarizing_sum, InputState};

pub const TELEPORT_TOLERANCE: f64 = 1e-12;
pub const CONCURRENCE_TOLERANCE: f64 = 1e-10;
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;
pub const ENUMERATION_TOLERANCE: f64 = 1e-12;
/// Roundoff allowance added to the a-priori finite-ring bound.
pub const RING_FLOOR: f64 = 1e-12;

/// One random draw of the sampling ranges: `J1` and `h` uniform in
/// `[-5, 5]` and `[-10, 10]`, `Delta` uniform in `[-3, 5]`, `T` log-uniform
/// in `[0.01, 100]`, `theta` uniform in `[0, pi]` and `phi` in `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub params: ModelParams,
    pub temperature: f64,
    pub state: InputState,
}

impl Sample {
    pub fn draw(rng: &mut impl Rng) -> Self {
        let params = ModelParams::new(
            rng.random_range(-5.0..=5.0),
            rng.random_range(-3.0..=5.0),
            rng.random_range(-10.0..=10.0),
        )
        .expect("finite draws");
        let temperature = 10f64.powf(rng.random_range(-2.0..=2.0));
        let state = InputState::new(rng.random_range(0.0..=PI), rng.random_range(0.0..TAU)).expect("angles in range");
        Self { params, temperature, state }
    }
}

/// Seeded generator used by [`validate`].
pub fn sampler(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random PSD X state with unit trace.
pub fn random_x_state(rng: &mut impl Rng) -> XStateDensity {
    let r11: f64 = rng.random_range(0.0..1.0);
    let r44: f64 = rng.random_range(0.0..1.0);
    let r22: f64 = rng.random_range(0.0..1.0);
    let r23 = rng.random_range(-1.0..=1.0) * r22;
    let t = r11 + 2.0 * r22 + r44;
    XStateDensity::normalized(r11 / t, r22 / t, r23 / t, r44 / t).expect("PSD by construction")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    /// Largest deviation; for the ring suite, the largest deviation divided
    /// by its allowed bound.
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "validate seed={} samples={}", self.seed, self.samples)?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<4} {:<34} n={:<6} max={:.3e} tol={:.1e}",
                if s.passed() { "PASS" } else { "FAIL" },
                s.name,
                s.samples,
                s.max_deviation,
                s.tolerance
            )?;
        }
        write!(f, "{}", if self.passed() { "all suites passed" } else { "validation FAILED" })
    }
}

struct Tracker {
    name: &'static str,
    samples: usize,
    max: f64,
    tolerance: f64,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, samples: 0, max: 0.0, tolerance }
    }

    fn record(&mut self, deviation: f64) {
        self.samples += 1;
        // NaN must fail the suite
        self.max = if deviation.is_nan() { f64::INFINITY } else { self.max.max(deviation) };
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            samples: self.samples,
            max_deviation: self.max,
            tolerance: self.tolerance,
        }
    }
}

/// Runs every oracle-equivalence suite on `n_samples` seeded draws.
pub fn validate(seed: u64, n_samples: usize) -> Result<ValidationReport> {
    if n_samples == 0 {
        return Err(invalid("samples", "must be at least 1"));
    }
    let mut rng = sampler(seed);
    let mut teleport = Tracker::new("closed-form output vs Pauli sum", TELEPORT_TOLERANCE);
    let mut concurrence = Tracker::new("output concurrence vs eigenvalues", CONCURRENCE_TOLERANCE);
    let mut x_states = Tracker::new("X-state concurrence vs Wootters", CONCURRENCE_TOLERANCE);
    let mut quadrature = Tracker::new("average fidelity vs quadrature", QUADRATURE_TOLERANCE);
    let mut ring = Tracker::new("finite ring vs limit (dev/bound)", 1.0);
    let mut enumeration = Tracker::new("ring enumeration vs matrix power", ENUMERATION_TOLERANCE);

    for i in 0..n_samples {
        let sample = Sample::draw(&mut rng);
        let rho = channel_density(&sample.params, sample.temperature)?;

        let (rho_in, c_in) = input_density(&sample.state);
        let closed = teleport_closed_form(&rho, &sample.state).to_matrix();
        let brute = teleport_depolarizing_sum(&rho, &rho_in);
        teleport.record(max_abs(&(closed - brute)));

        concurrence.record(
            (output_concurrence_via_eigenvalues(&rho, &sample.state) - output_concurrence(&rho, c_in)).abs(),
        );

        let x = random_x_state(&mut rng);
        x_states.record((wootters_concurrence_general(&x.to_matrix())? - channel_concurrence(&x)).abs());

        quadrature.record((average_fidelity_quadrature(&rho) - average_fidelity(&rho)).abs());

        let spec = RingSpec::new(MAX_RING_CELLS)?;
        let finite = finite_ring_channel_density(&sample.params, sample.temperature, spec)?;
        let bound = finite_ring_error_bound(
            transfer_eigenvalue_ratio(&sample.params, sample.temperature)?,
            MAX_RING_CELLS,
        ) + RING_FLOOR;
        ring.record(max_abs(&(finite.to_matrix() - rho.to_matrix())) / bound);

        // enumeration is 2^N per sample; run it on a stride
        if i % 10 == 0 {
            let small = RingSpec::new(MAX_ENUMERATED_CELLS)?;
            let a = finite_ring_channel_density(&sample.params, sample.temperature, small)?;
            let b = finite_ring_enumeration(&sample.params, sample.temperature, small)?;
            enumeration.record(max_abs(&(a.to_matrix() - b.to_matrix())));
        }
    }

    Ok(ValidationReport {
        seed,
        samples: n_samples,
        suites: vec![
            teleport.finish(),
            concurrence.finish(),
            x_states.finish(),
            quadrature.finish(),
            ring.finish(),
            enumeration.finish(),
        ],
    })
}
