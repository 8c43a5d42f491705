//! Acceptance criteria A1-A11. Each test prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1` to see them.

use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use xxz_teleport::channel::{channel_density, XStateDensity};
use xxz_teleport::measures::{
    average_fidelity, channel_concurrence, output_concurrence, output_concurrence_via_eigenvalues,
    CLASSICAL_FIDELITY_BOUND,
};
use xxz_teleport::model::ModelParams;
use xxz_teleport::oracle::{
    average_fidelity_quadrature, finite_ring_channel_density, max_abs, wootters_concurrence_general, RingSpec,
};
use xxz_teleport::scan::{
    contour, point, threshold, AxisSpec, ContourSpec, Param, PointValues, Quantity,
};
use xxz_teleport::teleport::{
    bell_probabilities, input_density, teleport_closed_form, teleport_depolarizing_sum,
};
use xxz_teleport::validate::{random_x_state, sampler, Sample};

const SEED: u64 = 20_240_601;

fn report(id: &str, pass: bool, detail: String) {
    println!("{id:<4} {} {detail}", if pass { "PASS" } else { "FAIL" });
}

fn channel(j1: f64, delta: f64, h: f64, t: f64) -> XStateDensity {
    channel_density(&ModelParams::new(j1, delta, h).unwrap(), t).unwrap()
}

fn base(delta: f64, h: f64) -> PointValues {
    PointValues { j1: 1.0, delta, h, temperature: f64::NAN, theta: FRAC_PI_2, phi: 0.0 }
}

fn f_avg(j1: f64, delta: f64, h: f64, t: f64) -> f64 {
    average_fidelity(&channel(j1, delta, h, t))
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

#[test]
fn a01_depolarizing_sum_equivalence() {
    let start = Instant::now();
    let mut rng = sampler(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = Sample::draw(&mut rng);
        let rho = channel_density(&s.params, s.temperature).unwrap();
        let closed = teleport_closed_form(&rho, &s.state).to_matrix();
        let (rho_in, _) = input_density(&s.state);
        worst = worst.max(max_abs(&(closed - teleport_depolarizing_sum(&rho, &rho_in))));
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst <= 1e-12 && elapsed < 5.0;
    report("A1", pass, format!("max |closed - sum| = {worst:.3e} (tol 1e-12), {elapsed:.2} s (< 5 s)"));
    assert!(pass);
}

#[test]
fn a02_concurrence_equivalence() {
    let mut rng = sampler(SEED);
    let mut eig_worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = Sample::draw(&mut rng);
        let rho = channel_density(&s.params, s.temperature).unwrap();
        let via_eig = output_concurrence_via_eigenvalues(&rho, &s.state);
        eig_worst = eig_worst.max((via_eig - output_concurrence(&rho, s.state.concurrence())).abs());
    }
    let mut x_worst: f64 = 0.0;
    for _ in 0..1000 {
        let x = random_x_state(&mut rng);
        let general = wootters_concurrence_general(&x.to_matrix()).unwrap();
        x_worst = x_worst.max((general - channel_concurrence(&x)).abs());
    }
    let pass = eig_worst <= 1e-10 && x_worst <= 1e-10;
    report(
        "A2",
        pass,
        format!("eigenvalue route {eig_worst:.3e}, X-state vs general {x_worst:.3e} (tol 1e-10)"),
    );
    assert!(pass);
}

#[test]
fn a03_average_fidelity_quadrature() {
    let mut rng = sampler(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = Sample::draw(&mut rng);
        let rho = channel_density(&s.params, s.temperature).unwrap();
        worst = worst.max((average_fidelity_quadrature(&rho) - average_fidelity(&rho)).abs());
    }
    let pass = worst <= 1e-8;
    report("A3", pass, format!("max |closed - quadrature| = {worst:.3e} (tol 1e-8)"));
    assert!(pass);
}

/// Twenty points on the figure parameter set `J1/J = 1`,
/// `Delta in {1.1, 1.5, 2, 3}`, `h/J in {0, 1, 2}`, with `T/J` evenly spaced
/// over `[0.2, 2]`.
fn convergence_points() -> Vec<(f64, f64, f64)> {
    let pairs: Vec<(f64, f64)> = [1.1, 1.5, 2.0, 3.0]
        .iter()
        .flat_map(|&d| [0.0, 1.0, 2.0].map(move |h| (d, h)))
        .collect();
    (0..20)
        .map(|k| {
            let (d, h) = pairs[k % pairs.len()];
            (d, h, 0.2 + 1.8 * k as f64 / 19.0)
        })
        .collect()
}

#[test]
fn a04_thermodynamic_limit_convergence() {
    let mut all = true;
    let mut worst12: f64 = 0.0;
    for (delta, h, t) in convergence_points() {
        let params = ModelParams::new(1.0, delta, h).unwrap();
        let limit = channel_density(&params, t).unwrap();
        let dev = |n| {
            let ring = finite_ring_channel_density(&params, t, RingSpec::new(n).unwrap()).unwrap();
            max_abs(&(ring.to_matrix() - limit.to_matrix()))
        };
        let (d6, d12) = (dev(6), dev(12));
        worst12 = worst12.max(d12);
        if !(d12 < d6 && d12 < 1e-4) {
            all = false;
            println!("     point Delta={delta} h={h} T={t:.3}: d6={d6:.3e} d12={d12:.3e}");
        }
    }
    report("A4", all, format!("20 points: d12 < d6 and max d12 = {worst12:.3e} (< 1e-4)"));
    assert!(all);
}

fn threshold_check(id: &str, q: Quantity, delta: f64, h: f64, bracket: (f64, f64), target: f64, tol: f64) -> bool {
    let t = threshold(q, Param::T, &base(delta, h), bracket).unwrap();
    let pass = within(t, target, tol);
    println!("     {id} {q:?} Delta={delta} h={h}: T_th = {t:.4} (target {target} +- {tol})");
    pass
}

#[test]
fn a05_zero_field_thresholds() {
    let pass = [
        threshold_check("A5", Quantity::CChZero, 1.1, 0.0, (0.3, 1.5), 0.74, 0.02),
        threshold_check("A5", Quantity::CChZero, 2.0, 0.0, (0.3, 2.0), 1.07, 0.02),
        threshold_check("A5", Quantity::COutZero, 1.1, 0.0, (0.05, 0.7), 0.30, 0.02),
        threshold_check("A5", Quantity::COutZero, 2.0, 0.0, (0.1, 1.0), 0.58, 0.02),
    ]
    .iter()
    .all(|&p| p);
    report("A5", pass, "h/J = 0 channel and output thresholds".into());
    assert!(pass);
}

#[test]
fn a06_field_thresholds() {
    let pass = [
        threshold_check("A6", Quantity::CChZero, 1.1, 2.0, (0.3, 1.5), 0.84, 0.02),
        threshold_check("A6", Quantity::CChZero, 2.0, 2.0, (0.3, 2.0), 1.12, 0.02),
        threshold_check("A6", Quantity::COutZero, 1.1, 2.0, (0.01, 0.2), 0.043, 0.005),
        threshold_check("A6", Quantity::COutZero, 2.0, 2.0, (0.1, 1.0), 0.37, 0.02),
    ]
    .iter()
    .all(|&p| p);
    report("A6", pass, "h/J = 2 channel and output thresholds".into());
    assert!(pass);
}

#[test]
fn a07_critical_field() {
    let t = 0.01;
    let at = |h| f_avg(1.0, 1.1, h, t);
    let f1 = at(1.0);
    let crossing = threshold(
        Quantity::FAvgTwoThirds,
        Param::H,
        &PointValues { temperature: t, ..base(1.1, 0.0) },
        (1.0, 3.0),
    )
    .unwrap();
    let f22 = at(2.2);
    let f50 = at(50.0);
    let checks = [
        ("F_A(h=1) = 1 +- 1e-3", f1, within(f1, 1.0, 1e-3)),
        ("F_A = 2/3 at h = 2.06 +- 0.02", crossing, within(crossing, 2.06, 0.02)),
        ("F_A(h=2.2) = 0.25 +- 0.05", f22, within(f22, 0.25, 0.05)),
        ("F_A(h=50) = 1/3 +- 1e-3", f50, within(f50, 1.0 / 3.0, 1e-3)),
    ];
    for (what, value, ok) in &checks {
        println!("     A7 {what}: got {value:.6} {}", if *ok { "ok" } else { "MISS" });
    }
    // location of the fidelity dip, for the record
    let (h_min, f_min) = (0..=1000)
        .map(|i| 1.9 + 0.3 * i as f64 / 1000.0)
        .map(|h| (h, at(h)))
        .fold((0.0, f64::INFINITY), |acc, (h, f)| if f < acc.1 { (h, f) } else { acc });
    println!("     A7 dip minimum F_A = {f_min:.4} at h/J = {h_min:.4}");
    let pass = checks.iter().all(|c| c.2);
    report("A7", pass, "critical field at T/J = 0.01, Delta = 1.1".into());
    assert!(pass);
}

/// Returns `(J1 crossings in the h = 0 column, largest h on the contour)`.
fn contour_extent(delta: f64) -> (Vec<f64>, f64) {
    let at = PointValues { temperature: 0.2, ..base(delta, 0.0) };
    let by_h = contour(&ContourSpec {
        axis1: AxisSpec::new(Param::H, 0.0, 3.0, 31).unwrap(),
        axis2: AxisSpec::new(Param::J1, -3.0, 3.0, 121).unwrap(),
        base: at,
        level: CLASSICAL_FIDELITY_BOUND,
    })
    .unwrap();
    let j1_at_zero: Vec<f64> = by_h.points.iter().filter(|(h, _)| *h == 0.0).map(|(_, j)| *j).collect();
    let by_j1 = contour(&ContourSpec {
        axis1: AxisSpec::new(Param::J1, -3.0, 3.0, 601).unwrap(),
        axis2: AxisSpec::new(Param::H, 0.0, 4.0, 81).unwrap(),
        base: at,
        level: CLASSICAL_FIDELITY_BOUND,
    })
    .unwrap();
    let h_max = by_j1.points.iter().map(|(_, h)| *h).fold(f64::NEG_INFINITY, f64::max);
    (j1_at_zero, h_max)
}

#[test]
fn a08_contour_extents() {
    let mut pass = true;
    for (delta, j1_target, h_target) in [(1.0, 0.84, 1.33), (2.0, 1.33, 2.35)] {
        let (j1s, h_max) = contour_extent(delta);
        let ok = j1s.len() == 2
            && j1s.iter().all(|j| within(j.abs(), j1_target, 0.05))
            && within(h_max, h_target, 0.05);
        println!(
            "     A8 Delta={delta}: h=0 crossings J1/J = {j1s:.4?} (target +-{j1_target}), max h/J = {h_max:.4} (target {h_target}) +- 0.05"
        );
        pass &= ok;
    }
    report("A8", pass, "F_A = 2/3 contour extents at T/J = 0.2".into());
    assert!(pass);
}

#[test]
fn a09_asymptotes() {
    let hot = f_avg(1.0, 2.0, 0.0, 1000.0);
    let at = |delta| point(&PointValues { temperature: 0.01, ..base(delta, 0.0) }).unwrap().measures.c_out;
    let (c15, c09) = (at(1.5), at(0.9));
    let pass = within(hot, 0.25, 1e-3) && c15 >= 0.99 && c09 == 0.0;
    report(
        "A9",
        pass,
        format!("F_A(T=1000) = {hot:.6}; C_out(Delta=1.5) = {c15:.6} (>= 0.99); C_out(Delta=0.9) = {c09}"),
    );
    assert!(pass);
}

#[test]
fn a10_property_suites_and_sign_probe() {
    let mut rng = sampler(SEED + 10);
    let mut worst_trace: f64 = 0.0;
    let mut worst_neg: f64 = 0.0;
    let mut worst_prob: f64 = 0.0;
    let mut worst_out: f64 = 0.0;
    for _ in 0..10_000 {
        let s = Sample::draw(&mut rng);
        let rho = channel_density(&s.params, s.temperature).unwrap();
        worst_trace = worst_trace.max((rho.trace() - 1.0).abs());
        worst_neg = worst_neg.max(-rho.eigenvalues().iter().copied().fold(0.0, f64::min));
        let probs = bell_probabilities(&rho);
        worst_prob = worst_prob.max((probs.sum() - 1.0).abs());
        worst_neg = worst_neg.max(-probs.p.iter().copied().fold(0.0, f64::min));
        let out = teleport_closed_form(&rho, &s.state);
        worst_out = worst_out.max((out.trace() - 1.0).abs());
        worst_neg = worst_neg.max(-out.eigenvalues().iter().copied().fold(0.0, f64::min));
    }
    let pass = worst_trace <= 1e-12 && worst_prob <= 1e-12 && worst_out <= 1e-12 && worst_neg <= 1e-12;
    report(
        "A10",
        pass,
        format!(
            "10^4 draws: |tr rho_ch - 1| {worst_trace:.2e}, |sum p - 1| {worst_prob:.2e}, |tr rho_out - 1| {worst_out:.2e}, most negative eigenvalue {worst_neg:.2e}"
        ),
    );

    // J1 -> -J1 probe over the contour window; recorded only
    let mut probe: f64 = 0.0;
    let mut at = (0.0, 0.0, 0.0);
    for delta in [1.0, 2.0] {
        for i in 0..=60 {
            for k in 0..=40 {
                let j1 = 3.0 * i as f64 / 60.0;
                let h = 3.0 * k as f64 / 40.0;
                let d = (f_avg(j1, delta, h, 0.2) - f_avg(-j1, delta, h, 0.2)).abs();
                if d > probe {
                    probe = d;
                    at = (delta, j1, h);
                }
            }
        }
    }
    println!(
        "     A10 probe: max |F_A(J1) - F_A(-J1)| = {probe:.4} at Delta={}, |J1|={:.2}, h={:.3} (T/J = 0.2)",
        at.0, at.1, at.2
    );
    assert!(pass);
}

#[test]
fn a11_field_gate() {
    let at = |h, t| f_avg(1.0, 2.0, h, t);
    let (with_field, without) = (at(2.0, 0.3), at(0.0, 0.3));
    let enhanced = with_field > without;
    let peak = (0..=4000)
        .map(|i| 10f64.powf(-3.0 + 4.0 * i as f64 / 4000.0))
        .map(|t| at(2.5, t))
        .fold(f64::NEG_INFINITY, f64::max);
    let blocked = peak <= CLASSICAL_FIDELITY_BOUND;
    println!(
        "     A11 F_A(T=0.3): h=2 -> {with_field:.4}, h=0 -> {without:.4} {}",
        if enhanced { "ok" } else { "MISS" }
    );
    println!(
        "     A11 max_T F_A(h=2.5) over T in [1e-3, 10] = {peak:.4} {}",
        if blocked { "ok" } else { "MISS" }
    );
    let pass = enhanced && blocked;
    report("A11", pass, "field enhancement and h/J = 2.5 cutoff at Delta = 2".into());
    assert!(pass);
}
