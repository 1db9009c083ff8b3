//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use sg_tadpole::dynamics::{instability_experiment, EvolutionState, ExperimentOptions, GraphDynamics};
use sg_tadpole::elliptic::EllipticModulus;
use sg_tadpole::existence::{lobe_bound, modulus_threshold_k0, morse_case, neumann_roots, solve_gluing};
use sg_tadpole::profiles::{Branch, GraphParams, StationaryState};
use sg_tadpole::spectral::{
    direct_spectrum, laplacian_point_spectrum, laplacian_spectrum, sample_state, splitting_spectrum,
    splitting_consistency, Discretization, SpectrumReport,
};

/// Writes to the stderr handle directly so the line survives test output capture.
fn verdict(n: u32, name: &str, pass: bool, detail: String) {
    let status = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "acceptance {n:>2} {status} {name}: {detail}");
    assert!(pass, "acceptance {n} ({name}) failed: {detail}");
}

fn degenerate_state() -> StationaryState<f64> {
    let g = GraphParams::new(1.0, 1.0, 1.0, 2.0 / PI).unwrap();
    StationaryState::degenerate(g).unwrap()
}

fn case_2ia_state() -> StationaryState<f64> {
    let g = GraphParams::new(1.5, 1.0, 0.5, 1.0).unwrap();
    let solved = solve_gluing(&g, Branch::AbovePi).unwrap();
    assert_eq!(solved.case.case_id, "2(i)(a)");
    assert_eq!(morse_case(&solved).as_deref(), Some("exemplos-2(i)(a)"));
    solved.state
}

fn spectrum(s: &StationaryState<f64>) -> (Discretization<f64>, SpectrumReport<f64>, f64) {
    let d = Discretization::default_for(&s.params).unwrap();
    let r = direct_spectrum(s, &d, 6).unwrap();
    let sup = sample_state(s, &d).unwrap().potential_sup();
    (d, r, sup)
}

#[test]
fn acceptance_01_modulus_threshold() {
    let t = Instant::now();
    let g = GraphParams::new(PI, 1.0, 1.0, 0.0).unwrap();
    let k0 = modulus_threshold_k0(&g).unwrap().k();
    let el = t.elapsed();
    let pass = (k0 - 0.98443).abs() <= 1e-4 && el < Duration::from_secs(1);
    verdict(1, "modulus threshold", pass, format!("k0 = {k0:.8} in {el:?}"));
}

#[test]
fn acceptance_02_lobe_bound_constants() {
    let t = Instant::now();
    let lb = lobe_bound::<f64>();
    let k2 = lb.k() * lb.k();
    let kk = lb.quarter_period();
    let el = t.elapsed();
    let pass = (lb.theta0 - 4.4934).abs() <= 1e-3
        && (k2 - 0.3914).abs() <= 1e-3
        && (kk - 1.77160).abs() <= 1e-4
        && el < Duration::from_secs(1);
    verdict(
        2,
        "lobe-bound constants",
        pass,
        format!("theta0 = {:.6}, k_l^2 = {k2:.6}, K(k_l) = {kk:.6} in {el:?}", lb.theta0),
    );
}

#[test]
fn acceptance_03_three_pi_loop() {
    let t = Instant::now();
    let g = GraphParams::new(3.0 * PI, 1.0, 2.0, 0.0).unwrap();
    let zeros: Vec<f64> = neumann_roots(&g, 0.0).unwrap().iter().map(|m| m.k()).filter(|k| *k > 1e-6).collect();
    let quarter: Vec<f64> = neumann_roots(&g, 0.25).unwrap().iter().map(|m| m.k()).collect();
    let chosen = solve_gluing(&g, Branch::Crossing).unwrap().modulus().k();
    let el = t.elapsed();

    // Zeros are compared in the parameter m = k²; quarter roots in k.
    let zeros_m: Vec<f64> = zeros.iter().map(|k| k * k).collect();
    let zeros_ok = zeros_m.len() == 2 && (zeros_m[0] - 0.84).abs() <= 5e-3 && (zeros_m[1] - 0.9987).abs() <= 5e-4;
    let want = [(0.32, 1e-2), (0.81, 1e-2), (0.999, 1e-3)];
    let quarter_ok: Vec<bool> = want
        .iter()
        .enumerate()
        .map(|(i, (w, tol))| quarter.get(i).is_some_and(|k| (k - w).abs() <= *tol))
        .collect();
    let third_ok = quarter.len() == 3 && (chosen - quarter[2]).abs() < 1e-9;
    let pass = zeros_ok && quarter.len() == 3 && quarter_ok.iter().all(|b| *b) && third_ok && el < Duration::from_secs(5);
    verdict(
        3,
        "L = 3pi reproduction",
        pass,
        format!(
            "zeros m = {zeros_m:.6?} ({}), quarter roots k = {quarter:.6?} (per-root {quarter_ok:?}), selected k = {chosen:.7} ({}) in {el:?}",
            if zeros_ok { "ok" } else { "off" },
            if third_ok { "third root" } else { "wrong root" }
        ),
    );
}

#[test]
fn acceptance_04_laplacian_point_spectrum() {
    let t = Instant::now();
    let mut pass = true;
    let mut notes = Vec::new();
    for z in [0.5f64, 1.0, 2.0, 0.0, -1.0] {
        let g = GraphParams::new(1.0, 1.0, 1.0, z).unwrap();
        let d = Discretization::default_for(&g).unwrap();
        let r = laplacian_spectrum(&g, &d, 4).unwrap();
        let exact = laplacian_point_spectrum(&g, 0).unwrap();
        match exact.negative_eigenvalue {
            Some(e) => {
                let ok = r.morse_index == 1 && r.eigenvalues.len() == 1 && ((r.eigenvalues[0] - e) / e).abs() <= 1e-4;
                pass &= ok;
                notes.push(format!("Z={z}: {:.8} vs {e:.8}", r.eigenvalues.first().copied().unwrap_or(f64::NAN)));
            }
            None => {
                let ok = r.morse_index == 0 && r.eigenvalues.is_empty();
                pass &= ok;
                notes.push(format!("Z={z}: {} negative", r.morse_index));
            }
        }
    }
    let el = t.elapsed();
    pass &= el < Duration::from_secs(30);
    verdict(4, "Laplacian spectrum", pass, format!("{} in {el:?}", notes.join("; ")));
}

#[test]
fn acceptance_05a_degenerate_morse_kernel() {
    let t = Instant::now();
    let s = degenerate_state();
    let (d, r, _) = spectrum(&s);
    let split = splitting_spectrum(&s, &d, 4).unwrap();
    let periodic_ground = split.periodic.coarse[0];
    let el = t.elapsed();
    let pass = r.morse_index == 1
        && r.kernel_dim == 0
        && (periodic_ground + 1.0).abs() <= 1e-5
        && d.h <= 1e-3 + 1e-15
        && el < Duration::from_secs(60);
    verdict(
        5,
        "degenerate state Morse/kernel",
        pass,
        format!(
            "n = {}, ker = {}, lambda0 = {:.8}, periodic ground = {periodic_ground:.10}, tol_zero = {:e}, h = {:e} in {el:?}",
            r.morse_index, r.kernel_dim, r.eigenvalues[0], r.tol_zero, d.h
        ),
    );
}

#[test]
fn acceptance_05b_case_2ia_morse_kernel() {
    let t = Instant::now();
    let s = case_2ia_state();
    let lb = lobe_bound::<f64>();
    let k = s.modulus().k();
    let (d, r, _) = spectrum(&s);
    let el = t.elapsed();
    let pass = s.params.loop_ratio() < lb.quarter_period()
        && k <= lb.k()
        && r.morse_index == 1
        && r.kernel_dim == 0
        && el < Duration::from_secs(60);
    verdict(
        5,
        "case 2(i)(a) state Morse/kernel",
        pass,
        format!(
            "k = {k:.6} <= k_l = {:.6}, n = {}, ker = {}, lambda0 = {:.8}, h = {:e} in {el:?}",
            lb.k(),
            r.morse_index,
            r.kernel_dim,
            r.eigenvalues[0],
            d.h
        ),
    );
}

#[test]
fn acceptance_06_splitting_consistency() {
    let t = Instant::now();
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, s) in [("degenerate", degenerate_state()), ("2(i)(a)", case_2ia_state())] {
        let (d, r, sup) = spectrum(&s);
        let split = splitting_spectrum(&s, &d, 6).unwrap();
        let check = splitting_consistency(&r, &split, sup);
        pass &= check.separated_consistent;
        for e in &check.entries {
            notes.push(format!(
                "{name}: lambda = {:.8}, |PBP gap| = {:.2e}, |dBP gap| = {:.2e}, |odd gap| = {:.2e}, |matching gap| = {:.2e}, tol = {:.2e}",
                e.eigenvalue, e.periodic_gap, e.delta_gap, e.dirichlet_gap, e.matching_gap, check.tolerance
            ));
        }
        notes.push(format!("{name}: matching-consistent = {}", check.matching_consistent));
    }
    let el = t.elapsed();
    pass &= el < Duration::from_secs(60);
    verdict(6, "splitting consistency", pass, format!("{} in {el:?}", notes.join("; ")));
}

#[test]
fn acceptance_07_perron_frobenius() {
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, s) in [("degenerate", degenerate_state()), ("2(i)(a)", case_2ia_state())] {
        let (_, r, _) = spectrum(&s);
        let mode = r.ground_mode.as_ref().unwrap();
        let nt = mode.tail_values.len();
        let interior_positive = mode.loop_values.iter().chain(&mode.tail_values[..nt - 1]).all(|v| *v > 0.0);
        let end_zero = mode.tail_values[nt - 1] == 0.0;
        let odd = mode.loop_odd_part();
        pass &= interior_positive && end_zero && odd < 1e-8;
        notes.push(format!("{name}: positive = {interior_positive}, odd part = {odd:e}"));
    }
    verdict(7, "Perron-Frobenius ground mode", pass, notes.join("; "));
}

#[test]
fn acceptance_08_dynamics_self_consistency() {
    let s = case_2ia_state();
    let g = s.params;
    let d = Discretization::new(g.loop_half_length, 1e-3, 40.0 * g.c2).unwrap();
    let dy = GraphDynamics::new(&g, &d).unwrap();
    // The sampled profile carries an O(h²) truncation residual; the discrete
    // flow's stationary state is its Newton-polished equilibrium.
    let sampled = sample_state(&s, &d).unwrap().values;
    let polished = dy.equilibrium(&sampled).unwrap();
    let offset = polished
        .loop_values
        .iter()
        .zip(&sampled.loop_values)
        .chain(polished.tail_values.iter().zip(&sampled.tail_values))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let rest = EvolutionState::at_rest(&polished);
    let dt = 0.5 * dy.cfl_limit();

    let short = dy.evolve(&rest, &rest, 1.0, dt, 50).unwrap();
    let drift = short.deviation_norms.iter().copied().fold(0.0, f64::max);

    let long = dy.evolve(&rest, &rest, 20.0, dt, 200).unwrap();
    let e0 = long.energies[0];
    let energy_drift = long.energies.iter().map(|e| ((e - e0) / e0).abs()).fold(0.0, f64::max);

    // Energy error against dt on a perturbed state.
    let mut kicked = rest.clone();
    let n = kicked.u_loop.len();
    for (i, u) in kicked.u_loop.iter_mut().enumerate().take(n - 1).skip(1) {
        let x = d.loop_x(i) / g.loop_half_length;
        *u += 0.05 * (1.0 - x * x) * (3.0 * x).cos();
    }
    let errs: Vec<f64> = [1.0, 0.5, 0.25]
        .iter()
        .map(|f| {
            let tr = dy.evolve(&kicked, &rest, 2.0, f * dy.cfl_limit(), 1).unwrap();
            let e0 = tr.energies[0];
            tr.energies.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max)
        })
        .collect();
    let ratios = [errs[0] / errs[1], errs[1] / errs[2]];
    let second_order = ratios.iter().all(|r| (3.0..=5.0).contains(r));

    let pass = drift < 1e-6 && energy_drift < 1e-6 && second_order && long.max_continuity_defect < 1e-12;
    verdict(
        8,
        "dynamics self-consistency",
        pass,
        format!(
            "equilibrium offset from profile {offset:.2e}, deviation to t=1: {drift:.3e}, relative energy drift to t=20: {energy_drift:.3e}, energy error ratios {ratios:.3?}"
        ),
    );
}

#[test]
fn acceptance_09_instability_growth() {
    let t = Instant::now();
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, s) in [("degenerate", degenerate_state()), ("2(i)(a)", case_2ia_state())] {
        let (d, r, _) = spectrum(&s);
        let predicted = (-r.eigenvalues[0]).sqrt();
        let mut fitted = Vec::new();
        for amp in [1e-5, 1e-4, 1e-3] {
            let tr = instability_experiment(&s, &d, &r, amp, ExperimentOptions::default()).unwrap();
            fitted.push(tr.fitted_growth.unwrap_or(f64::NAN));
        }
        let within = fitted.iter().all(|f| ((f - predicted) / predicted).abs() <= 0.05);
        let hi = fitted.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = fitted.iter().copied().fold(f64::INFINITY, f64::min);
        let spread = (hi - lo) / lo;
        pass &= within && spread <= 0.03;
        notes.push(format!("{name}: predicted {predicted:.6}, fitted {fitted:.6?}, spread {spread:.2e}"));
    }
    let el = t.elapsed();
    pass &= el < Duration::from_secs(300);
    verdict(9, "instability growth", pass, format!("{} in {el:?}", notes.join("; ")));
}

#[test]
fn acceptance_10_elliptic_identities() {
    let t = Instant::now();
    let mut worst = 0.0f64;
    let ks: Vec<f64> = (0..40).map(|i| i as f64 / 40.0).chain([0.99, 0.999, 0.999_999, 1.0 - 1e-9]).collect();
    for &k in &ks {
        let m = EllipticModulus::new(k).unwrap();
        let kq = m.quarter_period();
        let kc = m.complement();
        for j in 0..201 {
            let u = -10.0 + 0.1 * j as f64;
            let a = m.jacobi(u);
            let b = m.jacobi(u + kq);
            let errs = [
                a.sn * a.sn + a.cn * a.cn - 1.0,
                a.dn * a.dn + k * k * a.sn * a.sn - 1.0,
                b.sn - a.cn / a.dn,
                b.cn + kc * a.sn / a.dn,
                b.dn - kc / a.dn,
            ];
            worst = errs.iter().fold(worst, |w, e| w.max(e.abs()));
        }
    }
    let el = t.elapsed();
    let pass = worst <= 1e-12 && el < Duration::from_secs(5);
    verdict(10, "elliptic identities", pass, format!("max defect {worst:.3e} over {} moduli in {el:?}", ks.len()));
}
