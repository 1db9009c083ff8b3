use std::f64::consts::PI;

use sg_tadpole::existence::solve_gluing;
use sg_tadpole::profiles::{Branch, GraphParams, StationaryState};
use sg_tadpole::spectral::{
    direct_spectrum, kernel_certificate, lobe_condition_check, potential_spectrum, quadratic_form_q, sample_state,
    splitting_consistency, splitting_spectrum, stability_verdict, weighted_norm_sq, Discretization, Verdict,
};

fn case_2ia() -> StationaryState<f64> {
    let g = GraphParams::new(1.5, 1.0, 0.5, 1.0).unwrap();
    solve_gluing(&g, Branch::AbovePi).unwrap().state
}

#[test]
fn ground_mode_realises_the_quadratic_form_minimum() {
    let s = case_2ia();
    let d = Discretization::default_for(&s.params).unwrap();
    let r = direct_spectrum(&s, &d, 3).unwrap();
    let mode = r.ground_mode.clone().unwrap();
    let q = quadratic_form_q(&s, &d, &mode).unwrap() / weighted_norm_sq(&s.params, &d, &mode);
    assert!((q - r.coarse[0]).abs() < 1e-6 * r.coarse[0].abs(), "{q} vs {}", r.coarse[0]);

    // The state's own profile has negative energy: a direct witness of n >= 1.
    let profile = sample_state(&s, &d).unwrap().values;
    assert!(quadratic_form_q(&s, &d, &profile).unwrap() < 0.0);
}

#[test]
fn case_2ia_certifies_unstable() {
    let s = case_2ia();
    let d = Discretization::default_for(&s.params).unwrap();
    let r = direct_spectrum(&s, &d, 4).unwrap();
    let sup = sample_state(&s, &d).unwrap().potential_sup();
    assert!(lobe_condition_check(&s, &d).unwrap());
    let cert = kernel_certificate(&s, &r, sup);
    assert!(cert.trivial && cert.numerical_trivial);
    assert_eq!(cert.case_label.as_deref(), Some("alpha != -Z (i)"));
    let v = stability_verdict(&r);
    assert_eq!(v.verdict, Verdict::LinearlyUnstable);
    assert!((v.predicted_growth.unwrap() - (-r.eigenvalues[0]).sqrt()).abs() < 1e-15);
    assert!(v.observed_gap > r.tol_zero);
}

#[test]
fn matching_route_agrees_with_direct_solver() {
    let g = GraphParams::new(1.0, 1.0, 1.0, 2.0 / PI).unwrap();
    let s = StationaryState::degenerate(g).unwrap();
    let d = Discretization::default_for(&g).unwrap();
    let r = direct_spectrum(&s, &d, 4).unwrap();
    let split = splitting_spectrum(&s, &d, 4).unwrap();
    let sup = sample_state(&s, &d).unwrap().potential_sup();
    let check = splitting_consistency(&r, &split, sup);
    assert!(check.matching_consistent);
    for e in &check.entries {
        assert!(e.matching_gap <= check.tolerance);
    }
    // The loop sub-problem sees the constant potential cos(pi) = -1.
    assert!((split.periodic.coarse[0] + 1.0).abs() < 1e-5);
}

#[test]
fn artificial_positive_operator_is_inconclusive() {
    let g = GraphParams::new(1.0, 1.0, 1.0, -0.5).unwrap();
    let d = Discretization::default_for(&g).unwrap();
    let r = potential_spectrum(&g, &d, 3, |_| 1.0, |_| 1.0, 1.0).unwrap();
    assert_eq!(r.morse_index, 0);
    let v = stability_verdict(&r);
    assert_eq!(v.verdict, Verdict::Inconclusive);
    assert!(v.predicted_growth.is_none());
}
