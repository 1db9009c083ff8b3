use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use sg_tadpole::dynamics::{instability_experiment, ExperimentOptions};
use sg_tadpole::existence::{
    branch_window, build_state, classify, existence_function, morse_case, solve_gluing, sweep, SolvedGluing,
};
use sg_tadpole::profiles::Branch;
use sg_tadpole::spectral::{
    direct_spectrum, kernel_certificate, lobe_condition_check, potential_spectrum, sample_state, splitting_consistency,
    splitting_spectrum, stability_verdict, GridFunction,
};
use sg_tadpole::{Error, Grid, Modulus, Spectrum, State};

use crate::manifest::{Command, KChoice, RunManifest, TestOperator};
use crate::output::{fmt_float, metadata, write_csv, write_json};
use crate::CliError;

/// Eigenvalues requested from each spectral solver.
const EIGEN_COUNT: usize = 6;

/// Runs a manifest and writes its outputs, including `manifest.json`.
pub fn run(m: &RunManifest) -> Result<(), CliError> {
    let out = &m.output_dir;
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    write_json(&out.join("manifest.json"), m)?;
    match m.command {
        Command::Profile => cmd_profile(m),
        Command::Exists => cmd_exists(m),
        Command::Spectrum => cmd_spectrum(m),
        Command::Evolve => cmd_evolve(m),
        Command::Certify => cmd_certify(m),
    }
}

/// The state a manifest asks for, with the gluing solve when `k` is automatic.
fn resolve_state(m: &RunManifest) -> Result<(State, Option<SolvedGluing<f64>>), Error> {
    let g = &m.params;
    match m.k {
        KChoice::Auto => {
            let solved = solve_gluing(g, m.branch)?;
            Ok((solved.state, Some(solved)))
        }
        KChoice::Value(k) => {
            if m.branch != Branch::Center {
                let window = branch_window(g, m.branch)?;
                if !(k > window.0 && k < window.1) {
                    return Err(Error::BranchMismatch {
                        k,
                        branch: m.branch.name(),
                        window,
                    });
                }
            }
            Ok((build_state(g, &Modulus::new(k)?, m.branch)?, None))
        }
    }
}

fn case_label(m: &RunManifest) -> Option<String> {
    classify(&m.params, m.branch).ok().map(|c| c.case_id)
}

fn state_summary(s: &State, solved: Option<&SolvedGluing<f64>>) -> Value {
    let branch = s.branch();
    json!({
        "branch": branch.name(),
        "k": s.modulus().k(),
        "a": s.shift(),
        "energy": s.energy(),
        "vertex_value": s.vertex_value(),
        "switch_point": s.loop_profile.switch_point(),
        "continuity_defect": s.continuity_defect(),
        "flux_residual": s.flux_residual(),
        "h_of_k": (branch != Branch::Center)
            .then(|| existence_function(&s.params, &s.modulus(), branch).ok())
            .flatten(),
        "morse_case": solved.and_then(morse_case),
    })
}

fn cmd_profile(m: &RunManifest) -> Result<(), CliError> {
    let (s, solved) = resolve_state(m)?;
    let d = m.grid.resolve(&m.params)?;
    let out = &m.output_dir;
    let row = |x: f64, v: f64, dv: f64| vec![fmt_float(x), fmt_float(v), fmt_float(dv)];
    write_csv(
        &out.join("profile_loop.csv"),
        &["x", "value", "derivative"],
        (0..d.n_loop).map(|i| {
            let x = d.loop_x(i);
            row(x, s.loop_profile.value(x), s.loop_profile.derivative(x))
        }),
    )?;
    write_csv(
        &out.join("profile_tail.csv"),
        &["x", "value", "derivative"],
        (0..d.n_tail).map(|j| {
            let x = d.tail_x(j);
            row(x, s.tail.value(x), s.tail.derivative(x))
        }),
    )?;
    write_json(
        &out.join("profile.json"),
        &json!({
            "params": m.params,
            "case_label": solved.as_ref().map(|x| x.case.case_id.clone()).or_else(|| case_label(m)),
            "state": state_summary(&s, solved.as_ref()),
            "metadata": metadata(Some(&m.params), Some(&d), None),
        }),
    )
}

fn cmd_exists(m: &RunManifest) -> Result<(), CliError> {
    let g = &m.params;
    let out = &m.output_dir;
    let case = classify(g, m.branch)?;
    let rows = if m.branch == Branch::Center { Vec::new() } else { sweep(g, m.branch, m.samples)? };
    write_csv(
        &out.join("exists_sweep.csv"),
        &["k", "a", "H", "case"],
        rows.iter()
            .map(|r| vec![fmt_float(r.k), fmt_float(r.a), fmt_float(r.h), case.case_id.clone()]),
    )?;
    let solved = solve_gluing(g, m.branch);
    let (roots, selected, error) = match &solved {
        Ok(s) => (
            s.roots
                .iter()
                .map(|r| json!({"k": r.modulus.k(), "a": r.shift, "mismatch": r.mismatch, "valid": r.valid}))
                .collect(),
            Some(state_summary(&s.state, Some(s))),
            None,
        ),
        Err(e) => (Vec::new(), None, Some(e.to_string())),
    };
    write_json(
        &out.join("roots.json"),
        &json!({
            "params": g,
            "case": case,
            "roots": roots,
            "selected": selected,
            "error": error,
            "metadata": metadata(Some(g), None, None),
        }),
    )?;
    solved.map(|_| ()).map_err(CliError::from)
}

/// Report without the mode shape, which goes to CSV.
fn report_json(r: &Spectrum) -> Value {
    let mut v = serde_json::to_value(r).unwrap_or(Value::Null);
    if let Value::Object(map) = &mut v {
        map.remove("ground_mode");
    }
    v
}

fn write_mode(path: &Path, d: &Grid, mode: &GridFunction<f64>) -> Result<(), CliError> {
    let lp = (0..d.n_loop).map(|i| vec!["loop".into(), fmt_float(d.loop_x(i)), fmt_float(mode.loop_values[i])]);
    let tp = (0..d.n_tail).map(|j| vec!["tail".into(), fmt_float(d.tail_x(j)), fmt_float(mode.tail_values[j])]);
    write_csv(path, &["edge", "x", "value"], lp.chain(tp))
}

/// The positive test operator: `V ≡ 1` on both edges, edge of the essential spectrum 1.
fn test_spectrum(m: &RunManifest, d: &Grid) -> Result<Spectrum, Error> {
    match m.test_operator {
        Some(TestOperator::Positive) | None => potential_spectrum(&m.params, d, EIGEN_COUNT, |_| 1.0, |_| 1.0, 1.0),
    }
}

/// Direct and splitting spectra with the consistency check and kernel certificate.
fn spectral_bundle(s: &State, d: &Grid) -> Result<(Spectrum, Value), Error> {
    let direct = direct_spectrum(s, d, EIGEN_COUNT)?;
    let split = splitting_spectrum(s, d, EIGEN_COUNT)?;
    let sup = sample_state(s, d)?.potential_sup();
    let check = splitting_consistency(&direct, &split, sup);
    let cert = kernel_certificate(s, &direct, sup);
    let extra = json!({
        "splitting": {
            "periodic": report_json(&split.periodic),
            "delta": report_json(&split.delta),
            "odd_dirichlet": split.odd_dirichlet,
            "matching": split.matching,
            "check": check,
        },
        "kernel_certificate": cert,
        "lobe_condition": lobe_condition_check(s, d)?,
    });
    Ok((direct, extra))
}

fn cmd_spectrum(m: &RunManifest) -> Result<(), CliError> {
    let d = m.grid.resolve(&m.params)?;
    let out = &m.output_dir;
    let (direct, extra, state) = if m.test_operator.is_some() {
        (test_spectrum(m, &d)?, Value::Null, Value::Null)
    } else {
        let (s, solved) = resolve_state(m)?;
        let (direct, extra) = spectral_bundle(&s, &d)?;
        (direct, extra, state_summary(&s, solved.as_ref()))
    };
    if let Some(mode) = &direct.ground_mode {
        write_mode(&out.join("ground_mode.csv"), &d, mode)?;
    }
    write_json(
        &out.join("spectrum.json"),
        &json!({
            "params": m.params,
            "case_label": case_label(m),
            "state": state,
            "direct": report_json(&direct),
            "checks": extra,
            "test_operator": m.test_operator,
            "metadata": metadata(Some(&m.params), Some(&d), Some(direct.tol_zero)),
        }),
    )
}

fn evolution_summary(s: &State, d: &Grid, direct: &Spectrum, amplitude: f64) -> Result<(Value, Vec<Vec<String>>), Error> {
    let trace = instability_experiment(s, d, direct, amplitude, ExperimentOptions::default())?;
    let predicted = (-direct.eigenvalues[0]).sqrt();
    let mismatch = trace.fitted_growth.map(|f| (f - predicted).abs() / predicted);
    let rows = trace
        .times
        .iter()
        .zip(&trace.deviation_norms)
        .zip(&trace.energies)
        .map(|((t, dv), e)| vec![fmt_float(*t), fmt_float(*dv), fmt_float(*e)])
        .collect();
    let summary = json!({
        "amplitude": amplitude,
        "fitted_growth": trace.fitted_growth,
        "predicted_growth": predicted,
        "relative_mismatch": mismatch,
        "fit_window": trace.fit_window,
        "fit_residual": trace.fit_residual,
        "blew_up": trace.blew_up,
        "max_continuity_defect": trace.max_continuity_defect,
        "final_time": trace.times.last(),
    });
    Ok((summary, rows))
}

fn cmd_evolve(m: &RunManifest) -> Result<(), CliError> {
    let (s, solved) = resolve_state(m)?;
    let d = m.grid.resolve(&m.params)?;
    let direct = direct_spectrum(&s, &d, EIGEN_COUNT)?;
    let (summary, rows) = evolution_summary(&s, &d, &direct, m.amplitude)?;
    let out = &m.output_dir;
    write_csv(&out.join("trace.csv"), &["t", "deviation", "energy"], rows)?;
    write_json(
        &out.join("evolve.json"),
        &json!({
            "params": m.params,
            "case_label": case_label(m),
            "state": state_summary(&s, solved.as_ref()),
            "evolution": summary,
            "metadata": metadata(Some(&m.params), Some(&d), Some(direct.tol_zero)),
        }),
    )
}

fn cmd_certify(m: &RunManifest) -> Result<(), CliError> {
    let d = m.grid.resolve(&m.params)?;
    let out = &m.output_dir;
    let mut doc = json!({
        "params": m.params,
        "test_operator": m.test_operator,
    });
    let direct = if m.test_operator.is_some() {
        doc["case_label"] = Value::Null;
        test_spectrum(m, &d)?
    } else {
        let (s, solved) = resolve_state(m)?;
        let (direct, extra) = spectral_bundle(&s, &d)?;
        doc["case_label"] = json!(solved.as_ref().map(|x| x.case.case_id.clone()).or_else(|| case_label(m)));
        doc["state"] = state_summary(&s, solved.as_ref());
        doc["checks"] = extra;
        if m.evolve && direct.morse_index == 1 {
            let (summary, rows) = evolution_summary(&s, &d, &direct, m.amplitude)?;
            write_csv(&out.join("trace.csv"), &["t", "deviation", "energy"], rows)?;
            doc["evolution"] = summary;
        }
        direct
    };
    let v = stability_verdict(&direct);
    doc["verdict"] = json!(v.verdict);
    doc["stability"] = json!(v);
    doc["direct"] = report_json(&direct);
    doc["metadata"] = metadata(Some(&m.params), Some(&d), Some(direct.tol_zero));
    write_json(&out.join("verdict.json"), &doc)
}
