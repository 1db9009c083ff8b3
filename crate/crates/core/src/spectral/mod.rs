//! Spectra of the vertex Laplacian `F_Z` and of the linearization `L_Z`.
//!
//! Two independent routes are provided. The direct route discretizes the
//! whole graph (see [`GraphOperator`]) and counts eigenvalues exactly by
//! Sturm sequences on a bordered tridiagonal matrix. The splitting route
//! solves the periodic loop problem, the Robin tail problem, the odd
//! Dirichlet loop problem and the shooting/matching problem separately.

mod bordered;
mod grid;
mod operator;
mod sectors;
mod shooting;

use serde::{Deserialize, Serialize};

pub use bordered::{BorderedTridiagonal, SturmCount};
pub use sectors::{periodic_sectors, ReflectionSplit};
pub use grid::{sample_state, Discretization, GridFunction, SampledState};
pub use operator::{odd_half_loop, periodic_loop, robin_tail, GraphOperator};
pub use shooting::Shooting;

use crate::profiles::{lobe_function, GraphParams, StationaryState};
use crate::roots::bisect;
use crate::{Error, Real, Result};

/// How a report was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectralMethod {
    Direct,
    Splitting,
}

/// Discrete eigenvalues below an essential-spectrum edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport<T> {
    pub method: SpectralMethod,
    /// Richardson-extrapolated eigenvalues below `essential_edge − 10h`, ascending.
    pub eigenvalues: Vec<T>,
    /// The same eigenvalues on the grid with spacing `h`.
    pub coarse: Vec<T>,
    /// The same eigenvalues on the grid with spacing `h/2`.
    pub fine: Vec<T>,
    /// Eigenvalues in `[edge − 10h, edge)` on the coarse grid; low confidence.
    pub near_edge: Vec<T>,
    /// Number of eigenvalues below `−tol_zero` on the coarse grid.
    pub morse_index: usize,
    /// Number of eigenvalues in `[−tol_zero, tol_zero)` on the coarse grid.
    pub kernel_dim: usize,
    /// Smallest coarse eigenvalue at or above `tol_zero`, discrete or not.
    pub first_positive: T,
    pub tol_zero: T,
    pub essential_edge: T,
    pub h: T,
    /// Ground state of the coarse problem, unit in the weighted discrete norm.
    pub ground_mode: Option<GridFunction<T>>,
}

impl<T: Real> SpectrumReport<T> {
    pub fn ground_eigenvalue(&self) -> Option<T> {
        self.eigenvalues.first().copied()
    }

    /// Extrapolated eigenvalues below `−tol_zero`.
    pub fn negative(&self) -> Vec<T> {
        self.eigenvalues.iter().copied().filter(|l| *l < -self.tol_zero).collect()
    }
}

/// `tol_zero = max(1e-8, 5·h²·‖V‖∞)`.
pub fn zero_tolerance<T: Real>(h: T, potential_sup: T) -> T {
    T::lit(1e-8).max(T::lit(5.0) * h * h * potential_sup)
}

fn analyse<T: Real>(
    method: SpectralMethod,
    coarse_op: &dyn SturmCount<T>,
    fine_op: &dyn SturmCount<T>,
    h: T,
    edge: T,
    tol_zero: T,
    count: usize,
) -> SpectrumReport<T> {
    let cutoff = edge - T::lit(10.0) * h;
    let coarse = coarse_op.eigenvalues_below(cutoff, count);
    let fine: Vec<T> = (0..coarse.len()).map(|i| fine_op.eigenvalue(i)).collect();
    let eigenvalues = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (T::lit(4.0) * *f - *c) / T::lit(3.0))
        .collect();
    let below_edge = coarse_op.count_below(edge).min(count.max(coarse.len()));
    let near_edge = (coarse.len()..below_edge).map(|i| coarse_op.eigenvalue(i)).collect();
    let morse_index = coarse_op.count_below(-tol_zero);
    let upto = coarse_op.count_below(tol_zero);
    SpectrumReport {
        method,
        eigenvalues,
        coarse,
        fine,
        near_edge,
        morse_index,
        kernel_dim: upto - morse_index,
        first_positive: coarse_op.eigenvalue(upto.min(coarse_op.size() - 1)),
        tol_zero,
        essential_edge: edge,
        h,
        ground_mode: None,
    }
}

fn graph_spectrum<T: Real>(
    d: &Discretization<T>,
    edge: T,
    potential_sup: T,
    count: usize,
    build: impl Fn(&Discretization<T>) -> Result<GraphOperator<T>>,
) -> Result<SpectrumReport<T>> {
    let coarse = build(d)?;
    let fine = build(&d.refined())?;
    let tol_zero = zero_tolerance(d.h, potential_sup);
    let mut report = analyse(SpectralMethod::Direct, &coarse, &fine, d.h, edge, tol_zero, count);
    let (_, mut u) = coarse.ground()?;
    let total: T = u.iter().copied().sum();
    if total < T::zero() {
        u.iter_mut().for_each(|v| *v = -*v);
    }
    report.ground_mode = Some(coarse.from_unknowns(&u, T::zero()));
    Ok(report)
}

/// Assembles the discrete linearization `L_Z` about a state.
pub fn assemble_linearized<T: Real>(s: &StationaryState<T>, d: &Discretization<T>) -> Result<GraphOperator<T>> {
    let sampled = sample_state(s, d)?;
    GraphOperator::assemble(&s.params, d, &sampled.potential.loop_values, &sampled.potential.tail_values)
}

/// Assembles the discrete vertex Laplacian `F_Z`.
pub fn assemble_laplacian<T: Real>(g: &GraphParams<T>, d: &Discretization<T>) -> Result<GraphOperator<T>> {
    GraphOperator::assemble(g, d, &vec![T::zero(); d.n_loop], &vec![T::zero(); d.n_tail])
}

/// Lowest eigenvalues of the discrete `L_Z`, extrapolated from `h` and `h/2`.
pub fn direct_spectrum<T: Real>(s: &StationaryState<T>, d: &Discretization<T>, count: usize) -> Result<SpectrumReport<T>> {
    let sup = sample_state(s, d)?.potential_sup();
    graph_spectrum(d, T::one(), sup, count, |grid| assemble_linearized(s, grid))
}

/// Lowest eigenvalues of the discrete `F_Z`; the essential edge is `0`.
pub fn laplacian_spectrum<T: Real>(g: &GraphParams<T>, d: &Discretization<T>, count: usize) -> Result<SpectrumReport<T>> {
    g.validate()?;
    graph_spectrum(d, T::zero(), T::zero(), count, |grid| assemble_laplacian(g, grid))
}

/// Lowest eigenvalues of `−c_j² ∂ₓ² + V` for arbitrary edge potentials.
///
/// `loop_potential` is evaluated on `[−L, L]` and `tail_potential` on
/// `[0, R]`; `edge` is the limit of the tail potential at infinity.
pub fn potential_spectrum<T: Real>(
    g: &GraphParams<T>,
    d: &Discretization<T>,
    count: usize,
    loop_potential: impl Fn(T) -> T,
    tail_potential: impl Fn(T) -> T,
    edge: T,
) -> Result<SpectrumReport<T>> {
    g.validate()?;
    let sample = |grid: &Discretization<T>| {
        let lp: Vec<T> = (0..grid.n_loop).map(|i| loop_potential(grid.loop_x(i))).collect();
        let tp: Vec<T> = (0..grid.n_tail).map(|j| tail_potential(grid.tail_x(j))).collect();
        (lp, tp)
    };
    let (lp, tp) = sample(d);
    let sup = lp.iter().chain(&tp).fold(T::zero(), |m, v| m.max(v.abs()));
    graph_spectrum(d, edge, sup, count, |grid| {
        let (lp, tp) = sample(grid);
        GraphOperator::assemble(g, grid, &lp, &tp)
    })
}

/// Negative point spectrum of `F_Z` and its embedded loop eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaplacianPointSpectrum<T> {
    /// Positive root of `G(ρ) = ρ(2/c1·tanh(ρL/c1) + 1/c2) − Z`, when `Z > 0`.
    pub rho: Option<T>,
    /// `−ρ²`, when `Z > 0`.
    pub negative_eigenvalue: Option<T>,
    /// `|G(ρ)|` at the computed root.
    pub residual: T,
    /// Loop eigenvalues `n²π²c1²/L²` of modes vanishing at the vertex.
    pub dirichlet: Vec<T>,
}

/// `G(ρ) = ρ(2/c1·tanh(ρL/c1) + 1/c2) − Z`.
pub fn transcendental<T: Real>(g: &GraphParams<T>, rho: T) -> T {
    rho * (T::lit(2.0) / g.c1 * (rho * g.loop_half_length / g.c1).tanh() + T::one() / g.c2) - g.z
}

/// Closed-form negative spectrum of `F_Z` plus the first `dirichlet_count`
/// loop Dirichlet eigenvalues.
pub fn laplacian_point_spectrum<T: Real>(g: &GraphParams<T>, dirichlet_count: usize) -> Result<LaplacianPointSpectrum<T>> {
    g.validate()?;
    let dirichlet = (1..=dirichlet_count)
        .map(|n| {
            let w = T::count(n) * T::PI() * g.c1 / g.loop_half_length;
            w * w
        })
        .collect();
    if g.z <= T::zero() {
        return Ok(LaplacianPointSpectrum {
            rho: None,
            negative_eigenvalue: None,
            residual: T::zero(),
            dirichlet,
        });
    }
    let hi = T::lit(2.0) * g.z * g.c2;
    let rho = bisect(|r| transcendental(g, r), T::zero(), hi, T::epsilon() * hi);
    Ok(LaplacianPointSpectrum {
        rho: Some(rho),
        negative_eigenvalue: Some(-rho * rho),
        residual: transcendental(g, rho).abs(),
        dirichlet,
    })
}

/// Vertex residuals of `(cosh(ρx/c1)/cosh(ρL/c1), e^{−ρx/c2})`:
/// continuity defect and flux defect `f′(L) − f′(−L) − g′(0) − Z g(0)`.
pub fn laplacian_vertex_residuals<T: Real>(g: &GraphParams<T>, rho: T) -> (T, T) {
    let l = g.loop_half_length;
    let ch = (rho * l / g.c1).cosh();
    let f = |x: T| (rho * x / g.c1).cosh() / ch;
    let df = |x: T| rho / g.c1 * (rho * x / g.c1).sinh() / ch;
    let (g0, dg0) = (T::one(), -rho / g.c2);
    let continuity = (f(l) - g0).abs().max((f(-l) - g0).abs());
    let flux = df(l) - df(-l) - dg0 - g.z * g0;
    (continuity, flux.abs())
}

/// Results of the splitting route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplittingReport<T> {
    /// Periodic loop problem for `−c1²∂ₓ² + cos φ₁`.
    pub periodic: SpectrumReport<T>,
    /// Tail problem for `−c2²∂ₓ² + cos ψ` with `g′(0) = −Z g(0)`.
    pub delta: SpectrumReport<T>,
    /// Extrapolated eigenvalues of the odd Dirichlet loop problem on `(0, L)`.
    pub odd_dirichlet: Vec<T>,
    /// Eigenvalues of the graph problem from shooting and vertex matching.
    pub matching: Vec<T>,
}

/// Splitting-route spectra for a state.
pub fn splitting_spectrum<T: Real>(s: &StationaryState<T>, d: &Discretization<T>, count: usize) -> Result<SplittingReport<T>> {
    let coarse = sample_state(s, d)?;
    let fd = d.refined();
    let fine = sample_state(s, &fd)?;
    let c = &s.params;
    let edge = T::one();

    let lsup = coarse.potential.loop_values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let tsup = coarse.potential.tail_values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let periodic = {
        let (lc, lf) = (&coarse.potential.loop_values, &fine.potential.loop_values);
        let tol = zero_tolerance(d.h, lsup);
        if sectors::is_even(lc) && sectors::is_even(lf) {
            let (a, b) = (periodic_sectors(c.c1, d.h, lc), periodic_sectors(c.c1, fd.h, lf));
            analyse(SpectralMethod::Splitting, &a, &b, d.h, edge, tol, count)
        } else {
            let (a, b) = (periodic_loop(c.c1, d, lc), periodic_loop(c.c1, &fd, lf));
            analyse(SpectralMethod::Splitting, &a, &b, d.h, edge, tol, count)
        }
    };
    let delta = analyse(
        SpectralMethod::Splitting,
        &robin_tail(c.c2, c.z, d, &coarse.potential.tail_values),
        &robin_tail(c.c2, c.z, &fd, &fine.potential.tail_values),
        d.h,
        edge,
        zero_tolerance(d.h, tsup),
        count,
    );
    let odd = analyse(
        SpectralMethod::Splitting,
        &odd_half_loop(c.c1, d, &coarse.potential.loop_values),
        &odd_half_loop(c.c1, &fd, &fine.potential.loop_values),
        d.h,
        edge,
        zero_tolerance(d.h, lsup),
        count,
    );
    let lower = -T::one() - laplacian_point_spectrum(c, 0)?.rho.map_or(T::zero(), |r| r * r) - T::lit(0.1);
    let upper = edge - T::lit(10.0) * d.h;
    let shooting = Shooting::new(s, (d.loop_center() / 4).max(200), d.radius);
    let mut matching = shooting.eigenvalues(lower, upper, 2000);
    matching.truncate(count);
    Ok(SplittingReport {
        periodic,
        delta,
        odd_dirichlet: odd.eigenvalues,
        matching,
    })
}

/// How a direct eigenvalue is explained by the splitting route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitKind {
    /// Eigenvalue of both the periodic and the Robin tail problem.
    Shared,
    /// Odd loop mode vanishing on the tail.
    LoopDirichlet,
}

/// One direct negative eigenvalue against the splitting route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitMatch<T> {
    pub eigenvalue: T,
    pub periodic_gap: T,
    pub delta_gap: T,
    pub dirichlet_gap: T,
    pub matching_gap: T,
    /// Classification under the separated problems, if any fits.
    pub kind: Option<SplitKind>,
}

/// Consistency of the direct spectrum with the splitting route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplittingCheck<T> {
    pub tolerance: T,
    pub entries: Vec<SplitMatch<T>>,
    /// Every direct negative eigenvalue is a shared periodic/Robin eigenvalue
    /// or an odd Dirichlet loop eigenvalue.
    pub separated_consistent: bool,
    /// Every direct negative eigenvalue is a root of the matching function.
    pub matching_consistent: bool,
}

fn nearest<T: Real>(x: T, list: &[T]) -> T {
    list.iter().fold(T::infinity(), |m, v| m.min((*v - x).abs()))
}

/// Compares the direct negative eigenvalues with the splitting route at
/// tolerance `5·h²·‖V‖∞`.
pub fn splitting_consistency<T: Real>(direct: &SpectrumReport<T>, split: &SplittingReport<T>, potential_sup: T) -> SplittingCheck<T> {
    let h = direct.h;
    let tolerance = T::lit(5.0) * h * h * potential_sup;
    let entries: Vec<SplitMatch<T>> = direct
        .negative()
        .into_iter()
        .map(|l| {
            let periodic_gap = nearest(l, &split.periodic.eigenvalues);
            let delta_gap = nearest(l, &split.delta.eigenvalues);
            let dirichlet_gap = nearest(l, &split.odd_dirichlet);
            let matching_gap = nearest(l, &split.matching);
            let kind = if periodic_gap <= tolerance && delta_gap <= tolerance {
                Some(SplitKind::Shared)
            } else if dirichlet_gap <= tolerance {
                Some(SplitKind::LoopDirichlet)
            } else {
                None
            };
            SplitMatch {
                eigenvalue: l,
                periodic_gap,
                delta_gap,
                dirichlet_gap,
                matching_gap,
                kind,
            }
        })
        .collect();
    SplittingCheck {
        tolerance,
        separated_consistent: entries.iter().all(|e| e.kind.is_some()),
        matching_consistent: entries.iter().all(|e| e.matching_gap <= tolerance),
        entries,
    }
}

/// `T(θ) ≤ 1e-12` on every loop node and `T(ψ) < 0` on every tail node,
/// where `T(θ) = θ cos θ − sin θ`.
pub fn lobe_condition_check<T: Real>(s: &StationaryState<T>, d: &Discretization<T>) -> Result<bool> {
    let sampled = sample_state(s, d)?;
    let loop_ok = sampled.values.loop_values.iter().all(|&p| lobe_function(p) <= T::lit(1e-12));
    let tail_ok = sampled.values.tail_values.iter().all(|&p| lobe_function(p) < T::zero());
    Ok(loop_ok && tail_ok)
}

/// Trapezoid value of the weighted quadratic form
/// `Σ_j ∫ (v′)² + (cos φ_j / c_j²) v² − Z v(0)²`.
///
/// For any grid function with a vanishing value at `R`, this equals `vᵀAv`
/// for the direct stiffness matrix.
pub fn quadratic_form_q<T: Real>(s: &StationaryState<T>, d: &Discretization<T>, v: &GridFunction<T>) -> Result<T> {
    if v.loop_values.len() != d.n_loop || v.tail_values.len() != d.n_tail {
        return Err(Error::Configuration("grid function does not match grid".into()));
    }
    let scale = v.max_abs().max(T::min_positive_value());
    if v.continuity_defect() > T::tol(1e-12) * scale {
        return Err(Error::InvalidParameter(format!(
            "grid function is discontinuous at the vertex (defect {})",
            v.continuity_defect()
        )));
    }
    let sampled = sample_state(s, d)?;
    let g = &s.params;
    let h = d.h;
    let edge = |vals: &[T], pot: &[T], c: T| -> T {
        let n = vals.len();
        let grad: T = vals.windows(2).map(|w| (w[1] - w[0]) * (w[1] - w[0])).sum::<T>() / h;
        let pot: T = (0..n)
            .map(|i| {
                let wt = if i == 0 || i == n - 1 { h / T::lit(2.0) } else { h };
                wt * pot[i] * vals[i] * vals[i]
            })
            .sum();
        grad + pot / (c * c)
    };
    let v0 = v.vertex();
    Ok(edge(&v.loop_values, &sampled.potential.loop_values, g.c1)
        + edge(&v.tail_values, &sampled.potential.tail_values, g.c2)
        - g.z * v0 * v0)
}

/// Weighted discrete norm squared `Σ_j ∫ v²/c_j²` (trapezoid).
pub fn weighted_norm_sq<T: Real>(g: &GraphParams<T>, d: &Discretization<T>, v: &GridFunction<T>) -> T {
    let h = d.h;
    let trap = |vals: &[T]| -> T {
        let n = vals.len();
        (0..n)
            .map(|i| {
                let wt = if i == 0 || i == n - 1 { h / T::lit(2.0) } else { h };
                wt * vals[i] * vals[i]
            })
            .sum()
    };
    trap(&v.loop_values) / (g.c1 * g.c1) + trap(&v.tail_values) / (g.c2 * g.c2)
}

/// Analytic and numerical evidence for a trivial kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelCertificate<T> {
    /// `α_a = ψ″(0)/ψ′(0) = −tanh(a/c2)/c2`.
    pub alpha: T,
    /// Which analytic sufficient condition applies, if any.
    pub case_label: Option<String>,
    /// Smallest `|λ|` over the coarse discrete spectrum.
    pub min_abs_eigenvalue: T,
    /// `10·h²·max(1, ‖V‖∞)`.
    pub gap_threshold: T,
    /// `min |λ| > tol_zero` and `min |λ| > gap_threshold`.
    pub numerical_trivial: bool,
    pub trivial: bool,
}

/// Kernel certificate from the analytic case split and a direct report.
pub fn kernel_certificate<T: Real>(s: &StationaryState<T>, direct: &SpectrumReport<T>, potential_sup: T) -> KernelCertificate<T> {
    let g = &s.params;
    let a = s.shift();
    let alpha = -(a / g.c2).tanh() / g.c2;
    let matches = (alpha + g.z).abs() <= T::tol(1e-12) * (T::one() + g.z.abs());
    let degenerate = s.branch() == crate::profiles::Branch::Center;
    let case_label = if degenerate {
        Some("degenerate".to_string())
    } else if !matches {
        let sub = if g.z != T::zero() && a < T::zero() {
            " (i)"
        } else if g.z < T::zero() && a > T::zero() {
            " (ii)"
        } else if g.z == T::zero() && a != T::zero() {
            " (iii)"
        } else {
            ""
        };
        Some(format!("alpha != -Z{sub}"))
    } else if g.z <= T::zero() {
        Some("alpha = -Z, Z <= 0".to_string())
    } else {
        None
    };
    let closest = direct
        .coarse
        .iter()
        .chain(&direct.near_edge)
        .copied()
        .chain(std::iter::once(direct.first_positive))
        .fold(T::infinity(), |m, l| m.min(l.abs()));
    let gap_threshold = T::lit(10.0) * direct.h * direct.h * potential_sup.max(T::one());
    let numerical_trivial = direct.kernel_dim == 0 && closest > direct.tol_zero && closest > gap_threshold;
    KernelCertificate {
        alpha,
        trivial: case_label.is_some() && numerical_trivial,
        case_label,
        min_abs_eigenvalue: closest,
        gap_threshold,
        numerical_trivial,
    }
}

/// Outcome of the instability criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    LinearlyUnstable,
    Inconclusive,
}

/// Morse index, kernel and the resulting verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict<T> {
    pub n: usize,
    pub kernel_trivial: bool,
    /// Smallest observed eigenvalue above the kernel window.
    pub observed_gap: T,
    pub verdict: Verdict,
    /// `√(−λ₀)` when `n = 1`.
    pub predicted_growth: Option<T>,
}

/// Applies the criterion: unstable iff `n = 1`, trivial kernel and a
/// positive gap above zero in the rest of the computed spectrum.
pub fn stability_verdict<T: Real>(direct: &SpectrumReport<T>) -> StabilityVerdict<T> {
    let n = direct.morse_index;
    let kernel_trivial = direct.kernel_dim == 0;
    let observed_gap = direct.first_positive;
    let predicted_growth = if n == 1 {
        direct.ground_eigenvalue().filter(|l| *l < T::zero()).map(|l| (-l).sqrt())
    } else {
        None
    };
    let unstable = n == 1 && kernel_trivial && observed_gap > direct.tol_zero && predicted_growth.is_some();
    StabilityVerdict {
        n,
        kernel_trivial,
        observed_gap,
        verdict: if unstable { Verdict::LinearlyUnstable } else { Verdict::Inconclusive },
        predicted_growth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn transcendental_root_example() {
        let g = GraphParams::new(1.0f64, 1.0, 1.0, 1.0).unwrap();
        let p = laplacian_point_spectrum(&g, 3).unwrap();
        let rho = p.rho.unwrap();
        assert!((rho - 0.51).abs() < 5e-3, "{rho}");
        assert!((p.negative_eigenvalue.unwrap() + 0.26).abs() < 5e-3);
        assert!(p.residual < 1e-12);
        assert!((p.dirichlet[1] - 4.0 * PI * PI).abs() < 1e-12);
        let (cont, flux) = laplacian_vertex_residuals(&g, rho);
        assert!(cont < 1e-10 && flux < 1e-10);
    }

    #[test]
    fn nonpositive_strength_has_no_point_spectrum() {
        for z in [0.0, -1.0] {
            let g = GraphParams::new(1.0f64, 1.0, 1.0, z).unwrap();
            assert!(laplacian_point_spectrum(&g, 0).unwrap().rho.is_none());
        }
    }

    #[test]
    fn zero_tolerance_rule() {
        assert_eq!(zero_tolerance(1e-5f64, 1.0), 1e-8);
        assert!((zero_tolerance(1e-2f64, 1.0) - 5e-4).abs() < 1e-18);
    }

    #[test]
    fn positive_potential_gives_inconclusive() {
        let g = GraphParams::new(1.0f64, 1.0, 1.0, 0.2).unwrap();
        let d = Discretization::new(1.0, 0.01, 10.0).unwrap();
        let r = potential_spectrum(&g, &d, 4, |_| 2.0, |_| 2.0, 2.0).unwrap();
        assert_eq!(r.morse_index, 0);
        assert_eq!(stability_verdict(&r).verdict, Verdict::Inconclusive);
    }
}
