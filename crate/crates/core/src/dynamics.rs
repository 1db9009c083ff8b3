//! Nonlinear sine-Gordon evolution on the truncated tadpole.
//!
//! The semi-discrete system is `M ü = −K u − M sin u` where `K` and `M` are
//! the stiffness (including the vertex term `−Z u(0)²`) and lumped mass of
//! the vertex Laplacian used by [`crate::spectral`]. It is the Hamiltonian
//! flow of
//!
//! ```text
//! E = c2² (½ u̇ᵀM u̇ + ½ uᵀK u + Σ mᵢ (1 − cos uᵢ)),
//! ```
//!
//! so every edge contributes `(c2/c_j)² ∫ ½u_t² + ½c_j² u_x² + 1 − cos u` and
//! the vertex contributes `−½ c2² Z u(0)²`. The tail is pinned to its value
//! at `R`. Time stepping is kick–drift–kick leapfrog.

use serde::{Deserialize, Serialize};

use crate::profiles::{GraphParams, StationaryState};
use crate::spectral::{sample_state, Discretization, GraphOperator, GridFunction, SpectrumReport};
use crate::{Error, Real, Result};

/// Field and velocity on the grid at time `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionState<T> {
    pub u_loop: Vec<T>,
    pub v_loop: Vec<T>,
    pub u_tail: Vec<T>,
    pub v_tail: Vec<T>,
    pub t: T,
}

impl<T: Real> EvolutionState<T> {
    /// State at rest with field `u`.
    pub fn at_rest(u: &GridFunction<T>) -> Self {
        Self {
            u_loop: u.loop_values.clone(),
            v_loop: vec![T::zero(); u.loop_values.len()],
            u_tail: u.tail_values.clone(),
            v_tail: vec![T::zero(); u.tail_values.len()],
            t: T::zero(),
        }
    }

    pub fn field(&self) -> GridFunction<T> {
        GridFunction {
            loop_values: self.u_loop.clone(),
            tail_values: self.u_tail.clone(),
        }
    }

    /// Largest disagreement between the three vertex copies of `u`.
    pub fn continuity_defect(&self) -> T {
        let v = self.u_tail[0];
        (self.u_loop[0] - v).abs().max((self.u_loop[self.u_loop.len() - 1] - v).abs())
    }

    pub fn vertex(&self) -> T {
        self.u_tail[0]
    }

    fn is_finite(&self) -> bool {
        self.u_loop
            .iter()
            .chain(&self.v_loop)
            .chain(&self.u_tail)
            .chain(&self.v_tail)
            .all(|x| x.is_finite())
    }
}

/// Recorded history of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrace<T> {
    pub times: Vec<T>,
    /// Discrete energy-space distance to the reference state.
    pub deviation_norms: Vec<T>,
    pub energies: Vec<T>,
    pub vertex_values: Vec<T>,
    /// Largest vertex continuity defect over all recorded times.
    pub max_continuity_defect: T,
    /// Least-squares slope of `ln(deviation)` over the fit window.
    pub fitted_growth: Option<T>,
    pub fit_window: Option<(T, T)>,
    /// RMS residual of the log-linear fit.
    pub fit_residual: Option<T>,
    /// The run stopped on a non-finite value.
    pub blew_up: bool,
}

/// Spatial operator and norms for a fixed grid.
#[derive(Clone, Debug)]
pub struct GraphDynamics<T> {
    params: GraphParams<T>,
    grid: Discretization<T>,
    vertex_mass: T,
}

impl<T: Real> GraphDynamics<T> {
    pub fn new(g: &GraphParams<T>, d: &Discretization<T>) -> Result<Self> {
        g.validate()?;
        let h = d.h;
        let vertex_mass = h / T::lit(2.0) * (T::lit(2.0) / (g.c1 * g.c1) + T::one() / (g.c2 * g.c2));
        Ok(Self {
            params: *g,
            grid: *d,
            vertex_mass,
        })
    }

    pub fn params(&self) -> &GraphParams<T> {
        &self.params
    }

    pub fn grid(&self) -> &Discretization<T> {
        &self.grid
    }

    /// Largest stable time step, `0.9·h/max(c1, c2)`.
    pub fn cfl_limit(&self) -> T {
        T::lit(0.9) * self.grid.h / self.params.c1.max(self.params.c2)
    }

    fn check_shape(&self, s: &EvolutionState<T>) -> Result<()> {
        let d = &self.grid;
        if s.u_loop.len() != d.n_loop || s.v_loop.len() != d.n_loop || s.u_tail.len() != d.n_tail || s.v_tail.len() != d.n_tail {
            return Err(Error::Configuration("state does not match grid".into()));
        }
        Ok(())
    }

    /// Accelerations `−M⁻¹K u − sin u` on interior nodes and the vertex.
    ///
    /// Returns `(loop, tail, vertex)`; the end entries of `loop` and the
    /// first and last entries of `tail` are left at zero.
    fn acceleration(&self, u_loop: &[T], u_tail: &[T], a_loop: &mut [T], a_tail: &mut [T]) -> T {
        let h = self.grid.h;
        let (c1, c2) = (self.params.c1, self.params.c2);
        let k1 = c1 * c1 / (h * h);
        let k2 = c2 * c2 / (h * h);
        let nl = u_loop.len();
        let nt = u_tail.len();
        for i in 1..nl - 1 {
            a_loop[i] = k1 * (u_loop[i - 1] - T::lit(2.0) * u_loop[i] + u_loop[i + 1]) - u_loop[i].sin();
        }
        for j in 1..nt - 1 {
            a_tail[j] = k2 * (u_tail[j - 1] - T::lit(2.0) * u_tail[j] + u_tail[j + 1]) - u_tail[j].sin();
        }
        let u0 = u_tail[0];
        let flux = (u_loop[1] - u0 + u_loop[nl - 2] - u0 + u_tail[1] - u0) / h + self.params.z * u0;
        flux / self.vertex_mass - u0.sin()
    }

    fn kick(&self, s: &mut EvolutionState<T>, a_loop: &[T], a_tail: &[T], a0: T, tau: T) {
        let nl = s.u_loop.len();
        let nt = s.u_tail.len();
        for i in 1..nl - 1 {
            s.v_loop[i] = s.v_loop[i] + tau * a_loop[i];
        }
        for j in 1..nt - 1 {
            s.v_tail[j] = s.v_tail[j] + tau * a_tail[j];
        }
        let v0 = s.v_tail[0] + tau * a0;
        s.v_tail[0] = v0;
        s.v_loop[0] = v0;
        s.v_loop[nl - 1] = v0;
        s.v_tail[nt - 1] = T::zero();
    }

    fn drift(&self, s: &mut EvolutionState<T>, dt: T) {
        let nl = s.u_loop.len();
        let nt = s.u_tail.len();
        for i in 1..nl - 1 {
            s.u_loop[i] = s.u_loop[i] + dt * s.v_loop[i];
        }
        for j in 0..nt - 1 {
            s.u_tail[j] = s.u_tail[j] + dt * s.v_tail[j];
        }
        s.u_loop[0] = s.u_tail[0];
        s.u_loop[nl - 1] = s.u_tail[0];
        s.t = s.t + dt;
    }

    fn check_dt(&self, dt: T) -> Result<()> {
        let limit = self.cfl_limit();
        if !(dt > T::zero()) || dt > limit * (T::one() + T::lit(1e-12)) {
            return Err(Error::Configuration(format!("time step {dt} violates the CFL bound {limit}")));
        }
        Ok(())
    }

    /// One kick–drift–kick step.
    pub fn step(&self, state: &EvolutionState<T>, dt: T) -> Result<EvolutionState<T>> {
        self.check_dt(dt)?;
        self.check_shape(state)?;
        let mut s = state.clone();
        let mut al = vec![T::zero(); s.u_loop.len()];
        let mut at = vec![T::zero(); s.u_tail.len()];
        let half = dt / T::lit(2.0);
        let a0 = self.acceleration(&s.u_loop, &s.u_tail, &mut al, &mut at);
        self.kick(&mut s, &al, &at, a0, half);
        self.drift(&mut s, dt);
        let a0 = self.acceleration(&s.u_loop, &s.u_tail, &mut al, &mut at);
        self.kick(&mut s, &al, &at, a0, half);
        Ok(s)
    }

    /// Conserved discrete energy.
    pub fn energy(&self, s: &EvolutionState<T>) -> T {
        let h = self.grid.h;
        let (c1, c2) = (self.params.c1, self.params.c2);
        let half = T::lit(0.5);
        let grad = |u: &[T]| u.windows(2).map(|w| (w[1] - w[0]) * (w[1] - w[0])).sum::<T>() / h;
        let local = |u: &[T], v: &[T], w: T| -> T {
            let n = u.len();
            (1..n - 1)
                .map(|i| half * v[i] * v[i] + T::one() - u[i].cos())
                .sum::<T>()
                * h
                * w
        };
        let w1 = T::one() / (c1 * c1);
        let w2 = T::one() / (c2 * c2);
        let u0 = s.u_tail[0];
        let v0 = s.v_tail[0];
        let nt = s.u_tail.len();
        let end = h / T::lit(2.0) * w2 * (T::one() - s.u_tail[nt - 1].cos());
        let vertex = self.vertex_mass * (half * v0 * v0 + T::one() - u0.cos());
        let total = half * (grad(&s.u_loop) + grad(&s.u_tail))
            - half * self.params.z * u0 * u0
            + local(&s.u_loop, &s.v_loop, w1)
            + local(&s.u_tail, &s.v_tail, w2)
            + vertex
            + end;
        c2 * c2 * total
    }

    /// Discrete `H¹ × L²` distance `‖u − u_ref‖ + ‖v − v_ref‖` in the
    /// weighted norms `Σ(Δw)²/h + Σ mᵢ wᵢ²` and `Σ mᵢ vᵢ²`.
    pub fn deviation(&self, s: &EvolutionState<T>, reference: &EvolutionState<T>) -> T {
        let h = self.grid.h;
        let (c1, c2) = (self.params.c1, self.params.c2);
        let diff = |a: &[T], b: &[T]| -> Vec<T> { a.iter().zip(b).map(|(x, y)| *x - *y).collect() };
        let du_l = diff(&s.u_loop, &reference.u_loop);
        let du_t = diff(&s.u_tail, &reference.u_tail);
        let dv_l = diff(&s.v_loop, &reference.v_loop);
        let dv_t = diff(&s.v_tail, &reference.v_tail);
        let grad = |w: &[T]| w.windows(2).map(|p| (p[1] - p[0]) * (p[1] - p[0])).sum::<T>() / h;
        let mass = |w: &[T], c: T| {
            let n = w.len();
            (0..n)
                .map(|i| {
                    let wt = if i == 0 || i == n - 1 { h / T::lit(2.0) } else { h };
                    wt * w[i] * w[i]
                })
                .sum::<T>()
                / (c * c)
        };
        let h1 = grad(&du_l) + grad(&du_t) + mass(&du_l, c1) + mass(&du_t, c2);
        let l2 = mass(&dv_l, c1) + mass(&dv_t, c2);
        h1.sqrt() + l2.sqrt()
    }

    /// Runs to time `t_end`, recording every `record_every` steps.
    ///
    /// The run length is limited to `R/(2·c2)` so that waves reflected at the
    /// truncation cannot return to the vertex. A non-finite state stops the
    /// run; the trace up to the last finite record is returned with
    /// `blew_up` set.
    pub fn evolve(
        &self,
        initial: &EvolutionState<T>,
        reference: &EvolutionState<T>,
        t_end: T,
        dt: T,
        record_every: usize,
    ) -> Result<EvolutionTrace<T>> {
        self.evolve_until(initial, reference, t_end, dt, record_every, T::infinity())
    }

    fn evolve_until(
        &self,
        initial: &EvolutionState<T>,
        reference: &EvolutionState<T>,
        t_end: T,
        dt: T,
        record_every: usize,
        stop_above: T,
    ) -> Result<EvolutionTrace<T>> {
        self.check_dt(dt)?;
        self.check_shape(initial)?;
        self.check_shape(reference)?;
        if !(t_end > T::zero()) {
            return Err(Error::Configuration(format!("final time must be positive, got {t_end}")));
        }
        let horizon = self.grid.radius / (T::lit(2.0) * self.params.c2);
        if t_end > horizon * (T::one() + T::lit(1e-12)) {
            return Err(Error::Configuration(format!(
                "final time {t_end} exceeds the reflection-free horizon R/(2·c2) = {horizon}"
            )));
        }
        let steps = (t_end / dt).ceil().to_usize().unwrap_or(0).max(1);
        let dt = t_end / T::count(steps);
        let every = record_every.max(1);
        let mut s = initial.clone();
        let mut trace = EvolutionTrace {
            times: Vec::new(),
            deviation_norms: Vec::new(),
            energies: Vec::new(),
            vertex_values: Vec::new(),
            max_continuity_defect: T::zero(),
            fitted_growth: None,
            fit_window: None,
            fit_residual: None,
            blew_up: false,
        };
        let record = |trace: &mut EvolutionTrace<T>, s: &EvolutionState<T>| {
            trace.times.push(s.t);
            trace.deviation_norms.push(self.deviation(s, reference));
            trace.energies.push(self.energy(s));
            trace.vertex_values.push(s.vertex());
            trace.max_continuity_defect = trace.max_continuity_defect.max(s.continuity_defect());
        };
        record(&mut trace, &s);
        let mut al = vec![T::zero(); s.u_loop.len()];
        let mut at = vec![T::zero(); s.u_tail.len()];
        let half = dt / T::lit(2.0);
        let mut a0 = self.acceleration(&s.u_loop, &s.u_tail, &mut al, &mut at);
        for n in 1..=steps {
            self.kick(&mut s, &al, &at, a0, half);
            self.drift(&mut s, dt);
            a0 = self.acceleration(&s.u_loop, &s.u_tail, &mut al, &mut at);
            self.kick(&mut s, &al, &at, a0, half);
            if n % every == 0 || n == steps {
                if !s.is_finite() {
                    trace.blew_up = true;
                    break;
                }
                record(&mut trace, &s);
                if trace.deviation_norms.last().is_some_and(|d| *d > stop_above) {
                    break;
                }
            }
        }
        Ok(trace)
    }

    /// Newton iteration for the discrete stationary state nearest `guess`.
    ///
    /// Solves `K u + M sin u = 0` with the tail end held fixed; the Jacobian
    /// is the discrete linearization at the current iterate.
    pub fn equilibrium(&self, guess: &GridFunction<T>) -> Result<GridFunction<T>> {
        let mut u = EvolutionState::at_rest(guess);
        u.u_loop[0] = u.u_tail[0];
        let nl = u.u_loop.len();
        u.u_loop[nl - 1] = u.u_tail[0];
        let d = &self.grid;
        let h = d.h;
        let (w1, w2) = (T::one() / (self.params.c1 * self.params.c1), T::one() / (self.params.c2 * self.params.c2));
        let mut al = vec![T::zero(); d.n_loop];
        let mut at = vec![T::zero(); d.n_tail];
        let tol = T::tol(1e-14) * (T::one() + guess.max_abs());
        for _ in 0..30 {
            let a0 = self.acceleration(&u.u_loop, &u.u_tail, &mut al, &mut at);
            let lp: Vec<T> = u.u_loop.iter().map(|x| x.cos()).collect();
            let tp: Vec<T> = u.u_tail.iter().map(|x| x.cos()).collect();
            let op = GraphOperator::assemble(&self.params, d, &lp, &tp)?;
            // Residual K u + M sin u = −M a.
            let mut rhs: Vec<T> = Vec::with_capacity(op.dim());
            rhs.extend(al[1..d.n_loop - 1].iter().map(|a| *a * h * w1));
            rhs.extend(at[1..d.n_tail - 1].iter().map(|a| *a * h * w2));
            rhs.push(a0 * self.vertex_mass);
            let delta = op.stiffness().solve_shifted(T::zero(), &rhs);
            if delta.iter().any(|x| !x.is_finite()) {
                return Err(Error::Numerical("Newton step for the discrete equilibrium is singular".into()));
            }
            let step = op.from_unknowns(&delta, T::zero());
            for (x, dx) in u.u_loop.iter_mut().zip(&step.loop_values) {
                *x = *x + *dx;
            }
            for (x, dx) in u.u_tail.iter_mut().zip(&step.tail_values) {
                *x = *x + *dx;
            }
            if step.max_abs() <= tol {
                return Ok(u.field());
            }
        }
        Err(Error::Numerical("Newton iteration for the discrete equilibrium did not converge".into()))
    }
}

/// Settings of an instability experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOptions<T> {
    /// Time step as a fraction of the CFL limit.
    pub cfl_fraction: T,
    /// Record every this many steps.
    pub record_every: usize,
}

impl<T: Real> Default for ExperimentOptions<T> {
    fn default() -> Self {
        Self {
            cfl_fraction: T::lit(0.5),
            record_every: 20,
        }
    }
}

/// Lower and upper deviation bounds of the log-linear fit window.
///
/// The nominal window is `[10·amplitude, 1e-2]`. The upper bound is raised
/// to `30·amplitude` when the nominal window would be shorter than that.
pub fn fit_bounds<T: Real>(amplitude: T) -> (T, T) {
    let lo = T::lit(10.0) * amplitude;
    (lo, T::lit(1e-2).max(T::lit(3.0) * lo))
}

/// Least-squares growth rate of `ln d(t)` over samples with `d ∈ [lo, hi]`.
///
/// Only the first contiguous run of samples inside the window is used.
pub fn fit_growth<T: Real>(times: &[T], deviations: &[T], lo: T, hi: T) -> Option<(T, (T, T), T)> {
    let start = deviations.iter().position(|d| *d >= lo)?;
    let len = deviations[start..].iter().take_while(|d| **d <= hi).count();
    if len < 3 {
        return None;
    }
    let ts = &times[start..start + len];
    let ys: Vec<T> = deviations[start..start + len].iter().map(|d| d.ln()).collect();
    let n = T::count(len);
    let tm = ts.iter().copied().sum::<T>() / n;
    let ym = ys.iter().copied().sum::<T>() / n;
    let sxy: T = ts.iter().zip(&ys).map(|(t, y)| (*t - tm) * (*y - ym)).sum();
    let sxx: T = ts.iter().map(|t| (*t - tm) * (*t - tm)).sum();
    if sxx <= T::zero() {
        return None;
    }
    let slope = sxy / sxx;
    let rms = (ts
        .iter()
        .zip(&ys)
        .map(|(t, y)| {
            let r = *y - (ym + slope * (*t - tm));
            r * r
        })
        .sum::<T>()
        / n)
        .sqrt();
    Some((slope, (ts[0], ts[len - 1]), rms))
}

/// Seeds the discrete stationary state with its unstable mode and fits the
/// growth rate of the deviation.
///
/// The sampled state is first polished to the exact discrete equilibrium, so
/// that the deviation starts at the seeded amplitude. The seed is the ground
/// mode of the discrete linearization at that equilibrium, oriented like the
/// report's ground mode and scaled to `amplitude` in the deviation norm.
pub fn instability_experiment<T: Real>(
    s: &StationaryState<T>,
    d: &Discretization<T>,
    spectrum: &SpectrumReport<T>,
    amplitude: T,
    options: ExperimentOptions<T>,
) -> Result<EvolutionTrace<T>> {
    if spectrum.morse_index != 1 {
        return Err(Error::InvalidParameter(format!(
            "instability experiment needs Morse index 1, report has {}",
            spectrum.morse_index
        )));
    }
    let reference_mode = spectrum
        .ground_mode
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("report has no ground mode".into()))?;
    if !(amplitude >= T::zero() && amplitude.is_finite()) {
        return Err(Error::InvalidParameter(format!("amplitude must be non-negative, got {amplitude}")));
    }
    let dyn_ = GraphDynamics::new(&s.params, d)?;
    let sampled = sample_state(s, d)?;
    let eq = dyn_.equilibrium(&sampled.values)?;
    let rest = EvolutionState::at_rest(&eq);

    let lp: Vec<T> = eq.loop_values.iter().map(|x| x.cos()).collect();
    let tp: Vec<T> = eq.tail_values.iter().map(|x| x.cos()).collect();
    let op = GraphOperator::assemble(&s.params, d, &lp, &tp)?;
    let lambda = op.scaled().eigenvalue(0);
    let mode = op.from_unknowns(&op.unscale(&op.scaled().eigenvector(lambda)?), T::zero());
    let align: T = mode
        .loop_values
        .iter()
        .zip(&reference_mode.loop_values)
        .chain(mode.tail_values.iter().zip(&reference_mode.tail_values))
        .map(|(a, b)| *a * *b)
        .sum();
    let sign = if align < T::zero() { -T::one() } else { T::one() };
    let unit = {
        let mut probe = rest.clone();
        probe.u_loop = mode.loop_values.clone();
        probe.u_tail = mode.tail_values.clone();
        let zero = EvolutionState::at_rest(&GridFunction::zeros(d));
        dyn_.deviation(&probe, &zero)
    };
    let mut initial = rest.clone();
    let scale = sign * amplitude / unit;
    for (u, m) in initial.u_loop.iter_mut().zip(&mode.loop_values) {
        *u = *u + scale * *m;
    }
    for (u, m) in initial.u_tail.iter_mut().zip(&mode.tail_values) {
        *u = *u + scale * *m;
    }

    let (lo, hi) = fit_bounds(amplitude);
    let horizon = d.radius / (T::lit(2.0) * s.params.c2);
    let sigma_guess = if lambda < T::zero() { (-lambda).sqrt() } else { T::one() };
    let needed = if amplitude > T::zero() {
        ((T::lit(2.0) * hi / amplitude).ln() + T::lit(3.0)) / sigma_guess
    } else {
        T::one()
    };
    let t_end = needed.min(horizon);
    let dt = options.cfl_fraction * dyn_.cfl_limit();
    let mut trace = dyn_.evolve_until(&initial, &rest, t_end, dt, options.record_every, T::lit(2.0) * hi)?;
    if amplitude > T::zero() {
        if let Some((slope, window, rms)) = fit_growth(&trace.times, &trace.deviation_norms, lo, hi) {
            trace.fitted_growth = Some(slope);
            trace.fit_window = Some(window);
            trace.fit_residual = Some(rms);
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(z: f64) -> GraphDynamics<f64> {
        let g = GraphParams::new(1.0, 1.0, 1.0, z).unwrap();
        let d = Discretization::new(1.0, 0.01, 4.0).unwrap();
        GraphDynamics::new(&g, &d).unwrap()
    }

    #[test]
    fn zero_state_stays_zero() {
        let dy = setup(0.3);
        let s = EvolutionState::at_rest(&GridFunction::zeros(dy.grid()));
        let mut x = s.clone();
        for _ in 0..50 {
            x = dy.step(&x, dy.cfl_limit()).unwrap();
        }
        assert_eq!(x.field().max_abs(), 0.0);
        assert_eq!(dy.energy(&x), 0.0);
    }

    #[test]
    fn constant_two_pi_is_equilibrium_without_coupling() {
        let dy = setup(0.0);
        let mut f = GridFunction::zeros(dy.grid());
        f.loop_values.iter_mut().for_each(|v| *v = 2.0 * std::f64::consts::PI);
        f.tail_values.iter_mut().for_each(|v| *v = 2.0 * std::f64::consts::PI);
        let s = EvolutionState::at_rest(&f);
        let mut x = s.clone();
        for _ in 0..50 {
            x = dy.step(&x, dy.cfl_limit()).unwrap();
        }
        assert!(dy.deviation(&x, &s) < 1e-12);
    }

    #[test]
    fn cfl_violation_is_rejected() {
        let dy = setup(0.0);
        let s = EvolutionState::at_rest(&GridFunction::zeros(dy.grid()));
        let err = dy.step(&s, dy.cfl_limit() * 1.01).unwrap_err();
        assert!(matches!(err, Error::Configuration(_)));
    }

    #[test]
    fn fit_recovers_exponential() {
        let ts: Vec<f64> = (0..200).map(|i| i as f64 * 0.05).collect();
        let ds: Vec<f64> = ts.iter().map(|t| 1e-4 * (0.8 * t).exp()).collect();
        let (slope, _, rms) = fit_growth(&ts, &ds, 1e-3, 1e-2).unwrap();
        assert!((slope - 0.8).abs() < 1e-12 && rms < 1e-12);
    }

    #[test]
    fn fit_window_bounds() {
        assert_eq!(fit_bounds(1e-4f64), (1e-3, 1e-2));
        let (lo, hi) = fit_bounds(1e-3f64);
        assert!((lo - 1e-2).abs() < 1e-18 && (hi - 3e-2).abs() < 1e-17);
    }
}
