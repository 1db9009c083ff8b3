use serde::{Deserialize, Serialize};

use crate::profiles::{GraphParams, StationaryState};
use crate::{Error, Real, Result};

/// Uniform grid on the loop `[-L, L]` and on the truncated tail `[0, R]`.
///
/// Both edges share the spacing `h`. The loop has an odd number of nodes, so
/// `x = 0` is a node and the grid is symmetric. Node `0` and node
/// `n_loop − 1` of the loop and node `0` of the tail all sit on the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discretization<T> {
    pub h: T,
    pub n_loop: usize,
    pub radius: T,
    pub n_tail: usize,
    pub loop_half_length: T,
}

impl<T: Real> Discretization<T> {
    /// Grid with spacing close to `h` and radius at least `radius`.
    ///
    /// The spacing is adjusted so that `2L` is an even number of steps; the
    /// radius is then rounded up to a whole number of steps.
    pub fn new(loop_half_length: T, h: T, radius: T) -> Result<Self> {
        if !(h > T::zero() && h.is_finite()) {
            return Err(Error::Configuration(format!("grid spacing must be positive, got {h}")));
        }
        if !(radius > T::zero() && radius.is_finite()) {
            return Err(Error::Configuration(format!("truncation radius must be positive, got {radius}")));
        }
        let half_steps = (loop_half_length / h).round().to_usize().unwrap_or(0).max(2);
        let n_loop = 2 * half_steps + 1;
        let h = loop_half_length / T::count(half_steps);
        let tail_steps = (radius / h).ceil().to_usize().unwrap_or(0).max(4);
        if n_loop.saturating_add(tail_steps) > 50_000_000 {
            return Err(Error::Configuration("grid too large".into()));
        }
        Ok(Self {
            h,
            n_loop,
            radius: h * T::count(tail_steps),
            n_tail: tail_steps + 1,
            loop_half_length,
        })
    }

    /// Default grid: `h = 1e-3·min(L, c2)`, `R = 40·c2`.
    pub fn default_for(g: &GraphParams<T>) -> Result<Self> {
        let h = T::lit(1e-3) * g.loop_half_length.min(g.c2);
        Self::new(g.loop_half_length, h, T::lit(40.0) * g.c2)
    }

    /// Same extent with half the spacing.
    pub fn refined(&self) -> Self {
        let half_steps = self.n_loop - 1;
        let tail_steps = 2 * (self.n_tail - 1);
        Self {
            h: self.h / T::lit(2.0),
            n_loop: 2 * half_steps + 1,
            radius: self.radius,
            n_tail: tail_steps + 1,
            loop_half_length: self.loop_half_length,
        }
    }

    /// Loop abscissa of node `i`.
    pub fn loop_x(&self, i: usize) -> T {
        -self.loop_half_length + self.h * T::count(i)
    }

    /// Tail abscissa of node `j`.
    pub fn tail_x(&self, j: usize) -> T {
        self.h * T::count(j)
    }

    /// Index of the loop node at `x = 0`.
    pub fn loop_center(&self) -> usize {
        (self.n_loop - 1) / 2
    }
}

/// A function on the grid. The vertex value is stored three times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFunction<T> {
    pub loop_values: Vec<T>,
    pub tail_values: Vec<T>,
}

impl<T: Real> GridFunction<T> {
    pub fn zeros(d: &Discretization<T>) -> Self {
        Self {
            loop_values: vec![T::zero(); d.n_loop],
            tail_values: vec![T::zero(); d.n_tail],
        }
    }

    pub fn vertex(&self) -> T {
        self.tail_values[0]
    }

    /// Largest disagreement between the three copies of the vertex value.
    pub fn continuity_defect(&self) -> T {
        let v = self.tail_values[0];
        (self.loop_values[0] - v).abs().max((self.loop_values[self.loop_values.len() - 1] - v).abs())
    }

    /// Largest absolute value over both edges.
    pub fn max_abs(&self) -> T {
        self.loop_values
            .iter()
            .chain(&self.tail_values)
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Largest `|v(x) − v(−x)|/2` over the loop.
    pub fn loop_odd_part(&self) -> T {
        let n = self.loop_values.len();
        (0..n / 2).fold(T::zero(), |m, i| {
            m.max((self.loop_values[i] - self.loop_values[n - 1 - i]).abs() / T::lit(2.0))
        })
    }
}

/// A stationary state sampled on a grid, with its potential `cos φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledState<T> {
    pub values: GridFunction<T>,
    pub potential: GridFunction<T>,
}

impl<T: Real> SampledState<T> {
    /// `max |cos φ|` over the grid.
    pub fn potential_sup(&self) -> T {
        self.potential.max_abs()
    }
}

/// Samples a state. The three vertex copies take the tail value `ψ(0)`.
pub fn sample_state<T: Real>(s: &StationaryState<T>, d: &Discretization<T>) -> Result<SampledState<T>> {
    if (d.loop_half_length - s.params.loop_half_length).abs() > T::tol(1e-12) * s.params.loop_half_length {
        return Err(Error::Configuration(format!(
            "grid is built for L = {}, state has L = {}",
            d.loop_half_length, s.params.loop_half_length
        )));
    }
    let mut values = GridFunction::zeros(d);
    let mut potential = GridFunction::zeros(d);
    // The loop profile is even; mirror it so the sampled potential is exactly even.
    let last = d.n_loop - 1;
    for i in 0..=d.loop_center() {
        let x = d.loop_x(i);
        let (v, p) = (s.loop_profile.value(x), s.loop_profile.potential(x));
        values.loop_values[i] = v;
        values.loop_values[last - i] = v;
        potential.loop_values[i] = p;
        potential.loop_values[last - i] = p;
    }
    for j in 0..d.n_tail {
        let x = d.tail_x(j);
        values.tail_values[j] = s.tail.value(x);
        potential.tail_values[j] = s.tail.potential(x);
    }
    let (v0, p0) = (values.tail_values[0], potential.tail_values[0]);
    values.loop_values[0] = v0;
    values.loop_values[last] = v0;
    potential.loop_values[0] = p0;
    potential.loop_values[last] = p0;
    Ok(SampledState { values, potential })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing_and_extent() {
        let d = Discretization::new(1.0f64, 1e-2, 5.0).unwrap();
        assert_eq!(d.n_loop, 201);
        assert!((d.h * (d.n_loop - 1) as f64 - 2.0).abs() < 1e-12);
        assert!((d.h * (d.n_tail - 1) as f64 - d.radius).abs() < 1e-12);
        assert!(d.radius >= 5.0);
        assert_eq!(d.loop_center(), 100);
        assert!(d.loop_x(100).abs() < 1e-15);
    }

    #[test]
    fn refinement_halves_spacing_and_keeps_extent() {
        let d = Discretization::new(1.3f64, 3e-2, 7.0).unwrap();
        let r = d.refined();
        assert!((r.h - d.h / 2.0).abs() < 1e-15);
        assert!((r.loop_x(r.n_loop - 1) - 1.3).abs() < 1e-12);
        assert!((r.tail_x(r.n_tail - 1) - d.radius).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_spacing() {
        assert!(Discretization::new(1.0f64, 0.0, 1.0).is_err());
        assert!(Discretization::new(1.0f64, 0.1, -1.0).is_err());
    }
}
