//! Eigenvalues of the linearization by shooting and matching at the vertex.
//!
//! The potential of a single-lobe state is even on the loop, so every loop
//! mode is even or odd. Odd modes vanish at the vertex and reduce to a
//! Dirichlet problem on `(0, L)`. An even mode `f` with `f(0) = 1, f′(0) = 0`
//! glues to the decaying tail solution `g` when
//!
//! ```text
//! m(λ) = 2 f′(L) g(0) − f(L) (g′(0) + Z g(0)) = 0.
//! ```
//!
//! Both edges are integrated with classical RK4 on closed-form potentials,
//! which makes this independent of the finite-difference machinery.

use crate::profiles::StationaryState;
use crate::roots::{bisect, sign_changes};
use crate::Real;

/// Precomputed potentials for shooting on a stationary state.
#[derive(Clone, Debug)]
pub struct Shooting<T> {
    c1: T,
    c2: T,
    z: T,
    loop_step: T,
    /// `cos φ₁` at `0, s/2, s, …, L`.
    loop_potential: Vec<T>,
    tail_step: T,
    /// `cos ψ` at `0, s/2, s, …, R`.
    tail_potential: Vec<T>,
}

impl<T: Real> Shooting<T> {
    /// Shooting data with about `steps_loop` RK4 steps on `(0, L)` and a tail cut at `radius`.
    pub fn new(s: &StationaryState<T>, steps_loop: usize, radius: T) -> Self {
        let l = s.params.loop_half_length;
        let nl = steps_loop.max(16);
        let loop_step = l / T::count(nl);
        let loop_potential = (0..=2 * nl)
            .map(|i| s.loop_profile.potential(loop_step * T::count(i) / T::lit(2.0)))
            .collect();
        let nt = (radius / loop_step).ceil().to_usize().unwrap_or(16).max(16);
        let tail_step = radius / T::count(nt);
        let tail_potential = (0..=2 * nt)
            .map(|j| s.tail.potential(tail_step * T::count(j) / T::lit(2.0)))
            .collect();
        Self {
            c1: s.params.c1,
            c2: s.params.c2,
            z: s.params.z,
            loop_step,
            loop_potential,
            tail_step,
            tail_potential,
        }
    }

    /// Loop solution at `L` from initial data at `0`.
    fn loop_end(&self, lambda: T, f0: T, df0: T) -> (T, T) {
        let w = T::one() / (self.c1 * self.c1);
        let mut y = (f0, df0);
        let n = (self.loop_potential.len() - 1) / 2;
        for i in 0..n {
            y = rk4(y, self.loop_step, |k| (self.loop_potential[2 * i + k] - lambda) * w);
        }
        y
    }

    /// Decaying tail solution at `0`, integrated inward from `R`.
    fn tail_start(&self, lambda: T) -> (T, T) {
        let w = T::one() / (self.c2 * self.c2);
        let n = (self.tail_potential.len() - 1) / 2;
        let kappa = (self.tail_potential[2 * n] - lambda).max(T::zero()).sqrt() / self.c2;
        let mut y = (T::one(), -kappa);
        let big = T::max_value().sqrt().sqrt();
        for i in (0..n).rev() {
            y = rk4(y, -self.tail_step, |k| (self.tail_potential[2 * i + 2 - k] - lambda) * w);
            let m = y.0.abs().max(y.1.abs());
            if m > big {
                y = (y.0 / m, y.1 / m);
            }
        }
        y
    }

    /// Matching function for modes even on the loop.
    pub fn even_secular(&self, lambda: T) -> T {
        let (f, df) = self.loop_end(lambda, T::one(), T::zero());
        let (g, dg) = self.tail_start(lambda);
        T::lit(2.0) * df * g - f * (dg + self.z * g)
    }

    /// `f(L)` for the odd loop solution; zero at odd Dirichlet eigenvalues.
    pub fn odd_secular(&self, lambda: T) -> T {
        self.loop_end(lambda, T::zero(), T::one()).0
    }

    /// All eigenvalues in `(lower, upper)` of both parities, ascending.
    pub fn eigenvalues(&self, lower: T, upper: T, samples: usize) -> Vec<T> {
        let mut out = roots_of(|l| self.even_secular(l), lower, upper, samples);
        out.extend(roots_of(|l| self.odd_secular(l), lower, upper, samples));
        out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        out
    }
}

fn rk4<T: Real>(y: (T, T), s: T, q: impl Fn(usize) -> T) -> (T, T) {
    let two = T::lit(2.0);
    let half = s / two;
    let (q0, q1, q2) = (q(0), q(1), q(2));
    let k1 = (y.1, q0 * y.0);
    let k2 = (y.1 + half * k1.1, q1 * (y.0 + half * k1.0));
    let k3 = (y.1 + half * k2.1, q1 * (y.0 + half * k2.0));
    let k4 = (y.1 + s * k3.1, q2 * (y.0 + s * k3.0));
    let six = T::lit(6.0);
    (
        y.0 + s / six * (k1.0 + two * k2.0 + two * k3.0 + k4.0),
        y.1 + s / six * (k1.1 + two * k2.1 + two * k3.1 + k4.1),
    )
}

fn roots_of<T: Real>(f: impl Fn(T) -> T, lower: T, upper: T, samples: usize) -> Vec<T> {
    let n = samples.max(2);
    let xs: Vec<T> = (0..=n).map(|i| lower + (upper - lower) * T::count(i) / T::count(n)).collect();
    let vs: Vec<T> = xs.iter().map(|&x| f(x)).collect();
    let tol = T::tol(1e-14) * (T::one() + lower.abs().max(upper.abs()));
    sign_changes(&xs, &vs)
        .into_iter()
        .map(|(a, b)| if a == b { a } else { bisect(&f, a, b, tol) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::GraphParams;

    #[test]
    fn degenerate_state_odd_modes_are_shifted_dirichlet() {
        // φ ≡ π: odd loop modes sin(nπx/L) with eigenvalue −1 + (nπc1/L)².
        let g = GraphParams::new(4.0f64, 1.0, 1.0, 2.0 / std::f64::consts::PI).unwrap();
        let s = StationaryState::degenerate(g).unwrap();
        let sh = Shooting::new(&s, 800, 40.0);
        let all = sh.eigenvalues(-3.0, 0.999, 800);
        let e1 = -1.0 + (std::f64::consts::PI / 4.0).powi(2);
        assert!(all.iter().any(|l| (l - e1).abs() < 1e-8), "{all:?}");
    }

    #[test]
    fn degenerate_state_has_one_negative_eigenvalue() {
        let g = GraphParams::new(1.0f64, 1.0, 1.0, 2.0 / std::f64::consts::PI).unwrap();
        let s = StationaryState::degenerate(g).unwrap();
        let sh = Shooting::new(&s, 400, 40.0);
        let neg: Vec<f64> = sh.eigenvalues(-3.0, 0.0, 1000);
        assert_eq!(neg.len(), 1, "{neg:?}");
        assert!((neg[0] + 0.97238).abs() < 1e-4, "{neg:?}");
    }
}
