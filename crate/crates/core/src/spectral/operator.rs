use super::bordered::{BorderedTridiagonal, SturmCount};
use super::grid::{Discretization, GridFunction};
use super::sectors::{graph_sectors, graph_unknowns, is_even, ReflectionSplit};
use crate::profiles::GraphParams;
use crate::{Error, Real, Result};

/// Finite-difference operator `−c_j² ∂ₓ² + V` on the truncated tadpole.
///
/// The discretization is the Galerkin form of the quadratic form
///
/// ```text
/// Q(v) = Σ_j ∫ (v′)² + (V/c_j²) v² dx − Z v(0)²
/// ```
///
/// with piecewise linear elements and a lumped mass. This yields a generalized
/// problem `A u = λ M u` with `M = diag(h/c_j²)` and a vertex mass
/// `(h/2)(2/c1² + 1/c2²)`. Both matrices are symmetric, and the natural
/// boundary term of the form produces the flux condition
/// `f′(L) − f′(−L) = g′(0) + Z g(0)` exactly as a ghost-point closure would.
/// The tail is closed with a Dirichlet condition at `R`.
///
/// Unknowns are ordered `[loop interior, tail interior, vertex]`. When the
/// loop potential is even, eigenvalue counts use the reflection sectors.
#[derive(Clone, Debug)]
pub struct GraphOperator<T> {
    grid: Discretization<T>,
    stiffness: BorderedTridiagonal<T>,
    mass: Vec<T>,
    scaled: BorderedTridiagonal<T>,
    sectors: Option<ReflectionSplit<T>>,
}

impl<T: Real> GraphOperator<T> {
    /// Assembles the operator for sampled potentials on both edges.
    ///
    /// The vertex entries of `loop_potential` (first and last) and
    /// `tail_potential` (first) are all used, each with its own trapezoid weight.
    pub fn assemble(g: &GraphParams<T>, d: &Discretization<T>, loop_potential: &[T], tail_potential: &[T]) -> Result<Self> {
        if loop_potential.len() != d.n_loop || tail_potential.len() != d.n_tail {
            return Err(Error::Configuration(format!(
                "potential sizes ({}, {}) do not match grid ({}, {})",
                loop_potential.len(),
                tail_potential.len(),
                d.n_loop,
                d.n_tail
            )));
        }
        let h = d.h;
        let two = T::lit(2.0);
        let (w1, w2) = (T::one() / (g.c1 * g.c1), T::one() / (g.c2 * g.c2));
        let nl = d.n_loop - 2;
        let nt = d.n_tail - 2;
        let n = nl + nt;
        let mut diag = Vec::with_capacity(n);
        let mut mass = Vec::with_capacity(n + 1);
        for &v in &loop_potential[1..d.n_loop - 1] {
            diag.push(two / h + h * v * w1);
            mass.push(h * w1);
        }
        for &v in &tail_potential[1..d.n_tail - 1] {
            diag.push(two / h + h * v * w2);
            mass.push(h * w2);
        }
        let mut off = vec![-T::one() / h; n - 1];
        off[nl - 1] = T::zero();
        let mut border = vec![T::zero(); n];
        border[0] = border[0] - T::one() / h;
        border[nl - 1] = border[nl - 1] - T::one() / h;
        border[nl] = border[nl] - T::one() / h;
        let half = h / two;
        let corner = T::lit(3.0) / h
            + half * (loop_potential[0] + loop_potential[d.n_loop - 1]) * w1
            + half * tail_potential[0] * w2
            - g.z;
        mass.push(half * (two * w1 + w2));
        let stiffness = BorderedTridiagonal { diag, off, border, corner };
        let mut op = Self::from_parts(*d, stiffness, mass);
        if is_even(loop_potential) {
            op.sectors = Some(graph_sectors(&op.scaled, d.loop_center(), nt));
        }
        Ok(op)
    }

    fn from_parts(grid: Discretization<T>, stiffness: BorderedTridiagonal<T>, mass: Vec<T>) -> Self {
        let r: Vec<T> = mass.iter().map(|m| T::one() / m.sqrt()).collect();
        let n = stiffness.diag.len();
        let scaled = BorderedTridiagonal {
            diag: (0..n).map(|i| stiffness.diag[i] * r[i] * r[i]).collect(),
            off: (0..n.saturating_sub(1)).map(|i| stiffness.off[i] * r[i] * r[i + 1]).collect(),
            border: (0..n).map(|i| stiffness.border[i] * r[i] * r[n]).collect(),
            corner: stiffness.corner * r[n] * r[n],
        };
        Self {
            grid,
            stiffness,
            mass,
            scaled,
            sectors: None,
        }
    }

    /// Reflection sectors, present when the loop potential is even.
    pub fn sectors(&self) -> Option<&ReflectionSplit<T>> {
        self.sectors.as_ref()
    }

    /// Lowest eigenvalue of `A u = λ M u` and its eigenvector `u` in unknown
    /// order, normalized to `uᵀ M u = 1`.
    pub fn ground(&self) -> Result<(T, Vec<T>)> {
        let (lambda, y) = match &self.sectors {
            Some(s) => {
                let (lambda, y, even) = s.ground()?;
                (lambda, graph_unknowns(&y, even, self.grid.loop_center(), self.grid.n_tail - 2))
            }
            None => {
                let lambda = self.scaled.eigenvalue(0);
                (lambda, self.scaled.eigenvector(lambda)?)
            }
        };
        Ok((lambda, self.unscale(&y)))
    }

    pub fn grid(&self) -> &Discretization<T> {
        &self.grid
    }

    /// Stiffness matrix `A`.
    pub fn stiffness(&self) -> &BorderedTridiagonal<T> {
        &self.stiffness
    }

    /// Lumped mass in unknown order.
    pub fn mass(&self) -> &[T] {
        &self.mass
    }

    /// The symmetric matrix `M^{-1/2} A M^{-1/2}`.
    pub fn scaled(&self) -> &BorderedTridiagonal<T> {
        &self.scaled
    }

    pub fn dim(&self) -> usize {
        self.mass.len()
    }

    /// Restricts a grid function to the unknowns, taking the vertex from the tail.
    pub fn to_unknowns(&self, f: &GridFunction<T>) -> Vec<T> {
        let d = &self.grid;
        let mut x = Vec::with_capacity(self.dim());
        x.extend_from_slice(&f.loop_values[1..d.n_loop - 1]);
        x.extend_from_slice(&f.tail_values[1..d.n_tail - 1]);
        x.push(f.tail_values[0]);
        x
    }

    /// Expands unknowns to a grid function with `tail_end` at `R`.
    pub fn from_unknowns(&self, x: &[T], tail_end: T) -> GridFunction<T> {
        let d = &self.grid;
        let nl = d.n_loop - 2;
        let nt = d.n_tail - 2;
        let v = x[nl + nt];
        let mut loop_values = Vec::with_capacity(d.n_loop);
        loop_values.push(v);
        loop_values.extend_from_slice(&x[..nl]);
        loop_values.push(v);
        let mut tail_values = Vec::with_capacity(d.n_tail);
        tail_values.push(v);
        tail_values.extend_from_slice(&x[nl..nl + nt]);
        tail_values.push(tail_end);
        GridFunction { loop_values, tail_values }
    }

    /// Mass-weighted norm `√(uᵀ M u)` over the unknowns.
    pub fn mass_norm(&self, x: &[T]) -> T {
        x.iter().zip(&self.mass).map(|(v, m)| *m * *v * *v).sum::<T>().sqrt()
    }

    /// Converts an eigenvector of the scaled matrix into grid values `M^{-1/2} y`.
    pub fn unscale(&self, y: &[T]) -> Vec<T> {
        y.iter().zip(&self.mass).map(|(v, m)| *v / m.sqrt()).collect()
    }
}

impl<T: Real> SturmCount<T> for GraphOperator<T> {
    fn count_below(&self, sigma: T) -> usize {
        match &self.sectors {
            Some(s) => s.count_below(sigma),
            None => self.scaled.count_below(sigma),
        }
    }

    fn bounds(&self) -> (T, T) {
        self.scaled.gershgorin()
    }

    fn size(&self) -> usize {
        self.dim()
    }
}

/// Loop problem `−c1² f″ + V f = λ f` on `[−L, L]` with periodic ends.
///
/// The unknowns are nodes `0..n_loop−1`; node `0` stands for both endpoints.
pub fn periodic_loop<T: Real>(c1: T, d: &Discretization<T>, loop_potential: &[T]) -> BorderedTridiagonal<T> {
    let h = d.h;
    let c2 = c1 * c1;
    let m = d.n_loop - 1;
    let n = m - 1;
    let diag: Vec<T> = (1..m).map(|i| c2 * T::lit(2.0) / (h * h) + loop_potential[i]).collect();
    let off = vec![-c2 / (h * h); n - 1];
    let mut border = vec![T::zero(); n];
    border[0] = -c2 / (h * h);
    border[n - 1] = border[n - 1] - c2 / (h * h);
    let v0 = (loop_potential[0] + loop_potential[m]) / T::lit(2.0);
    BorderedTridiagonal {
        diag,
        off,
        border,
        corner: c2 * T::lit(2.0) / (h * h) + v0,
    }
}

/// Tail problem `−c2² g″ + V g = λ g` with `g′(0) = −Z g(0)` and `g(R) = 0`,
/// in symmetric scaled form over nodes `0..n_tail−1`.
pub fn robin_tail<T: Real>(c2: T, z: T, d: &Discretization<T>, tail_potential: &[T]) -> BorderedTridiagonal<T> {
    let h = d.h;
    let w = T::one() / (c2 * c2);
    let n = d.n_tail - 1;
    let m_in = h * w;
    let m0 = h * w / T::lit(2.0);
    let mut diag = Vec::with_capacity(n);
    diag.push((T::one() / h + h / T::lit(2.0) * w * tail_potential[0] - z) / m0);
    diag.extend((1..n).map(|j| (T::lit(2.0) / h + h * w * tail_potential[j]) / m_in));
    let mut off = vec![-T::one() / h / m_in; n - 1];
    off[0] = -T::one() / h / (m_in * m0).sqrt();
    BorderedTridiagonal::tridiagonal(&diag, &off)
}

/// Loop problem on `(0, L)` with Dirichlet ends; the odd loop modes with
/// vanishing vertex value.
pub fn odd_half_loop<T: Real>(c1: T, d: &Discretization<T>, loop_potential: &[T]) -> BorderedTridiagonal<T> {
    let h = d.h;
    let c2 = c1 * c1;
    let first = d.loop_center() + 1;
    let last = d.n_loop - 2;
    let diag: Vec<T> = (first..=last).map(|i| c2 * T::lit(2.0) / (h * h) + loop_potential[i]).collect();
    let off = vec![-c2 / (h * h); diag.len() - 1];
    BorderedTridiagonal::tridiagonal(&diag, &off)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> (GraphParams<f64>, Discretization<f64>) {
        let g = GraphParams::new(1.0, 0.8, 1.3, 0.4).unwrap();
        let d = Discretization::new(1.0, 0.25, 1.5).unwrap();
        (g, d)
    }

    fn potentials(d: &Discretization<f64>) -> (Vec<f64>, Vec<f64>) {
        let lp: Vec<f64> = (0..d.n_loop).map(|i| (d.loop_x(i) * 1.7).cos()).collect();
        let mut tp: Vec<f64> = (0..d.n_tail).map(|j| 0.3 + d.tail_x(j)).collect();
        tp[0] = lp[0];
        (lp, tp)
    }

    #[test]
    fn scaled_matrix_is_symmetric_similarity_of_pencil() {
        let (g, d) = small();
        let (lp, tp) = potentials(&d);
        let op = GraphOperator::assemble(&g, &d, &lp, &tp).unwrap();
        let a = op.stiffness().to_dense();
        let b = op.scaled().to_dense();
        let m = op.mass();
        let n = op.dim();
        for i in 0..n {
            for j in 0..n {
                assert!((a[i][j] - a[j][i]).abs() < 1e-12);
                assert!((b[i][j] - a[i][j] / (m[i] * m[j]).sqrt()).abs() < 1e-9 * (1.0 + b[i][j].abs()));
            }
        }
    }

    #[test]
    fn stiffness_equals_direct_quadratic_form() {
        // vᵀAv against an independent sum over edges of the discrete form.
        let (g, d) = small();
        let (lp, tp) = potentials(&d);
        let op = GraphOperator::assemble(&g, &d, &lp, &tp).unwrap();
        let mut f = GridFunction::zeros(&d);
        for (i, v) in f.loop_values.iter_mut().enumerate() {
            *v = 0.2 + (i as f64 * 0.9).sin();
        }
        for (j, v) in f.tail_values.iter_mut().enumerate() {
            *v = (j as f64 * 0.4).cos();
        }
        let vtx = 0.77;
        let nl = d.n_loop;
        let nt = d.n_tail;
        f.loop_values[0] = vtx;
        f.loop_values[nl - 1] = vtx;
        f.tail_values[0] = vtx;
        f.tail_values[nt - 1] = 0.0;
        let x = op.to_unknowns(&f);
        let ax = op.stiffness().apply(&x);
        let form: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();

        let h = d.h;
        let mut q = 0.0;
        for w in f.loop_values.windows(2) {
            q += (w[1] - w[0]).powi(2) / h;
        }
        for w in f.tail_values.windows(2) {
            q += (w[1] - w[0]).powi(2) / h;
        }
        for i in 0..nl {
            let wt = if i == 0 || i == nl - 1 { h / 2.0 } else { h };
            q += wt * lp[i] * f.loop_values[i].powi(2) / (g.c1 * g.c1);
        }
        for j in 0..nt {
            let wt = if j == 0 || j == nt - 1 { h / 2.0 } else { h };
            q += wt * tp[j] * f.tail_values[j].powi(2) / (g.c2 * g.c2);
        }
        q -= g.z * vtx * vtx;
        assert!((form - q).abs() < 1e-12 * q.abs().max(1.0), "{form} vs {q}");
    }

    #[test]
    fn unknowns_round_trip() {
        let (g, d) = small();
        let (lp, tp) = potentials(&d);
        let op = GraphOperator::assemble(&g, &d, &lp, &tp).unwrap();
        let x: Vec<f64> = (0..op.dim()).map(|i| i as f64 * 0.5 - 1.0).collect();
        let f = op.from_unknowns(&x, 0.0);
        assert_eq!(f.continuity_defect(), 0.0);
        assert_eq!(op.to_unknowns(&f), x);
    }

    #[test]
    fn rejects_mismatched_potential() {
        let (g, d) = small();
        let (lp, tp) = potentials(&d);
        assert!(GraphOperator::assemble(&g, &d, &lp[1..], &tp).is_err());
    }

    #[test]
    fn periodic_loop_constant_potential_has_fourier_eigenvectors() {
        let d = Discretization::new(1.0f64, 0.01, 1.0).unwrap();
        let lp = vec![-1.0; d.n_loop];
        let c1 = 1.3;
        let p = periodic_loop(c1, &d, &lp);
        let m = d.n_loop - 1;
        let h = d.h;
        for j in 0..5 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let lam = -1.0 + 4.0 * c1 * c1 / (h * h) * (theta / 2.0).sin().powi(2);
            // Border is node 0, chain is nodes 1..m.
            let mut v: Vec<f64> = (1..m).map(|i| (theta * i as f64).cos()).collect();
            v.push(1.0);
            let pv = p.apply(&v);
            for (a, b) in pv.iter().zip(&v) {
                assert!((a - lam * b).abs() < 1e-7 * lam.abs().max(1.0));
            }
        }
    }

    #[test]
    fn robin_tail_free_laplacian_matches_exponential_bound_state() {
        // −g″ with g′(0) = −Z g(0): single bound state −Z² (c2 = 1).
        let z = 0.8;
        let d = Discretization::new(1.0f64, 2e-3, 30.0).unwrap();
        let tp = vec![0.0; d.n_tail];
        let t = robin_tail(1.0, z, &d, &tp);
        let lam = t.eigenvalue(0);
        assert!((lam + z * z).abs() < 1e-4, "{lam}");
        assert!(t.eigenvalue(1) > 0.0);
    }

    #[test]
    fn odd_half_loop_free_spectrum() {
        let d = Discretization::new(2.0f64, 5e-3, 1.0).unwrap();
        let lp = vec![0.0; d.n_loop];
        let o = odd_half_loop(1.0, &d, &lp);
        for n in 1..4 {
            let e = (n as f64 * std::f64::consts::PI / 2.0).powi(2);
            assert!((o.eigenvalue(n - 1) - e).abs() < 1e-4 * e);
        }
    }
}
