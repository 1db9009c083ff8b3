//! Even/odd splitting under the loop reflection `x ↦ −x`.
//!
//! When the loop potential is even the reflection commutes with the operator.
//! In an orthonormal basis of symmetric pairs `(δᵢ ± δ₋ᵢ)/√2` and fixed nodes,
//! the even sector becomes a path (centre, loop half, vertex, tail) and the odd
//! sector a Dirichlet path on the loop half. Both are plain tridiagonal
//! matrices, so Sturm counts are stable.

use super::bordered::{BorderedTridiagonal, SturmCount};
use crate::{Real, Result};

/// The two reflection sectors of a symmetric problem.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionSplit<T> {
    pub even: BorderedTridiagonal<T>,
    pub odd: BorderedTridiagonal<T>,
}

impl<T: Real> SturmCount<T> for ReflectionSplit<T> {
    fn count_below(&self, sigma: T) -> usize {
        self.even.count_below(sigma) + self.odd.count_below(sigma)
    }

    fn bounds(&self) -> (T, T) {
        let (a, b) = self.even.gershgorin();
        let (c, d) = self.odd.gershgorin();
        (a.min(c), b.max(d))
    }

    fn size(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }
}

impl<T: Real> ReflectionSplit<T> {
    /// Lowest eigenvalue and its eigenvector in sector coordinates, with a
    /// flag telling whether it lies in the even sector.
    pub fn ground(&self) -> Result<(T, Vec<T>, bool)> {
        let e = self.even.eigenvalue(0);
        let o = self.odd.eigenvalue(0);
        if e <= o {
            Ok((e, self.even.eigenvector(e)?, true))
        } else {
            Ok((o, self.odd.eigenvector(o)?, false))
        }
    }
}

/// Whether `values[i] == values[n − 1 − i]` for all `i`.
pub fn is_even<T: Real>(values: &[T]) -> bool {
    let n = values.len();
    (0..n / 2).all(|i| values[i] == values[n - 1 - i])
}

/// Sectors of the scaled graph matrix with unknowns
/// `[loop interior (2c − 1), tail interior, vertex]`, `c` the loop centre index.
pub(crate) fn graph_sectors<T: Real>(b: &BorderedTridiagonal<T>, center: usize, tail_interior: usize) -> ReflectionSplit<T> {
    let c = center;
    let nl = 2 * c - 1;
    let nt = tail_interior;
    let r2 = T::lit(2.0).sqrt();
    let mut diag = Vec::with_capacity(c + 1 + nt);
    diag.push(b.diag[c - 1]);
    diag.extend_from_slice(&b.diag[c..nl]);
    diag.push(b.corner);
    diag.extend_from_slice(&b.diag[nl..nl + nt]);
    let mut off = Vec::with_capacity(c + nt);
    off.push(r2 * b.off[c - 1]);
    off.extend_from_slice(&b.off[c..nl - 1]);
    off.push(r2 * b.border[nl - 1]);
    if nt > 0 {
        off.push(b.border[nl]);
        off.extend_from_slice(&b.off[nl..nl + nt - 1]);
    }
    let even = BorderedTridiagonal::tridiagonal(&diag, &off);
    let odd = BorderedTridiagonal::tridiagonal(&b.diag[c..nl], &b.off[c..nl - 1]);
    ReflectionSplit { even, odd }
}

/// Maps a sector vector back to graph unknowns; see [`graph_sectors`].
pub(crate) fn graph_unknowns<T: Real>(y: &[T], even: bool, center: usize, tail_interior: usize) -> Vec<T> {
    let c = center;
    let nl = 2 * c - 1;
    let nt = tail_interior;
    let r2 = T::lit(2.0).sqrt();
    let mut x = vec![T::zero(); nl + nt + 1];
    if even {
        x[c - 1] = y[0];
        for k in 1..c {
            x[c + k - 1] = y[k] / r2;
            x[c - k - 1] = y[k] / r2;
        }
        x[nl + nt] = y[c];
        for j in 0..nt {
            x[nl + j] = y[c + 1 + j];
        }
    } else {
        for k in 1..c {
            x[c + k - 1] = y[k - 1] / r2;
            x[c - k - 1] = -y[k - 1] / r2;
        }
    }
    x
}

/// Sectors of `−c1²∂ₓ² + V` on the periodic loop with `2c` nodes.
///
/// The even sector runs from the centre to the endpoint `±L`; the odd sector
/// is the Dirichlet problem on `(0, L)`.
pub fn periodic_sectors<T: Real>(c1: T, h: T, loop_potential: &[T]) -> ReflectionSplit<T> {
    let c = (loop_potential.len() - 1) / 2;
    let a = c1 * c1 / (h * h);
    let two = T::lit(2.0);
    let r2 = two.sqrt();
    let m = 2 * c;
    let v0 = (loop_potential[0] + loop_potential[m]) / two;
    let mut diag: Vec<T> = (c..m).map(|i| two * a + loop_potential[i]).collect();
    diag.push(two * a + v0);
    let mut off = vec![-a; c];
    off[0] = -r2 * a;
    off[c - 1] = -r2 * a;
    let even = BorderedTridiagonal::tridiagonal(&diag, &off);
    let odd_diag: Vec<T> = (c + 1..m).map(|i| two * a + loop_potential[i]).collect();
    let odd = BorderedTridiagonal::tridiagonal(&odd_diag, &vec![-a; odd_diag.len() - 1]);
    ReflectionSplit { even, odd }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_sectors_resolve_double_eigenvalues() {
        // Cycle of 2c nodes, constant potential −1: −1 + 4a sin²(πj/2c).
        let c = 100;
        let h = 0.01;
        let c1 = 1.3f64;
        let lp = vec![-1.0; 2 * c + 1];
        let s = periodic_sectors(c1, h, &lp);
        let a = c1 * c1 / (h * h);
        let mut want: Vec<f64> = (0..2 * c)
            .map(|j| -1.0 + 4.0 * a * (std::f64::consts::PI * j as f64 / (2 * c) as f64).sin().powi(2))
            .collect();
        want.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (i, w) in want.iter().take(9).enumerate() {
            assert!((s.eigenvalue(i) - w).abs() < 1e-10 * w.abs().max(1.0), "{i}: {} vs {w}", s.eigenvalue(i));
        }
        let mut prev = 0;
        for k in 0..2000 {
            let sigma = 15.6782595 + k as f64 * 1e-10;
            let n = s.count_below(sigma);
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn evenness_check() {
        assert!(is_even(&[1.0, 2.0, 3.0, 2.0, 1.0]));
        assert!(!is_even(&[1.0, 2.0, 3.0, 2.5, 1.0]));
    }
}
