//! Symmetric bordered tridiagonal matrices.
//!
//! Graph Laplacians of a loop with one tail, ordered as `[chain..., vertex]`,
//! are tridiagonal apart from the last row and column. The vertex couples to
//! a handful of chain entries:
//!
//! ```text
//! ⎡ T   b ⎤
//! ⎣ bᵀ  d ⎦
//! ```
//!
//! Eliminating the chain first leaves a single Schur pivot
//! `s(σ) = d − σ − bᵀ(T − σ)⁻¹b`. With Sylvester's law of inertia this gives an
//! exact count of eigenvalues below `σ` in `O(n)` operations, which drives
//! bisection. The same factorization solves shifted systems for inverse
//! iteration and Newton steps.
//!
//! When the border couples only to the last chain entry the matrix is a plain
//! tridiagonal one and the count is backward stable. With a general border the
//! Schur pivot is a long sum that cancels badly whenever a leading chain block
//! is nearly singular at `σ`, and the count can flicker within about
//! `1e-12·‖M‖` of such points. Reflection-symmetric problems avoid this by
//! splitting into two plain tridiagonal sectors.

use crate::{Error, Real, Result};

/// A symmetric matrix made of a tridiagonal chain plus one border row.
#[derive(Clone, Debug, PartialEq)]
pub struct BorderedTridiagonal<T> {
    /// Diagonal of the chain block.
    pub diag: Vec<T>,
    /// Off-diagonal of the chain block; `off[i]` couples `i` and `i + 1`.
    pub off: Vec<T>,
    /// Coupling of each chain entry to the border unknown.
    pub border: Vec<T>,
    /// Diagonal entry of the border unknown.
    pub corner: T,
}

/// `LDLᵀ` factors of `M − σI` with the border eliminated last.
struct Factors<T> {
    /// Chain pivots.
    pivots: Vec<T>,
    /// `L⁻¹ b`.
    zb: Vec<T>,
    /// Schur pivot of the border unknown.
    schur: T,
    negatives: usize,
}

impl<T: Real> BorderedTridiagonal<T> {
    /// A plain symmetric tridiagonal matrix; its last entry becomes the border.
    pub fn tridiagonal(diag: &[T], off: &[T]) -> Self {
        assert!(!diag.is_empty() && off.len() + 1 == diag.len());
        let n = diag.len() - 1;
        let mut border = vec![T::zero(); n];
        if n > 0 {
            border[n - 1] = off[n - 1];
        }
        Self {
            diag: diag[..n].to_vec(),
            off: off[..n.saturating_sub(1)].to_vec(),
            border,
            corner: diag[n],
        }
    }

    /// Size of the matrix, chain plus border.
    pub fn dim(&self) -> usize {
        self.diag.len() + 1
    }

    /// `M x`, with the border component last.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let n = self.diag.len();
        assert_eq!(x.len(), n + 1);
        let xv = x[n];
        let mut y = vec![T::zero(); n + 1];
        let mut acc = self.corner * xv;
        for i in 0..n {
            let mut v = self.diag[i] * x[i] + self.border[i] * xv;
            if i > 0 {
                v = v + self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v = v + self.off[i] * x[i + 1];
            }
            y[i] = v;
            acc = acc + self.border[i] * x[i];
        }
        y[n] = acc;
        y
    }

    /// Dense copy, for small test problems.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        let mut m = vec![vec![T::zero(); n]; n];
        for i in 0..n - 1 {
            m[i][i] = self.diag[i];
            if i + 1 < n - 1 {
                m[i][i + 1] = self.off[i];
                m[i + 1][i] = self.off[i];
            }
            m[i][n - 1] = self.border[i];
            m[n - 1][i] = self.border[i];
        }
        m[n - 1][n - 1] = self.corner;
        m
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = self.corner - self.border.iter().map(|b| b.abs()).sum::<T>();
        let mut hi = self.corner + self.border.iter().map(|b| b.abs()).sum::<T>();
        for i in 0..n {
            let mut r = self.border[i].abs();
            if i > 0 {
                r = r + self.off[i - 1].abs();
            }
            if i + 1 < n {
                r = r + self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn scale(&self) -> T {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(T::min_positive_value())
    }

    fn factor(&self, sigma: T) -> Factors<T> {
        let n = self.diag.len();
        let tiny = T::epsilon() * self.scale();
        let mut pivots = Vec::with_capacity(n);
        let mut zb = Vec::with_capacity(n);
        let mut negatives = 0;
        let mut schur = self.corner - sigma;
        for i in 0..n {
            let (mut d, mut z) = (self.diag[i] - sigma, self.border[i]);
            if i > 0 {
                let l = self.off[i - 1] / pivots[i - 1];
                d = d - l * self.off[i - 1];
                z = z - l * zb[i - 1];
            }
            if d == T::zero() {
                d = tiny;
            }
            if d < T::zero() {
                negatives += 1;
            }
            schur = schur - z * z / d;
            pivots.push(d);
            zb.push(z);
        }
        if schur == T::zero() {
            schur = tiny;
        }
        if schur < T::zero() {
            negatives += 1;
        }
        Factors {
            pivots,
            zb,
            schur,
            negatives,
        }
    }

    /// Number of eigenvalues strictly below `sigma`.
    pub fn count_below(&self, sigma: T) -> usize {
        self.factor(sigma).negatives
    }

    /// The `index`-th smallest eigenvalue (zero-based) by bisection.
    pub fn eigenvalue(&self, index: usize) -> T {
        SturmCount::eigenvalue(self, index)
    }

    /// Eigenvalues strictly below `upper`, ascending, at most `max` of them.
    pub fn eigenvalues_below(&self, upper: T, max: usize) -> Vec<T> {
        SturmCount::eigenvalues_below(self, upper, max)
    }

    /// Solves `(M − σI) x = rhs`.
    pub fn solve_shifted(&self, sigma: T, rhs: &[T]) -> Vec<T> {
        let f = self.factor(sigma);
        self.solve_with(&f, rhs)
    }

    fn solve_with(&self, f: &Factors<T>, rhs: &[T]) -> Vec<T> {
        let n = self.diag.len();
        assert_eq!(rhs.len(), n + 1);
        let lmul = |i: usize| self.off[i - 1] / f.pivots[i - 1];
        // Forward substitution for the chain part of the right-hand side.
        let mut w = vec![T::zero(); n];
        for i in 0..n {
            w[i] = if i == 0 { rhs[0] } else { rhs[i] - lmul(i) * w[i - 1] };
        }
        let btw: T = (0..n).map(|i| f.zb[i] * w[i] / f.pivots[i]).sum();
        let xv = (rhs[n] - btw) / f.schur;
        // Back substitution with the border contribution removed.
        let mut x = vec![T::zero(); n + 1];
        x[n] = xv;
        for i in (0..n).rev() {
            let mut v = (w[i] - f.zb[i] * xv) / f.pivots[i];
            if i + 1 < n {
                v = v - lmul(i + 1) * x[i + 1];
            }
            x[i] = v;
        }
        x
    }

    /// Unit eigenvector for an eigenvalue computed by [`Self::eigenvalue`].
    ///
    /// Inverse iteration with a deterministic start vector. Fails when the
    /// residual does not drop below `√ε·‖M‖`.
    pub fn eigenvector(&self, lambda: T) -> Result<Vec<T>> {
        if self.is_plain() {
            return self.twisted_eigenvector(lambda);
        }
        let n = self.dim();
        let scale = self.scale();
        let f = self.factor(lambda);
        let mut x: Vec<T> = (0..n)
            .map(|i| T::one() + T::lit(0.5) * (T::count(i) * T::lit(0.618_033_988_7)).sin())
            .collect();
        normalize(&mut x);
        let mut residual = T::infinity();
        for _ in 0..8 {
            x = self.solve_with(&f, &x);
            if x.iter().any(|v| !v.is_finite()) {
                break;
            }
            normalize(&mut x);
            let mx = self.apply(&x);
            residual = mx
                .iter()
                .zip(&x)
                .map(|(a, b)| (*a - lambda * *b) * (*a - lambda * *b))
                .sum::<T>()
                .sqrt();
            if residual <= T::epsilon().sqrt() * T::lit(1e-3) * scale {
                break;
            }
        }
        if residual <= T::epsilon().sqrt() * scale {
            Ok(x)
        } else {
            Err(Error::Numerical(format!(
                "inverse iteration at lambda = {lambda} stalled with residual {residual} (matrix scale {scale}, size {n})"
            )))
        }
    }
}

/// Symmetric operators with an exact eigenvalue count.
pub trait SturmCount<T: Real> {
    /// Number of eigenvalues strictly below `sigma`.
    fn count_below(&self, sigma: T) -> usize;

    /// An interval containing the spectrum.
    fn bounds(&self) -> (T, T);

    fn size(&self) -> usize;

    /// The `index`-th smallest eigenvalue (zero-based) by bisection.
    fn eigenvalue(&self, index: usize) -> T {
        let (mut lo, mut hi) = self.bounds();
        let scale = lo.abs().max(hi.abs());
        let pad = scale * T::epsilon() * T::lit(16.0) + T::min_positive_value();
        lo = lo - pad;
        hi = hi + pad;
        let tol = T::epsilon() * T::lit(4.0);
        for _ in 0..400 {
            let mid = (lo + hi) / T::lit(2.0);
            if hi - lo <= tol * (lo.abs() + hi.abs()) + T::min_positive_value() || mid == lo || mid == hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) / T::lit(2.0)
    }

    /// Eigenvalues strictly below `upper`, ascending, at most `max` of them.
    fn eigenvalues_below(&self, upper: T, max: usize) -> Vec<T> {
        let count = self.count_below(upper).min(max);
        (0..count).map(|i| self.eigenvalue(i)).collect()
    }
}

impl<T: Real> SturmCount<T> for BorderedTridiagonal<T> {
    fn count_below(&self, sigma: T) -> usize {
        self.factor(sigma).negatives
    }

    fn bounds(&self) -> (T, T) {
        self.gershgorin()
    }

    fn size(&self) -> usize {
        self.dim()
    }
}

impl<T: Real> BorderedTridiagonal<T> {
    /// Whether the border touches only the last chain entry, so that the
    /// matrix is plain tridiagonal.
    pub fn is_plain(&self) -> bool {
        let n = self.border.len();
        n == 0 || self.border[..n - 1].iter().all(|b| *b == T::zero())
    }

    /// Eigenvector of a plain tridiagonal matrix from a twisted factorization.
    ///
    /// Top-down and bottom-up pivots are joined at the index where the twist
    /// is smallest, and the vector is built from pivot ratios only. Entries
    /// therefore carry high relative accuracy even where the mode decays by
    /// many orders of magnitude, and the ground mode keeps an exact sign.
    fn twisted_eigenvector(&self, lambda: T) -> Result<Vec<T>> {
        let n = self.dim();
        let mut a: Vec<T> = self.diag.iter().map(|d| *d - lambda).collect();
        a.push(self.corner - lambda);
        let mut b = self.off.clone();
        if n > 1 {
            b.push(self.border[n - 2]);
        }
        let tiny = T::epsilon() * self.scale();
        let guard = |d: T| if d == T::zero() { tiny } else { d };
        let mut top = vec![T::zero(); n];
        let mut bottom = vec![T::zero(); n];
        top[0] = guard(a[0]);
        for i in 1..n {
            top[i] = guard(a[i] - b[i - 1] * b[i - 1] / top[i - 1]);
        }
        bottom[n - 1] = guard(a[n - 1]);
        for i in (0..n - 1).rev() {
            bottom[i] = guard(a[i] - b[i] * b[i] / bottom[i + 1]);
        }
        let twist = (0..n)
            .min_by(|&i, &j| {
                let gi = (top[i] + bottom[i] - a[i]).abs();
                let gj = (top[j] + bottom[j] - a[j]).abs();
                gi.partial_cmp(&gj).unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(0);
        let mut x = vec![T::zero(); n];
        x[twist] = T::one();
        for i in (0..twist).rev() {
            x[i] = -b[i] * x[i + 1] / top[i];
        }
        for i in twist + 1..n {
            x[i] = -b[i - 1] * x[i - 1] / bottom[i];
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!("twisted factorization overflowed at lambda = {lambda}")));
        }
        normalize(&mut x);
        let residual = self
            .apply(&x)
            .iter()
            .zip(&x)
            .map(|(p, q)| (*p - lambda * *q) * (*p - lambda * *q))
            .sum::<T>()
            .sqrt();
        if residual <= T::epsilon().sqrt() * self.scale() {
            Ok(x)
        } else {
            Err(Error::Numerical(format!(
                "twisted eigenvector at lambda = {lambda} has residual {residual} (size {n})"
            )))
        }
    }
}

fn normalize<T: Real>(x: &mut [T]) {
    let norm = x.iter().map(|v| *v * *v).sum::<T>().sqrt();
    if norm > T::zero() {
        for v in x.iter_mut() {
            *v = *v / norm;
        }
    }
}
