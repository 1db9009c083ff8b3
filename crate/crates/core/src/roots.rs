use crate::Real;

/// Bisection on a bracketing interval `[a, b]` with `f(a)·f(b) <= 0`.
///
/// Stops when the bracket is shorter than `tol` or stops shrinking.
pub(crate) fn bisect<T: Real, F: FnMut(T) -> T>(mut f: F, mut a: T, mut b: T, tol: T) -> T {
    let mut fa = f(a);
    let two = T::lit(2.0);
    for _ in 0..200 {
        let m = (a + b) / two;
        if (b - a).abs() <= tol || m == a || m == b {
            return m;
        }
        let fm = f(m);
        if fm == T::zero() {
            return m;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    (a + b) / two
}

/// Brackets of sign changes of `values` over the ordered abscissae `xs`.
pub(crate) fn sign_changes<T: Real>(xs: &[T], values: &[T]) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for i in 1..xs.len() {
        let (f0, f1) = (values[i - 1], values[i]);
        if f0.is_nan() || f1.is_nan() {
            continue;
        }
        if f0 == T::zero() {
            out.push((xs[i - 1], xs[i - 1]));
        } else if (f0 < T::zero()) != (f1 < T::zero()) && f1 != T::zero() {
            out.push((xs[i - 1], xs[i]));
        }
    }
    if let (Some(&x), Some(&f)) = (xs.last(), values.last()) {
        if f == T::zero() {
            out.push((x, x));
        }
    }
    out
}
