//! Complete elliptic integral of the first kind and Jacobi elliptic functions.
//!
//! Everything here uses the modulus convention: `K(k) = ∫₀^{π/2} dθ / √(1 − k² sin²θ)`
//! and `sn(u; k)`, `cn(u; k)`, `dn(u; k)` with `0 <= k < 1`.
//!
//! # Algorithm
//!
//! `K` comes from the arithmetic-geometric mean, `K = π / (2·AGM(1, k'))`. The
//! Jacobi functions use the descending Landen (Gauss) transformation in
//! Bulirsch's ratio form. The argument is first reduced modulo the real period `4K`. When
//! the complementary modulus `k'` drops below `1e-7`, the AGM recursion is
//! replaced by the hyperbolic expansion in `k'²`. A quarter-period shift keeps
//! that expansion inside its region of validity.
//!
//! The modulus stores `k` and `k'` separately. Near `k → 1`, `k'` cannot be
//! recovered accurately from `k`, and `K` depends on `k'` alone.

use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

/// Below this complementary modulus the hyperbolic expansion is used.
const HYPERBOLIC_SWITCH: f64 = 1e-7;

/// An elliptic modulus `k` together with its complement `k' = √(1 − k²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticModulus<T> {
    k: T,
    kc: T,
}

/// Values of the three Jacobi functions at one argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jacobi<T> {
    pub sn: T,
    pub cn: T,
    pub dn: T,
}

impl<T: Real> EllipticModulus<T> {
    /// Builds the modulus from `k` in `[0, 1)`.
    pub fn new(k: T) -> Result<Self> {
        if !(k >= T::zero() && k < T::one()) {
            return Err(Error::InvalidParameter(format!(
                "elliptic modulus must lie in [0, 1), got {k}"
            )));
        }
        let kc = ((T::one() - k) * (T::one() + k)).sqrt();
        Ok(Self { k, kc })
    }

    /// Builds the modulus from the complement `k'` in `(0, 1]`.
    ///
    /// Prefer this constructor when `k` is within a few ulps of one.
    pub fn from_complement(kc: T) -> Result<Self> {
        if !(kc > T::zero() && kc <= T::one()) {
            return Err(Error::InvalidParameter(format!(
                "complementary modulus must lie in (0, 1], got {kc}"
            )));
        }
        let k = ((T::one() - kc) * (T::one() + kc)).sqrt();
        Ok(Self { k, kc })
    }

    /// The modulus `k`.
    pub fn k(&self) -> T {
        self.k
    }

    /// The complementary modulus `k'`.
    pub fn complement(&self) -> T {
        self.kc
    }

    /// The parameter `m = k²`.
    pub fn parameter(&self) -> T {
        self.k * self.k
    }

    /// Complete elliptic integral of the first kind, `K(k)`.
    pub fn quarter_period(&self) -> T {
        let (a, _) = agm(T::one(), self.kc);
        T::FRAC_PI_2() / a
    }

    /// `sn`, `cn` and `dn` at `u`.
    pub fn jacobi(&self, u: T) -> Jacobi<T> {
        if self.k == T::zero() {
            return Jacobi {
                sn: u.sin(),
                cn: u.cos(),
                dn: T::one(),
            };
        }
        let quarter = self.quarter_period();
        let period = quarter * T::lit(4.0);
        let u = u - period * (u / period).round();
        if self.kc < T::lit(HYPERBOLIC_SWITCH) {
            hyperbolic_reduced(u, quarter, self.kc)
        } else {
            landen(u, self.kc)
        }
    }

    /// `sn(u; k)`.
    pub fn sn(&self, u: T) -> T {
        self.jacobi(u).sn
    }

    /// `cn(u; k)`.
    pub fn cn(&self, u: T) -> T {
        self.jacobi(u).cn
    }

    /// `dn(u; k)`.
    pub fn dn(&self, u: T) -> T {
        self.jacobi(u).dn
    }
}

/// Complete elliptic integral `K(k)` for `0 <= k < 1`.
pub fn complete_k<T: Real>(k: T) -> Result<T> {
    Ok(EllipticModulus::new(k)?.quarter_period())
}

/// Arithmetic-geometric mean of `a` and `b`, with the number of steps taken.
fn agm<T: Real>(mut a: T, mut b: T) -> (T, usize) {
    let tol = T::tol(1e-15);
    let two = T::lit(2.0);
    let mut steps = 0;
    while (a - b).abs() > tol * a && steps < 64 {
        let next = (a + b) / two;
        b = (a * b).sqrt();
        a = next;
        steps += 1;
    }
    (a, steps)
}

/// Descending Landen (Gauss) transformation in Bulirsch's ratio form.
///
/// The functions are recovered from the ratio `cn/sn` carried back through the
/// mean sequence. This keeps `dn` accurate near `u = K`, where `sn → 1` and
/// `cn → 0`.
fn landen<T: Real>(u: T, kc: T) -> Jacobi<T> {
    let two = T::lit(2.0);
    let tol = T::epsilon() * T::lit(4.0);
    let mut means = Vec::with_capacity(16);
    let mut geo = Vec::with_capacity(16);
    let mut a = T::one();
    let mut emc = kc * kc;
    let mut c;
    loop {
        means.push(a);
        emc = emc.sqrt();
        geo.push(emc);
        c = (a + emc) / two;
        if (a - emc).abs() <= tol * a || means.len() >= 64 {
            break;
        }
        emc = emc * a;
        a = c;
    }
    let (mut sn, mut cn) = (u * c).sin_cos();
    let mut dn = T::one();
    if sn != T::zero() {
        let mut a = cn / sn;
        let mut c = c * a;
        for i in (0..means.len()).rev() {
            let b = means[i];
            a = a * c;
            c = c * dn;
            dn = (geo[i] + a) / (b + a);
            a = c / b;
        }
        let r = T::one() / (c * c + T::one()).sqrt();
        sn = if sn >= T::zero() { r } else { -r };
        cn = c * sn;
    }
    Jacobi { sn, cn, dn }
}

/// Hyperbolic expansion to first order in `k'²`, valid for `|u| <= K/2`.
fn hyperbolic<T: Real>(u: T, kc: T) -> Jacobi<T> {
    let m1 = kc * kc / T::lit(4.0);
    let (sh, ch) = (u.sinh(), u.cosh());
    let th = u.tanh();
    let se = T::one() / ch;
    let minus = sh * ch - u;
    let plus = sh * ch + u;
    Jacobi {
        sn: th + m1 * minus * se * se,
        cn: se - m1 * minus * th * se,
        dn: se + m1 * plus * th * se,
    }
}

/// Hyperbolic regime for an argument already reduced to `[-2K, 2K]`.
fn hyperbolic_reduced<T: Real>(u: T, quarter: T, kc: T) -> Jacobi<T> {
    let sign = if u < T::zero() { -T::one() } else { T::one() };
    let mut w = u.abs();
    let mut flip = false;
    if w > quarter {
        w = quarter * T::lit(2.0) - w;
        flip = true;
    }
    let mut j = if w <= quarter / T::lit(2.0) {
        hyperbolic(w, kc)
    } else {
        let s = hyperbolic(quarter - w, kc);
        Jacobi {
            sn: s.cn / s.dn,
            cn: kc * s.sn / s.dn,
            dn: kc / s.dn,
        }
    };
    j.sn = j.sn * sign;
    if flip {
        j.cn = -j.cn;
    }
    j
}
