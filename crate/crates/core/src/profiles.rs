//! Closed-form stationary profiles on the loop and on the tail.
//!
//! The tail carries a shifted kink `ψ(x) = 4·atan(exp(−(x + a)/c2))`. The loop
//! carries an even libration solution of `−c1² φ'' + sin φ = 0`, with energy
//! level `E = 2 − 2k²`:
//!
//! - [`Branch::AbovePi`]: `φ > π` on the whole loop, needs `K(k) > L/c1`.
//! - [`Branch::Crossing`]: `φ` crosses `π` at `|x| = b = c1·K(k)`, needs
//!   `K(k) < L/c1 < 2K(k)` so that the profile stays a single monotone lobe.
//! - [`Branch::Center`]: the constant state `φ ≡ π`.
//!
//! A [`StationaryState`] glues a loop profile and a tail kink that agree at the
//! vertex. Whether the flux condition also holds is reported by
//! [`StationaryState::flux_residual`]. The `existence` module picks `k` so that
//! it does.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticModulus;
use crate::scalar::sech;
use crate::{Error, Real, Result};

/// Physical parameters of the tadpole graph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphParams<T> {
    /// Half-length `L` of the loop `[-L, L]`.
    pub loop_half_length: T,
    /// Wave speed on the loop.
    pub c1: T,
    /// Wave speed on the tail.
    pub c2: T,
    /// Strength of the δ interaction at the vertex.
    pub z: T,
}

impl<T: Real> GraphParams<T> {
    /// Validated constructor.
    pub fn new(loop_half_length: T, c1: T, c2: T, z: T) -> Result<Self> {
        let p = Self {
            loop_half_length,
            c1,
            c2,
            z,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks positivity and finiteness.
    pub fn validate(&self) -> Result<()> {
        let pos = |v: T, name: &str| {
            if v.is_finite() && v > T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
            }
        };
        pos(self.loop_half_length, "loop half-length L")?;
        pos(self.c1, "c1")?;
        pos(self.c2, "c2")?;
        if !self.z.is_finite() {
            return Err(Error::InvalidParameter(format!("Z must be finite, got {}", self.z)));
        }
        Ok(())
    }

    /// Ratio `L/c1`, the loop length in units of the loop speed.
    pub fn loop_ratio(&self) -> T {
        self.loop_half_length / self.c1
    }

    /// True when `L/c1 > π/2`, the regime where `k₀` exists.
    pub fn is_loop_long(&self) -> bool {
        self.loop_ratio() > T::FRAC_PI_2()
    }

    /// Strength `2/(π c2)` at which a tail kink centred at the vertex balances the flux.
    pub fn strength_bound(&self) -> T {
        T::lit(2.0) / (T::PI() * self.c2)
    }

    /// Returns a copy with a different `Z`.
    pub fn with_z(&self, z: T) -> Self {
        Self { z, ..*self }
    }
}

/// Which family of loop profiles to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    AbovePi,
    Crossing,
    Center,
}

impl Branch {
    /// Kebab-case name used on the command line and in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Branch::AbovePi => "above-pi",
            Branch::Crossing => "crossing",
            Branch::Center => "center",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "above-pi" => Ok(Branch::AbovePi),
            "crossing" => Ok(Branch::Crossing),
            "center" => Ok(Branch::Center),
            other => Err(Error::InvalidParameter(format!(
                "unknown branch '{other}', expected above-pi, crossing or center"
            ))),
        }
    }
}

/// `θ cos θ − sin θ`, accurate near zero.
///
/// Its sign decides the lobe condition used by the spectral certificate.
pub fn lobe_function<T: Real>(theta: T) -> T {
    if theta.abs() < T::lit(1e-2) {
        let t2 = theta * theta;
        // -θ³/3 + θ⁵/30 - θ⁷/840
        theta * t2 * (-T::one() / T::lit(3.0) + t2 * (T::one() / T::lit(30.0) - t2 / T::lit(840.0)))
    } else {
        theta * theta.cos() - theta.sin()
    }
}

/// Shifted kink on the tail, `ψ(x) = 4·atan(exp(−(x + a)/c2))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinkTail<T> {
    /// Shift `a`. Negative values put the kink centre on the tail.
    pub shift: T,
    /// Tail wave speed.
    pub c2: T,
}

impl<T: Real> KinkTail<T> {
    fn arg(&self, x: T) -> T {
        (x + self.shift) / self.c2
    }

    /// `ψ(x)`.
    pub fn value(&self, x: T) -> T {
        T::lit(4.0) * (-self.arg(x)).exp().atan()
    }

    /// `ψ'(x) = −(2/c2)·sech((x + a)/c2)`.
    pub fn derivative(&self, x: T) -> T {
        -T::lit(2.0) / self.c2 * sech(self.arg(x))
    }

    /// `ψ''(x) = sin ψ / c2²`.
    pub fn second_derivative(&self, x: T) -> T {
        self.sin_value(x) / (self.c2 * self.c2)
    }

    /// `cos ψ(x) = 1 − 2 sech²((x + a)/c2)`, free of the round-off in `cos(ψ)`.
    pub fn potential(&self, x: T) -> T {
        let s = sech(self.arg(x));
        T::one() - T::lit(2.0) * s * s
    }

    /// `sin ψ(x) = 2 sech(s) tanh(s)` with `s = (x + a)/c2`.
    pub fn sin_value(&self, x: T) -> T {
        let s = self.arg(x);
        T::lit(2.0) * sech(s) * s.tanh()
    }
}

/// Even periodic profile on the loop.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LibrationProfile<T> {
    modulus: EllipticModulus<T>,
    c1: T,
    half_length: T,
    branch: Branch,
    quarter: T,
}

impl<T: Real> LibrationProfile<T> {
    /// Builds the profile and checks that `k` lies in the branch window.
    ///
    /// On the crossing branch the window also excludes `L/c1 >= 2K`, where
    /// the profile would turn back up before reaching the vertex.
    pub fn new(modulus: EllipticModulus<T>, c1: T, half_length: T, branch: Branch) -> Result<Self> {
        let quarter = modulus.quarter_period();
        let ratio = half_length / c1;
        let ok = match branch {
            Branch::AbovePi => quarter > ratio,
            Branch::Crossing => quarter < ratio && ratio < quarter * T::lit(2.0),
            Branch::Center => modulus.k() == T::zero(),
        };
        if !ok {
            return Err(Error::BranchMismatch {
                k: modulus.k().as_f64(),
                branch: branch.name(),
                window: match branch {
                    Branch::AbovePi => (f64::NAN, 1.0),
                    Branch::Crossing => (0.0, f64::NAN),
                    Branch::Center => (0.0, 0.0),
                },
            });
        }
        Ok(Self {
            modulus,
            c1,
            half_length,
            branch,
            quarter,
        })
    }

    /// The constant profile `φ ≡ π`.
    pub fn center(c1: T, half_length: T) -> Self {
        let modulus = EllipticModulus::new(T::zero()).expect("zero modulus");
        Self {
            modulus,
            c1,
            half_length,
            branch: Branch::Center,
            quarter: modulus.quarter_period(),
        }
    }

    pub fn modulus(&self) -> EllipticModulus<T> {
        self.modulus
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn half_length(&self) -> T {
        self.half_length
    }

    pub fn c1(&self) -> T {
        self.c1
    }

    /// Energy level `E = 2 − 2k²` of `−(c1²/2)φ'² + 1 − cos φ`.
    pub fn energy(&self) -> T {
        T::lit(2.0) * self.modulus.complement() * self.modulus.complement()
    }

    /// Crossing point `b = c1·K(k)` where the profile passes through `π`.
    pub fn switch_point(&self) -> Option<T> {
        match self.branch {
            Branch::Crossing => Some(self.c1 * self.quarter),
            _ => None,
        }
    }

    /// `cos φ(x) = −1 + 2k² sn²(x/c1 + K)`.
    pub fn potential(&self, x: T) -> T {
        if self.branch == Branch::Center {
            return -T::one();
        }
        let sn = self.modulus.sn(x / self.c1 + self.quarter);
        -T::one() + T::lit(2.0) * self.modulus.parameter() * sn * sn
    }

    /// `φ(x)`.
    pub fn value(&self, x: T) -> T {
        let w = self.potential(x).max(-T::one()).min(T::one());
        let upper = T::lit(2.0) * T::PI() - w.acos();
        match self.branch {
            Branch::Center => T::PI(),
            Branch::AbovePi => upper,
            Branch::Crossing => {
                if x.abs() <= self.c1 * self.quarter {
                    upper
                } else {
                    w.acos()
                }
            }
        }
    }

    /// `φ'(x) = (2k/c1)·cn(x/c1 + K)`, valid on both branches.
    pub fn derivative(&self, x: T) -> T {
        if self.branch == Branch::Center {
            return T::zero();
        }
        T::lit(2.0) * self.modulus.k() / self.c1 * self.modulus.cn(x / self.c1 + self.quarter)
    }

    /// `sin φ(x)`, consistent with [`Self::potential`].
    pub fn sin_value(&self, x: T) -> T {
        if self.branch == Branch::Center {
            return T::zero();
        }
        // From φ = π + 2 asin(k sn(x/c1 + K)): sin φ = −2 k sn √(1 − k² sn²) = −2 k sn dn.
        let j = self.modulus.jacobi(x / self.c1 + self.quarter);
        -T::lit(2.0) * self.modulus.k() * j.sn * j.dn
    }

    /// `φ''(x) = sin φ / c1²`.
    pub fn second_derivative(&self, x: T) -> T {
        self.sin_value(x) / (self.c1 * self.c1)
    }
}

/// A loop profile and a tail kink that agree at the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryState<T> {
    pub params: GraphParams<T>,
    pub loop_profile: LibrationProfile<T>,
    pub tail: KinkTail<T>,
}

impl<T: Real> StationaryState<T> {
    /// Assembles a state from parts. Continuity at the vertex is checked.
    pub fn from_parts(params: GraphParams<T>, loop_profile: LibrationProfile<T>, tail: KinkTail<T>) -> Result<Self> {
        params.validate()?;
        let s = Self {
            params,
            loop_profile,
            tail,
        };
        let defect = s.continuity_defect();
        if defect > T::tol(1e-10) {
            return Err(Error::Numerical(format!("loop and tail disagree at the vertex by {defect}")));
        }
        Ok(s)
    }

    /// The constant state `φ ≡ π` with an unshifted tail kink.
    ///
    /// Admissible only at `Z = 2/(π c2)`.
    pub fn degenerate(params: GraphParams<T>) -> Result<Self> {
        params.validate()?;
        let bound = params.strength_bound();
        if (params.z - bound).abs() > T::tol(1e-12) * bound {
            return Err(Error::NoSolution(format!(
                "the centre state needs Z = 2/(pi c2) = {bound}, got Z = {}",
                params.z
            )));
        }
        Self::from_parts(
            params,
            LibrationProfile::center(params.c1, params.loop_half_length),
            KinkTail {
                shift: T::zero(),
                c2: params.c2,
            },
        )
    }

    pub fn branch(&self) -> Branch {
        self.loop_profile.branch()
    }

    pub fn modulus(&self) -> EllipticModulus<T> {
        self.loop_profile.modulus()
    }

    pub fn shift(&self) -> T {
        self.tail.shift
    }

    /// Energy level of the loop profile.
    pub fn energy(&self) -> T {
        self.loop_profile.energy()
    }

    /// `|φ(L) − ψ(0)|`.
    pub fn continuity_defect(&self) -> T {
        (self.loop_profile.value(self.params.loop_half_length) - self.tail.value(T::zero())).abs()
    }

    /// `2φ'(L) − ψ'(0) − Zψ(0)`, zero for a genuine stationary state.
    pub fn flux_residual(&self) -> T {
        let l = self.params.loop_half_length;
        T::lit(2.0) * self.loop_profile.derivative(l) - self.tail.derivative(T::zero()) - self.params.z * self.tail.value(T::zero())
    }

    /// Vertex value `ψ(0)`.
    pub fn vertex_value(&self) -> T {
        self.tail.value(T::zero())
    }
}
