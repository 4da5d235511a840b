//! System parameters `(N, p, α, β)` of
//!
//! ```text
//! -Δu = |x|^β v,   -Δv = |x|^α |u|^{p-1} u   in ℝ^N,
//! ```
//!
//! their closed-form derived constants, and the dimension regime split.

use std::fmt;

use crate::error::{LabError, Result};

/// Absolute tolerance on `N` used to detect the critical hyperbola.
pub const HYPERBOLA_TOL: f64 = 1e-12;

/// The dimension-free exponents `(p, α, β)`.
///
/// Quantities that depend on the exponents only (λ, μ, the threshold
/// polynomials in `N`, the critical dimension) take this type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    p: f64,
    alpha: f64,
    beta: f64,
}

impl Exponents {
    /// Validates `p > 1`, `α > -4`, `β ≥ 0`.
    pub fn new(p: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(p.is_finite() && alpha.is_finite() && beta.is_finite()) {
            return Err(LabError::InvalidParams(format!(
                "non-finite exponents p={p}, alpha={alpha}, beta={beta}"
            )));
        }
        if p <= 1.0 {
            return Err(LabError::InvalidParams(format!("p must exceed 1, got {p}")));
        }
        if alpha <= -4.0 {
            return Err(LabError::InvalidParams(format!(
                "alpha must exceed -4, got {alpha}"
            )));
        }
        if beta < 0.0 {
            return Err(LabError::InvalidParams(format!(
                "beta must be nonnegative, got {beta}"
            )));
        }
        Ok(Self { p, alpha, beta })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// λ = (4+α+β)/(p-1), the homogeneity degree of the singular solution.
    pub fn lambda(&self) -> f64 {
        (4.0 + self.alpha + self.beta) / (self.p - 1.0)
    }

    /// μ = (4+α+βp)/(p-1).
    pub fn mu(&self) -> f64 {
        (4.0 + self.alpha + self.beta * self.p) / (self.p - 1.0)
    }

    /// `4 + β + 2λ`: the critical hyperbola written as a dimension.
    pub fn sobolev_threshold(&self) -> f64 {
        4.0 + self.beta + 2.0 * self.lambda()
    }

    /// `4 + β + (4p+1)λ`: right end of the critical-dimension bracket.
    pub fn bracket_hi(&self) -> f64 {
        4.0 + self.beta + (4.0 * self.p + 1.0) * self.lambda()
    }

    /// Attach a dimension, validating `N ≥ 5` and `β ≤ (N-4)/2`.
    pub fn with_dimension(&self, n: f64) -> Result<SystemParams> {
        SystemParams::new(n, self.p, self.alpha, self.beta)
    }
}

/// Validated `(N, p, α, β)` with θ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    n: f64,
    exponents: Exponents,
}

impl SystemParams {
    pub fn new(n: f64, p: f64, alpha: f64, beta: f64) -> Result<Self> {
        let exponents = Exponents::new(p, alpha, beta)?;
        if !n.is_finite() || n < 5.0 {
            return Err(LabError::InvalidParams(format!(
                "N must be at least 5, got {n}"
            )));
        }
        if beta > (n - 4.0) / 2.0 {
            return Err(LabError::InvalidParams(format!(
                "beta = {beta} exceeds (N-4)/2 = {}",
                (n - 4.0) / 2.0
            )));
        }
        Ok(Self { n, exponents })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.exponents.p
    }

    pub fn alpha(&self) -> f64 {
        self.exponents.alpha
    }

    pub fn beta(&self) -> f64 {
        self.exponents.beta
    }

    pub fn lambda(&self) -> f64 {
        self.exponents.lambda()
    }

    pub fn exponents(&self) -> Exponents {
        self.exponents
    }

    /// Same exponents in another dimension.
    pub fn with_dimension(&self, n: f64) -> Result<SystemParams> {
        self.exponents.with_dimension(n)
    }

    pub fn derive(&self) -> DerivedParams {
        derive(self)
    }
}

/// Closed-form constants attached to a parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub lambda: f64,
    pub mu: f64,
    /// Exponent of the radius in front of the ball energy in `M(r)`.
    pub delta: f64,
    /// Γ = λ(N-2-λ)(μ+2)(N-4-μ).
    pub gamma_coef: f64,
    /// Υ = λ(N-2-λ) + (μ+2)(N-4-μ).
    pub upsilon: f64,
    /// Constant of the derivative lower bound of `M(r)`.
    pub c_const: f64,
    pub sobolev_threshold: f64,
    pub bracket_hi: f64,
}

pub fn derive(params: &SystemParams) -> DerivedParams {
    let n = params.n();
    let p = params.p();
    let alpha = params.alpha();
    let beta = params.beta();
    let lambda = params.lambda();
    let mu = params.exponents().mu();
    let delta = (8.0 + 2.0 * alpha + 2.0 * beta) / (p - 1.0) + 4.0 + beta - n;
    let radial = lambda * (n - 2.0 - lambda);
    let companion = (mu + 2.0) * (n - 4.0 - mu);
    DerivedParams {
        lambda,
        mu,
        delta,
        gamma_coef: radial * companion,
        upsilon: radial + companion,
        c_const: (n - 2.0) * (2.0 + beta) + 2.0 * lambda * (n - 4.0 - beta - lambda)
            - beta * beta / 8.0,
        sobolev_threshold: params.exponents().sobolev_threshold(),
        bracket_hi: params.exponents().bracket_hi(),
    }
}

/// Position of `N` relative to the critical hyperbola and critical dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeTag {
    BelowHyperbola,
    OnHyperbola,
    Window,
    AtOrAboveCritDim,
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegimeTag::BelowHyperbola => "BelowHyperbola",
            RegimeTag::OnHyperbola => "OnHyperbola",
            RegimeTag::Window => "Window",
            RegimeTag::AtOrAboveCritDim => "AtOrAboveCritDim",
        };
        f.write_str(s)
    }
}

/// Classify `N` against `4+β+2λ` and the critical dimension of the same exponents.
pub fn classify_regime(params: &SystemParams, crit_dim: f64) -> Result<RegimeTag> {
    let threshold = params.exponents().sobolev_threshold();
    if !(crit_dim > threshold) {
        return Err(LabError::InconsistentCritDim {
            crit_dim,
            threshold,
        });
    }
    let n = params.n();
    let tag = if (n - threshold).abs() <= HYPERBOLA_TOL {
        RegimeTag::OnHyperbola
    } else if n < threshold {
        RegimeTag::BelowHyperbola
    } else if n < crit_dim {
        RegimeTag::Window
    } else {
        RegimeTag::AtOrAboveCritDim
    };
    Ok(tag)
}
