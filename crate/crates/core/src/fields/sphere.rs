//! Zonal harmonics on `𝕊^{N-1}` for real `N`, and the polar-angle quadrature.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use statrs::function::gamma::gamma;

/// Gauss–Legendre nodes used for every polar-angle integral.
pub const ANGULAR_NODES: usize = 256;

/// `|𝕊^{n-1}| = 2π^{n/2} / Γ(n/2)`, the area of the unit sphere in `ℝ^n`.
pub fn sphere_area(n: f64) -> f64 {
    2.0 * PI.powf(0.5 * n) / gamma(0.5 * n)
}

/// Zonal eigenvalue `ν_k = k(k+N-2)`.
pub fn eigenvalue(n: f64, k: u32) -> f64 {
    let k = k as f64;
    k * (k + n - 2.0)
}

/// `C_k^{(a)}(x)` by the three-term recurrence.
pub fn gegenbauer(k: u32, a: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * a * x);
    if k == 0 {
        return prev;
    }
    for m in 2..=k {
        let m = m as f64;
        let next = (2.0 * x * (m + a - 1.0) * cur - (m + 2.0 * a - 2.0) * prev) / m;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(C, C', C'')` of `C_k^{(a)}` at `x`, using `d/dx C_k^{(a)} = 2a C_{k-1}^{(a+1)}`.
pub fn gegenbauer_jet(k: u32, a: f64, x: f64) -> (f64, f64, f64) {
    let c = gegenbauer(k, a, x);
    let d1 = if k >= 1 {
        2.0 * a * gegenbauer(k - 1, a + 1.0, x)
    } else {
        0.0
    };
    let d2 = if k >= 2 {
        4.0 * a * (a + 1.0) * gegenbauer(k - 2, a + 2.0, x)
    } else {
        0.0
    };
    (c, d1, d2)
}

/// `(1-x²)C'' - (N-1)xC' + ν_k C` for the unnormalized zonal polynomial.
///
/// Zero up to rounding, since `C_k^{((N-2)/2)}(cos φ)` is a Laplace–Beltrami
/// eigenfunction on `𝕊^{N-1}`.
pub fn laplace_beltrami_defect(n: f64, k: u32, x: f64) -> (f64, f64) {
    let (c, d1, d2) = gegenbauer_jet(k, 0.5 * (n - 2.0), x);
    let lhs = (1.0 - x * x) * d2 - (n - 1.0) * x * d1;
    let rhs = -eigenvalue(n, k) * c;
    (lhs - rhs, lhs.abs().max(rhs.abs()))
}

/// L²-normalized zonal harmonics sampled at the polar quadrature nodes.
#[derive(Debug, Clone)]
pub struct AngularBasis {
    n: f64,
    /// `cos φ_j`
    x: Vec<f64>,
    sin: Vec<f64>,
    /// Quadrature weights for `∫_{𝕊^{N-1}} g dσ`.
    weights: Vec<f64>,
    /// `psi[k][j] = Ψ_k(φ_j)`
    psi: Vec<Vec<f64>>,
    /// `dpsi[k][j] = dΨ_k/dφ (φ_j)`
    dpsi: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl AngularBasis {
    pub fn new(n: f64, max_degree: u32) -> Self {
        let rule = GaussLegendre::new(NonZeroUsize::new(ANGULAR_NODES).unwrap());
        let area_factor = sphere_area(n - 1.0);
        let mut x = Vec::with_capacity(ANGULAR_NODES);
        let mut sin = Vec::with_capacity(ANGULAR_NODES);
        let mut weights = Vec::with_capacity(ANGULAR_NODES);
        for &(node, w) in rule.as_node_weight_pairs() {
            let phi = 0.5 * PI * (node + 1.0);
            let s = phi.sin();
            x.push(phi.cos());
            sin.push(s);
            weights.push(0.5 * PI * w * area_factor * s.powf(n - 2.0));
        }
        let a = 0.5 * (n - 2.0);
        let mut psi = Vec::new();
        let mut dpsi = Vec::new();
        let mut norms = Vec::new();
        for k in 0..=max_degree {
            let raw: Vec<(f64, f64)> = x
                .iter()
                .map(|&xj| {
                    let (c, d1, _) = gegenbauer_jet(k, a, xj);
                    (c, d1)
                })
                .collect();
            let mass: f64 = raw.iter().zip(&weights).map(|((c, _), w)| w * c * c).sum();
            let norm = mass.sqrt().recip();
            psi.push(raw.iter().map(|(c, _)| norm * c).collect());
            dpsi.push(
                raw.iter()
                    .zip(&sin)
                    .map(|((_, d1), s)| -norm * s * d1)
                    .collect(),
            );
            norms.push(norm);
        }
        Self {
            n,
            x,
            sin,
            weights,
            psi,
            dpsi,
            norms,
        }
    }

    pub fn dimension(&self) -> f64 {
        self.n
    }

    pub fn max_degree(&self) -> u32 {
        (self.psi.len() - 1) as u32
    }

    pub fn cos_nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn sin_nodes(&self) -> &[f64] {
        &self.sin
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn psi(&self, k: u32) -> &[f64] {
        &self.psi[k as usize]
    }

    pub fn dpsi(&self, k: u32) -> &[f64] {
        &self.dpsi[k as usize]
    }

    /// Factor turning `C_k^{((N-2)/2)}` into `Ψ_k`.
    pub fn normalization(&self, k: u32) -> f64 {
        self.norms[k as usize]
    }

    /// `∫_{𝕊^{N-1}} g dσ` for samples `g_j` at the nodes.
    pub fn integrate(&self, g: &[f64]) -> f64 {
        g.iter().zip(&self.weights).map(|(g, w)| g * w).sum()
    }

    /// `∫ g(Ψ_k) dσ` for a pointwise map `g`.
    pub fn integrate_with(&self, k: u32, g: impl Fn(f64) -> f64) -> f64 {
        self.psi[k as usize]
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * g(*p))
            .sum()
    }
}

/// `∫_{𝕊^{N-1}} |Ψ_k|^q dσ`.
pub fn sphere_moment(n: f64, k: u32, q: f64) -> f64 {
    AngularBasis::new(n, k).integrate_with(k, |p| p.abs().powf(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(2.0) - 2.0 * PI).abs() < 1e-13);
        assert!((sphere_area(3.0) - 4.0 * PI).abs() < 1e-13);
        let s12 = 2.0 * PI.powi(6) / 120.0;
        assert!((sphere_area(12.0) - s12).abs() < 1e-12 * s12);
    }

    #[test]
    fn moments() {
        assert!((sphere_moment(12.0, 0, 2.0) - 1.0).abs() < 1e-12);
        let s12 = 2.0 * PI.powi(6) / 120.0;
        assert!((sphere_moment(12.0, 0, 4.0) - 1.0 / s12).abs() < 1e-12 / s12);
        for n in [5.0, 7.5, 12.0, 19.0] {
            assert!((sphere_moment(n, 1, 2.0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn legendre_special_case() {
        // a = 1/2 gives Legendre polynomials
        assert!((gegenbauer(2, 0.5, 0.3) - 0.5 * (3.0 * 0.09 - 1.0)).abs() < 1e-15);
        assert!((gegenbauer(3, 0.5, 0.3) - 0.5 * (5.0 * 0.027 - 0.9)).abs() < 1e-15);
    }

    #[test]
    fn eigenvalues_increase() {
        assert_eq!(eigenvalue(12.0, 0), 0.0);
        assert_eq!(eigenvalue(12.0, 1), 11.0);
        for k in 0..20 {
            assert!(eigenvalue(9.3, k + 1) > eigenvalue(9.3, k));
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let a = 3.7;
        let h = 1e-5;
        for k in 1..6 {
            let (_, d1, d2) = gegenbauer_jet(k, a, 0.2);
            let fd1 = (gegenbauer(k, a, 0.2 + h) - gegenbauer(k, a, 0.2 - h)) / (2.0 * h);
            let fd2 = (gegenbauer(k, a, 0.2 + h) - 2.0 * gegenbauer(k, a, 0.2)
                + gegenbauer(k, a, 0.2 - h))
                / (h * h);
            assert!((d1 - fd1).abs() < 1e-6 * (1.0 + d1.abs()));
            assert!((d2 - fd2).abs() < 1e-3 * (1.0 + d2.abs()));
        }
    }
}
