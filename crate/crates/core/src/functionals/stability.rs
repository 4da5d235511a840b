use crate::critdim::threshold_functions;
use crate::error::{LabError, Result};
use crate::fields::{AngularBasis, Field, companion_v};
use crate::params::SystemParams;
use crate::quad;

use super::report::ResidualReport;
use super::surface;

fn check_support(zeta: &Field) -> Result<()> {
    let g = zeta.grid();
    match zeta.support() {
        Some((lo, hi)) if lo > g.r_min() && hi < g.r_max() => Ok(()),
        Some((lo, hi)) if lo >= hi => Ok(()),
        Some((lo, hi)) => Err(LabError::Support(format!(
            "support [{lo}, {hi}] is not inside ({}, {})",
            g.r_min(),
            g.r_max()
        ))),
        None => Err(LabError::Support(
            "test function has no declared compact support".into(),
        )),
    }
}

fn check_compatible(a: &Field, b: &Field) -> Result<()> {
    if a.params() != b.params() {
        return Err(LabError::FieldMismatch(
            "different system parameters".into(),
        ));
    }
    if a.grid() != b.grid() {
        return Err(LabError::FieldMismatch("different radial grids".into()));
    }
    Ok(())
}

/// `∫_{ℝ^N} |x|^{-β}|Δζ|²` over the grid.
fn weighted_bilaplacian_energy(zeta: &Field) -> f64 {
    let beta = zeta.params().beta();
    let n = zeta.params().n();
    let dens: Vec<f64> = surface::all_nodes(zeta)
        .iter()
        .zip(zeta.grid().radii())
        .map(|(s, r)| r.powf(n - 1.0 - beta) * s.lap2)
        .collect();
    *quad::cumulative(zeta.grid(), &dens).last().unwrap()
}

/// Stability form on one test function: `lhs = p∫|x|^α|u|^{p-1}ζ²`,
/// `rhs = ∫|Δζ|²/|x|^β`. A negative `rhs - lhs` witnesses instability.
pub fn stability_rayleigh(u: &Field, zeta: &Field) -> Result<ResidualReport> {
    check_compatible(u, zeta)?;
    check_support(zeta)?;
    let q = u.params();
    let (n, p, alpha) = (q.n(), q.p(), q.alpha());
    let basis = AngularBasis::new(n, u.max_degree().max(zeta.max_degree()));
    let dens: Vec<f64> = u
        .grid()
        .radii()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let su = surface::samples(&basis, &u.jets(i), n, r);
            let sz = surface::samples(&basis, &zeta.jets(i), n, r);
            let ang: f64 = basis
                .weights()
                .iter()
                .enumerate()
                .map(|(j, w)| w * su.u[j].abs().powf(p - 1.0) * sz.u[j] * sz.u[j])
                .sum();
            r.powf(n - 1.0 + alpha) * ang
        })
        .collect();
    let lhs = p * quad::cumulative(u.grid(), &dens).last().unwrap();
    Ok(ResidualReport::new(lhs, weighted_bilaplacian_energy(zeta)))
}

/// Weighted Hardy–Rellich: `lhs = 𝔉(N)∫ζ²/|x|^{4+β}`, `rhs = ∫|Δζ|²/|x|^β`.
pub fn hardy_rellich_ratio(zeta: &Field) -> Result<ResidualReport> {
    check_support(zeta)?;
    let q = zeta.params();
    let (n, beta) = (q.n(), q.beta());
    let constant = threshold_functions(n, &q.exponents()).big_f;
    let dens: Vec<f64> = surface::all_nodes(zeta)
        .iter()
        .zip(zeta.grid().radii())
        .map(|(s, r)| r.powf(n - 5.0 - beta) * s.uu)
        .collect();
    let lhs = constant * quad::cumulative(zeta.grid(), &dens).last().unwrap();
    Ok(ResidualReport::new(lhs, weighted_bilaplacian_energy(zeta)))
}

/// `Q(ν) = (p-1)ν² + (pΥ - 𝔊(N))ν + (pΓ - 𝔉(N))`.
pub fn mode_quadratic(params: &SystemParams, nu: f64) -> f64 {
    let d = params.derive();
    let p = params.p();
    let t = threshold_functions(params.n(), &params.exponents());
    (p - 1.0) * nu * nu + (p * d.upsilon - t.big_g) * nu + (p * d.gamma_coef - t.big_f)
}

/// Largest pointwise relative defects of `-Δu = |x|^β v` and `-Δv = |x|^α|u|^{p-1}u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeResidual {
    pub first_equation: f64,
    pub second_equation: f64,
}

impl PdeResidual {
    pub fn max(&self) -> f64 {
        self.first_equation.max(self.second_equation)
    }
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Pointwise residual of the system for the pair `(u, v)` at every node and polar node.
pub fn system_residual(u: &Field, v: &Field) -> Result<PdeResidual> {
    check_compatible(u, v)?;
    let q = u.params();
    let (n, p, alpha, beta) = (q.n(), q.p(), q.alpha(), q.beta());
    let basis = AngularBasis::new(n, u.max_degree().max(v.max_degree()));
    let mut out = PdeResidual {
        first_equation: 0.0,
        second_equation: 0.0,
    };
    for (i, &r) in u.grid().radii().iter().enumerate() {
        let su = surface::samples(&basis, &u.jets(i), n, r);
        let sv = surface::samples(&basis, &v.jets(i), n, r);
        for j in 0..basis.weights().len() {
            let e1 = relative(-su.lap[j], r.powf(beta) * sv.u[j]);
            let e2 = relative(
                -sv.lap[j],
                r.powf(alpha) * su.u[j].abs().powf(p - 1.0) * su.u[j],
            );
            out.first_equation = out.first_equation.max(e1);
            out.second_equation = out.second_equation.max(e2);
        }
    }
    Ok(out)
}

/// [`system_residual`] with `v` taken as the companion `-|x|^{-β}Δu`.
pub fn pde_residual(u: &Field) -> Result<PdeResidual> {
    system_residual(u, &companion_v(u)?)
}
