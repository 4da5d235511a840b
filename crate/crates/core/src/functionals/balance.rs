//! Pohozaev and energy identities of a solution on `B_R`.
//!
//! Both are checked on the annulus `r_min ≤ |x| ≤ R`, where they hold exactly
//! for any solution once the inner-sphere flux is subtracted. That flux tends
//! to zero with `r_min` for admissible solutions and is reported as the
//! truncation.

use crate::error::Result;
use crate::fields::{AngularBasis, Field};

use super::energy::{BallIntegrals, position};
use super::report::ResidualReport;
use super::surface::{self, Sphere};

fn sphere_at(field: &Field, r: f64) -> Result<Sphere> {
    let basis = AngularBasis::new(field.params().n(), field.max_degree());
    Ok(surface::sphere(field, &basis, &field.jets_at(r)?, r))
}

/// Boundary terms of the Pohozaev identity on the sphere of radius `r`.
fn pohozaev_flux(field: &Field, s: &Sphere, r: f64) -> f64 {
    let q = field.params();
    let (n, p, alpha, beta) = (q.n(), q.p(), q.alpha(), q.beta());
    let rb = r.powf(-beta);
    r.powf(n - 1.0)
        * (0.5 * r * rb * s.lap2 - r.powf(alpha + 1.0) / (p + 1.0) * s.pot - rb * s.lap_dxu
            + rb * r * s.flux_ur)
}

/// Boundary terms of the energy identity on the sphere of radius `r`.
fn energy_flux(field: &Field, s: &Sphere, r: f64) -> f64 {
    let q = field.params();
    r.powf(q.n() - 1.0) * r.powf(-q.beta()) * (s.lap_ur - s.flux_u)
}

/// `((N-4-β)/2)∫|Δu|²/|x|^β - ((N+α)/(p+1))∫|x|^α|u|^{p+1}` against its boundary terms.
pub fn pohozaev_residual(field: &Field, r_outer: f64) -> Result<ResidualReport> {
    let q = field.params();
    let (n, p, alpha, beta) = (q.n(), q.p(), q.alpha(), q.beta());
    let x = position(field, r_outer)?;
    let ball = BallIntegrals::new(field, &surface::all_nodes(field));
    let (k, pot) = ball.annulus_at(x);
    let lhs = 0.5 * (n - 4.0 - beta) * k - (n + alpha) / (p + 1.0) * pot;
    let r0 = field.grid().r_min();
    let inner = pohozaev_flux(field, &sphere_at(field, r0)?, r0);
    let outer = pohozaev_flux(field, &sphere_at(field, r_outer)?, r_outer);
    Ok(ResidualReport::new(lhs, outer - inner).with_truncation(inner.abs()))
}

/// `∫|Δu|²/|x|^β - ∫|x|^α|u|^{p+1}` against `∫_{∂B_R} (Δu/|x|^β) ∂_ν u - ∂_ν(Δu/|x|^β) u`.
pub fn energy_identity_residual(field: &Field, r_outer: f64) -> Result<ResidualReport> {
    let x = position(field, r_outer)?;
    let ball = BallIntegrals::new(field, &surface::all_nodes(field));
    let (k, pot) = ball.annulus_at(x);
    let r0 = field.grid().r_min();
    let inner = energy_flux(field, &sphere_at(field, r0)?, r0);
    let outer = energy_flux(field, &sphere_at(field, r_outer)?, r_outer);
    Ok(ResidualReport::new(k - pot, outer - inner).with_truncation(inner.abs()))
}
