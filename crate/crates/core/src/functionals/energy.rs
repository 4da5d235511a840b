use crate::error::{LabError, Result};
use crate::fields::Field;
use crate::quad;

use super::surface::{self, Sphere};

/// Running ball integrals `∫ |x|^{-β}|Δu|²` and `∫ |x|^α |u|^{p+1}` from the
/// inner grid radius out to each node.
#[derive(Debug, Clone)]
pub(crate) struct BallIntegrals {
    pub kinetic: Vec<f64>,
    pub potential: Vec<f64>,
    /// Exact contributions of `B_{r_min}` when the field's behaviour there is known.
    pub core: Option<(f64, f64)>,
    /// Estimated size of the excluded inner ball when `core` is unknown.
    pub truncation: f64,
}

impl BallIntegrals {
    pub fn new(field: &Field, spheres: &[Sphere]) -> Self {
        let params = field.params();
        let (n, alpha, beta, p) = (params.n(), params.alpha(), params.beta(), params.p());
        let radii = field.grid().radii();
        let dk: Vec<f64> = radii
            .iter()
            .zip(spheres)
            .map(|(r, s)| r.powf(n - 1.0 - beta) * s.lap2)
            .collect();
        let dp: Vec<f64> = radii
            .iter()
            .zip(spheres)
            .map(|(r, s)| r.powf(n - 1.0 + alpha) * s.pot)
            .collect();
        let r0 = radii[0];
        let (core, truncation) = if field.vanishes_near_origin() {
            (Some((0.0, 0.0)), 0.0)
        } else if let Some(e) = field.homogeneity() {
            let sk = n - 4.0 - beta + 2.0 * e;
            let sp = n + alpha + (p + 1.0) * e;
            let all_zero = dk[0] == 0.0 && dp[0] == 0.0;
            if all_zero {
                (Some((0.0, 0.0)), 0.0)
            } else if sk > 0.0 && sp > 0.0 {
                (Some((dk[0] * r0 / sk, dp[0] * r0 / sp)), 0.0)
            } else {
                (None, f64::INFINITY)
            }
        } else {
            // regular behaviour at the origin gives densities ~ r^{N-1-β}, r^{N-1+α}
            let est = 0.5 * (dk[0] * r0 / (n - beta)).abs()
                + (dp[0] * r0 / (n + alpha)).abs() / (p + 1.0);
            (None, est)
        };
        Self {
            kinetic: quad::cumulative(field.grid(), &dk),
            potential: quad::cumulative(field.grid(), &dp),
            core,
            truncation,
        }
    }

    /// `(K, P)` over the annulus from the inner radius to fractional node `x`.
    pub fn annulus_at(&self, x: f64) -> (f64, f64) {
        (
            quad::interpolate(&self.kinetic, x),
            quad::interpolate(&self.potential, x),
        )
    }

    /// `(K, P)` over the whole ball; unknown cores are left out.
    pub fn ball_at(&self, x: f64) -> (f64, f64) {
        let (k, p) = self.annulus_at(x);
        let (ck, cp) = self.core.unwrap_or((0.0, 0.0));
        (k + ck, p + cp)
    }
}

pub(crate) fn position(field: &Field, r: f64) -> Result<f64> {
    let g = field.grid();
    g.position(r).ok_or_else(|| LabError::Range {
        r,
        r_min: g.r_min(),
        r_max: g.r_max(),
        reason: "outside the grid".into(),
    })
}

/// `ℰ(u)` over `B_R`: `∫ ½|Δu|²/|x|^β - |x|^α|u|^{p+1}/(p+1)`.
///
/// The inner ball `B_{r_min}` is added exactly for homogeneous fields and
/// fields vanishing there; otherwise it is omitted (see [`energy_truncation`]).
pub fn ball_energy(field: &Field, r_outer: f64) -> Result<f64> {
    let p = field.params().p();
    if r_outer < field.grid().r_min() && r_outer > 0.0 && field.vanishes_near_origin() {
        return Ok(0.0);
    }
    let x = position(field, r_outer)?;
    let ball = BallIntegrals::new(field, &surface::all_nodes(field));
    if ball.core.is_none() && ball.truncation.is_infinite() {
        return Err(LabError::Range {
            r: field.grid().r_min(),
            r_min: field.grid().r_min(),
            r_max: field.grid().r_max(),
            reason: "energy density is not integrable at the origin".into(),
        });
    }
    let (k, pot) = ball.ball_at(x);
    Ok(0.5 * k - pot / (p + 1.0))
}

/// Estimated energy carried by `B_{r_min}` when it is not added exactly.
pub fn energy_truncation(field: &Field) -> f64 {
    BallIntegrals::new(field, &surface::all_nodes(field)).truncation
}

/// Energy over the annulus `r_in ≤ |x| ≤ r_out`.
pub fn annulus_energy(field: &Field, r_in: f64, r_out: f64) -> Result<f64> {
    let p = field.params().p();
    let (xi, xo) = (position(field, r_in)?, position(field, r_out)?);
    let ball = BallIntegrals::new(field, &surface::all_nodes(field));
    let (ki, pi) = ball.annulus_at(xi);
    let (ko, po) = ball.annulus_at(xo);
    Ok(0.5 * (ko - ki) - (po - pi) / (p + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SystemParams;
    use crate::fields::{BumpMode, bump_field, log_grid, singular_field, sphere_area};

    fn p12() -> SystemParams {
        SystemParams::new(12.0, 3.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn singular_annulus_closed_form() {
        let g = log_grid(0.5, 4.0, 1537).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        let e = annulus_energy(&u, 1.0, 2.0).unwrap();
        let exact = sphere_area(12.0) * (49152.0 - 36864.0) * 15.0 / 4.0;
        assert!((e - exact).abs() < 1e-8 * exact, "{e} vs {exact}");
    }

    #[test]
    fn singular_ball_includes_core() {
        let g = log_grid(0.5, 2.0, 1025).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        // density ∝ r³, so E(B_2) = 16 E(B_1)
        let e1 = ball_energy(&u, 1.0).unwrap();
        let e2 = ball_energy(&u, 2.0).unwrap();
        assert!((e2 - 16.0 * e1).abs() < 1e-9 * e2.abs());
    }

    #[test]
    fn bump_outside_support() {
        let g = log_grid(0.2, 3.0, 257).unwrap();
        let spec = [BumpMode {
            degree: 0,
            amplitude: 1.0,
            center: 1.0,
            width: 0.5,
        }];
        let u = bump_field(&p12(), &g, &spec).unwrap();
        assert_eq!(ball_energy(&u, 0.25).unwrap(), 0.0);
        assert_eq!(ball_energy(&u, 0.1).unwrap(), 0.0);
        assert!(ball_energy(&u, 4.0).is_err());
        let zero = [BumpMode {
            degree: 0,
            amplitude: 0.0,
            center: 1.0,
            width: 0.5,
        }];
        assert_eq!(
            ball_energy(&bump_field(&p12(), &g, &zero).unwrap(), 2.0).unwrap(),
            0.0
        );
    }
}
