use crate::error::{LabError, Result};
use crate::params::SystemParams;

use super::field::{Field, ZonalMode};
use super::grid::RadialGrid;
use super::sphere::sphere_area;

/// `|u| + |v|` above which integration stops.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

/// Largest admissible inner grid radius.
pub const MAX_INNER_RADIUS: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ReachedRmax,
    BlowupDetected,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::ReachedRmax => "ReachedRmax",
            Termination::BlowupDetected => "BlowupDetected",
        })
    }
}

/// Radial solution of the system with data `u(0) = a`, `v(0) = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShootingResult {
    /// `u` as a single `k = 0` mode on the retained radii.
    pub field: Field,
    pub v_profile: Vec<f64>,
    pub v_prime: Vec<f64>,
    pub termination_radius: f64,
    pub terminated: Termination,
}

struct Rhs {
    n1: f64,
    p: f64,
    alpha: f64,
    beta: f64,
}

impl Rhs {
    fn eval(&self, r: f64, y: [f64; 4]) -> [f64; 4] {
        let [u, du, v, dv] = y;
        [
            du,
            -r.powf(self.beta) * v - self.n1 * du / r,
            dv,
            -r.powf(self.alpha) * u.abs().powf(self.p - 1.0) * u - self.n1 * dv / r,
        ]
    }

    fn rk4(&self, r: f64, h: f64, y: [f64; 4]) -> [f64; 4] {
        let add = |y: [f64; 4], k: [f64; 4], s: f64| std::array::from_fn(|i| y[i] + s * k[i]);
        let k1 = self.eval(r, y);
        let k2 = self.eval(r + 0.5 * h, add(y, k1, 0.5 * h));
        let k3 = self.eval(r + 0.5 * h, add(y, k2, 0.5 * h));
        let k4 = self.eval(r + h, add(y, k3, h));
        std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
    }
}

/// Integrate the radial system on `grid` with the default step rule.
pub fn shoot(params: &SystemParams, a: f64, b: f64, grid: &RadialGrid) -> Result<ShootingResult> {
    shoot_refined(params, a, b, grid, 1)
}

/// As [`shoot`] with every RK4 step divided by `refine`.
///
/// Steps never exceed `min(local spacing, r/64) / refine`.
pub fn shoot_refined(
    params: &SystemParams,
    a: f64,
    b: f64,
    grid: &RadialGrid,
    refine: u32,
) -> Result<ShootingResult> {
    let (n, p, alpha, beta) = (params.n(), params.p(), params.alpha(), params.beta());
    if alpha <= -2.0 {
        return Err(LabError::Parameter(format!(
            "the regular start needs alpha > -2, got {alpha}"
        )));
    }
    if grid.r_min() > MAX_INNER_RADIUS {
        return Err(LabError::Parameter(format!(
            "inner radius {} exceeds {MAX_INNER_RADIUS}",
            grid.r_min()
        )));
    }
    if !(a.is_finite() && b.is_finite()) || refine == 0 {
        return Err(LabError::InvalidArgument(
            "non-finite data or zero refinement".into(),
        ));
    }
    let rhs = Rhs {
        n1: n - 1.0,
        p,
        alpha,
        beta,
    };
    let r0 = grid.r_min() / 4.0;
    let src = a.abs().powf(p - 1.0) * a;
    let mut y = [
        a - b * r0.powf(beta + 2.0) / ((beta + 2.0) * (beta + n)),
        -b * r0.powf(beta + 1.0) / (beta + n),
        b - src * r0.powf(alpha + 2.0) / ((alpha + 2.0) * (alpha + n)),
        -src * r0.powf(alpha + 1.0) / (alpha + n),
    ];

    let mut states = Vec::with_capacity(grid.len());
    let mut r = r0;
    let mut terminated = Termination::ReachedRmax;
    let mut termination_radius = grid.r_max();
    'outer: for &target in grid.radii() {
        let span = target - r;
        let h_max = span.min(r / 64.0);
        let steps = ((span / h_max).ceil() as u64).max(1) * refine as u64;
        let h = span / steps as f64;
        for s in 0..steps {
            let rs = r + s as f64 * h;
            y = rhs.rk4(rs, h, y);
            let size = y[0].abs() + y[2].abs();
            if !(size <= BLOWUP_THRESHOLD) {
                terminated = Termination::BlowupDetected;
                termination_radius = rs + h;
                break 'outer;
            }
        }
        r = target;
        states.push(y);
    }

    let m = states.len();
    if m < 2 {
        return Err(LabError::Parameter(format!(
            "solution blew up before the second grid radius (r = {termination_radius})"
        )));
    }
    let grid = grid.truncated(m);
    let norm = sphere_area(n).sqrt();
    let mut jets: [Vec<f64>; 5] = Default::default();
    let mut v_profile = Vec::with_capacity(m);
    let mut v_prime = Vec::with_capacity(m);
    let n1 = n - 1.0;
    for (&r, &[u, u1, v, v1]) in grid.radii().iter().zip(&states) {
        let rb = r.powf(beta);
        let u2 = -rb * v - n1 * u1 / r;
        let v2 = -r.powf(alpha) * u.abs().powf(p - 1.0) * u - n1 * v1 / r;
        let u3 = -beta * rb / r * v - rb * v1 - n1 * (u2 / r - u1 / (r * r));
        let u4 = -beta * (beta - 1.0) * rb / (r * r) * v
            - 2.0 * beta * rb / r * v1
            - rb * v2
            - n1 * (u3 / r - 2.0 * u2 / (r * r) + 2.0 * u1 / (r * r * r));
        for (j, x) in [u, u1, u2, u3, u4].into_iter().enumerate() {
            jets[j].push(norm * x);
        }
        v_profile.push(v);
        v_prime.push(v1);
    }
    let mode = ZonalMode::new(n, 0, jets);
    let field = Field::new(*params, grid, vec![mode], true)?;
    Ok(ShootingResult {
        field,
        v_profile,
        v_prime,
        termination_radius,
        terminated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::log_grid;

    fn p12() -> SystemParams {
        SystemParams::new(12.0, 3.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn zero_data_gives_zero() {
        let g = log_grid(1e-3, 2.0, 64).unwrap();
        let s = shoot(&p12(), 0.0, 0.0, &g).unwrap();
        assert!(s.field.modes()[0].f().iter().all(|&x| x == 0.0));
        assert_eq!(s.terminated, Termination::ReachedRmax);
    }

    #[test]
    fn rejects_strong_singular_weight() {
        let g = log_grid(1e-3, 2.0, 64).unwrap();
        let q = SystemParams::new(12.0, 3.0, -2.0, 0.0).unwrap();
        assert!(matches!(
            shoot(&q, 1.0, 0.1, &g),
            Err(LabError::Parameter(_))
        ));
        let coarse = log_grid(0.1, 2.0, 64).unwrap();
        assert!(shoot(&p12(), 1.0, 0.1, &coarse).is_err());
    }

    #[test]
    fn detects_blowup() {
        let g = log_grid(1e-3, 20.0, 256).unwrap();
        let s = shoot(&p12(), 1.0, 0.1, &g).unwrap();
        assert_eq!(s.terminated, Termination::BlowupDetected);
        assert!(s.termination_radius > 8.0 && s.termination_radius < 10.0);
        assert!(s.field.grid().r_max() < s.termination_radius);
    }

    #[test]
    fn small_radius_matches_series() {
        let g = log_grid(1e-3, 1.0, 64).unwrap();
        let s = shoot(&p12(), 1.0, 0.1, &g).unwrap();
        let u0 = s.field.modes()[0].f()[0] / sphere_area(12.0).sqrt();
        assert!((u0 - 1.0).abs() < 1e-7);
        assert!((s.v_profile[0] - 0.1).abs() < 1e-6);
    }
}
