use crate::error::{LabError, Result};
use crate::fields::RadialGrid;
use crate::fields::{geometric_points, sphere_area};
use crate::functionals::ResidualReport;
use crate::params::SystemParams;
use crate::poly1::Poly1;
use crate::quad;

use super::multipoly::MultiPoly;

/// `Δζ Δ(ζη²) - { [Δ(ζη)]² - 4(∇ζ·∇η)² - ζ²|Δη|² + 2ζΔζ|∇η|² - 4ζΔη ∇ζ·∇η }`.
///
/// The identity holds pointwise, so the result is the zero polynomial.
pub fn lemma21_check(zeta: &MultiPoly, eta: &MultiPoly) -> Result<MultiPoly> {
    let lz = zeta.laplacian()?;
    let le = eta.laplacian()?;
    let gz = zeta.gradient()?;
    let ge = eta.gradient()?;
    let zz_ee = zeta.mul(&eta.mul(eta)?)?;
    let lhs = lz.mul(&zz_ee.laplacian()?)?;

    let l_ze = zeta.mul(eta)?.laplacian()?;
    let dot = MultiPoly::dot(&gz, &ge)?;
    let grad_e2 = MultiPoly::dot(&ge, &ge)?;
    let rhs = l_ze
        .mul(&l_ze)?
        .sub(&dot.mul(&dot)?.scale(4)?)?
        .sub(&zeta.mul(zeta)?.mul(&le.mul(&le)?)?)?
        .add(&zeta.mul(&lz)?.mul(&grad_e2)?.scale(2)?)?
        .sub(&zeta.mul(&le)?.mul(&dot)?.scale(4)?)?;
    lhs.sub(&rhs)
}

/// `η(x) = (1 - |x|²)^m` on the unit ball, zero outside.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompactRadialBump {
    pub exponent: u32,
}

impl CompactRadialBump {
    /// Smallest exponent whose bump is `C⁴` across the unit sphere.
    pub const MIN_EXPONENT: u32 = 5;

    pub fn new(exponent: u32) -> Result<Self> {
        if exponent < Self::MIN_EXPONENT {
            return Err(LabError::InvalidArgument(format!(
                "(1-r²)^{exponent} is not C⁴ at the unit sphere; need exponent ≥ {}",
                Self::MIN_EXPONENT
            )));
        }
        Ok(Self { exponent })
    }

    fn profile(&self) -> Poly1 {
        Poly1::new(vec![1.0, 0.0, -1.0]).powi(self.exponent)
    }
}

impl Default for CompactRadialBump {
    fn default() -> Self {
        Self { exponent: 6 }
    }
}

/// Residuals of the two integral identities of the radial check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma22Report {
    pub eq21: ResidualReport,
    pub eq22: ResidualReport,
}

/// Inner truncation radius for the radial integrals.
pub const LEMMA22_R_MIN: f64 = 1e-6;

/// Default radial point count.
pub const LEMMA22_POINTS: usize = 1 << 15;

/// Radial values `g, g', g'', g'''` of a polynomial profile.
fn jet(p: &[Poly1; 4], r: f64) -> [f64; 4] {
    std::array::from_fn(|j| p[j].eval(r))
}

/// Both integral identities with radial `ζ` and `η`, integrated over `r_min ≤ |x| ≤ 1`.
pub fn lemma22_check(
    zeta: &Poly1,
    eta: &CompactRadialBump,
    params: &SystemParams,
) -> Result<Lemma22Report> {
    lemma22_check_with(zeta, eta, params, LEMMA22_POINTS)
}

/// [`lemma22_check`] on a log grid with `points` radii.
pub fn lemma22_check_with(
    zeta: &Poly1,
    eta: &CompactRadialBump,
    params: &SystemParams,
    points: usize,
) -> Result<Lemma22Report> {
    if zeta.coeffs().iter().skip(1).step_by(2).any(|&c| c != 0.0) {
        return Err(LabError::InvalidArgument(
            "a radial polynomial ζ must be even in r to be smooth at the origin".into(),
        ));
    }
    let (n, beta) = (params.n(), params.beta());
    let grid = RadialGrid::from_radii(geometric_points(LEMMA22_R_MIN, 1.0, points)?)?;
    let zp: [Poly1; 4] = std::array::from_fn(|j| zeta.nth_derivative(j));
    let ep = eta.profile();
    let ep: [Poly1; 5] = std::array::from_fn(|j| ep.nth_derivative(j));
    let m = n - 1.0;
    let lap = |g: [f64; 4], r: f64| -> [f64; 2] {
        // (Δg, (Δg)')
        [g[2] + m * g[1] / r, g[3] + m * (g[2] / r - g[1] / (r * r))]
    };

    let mut cols: [Vec<f64>; 7] = Default::default();
    for &r in grid.radii() {
        let z = jet(&zp, r);
        let e: [f64; 5] = std::array::from_fn(|j| ep[j].eval(r));
        let w = r.powf(-beta);
        let [lz, dlz] = lap(z, r);
        let [le, dle] = lap([e[0], e[1], e[2], e[3]], r);
        // Δ(Δζ) needs (Δζ)''
        let d2lz = zp[3].derivative().eval(r)
            + m * (z[3] / r - 2.0 * z[2] / (r * r) + 2.0 * z[1] / (r * r * r));
        let lap_lz = d2lz + m * dlz / r;
        let lap_w_lz = w * (lap_lz - 2.0 * beta * dlz / r + beta * (beta + 2.0 - n) * lz / (r * r));
        let ze1 = z[1] * e[0] + z[0] * e[1];
        let ze2 = z[2] * e[0] + 2.0 * z[1] * e[1] + z[0] * e[2];
        let l_ze = ze2 + m * ze1 / r;
        let h = e[1] * e[1];
        let h1 = 2.0 * e[1] * e[2];
        let h2 = 2.0 * e[2] * e[2] + 2.0 * e[1] * e[3];
        let lap_h = h2 + m * h1 / r;
        let vol = r.powf(m);
        let zz = z[0] * z[0];

        cols[0].push(vol * lap_w_lz * z[0] * e[0] * e[0]);
        cols[1].push(vol * w * l_ze * l_ze);
        cols[2].push(vol * w * (-4.0 * (z[1] * e[1]).powi(2) + 2.0 * z[0] * lz * h));
        cols[3].push(vol * w * zz * (2.0 * dle * e[1] + le * le - 2.0 * beta * le * e[1] / r));
        cols[4].push(vol * 2.0 * w * z[1] * z[1] * h);
        cols[5].push(vol * w * (2.0 * z[0] * (-lz) * h + zz * lap_h));
        cols[6].push(vol * w / (r * r) * zz * (beta * (beta + 2.0 - n) * h - 2.0 * beta * r * h1));
    }
    let area = sphere_area(n);
    let ints: Vec<f64> = cols
        .iter()
        .map(|c| area * quad::cumulative(&grid, c).last().copied().unwrap_or(0.0))
        .collect();
    let trunc: f64 = area * LEMMA22_R_MIN * cols.iter().map(|c| c[0].abs()).sum::<f64>();

    // both sides can vanish identically (ζ = 1), so the scale is built from
    // the integrals of the absolute integrands
    let abs_ints: Vec<f64> = cols
        .iter()
        .map(|c| {
            let a: Vec<f64> = c.iter().map(|x| x.abs()).collect();
            area * quad::cumulative(&grid, &a).last().copied().unwrap_or(0.0)
        })
        .collect();
    let abs_sum = |idx: &[usize]| idx.iter().map(|&i| abs_ints[i]).sum::<f64>();
    let eq21 =
        ResidualReport::with_scale(ints[0], ints[1] + ints[2] + ints[3], abs_sum(&[0, 1, 2, 3]))
            .with_truncation(trunc);
    let eq22 = ResidualReport::with_scale(ints[4], ints[5] + ints[6], abs_sum(&[4, 5, 6]))
        .with_truncation(trunc);
    Ok(Lemma22Report { eq21, eq22 })
}
