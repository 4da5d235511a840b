use crate::error::{LabError, Result};
use crate::params::SystemParams;
use crate::poly1::Poly1;
use crate::quad;

use super::grid::RadialGrid;
use super::sphere::{AngularBasis, eigenvalue, gegenbauer, sphere_area};

/// Highest stored radial derivative.
pub const JET_ORDER: usize = 4;

/// One zonal component `f_k(r) Ψ_k(φ)` with radial derivatives up to order four.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalMode {
    degree: u32,
    nu: f64,
    /// `jets[j][i] = f_k^{(j)}(r_i)`
    jets: [Vec<f64>; JET_ORDER + 1],
}

impl ZonalMode {
    pub fn new(n: f64, degree: u32, jets: [Vec<f64>; JET_ORDER + 1]) -> Self {
        Self {
            degree,
            nu: eigenvalue(n, degree),
            jets,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `ν_k = k(k+N-2)`
    pub fn eigenvalue(&self) -> f64 {
        self.nu
    }

    pub fn f(&self) -> &[f64] {
        &self.jets[0]
    }

    pub fn f_prime(&self) -> &[f64] {
        &self.jets[1]
    }

    pub fn f_second(&self) -> &[f64] {
        &self.jets[2]
    }

    pub fn f_third(&self) -> &[f64] {
        &self.jets[3]
    }

    pub fn f_fourth(&self) -> &[f64] {
        &self.jets[4]
    }

    pub fn derivative(&self, order: usize) -> &[f64] {
        &self.jets[order]
    }

    /// Radial data of this mode at node `i`.
    pub fn jet(&self, i: usize) -> ModeJet {
        ModeJet {
            degree: self.degree,
            nu: self.nu,
            d: std::array::from_fn(|j| self.jets[j][i]),
        }
    }

    /// Radial data at fractional node coordinate `x`, interpolated in `ln r`.
    pub fn jet_at(&self, x: f64) -> ModeJet {
        ModeJet {
            degree: self.degree,
            nu: self.nu,
            d: std::array::from_fn(|j| quad::interpolate(&self.jets[j], x)),
        }
    }
}

/// Profile derivatives `f, f', …, f''''` of one mode at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeJet {
    pub degree: u32,
    pub nu: f64,
    pub d: [f64; JET_ORDER + 1],
}

impl ModeJet {
    /// `[L, L', L'']` for `L = f'' + (N-1)f'/r - ν f/r²`, the radial factor of `Δ(f Ψ_k)`.
    pub fn laplacian(&self, n: f64, r: f64) -> [f64; 3] {
        let [f, f1, f2, f3, f4] = self.d;
        let m = n - 1.0;
        let nu = self.nu;
        let (r2, r3, r4) = (r * r, r * r * r, r * r * r * r);
        [
            f2 + m * f1 / r - nu * f / r2,
            f3 + m * f2 / r - m * f1 / r2 - nu * f1 / r2 + 2.0 * nu * f / r3,
            f4 + m * (f3 / r - 2.0 * f2 / r2 + 2.0 * f1 / r3)
                - nu * (f2 / r2 - 4.0 * f1 / r3 + 6.0 * f / r4),
        ]
    }
}

/// A zonal mode sum `u(r, φ) = Σ_k f_k(r) Ψ_k(φ)` on a log-radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    params: SystemParams,
    grid: RadialGrid,
    modes: Vec<ZonalMode>,
    derivatives_analytic: bool,
    homogeneity: Option<f64>,
    support: Option<(f64, f64)>,
}

impl Field {
    /// Assemble a field from modes, checking array lengths and distinct degrees.
    pub fn new(
        params: SystemParams,
        grid: RadialGrid,
        modes: Vec<ZonalMode>,
        derivatives_analytic: bool,
    ) -> Result<Self> {
        let n = grid.len();
        for m in &modes {
            if m.jets.iter().any(|a| a.len() != n) {
                return Err(LabError::FieldMismatch(format!(
                    "mode {} arrays do not match the grid length {n}",
                    m.degree
                )));
            }
        }
        let mut degrees: Vec<u32> = modes.iter().map(|m| m.degree).collect();
        degrees.sort_unstable();
        if degrees.windows(2).any(|w| w[0] == w[1]) {
            return Err(LabError::FieldMismatch("repeated mode degree".into()));
        }
        Ok(Self {
            params,
            grid,
            modes,
            derivatives_analytic,
            homogeneity: None,
            support: None,
        })
    }

    /// Profiles only; derivatives come from fourth-order differences.
    pub fn from_profiles(
        params: SystemParams,
        grid: RadialGrid,
        profiles: Vec<(u32, Vec<f64>)>,
    ) -> Result<Self> {
        let modes = profiles
            .into_iter()
            .map(|(k, f)| {
                if f.len() != grid.len() {
                    return Err(LabError::FieldMismatch(format!(
                        "profile of mode {k} has {} values for {} radii",
                        f.len(),
                        grid.len()
                    )));
                }
                Ok(ZonalMode::new(
                    params.n(),
                    k,
                    differentiate_from(&grid, f, 1)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Field::new(params, grid, modes, false)
    }

    /// Mark the field as vanishing outside `[lo, hi]`.
    pub fn with_support(mut self, lo: f64, hi: f64) -> Self {
        self.support = Some((lo, hi));
        self
    }

    /// Mark every mode as `∝ r^e`, which fixes the contribution of the
    /// excluded ball `B_{r_min}`.
    pub fn with_homogeneity(mut self, e: f64) -> Self {
        self.homogeneity = Some(e);
        self
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn modes(&self) -> &[ZonalMode] {
        &self.modes
    }

    pub fn derivatives_analytic(&self) -> bool {
        self.derivatives_analytic
    }

    pub fn homogeneity(&self) -> Option<f64> {
        self.homogeneity
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        self.support
    }

    pub fn max_degree(&self) -> u32 {
        self.modes.iter().map(|m| m.degree).max().unwrap_or(0)
    }

    pub fn mode(&self, k: u32) -> Option<&ZonalMode> {
        self.modes.iter().find(|m| m.degree == k)
    }

    /// True when the field is known to vanish on `B_{r_min}`.
    pub fn vanishes_near_origin(&self) -> bool {
        self.modes.is_empty() || matches!(self.support, Some((lo, _)) if lo >= self.grid.r_min())
    }

    /// `u(r, φ)` at a node, with `cos φ` given.
    pub fn value_at(&self, i: usize, cos_phi: f64) -> f64 {
        let basis = AngularBasis::new(self.params.n(), self.max_degree());
        let a = 0.5 * (self.params.n() - 2.0);
        self.modes
            .iter()
            .map(|m| m.f()[i] * basis.normalization(m.degree) * gegenbauer(m.degree, a, cos_phi))
            .sum()
    }

    /// Per-mode jets at radius `r`: exact at nodes, interpolated otherwise.
    pub fn jets_at(&self, r: f64) -> Result<Vec<ModeJet>> {
        let x = self.grid.position(r).ok_or_else(|| LabError::Range {
            r,
            r_min: self.grid.r_min(),
            r_max: self.grid.r_max(),
            reason: "outside the grid".into(),
        })?;
        Ok(self.modes.iter().map(|m| m.jet_at(x)).collect())
    }

    pub fn jets(&self, i: usize) -> Vec<ModeJet> {
        self.modes.iter().map(|m| m.jet(i)).collect()
    }
}

/// Fill derivative orders `from..=4` by repeated differencing of the previous order.
fn differentiate_from(
    grid: &RadialGrid,
    f: Vec<f64>,
    from: usize,
) -> Result<[Vec<f64>; JET_ORDER + 1]> {
    let mut jets: [Vec<f64>; JET_ORDER + 1] = Default::default();
    jets[0] = f;
    for j in from..=JET_ORDER {
        jets[j] = quad::derivative_all(grid, &jets[j - 1])?;
    }
    Ok(jets)
}

fn falling(e: f64, j: usize) -> f64 {
    (0..j).map(|i| e - i as f64).product()
}

/// Mode `c·r^e` with exact derivatives.
fn power_mode(n: f64, grid: &RadialGrid, degree: u32, c: f64, e: f64) -> ZonalMode {
    let jets = std::array::from_fn(|j| {
        let fj = c * falling(e, j);
        grid.radii()
            .iter()
            .map(|r| fj * r.powf(e - j as f64))
            .collect()
    });
    ZonalMode::new(n, degree, jets)
}

/// A single homogeneous mode `c·r^e Ψ_k`.
pub fn power_field(params: &SystemParams, grid: &RadialGrid, degree: u32, c: f64, e: f64) -> Field {
    let mode = power_mode(params.n(), grid, degree, c, e);
    Field::new(*params, grid.clone(), vec![mode], true)
        .expect("a single mode always matches its grid")
        .with_homogeneity(e)
}

/// The singular solution `u_Γ = Γ^{1/(p-1)} |x|^{-λ}`.
pub fn singular_field(params: &SystemParams, grid: &RadialGrid) -> Result<Field> {
    let d = params.derive();
    if !(d.gamma_coef > 0.0) {
        return Err(LabError::GammaNonpositive(d.gamma_coef));
    }
    let amp = d.gamma_coef.powf(1.0 / (params.p() - 1.0)) * sphere_area(params.n()).sqrt();
    Ok(power_field(params, grid, 0, amp, -d.lambda))
}

/// One mode of a polynomial bump `A (1 - ((r-c)/w)²)⁶` on `|r - c| ≤ w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpMode {
    pub degree: u32,
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

/// One mode `A r^{-(N-4-β)/2} (1 - (ln(r/c)/L)²)⁶` on `|ln(r/c)| ≤ L`.
///
/// The power prefactor matches the extremal profile of the weighted
/// Hardy–Rellich inequality, which is what makes these bumps good
/// instability witnesses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBumpMode {
    pub degree: u32,
    pub amplitude: f64,
    pub center: f64,
    pub half_width: f64,
}

fn bump_profile() -> Poly1 {
    Poly1::new(vec![1.0, 0.0, -1.0]).powi(6)
}

fn check_distinct(degrees: impl Iterator<Item = u32>) -> Result<()> {
    let mut d: Vec<u32> = degrees.collect();
    d.sort_unstable();
    if d.windows(2).any(|w| w[0] == w[1]) {
        return Err(LabError::FieldMismatch("repeated mode degree".into()));
    }
    Ok(())
}

fn merge_support(acc: Option<(f64, f64)>, lo: f64, hi: f64) -> Option<(f64, f64)> {
    Some(match acc {
        None => (lo, hi),
        Some((a, b)) => (a.min(lo), b.max(hi)),
    })
}

/// Compactly supported polynomial bumps, one per listed mode.
pub fn bump_field(params: &SystemParams, grid: &RadialGrid, spec: &[BumpMode]) -> Result<Field> {
    check_distinct(spec.iter().map(|m| m.degree))?;
    let bump = bump_profile();
    let derivs: Vec<Poly1> = (0..=JET_ORDER).map(|j| bump.nth_derivative(j)).collect();
    let mut support = None;
    let mut modes = Vec::with_capacity(spec.len());
    for m in spec {
        if !(m.width > 0.0 && m.width.is_finite() && m.center.is_finite()) {
            return Err(LabError::InvalidArgument(format!(
                "bump width must be positive, got {}",
                m.width
            )));
        }
        let jets = std::array::from_fn(|j| {
            let scale = m.amplitude / m.width.powi(j as i32);
            grid.radii()
                .iter()
                .map(|r| {
                    let s = (r - m.center) / m.width;
                    if s.abs() < 1.0 {
                        scale * derivs[j].eval(s)
                    } else {
                        0.0
                    }
                })
                .collect()
        });
        modes.push(ZonalMode::new(params.n(), m.degree, jets));
        if m.amplitude != 0.0 {
            support = merge_support(support, (m.center - m.width).max(0.0), m.center + m.width);
        }
    }
    let field = Field::new(*params, grid.clone(), modes, true)?;
    Ok(match support {
        Some((lo, hi)) => field.with_support(lo, hi),
        None => field.with_support(grid.r_max(), grid.r_max()),
    })
}

/// Signed Stirling numbers of the first kind: `r^j d^j/dr^j = Σ_i s(j,i) (r d/dr)^i`.
const STIRLING: [[f64; JET_ORDER + 1]; JET_ORDER + 1] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 1.0, 0.0, 0.0],
    [0.0, 2.0, -3.0, 1.0, 0.0],
    [0.0, -6.0, 11.0, -6.0, 1.0],
];

fn binomial(m: usize, i: usize) -> f64 {
    (0..i).fold(1.0, |acc, j| acc * (m - j) as f64 / (j + 1) as f64)
}

/// Log-scale bumps with the Hardy–Rellich power prefactor.
pub fn log_bump_field(
    params: &SystemParams,
    grid: &RadialGrid,
    spec: &[LogBumpMode],
) -> Result<Field> {
    check_distinct(spec.iter().map(|m| m.degree))?;
    let sigma = 0.5 * (params.n() - 4.0 - params.beta());
    let bump = bump_profile();
    let derivs: Vec<Poly1> = (0..=JET_ORDER).map(|j| bump.nth_derivative(j)).collect();
    let mut support = None;
    let mut modes = Vec::with_capacity(spec.len());
    for m in spec {
        if !(m.half_width > 0.0 && m.center > 0.0 && m.half_width.is_finite()) {
            return Err(LabError::InvalidArgument(format!(
                "log bump needs center > 0 and half width > 0, got ({}, {})",
                m.center, m.half_width
            )));
        }
        let l = m.half_width;
        let mut jets: [Vec<f64>; JET_ORDER + 1] = Default::default();
        for r in grid.radii() {
            let t = (r / m.center).ln();
            let s = t / l;
            if s.abs() >= 1.0 {
                for jet in jets.iter_mut() {
                    jet.push(0.0);
                }
                continue;
            }
            let base = m.amplitude * r.powf(-sigma);
            // D^q f with D = r d/dr
            let euler: Vec<f64> = (0..=JET_ORDER)
                .map(|q| {
                    base * (0..=q)
                        .map(|i| {
                            binomial(q, i) * (-sigma).powi((q - i) as i32) * derivs[i].eval(s)
                                / l.powi(i as i32)
                        })
                        .sum::<f64>()
                })
                .collect();
            for (j, jet) in jets.iter_mut().enumerate() {
                let dj: f64 = (0..=j).map(|i| STIRLING[j][i] * euler[i]).sum();
                jet.push(dj / r.powi(j as i32));
            }
        }
        modes.push(ZonalMode::new(params.n(), m.degree, jets));
        if m.amplitude != 0.0 {
            support = merge_support(support, m.center * (-l).exp(), m.center * l.exp());
        }
    }
    let field = Field::new(*params, grid.clone(), modes, true)?;
    Ok(match support {
        Some((lo, hi)) => field.with_support(lo, hi),
        None => field.with_support(grid.r_max(), grid.r_max()),
    })
}

/// `v = -|x|^{-β} Δu`, mode by mode.
///
/// Derivatives of `v` up to second order follow from the fourth-order jet of
/// `u`; higher ones are exact for homogeneous `u` and differenced otherwise.
pub fn companion_v(field: &Field) -> Result<Field> {
    let params = *field.params();
    let n = params.n();
    let beta = params.beta();
    let grid = field.grid();
    let mut modes = Vec::with_capacity(field.modes.len());
    for m in &field.modes {
        let mut v = Vec::with_capacity(grid.len());
        let mut v1 = Vec::with_capacity(grid.len());
        let mut v2 = Vec::with_capacity(grid.len());
        for (i, &r) in grid.radii().iter().enumerate() {
            let [l0, l1, l2] = m.jet(i).laplacian(n, r);
            let w = -r.powf(-beta);
            v.push(w * l0);
            v1.push(w * (l1 - beta * l0 / r));
            v2.push(w * (l2 - 2.0 * beta * l1 / r + beta * (beta + 1.0) * l0 / (r * r)));
        }
        let jets = match field.homogeneity {
            Some(e) => {
                let ev = e - 2.0 - beta;
                let r = grid.radii();
                let v3 = v
                    .iter()
                    .zip(r)
                    .map(|(v, r)| v * falling(ev, 3) / r.powi(3))
                    .collect();
                let v4 = v
                    .iter()
                    .zip(r)
                    .map(|(v, r)| v * falling(ev, 4) / r.powi(4))
                    .collect();
                [v, v1, v2, v3, v4]
            }
            None => {
                let v3 = quad::derivative_all(grid, &v2)?;
                let v4 = quad::derivative_all(grid, &v3)?;
                [v, v1, v2, v3, v4]
            }
        };
        modes.push(ZonalMode::new(n, m.degree, jets));
    }
    let analytic = field.derivatives_analytic && field.homogeneity.is_some();
    let mut out = Field::new(params, grid.clone(), modes, analytic)?;
    out.support = field.support;
    out.homogeneity = field.homogeneity.map(|e| e - 2.0 - beta);
    Ok(out)
}

/// Blow-down rescaling `u^κ(x) = κ^λ u(κx)`, sampled exactly on the grid `r_i / κ`.
pub fn rescaled(field: &Field, kappa: f64) -> Result<Field> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(LabError::InvalidArgument(format!(
            "scaling factor must be positive, got {kappa}"
        )));
    }
    let lambda = field.params.lambda();
    let grid = field.grid.scaled(1.0 / kappa);
    let modes = field
        .modes
        .iter()
        .map(|m| ZonalMode {
            degree: m.degree,
            nu: m.nu,
            jets: std::array::from_fn(|j| {
                let s = kappa.powf(lambda + j as f64);
                m.jets[j].iter().map(|f| s * f).collect()
            }),
        })
        .collect();
    Ok(Field {
        params: field.params,
        grid,
        modes,
        derivatives_analytic: field.derivatives_analytic,
        homogeneity: field.homogeneity,
        support: field.support.map(|(a, b)| (a / kappa, b / kappa)),
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
    fn singular_values() {
        let g = log_grid(0.5, 2.0, 33).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        let i1 = g.node_index(1.0).unwrap();
        let i2 = g.node_index(2.0).unwrap();
        assert!((u.value_at(i1, 0.3) - 384f64.sqrt()).abs() < 1e-12);
        assert!((u.value_at(i2, -0.7) - 384f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn singular_needs_positive_gamma() {
        let g = log_grid(0.5, 2.0, 33).unwrap();
        let ok = SystemParams::new(7.0, 3.0, 0.0, 0.0).unwrap();
        assert_eq!(ok.derive().gamma_coef, 24.0);
        assert!(singular_field(&ok, &g).is_ok());
        let bad = SystemParams::new(5.0, 3.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            singular_field(&bad, &g),
            Err(LabError::GammaNonpositive(_))
        ));
    }

    #[test]
    fn bump_peak_and_symmetry() {
        let g = log_grid(0.25, 4.0, 65).unwrap();
        let spec = [BumpMode {
            degree: 0,
            amplitude: 1.0,
            center: 1.0,
            width: 0.5,
        }];
        let u = bump_field(&p12(), &g, &spec).unwrap();
        let i = g.node_index(1.0).unwrap();
        assert_eq!(u.modes()[0].f()[i], 1.0);
        assert_eq!(u.modes()[0].f_prime()[i], 0.0);
        let zero = [BumpMode {
            degree: 0,
            amplitude: 0.0,
            center: 1.0,
            width: 0.5,
        }];
        let z = bump_field(&p12(), &g, &zero).unwrap();
        assert!(z.modes()[0].f().iter().all(|&f| f == 0.0));
    }

    #[test]
    fn log_bump_derivatives_match_differences() {
        let g = log_grid(0.1, 10.0, 4001).unwrap();
        let spec = [LogBumpMode {
            degree: 0,
            amplitude: 1.0,
            center: 1.0,
            half_width: 1.5,
        }];
        let u = log_bump_field(&p12(), &g, &spec).unwrap();
        let m = &u.modes()[0];
        for j in 1..=JET_ORDER {
            let fd = quad::derivative_all(&g, m.derivative(j - 1)).unwrap();
            for i in (100..3900).step_by(97) {
                let scale = 1.0 + m.derivative(j)[i].abs();
                assert!(
                    (fd[i] - m.derivative(j)[i]).abs() < 1e-6 * scale,
                    "order {j} node {i}"
                );
            }
        }
    }

    #[test]
    fn companion_of_singular() {
        let g = log_grid(0.5, 2.0, 33).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        let v = companion_v(&u).unwrap();
        let area = sphere_area(12.0).sqrt();
        for (i, r) in g.radii().iter().enumerate() {
            let exact = 16.0 * 384f64.sqrt() * r.powi(-4) * area;
            assert!((v.modes()[0].f()[i] - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn degree_one_harmonic_has_zero_companion() {
        let g = log_grid(0.5, 2.0, 33).unwrap();
        let u = power_field(&p12(), &g, 1, 1.0, 1.0);
        let v = companion_v(&u).unwrap();
        assert!(v.modes()[0].f().iter().all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn rescaling_identity_and_homogeneous() {
        let g = log_grid(0.5, 2.0, 33).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        assert_eq!(rescaled(&u, 1.0).unwrap(), u);
        let u2 = rescaled(&u, 2.0).unwrap();
        // u^κ = u for homogeneous u: same values at the same radius
        let i = g.node_index(1.0).unwrap();
        let j = u2.grid().node_index(0.5).unwrap();
        let exact = u.modes()[0].f()[g.node_index(0.5).unwrap()];
        assert!((u2.modes()[0].f()[j] - exact).abs() < 1e-12 * exact);
        assert_eq!(i, j);
    }

    #[test]
    fn repeated_degrees_rejected() {
        let g = log_grid(0.5, 2.0, 33).unwrap();
        let b = BumpMode {
            degree: 1,
            amplitude: 1.0,
            center: 1.0,
            width: 0.2,
        };
        assert!(bump_field(&p12(), &g, &[b, b]).is_err());
    }
}
