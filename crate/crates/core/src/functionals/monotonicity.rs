use std::io::Write;

use crate::error::{LabError, Result};
use crate::fields::io::format_number;
use crate::fields::{Field, rescaled};
use crate::quad;

use super::energy::BallIntegrals;
use super::surface;

/// `M(r)` and its derivative bound at a set of radii.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MonotonicityReport {
    pub radii: Vec<f64>,
    pub m: Vec<f64>,
    pub dmdr: Vec<f64>,
    /// `C r^{2+2λ-N} ∫_{∂B_r} (λu/r + ∂_r u)² dS`
    pub rhs_bound: Vec<f64>,
    /// The seven summands of `M`, energy split into its two parts.
    pub terms: Vec<[f64; 7]>,
}

impl MonotonicityReport {
    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Worst `rhs_bound - dmdr` (positive values violate monotonicity).
    pub fn worst_violation(&self) -> f64 {
        self.dmdr
            .iter()
            .zip(&self.rhs_bound)
            .map(|(d, b)| b - d)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| LabError::InvalidArgument(format!("i/o: {e}"));
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["r", "M", "dMdr", "rhsBound"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        header.extend((1..=7).map(|k| format!("term{k}")));
        w.write_record(&header).map_err(io)?;
        for i in 0..self.len() {
            let mut row = vec![
                format_number(self.radii[i]),
                format_number(self.m[i]),
                format_number(self.dmdr[i]),
                format_number(self.rhs_bound[i]),
            ];
            row.extend(self.terms[i].iter().map(|t| format_number(*t)));
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| LabError::InvalidArgument(format!("i/o: {e}")))?;
        Ok(())
    }
}

/// `M` at every node that admits the difference stencils, as node arrays.
struct NodeCurve {
    dmdr: Vec<f64>,
    rhs: Vec<f64>,
    terms: Vec<[f64; 7]>,
}

/// First node carrying `dM/dr`; the last is `len - 1 - EDGE`.
const EDGE: usize = 4;

fn node_curve(field: &Field) -> Result<NodeCurve> {
    let grid = field.grid();
    let n_pts = grid.len();
    if n_pts < 2 * EDGE + 1 {
        return Err(LabError::Grid(format!(
            "need at least {} points for the monotonicity stencils",
            2 * EDGE + 1
        )));
    }
    let params = field.params();
    let d = params.derive();
    let (n, p, beta, lambda) = (params.n(), params.p(), params.beta(), d.lambda);
    let spheres = surface::all_nodes(field);
    let ball = BallIntegrals::new(field, &spheres);
    if ball.core.is_none() && ball.truncation.is_infinite() {
        return Err(LabError::InvalidArgument(
            "the energy in M(r) diverges at the origin for this field".into(),
        ));
    }
    let radii = grid.radii();
    let s_uu: Vec<f64> = radii
        .iter()
        .zip(&spheres)
        .map(|(r, s)| r.powf(n - 1.0) * s.uu)
        .collect();
    let s_hom: Vec<f64> = radii
        .iter()
        .zip(&spheres)
        .map(|(r, s)| r.powf(n - 1.0) * s.hom)
        .collect();
    let s_tan: Vec<f64> = radii
        .iter()
        .zip(&spheres)
        .map(|(r, s)| r.powf(n - 3.0) * s.tan)
        .collect();
    let g4: Vec<f64> = radii
        .iter()
        .zip(&s_uu)
        .map(|(r, s)| r.powf(2.0 * lambda + 2.0 - n) * s)
        .collect();
    let g5: Vec<f64> = radii
        .iter()
        .zip(&s_hom)
        .map(|(r, s)| r.powf(2.0 * lambda + 1.0 - n) * s)
        .collect();
    let g7: Vec<f64> = radii
        .iter()
        .zip(&s_tan)
        .map(|(r, s)| r.powf(2.0 * lambda + 4.0 - n) * s)
        .collect();
    let a = 0.5 * (1.0 + beta) * lambda * (n - 2.0 - lambda);
    let b = 0.5 * lambda * (n - 2.0 - lambda);

    let mut m = vec![f64::NAN; n_pts];
    let mut terms = vec![[f64::NAN; 7]; n_pts];
    for i in 2..n_pts - 2 {
        let r = radii[i];
        let (k, pot) = ball.ball_at(i as f64);
        let rd = r.powf(d.delta);
        let t = [
            rd * 0.5 * k,
            -rd * pot / (p + 1.0),
            a * r.powf(2.0 * lambda + 1.0 - n) * s_uu[i],
            b * quad::central_derivative(grid, &g4, i)?,
            0.5 * r.powi(3) * quad::central_derivative(grid, &g5, i)?,
            0.5 * (1.0 + beta - lambda) * r.powf(2.0 * lambda + 3.0 - n) * s_tan[i],
            0.5 * quad::central_derivative(grid, &g7, i)?,
        ];
        m[i] = t.iter().sum();
        terms[i] = t;
    }
    let mut dmdr = vec![f64::NAN; n_pts];
    let mut rhs = vec![f64::NAN; n_pts];
    for i in EDGE..n_pts - EDGE {
        dmdr[i] = quad::central_derivative(grid, &m, i)?;
        rhs[i] = d.c_const * radii[i].powf(2.0 + 2.0 * lambda - n) * s_hom[i];
    }
    Ok(NodeCurve { dmdr, rhs, terms })
}

/// Check that `r` leaves room for every stencil and return its node coordinate.
fn stencil_position(field: &Field, r: f64) -> Result<f64> {
    let g = field.grid();
    let last = g.len() - 1 - EDGE;
    let x = g.position(r).ok_or(LabError::Stencil { r })?;
    let ok = if x.fract() == 0.0 {
        x as usize >= EDGE && x as usize <= last
    } else {
        x.floor() as usize > EDGE && x.floor() as usize + 2 <= last
    };
    if ok {
        Ok(x)
    } else {
        Err(LabError::Stencil { r })
    }
}

fn sample(curve: &NodeCurve, x: f64) -> (f64, f64, f64, [f64; 7]) {
    let terms: [f64; 7] = std::array::from_fn(|k| {
        let col: Vec<f64> = curve.terms.iter().map(|t| t[k]).collect();
        quad::interpolate(&col, x)
    });
    (
        terms.iter().sum(),
        quad::interpolate(&curve.dmdr, x),
        quad::interpolate(&curve.rhs, x),
        terms,
    )
}

/// `M(r; 0, u)` with its derivative and lower bound at each requested radius.
///
/// Radii on grid nodes are evaluated there; others are interpolated in `ln r`
/// from the neighbouring nodes.
pub fn monotonicity_curve(field: &Field, radii: &[f64]) -> Result<MonotonicityReport> {
    let xs = radii
        .iter()
        .map(|&r| stencil_position(field, r))
        .collect::<Result<Vec<_>>>()?;
    let curve = node_curve(field)?;
    let mut rep = MonotonicityReport::default();
    for (&r, &x) in radii.iter().zip(&xs) {
        let (m, dm, rhs, t) = sample(&curve, x);
        rep.radii.push(r);
        rep.m.push(m);
        rep.dmdr.push(dm);
        rep.rhs_bound.push(rhs);
        rep.terms.push(t);
    }
    Ok(rep)
}

/// [`monotonicity_curve`] at every admissible node in `[r_lo, r_hi]`.
pub fn monotonicity_on_nodes(field: &Field, r_lo: f64, r_hi: f64) -> Result<MonotonicityReport> {
    let g = field.grid();
    let last = g.len().saturating_sub(1 + EDGE);
    let radii: Vec<f64> = g.radii()[EDGE..=last]
        .iter()
        .copied()
        .filter(|&r| r >= r_lo * (1.0 - 1e-12) && r <= r_hi * (1.0 + 1e-12))
        .collect();
    monotonicity_curve(field, &radii)
}

/// `M(r; 0, u)` at one radius.
pub fn monotonicity_value(field: &Field, r: f64) -> Result<f64> {
    Ok(monotonicity_curve(field, &[r])?.m[0])
}

/// `|M(κr; 0, u) - M(r; 0, u^κ)|` with `u^κ(x) = κ^λ u(κx)`.
pub fn scaling_gap(field: &Field, kappa: f64, r: f64) -> Result<f64> {
    let scaled = rescaled(field, kappa)?;
    let direct = monotonicity_value(field, kappa * r).map_err(|e| range(e, kappa * r, field))?;
    let blown = monotonicity_value(&scaled, r).map_err(|e| range(e, r, &scaled))?;
    Ok((direct - blown).abs())
}

fn range(e: LabError, r: f64, field: &Field) -> LabError {
    match e {
        LabError::Stencil { .. } => LabError::Range {
            r,
            r_min: field.grid().r_min(),
            r_max: field.grid().r_max(),
            reason: "not interior to the grid".into(),
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SystemParams;
    use crate::fields::{BumpMode, bump_field, log_grid, singular_field};

    fn p12() -> SystemParams {
        SystemParams::new(12.0, 3.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn zero_field() {
        let g = log_grid(0.2, 3.0, 129).unwrap();
        let spec = [BumpMode {
            degree: 0,
            amplitude: 0.0,
            center: 1.0,
            width: 0.5,
        }];
        let u = bump_field(&p12(), &g, &spec).unwrap();
        let rep = monotonicity_on_nodes(&u, 0.3, 2.0).unwrap();
        assert!(!rep.is_empty());
        assert!(
            rep.m
                .iter()
                .chain(&rep.dmdr)
                .chain(&rep.rhs_bound)
                .all(|&x| x == 0.0)
        );
    }

    #[test]
    fn singular_is_constant_with_zero_bound() {
        let g = log_grid(0.5, 2.0, 2001).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        let rep = monotonicity_on_nodes(&u, 0.5, 2.0).unwrap();
        let m1 = monotonicity_value(&u, 1.0).unwrap();
        for (m, b) in rep.m.iter().zip(&rep.rhs_bound) {
            assert!((m - m1).abs() <= 1e-6 * (1.0 + m1.abs()));
            assert!(b.abs() < 1e-12 * (1.0 + m1.abs()));
        }
    }

    #[test]
    fn terms_sum_to_m() {
        let g = log_grid(0.2, 3.0, 257).unwrap();
        let spec = [
            BumpMode {
                degree: 0,
                amplitude: 1.0,
                center: 1.0,
                width: 0.5,
            },
            BumpMode {
                degree: 2,
                amplitude: 0.5,
                center: 1.2,
                width: 0.4,
            },
        ];
        let u = bump_field(&p12(), &g, &spec).unwrap();
        let rep = monotonicity_curve(&u, &[0.7, 1.0, 1.234]).unwrap();
        for (m, t) in rep.m.iter().zip(&rep.terms) {
            let s: f64 = t.iter().sum();
            assert!((s - m).abs() <= 1e-12 * m.abs().max(1e-300));
        }
    }

    #[test]
    fn stencil_errors() {
        let g = log_grid(0.2, 3.0, 129).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        assert!(matches!(
            monotonicity_curve(&u, &[0.2]),
            Err(LabError::Stencil { .. })
        ));
        assert!(matches!(
            monotonicity_curve(&u, &[3.0]),
            Err(LabError::Stencil { .. })
        ));
        assert!(matches!(
            monotonicity_curve(&u, &[5.0]),
            Err(LabError::Stencil { .. })
        ));
    }

    #[test]
    fn scaling_identity() {
        let g = log_grid(0.2, 3.0, 129).unwrap();
        let u = singular_field(&p12(), &g).unwrap();
        assert_eq!(scaling_gap(&u, 1.0, 1.0).unwrap(), 0.0);
    }
}
