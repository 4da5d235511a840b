//! Fourth-order calculus on a log-uniform radial grid, carried out in `t = ln r`.

use crate::error::{LabError, Result};
use crate::fields::RadialGrid;

/// Running integral `∫_{r_0}^{r_i} g(r) dr` at every node.
///
/// In `t` the integrand is `g(r) r`; interior cells use the four-point rule
/// `h/24 (-y_{j-1} + 13 y_j + 13 y_{j+1} - y_{j+2})` and the two end cells a
/// one-sided variant, so the result is fourth-order accurate.
pub fn cumulative(grid: &RadialGrid, g: &[f64]) -> Vec<f64> {
    let r = grid.radii();
    let n = r.len();
    assert_eq!(g.len(), n, "integrand length must match the grid");
    let y: Vec<f64> = g.iter().zip(r).map(|(g, r)| g * r).collect();
    let h = grid.log_step();
    let mut out = vec![0.0; n];
    if n < 4 {
        for j in 1..n {
            out[j] = out[j - 1] + 0.5 * h * (y[j - 1] + y[j]);
        }
        return out;
    }
    for j in 0..n - 1 {
        let cell = if j == 0 {
            9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]
        } else if j == n - 2 {
            y[n - 4] - 5.0 * y[n - 3] + 19.0 * y[n - 2] + 9.0 * y[n - 1]
        } else {
            -y[j - 1] + 13.0 * y[j] + 13.0 * y[j + 1] - y[j + 2]
        };
        out[j + 1] = out[j] + h / 24.0 * cell;
    }
    out
}

/// `d/dr` of node values at node `i` by the five-point central stencil in `t`.
pub fn central_derivative(grid: &RadialGrid, values: &[f64], i: usize) -> Result<f64> {
    let n = values.len();
    if i < 2 || i + 2 >= n {
        return Err(LabError::Stencil {
            r: grid.radii().get(i).copied().unwrap_or(f64::NAN),
        });
    }
    let d = -values[i + 2] + 8.0 * values[i + 1] - 8.0 * values[i - 1] + values[i - 2];
    Ok(d / (12.0 * grid.log_step() * grid.radii()[i]))
}

/// `d/dr` at every node, one-sided five-point stencils near the ends.
pub fn derivative_all(grid: &RadialGrid, values: &[f64]) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 5 {
        return Err(LabError::Grid(format!(
            "need at least 5 points to differentiate, got {n}"
        )));
    }
    let h = grid.log_step();
    let v = values;
    let mut out = vec![0.0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let dt = if i == 0 {
            (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / 12.0
        } else if i == 1 {
            (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / 12.0
        } else if i == n - 2 {
            (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) / 12.0
        } else if i == n - 1 {
            (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4] + 3.0 * v[n - 5])
                / 12.0
        } else {
            (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / 12.0
        };
        *o = dt / (h * grid.radii()[i]);
    }
    Ok(out)
}

/// Four-point Lagrange interpolation in `t` at fractional node coordinate `x`.
pub fn interpolate(values: &[f64], x: f64) -> f64 {
    let n = values.len();
    if x.fract() == 0.0 && (x as usize) < n {
        return values[x as usize];
    }
    let j0 = ((x.floor() as isize) - 1).clamp(0, n as isize - 4) as usize;
    let s = x - j0 as f64;
    let mut acc = 0.0;
    for a in 0..4 {
        let mut w = 1.0;
        for b in 0..4 {
            if a != b {
                w *= (s - b as f64) / (a as f64 - b as f64);
            }
        }
        acc += w * values[j0 + a];
    }
    acc
}
