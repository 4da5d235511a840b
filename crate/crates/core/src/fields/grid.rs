use crate::error::{LabError, Result};

/// Smallest point count accepted by [`log_grid`].
pub const MIN_POINTS: usize = 16;

/// Relative distance within which a radius is taken to coincide with a node.
pub const NODE_TOL: f64 = 1e-9;

/// Log-uniform radii `r_i = r_min · q^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    radii: Vec<f64>,
    log_step: f64,
}

/// `n ≥ 16` log-uniform points from `r_min` to `r_max` inclusive.
pub fn log_grid(r_min: f64, r_max: f64, n: usize) -> Result<RadialGrid> {
    if n < MIN_POINTS {
        return Err(LabError::Grid(format!(
            "need at least {MIN_POINTS} points, got {n}"
        )));
    }
    RadialGrid::from_radii(geometric_points(r_min, r_max, n)?)
}

/// Geometric sequence from `r_min` to `r_max` with `n ≥ 2` points and no
/// minimum count. The end points are returned exactly.
pub fn geometric_points(r_min: f64, r_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(r_min > 0.0 && r_min.is_finite() && r_max.is_finite() && r_min < r_max) {
        return Err(LabError::Grid(format!(
            "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
        )));
    }
    if n < 2 {
        return Err(LabError::Grid(format!("need at least 2 points, got {n}")));
    }
    let (a, b) = (r_min.ln(), r_max.ln());
    let h = (b - a) / (n - 1) as f64;
    let mut out: Vec<f64> = (0..n).map(|i| (a + i as f64 * h).exp()).collect();
    out[0] = r_min;
    out[n - 1] = r_max;
    Ok(out)
}

impl RadialGrid {
    /// Wrap existing radii, checking positivity and a constant ratio.
    pub fn from_radii(radii: Vec<f64>) -> Result<Self> {
        if radii.len() < 2 {
            return Err(LabError::Grid("need at least 2 radii".into()));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
            return Err(LabError::Grid("radii must be positive and finite".into()));
        }
        let n = radii.len();
        let log_step = (radii[n - 1].ln() - radii[0].ln()) / (n - 1) as f64;
        if !(log_step > 0.0) {
            return Err(LabError::Grid("radii must increase".into()));
        }
        let q = log_step.exp();
        for w in radii.windows(2) {
            let ratio = w[1] / w[0];
            if (ratio - q).abs() > 1e-9 * q {
                return Err(LabError::Grid(format!(
                    "radii are not log-uniform: ratio {ratio} vs {q}"
                )));
            }
        }
        Ok(Self { radii, log_step })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.radii[0]
    }

    pub fn r_max(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    /// Spacing in `t = ln r`.
    pub fn log_step(&self) -> f64 {
        self.log_step
    }

    pub fn ratio(&self) -> f64 {
        self.log_step.exp()
    }

    /// Index of the node equal to `r` up to [`NODE_TOL`].
    pub fn node_index(&self, r: f64) -> Option<usize> {
        let x = (r.ln() - self.radii[0].ln()) / self.log_step;
        let i = x.round();
        if i < 0.0 || i as usize >= self.radii.len() {
            return None;
        }
        let i = i as usize;
        ((r - self.radii[i]).abs() <= NODE_TOL * self.radii[i]).then_some(i)
    }

    /// Fractional node coordinate of `r`; `None` outside the grid.
    pub fn position(&self, r: f64) -> Option<f64> {
        if let Some(i) = self.node_index(r) {
            return Some(i as f64);
        }
        if !(r >= self.r_min() && r <= self.r_max()) {
            return None;
        }
        Some((r.ln() - self.radii[0].ln()) / self.log_step)
    }

    /// Every radius multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            radii: self.radii.iter().map(|r| r * s).collect(),
            log_step: self.log_step,
        }
    }

    /// First `m` radii.
    pub fn truncated(&self, m: usize) -> Self {
        Self {
            radii: self.radii[..m.min(self.radii.len())].to_vec(),
            log_step: self.log_step,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_range() {
        assert!(log_grid(1.0, 1.0, 32).is_err());
        assert!(log_grid(2.0, 1.0, 32).is_err());
        assert!(log_grid(0.0, 1.0, 32).is_err());
        assert!(log_grid(0.1, 1.0, 15).is_err());
    }

    #[test]
    fn geometric_midpoint() {
        let pts = geometric_points(0.5, 2.0, 3).unwrap();
        assert_eq!(pts[0], 0.5);
        assert!((pts[1] - 1.0).abs() < 1e-15);
        assert_eq!(pts[2], 2.0);
    }

    #[test]
    fn common_ratio() {
        let g = log_grid(1e-3, 1.0, 16).unwrap();
        let q = 1000f64.powf(1.0 / 15.0);
        for w in g.radii().windows(2) {
            assert!((w[1] / w[0] - q).abs() <= 1e-12 * q);
        }
        assert_eq!(g.r_max(), 1.0);
    }

    #[test]
    fn node_lookup() {
        let g = log_grid(0.5, 2.0, 33).unwrap();
        assert_eq!(g.node_index(1.0), Some(16));
        assert_eq!(g.node_index(0.5), Some(0));
        assert_eq!(g.node_index(1.01), None);
        assert_eq!(g.position(4.0), None);
        let x = g.position(1.01).unwrap();
        assert!(x > 16.0 && x < 17.0);
    }
}
