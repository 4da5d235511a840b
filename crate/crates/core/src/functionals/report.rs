/// Two sides of an identity or inequality and their discrepancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`
    pub residual: f64,
    pub scale: f64,
    /// `|residual| / scale`
    pub relative: f64,
    /// Size of the contribution excluded by truncating at the inner radius.
    pub truncation: f64,
}

impl ResidualReport {
    /// Scale `max(|lhs|, |rhs|, 1e-300)`.
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self::with_scale(lhs, rhs, 0.0)
    }

    /// As [`ResidualReport::new`] with an extra candidate for the scale, used
    /// when both sides cancel to zero but their ingredients do not.
    pub fn with_scale(lhs: f64, rhs: f64, extra_scale: f64) -> Self {
        let residual = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs()).max(extra_scale.abs()).max(1e-300);
        Self {
            lhs,
            rhs,
            residual,
            scale,
            relative: residual.abs() / scale,
            truncation: 0.0,
        }
    }

    pub fn with_truncation(mut self, t: f64) -> Self {
        self.truncation = t;
        self
    }

    /// `rhs - lhs ≥ -tol·scale`: the inequality `lhs ≤ rhs` holds up to `tol`.
    pub fn holds_le(&self, tol: f64) -> bool {
        self.rhs - self.lhs >= -tol * self.scale
    }
}
