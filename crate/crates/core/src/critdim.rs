//! Threshold polynomials in the dimension and the critical dimension
//! `N_{α,β}(p)`: the least zero of `𝔣(N) - 𝔉(N)` above the critical hyperbola.

use crate::error::{LabError, Result};
use crate::params::Exponents;
use crate::poly1::Poly1;

/// Uniform scan resolution used before bisection.
pub const SCAN_POINTS: usize = 4096;

/// Default relative bracket width at which bisection stops.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

const MAX_BISECTIONS: usize = 400;

/// `𝔣, 𝔤, 𝔉, 𝔊` and the derivatives `𝔣′, 𝔉′` at one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdValues {
    pub f: f64,
    pub g: f64,
    pub big_f: f64,
    pub big_g: f64,
    pub f_prime: f64,
    pub big_f_prime: f64,
}

impl ThresholdValues {
    /// `𝔣(N) - 𝔉(N)`; its sign decides stability of the singular solution.
    pub fn gap(&self) -> f64 {
        self.f - self.big_f
    }
}

/// Evaluate the threshold functions at `n`.
///
/// All four are polynomials in `n`, so any real `n` is accepted.
pub fn threshold_functions(n: f64, e: &Exponents) -> ThresholdValues {
    let p = e.p();
    let beta = e.beta();
    let lambda = e.lambda();
    let mu = e.mu();
    let lead = p * lambda * (mu + 2.0);
    let hardy_root = (n + beta) * (n - 4.0 - beta);
    ThresholdValues {
        f: lead * (n - 2.0 - lambda) * (n - 4.0 - mu),
        g: p * (mu + 2.0) * (n - 4.0 - mu) + p * lambda * (n - 2.0 - lambda),
        big_f: hardy_root * hardy_root / 16.0,
        big_g: hardy_root / 2.0,
        f_prime: lead * (2.0 * n - 6.0 - beta - (8.0 + 2.0 * e.alpha() + 2.0 * beta) / (p - 1.0)),
        big_f_prime: 0.25 * (n + beta) * (n - 2.0) * (n - 4.0 - beta),
    }
}

/// Closed forms for the differences at the bracket endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointGaps {
    /// `(𝔣-𝔉)(4+β+2λ)`
    pub left_gap: f64,
    /// `(𝔣-𝔉)(4+β+(4p+1)λ)`
    pub right_gap_formula: f64,
    /// `(𝔤-𝔊)(4+β+2λ)`
    pub g_gap: f64,
    /// `(𝔣′-𝔉′)(4+β+2λ)`
    pub f_prime_gap: f64,
}

pub fn endpoint_gaps(e: &Exponents) -> EndpointGaps {
    let p = e.p();
    let beta = e.beta();
    let l = e.lambda();
    let s = 2.0 + beta + l;
    let q = 4.0 * p + 1.0;
    let tail = (4.0 + 2.0 * beta) + q * l;
    EndpointGaps {
        left_gap: (p - 1.0) * l * l * s * s,
        right_gap_formula: 4.0 * p * p * l * l * s * (2.0 + beta + 4.0 * p * l)
            - q * q * l * l / 16.0 * tail * tail,
        g_gap: 2.0 * (p - 1.0) * l * s,
        f_prime_gap: (p - 1.0) * l * s * (2.0 + beta + 2.0 * l),
    }
}

/// Outcome of the bracketed least-root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CritDimResult {
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    /// `N_{α,β}(p)`.
    pub root: f64,
    pub gap_lo: f64,
    pub gap_hi: f64,
    pub scan_points: usize,
    pub bisections: usize,
    /// Cowan's dimension bound, present only for `α = β = 0`.
    pub cowan_bound: Option<f64>,
    /// Fazly's dimension bound, present only for `α = β`.
    pub fazly_bound: Option<f64>,
}

/// Least zero of `𝔣 - 𝔉` in `(4+β+2λ, 4+β+(4p+1)λ)`.
///
/// The endpoint signs are checked first, then the bracket is scanned at
/// [`SCAN_POINTS`] uniform points for the first `+ → -` sign change, which is
/// bisected until its width drops below `rel_tol` times the midpoint.
pub fn critical_dimension(e: &Exponents, rel_tol: f64) -> Result<CritDimResult> {
    if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
        return Err(LabError::InvalidArgument(format!(
            "relative tolerance must lie in (0, 1e-3], got {rel_tol}"
        )));
    }
    let h = |n: f64| threshold_functions(n, e).gap();
    let lo = e.sobolev_threshold();
    let hi = e.bracket_hi();
    let gap_lo = h(lo);
    let gap_hi = h(hi);
    if !(gap_lo > 0.0 && gap_hi < 0.0) {
        return Err(LabError::Bracket { gap_lo, gap_hi });
    }

    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let node = |i: usize| {
        if i == SCAN_POINTS - 1 {
            hi
        } else {
            lo + i as f64 * step
        }
    };
    let mut prev = (lo, gap_lo);
    let mut cell = None;
    for i in 1..SCAN_POINTS {
        let x = node(i);
        let hx = h(x);
        if prev.1 > 0.0 && hx <= 0.0 {
            cell = Some((prev.0, x, hx));
            break;
        }
        prev = (x, hx);
    }
    let (mut a, mut b, hb) = cell.ok_or(LabError::NoRoot { lo, hi })?;

    let mut bisections = 0;
    if hb != 0.0 {
        while (b - a) > rel_tol * (0.5 * (a + b)).abs() && bisections < MAX_BISECTIONS {
            let m = 0.5 * (a + b);
            if h(m) > 0.0 {
                a = m;
            } else {
                b = m;
            }
            bisections += 1;
        }
    }
    let root = if hb == 0.0 { b } else { 0.5 * (a + b) };
    let bounds = literature_bounds(e);
    Ok(CritDimResult {
        bracket_lo: lo,
        bracket_hi: hi,
        root,
        gap_lo,
        gap_hi,
        scan_points: SCAN_POINTS,
        bisections,
        cowan_bound: bounds.cowan,
        fazly_bound: bounds.fazly,
    })
}

/// Earlier nonexistence dimensions the critical dimension is compared with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiteratureBounds {
    pub cowan: Option<f64>,
    pub fazly: Option<f64>,
}

pub fn literature_bounds(e: &Exponents) -> LiteratureBounds {
    let p = e.p();
    let alpha = e.alpha();
    let cowan = (alpha == 0.0 && e.beta() == 0.0).then(|| {
        let s = (2.0 * p / (p + 1.0)).sqrt();
        2.0 + 4.0 * (p + 1.0) / (p - 1.0) * (s + (2.0 * p / (p + 1.0) - s).sqrt())
    });
    let fazly = (alpha == e.beta()).then(|| 8.0 + 3.0 * alpha + (8.0 + 4.0 * alpha) / (p - 1.0));
    LiteratureBounds { cowan, fazly }
}

/// Coefficients `[c0, c1, c2, c3, c4]` of the quartic in `y` as printed in
/// the source, transcribed term by term.
pub fn printed_quartic_coefficients(e: &Exponents) -> [f64; 5] {
    let p = e.p();
    let a = e.alpha();
    let b = e.beta();
    let pm1_4 = (p - 1.0).powi(4);
    let c4 = p.powi(4) - 4.0 * p.powi(3) + 6.0 * p * p - 4.0 * p + 1.0;
    let c3 = -(8.0 * p.powi(4) - 32.0 * p.powi(3) + 48.0 * p * p - 32.0 * p + 8.0);
    let c2 = -(p * p - 2.0 * p + 1.0)
        * ((32.0 * a + 104.0 * b + 16.0 * a * b + 18.0 * b * b + 112.0) * p * p
            + (16.0 * a * b + 16.0 * a * a - 4.0 * b * b + 16.0 * b + 96.0 * a + 160.0) * p
            + 8.0 * b
            + 2.0 * b * b
            - 16.0);
    let c1 =
        ((48.0 + 44.0 * b + 12.0 * b * b + 8.0 * a * b + 12.0 * a + a * b * b + b.powi(3)) * p * p
            + (64.0
                + 56.0 * a
                + 28.0 * a * b
                + 10.0 * a * a
                + 40.0 * b
                + 10.0 * b * b
                + 4.0 * a * b * b
                + 3.0 * a * a * b
                + b.powi(3))
                * p
            + 28.0 * a
            + 16.0
            + 14.0 * a * a
            + 2.0 * a.powi(3)
            + 12.0 * b
            + 12.0 * a * b
            + 3.0 * a * a * b
            + 2.0 * b * b
            + a * b * b)
            * 16.0
            * (p * p - p)
            - pm1_4 * (32.0 * b + 8.0 * b * b);
    let c0 = pm1_4 * b * b * (b + 4.0).powi(2)
        - 16.0
            * ((8.0 + (2.0 + b) * a + (6.0 + b) * b) * p + (6.0 + a + b) * a + 2.0 * b + 8.0)
            * ((8.0 + 2.0 * b) * p * p
                + (6.0 * b + 6.0 * a + a * b + b * b + 8.0) * p
                + 2.0 * a
                + a * a
                + a * b)
            * p;
    [c0, c1, c2, c3, c4]
}

/// `16(p-1)⁴(𝔉(y) - 𝔣(y))` expanded as a polynomial in `y`.
pub fn reference_quartic(e: &Exponents) -> Poly1 {
    let p = e.p();
    let b = e.beta();
    let l = e.lambda();
    let mu = e.mu();
    let lin = |c: f64| Poly1::new(vec![c, 1.0]);
    let hardy = &(&lin(b) * &lin(-4.0 - b)) * &(&lin(b) * &lin(-4.0 - b));
    let f = (&lin(-2.0 - l) * &lin(-4.0 - mu)).scale(p * l * (mu + 2.0));
    (&hardy - &f.scale(16.0)).scale((p - 1.0).powi(4))
}

/// `Q_printed(y) - 16(p-1)⁴(𝔉(y) - 𝔣(y))`: zero when the printed
/// coefficients agree with the threshold functions.
pub fn printed_quartic_gap(e: &Exponents, y: f64) -> f64 {
    let printed = Poly1::new(printed_quartic_coefficients(e).to_vec()).eval(y);
    let t = threshold_functions(y, e);
    printed - 16.0 * (e.p() - 1.0).powi(4) * (t.big_f - t.f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(p: f64, a: f64, b: f64) -> Exponents {
        Exponents::new(p, a, b).unwrap()
    }

    #[test]
    fn threshold_values_at_12() {
        let t = threshold_functions(12.0, &ex(3.0, 0.0, 0.0));
        assert_eq!(t.f, 1152.0);
        assert_eq!(t.big_f, 576.0);
        assert_eq!(t.big_g, 48.0);
        // 3·4·6 + 3·2·8
        assert_eq!(t.g, 120.0);
    }

    #[test]
    fn gap_at_8_is_128() {
        assert_eq!(threshold_functions(8.0, &ex(3.0, 0.0, 0.0)).gap(), 128.0);
    }

    #[test]
    fn hardy_terms_vanish_at_4_plus_beta() {
        for b in [0.0, 0.7, 2.0] {
            let t = threshold_functions(4.0 + b, &ex(2.5, 1.0, b));
            assert!(t.big_f.abs() < 1e-28);
            assert!(t.big_g.abs() < 1e-13);
        }
    }

    #[test]
    fn endpoint_gap_examples() {
        let g = endpoint_gaps(&ex(3.0, 0.0, 0.0));
        assert_eq!(g.left_gap, 128.0);
        assert_eq!(g.g_gap, 32.0);
        assert_eq!(g.f_prime_gap, 96.0);
        let t = threshold_functions(8.0, &ex(3.0, 0.0, 0.0));
        assert_eq!(t.g - t.big_g, 32.0);
        assert_eq!(t.f_prime - t.big_f_prime, 96.0);
        let hi = threshold_functions(30.0, &ex(3.0, 0.0, 0.0)).gap();
        assert!((g.right_gap_formula - hi).abs() <= 1e-12 * hi.abs());
    }

    #[test]
    fn bracket_p3() {
        let r = critical_dimension(&ex(3.0, 0.0, 0.0), DEFAULT_REL_TOL).unwrap();
        assert_eq!(r.bracket_lo, 8.0);
        assert_eq!(r.bracket_hi, 30.0);
        assert!(r.gap_lo > 0.0 && r.gap_hi < 0.0);
        assert!(r.root > r.bracket_lo && r.root < r.bracket_hi);
        assert_eq!(r.scan_points, SCAN_POINTS);
        assert!(r.bisections > 0);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let e = ex(3.0, 0.0, 0.0);
        assert!(critical_dimension(&e, 0.0).is_err());
        assert!(critical_dimension(&e, 1e-2).is_err());
        assert!(critical_dimension(&e, 1e-3).is_ok());
    }

    #[test]
    fn bounds_applicability() {
        let b = literature_bounds(&ex(3.0, 0.0, 0.0));
        assert!((b.cowan.unwrap() - 15.995139957335034).abs() < 1e-12);
        assert_eq!(b.fazly, Some(12.0));
        assert_eq!(literature_bounds(&ex(3.0, 1.0, 1.0)).fazly, Some(17.0));
        assert_eq!(literature_bounds(&ex(3.0, 1.0, 1.0)).cowan, None);
        assert_eq!(
            literature_bounds(&ex(3.0, 0.0, 1.0)),
            LiteratureBounds {
                cowan: None,
                fazly: None
            }
        );
    }

    #[test]
    fn quartic_leading_coefficients_agree() {
        for (p, a, b) in [(3.0, 0.0, 0.0), (2.0, 1.0, 0.5), (5.0, -1.0, 2.0)] {
            let e = ex(p, a, b);
            let printed = printed_quartic_coefficients(&e);
            let reference = reference_quartic(&e);
            let pm1_4 = (p - 1.0).powi(4);
            assert!((printed[4] - pm1_4).abs() <= 1e-12 * pm1_4);
            assert!((reference.coeff(4) - pm1_4).abs() <= 1e-12 * pm1_4);
            assert!((printed[3] + 8.0 * pm1_4).abs() <= 1e-12 * pm1_4);
            assert!((reference.coeff(3) + 8.0 * pm1_4).abs() <= 1e-12 * pm1_4);
        }
    }

    #[test]
    fn quartic_gap_p3_unweighted() {
        // the printed coefficients reproduce the threshold functions when α = β = 0
        let e = ex(3.0, 0.0, 0.0);
        assert_eq!(printed_quartic_gap(&e, 10.0), 0.0);
        assert_eq!(printed_quartic_gap(&e, 15.0), 0.0);
    }
}
