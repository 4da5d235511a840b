//! The acceptance suite behind `llab verify`.
//!
//! Every criterion draws its random inputs from a fixed-seed generator, so a
//! run is reproducible. `quick` lowers the number of draws, never a tolerance.

use std::fmt;

use llab_core::Result;
use llab_core::critdim::{
    DEFAULT_REL_TOL, critical_dimension, endpoint_gaps, literature_bounds, threshold_functions,
};
use llab_core::fields::{
    BumpMode, LogBumpMode, RadialGrid, bump_field, eigenvalue, log_bump_field, log_grid, shoot,
    singular_field,
};
use llab_core::functionals::{
    energy_identity_residual, hardy_rellich_ratio, mode_quadratic, monotonicity_on_nodes,
    monotonicity_value, pde_residual, pohozaev_residual, scaling_gap, stability_rayleigh,
};
use llab_core::identities::{
    CompactRadialBump, LEMMA22_POINTS, MultiPoly, lemma21_check, lemma22_check_with,
};
use llab_core::params::{Exponents, RegimeTag, SystemParams, classify_regime};
use llab_core::poly1::Poly1;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sweep::{SweepRow, sweep_csv};

pub const CRITERIA: usize = 13;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{:2}] {}: {}", self.id, self.name, self.detail)
    }
}

const NAMES: [&str; CRITERIA] = [
    "endpoint gap identities",
    "critical dimension",
    "literature bounds improved",
    "singular solution",
    "monotonicity formula",
    "monotonicity on a shot solution",
    "Pohozaev and energy identities",
    "pointwise polynomial identity",
    "radial integral identities",
    "mode positivity",
    "weighted Hardy-Rellich inequality",
    "dimension regimes",
    "sweep determinism",
];

fn rng(id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x11ab_0000 + id as u64)
}

/// Draw count: full, or a fifth of it in quick mode.
fn draws(full: usize, quick: bool) -> usize {
    if quick { (full / 5).max(5) } else { full }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn random_exponents(r: &mut ChaCha8Rng) -> Exponents {
    Exponents::new(
        r.random_range(1.05..12.0),
        r.random_range(-3.9..6.0),
        r.random_range(0.0..6.0),
    )
    .unwrap()
}

/// Run one criterion (1-based).
pub fn run(id: usize, quick: bool) -> Outcome {
    assert!(
        (1..=CRITERIA).contains(&id),
        "criterion {id} does not exist"
    );
    let res = match id {
        1 => endpoint_gap_identities(quick),
        2 => critical_dimension_check(),
        3 => literature_bounds_check(),
        4 => singular_solution(quick),
        5 => monotonicity_formula(),
        6 => shot_monotonicity(),
        7 => identity_residuals(),
        8 => polynomial_identity(quick),
        9 => radial_identities(quick),
        10 => mode_positivity(quick),
        11 => hardy_rellich(quick),
        12 => regimes(),
        _ => sweep_determinism(),
    };
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome {
        id,
        name: NAMES[id - 1],
        passed,
        detail,
    }
}

pub fn run_all(quick: bool) -> Vec<Outcome> {
    (1..=CRITERIA).map(|id| run(id, quick)).collect()
}

type Check = Result<(bool, String)>;

fn endpoint_gap_identities(quick: bool) -> Check {
    let mut r = rng(1);
    let n = draws(200, quick);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let e = random_exponents(&mut r);
        let (p, b, l) = (e.p(), e.beta(), e.lambda());
        let lo = threshold_functions(e.sobolev_threshold(), &e);
        let hi = threshold_functions(e.bracket_hi(), &e);
        let g = endpoint_gaps(&e);
        worst = worst
            .max(rel(lo.gap(), (p - 1.0) * l * l * (2.0 + b + l).powi(2)))
            .max(rel(lo.gap(), g.left_gap))
            .max(rel(hi.gap(), g.right_gap_formula))
            .max(rel(lo.g - lo.big_g, 2.0 * (p - 1.0) * l * (2.0 + b + l)))
            .max(rel(
                lo.f_prime - lo.big_f_prime,
                (p - 1.0) * l * (2.0 + b + l) * (2.0 + b + 2.0 * l),
            ));
    }
    Ok((
        worst <= 1e-10,
        format!("{n} draws, worst relative gap {worst:.2e}"),
    ))
}

/// Least root of N³ - 4N² - 384N + 2304 above 8, by scan and bisection.
fn cubic_oracle() -> f64 {
    let c = |n: f64| ((n - 4.0) * n - 384.0) * n + 2304.0;
    let mut a = 8.0 + 1e-3;
    while c(a).signum() == c(a + 0.01).signum() {
        a += 0.01;
    }
    let mut b = a + 0.01;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if c(m).signum() == c(a).signum() {
            a = m
        } else {
            b = m
        }
    }
    0.5 * (a + b)
}

fn critical_dimension_check() -> Check {
    let root = critical_dimension(&Exponents::new(3.0, 0.0, 0.0)?, DEFAULT_REL_TOL)?.root;
    let oracle = cubic_oracle();
    let mut ok = (root - 18.16).abs() <= 0.05 && rel(root, oracle) <= 1e-10;
    let mut bad = Vec::new();
    for p in [2.0, 3.0, 5.0, 9.0] {
        for a in [0.0, 1.0, 2.0] {
            for b in [0.0, 1.0, 2.0] {
                let c = critical_dimension(&Exponents::new(p, a, b)?, DEFAULT_REL_TOL)?;
                if !(c.gap_lo > 0.0 && c.gap_hi < 0.0) {
                    bad.push(format!("({p},{a},{b})"));
                }
            }
        }
    }
    ok &= bad.is_empty();
    Ok((
        ok,
        format!(
            "N(3,0,0) = {root:.12}, cubic oracle {oracle:.12}, 36 brackets, sign failures {bad:?}"
        ),
    ))
}

fn literature_bounds_check() -> Check {
    let mut min_margin = f64::INFINITY;
    for p in [2.0, 3.0, 5.0, 9.0] {
        let e = Exponents::new(p, 0.0, 0.0)?;
        let root = critical_dimension(&e, DEFAULT_REL_TOL)?.root;
        min_margin = min_margin.min(root - literature_bounds(&e).cowan.unwrap_or(f64::INFINITY));
        for a in [0.0, 1.0, 2.0] {
            let e = Exponents::new(p, a, a)?;
            let root = critical_dimension(&e, DEFAULT_REL_TOL)?.root;
            let fazly = 8.0 + 3.0 * a + (8.0 + 4.0 * a) / (p - 1.0);
            min_margin = min_margin.min(root - fazly);
        }
    }
    Ok((
        min_margin > 1e-6,
        format!("smallest margin over 16 comparisons {min_margin:.6}"),
    ))
}

fn singular_solution(quick: bool) -> Check {
    let mut r = rng(4);
    let n = draws(20, quick);
    let grid = log_grid(1e-2, 1e2, 512)?;
    let (mut worst_pde, mut worst_f) = (0.0f64, 0.0f64);
    let mut drawn = 0;
    while drawn < n {
        let dim = r.random_range(5.0..30.0);
        let q = match SystemParams::new(
            dim,
            r.random_range(1.2..9.0),
            r.random_range(-3.5..4.0),
            r.random_range(0.0..1.0) * (dim - 4.0) / 2.0,
        ) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let d = q.derive();
        if !(dim - 2.0 - d.lambda > 0.0 && dim - 4.0 - d.mu > 0.0) {
            continue;
        }
        drawn += 1;
        worst_pde = worst_pde.max(pde_residual(&singular_field(&q, &grid)?)?.max());
        worst_f = worst_f.max(rel(
            threshold_functions(dim, &q.exponents()).f,
            q.p() * d.gamma_coef,
        ));
    }
    let e = Exponents::new(3.0, 0.0, 0.0)?;
    let (t12, t19) = (threshold_functions(12.0, &e), threshold_functions(19.0, &e));
    let flips = t12.f > t12.big_f && t19.f <= t19.big_f;

    // a concrete instability witness at N = 12 and none among random bumps at N = 19
    let g = log_grid(1e-3, 100.0, 4097)?;
    let q12 = e.with_dimension(12.0)?;
    let witness = log_bump_field(
        &q12,
        &g,
        &[LogBumpMode {
            degree: 0,
            amplitude: 1.0,
            center: 1.0,
            half_width: 2.0,
        }],
    )?;
    let w = stability_rayleigh(&singular_field(&q12, &g)?, &witness)?;
    let q19 = e.with_dimension(19.0)?;
    let bg = bump_grid()?;
    let u19 = singular_field(&q19, &bg)?;
    let mut br = rng(40);
    let mut stable19 = true;
    for _ in 0..draws(50, quick) {
        let z = bump_field(&q19, &bg, &random_bumps(&mut br))?;
        stable19 &= stability_rayleigh(&u19, &z)?.holds_le(1e-8);
    }
    let ok = worst_pde <= 1e-10 && worst_f <= 1e-14 && flips && w.lhs > w.rhs && stable19;
    Ok((
        ok,
        format!(
            "{n} draws: PDE residual {worst_pde:.2e}, f vs pΓ {worst_f:.2e}; f/F = {}/{} at 12, {}/{} at 19; witness at 12 lhs {:.2} > rhs {:.2}; N = 19 stable on random bumps: {stable19}",
            t12.f, t12.big_f, t19.f, t19.big_f, w.lhs, w.rhs
        ),
    ))
}

fn bump_grid() -> Result<RadialGrid> {
    log_grid(0.2, 4.0, 1025)
}

/// One to three modes of distinct even degree supported inside `[0.3, 3]`.
fn random_bumps(r: &mut ChaCha8Rng) -> Vec<BumpMode> {
    let count = r.random_range(1..=3u32);
    (0..count)
        .map(|k| {
            let center = r.random_range(0.6..2.0);
            let room = f64::min(center - 0.3, 3.0 - center);
            BumpMode {
                degree: 2 * k,
                amplitude: r.random_range(-2.0..2.0),
                center,
                width: r.random_range(0.1..0.9) * room,
            }
        })
        .collect()
}

fn monotonicity_formula() -> Check {
    let q = SystemParams::new(12.0, 3.0, 0.0, 0.0)?;
    let u = singular_field(&q, &log_grid(0.5, 2.0, 2000)?)?;
    let m1 = monotonicity_value(&u, 1.0)?;
    let rep = monotonicity_on_nodes(&u, 0.5, 2.0)?;
    let spread = rep.m.iter().map(|m| (m - m1).abs()).fold(0.0, f64::max);
    let const_ok = spread <= 1e-6 * (1.0 + m1.abs());

    let g = log_grid(0.1, 10.0, 1025)?;
    let sing = singular_field(&q, &g)?;
    let bump = bump_field(
        &q,
        &g,
        &[
            BumpMode {
                degree: 0,
                amplitude: 1.0,
                center: 1.5,
                width: 0.8,
            },
            BumpMode {
                degree: 3,
                amplitude: -0.4,
                center: 1.2,
                width: 0.5,
            },
        ],
    )?;
    let mut worst = 0.0f64;
    for u in [&sing, &bump] {
        for kappa in [0.5, 2.0] {
            let m = monotonicity_value(u, kappa)?;
            worst = worst.max(scaling_gap(u, kappa, 1.0)? / (1.0 + m.abs()));
        }
    }
    Ok((
        const_ok && worst <= 1e-8,
        format!(
            "max |M - M(1)| = {spread:.2e} with M(1) = {m1:.6e}; worst scaling gap / (1+|M|) = {worst:.2e}"
        ),
    ))
}

fn shot_monotonicity() -> Check {
    let q = SystemParams::new(12.0, 3.0, 0.0, 0.0)?;
    let s = shoot(&q, 1.0, 0.1, &log_grid(1e-3, 20.0, 4097)?)?;
    let rep = monotonicity_on_nodes(&s.field, 0.1, 0.9 * s.termination_radius)?;
    let max_m = rep.m.iter().fold(0.0f64, |a, m| a.max(m.abs()));
    let margin = rep
        .dmdr
        .iter()
        .zip(&rep.rhs_bound)
        .map(|(d, b)| d - b)
        .fold(f64::INFINITY, f64::min);
    let c = q.derive().c_const;
    let ok = !rep.is_empty() && c == 44.0 && margin >= -1e-6 * (1.0 + max_m);
    Ok((
        ok,
        format!(
            "{} radii in [0.1, {:.3}] ({}); C = {c}; min(dM/dr - bound) = {margin:.4e}",
            rep.len(),
            0.9 * s.termination_radius,
            s.terminated
        ),
    ))
}

fn identity_residuals() -> Check {
    let q = SystemParams::new(12.0, 3.0, 0.0, 0.0)?;
    let pair = |u: &llab_core::fields::Field| -> Result<[f64; 2]> {
        Ok([
            pohozaev_residual(u, 1.0)?.relative,
            energy_identity_residual(u, 1.0)?.relative,
        ])
    };
    let s1 = pair(&singular_field(&q, &log_grid(1e-2, 2.0, 1025)?)?)?;
    let s2 = pair(&singular_field(&q, &log_grid(1e-2, 2.0, 2049)?)?)?;
    let h1 = pair(&shoot(&q, 1.0, 0.1, &log_grid(1e-3, 8.0, 2049)?)?.field)?;
    let h2 = pair(&shoot(&q, 1.0, 0.1, &log_grid(1e-3, 8.0, 4097)?)?.field)?;
    let ok = s1.iter().all(|&x| x <= 1e-8)
        && h1.iter().chain(&h2).all(|&x| x <= 1e-6)
        && (0..2).all(|i| s1[i] >= 8.0 * s2[i] && h1[i] >= 8.0 * h2[i]);
    Ok((
        ok,
        format!(
            "singular (Pohozaev, energy) {:.1e}/{:.1e} -> {:.1e}/{:.1e}; shot {:.1e}/{:.1e} -> {:.1e}/{:.1e}",
            s1[0], s1[1], s2[0], s2[1], h1[0], h1[1], h2[0], h2[1]
        ),
    ))
}

fn random_poly(r: &mut ChaCha8Rng) -> Result<MultiPoly> {
    let mut acc = MultiPoly::zero(3);
    for _ in 0..r.random_range(1..=8) {
        let a = r.random_range(0..=4u32);
        let b = r.random_range(0..=4 - a);
        let c = r.random_range(0..=4 - a - b);
        acc = acc.add(&MultiPoly::monomial(
            3,
            &[a, b, c],
            r.random_range(-5..=5i128),
        )?)?;
    }
    Ok(acc)
}

fn polynomial_identity(quick: bool) -> Check {
    let mut r = rng(8);
    let n = draws(100, quick);
    let mut nonzero = 0;
    for _ in 0..n {
        let (z, e) = (random_poly(&mut r)?, random_poly(&mut r)?);
        if !lemma21_check(&z, &e)?.is_zero() {
            nonzero += 1;
        }
    }
    Ok((
        nonzero == 0,
        format!("{n} random pairs, {nonzero} nonzero defect polynomials"),
    ))
}

fn radial_identities(quick: bool) -> Check {
    let points = if quick { 4096 } else { LEMMA22_POINTS };
    let mut worst = 0.0f64;
    for (n, beta) in [(12.0, 0.0), (12.0, 2.0), (9.0, 1.0)] {
        let q = SystemParams::new(n, 3.0, 0.0, beta)?;
        for k in [0, 2, 4] {
            let rep = lemma22_check_with(
                &Poly1::monomial(k, 1.0),
                &CompactRadialBump::default(),
                &q,
                points,
            )?;
            worst = worst.max(rep.eq21.relative).max(rep.eq22.relative);
        }
    }
    Ok((
        worst <= 1e-8,
        format!("9 cases x 2 identities on {points} radii, worst relative residual {worst:.2e}"),
    ))
}

fn mode_positivity(quick: bool) -> Check {
    let mut r = rng(10);
    let n = draws(50, quick);
    let (mut drawn, mut min_q, mut failures) = (0, f64::INFINITY, 0);
    while drawn < n {
        let e = Exponents::new(
            r.random_range(1.2..9.0),
            r.random_range(-2.0..4.0),
            r.random_range(0.0..3.0),
        )?;
        let root = critical_dimension(&e, DEFAULT_REL_TOL)?.root;
        let dim =
            e.sobolev_threshold() + r.random_range(0.01..0.99) * (root - e.sobolev_threshold());
        let Ok(q) = e.with_dimension(dim) else {
            continue;
        };
        if classify_regime(&q, root)? != RegimeTag::Window {
            continue;
        }
        drawn += 1;
        for k in 0..=50 {
            let v = mode_quadratic(&q, eigenvalue(dim, k));
            min_q = min_q.min(v);
            if !(v > 0.0) {
                failures += 1;
            }
        }
    }
    let mut worst_root = 0.0f64;
    for (p, a, b) in [(3.0, 0.0, 0.0), (2.0, 1.0, 1.0), (5.0, 2.0, 0.5)] {
        let e = Exponents::new(p, a, b)?;
        let root = critical_dimension(&e, DEFAULT_REL_TOL)?.root;
        let q = e.with_dimension(root)?;
        worst_root =
            worst_root.max(mode_quadratic(&q, 0.0).abs() / threshold_functions(root, &e).big_f);
    }
    Ok((
        failures == 0 && worst_root <= 1e-9,
        format!(
            "{n} window draws x 51 modes, {failures} nonpositive, min Q {min_q:.3e}; |Q(0)|/F at the root {worst_root:.1e}"
        ),
    ))
}

fn hardy_rellich(quick: bool) -> Check {
    let mut r = rng(11);
    let n = draws(50, quick);
    let g = bump_grid()?;
    let mut worst = f64::INFINITY;
    for beta in [0.0, 2.0] {
        let q = SystemParams::new(12.0, 3.0, 0.0, beta)?;
        for _ in 0..n {
            let rep = hardy_rellich_ratio(&bump_field(&q, &g, &random_bumps(&mut r))?)?;
            worst = worst.min((rep.rhs - rep.lhs) / rep.scale);
        }
    }
    Ok((
        worst >= -1e-8,
        format!("{n} bumps at each of (12,0), (12,2); min (rhs - lhs)/scale = {worst:.4}"),
    ))
}

fn regimes() -> Check {
    let crit = critical_dimension(&Exponents::new(3.0, 0.0, 0.0)?, DEFAULT_REL_TOL)?.root;
    let tag = |n: f64| -> Result<RegimeTag> {
        classify_regime(&SystemParams::new(n, 3.0, 0.0, 0.0)?, crit)
    };
    let got = [tag(7.0)?, tag(8.0)?, tag(12.0)?, tag(19.0)?];
    let want = [
        RegimeTag::BelowHyperbola,
        RegimeTag::OnHyperbola,
        RegimeTag::Window,
        RegimeTag::AtOrAboveCritDim,
    ];
    Ok((got == want, format!("N = 7, 8, 12, 19 -> {got:?}")))
}

/// The fixed 36-row sweep input used by the determinism check.
pub fn determinism_rows() -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for p in [1.5, 2.0, 3.0, 5.0] {
        for alpha in [-1.0, 0.0, 2.5] {
            for beta in [0.0, 1.0, 2.0] {
                rows.push(SweepRow {
                    line: rows.len() as u64 + 2,
                    p,
                    alpha,
                    beta,
                });
            }
        }
    }
    rows
}

fn sweep_determinism() -> Check {
    let rows = determinism_rows();
    let n_values = [7.0, 12.0, 19.0];
    let (one, f1) = sweep_csv(&rows, &n_values, Some(1))?;
    let (four, f4) = sweep_csv(&rows, &n_values, Some(4))?;
    Ok((
        one == four && !f1 && !f4,
        format!(
            "{} rows x {} dimensions, {} bytes, identical: {}",
            rows.len(),
            n_values.len(),
            one.len(),
            one == four
        ),
    ))
}
