use std::io::Write;
use std::path::PathBuf;

use anyhow::{Result, anyhow};
use llab_core::critdim::{critical_dimension, literature_bounds};
use llab_core::fields::io::{format_number, write_field_csv};
use llab_core::fields::{
    BumpMode, Termination, bump_field, log_grid, shoot as shoot_field, singular_field,
};
use llab_core::functionals::monotonicity_on_nodes;
use llab_core::params::{Exponents, SystemParams, classify_regime};

use super::{Exps, FieldKind, Sys, sink};

/// `k:amplitude:center:width`
pub(crate) fn parse_bump(s: &str) -> std::result::Result<BumpMode, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [k, a, c, w] = parts[..] else {
        return Err(format!("expected k:amplitude:center:width, got `{s}`"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    let width = num(w)?;
    if !(width > 0.0) {
        return Err(format!("bump width must be positive, got {width}"));
    }
    Ok(BumpMode {
        degree: k.trim().parse().map_err(|e| format!("`{k}`: {e}"))?,
        amplitude: num(a)?,
        center: num(c)?,
        width,
    })
}

fn system(sys: Sys) -> llab_core::Result<SystemParams> {
    SystemParams::new(sys.n, sys.exps.p, sys.exps.alpha, sys.exps.beta)
}

fn opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

pub(crate) fn critdim(exps: Exps, tol: f64) -> Result<i32> {
    let e = Exponents::new(exps.p, exps.alpha, exps.beta)?;
    let r = critical_dimension(&e, tol)?;
    let b = literature_bounds(&e);
    println!("p,alpha,beta,bracket_lo,bracket_hi,n_crit,cowan,fazly");
    println!(
        "{},{},{},{},{},{},{},{}",
        format_number(e.p()),
        format_number(e.alpha()),
        format_number(e.beta()),
        format_number(r.bracket_lo),
        format_number(r.bracket_hi),
        format_number(r.root),
        opt(b.cowan),
        opt(b.fazly)
    );
    Ok(0)
}

pub(crate) fn classify(sys: Sys) -> Result<i32> {
    let q = system(sys)?;
    let crit = critical_dimension(&q.exponents(), llab_core::critdim::DEFAULT_REL_TOL)?;
    let tag = classify_regime(&q, crit.root)?;
    let d = q.derive();
    println!("regime,{tag}");
    for (name, v) in [
        ("n_crit", crit.root),
        ("lambda", d.lambda),
        ("mu", d.mu),
        ("delta", d.delta),
        ("gamma", d.gamma_coef),
        ("upsilon", d.upsilon),
        ("c_const", d.c_const),
        ("sobolev_threshold", d.sobolev_threshold),
        ("bracket_hi", d.bracket_hi),
    ] {
        println!("{name},{}", format_number(v));
    }
    Ok(0)
}

pub(crate) fn monotone(
    sys: Sys,
    kind: FieldKind,
    (a, b): (f64, f64),
    modes: &[BumpMode],
    (r_min, r_max, points): (f64, f64, usize),
    out: Option<&PathBuf>,
) -> Result<i32> {
    let q = system(sys)?;
    let grid = log_grid(r_min, r_max, points)?;
    let (field, note, hi) = match kind {
        FieldKind::Singular => (
            singular_field(&q, &grid)?,
            "field=singular".to_string(),
            r_max,
        ),
        FieldKind::Bump => (
            bump_field(&q, &grid, modes)?,
            "field=bump".to_string(),
            r_max,
        ),
        FieldKind::Shoot => {
            let s = shoot_field(&q, a, b, &grid)?;
            let hi = match s.terminated {
                Termination::ReachedRmax => r_max,
                Termination::BlowupDetected => 0.9 * s.termination_radius,
            };
            let note = format!(
                "field=shoot,a={},b={},terminated={},termination_radius={}",
                format_number(a),
                format_number(b),
                s.terminated,
                format_number(s.termination_radius)
            );
            (s.field, note, hi)
        }
    };
    let rep = monotonicity_on_nodes(&field, r_min, hi)?;
    if rep.is_empty() {
        return Err(anyhow!(
            "no grid radius admits the difference stencils; use more points"
        ));
    }
    let mut w = sink(out)?;
    writeln!(w, "# {note}")?;
    rep.write_csv(&mut w)?;
    w.flush()?;
    Ok(0)
}

pub(crate) fn shoot(
    sys: Sys,
    (a, b): (f64, f64),
    (r_min, r_max, points): (f64, f64, usize),
    out: Option<&PathBuf>,
) -> Result<i32> {
    let q = system(sys)?;
    let grid = log_grid(r_min, r_max, points)?;
    let s = shoot_field(&q, a, b, &grid)?;
    let meta = format!(
        "N={},p={},alpha={},beta={},a={},b={},terminated={},termination_radius={}",
        format_number(q.n()),
        format_number(q.p()),
        format_number(q.alpha()),
        format_number(q.beta()),
        format_number(a),
        format_number(b),
        s.terminated,
        format_number(s.termination_radius)
    );
    let mut w = sink(out)?;
    write_field_csv(&s.field, &[meta], &mut w)?;
    w.flush()?;
    Ok(0)
}
