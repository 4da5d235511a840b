//! Zonal mode-decomposed fields on log-radial grids.

mod field;
mod grid;
pub mod io;
mod shoot;
mod sphere;

pub use field::{
    BumpMode, Field, JET_ORDER, LogBumpMode, ModeJet, ZonalMode, bump_field, companion_v,
    log_bump_field, power_field, rescaled, singular_field,
};
pub use grid::{MIN_POINTS, NODE_TOL, RadialGrid, geometric_points, log_grid};
pub use shoot::{
    BLOWUP_THRESHOLD, MAX_INNER_RADIUS, ShootingResult, Termination, shoot, shoot_refined,
};
pub use sphere::{
    ANGULAR_NODES, AngularBasis, eigenvalue, gegenbauer, gegenbauer_jet, laplace_beltrami_defect,
    sphere_area, sphere_moment,
};
