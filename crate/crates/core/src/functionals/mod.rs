//! Energies, the monotonicity functional `M(r)`, identity residuals and
//! stability quadratic forms evaluated on discrete fields.

mod balance;
mod energy;
mod monotonicity;
mod report;
mod stability;
mod surface;

pub use balance::{energy_identity_residual, pohozaev_residual};
pub use energy::{annulus_energy, ball_energy, energy_truncation};
pub use monotonicity::{
    MonotonicityReport, monotonicity_curve, monotonicity_on_nodes, monotonicity_value, scaling_gap,
};
pub use report::ResidualReport;
pub use stability::{
    PdeResidual, hardy_rellich_ratio, mode_quadratic, pde_residual, stability_rayleigh,
    system_residual,
};
