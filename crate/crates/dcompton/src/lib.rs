//! Nonlinear single- and double-Compton scattering of an electron in a finite
//! pulsed plane wave.
//!
//! The crate computes differential one- and two-photon emission
//! probabilities, photon polarization (generalized Stokes parameters) and
//! two-photon entanglement (concurrence), with the two-photon amplitude split
//! exactly into the channels where the intermediate electron is on shell or
//! off shell.
//!
//! Everything internal works in natural units with energies and momenta in
//! units of the electron mass; the laser travels along -z and the electron
//! along +z (head-on geometry).
//!
//! Entry points:
//! - [`kinematics::TwoPhotonGeometry`] / [`amplitude::double_compton`] for a
//!   single spectral point,
//! - [`observables::TwoPhotonDensityMatrix`] for probability, concurrence and
//!   Stokes parameters,
//! - [`scan::ScanConfig`] with [`scan::run_scan2`], [`scan::run_scan1`],
//!   [`scan::run_ratio`] for grid scans and tabulated output,
//! - the `dcompton` binary for the command-line workflow.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod algebra;
pub mod amplitude;
pub mod cmatrix;
pub mod error;
pub mod kinematics;
pub mod observables;
pub mod pulse;
pub mod quadrature;
pub mod scan;
pub mod selfcheck;

pub use error::Error;

/// Fine-structure constant.
pub const ALPHA: f64 = 1.0 / 137.035999;

/// Electron mass in eV, used only at the configuration boundary.
pub const ELECTRON_MASS_EV: f64 = 510_998.95;

/// |e| = sqrt(4 pi alpha) in Heaviside-Lorentz natural units.
pub fn elementary_charge() -> f64 {
    (4.0 * std::f64::consts::PI * ALPHA).sqrt()
}

/// Signed electron charge e = -|e|.
pub fn electron_charge() -> f64 {
    -elementary_charge()
}
