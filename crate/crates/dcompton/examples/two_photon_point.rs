//! Evaluates one two-photon spectral point and prints probability,
//! concurrence and the Stokes tensor for the off-shell, on-shell and total
//! channels.
//!
//!     cargo run --release --example two_photon_point

use dcompton::amplitude::double_compton;
use dcompton::kinematics::{PhotonSpec, TwoPhotonGeometry};
use dcompton::observables::TwoPhotonDensityMatrix;
use dcompton::pulse::{LaserPolarization, LaserPulse, PulseGrid};
use dcompton::quadrature::{Channel, IntegralTable, QuadratureSettings};
use std::f64::consts::PI;

fn main() {
    // 36 MeV electron against an 800 nm class laser at a0 = 0.1
    let pulse = LaserPulse::with_polarization(0.1, 1e-5, 40.0, LaserPolarization::Linear);
    let gamma0 = 70.71067811865476;
    let doppler = 4.0 * gamma0 * gamma0 * pulse.omega0;
    let theta = 1.0 / gamma0;

    // both photons at 1/gamma0 off axis, azimuths orthogonal to the laser
    // polarization, frequencies just below the two-photon resonance
    let geo = TwoPhotonGeometry::new(
        &pulse,
        gamma0,
        PhotonSpec { omega: 0.55 * doppler, theta, phi: PI / 2.0 },
        PhotonSpec { omega: 0.40 * doppler, theta, phi: 1.5 * PI },
    )
    .unwrap();

    let n = QuadratureSettings::default()
        .grid_points(pulse.delta_phi, geo.kappa_max())
        .unwrap();
    let grid = PulseGrid::new(&pulse, n);
    let table = IntegralTable::new(&geo, &grid).unwrap();
    let amps = double_compton(&pulse, &geo, &grid, &table).unwrap();

    println!("recoil parameter r = {:.3e}", geo.recoil());
    for ch in [Channel::Off, Channel::On, Channel::Total] {
        let dm = TwoPhotonDensityMatrix::from_amplitudes(&geo, &amps.channel(ch));
        let what = pulse.omega0.powi(2) * dm.probability();
        let c = dm.concurrence().unwrap();
        let st = dm.stokes_tensor().unwrap();
        println!(
            "{:>5}: omega0^2 d2W = {what:.3e}  C = {c:.4}  s11 = {:+.4}  s22 = {:+.4}  s33 = {:+.4}",
            ch.as_str(),
            st.s[1][1],
            st.s[2][2],
            st.s[3][3]
        );
    }
    println!("\nthe on-shell pair is unentangled and shares the laser polarization;");
    println!("the off-shell pair is strongly entangled with correlated circular polarization");
}
