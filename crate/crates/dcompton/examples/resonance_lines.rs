//! Prints the s-photon absorption resonance curves omega2(omega1) used as
//! overlays on the two-photon spectra, including the intensity red-shift
//! from the laser-dressed electron momentum.
//!
//!     cargo run --release --example resonance_lines

use dcompton::kinematics::{resonance_frequency, PhotonSpec};
use dcompton::pulse::{LaserPolarization, LaserPulse};
use std::f64::consts::PI;

fn main() {
    let pulse = LaserPulse::with_polarization(0.1, 1e-5, 40.0, LaserPolarization::Linear);
    let gamma0 = 70.71067811865476;
    let doppler = 4.0 * gamma0 * gamma0 * pulse.omega0;
    let theta = 1.0 / gamma0;

    println!("# omega1_scaled  s=1  s=2  s=3  s=4   (omega2 in units of 4 gamma0^2 omega0)");
    for i in 0..=20 {
        let u1 = 0.05 + 1.05 * i as f64 / 20.0;
        let q1 = PhotonSpec {
            omega: u1 * doppler,
            theta,
            phi: PI / 2.0,
        };
        let mut line = format!("{u1:14.3}");
        for s in 1..=4 {
            let w2 = resonance_frequency(s, &q1, theta, 1.5 * PI, &pulse, gamma0)
                .map(|w| w / doppler)
                .unwrap_or(f64::NAN);
            line.push_str(&format!(" {w2:8.4}"));
        }
        println!("{line}");
    }
}
