//! Total-channel two-photon spectrum with the photons emitted in the laser
//! polarization plane, where classical (Thomson) radiation is suppressed and
//! the entangled off-shell contribution is relatively enhanced. Runs two
//! electron energies for comparison.
//!
//!     cargo run --release --example suppressed_angle_scan

use dcompton::quadrature::Channel;
use dcompton::scan::{run_scan2, write_scan2_csv, ScanConfig};
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

fn main() {
    std::fs::create_dir_all("out").unwrap();
    for gamma0 in [70.71067811865476, 200.0] {
        let theta = (1.0 + 0.1f64 * 0.1).sqrt() / gamma0;
        let cfg = ScanConfig {
            gamma0,
            delta_phi: 60.0,
            theta1: Some(theta),
            theta2: Some(theta),
            phi1: 0.0,
            phi2: std::f64::consts::PI,
            channels: vec![Channel::Total],
            w1_count: 48,
            w2_count: 48,
            output: PathBuf::from(format!("out/suppressed_angle_gamma{gamma0:.0}.csv")),
            ..ScanConfig::default()
        };
        let rows = run_scan2(&cfg).unwrap();
        let f = File::create(&cfg.output).unwrap();
        write_scan2_csv(&rows, &cfg.observables, BufWriter::new(f)).unwrap();
        let high_c = rows.iter().filter(|r| r.concurrence.unwrap_or(0.0) > 0.5).count();
        let peak = rows.iter().filter_map(|r| r.d2w_normalized).fold(0.0, f64::max);
        println!(
            "gamma0 = {gamma0:>6.1}: peak omega0^2 d2W = {peak:.3e}, {high_c} points with C > 0.5 -> {}",
            cfg.output.display()
        );
    }
}
