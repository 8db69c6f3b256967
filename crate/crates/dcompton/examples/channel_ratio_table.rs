//! Tabulates the ratio of off-shell to on-shell spectral maxima against the
//! electron energy, for photon azimuths orthogonal and parallel to the laser
//! polarization. The parallel orientation suppresses the unentangled
//! on-shell channel by several orders of magnitude.
//!
//!     cargo run --release --example channel_ratio_table

use dcompton::scan::{run_ratio, ScanConfig};
use std::f64::consts::PI;

fn main() {
    let cfg = ScanConfig {
        omega0_ev: Some(1.6),
        omega0_m: None,
        gamma0_list: vec![10.0, 100.0],
        phi1_list: vec![PI / 2.0, 0.0],
        w1_count: 48,
        w2_count: 48,
        ..ScanConfig::default()
    };
    println!("a0 = {}, omega0 = 1.6 eV, delta_phi = {}", cfg.a0, cfg.delta_phi);
    println!("{:>8} {:>8} {:>12} {:>12} {:>10}", "gamma0", "phi1", "max off", "max on", "log10 R");
    for row in run_ratio(&cfg).unwrap() {
        println!(
            "{:>8.1} {:>8.3} {:>12.3e} {:>12.3e} {:>10}",
            row.gamma0,
            row.phi1,
            row.max_off,
            row.max_on,
            row.log10_ratio
                .map(|l| format!("{l:+.2}"))
                .unwrap_or_else(|| "masked".into()),
        );
    }
}
