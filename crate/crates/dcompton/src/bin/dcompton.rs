//! Command-line front end: spectral scans, the ratio table, single-point
//! reports and the invariant selfcheck. All heavy lifting lives in the
//! library; this binary only resolves configuration and writes files.
//!
//! Exit codes: 0 success, 1 selfcheck failure, 2 configuration error,
//! 3 when more than half of the scanned points are masked.

use clap::{Args, Parser, Subcommand};
use dcompton::observables::{Basis, TwoPhotonDensityMatrix};
use dcompton::quadrature::Channel;
use dcompton::scan::{self, ScanConfig};
use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dcompton", version, about = "Nonlinear single- and double-Compton scattering in a pulsed plane wave: spectra, polarization and entanglement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Every configuration key as an optional override flag; values given here
/// win over the config file.
#[derive(Args, Default)]
struct Overrides {
    /// Plain-text key = value configuration file.
    #[arg(long = "config")]
    config: Option<PathBuf>,
    #[arg(long = "a0")]
    a0: Option<f64>,
    #[arg(long = "omega0_ev")]
    omega0_ev: Option<f64>,
    #[arg(long = "omega0_m")]
    omega0_m: Option<f64>,
    #[arg(long = "gamma0")]
    gamma0: Option<f64>,
    #[arg(long = "delta_phi")]
    delta_phi: Option<f64>,
    #[arg(long = "laser_polarization")]
    laser_polarization: Option<String>,
    #[arg(long = "theta1")]
    theta1: Option<f64>,
    #[arg(long = "theta2")]
    theta2: Option<f64>,
    #[arg(long = "phi1")]
    phi1: Option<f64>,
    #[arg(long = "phi2")]
    phi2: Option<f64>,
    #[arg(long = "w1_min")]
    w1_min: Option<f64>,
    #[arg(long = "w1_max")]
    w1_max: Option<f64>,
    #[arg(long = "w1_count")]
    w1_count: Option<usize>,
    #[arg(long = "w2_min")]
    w2_min: Option<f64>,
    #[arg(long = "w2_max")]
    w2_max: Option<f64>,
    #[arg(long = "w2_count")]
    w2_count: Option<usize>,
    #[arg(long = "theta_min")]
    theta_min: Option<f64>,
    #[arg(long = "theta_max")]
    theta_max: Option<f64>,
    #[arg(long = "theta_count")]
    theta_count: Option<usize>,
    #[arg(long = "omega1_scaled")]
    omega1_scaled: Option<f64>,
    #[arg(long = "omega2_scaled")]
    omega2_scaled: Option<f64>,
    /// Comma-separated: off, on, total.
    #[arg(long = "channels")]
    channels: Option<String>,
    /// Comma-separated: d2w, concurrence, stokes, stokes_full.
    #[arg(long = "observables")]
    observables: Option<String>,
    #[arg(long = "gamma0_list")]
    gamma0_list: Option<String>,
    #[arg(long = "phi1_list")]
    phi1_list: Option<String>,
    #[arg(long = "points_per_period")]
    points_per_period: Option<usize>,
    #[arg(long = "min_points")]
    min_points: Option<usize>,
    #[arg(long = "max_points")]
    max_points: Option<usize>,
    #[arg(long = "rel_tolerance")]
    rel_tolerance: Option<f64>,
    #[arg(long = "workers")]
    workers: Option<usize>,
    #[arg(long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Two-photon spectral scan over the (omega1, omega2) grid.
    Scan2(Overrides),
    /// Single-photon angular-spectral scan.
    Scan1(Overrides),
    /// Off-/on-shell maxima ratio table over gamma0 and phi1 lists.
    Ratio(Overrides),
    /// One spectral point: density matrices, concurrence, full Stokes tensor.
    Point(Overrides),
    /// Run the built-in invariant suite.
    Selfcheck,
}

impl Overrides {
    fn as_map(&self) -> HashMap<String, String> {
        let mut m = HashMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("a0", self.a0.map(|v| v.to_string()));
        put("omega0_ev", self.omega0_ev.map(|v| v.to_string()));
        put("omega0_m", self.omega0_m.map(|v| v.to_string()));
        put("gamma0", self.gamma0.map(|v| v.to_string()));
        put("delta_phi", self.delta_phi.map(|v| v.to_string()));
        put("laser_polarization", self.laser_polarization.clone());
        put("theta1", self.theta1.map(|v| v.to_string()));
        put("theta2", self.theta2.map(|v| v.to_string()));
        put("phi1", self.phi1.map(|v| v.to_string()));
        put("phi2", self.phi2.map(|v| v.to_string()));
        put("w1_min", self.w1_min.map(|v| v.to_string()));
        put("w1_max", self.w1_max.map(|v| v.to_string()));
        put("w1_count", self.w1_count.map(|v| v.to_string()));
        put("w2_min", self.w2_min.map(|v| v.to_string()));
        put("w2_max", self.w2_max.map(|v| v.to_string()));
        put("w2_count", self.w2_count.map(|v| v.to_string()));
        put("theta_min", self.theta_min.map(|v| v.to_string()));
        put("theta_max", self.theta_max.map(|v| v.to_string()));
        put("theta_count", self.theta_count.map(|v| v.to_string()));
        put("omega1_scaled", self.omega1_scaled.map(|v| v.to_string()));
        put("omega2_scaled", self.omega2_scaled.map(|v| v.to_string()));
        put("channels", self.channels.clone());
        put("observables", self.observables.clone());
        put("gamma0_list", self.gamma0_list.clone());
        put("phi1_list", self.phi1_list.clone());
        put(
            "points_per_period",
            self.points_per_period.map(|v| v.to_string()),
        );
        put("min_points", self.min_points.map(|v| v.to_string()));
        put("max_points", self.max_points.map(|v| v.to_string()));
        put("rel_tolerance", self.rel_tolerance.map(|v| v.to_string()));
        put("workers", self.workers.map(|v| v.to_string()));
        put(
            "output",
            self.output.as_ref().map(|v| v.display().to_string()),
        );
        m
    }

    fn resolve(&self) -> Result<ScanConfig, dcompton::Error> {
        let mut cfg = ScanConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| {
                dcompton::Error::Config(format!("cannot read {}: {e}", path.display()))
            })?;
            cfg.apply(&ScanConfig::parse_file(&text)?)?;
        }
        cfg.apply(&self.as_map())?;
        Ok(cfg)
    }
}

fn config_fail(e: dcompton::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn run_scan2(ov: &Overrides) -> ExitCode {
    let cfg = match ov.resolve() {
        Ok(c) => c,
        Err(e) => return config_fail(e),
    };
    let rows = match scan::run_scan2(&cfg) {
        Ok(r) => r,
        Err(e) => return config_fail(e),
    };
    if let Err(e) = write_outputs(&cfg, "scan2", |w| {
        scan::write_scan2_csv(&rows, &cfg.observables, w)
    }) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let frac = scan::masked_fraction(&rows);
    eprintln!(
        "scan2: {} rows -> {} ({:.1}% masked)",
        rows.len(),
        cfg.output.display(),
        100.0 * frac
    );
    if frac > 0.5 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_scan1(ov: &Overrides) -> ExitCode {
    let cfg = match ov.resolve() {
        Ok(c) => c,
        Err(e) => return config_fail(e),
    };
    let rows = match scan::run_scan1(&cfg) {
        Ok(r) => r,
        Err(e) => return config_fail(e),
    };
    if let Err(e) = write_outputs(&cfg, "scan1", |w| scan::write_scan1_csv(&rows, w)) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let masked = rows.iter().filter(|r| r.masked).count();
    eprintln!(
        "scan1: {} rows -> {} ({masked} masked)",
        rows.len(),
        cfg.output.display()
    );
    if 2 * masked > rows.len() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_ratio(ov: &Overrides) -> ExitCode {
    let cfg = match ov.resolve() {
        Ok(c) => c,
        Err(e) => return config_fail(e),
    };
    let rows = match scan::run_ratio(&cfg) {
        Ok(r) => r,
        Err(e) => return config_fail(e),
    };
    if let Err(e) = write_outputs(&cfg, "ratio", |w| scan::write_ratio_csv(&rows, w)) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for r in &rows {
        eprintln!(
            "ratio gamma0={:<8} phi1={:<6.3}: max_off {:.3e}, max_on {:.3e}, log10 R = {}",
            r.gamma0,
            r.phi1,
            r.max_off,
            r.max_on,
            r.log10_ratio
                .map(|l| format!("{l:+.2}"))
                .unwrap_or_else(|| "masked".into())
        );
    }
    if rows.iter().filter(|r| r.masked).count() * 2 > rows.len() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_point(ov: &Overrides) -> ExitCode {
    let cfg = match ov.resolve() {
        Ok(c) => c,
        Err(e) => return config_fail(e),
    };
    let pulse = match cfg.pulse() {
        Ok(p) => p,
        Err(e) => return config_fail(e),
    };
    let (u1, u2) = (cfg.omega1_scaled, cfg.omega2_scaled);
    println!("point: omega1 = {u1} x 4 gamma0^2 omega0, omega2 = {u2} x 4 gamma0^2 omega0");
    let wsc = match cfg.omega_scale() {
        Ok(w) => w,
        Err(e) => return config_fail(e),
    };
    let (th1, th2) = cfg.thetas();
    let geo = match dcompton::kinematics::TwoPhotonGeometry::new(
        &pulse,
        cfg.gamma0,
        dcompton::kinematics::PhotonSpec {
            omega: u1 * wsc,
            theta: th1,
            phi: cfg.phi1,
        },
        dcompton::kinematics::PhotonSpec {
            omega: u2 * wsc,
            theta: th2,
            phi: cfg.phi2,
        },
    ) {
        Ok(g) => g,
        Err(e) => return config_fail(e),
    };
    let n = match cfg.quadrature.grid_points(pulse.delta_phi, geo.kappa_max()) {
        Ok(n) => n,
        Err(e) => return config_fail(e),
    };
    let grid = dcompton::pulse::PulseGrid::new(&pulse, n);
    let table = match dcompton::quadrature::IntegralTable::new(&geo, &grid) {
        Ok(t) => t,
        Err(e) => return config_fail(e),
    };
    let amps = match dcompton::amplitude::double_compton(&pulse, &geo, &grid, &table) {
        Ok(a) => a,
        Err(e) => return config_fail(e),
    };
    println!(
        "recoil parameter r = {:.6e}, phase grid {n} points",
        geo.recoil()
    );
    for ch in [Channel::Off, Channel::On, Channel::Total] {
        let dm = TwoPhotonDensityMatrix::from_amplitudes(&geo, &amps.channel(ch));
        let d2w = dm.probability();
        println!("\n[{}]", ch.as_str());
        println!(
            "  d2W = {d2w:.6e}   omega0^2 d2W = {:.6e}",
            pulse.omega0.powi(2) * d2w
        );
        if d2w < dcompton::observables::MIN_TRACE {
            println!("  below trace guard; polarization and concurrence undefined");
            continue;
        }
        match dm.concurrence() {
            Ok(c) => println!("  concurrence C = {c:.6}"),
            Err(e) => println!("  concurrence undefined: {e}"),
        }
        if let Ok(hv) = dm.to_basis(Basis::HV) {
            let rho = hv.normalized().unwrap();
            println!("  normalized density matrix (HV basis), rows:");
            for i in 0..4 {
                let row: Vec<String> = (0..4)
                    .map(|j| format!("{:+.4}{:+.4}i", rho.0[i][j].re, rho.0[i][j].im))
                    .collect();
                println!("    [{}]", row.join(", "));
            }
        }
        if let Ok(st) = dm.stokes_tensor() {
            println!("  stokes tensor s[l1][l2]:");
            for l1 in 0..4 {
                let row: Vec<String> =
                    (0..4).map(|l2| format!("{:+.4}", st.s[l1][l2])).collect();
                println!("    [{}]", row.join(", "));
            }
            println!(
                "  two-entangled degree P = {:.6}",
                st.two_entangled_degree()
            );
        }
    }
    ExitCode::SUCCESS
}

fn write_outputs<F>(cfg: &ScanConfig, command: &str, write: F) -> std::io::Result<()>
where
    F: FnOnce(std::io::BufWriter<std::fs::File>) -> std::io::Result<()>,
{
    if let Some(dir) = cfg.output.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let f = std::fs::File::create(&cfg.output)?;
    write(std::io::BufWriter::new(f))?;
    scan::write_metadata(cfg, command, &cfg.output)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Scan2(ov) => run_scan2(&ov),
        Command::Scan1(ov) => run_scan1(&ov),
        Command::Ratio(ov) => run_ratio(&ov),
        Command::Point(ov) => run_point(&ov),
        Command::Selfcheck => {
            if dcompton::selfcheck::run_selfcheck() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
