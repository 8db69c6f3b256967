//! Scan configuration, kinematic grids, parallel spectral scans and
//! deterministic tabular output.
//!
//! Configuration comes from a flat `key = value` text file; every key can be
//! overridden by a command-line flag of the same name. Photon frequencies at
//! the boundary are in units of the double-Doppler scale 4 gamma0^2 omega0;
//! omega0 itself is given either in eV (`omega0_ev`) or in units of the
//! electron mass (`omega0_m`).

use crate::amplitude::{double_compton, single_compton};
use crate::error::Error;
use crate::kinematics::{PhotonSpec, SinglePhotonGeometry, TwoPhotonGeometry};
use crate::observables::{
    SinglePhotonDensityMatrix, StokesTensor, TwoPhotonDensityMatrix,
};
use crate::pulse::{LaserPolarization, LaserPulse, PulseGrid};
use crate::quadrature::{Channel, IntegralTable, QuadratureSettings};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable selecting the worker count (overridden by the
/// `workers` key/flag).
pub const WORKERS_ENV: &str = "DCOMPTON_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StokesSelection {
    None,
    Diagonal,
    Full,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Observables {
    pub d2w: bool,
    pub concurrence: bool,
    pub stokes: StokesSelection,
}

impl Default for Observables {
    fn default() -> Self {
        Observables {
            d2w: true,
            concurrence: true,
            stokes: StokesSelection::Diagonal,
        }
    }
}

/// Full configuration of a scan; see the module docs for unit conventions.
#[derive(Clone, Debug, Serialize)]
pub struct ScanConfig {
    pub a0: f64,
    pub omega0_ev: Option<f64>,
    pub omega0_m: Option<f64>,
    pub gamma0: f64,
    pub delta_phi: f64,
    pub laser_polarization: LaserPolarization,
    pub theta1: Option<f64>,
    pub theta2: Option<f64>,
    pub phi1: f64,
    pub phi2: f64,
    pub w1_min: f64,
    pub w1_max: f64,
    pub w1_count: usize,
    pub w2_min: f64,
    pub w2_max: f64,
    pub w2_count: usize,
    /// Polar-angle grid for single-photon scans, in units of 1/gamma0.
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_count: usize,
    /// Single point evaluation (the `point` verb), in scaled frequency units.
    pub omega1_scaled: f64,
    pub omega2_scaled: f64,
    pub channels: Vec<Channel>,
    pub observables: Observables,
    /// `ratio` verb: electron energies and first-photon azimuths to tabulate.
    pub gamma0_list: Vec<f64>,
    pub phi1_list: Vec<f64>,
    pub quadrature: QuadratureSettings,
    pub workers: usize,
    pub output: PathBuf,
}

impl Default for ScanConfig {
    fn default() -> Self {
        let gamma0 = 70.71067811865476;
        ScanConfig {
            a0: 0.1,
            omega0_ev: None,
            omega0_m: Some(1e-5),
            gamma0,
            delta_phi: 40.0,
            laser_polarization: LaserPolarization::Linear,
            theta1: None,
            theta2: None,
            phi1: PI / 2.0,
            phi2: 1.5 * PI,
            w1_min: 0.0,
            w1_max: 1.1,
            w1_count: 96,
            w2_min: 0.0,
            w2_max: 1.1,
            w2_count: 96,
            theta_min: 0.02,
            theta_max: 2.0,
            theta_count: 32,
            omega1_scaled: 0.5,
            omega2_scaled: 0.5,
            channels: vec![Channel::Off],
            observables: Observables::default(),
            gamma0_list: vec![10.0, 100.0],
            phi1_list: vec![PI / 2.0, 0.0],
            quadrature: QuadratureSettings::default(),
            workers: 0,
            output: PathBuf::from("scan.csv"),
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, key: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| Error::Config(format!("cannot parse '{t}' in key '{key}'")))
        })
        .collect()
}

impl ScanConfig {
    /// Parses a flat `key = value` file (# starts a comment).
    pub fn parse_file(text: &str) -> Result<HashMap<String, String>, Error> {
        let mut map = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(map)
    }

    /// Applies key/value settings on top of the current configuration.
    pub fn apply(&mut self, map: &HashMap<String, String>) -> Result<(), Error> {
        let fp = |v: &str, key: &str| -> Result<f64, Error> {
            v.parse::<f64>()
                .map_err(|_| Error::Config(format!("cannot parse '{v}' for key '{key}'")))
        };
        let ip = |v: &str, key: &str| -> Result<usize, Error> {
            v.parse::<usize>()
                .map_err(|_| Error::Config(format!("cannot parse '{v}' for key '{key}'")))
        };
        for (k, v) in map {
            match k.as_str() {
                "a0" => self.a0 = fp(v, k)?,
                "omega0_ev" => {
                    self.omega0_ev = Some(fp(v, k)?);
                    self.omega0_m = None;
                }
                "omega0_m" => {
                    self.omega0_m = Some(fp(v, k)?);
                    self.omega0_ev = None;
                }
                "gamma0" => self.gamma0 = fp(v, k)?,
                "delta_phi" => self.delta_phi = fp(v, k)?,
                "laser_polarization" => {
                    self.laser_polarization = match v.to_ascii_lowercase().as_str() {
                        "linear" => LaserPolarization::Linear,
                        "circular" => LaserPolarization::Circular,
                        other => {
                            return Err(Error::Config(format!(
                                "unknown laser_polarization '{other}'"
                            )))
                        }
                    }
                }
                "theta1" => self.theta1 = Some(fp(v, k)?),
                "theta2" => self.theta2 = Some(fp(v, k)?),
                "phi1" => self.phi1 = fp(v, k)?,
                "phi2" => self.phi2 = fp(v, k)?,
                "w1_min" => self.w1_min = fp(v, k)?,
                "w1_max" => self.w1_max = fp(v, k)?,
                "w1_count" => self.w1_count = ip(v, k)?,
                "w2_min" => self.w2_min = fp(v, k)?,
                "w2_max" => self.w2_max = fp(v, k)?,
                "w2_count" => self.w2_count = ip(v, k)?,
                "theta_min" => self.theta_min = fp(v, k)?,
                "theta_max" => self.theta_max = fp(v, k)?,
                "theta_count" => self.theta_count = ip(v, k)?,
                "omega1_scaled" => self.omega1_scaled = fp(v, k)?,
                "omega2_scaled" => self.omega2_scaled = fp(v, k)?,
                "channels" => {
                    self.channels = parse_list::<Channel>(v, k)?;
                }
                "observables" => {
                    let mut obs = Observables {
                        d2w: false,
                        concurrence: false,
                        stokes: StokesSelection::None,
                    };
                    for t in v.split(',') {
                        match t.trim().to_ascii_lowercase().as_str() {
                            "d2w" | "d1w" => obs.d2w = true,
                            "concurrence" => obs.concurrence = true,
                            "stokes" | "stokes_diag" => obs.stokes = StokesSelection::Diagonal,
                            "stokes_full" => obs.stokes = StokesSelection::Full,
                            other => {
                                return Err(Error::Config(format!(
                                    "unknown observable '{other}'"
                                )))
                            }
                        }
                    }
                    self.observables = obs;
                }
                "gamma0_list" => self.gamma0_list = parse_list(v, k)?,
                "phi1_list" => self.phi1_list = parse_list(v, k)?,
                "points_per_period" => self.quadrature.points_per_period = ip(v, k)?,
                "min_points" => self.quadrature.min_points = ip(v, k)?,
                "max_points" => self.quadrature.max_points = ip(v, k)?,
                "rel_tolerance" => self.quadrature.rel_tolerance = fp(v, k)?,
                "workers" => self.workers = ip(v, k)?,
                "output" => self.output = PathBuf::from(v),
                other => return Err(Error::Config(format!("unknown key '{other}'"))),
            }
        }
        Ok(())
    }

    /// Laser photon energy in units of the electron mass.
    pub fn omega0(&self) -> Result<f64, Error> {
        match (self.omega0_m, self.omega0_ev) {
            (Some(m), _) => Ok(m),
            (None, Some(ev)) => Ok(ev / crate::ELECTRON_MASS_EV),
            (None, None) => Err(Error::Config("omega0_ev or omega0_m is required".into())),
        }
    }

    pub fn pulse(&self) -> Result<LaserPulse, Error> {
        if !(self.a0 > 0.0 && self.delta_phi > 0.0 && self.gamma0 > 1.0) {
            return Err(Error::Config(
                "a0 and delta_phi must be positive, gamma0 > 1".into(),
            ));
        }
        Ok(LaserPulse::with_polarization(
            self.a0,
            self.omega0()?,
            self.delta_phi,
            self.laser_polarization,
        ))
    }

    /// Polar angles: defaults to 1/gamma0 when not set.
    pub fn thetas(&self) -> (f64, f64) {
        let d = 1.0 / self.gamma0;
        (self.theta1.unwrap_or(d), self.theta2.unwrap_or(d))
    }

    /// Frequency scale 4 gamma0^2 omega0 of the scan grid.
    pub fn omega_scale(&self) -> Result<f64, Error> {
        Ok(4.0 * self.gamma0 * self.gamma0 * self.omega0()?)
    }

    fn validate_grid(&self) -> Result<(), Error> {
        if self.w1_count < 1 || self.w2_count < 1 {
            return Err(Error::Config("grid counts must be >= 1".into()));
        }
        if !(self.w1_max > self.w1_min && self.w2_max > self.w2_min && self.w1_min >= 0.0) {
            return Err(Error::Config("frequency ranges must be positive".into()));
        }
        if self.channels.is_empty() {
            return Err(Error::Config("at least one channel is required".into()));
        }
        Ok(())
    }

    /// Left-open uniform grid value: index i of `count` points over
    /// (min, max].
    pub fn grid_value(min: f64, max: f64, count: usize, i: usize) -> f64 {
        min + (max - min) * (i + 1) as f64 / count as f64
    }

    /// Effective worker count (0 resolves the environment variable, then all
    /// cores).
    pub fn effective_workers(&self) -> usize {
        if self.workers > 0 {
            return self.workers;
        }
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(0)
    }
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool")
}

/// One output row of a two-photon scan.
#[derive(Clone, Debug)]
pub struct SpectralRow {
    pub omega1_scaled: f64,
    pub omega2_scaled: f64,
    pub channel: Channel,
    pub d2w_normalized: Option<f64>,
    pub concurrence: Option<f64>,
    pub stokes: Option<StokesTensor>,
    pub masked: bool,
}

impl SpectralRow {
    fn masked(u1: f64, u2: f64, channel: Channel) -> Self {
        SpectralRow {
            omega1_scaled: u1,
            omega2_scaled: u2,
            channel,
            d2w_normalized: None,
            concurrence: None,
            stokes: None,
            masked: true,
        }
    }
}

/// Evaluates all requested channels of one spectral point.
pub fn evaluate_point(
    cfg: &ScanConfig,
    pulse: &LaserPulse,
    u1: f64,
    u2: f64,
) -> Vec<SpectralRow> {
    let wsc = match cfg.omega_scale() {
        Ok(w) => w,
        Err(_) => {
            return cfg
                .channels
                .iter()
                .map(|&ch| SpectralRow::masked(u1, u2, ch))
                .collect()
        }
    };
    let (th1, th2) = cfg.thetas();
    let point = (|| -> Result<Vec<SpectralRow>, Error> {
        let geo = TwoPhotonGeometry::new(
            pulse,
            cfg.gamma0,
            PhotonSpec {
                omega: u1 * wsc,
                theta: th1,
                phi: cfg.phi1,
            },
            PhotonSpec {
                omega: u2 * wsc,
                theta: th2,
                phi: cfg.phi2,
            },
        )?;
        let n = cfg
            .quadrature
            .grid_points(pulse.delta_phi, geo.kappa_max())?;
        let grid = PulseGrid::new(pulse, n);
        let table = IntegralTable::new(&geo, &grid)?;
        let amps = double_compton(pulse, &geo, &grid, &table)?;
        let omega0 = pulse.omega0;
        let mut rows = Vec::with_capacity(cfg.channels.len());
        for &ch in &cfg.channels {
            let dm = TwoPhotonDensityMatrix::from_amplitudes(&geo, &amps.channel(ch));
            let d2w = dm.probability();
            let mut row = SpectralRow {
                omega1_scaled: u1,
                omega2_scaled: u2,
                channel: ch,
                d2w_normalized: cfg.observables.d2w.then_some(omega0 * omega0 * d2w),
                concurrence: None,
                stokes: None,
                masked: false,
            };
            // polarization and entanglement are undefined below the trace guard
            if d2w >= crate::observables::MIN_TRACE {
                if cfg.observables.concurrence {
                    row.concurrence = dm.concurrence().ok();
                }
                if cfg.observables.stokes != StokesSelection::None {
                    row.stokes = dm.stokes_tensor().ok();
                }
            }
            rows.push(row);
        }
        Ok(rows)
    })();
    point.unwrap_or_else(|_| {
        cfg.channels
            .iter()
            .map(|&ch| SpectralRow::masked(u1, u2, ch))
            .collect()
    })
}

/// Two-photon spectral scan over the (omega1, omega2) grid; rows are ordered
/// omega1 outer, omega2 inner, channel innermost, independent of the worker
/// count.
pub fn run_scan2(cfg: &ScanConfig) -> Result<Vec<SpectralRow>, Error> {
    cfg.validate_grid()?;
    let pulse = cfg.pulse()?;
    cfg.omega_scale()?;
    let points: Vec<(f64, f64)> = (0..cfg.w1_count)
        .flat_map(|i| {
            let u1 = ScanConfig::grid_value(cfg.w1_min, cfg.w1_max, cfg.w1_count, i);
            (0..cfg.w2_count).map(move |j| {
                (u1, ScanConfig::grid_value(cfg.w2_min, cfg.w2_max, cfg.w2_count, j))
            })
        })
        .collect();
    let rows: Vec<Vec<SpectralRow>> = pool(cfg.effective_workers()).install(|| {
        points
            .par_iter()
            .map(|&(u1, u2)| evaluate_point(cfg, &pulse, u1, u2))
            .collect()
    });
    Ok(rows.into_iter().flatten().collect())
}

/// One output row of a single-photon scan.
#[derive(Clone, Debug)]
pub struct Scan1Row {
    pub omega_scaled: f64,
    /// Polar angle in units of 1/gamma0.
    pub theta: f64,
    pub d1w_normalized: Option<f64>,
    pub s1: Option<f64>,
    pub s2: Option<f64>,
    pub s3: Option<f64>,
    pub p: Option<f64>,
    pub masked: bool,
}

/// Single-photon angular-spectral scan at azimuth `phi1`; the theta grid is
/// in units of 1/gamma0.
pub fn run_scan1(cfg: &ScanConfig) -> Result<Vec<Scan1Row>, Error> {
    if cfg.w1_count < 1 || cfg.theta_count < 1 {
        return Err(Error::Config("grid counts must be >= 1".into()));
    }
    let pulse = cfg.pulse()?;
    let wsc = cfg.omega_scale()?;
    let points: Vec<(f64, f64)> = (0..cfg.w1_count)
        .flat_map(|i| {
            let u = ScanConfig::grid_value(cfg.w1_min, cfg.w1_max, cfg.w1_count, i);
            (0..cfg.theta_count).map(move |j| {
                let t = if cfg.theta_count == 1 {
                    cfg.theta_min
                } else {
                    cfg.theta_min
                        + (cfg.theta_max - cfg.theta_min) * j as f64
                            / (cfg.theta_count - 1) as f64
                };
                (u, t)
            })
        })
        .collect();
    let rows: Vec<Scan1Row> = pool(cfg.effective_workers()).install(|| {
        points
            .par_iter()
            .map(|&(u, tg)| {
                let theta = tg / cfg.gamma0;
                let masked = Scan1Row {
                    omega_scaled: u,
                    theta: tg,
                    d1w_normalized: None,
                    s1: None,
                    s2: None,
                    s3: None,
                    p: None,
                    masked: true,
                };
                let out = (|| -> Result<Scan1Row, Error> {
                    let geo = SinglePhotonGeometry::new(
                        &pulse,
                        cfg.gamma0,
                        PhotonSpec {
                            omega: u * wsc,
                            theta,
                            phi: cfg.phi1,
                        },
                    )?;
                    if geo.coeffs.kappa.abs() < crate::quadrature::KAPPA_MIN {
                        return Err(Error::SoftCollinear);
                    }
                    let n = cfg
                        .quadrature
                        .grid_points(pulse.delta_phi, geo.coeffs.kappa.abs())?;
                    let grid = PulseGrid::new(&pulse, n);
                    let amp = single_compton(&pulse, &geo, &grid)?;
                    let dm = SinglePhotonDensityMatrix::from_amplitudes(&geo, &amp);
                    let d1w = dm.probability();
                    let mut row = Scan1Row {
                        omega_scaled: u,
                        theta: tg,
                        d1w_normalized: Some(pulse.omega0 * d1w),
                        s1: None,
                        s2: None,
                        s3: None,
                        p: None,
                        masked: false,
                    };
                    if d1w >= crate::observables::MIN_TRACE {
                        if let Ok((s, p)) = dm.stokes() {
                            row.s1 = Some(s[0]);
                            row.s2 = Some(s[1]);
                            row.s3 = Some(s[2]);
                            row.p = Some(p);
                        }
                    }
                    Ok(row)
                })();
                out.unwrap_or(masked)
            })
            .collect()
    });
    Ok(rows)
}

/// One row of the off/on channel-maxima ratio table.
#[derive(Clone, Debug)]
pub struct RatioRow {
    pub gamma0: f64,
    pub phi1: f64,
    pub max_off: f64,
    pub max_on: f64,
    pub ratio: Option<f64>,
    pub log10_ratio: Option<f64>,
    pub masked: bool,
}

/// Ratio of off- and on-shell grid maxima per (gamma0, phi1) with
/// theta1 = theta2 = 1/gamma0 and phi2 = phi1 + pi.
pub fn run_ratio(cfg: &ScanConfig) -> Result<Vec<RatioRow>, Error> {
    let mut out = Vec::new();
    for &g in &cfg.gamma0_list {
        for &p1 in &cfg.phi1_list {
            let mut sub = cfg.clone();
            sub.gamma0 = g;
            sub.theta1 = Some(1.0 / g);
            sub.theta2 = Some(1.0 / g);
            sub.phi1 = p1;
            sub.phi2 = p1 + PI;
            sub.channels = vec![Channel::Off, Channel::On];
            sub.observables = Observables {
                d2w: true,
                concurrence: false,
                stokes: StokesSelection::None,
            };
            let rows = run_scan2(&sub)?;
            let max_of = |ch: Channel| -> f64 {
                rows.iter()
                    .filter(|r| r.channel == ch)
                    .filter_map(|r| r.d2w_normalized)
                    .fold(0.0, f64::max)
            };
            let (max_off, max_on) = (max_of(Channel::Off), max_of(Channel::On));
            let ratio = (max_on > 0.0).then_some(max_off / max_on);
            out.push(RatioRow {
                gamma0: g,
                phi1: p1,
                max_off,
                max_on,
                ratio,
                log10_ratio: ratio.map(f64::log10),
                masked: ratio.is_none(),
            });
        }
    }
    Ok(out)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.11e}")).unwrap_or_default()
}

/// Writes the two-photon scan CSV with a fixed header; masked rows keep their
/// coordinates and carry empty observable fields.
pub fn write_scan2_csv<W: Write>(
    rows: &[SpectralRow],
    obs: &Observables,
    mut w: W,
) -> std::io::Result<()> {
    let mut header = vec!["omega1_scaled", "omega2_scaled", "channel"];
    if obs.d2w {
        header.push("d2w_normalized");
    }
    if obs.concurrence {
        header.push("concurrence");
    }
    let mut stokes_cols: Vec<String> = Vec::new();
    match obs.stokes {
        StokesSelection::None => {}
        StokesSelection::Diagonal => {
            for l in 1..4 {
                stokes_cols.push(format!("s{l}{l}"));
            }
        }
        StokesSelection::Full => {
            for l1 in 0..4 {
                for l2 in 0..4 {
                    stokes_cols.push(format!("s{l1}{l2}"));
                }
            }
        }
    }
    let header: Vec<String> = header
        .into_iter()
        .map(String::from)
        .chain(stokes_cols.iter().cloned())
        .chain(std::iter::once("masked".to_string()))
        .collect();
    writeln!(w, "{}", header.join(","))?;
    for r in rows {
        let mut fields = vec![
            format!("{:.11e}", r.omega1_scaled),
            format!("{:.11e}", r.omega2_scaled),
            r.channel.as_str().to_string(),
        ];
        if obs.d2w {
            fields.push(fmt_opt(r.d2w_normalized));
        }
        if obs.concurrence {
            fields.push(fmt_opt(r.concurrence));
        }
        match obs.stokes {
            StokesSelection::None => {}
            StokesSelection::Diagonal => {
                for l in 1..4 {
                    fields.push(fmt_opt(r.stokes.as_ref().map(|s| s.s[l][l])));
                }
            }
            StokesSelection::Full => {
                for l1 in 0..4 {
                    for l2 in 0..4 {
                        fields.push(fmt_opt(r.stokes.as_ref().map(|s| s.s[l1][l2])));
                    }
                }
            }
        }
        fields.push(if r.masked { "true" } else { "false" }.to_string());
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn write_scan1_csv<W: Write>(rows: &[Scan1Row], mut w: W) -> std::io::Result<()> {
    writeln!(
        w,
        "omega_scaled,theta_per_gamma0,d1w_normalized,s1,s2,s3,p,masked"
    )?;
    for r in rows {
        writeln!(
            w,
            "{:.11e},{:.11e},{},{},{},{},{},{}",
            r.omega_scaled,
            r.theta,
            fmt_opt(r.d1w_normalized),
            fmt_opt(r.s1),
            fmt_opt(r.s2),
            fmt_opt(r.s3),
            fmt_opt(r.p),
            r.masked
        )?;
    }
    Ok(())
}

pub fn write_ratio_csv<W: Write>(rows: &[RatioRow], mut w: W) -> std::io::Result<()> {
    writeln!(
        w,
        "gamma0,phi1,max_d2w_off,max_d2w_on,ratio,log10_ratio,masked"
    )?;
    for r in rows {
        writeln!(
            w,
            "{:.11e},{:.11e},{:.11e},{:.11e},{},{},{}",
            r.gamma0,
            r.phi1,
            r.max_off,
            r.max_on,
            fmt_opt(r.ratio),
            fmt_opt(r.log10_ratio),
            r.masked
        )?;
    }
    Ok(())
}

/// JSON sidecar with the fully resolved configuration next to the CSV.
pub fn write_metadata(cfg: &ScanConfig, command: &str, path: &Path) -> std::io::Result<()> {
    #[derive(Serialize)]
    struct Meta<'a> {
        command: &'a str,
        version: &'a str,
        config: &'a ScanConfig,
    }
    let meta = Meta {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
    };
    let mut os = path.as_os_str().to_owned();
    os.push(".meta.json");
    let f = std::fs::File::create(PathBuf::from(os))?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(f), &meta)?;
    Ok(())
}

/// Fraction of masked rows, for the exit-code policy.
pub fn masked_fraction(rows: &[SpectralRow]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    rows.iter().filter(|r| r.masked).count() as f64 / rows.len() as f64
}
