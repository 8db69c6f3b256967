//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `cargo test --test acceptance -- --nocapture` for the report).
//!
//! Covers the published ratio table and channel separation, resonance ridge
//! placement, the entanglement/polarization structure of the two channels,
//! single-photon polarization limits, the independent quadrature and
//! amplitude oracles, the quantum-information fixed points, and physical
//! invariants under kinematic fuzzing.

use dcompton::algebra::CFourVector;
use dcompton::amplitude::{
    double_compton, double_compton_on_factorized, double_compton_with_polarizations,
    polarization_basis_for, single_compton,
};
use dcompton::cmatrix::{C64, C_ONE, C_ZERO, Mat2, Mat4};
use dcompton::kinematics::{resonance_frequency, PhotonSpec, SinglePhotonGeometry, TwoPhotonGeometry};
use dcompton::observables::{concurrence_of, SinglePhotonDensityMatrix, TwoPhotonDensityMatrix};
use dcompton::pulse::{LaserPolarization, LaserPulse, PulseGrid};
use dcompton::quadrature::{
    bruteforce, Channel, IntegralTable, QuadratureSettings, UpsilonKey, AMPLITUDE_KEYS,
};
use dcompton::scan::{run_ratio, run_scan2, ScanConfig};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::OnceLock;

const GAMMA0: f64 = 70.71067811865476;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!("{} {criterion}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{criterion}: {detail}");
}

/// Shared 96x96 spectral map at the orthogonal-azimuth geometry
/// (a0 = 0.1, omega0/m = 1e-5, delta_phi = 40, theta = 1/gamma0).
struct SpectralMap {
    us: Vec<f64>,
    what_off: Vec<Vec<f64>>,
    what_on: Vec<Vec<f64>>,
    what_tot: Vec<Vec<f64>>,
    conc_off: Vec<Vec<f64>>,
    conc_on: Vec<Vec<f64>>,
    s33_off: Vec<Vec<f64>>,
}

fn spectral_map() -> &'static SpectralMap {
    static MAP: OnceLock<SpectralMap> = OnceLock::new();
    MAP.get_or_init(|| {
        let n = 96;
        let cfg = ScanConfig {
            channels: vec![Channel::Off, Channel::On, Channel::Total],
            ..ScanConfig::default()
        };
        let rows = run_scan2(&cfg).expect("scan");
        let us: Vec<f64> = (0..n).map(|i| ScanConfig::grid_value(0.0, 1.1, n, i)).collect();
        let zeros = || vec![vec![0.0; n]; n];
        let mut map = SpectralMap {
            us,
            what_off: zeros(),
            what_on: zeros(),
            what_tot: zeros(),
            conc_off: zeros(),
            conc_on: zeros(),
            s33_off: zeros(),
        };
        for (idx, row) in rows.iter().enumerate() {
            let point = idx / 3;
            let (i, j) = (point / n, point % n);
            assert!(!row.masked, "unexpected masked point in the spectral map");
            let w = row.d2w_normalized.unwrap();
            match row.channel {
                Channel::Off => {
                    map.what_off[i][j] = w;
                    map.conc_off[i][j] = row.concurrence.unwrap_or(0.0);
                    map.s33_off[i][j] = row.stokes.as_ref().map(|s| s.s[3][3]).unwrap_or(0.0);
                }
                Channel::On => {
                    map.what_on[i][j] = w;
                    map.conc_on[i][j] = row.concurrence.unwrap_or(0.0);
                }
                Channel::Total => map.what_tot[i][j] = w,
            }
        }
        map
    })
}

#[test]
fn criterion_1_ratio_table() {
    let cfg = ScanConfig {
        omega0_ev: Some(1.6),
        omega0_m: None,
        gamma0_list: vec![10.0, 100.0],
        phi1_list: vec![PI / 2.0, 0.0],
        w1_count: 64,
        w2_count: 64,
        ..ScanConfig::default()
    };
    let rows = run_ratio(&cfg).expect("ratio");
    let expected = [
        (10.0, PI / 2.0, -7.0),
        (10.0, 0.0, -4.0),
        (100.0, PI / 2.0, -5.0),
        (100.0, 0.0, -2.0),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (g, p1, order) in expected {
        let row = rows
            .iter()
            .find(|r| r.gamma0 == g && (r.phi1 - p1).abs() < 1e-12)
            .expect("row");
        let log10 = row.log10_ratio.expect("unmasked ratio");
        let ok = (log10 - order).abs() <= 1.0;
        pass &= ok;
        detail.push_str(&format!(
            "gamma0={g} phi1={p1:.2}: log10 R = {log10:+.2} (expect {order:+.0}); "
        ));
    }
    report("criterion 1 (ratio table)", pass, &detail);
}

#[test]
fn criterion_2_five_orders_separation() {
    let map = spectral_map();
    let max_of = |m: &Vec<Vec<f64>>| m.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    let (off, on) = (max_of(&map.what_off), max_of(&map.what_on));
    let log10 = (on / off).log10();
    let pass = (log10 - 5.0).abs() <= 1.0;
    report(
        "criterion 2 (five-orders channel separation)",
        pass,
        &format!("max on {on:.2e} vs max off {off:.2e}: 10^{log10:.2} separation"),
    );

    // non-interference of the channels, reported alongside
    let sum = |m: &Vec<Vec<f64>>| m.iter().flatten().sum::<f64>();
    let interference =
        (sum(&map.what_tot) - sum(&map.what_off) - sum(&map.what_on)).abs() / sum(&map.what_tot);
    println!("       channel interference (aggregate): {interference:.2e}");
    assert!(interference < 0.1);
}

#[test]
fn criterion_3_resonance_ridges() {
    // The finite pulse gives the ridges a width of order 10 cells at this
    // resolution, and near the diagonal the line family merges with its
    // photon-swap mirror; the test therefore measures interior ridge crests
    // carrying at least 10% of their line's peak against the union of the
    // predicted line and its mirror.
    let map = spectral_map();
    let n = map.us.len();
    let pulse = LaserPulse::with_polarization(0.1, 1e-5, 40.0, LaserPolarization::Linear);
    let doppler = 4.0 * GAMMA0 * GAMMA0 * pulse.omega0;
    let theta = 1.0 / GAMMA0;
    // predicted cell index of each line per column, for all s
    let mut line: Vec<Vec<Option<usize>>> = vec![vec![None; n]; 5];
    for s in 1..=4u32 {
        for (i, &u1) in map.us.iter().enumerate() {
            let q1 = PhotonSpec { omega: u1 * doppler, theta, phi: PI / 2.0 };
            if let Ok(w) = resonance_frequency(s, &q1, theta, 1.5 * PI, &pulse, GAMMA0) {
                let w2 = w / doppler;
                let jr = map
                    .us
                    .iter()
                    .enumerate()
                    .min_by(|a, b| (a.1 - w2).abs().partial_cmp(&(b.1 - w2).abs()).unwrap())
                    .unwrap()
                    .0;
                if (map.us[jr] - w2).abs() <= map.us[1] - map.us[0] {
                    line[s as usize][i] = Some(jr);
                }
            }
        }
    }
    // mirror cells: the same lines with the photon roles swapped (transpose)
    let mut allowed: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; 5];
    for s in 1..=4usize {
        for i in 0..n {
            if let Some(jr) = line[s][i] {
                allowed[s][i].push(jr);
            }
            for (j, cell) in line[s].iter().enumerate() {
                if *cell == Some(i) {
                    allowed[s][i].push(j);
                }
            }
        }
    }
    let mut pass = true;
    let mut detail = String::new();
    for s in 1..=4usize {
        let mut crests = Vec::new();
        for i in 0..n {
            let Some(jr) = line[s][i] else { continue };
            if jr < 4 || jr + 4 >= n {
                continue;
            }
            let (lo, hi) = (jr - 4, jr + 4);
            let jmax = (lo..=hi)
                .max_by(|&a, &b| map.what_off[i][a].partial_cmp(&map.what_off[i][b]).unwrap())
                .unwrap();
            // interior strict crest of the cut, not a window-edge slope
            if jmax == lo || jmax == hi {
                continue;
            }
            if map.what_off[i][jmax] < map.what_off[i][jmax - 1]
                || map.what_off[i][jmax] < map.what_off[i][jmax + 1]
            {
                continue;
            }
            let dist = allowed[s][i]
                .iter()
                .map(|&a| (jmax as i64 - a as i64).unsigned_abs())
                .min()
                .unwrap_or(u64::MAX);
            crests.push((map.what_off[i][jmax], dist));
        }
        let peak = crests.iter().map(|c| c.0).fold(0.0f64, f64::max);
        let visible: Vec<u64> = crests
            .iter()
            .filter(|c| c.0 >= 0.1 * peak)
            .map(|c| c.1)
            .collect();
        let within = visible.iter().filter(|&&d| d <= 2).count();
        let ok = !visible.is_empty() && within * 10 >= visible.len() * 9;
        pass &= ok;
        detail.push_str(&format!("s={s}: {within}/{} crests within 2 cells; ", visible.len()));
    }
    report("criterion 3 (resonance ridges)", pass, &detail);
}

fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let rank = |v: &[f64]| -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
        let mut r = vec![0.0; v.len()];
        for (rank, &i) in idx.iter().enumerate() {
            r[i] = rank as f64;
        }
        r
    };
    let (rx, ry) = (rank(x), rank(y));
    let n = x.len() as f64;
    let mean = (n - 1.0) / 2.0;
    let mut num = 0.0;
    let mut dx = 0.0;
    let mut dy = 0.0;
    for i in 0..x.len() {
        num += (rx[i] - mean) * (ry[i] - mean);
        dx += (rx[i] - mean).powi(2);
        dy += (ry[i] - mean).powi(2);
    }
    num / (dx * dy).sqrt()
}

#[test]
fn criterion_4_entanglement_polarization_structure() {
    let map = spectral_map();
    let median = {
        let mut v: Vec<f64> = map.what_off.iter().flatten().copied().collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v[v.len() / 2]
    };
    let mut c_vals = Vec::new();
    let mut s_vals = Vec::new();
    let mut joint = 0usize;
    let mut max_c_on = 0.0f64;
    for i in 0..map.us.len() {
        for j in 0..map.us.len() {
            if map.what_off[i][j] > median {
                c_vals.push(map.conc_off[i][j]);
                s_vals.push(map.s33_off[i][j].abs());
            }
            if map.conc_off[i][j] > 0.9 && map.s33_off[i][j].abs() > 0.9 {
                joint += 1;
            }
            max_c_on = max_c_on.max(map.conc_on[i][j]);
        }
    }
    let corr = spearman(&c_vals, &s_vals);
    let pass = joint > 0 && corr > 0.0 && max_c_on < 1e-2;
    report(
        "criterion 4 (entanglement/polarization structure)",
        pass,
        &format!(
            "{joint} cells with C>0.9 and |s33|>0.9; rank corr {corr:.4}; max on-shell C {max_c_on:.2e}"
        ),
    );
}

#[test]
fn criterion_5_single_compton_polarization() {
    let dphi = 30.0 * PI;
    let stokes_at = |pulse: &LaserPulse, omega: f64, theta: f64| -> [f64; 3] {
        let geo = SinglePhotonGeometry::new(pulse, GAMMA0, PhotonSpec { omega, theta, phi: 0.0 })
            .unwrap();
        let n = QuadratureSettings::default()
            .grid_points(pulse.delta_phi, geo.coeffs.kappa.abs())
            .unwrap();
        let grid = PulseGrid::new(pulse, n);
        let amp = single_compton(pulse, &geo, &grid).unwrap();
        let dm = SinglePhotonDensityMatrix::from_amplitudes(&geo, &amp);
        dm.stokes().unwrap().0
    };
    let fundamental = |pulse: &LaserPulse, theta: f64| -> f64 {
        resonance_frequency(
            1,
            &PhotonSpec { omega: 0.0, theta, phi: 0.0 },
            theta,
            0.0,
            pulse,
            GAMMA0,
        )
        .unwrap()
    };

    let circ = LaserPulse::with_polarization(0.1, 1e-5, dphi, LaserPolarization::Circular);
    let s_axis = stokes_at(&circ, fundamental(&circ, 1e-8), 1e-8);
    let s_off = stokes_at(&circ, fundamental(&circ, 1.0 / GAMMA0), 1.0 / GAMMA0);

    let lin = LaserPulse::with_polarization(0.1, 1e-5, dphi, LaserPolarization::Linear);
    let theta = 1.0 / GAMMA0;
    let s_sub = stokes_at(&lin, 0.15 * fundamental(&lin, theta), theta);

    let ok_axis = (s_axis[2] - 1.0).abs() <= 1e-3;
    let ok_off = s_off[2].abs() < 0.1;
    let ok_sub = (s_sub[0] - 1.0).abs() <= 1e-2;
    report(
        "criterion 5 (single-photon polarization)",
        ok_axis && ok_off && ok_sub,
        &format!(
            "circular on-axis s3 = {:+.5}; at 1/gamma0 s3 = {:+.4}; sub-harmonic s1 = {:+.5}",
            s_axis[2], s_off[2], s_sub[0]
        ),
    );
}

fn orthogonal_point(u1: f64, u2: f64) -> (LaserPulse, TwoPhotonGeometry, PulseGrid, IntegralTable) {
    let pulse = LaserPulse::with_polarization(0.1, 1e-5, 40.0, LaserPolarization::Linear);
    let wsc = 4.0 * GAMMA0 * GAMMA0 * pulse.omega0;
    let geo = TwoPhotonGeometry::new(
        &pulse,
        GAMMA0,
        PhotonSpec { omega: u1 * wsc, theta: 1.0 / GAMMA0, phi: PI / 2.0 },
        PhotonSpec { omega: u2 * wsc, theta: 1.0 / GAMMA0, phi: 1.5 * PI },
    )
    .unwrap();
    let n = QuadratureSettings::default()
        .grid_points(pulse.delta_phi, geo.kappa_max())
        .unwrap();
    let grid = PulseGrid::new(&pulse, n);
    let table = IntegralTable::new(&geo, &grid).unwrap();
    (pulse, geo, grid, table)
}

#[test]
fn criterion_6_oracle_equivalences() {
    let t0 = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (pulse, geo, grid, table) = orthogonal_point(0.55, 0.40);

    // (a) on-shell factorized integrals vs brute-force 2D quadrature
    let mut worst_on_dominant = 0.0f64;
    let mut worst_on_scaled = 0.0f64;
    for ord in 0..2 {
        let o = &geo.orderings[ord];
        let on_scale = AMPLITUDE_KEYS
            .iter()
            .map(|k| table.upsilon(ord, Channel::On, *k).norm())
            .fold(0.0, f64::max);
        for key in [UpsilonKey::new(1, -1, 1, -1), UpsilonKey::new(1, -1, 2, 0)] {
            let brute = bruteforce::upsilon_2d(
                &pulse,
                grid.e_a0,
                &o.coeffs[1],
                &o.coeffs[0],
                key,
                bruteforce::Kernel::Half,
                1601,
                801,
            );
            let got = table.upsilon(ord, Channel::On, key);
            if key == UpsilonKey::new(1, -1, 1, -1) {
                worst_on_dominant = worst_on_dominant.max((got - brute).norm() / brute.norm());
            }
            worst_on_scaled = worst_on_scaled.max((got - brute).norm() / on_scale);
        }
    }
    let ok_a = worst_on_dominant < 1e-8 && worst_on_scaled < 1e-8;

    // (b) off-shell cumulative kernel vs brute-force 1/2 sgn quadrature on
    // ten random convergent keys
    let convergent: Vec<UpsilonKey> = AMPLITUDE_KEYS
        .iter()
        .copied()
        .filter(|k| k.j2 >= 1 && k.j1 >= 1)
        .collect();
    let mut worst_off = 0.0f64;
    for _ in 0..10 {
        let key = convergent[rng.gen_range(0..convergent.len())];
        let ord = rng.gen_range(0..2);
        let o = &geo.orderings[ord];
        let brute = bruteforce::upsilon_2d(
            &pulse,
            grid.e_a0,
            &o.coeffs[1],
            &o.coeffs[0],
            key,
            bruteforce::Kernel::HalfSign,
            1601,
            801,
        );
        let got = table.upsilon(ord, Channel::Off, key);
        worst_off = worst_off.max((got - brute).norm() / brute.norm());
    }
    let ok_b = worst_off < 1e-6;

    // (c) integral relations against direct quadrature with regularized tails
    let mut worst_rel = 0.0f64;
    for ord in 0..2 {
        let o = &geo.orderings[ord];
        let p2 = dcompton::quadrature::PhaseProfile::new(&grid, &o.coeffs[1]);
        let p1 = dcompton::quadrature::PhaseProfile::new(&grid, &o.coeffs[0]);
        for key in [
            UpsilonKey::new(0, 0, 1, -1),
            UpsilonKey::new(0, 0, 1, 1),
            UpsilonKey::new(0, 0, 2, 0),
            UpsilonKey::new(1, -1, 0, 0),
            UpsilonKey::new(1, 1, 0, 0),
            UpsilonKey::new(2, 0, 0, 0),
        ] {
            let direct = bruteforce::zeroth_total_direct(&grid, &p2, &p1, key);
            let rel = table.upsilon(ord, Channel::Total, key);
            worst_rel = worst_rel.max((direct - rel).norm() / rel.norm());
        }
    }
    let ok_c = worst_rel < 1e-6;

    // (d) on-shell amplitude: factorized route vs U-table assembly
    let e1 = polarization_basis_for(&geo.photons[0]);
    let e2 = polarization_basis_for(&geo.photons[1]);
    let amps = double_compton(&pulse, &geo, &grid, &table).unwrap();
    let fact = double_compton_on_factorized(&pulse, &geo, &grid, &table, &e1, &e2).unwrap();
    let mut worst_fact = 0.0f64;
    for s0 in 0..2 {
        for s2 in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    worst_fact = worst_fact
                        .max((amps.on.get(s0, s2, a, b) - fact.get(s0, s2, a, b)).norm());
                }
            }
        }
    }
    let worst_fact = worst_fact / amps.on.max_abs();
    let ok_d = worst_fact < 1e-6;

    // (e) Ward identity at ten random spectral points
    let mut worst_ward = 0.0f64;
    for _ in 0..10 {
        let u1 = rng.gen_range(0.1..1.1);
        let u2 = rng.gen_range(0.1..1.1);
        let (pulse, geo, grid, table) = orthogonal_point(u1, u2);
        let e1 = polarization_basis_for(&geo.photons[0]);
        let e2 = polarization_basis_for(&geo.photons[1]);
        let amps = double_compton(&pulse, &geo, &grid, &table).unwrap();
        let scale = amps.total().max_abs();
        let w = double_compton_with_polarizations(
            &pulse,
            &geo,
            &grid,
            &table,
            &[CFourVector::from(geo.q[0]), e1[1]],
            &e2,
        )
        .unwrap()
        .total();
        for s0 in 0..2 {
            for s2 in 0..2 {
                for b in 0..2 {
                    worst_ward = worst_ward.max(w.get(s0, s2, 0, b).norm() / scale);
                }
            }
        }
    }
    let ok_e = worst_ward < 1e-6;

    let elapsed = t0.elapsed().as_secs_f64();
    report(
        "criterion 6 (oracle equivalences)",
        ok_a && ok_b && ok_c && ok_d && ok_e && elapsed < 60.0,
        &format!(
            "on vs 2D {worst_on_dominant:.1e} (dominant) / {worst_on_scaled:.1e} (scaled); \
             off vs 2D {worst_off:.1e}; relations {worst_rel:.1e}; factorization {worst_fact:.1e}; \
             ward {worst_ward:.1e}; {elapsed:.1} s"
        ),
    );
}

#[test]
fn criterion_7_quantum_information_suite() {
    let pure = |v: [C64; 4]| -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = v[i] * v[j].conj();
            }
        }
        m
    };
    let r = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
    let bell = pure([r, C_ZERO, C_ZERO, r]);
    let hh = pure([C_ONE, C_ZERO, C_ZERO, C_ZERO]);
    let singlet = pure([C_ZERO, r, -r, C_ZERO]);

    let mut pass = (concurrence_of(&bell) - 1.0).abs() < 1e-10;
    pass &= concurrence_of(&hh).abs() < 1e-10;
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0] {
        let rho = singlet * p + Mat4::identity() * ((1.0 - p) / 4.0);
        let expect = (0.5 * (3.0 * p - 1.0)).max(0.0);
        pass &= (concurrence_of(&rho) - expect).abs() < 1e-10;
    }

    // Stokes fixed points in the HV basis
    let stokes = |rho: &Mat4, l1: usize, l2: usize| -> f64 {
        let op = dcompton::observables::stokes_operator(l1, dcompton::observables::Basis::HV)
            .kron(&dcompton::observables::stokes_operator(
                l2,
                dcompton::observables::Basis::HV,
            ));
        (*rho * op).trace().re
    };
    pass &= (stokes(&hh, 1, 1) - 1.0).abs() < 1e-12;
    for l in 1..4 {
        pass &= (stokes(&singlet, l, l) + 1.0).abs() < 1e-12;
    }

    // invariance under 100 random local unitaries
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rho = bell * 0.6 + hh * 0.25 + Mat4::identity() * (0.15 / 4.0);
    rho = rho * C64::new(1.0 / rho.trace().re, 0.0);
    let c0 = concurrence_of(&rho);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let u2 = |rng: &mut ChaCha8Rng| -> Mat2 {
            let (a, b, c): (f64, f64, f64) = (
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(0.0..PI / 2.0),
            );
            let (s, t) = c.sin_cos();
            Mat2([
                [C64::from_polar(t, a), C64::from_polar(s, b)],
                [C64::from_polar(-s, -b), C64::from_polar(t, -a)],
            ])
        };
        let u = u2(&mut rng).kron(&u2(&mut rng));
        worst = worst.max((concurrence_of(&(u * rho * u.dagger())) - c0).abs());
    }
    pass &= worst < 1e-10;
    report(
        "criterion 7 (quantum information suite)",
        pass,
        &format!("bell/product/werner/stokes fixed points ok; unitary invariance dev {worst:.1e}"),
    );
}

#[test]
fn criterion_8_physical_invariants_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_herm = 0.0f64;
    let mut worst_eig = 0.0f64;
    let mut worst_trace = 0.0f64;
    let mut worst_shell = 0.0f64;
    let mut evaluated = 0usize;
    let settings = QuadratureSettings {
        min_points: 512,
        ..QuadratureSettings::default()
    };
    while evaluated < 1000 {
        let gamma0 = rng.gen_range(10.0..300.0);
        let a0 = rng.gen_range(0.05..1.0);
        let pulse = LaserPulse::with_polarization(a0, 1e-5, 40.0, LaserPolarization::Linear);
        let wsc = 4.0 * gamma0 * gamma0 * pulse.omega0;
        let photon = |rng: &mut ChaCha8Rng| PhotonSpec {
            omega: rng.gen_range(0.05..1.1) * wsc,
            theta: rng.gen_range(0.2..2.5) / gamma0,
            phi: rng.gen_range(0.0..std::f64::consts::TAU),
        };
        let geo = match TwoPhotonGeometry::new(&pulse, gamma0, photon(&mut rng), photon(&mut rng))
        {
            Ok(g) => g,
            Err(_) => continue,
        };
        let n = match settings.grid_points(pulse.delta_phi, geo.kappa_max()) {
            Ok(n) => n,
            Err(_) => continue,
        };
        let grid = PulseGrid::new(&pulse, n);
        let table = match IntegralTable::new(&geo, &grid) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let amps = match double_compton(&pulse, &geo, &grid, &table) {
            Ok(a) => a,
            Err(_) => continue,
        };
        evaluated += 1;
        worst_shell = worst_shell.max((geo.p2.norm_sqr() - 1.0).abs());
        for ch in [Channel::Off, Channel::On, Channel::Total] {
            let amp = amps.channel(ch);
            let dm = TwoPhotonDensityMatrix::from_amplitudes(&geo, &amp);
            let (herm, min_eig) = dm.physicality();
            worst_herm = worst_herm.max(herm);
            worst_eig = worst_eig.max(-min_eig);
            // dual-path probability: trace vs direct spin-summed |M|^2
            let pref = geo.photons[0].omega * geo.photons[1].omega
                / (16.0 * (2.0 * PI).powi(6) * geo.p0.dot(&geo.k) * geo.p2.dot(&geo.k));
            let direct = pref * amp.spin_summed_sqr();
            if direct > 0.0 {
                worst_trace = worst_trace.max((dm.probability() - direct).abs() / direct);
            }
            if dm.probability() >= dcompton::observables::MIN_TRACE {
                let c = dm.concurrence().unwrap();
                assert!((0.0..=1.0 + 1e-12).contains(&c), "concurrence {c} out of range");
                if let Ok(st) = dm.stokes_tensor() {
                    for l1 in 0..4 {
                        for l2 in 0..4 {
                            assert!(st.s[l1][l2].abs() <= 1.0 + 1e-10, "stokes out of range");
                        }
                    }
                }
                // reduced single-photon states satisfy p <= 1
                for photon in 0..2 {
                    if let Ok(r) = dm.reduced(photon) {
                        let p = dcompton::observables::degree_of_polarization(&r);
                        assert!(p <= 1.0 + 1e-10, "reduced polarization degree {p}");
                    }
                }
            }
        }
    }
    let pass =
        worst_herm < 1e-12 && worst_eig < 1e-10 && worst_trace < 1e-8 && worst_shell < 1e-9;
    report(
        "criterion 8 (physical invariants under fuzzing)",
        pass,
        &format!(
            "1000 points: hermiticity {worst_herm:.1e}, min eig {worst_eig:.1e}, \
             trace dual-path {worst_trace:.1e}, p2 shell {worst_shell:.1e}"
        ),
    );
}
