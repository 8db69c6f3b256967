//! Built-in invariant suite behind the `selfcheck` CLI verb: algebra
//! identities, quadrature oracles, gauge invariance and the
//! quantum-information fixed points, each reported as one pass/fail line.

use crate::algebra::{CFourVector, FourVector, GAMMA};
use crate::amplitude::{
    double_compton, double_compton_on_factorized, double_compton_with_polarizations,
    polarization_basis_for,
};
use crate::cmatrix::{C64, C_ONE, C_ZERO, Mat4};
use crate::kinematics::{final_electron_momentum, PhotonSpec, TwoPhotonGeometry};
use crate::observables::{concurrence_of, Basis, TwoPhotonDensityMatrix};
use crate::pulse::{LaserPolarization, LaserPulse, PulseGrid};
use crate::quadrature::{bruteforce, Channel, IntegralTable, PhaseProfile, UpsilonKey};

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn orthogonal_setup() -> (LaserPulse, TwoPhotonGeometry, PulseGrid, IntegralTable) {
    let pulse = LaserPulse::with_polarization(0.1, 1e-5, 40.0, LaserPolarization::Linear);
    let gamma0 = 70.71067811865476;
    let wsc = 4.0 * gamma0 * gamma0 * pulse.omega0;
    let geo = TwoPhotonGeometry::new(
        &pulse,
        gamma0,
        PhotonSpec {
            omega: 0.55 * wsc,
            theta: 1.0 / gamma0,
            phi: std::f64::consts::FRAC_PI_2,
        },
        PhotonSpec {
            omega: 0.40 * wsc,
            theta: 1.0 / gamma0,
            phi: 1.5 * std::f64::consts::PI,
        },
    )
    .unwrap();
    let grid = PulseGrid::new(&pulse, 2049);
    let table = IntegralTable::new(&geo, &grid).unwrap();
    (pulse, geo, grid, table)
}

/// Runs every invariant; returns true when all pass.
pub fn run_selfcheck() -> bool {
    let mut rep = Report { failures: 0 };

    // gamma algebra: anticommutators over all ten pairs
    let mut worst = 0.0f64;
    for mu in 0..4 {
        for nu in mu..4 {
            let eta = if mu != nu {
                0.0
            } else if mu == 0 {
                2.0
            } else {
                -2.0
            };
            let anti = GAMMA[mu] * GAMMA[nu] + GAMMA[nu] * GAMMA[mu];
            worst = worst.max((anti - Mat4::identity() * eta).max_abs());
        }
    }
    rep.check("gamma anticommutators", worst < 1e-14, format!("max dev {worst:.2e}"));

    // final electron momentum on shell over random kinematics
    let mut worst = 0.0f64;
    let mut x = 0.71f64;
    let mut rand = || {
        x = (x * 997.13).fract();
        x
    };
    for _ in 0..200 {
        let gamma0 = 5.0 + 495.0 * rand();
        let k = FourVector::new(1e-5, 0.0, 0.0, -1e-5);
        let p0 = crate::kinematics::initial_electron(gamma0);
        let wsc = 4.0 * gamma0 * gamma0 * 1e-5;
        let photon = |r1: f64, r2: f64, r3: f64| {
            PhotonSpec {
                omega: (0.05 + r1) * wsc,
                theta: (0.1 + 2.0 * r2) / gamma0,
                phi: std::f64::consts::TAU * r3,
            }
            .wavevector()
        };
        let (a, b, c, d, e, f) = (rand(), rand(), rand(), rand(), rand(), rand());
        let q1 = photon(a, b, c);
        let q2 = photon(d, e, f);
        let p2 = final_electron_momentum(&p0, &q1, &q2, &k).unwrap();
        worst = worst.max((p2.norm_sqr() - 1.0).abs());
    }
    rep.check("final momentum on shell", worst < 1e-9, format!("max |p2^2-1| {worst:.2e}"));

    let (pulse, geo, grid, table) = orthogonal_setup();

    // cached cumulants against the closed forms, relative to each table's scale
    let cf = bruteforce::ClosedFormCumulants::new(&pulse);
    let g2_scale = grid.g2.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    for i in 0..20 {
        let phi = -19.0 + 2.0 * i as f64;
        worst = worst.max((grid.gc_at(phi) - cf.gc(phi)).abs());
        worst = worst.max((grid.gs_at(phi) - cf.gs(phi)).abs());
        worst = worst.max((grid.g2_at(phi) - cf.g2(phi)).abs() / g2_scale);
    }
    rep.check("phase cumulant caches", worst < 1e-8, format!("max rel dev {worst:.2e}"));

    // off/on kernels against split-diagonal 2D quadrature
    let key = UpsilonKey::new(1, -1, 1, -1);
    let ord = &geo.orderings[0];
    let b_off = bruteforce::upsilon_2d(
        &pulse,
        grid.e_a0,
        &ord.coeffs[1],
        &ord.coeffs[0],
        key,
        bruteforce::Kernel::HalfSign,
        801,
        401,
    );
    let b_on = bruteforce::upsilon_2d(
        &pulse,
        grid.e_a0,
        &ord.coeffs[1],
        &ord.coeffs[0],
        key,
        bruteforce::Kernel::Half,
        801,
        401,
    );
    let off = table.upsilon(0, Channel::Off, key);
    let on = table.upsilon(0, Channel::On, key);
    let (doff, don) = (
        (off - b_off).norm() / b_off.norm(),
        (on - b_on).norm() / b_on.norm(),
    );
    rep.check(
        "kernel split vs 2D quadrature",
        doff < 1e-6 && don < 1e-6,
        format!("off {doff:.2e}, on {don:.2e}"),
    );

    // zeroth-order relations against direct quadrature with regularized tails
    let mut worst = 0.0f64;
    for ord_idx in 0..2 {
        let o = &geo.orderings[ord_idx];
        let p2 = PhaseProfile::new(&grid, &o.coeffs[1]);
        let p1 = PhaseProfile::new(&grid, &o.coeffs[0]);
        for key in [
            UpsilonKey::new(0, 0, 1, -1),
            UpsilonKey::new(1, -1, 0, 0),
            UpsilonKey::new(0, 0, 2, 0),
            UpsilonKey::new(2, 0, 0, 0),
        ] {
            let direct = bruteforce::zeroth_total_direct(&grid, &p2, &p1, key);
            let rel = table.upsilon(ord_idx, Channel::Total, key);
            worst = worst.max((direct - rel).norm() / rel.norm());
        }
    }
    rep.check("integral relations", worst < 1e-6, format!("max rel dev {worst:.2e}"));

    // gauge invariance of the total amplitude
    let e1 = polarization_basis_for(&geo.photons[0]);
    let e2 = polarization_basis_for(&geo.photons[1]);
    let amps = double_compton(&pulse, &geo, &grid, &table).unwrap();
    let scale = amps.total().max_abs();
    let gauge = double_compton_with_polarizations(
        &pulse,
        &geo,
        &grid,
        &table,
        &[CFourVector::from(geo.q[0]), e1[1]],
        &e2,
    )
    .unwrap();
    let t = gauge.total();
    let mut worst = 0.0f64;
    for s0 in 0..2 {
        for s2 in 0..2 {
            for b in 0..2 {
                worst = worst.max(t.get(s0, s2, 0, b).norm());
            }
        }
    }
    rep.check("ward identity", worst / scale < 1e-6, format!("residual {:.2e}", worst / scale));

    // on-shell factorization against the table assembly
    let fact = double_compton_on_factorized(&pulse, &geo, &grid, &table, &e1, &e2).unwrap();
    let mut worst = 0.0f64;
    for s0 in 0..2 {
        for s2 in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    worst = worst.max((amps.on.get(s0, s2, a, b) - fact.get(s0, s2, a, b)).norm());
                }
            }
        }
    }
    rep.check(
        "on-shell factorization",
        worst / amps.on.max_abs() < 1e-6,
        format!("max dev {:.2e}", worst / amps.on.max_abs()),
    );

    // physical density matrix invariants at this point
    let dm = TwoPhotonDensityMatrix::from_amplitudes(&geo, &amps.off);
    let (herm, min_eig) = dm.physicality();
    let c = dm.concurrence().unwrap();
    let st = dm.stokes_tensor().unwrap();
    let mut smax = 0.0f64;
    for l1 in 0..4 {
        for l2 in 0..4 {
            smax = smax.max(st.s[l1][l2].abs());
        }
    }
    rep.check(
        "density matrix physical",
        herm < 1e-12 && min_eig > -1e-10 && (0.0..=1.0).contains(&c) && smax <= 1.0 + 1e-10,
        format!("herm {herm:.2e}, min eig {min_eig:.2e}, C {c:.3}, max |s| {smax:.3}"),
    );

    // concurrence invariance under the basis chain
    let lr = dm.to_basis(Basis::LR).unwrap();
    let dc = (lr.concurrence().unwrap() - c).abs();
    rep.check("concurrence basis invariance", dc < 1e-10, format!("dev {dc:.2e}"));

    // quantum-information fixed points
    let bell = {
        let r = C64::new(0.5, 0.0);
        let mut m = Mat4::zero();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m.0[i][j] = r;
        }
        m
    };
    let mut product = Mat4::zero();
    product.0[0][0] = C_ONE;
    let c_bell = concurrence_of(&bell);
    let c_prod = concurrence_of(&product);
    let mut werner_ok = true;
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0] {
        let mut singlet = Mat4::zero();
        let h = C64::new(0.5, 0.0);
        singlet.0[1][1] = h;
        singlet.0[2][2] = h;
        singlet.0[1][2] = -h;
        singlet.0[2][1] = -h;
        let rho = singlet * p + Mat4::identity() * ((1.0 - p) / 4.0);
        let expect = (0.5 * (3.0 * p - 1.0)).max(0.0);
        werner_ok &= (concurrence_of(&rho) - expect).abs() < 1e-10;
    }
    rep.check(
        "concurrence fixed points",
        (c_bell - 1.0).abs() < 1e-10 && c_prod.abs() < 1e-12 && werner_ok,
        format!("bell {c_bell:.12}, product {c_prod:.2e}, werner ok {werner_ok}"),
    );

    let _ = C_ZERO;
    println!(
        "selfcheck: {}",
        if rep.failures == 0 {
            "all invariants hold".to_string()
        } else {
            format!("{} failure(s)", rep.failures)
        }
    );
    rep.failures == 0
}
