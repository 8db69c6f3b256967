//! Single- and double-Compton scattering amplitudes in the pulsed plane
//! wave, assembled from the emission-matrix tables and the phase integrals,
//! with the exact split into off-shell and on-shell channels.
//!
//! All stored amplitude values are i*M; observables only ever use products
//! M M*, so the overall i is immaterial but kept consistent throughout.

use crate::algebra::{
    adjoint, dirac_spinor, sandwich, slash, slash_c, AdjointSpinor, CFourVector,
    DiracSpinor, FourVector, Spin,
};
use crate::cmatrix::{C64, C_I, Mat4};
use crate::error::Error;
use crate::kinematics::{PhotonSpec, SinglePhotonGeometry, TwoPhotonGeometry};
use crate::pulse::{LaserPulse, PulseGrid};
use crate::quadrature::{
    leg_integral, regularized_i0, Channel, IntegralTable, PhaseProfile, UpsilonKey,
};

/// Linear polarization basis attached to an emission direction:
/// eps_{j0} along the polar direction, eps_{j1} azimuthal.
pub fn polarization_basis(theta: f64, phi: f64) -> [FourVector; 2] {
    [
        FourVector::new(
            0.0,
            theta.cos() * phi.cos(),
            theta.cos() * phi.sin(),
            -theta.sin(),
        ),
        FourVector::new(0.0, -phi.sin(), phi.cos(), 0.0),
    ]
}

pub fn polarization_basis_for(photon: &PhotonSpec) -> [CFourVector; 2] {
    let b = polarization_basis(photon.theta, photon.phi);
    [CFourVector::from(b[0]), CFourVector::from(b[1])]
}

/// i*M for all spin and polarization labels of one channel.
#[derive(Clone, Copy, Debug)]
pub struct ChannelAmplitude {
    pub channel: Channel,
    /// Indexed [sigma0][sigma2][alpha][beta].
    pub m: [[[[C64; 2]; 2]; 2]; 2],
}

impl ChannelAmplitude {
    fn zero(channel: Channel) -> Self {
        ChannelAmplitude {
            channel,
            m: [[[[C64::new(0.0, 0.0); 2]; 2]; 2]; 2],
        }
    }

    pub fn get(&self, s0: usize, s2: usize, alpha: usize, beta: usize) -> C64 {
        self.m[s0][s2][alpha][beta]
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for a in self.m.iter().flatten().flatten().flatten() {
            m = m.max(a.norm());
        }
        m
    }

    /// Spin-averaged/summed squared amplitude (1/2) sum |M|^2 over all labels.
    pub fn spin_summed_sqr(&self) -> f64 {
        0.5 * self
            .m
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
    }

    pub fn add(&self, other: &ChannelAmplitude, channel: Channel) -> ChannelAmplitude {
        let mut out = ChannelAmplitude::zero(channel);
        for s0 in 0..2 {
            for s2 in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        out.m[s0][s2][a][b] = self.m[s0][s2][a][b] + other.m[s0][s2][a][b];
                    }
                }
            }
        }
        out
    }
}

/// Off- and on-shell amplitudes of one spectral point.
pub struct DoubleComptonAmplitudes {
    pub off: ChannelAmplitude,
    pub on: ChannelAmplitude,
}

impl DoubleComptonAmplitudes {
    pub fn total(&self) -> ChannelAmplitude {
        self.off.add(&self.on, Channel::Total)
    }

    pub fn channel(&self, channel: Channel) -> ChannelAmplitude {
        match channel {
            Channel::Off => self.off,
            Channel::On => self.on,
            Channel::Total => self.total(),
        }
    }
}

struct LaserSlashes {
    s_eps: Mat4,
    s_epsc: Mat4,
    s_k: Mat4,
}

fn spinors(p: &FourVector) -> Result<[DiracSpinor; 2], Error> {
    Ok([
        dirac_spinor(p, Spin::Up)?,
        dirac_spinor(p, Spin::Down)?,
    ])
}

fn adjoints(us: &[DiracSpinor; 2]) -> [AdjointSpinor; 2] {
    [adjoint(&us[0]), adjoint(&us[1])]
}

/// Double-Compton amplitudes in the standard emission-local polarization
/// basis of both photons.
pub fn double_compton(
    pulse: &LaserPulse,
    geo: &TwoPhotonGeometry,
    grid: &PulseGrid,
    table: &IntegralTable,
) -> Result<DoubleComptonAmplitudes, Error> {
    let e1 = polarization_basis_for(&geo.photons[0]);
    let e2 = polarization_basis_for(&geo.photons[1]);
    double_compton_with_polarizations(pulse, geo, grid, table, &e1, &e2)
}

/// Same with explicit polarization vectors per photon; substituting a
/// photon's wavevector here exercises the gauge (Ward) identity.
pub fn double_compton_with_polarizations(
    pulse: &LaserPulse,
    geo: &TwoPhotonGeometry,
    _grid: &PulseGrid,
    table: &IntegralTable,
    e1: &[CFourVector; 2],
    e2: &[CFourVector; 2],
) -> Result<DoubleComptonAmplitudes, Error> {
    let e = crate::electron_charge();
    let a0m = pulse.field_amplitude();
    let k = geo.k;
    let kp0 = k.dot(&geo.p0);
    let kp2 = k.dot(&geo.p2);
    let laser = LaserSlashes {
        s_eps: slash_c(&pulse.polarization),
        s_epsc: slash_c(&pulse.polarization.conj()),
        s_k: slash(&k),
    };
    let u0 = spinors(&geo.p0)?;
    let ub2 = adjoints(&spinors(&geo.p2)?);

    let mut off = ChannelAmplitude::zero(Channel::Off);
    let mut on = ChannelAmplitude::zero(Channel::On);

    for (ord_idx, ord) in geo.orderings.iter().enumerate() {
        let p1k = ord.p1_dot_k;
        let s_p1m = slash(&ord.p1) + Mat4::identity();
        let pref = C64::new(-e * e / (2.0 * p1k), 0.0);

        for a in 0..2 {
            for b in 0..2 {
                // polarization vectors in emission order
                let (ef, es) = if ord.first == 0 {
                    (e1[a], e2[b])
                } else {
                    (e2[b], e1[a])
                };
                let efc = ef.conj();
                let esc = es.conj();
                let s_efc = slash_c(&efc);
                let s_esc = slash_c(&esc);
                let efk = efc.dot_real(&k);
                let esk = esc.dot_real(&k);

                // first-order vertex brackets of the emission matrices
                let v2 = |s_l: &Mat4| -> Mat4 {
                    (*s_l * laser.s_k * s_esc) * (1.0 / (2.0 * kp2))
                        + (s_esc * laser.s_k * *s_l) * (1.0 / (2.0 * p1k))
                };
                let v1 = |s_l: &Mat4| -> Mat4 {
                    (*s_l * laser.s_k * s_efc) * (1.0 / (2.0 * p1k))
                        + (s_efc * laser.s_k * *s_l) * (1.0 / (2.0 * kp0))
                };
                let v2p = v2(&laser.s_eps);
                let v2m = v2(&laser.s_epsc);
                let v1p = v1(&laser.s_eps);
                let v1m = v1(&laser.s_epsc);
                let ea = e * a0m;

                // the sixteen U-matrix terms paired with their integral keys
                let terms: [(Mat4, UpsilonKey); 16] = [
                    (s_esc * s_p1m * s_efc, UpsilonKey::new(0, 0, 0, 0)),
                    ((v2p * s_p1m * s_efc) * ea, UpsilonKey::new(1, -1, 0, 0)),
                    ((v2m * s_p1m * s_efc) * ea, UpsilonKey::new(1, 1, 0, 0)),
                    ((s_esc * s_p1m * v1p) * ea, UpsilonKey::new(0, 0, 1, -1)),
                    ((s_esc * s_p1m * v1m) * ea, UpsilonKey::new(0, 0, 1, 1)),
                    ((v2p * s_p1m * v1p) * (ea * ea), UpsilonKey::new(1, -1, 1, -1)),
                    ((v2m * s_p1m * v1m) * (ea * ea), UpsilonKey::new(1, 1, 1, 1)),
                    ((v2m * s_p1m * v1p) * (ea * ea), UpsilonKey::new(1, 1, 1, -1)),
                    ((v2p * s_p1m * v1m) * (ea * ea), UpsilonKey::new(1, -1, 1, 1)),
                    (
                        (laser.s_k * s_p1m * s_efc) * (esk * (-(ea * ea) / (2.0 * kp2 * p1k))),
                        UpsilonKey::new(2, 0, 0, 0),
                    ),
                    (
                        (s_esc * s_p1m * laser.s_k) * (efk * (-(ea * ea) / (2.0 * kp0 * p1k))),
                        UpsilonKey::new(0, 0, 2, 0),
                    ),
                    (
                        (laser.s_k * s_p1m * v1p) * (esk * (-(ea * ea * ea) / (2.0 * kp2 * p1k))),
                        UpsilonKey::new(2, 0, 1, -1),
                    ),
                    (
                        (laser.s_k * s_p1m * v1m) * (esk * (-(ea * ea * ea) / (2.0 * kp2 * p1k))),
                        UpsilonKey::new(2, 0, 1, 1),
                    ),
                    (
                        (v2p * s_p1m * laser.s_k) * (efk * (-(ea * ea * ea) / (2.0 * kp0 * p1k))),
                        UpsilonKey::new(1, -1, 2, 0),
                    ),
                    (
                        (v2m * s_p1m * laser.s_k) * (efk * (-(ea * ea * ea) / (2.0 * kp0 * p1k))),
                        UpsilonKey::new(1, 1, 2, 0),
                    ),
                    (
                        laser.s_k
                            * (efk * esk * (ea * ea * ea * ea) / (2.0 * kp0 * kp2 * p1k)),
                        UpsilonKey::new(2, 0, 2, 0),
                    ),
                ];

                let mut k_off = Mat4::zero();
                let mut k_on = Mat4::zero();
                for (mat, key) in &terms {
                    k_off = k_off + *mat * table.upsilon(ord_idx, Channel::Off, *key);
                    k_on = k_on + *mat * table.upsilon(ord_idx, Channel::On, *key);
                }
                // delta-function contact term: off-shell only
                let d0 = s_esc * laser.s_k * s_efc;
                let d1p = (laser.s_eps * laser.s_k * s_efc) * (ea * esk / kp2)
                    + (s_esc * laser.s_k * laser.s_eps) * (ea * efk / kp0);
                let d1m = (laser.s_epsc * laser.s_k * s_efc) * (ea * esk / kp2)
                    + (s_esc * laser.s_k * laser.s_epsc) * (ea * efk / kp0);
                let d2 = laser.s_k * (-(ea * ea) * efk * esk / (kp0 * kp2));
                let contact = d0 * table.i_tilde(crate::quadrature::ITilde::Zero)
                    + d1p * table.i_tilde(crate::quadrature::ITilde::OnePlus)
                    + d1m * table.i_tilde(crate::quadrature::ITilde::OneMinusStar)
                    + d2 * table.i_tilde(crate::quadrature::ITilde::Two);
                k_off = k_off + contact * C_I;

                let k_off = k_off * pref;
                let k_on = k_on * pref;
                for s0 in 0..2 {
                    for s2 in 0..2 {
                        off.m[s0][s2][a][b] += sandwich(&ub2[s2], &k_off, &u0[s0]);
                        on.m[s0][s2][a][b] += sandwich(&ub2[s2], &k_on, &u0[s0]);
                    }
                }
            }
        }
    }
    Ok(DoubleComptonAmplitudes { off, on })
}

/// Integrated single-emission vertex int dphi e^{i g} M(phi), expanded in
/// field powers onto the 1D integrals {I0, J(1,-1), J(1,+1), J(2,0)}.
#[allow(clippy::too_many_arguments)]
fn integrated_vertex(
    laser: &LaserSlashes,
    e_a0: f64,
    epol_conj: &CFourVector,
    k: &FourVector,
    k_prev: f64,
    k_next: f64,
    ints: [C64; 4],
) -> Mat4 {
    let s_ec = slash_c(epol_conj);
    let eck = epol_conj.dot_real(k);
    let [i0, j1m, j1p, j2] = ints;
    let bracket = |s_l: &Mat4| -> Mat4 {
        (*s_l * laser.s_k * s_ec) * (1.0 / (2.0 * k_next))
            + (s_ec * laser.s_k * *s_l) * (1.0 / (2.0 * k_prev))
    };
    s_ec * i0
        + (bracket(&laser.s_eps) * e_a0) * j1m
        + (bracket(&laser.s_epsc) * e_a0) * j1p
        + laser.s_k * (j2 * (-eck * e_a0 * e_a0 / (2.0 * k_prev * k_next)))
}

/// Single-Compton amplitudes i*M indexed [sigma0][sigma1][alpha].
pub struct SinglePhotonAmplitude {
    pub m: [[[C64; 2]; 2]; 2],
}

impl SinglePhotonAmplitude {
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .flatten()
            .map(|a| a.norm())
            .fold(0.0, f64::max)
    }
}

pub fn single_compton(
    pulse: &LaserPulse,
    geo: &SinglePhotonGeometry,
    grid: &PulseGrid,
) -> Result<SinglePhotonAmplitude, Error> {
    let basis = polarization_basis_for(&geo.photon);
    single_compton_with_polarizations(pulse, geo, grid, &basis)
}

pub fn single_compton_with_polarizations(
    pulse: &LaserPulse,
    geo: &SinglePhotonGeometry,
    grid: &PulseGrid,
    basis: &[CFourVector; 2],
) -> Result<SinglePhotonAmplitude, Error> {
    let e = crate::electron_charge();
    let k = geo.k;
    let kp0 = k.dot(&geo.p0);
    let kp1 = k.dot(&geo.p1);
    let laser = LaserSlashes {
        s_eps: slash_c(&pulse.polarization),
        s_epsc: slash_c(&pulse.polarization.conj()),
        s_k: slash(&k),
    };
    let prof = PhaseProfile::new(grid, &geo.coeffs);
    let ints = [
        regularized_i0(grid, &prof)?,
        leg_integral(grid, &prof, 1, -1),
        leg_integral(grid, &prof, 1, 1),
        leg_integral(grid, &prof, 2, 0),
    ];
    let u0 = spinors(&geo.p0)?;
    let ub1 = adjoints(&spinors(&geo.p1)?);
    let mut m = [[[C64::new(0.0, 0.0); 2]; 2]; 2];
    for (alpha, pol) in basis.iter().enumerate() {
        let vertex = integrated_vertex(&laser, grid.e_a0, &pol.conj(), &k, kp0, kp1, ints);
        for s0 in 0..2 {
            for s1 in 0..2 {
                // i M = (-i e) ubar(p1) [int e^{i g} M(phi)] u(p0)
                m[s0][s1][alpha] =
                    C64::new(0.0, -e) * sandwich(&ub1[s1], &vertex, &u0[s0]);
            }
        }
    }
    Ok(SinglePhotonAmplitude { m })
}

/// On-shell channel through the factorization into two single-emission
/// amplitudes with an intermediate spin sum; equals the table-assembled
/// on-shell channel and serves as its independent oracle.
pub fn double_compton_on_factorized(
    pulse: &LaserPulse,
    geo: &TwoPhotonGeometry,
    grid: &PulseGrid,
    table: &IntegralTable,
    e1: &[CFourVector; 2],
    e2: &[CFourVector; 2],
) -> Result<ChannelAmplitude, Error> {
    let e = crate::electron_charge();
    let k = geo.k;
    let kp0 = k.dot(&geo.p0);
    let kp2 = k.dot(&geo.p2);
    let laser = LaserSlashes {
        s_eps: slash_c(&pulse.polarization),
        s_epsc: slash_c(&pulse.polarization.conj()),
        s_k: slash(&k),
    };
    let u0 = spinors(&geo.p0)?;
    let ub2 = adjoints(&spinors(&geo.p2)?);
    let mut on = ChannelAmplitude::zero(Channel::On);
    for (ord_idx, ord) in geo.orderings.iter().enumerate() {
        let p1k = ord.p1_dot_k;
        let u1 = spinors(&ord.p1)?;
        let ub1 = adjoints(&u1);
        let legs = |emission: usize| -> [C64; 4] {
            [
                table.i0(ord_idx, emission),
                table.leg(ord_idx, emission, 1, -1),
                table.leg(ord_idx, emission, 1, 1),
                table.leg(ord_idx, emission, 2, 0),
            ]
        };
        for a in 0..2 {
            for b in 0..2 {
                let (ef, es) = if ord.first == 0 {
                    (e1[a], e2[b])
                } else {
                    (e2[b], e1[a])
                };
                let m_first =
                    integrated_vertex(&laser, grid.e_a0, &ef.conj(), &k, kp0, p1k, legs(0));
                let m_second =
                    integrated_vertex(&laser, grid.e_a0, &es.conj(), &k, p1k, kp2, legs(1));
                for s0 in 0..2 {
                    for s2 in 0..2 {
                        let mut acc = C64::new(0.0, 0.0);
                        for s1 in 0..2 {
                            let mf = C64::new(0.0, -e)
                                * sandwich(&ub2[s2], &m_second, &u1[s1]);
                            let mi =
                                C64::new(0.0, -e) * sandwich(&ub1[s1], &m_first, &u0[s0]);
                            acc += mf * mi;
                        }
                        on.m[s0][s2][a][b] += acc * (1.0 / (4.0 * p1k.abs()));
                    }
                }
            }
        }
    }
    Ok(on)
}

/// Low-recoil estimate of the on-shell concurrence from the antisymmetric
/// combination of first/second-vertex single-emission amplitudes. Diagnostic
/// output; the exact value comes from the on-shell density matrix.
pub fn on_shell_concurrence_estimate(
    pulse: &LaserPulse,
    geo: &TwoPhotonGeometry,
    grid: &PulseGrid,
    table: &IntegralTable,
) -> Result<f64, Error> {
    let e = crate::electron_charge();
    let e1 = polarization_basis_for(&geo.photons[0]);
    let e2 = polarization_basis_for(&geo.photons[1]);
    let k = geo.k;
    let kp0 = k.dot(&geo.p0);
    let kp2 = k.dot(&geo.p2);
    let laser = LaserSlashes {
        s_eps: slash_c(&pulse.polarization),
        s_epsc: slash_c(&pulse.polarization.conj()),
        s_k: slash(&k),
    };
    let u0 = spinors(&geo.p0)?;
    let ub2 = adjoints(&spinors(&geo.p2)?);
    // single-vertex amplitudes per ordering: mi[ord][pol][s1][s0], mf[ord][pol][s2][s1]
    let mut mi = [[[[C64::new(0.0, 0.0); 2]; 2]; 2]; 2];
    let mut mf = [[[[C64::new(0.0, 0.0); 2]; 2]; 2]; 2];
    for (ord_idx, ord) in geo.orderings.iter().enumerate() {
        let p1k = ord.p1_dot_k;
        let u1 = spinors(&ord.p1)?;
        let ub1 = adjoints(&u1);
        let first_basis = if ord.first == 0 { &e1 } else { &e2 };
        let second_basis = if ord.first == 0 { &e2 } else { &e1 };
        let legs = |emission: usize| -> [C64; 4] {
            [
                table.i0(ord_idx, emission),
                table.leg(ord_idx, emission, 1, -1),
                table.leg(ord_idx, emission, 1, 1),
                table.leg(ord_idx, emission, 2, 0),
            ]
        };
        for pol in 0..2 {
            let mfirst = integrated_vertex(
                &laser,
                grid.e_a0,
                &first_basis[pol].conj(),
                &k,
                kp0,
                p1k,
                legs(0),
            );
            let msecond = integrated_vertex(
                &laser,
                grid.e_a0,
                &second_basis[pol].conj(),
                &k,
                p1k,
                kp2,
                legs(1),
            );
            for sa in 0..2 {
                for sb in 0..2 {
                    mi[ord_idx][pol][sa][sb] =
                        C64::new(0.0, -e) * sandwich(&ub1[sa], &mfirst, &u0[sb]);
                    mf[ord_idx][pol][sa][sb] =
                        C64::new(0.0, -e) * sandwich(&ub2[sa], &msecond, &u1[sb]);
                }
            }
        }
    }
    let on = double_compton_on_factorized(pulse, geo, grid, table, &e1, &e2)?;
    let m_on_norm = on.spin_summed_sqr().sqrt();
    if m_on_norm == 0.0 {
        return Ok(0.0);
    }
    let p1k = geo.orderings[0].p1_dot_k.abs();
    let mut est = 0.0;
    for (fa, ib) in [(1usize, 0usize), (0, 1)] {
        // antisymmetric cross-ordering combination, intermediate spin summed
        let mut num = 0.0;
        for s0 in 0..2 {
            for s2 in 0..2 {
                let mut acc = C64::new(0.0, 0.0);
                for s1 in 0..2 {
                    acc += mf[fa][1][s2][s1] * mi[ib][0][s1][s0]
                        - mf[fa][0][s2][s1] * mi[ib][1][s1][s0];
                }
                num += 0.5 * acc.norm_sqr();
            }
        }
        est += num.sqrt() / (2.0 * std::f64::consts::SQRT_2 * p1k * m_on_norm);
    }
    Ok(est)
}
