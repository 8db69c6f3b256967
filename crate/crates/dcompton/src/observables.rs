//! Two-photon density matrix, emission probability, concurrence, fidelity,
//! polarization-basis transforms and generalized Stokes parameters.

use crate::algebra::FourVector;
use crate::amplitude::{ChannelAmplitude, SinglePhotonAmplitude};
use crate::cmatrix::{pauli, C64, Mat2, Mat4};
use crate::error::Error;
use crate::kinematics::{SinglePhotonGeometry, TwoPhotonGeometry};
use crate::quadrature::Channel;
use std::f64::consts::{FRAC_PI_2, PI};

/// Points with trace below this are reported with undefined polarization and
/// entanglement instead of dividing by ~0.
pub const MIN_TRACE: f64 = 1e-30;

/// Photon polarization basis the density matrix is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Emission-local linear basis (polar/azimuthal vectors).
    Linear01,
    /// Lab-frame horizontal/vertical after projection onto the laser
    /// polarization plane.
    HV,
    /// Left/right circular.
    LR,
}

/// Two-photon polarization density matrix; photon 1 is the slow index.
#[derive(Clone, Copy, Debug)]
pub struct TwoPhotonDensityMatrix {
    pub rho: Mat4,
    pub basis: Basis,
    pub channel: Channel,
    theta: [f64; 2],
    phi: [f64; 2],
}

/// 2x2 rotation mapping the emission-local basis onto H/V at azimuth phi.
pub fn rotation_matrix(phi: f64) -> Mat2 {
    let (s, c) = phi.sin_cos();
    Mat2([
        [C64::new(c, 0.0), C64::new(-s, 0.0)],
        [C64::new(s, 0.0), C64::new(c, 0.0)],
    ])
}

/// Unitary mapping H/V onto L/R: U = [[1, 1], [i, -i]]/sqrt(2).
pub fn circular_map() -> Mat2 {
    let r = 1.0 / 2.0f64.sqrt();
    Mat2([
        [C64::new(r, 0.0), C64::new(r, 0.0)],
        [C64::new(0.0, r), C64::new(0.0, -r)],
    ])
}

/// Stokes operator S_l in the given basis.
pub fn stokes_operator(l: usize, basis: Basis) -> Mat2 {
    match basis {
        Basis::HV => pauli([0, 3, 1, 2][l]),
        Basis::LR => pauli(l),
        Basis::Linear01 => panic!("stokes operators are defined in HV or LR"),
    }
}

/// Square roots of the eigenvalues of rho rho~ in descending order.
///
/// Evaluated as the singular values of Z = sqrt(D) V^T (s2 x s2) V sqrt(D)
/// with rho = V D V^dag, which is algebraically the Hermitian form
/// sqrt(rho) rho~ sqrt(rho) but resolves the near-zero roots to absolute
/// accuracy ~eps instead of sqrt(eps).
fn wootters_roots(rho_hat: &Mat4) -> [f64; 4] {
    let (d, v) = rho_hat.hermitian_eigen();
    let f = pauli(2).kron(&pauli(2));
    let mut z = v.transpose() * f * v;
    let r: Vec<f64> = d.iter().map(|x| x.max(0.0).sqrt()).collect();
    for i in 0..4 {
        for j in 0..4 {
            z.0[i][j] *= r[i] * r[j];
        }
    }
    z.singular_values()
}

/// Wootters concurrence of a normalized two-qubit density matrix.
pub fn concurrence_of(rho_hat: &Mat4) -> f64 {
    let r = wootters_roots(rho_hat);
    (r[0] - r[1] - r[2] - r[3]).max(0.0)
}

/// Fidelity (sum of the Wootters roots)^2.
pub fn fidelity_of(rho_hat: &Mat4) -> f64 {
    let r = wootters_roots(rho_hat);
    (r[0] + r[1] + r[2] + r[3]).powi(2)
}

/// Generalized two-photon Stokes parameters.
#[derive(Clone, Copy, Debug)]
pub struct StokesTensor {
    /// s[l1][l2] = Tr(rho_hat S_l1 x S_l2); s[0][0] = 1.
    pub s: [[f64; 4]; 4],
}

impl StokesTensor {
    /// Two-qubit entangled degree of polarization
    /// P = sqrt(max(0, (-1 + sum s^2)/2)) over l1,l2 in 1..=3.
    pub fn two_entangled_degree(&self) -> f64 {
        let mut sum = 0.0;
        for l1 in 1..4 {
            for l2 in 1..4 {
                sum += self.s[l1][l2] * self.s[l1][l2];
            }
        }
        (0.5 * (sum - 1.0)).max(0.0).sqrt()
    }
}

impl TwoPhotonDensityMatrix {
    /// Density matrix in the emission-local basis with the spectral-density
    /// prefactor; its trace is the differential two-photon emission
    /// probability.
    pub fn from_amplitudes(geo: &TwoPhotonGeometry, amp: &ChannelAmplitude) -> Self {
        let pref = geo.photons[0].omega * geo.photons[1].omega
            / (16.0
                * (2.0 * PI).powi(6)
                * geo.p0.dot(&geo.k)
                * geo.p2.dot(&geo.k));
        let mut rho = Mat4::zero();
        for s0 in 0..2 {
            for s2 in 0..2 {
                for i in 0..4 {
                    for j in 0..4 {
                        let mi = amp.get(s0, s2, i / 2, i % 2);
                        let mj = amp.get(s0, s2, j / 2, j % 2);
                        rho.0[i][j] += mi * mj.conj() * (0.5 * pref);
                    }
                }
            }
        }
        TwoPhotonDensityMatrix {
            rho,
            basis: Basis::Linear01,
            channel: amp.channel,
            theta: [geo.photons[0].theta, geo.photons[1].theta],
            phi: [geo.photons[0].phi, geo.photons[1].phi],
        }
    }

    /// Differential two-photon emission probability d^2 W.
    pub fn probability(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn normalized(&self) -> Result<Mat4, Error> {
        let tr = self.probability();
        if tr < MIN_TRACE {
            return Err(Error::NotNormalized);
        }
        Ok(self.rho * C64::new(1.0 / tr, 0.0))
    }

    /// Transform to another polarization basis. Requires back-scattered
    /// photons (theta < pi/2) for the projection onto the polarization plane.
    pub fn to_basis(&self, target: Basis) -> Result<Self, Error> {
        if target == self.basis {
            return Ok(*self);
        }
        if self.theta[0] >= FRAC_PI_2 || self.theta[1] >= FRAC_PI_2 {
            return Err(Error::ForwardHemisphere);
        }
        let mut out = *self;
        loop {
            match (out.basis, target) {
                (Basis::Linear01, _) => {
                    let r = rotation_matrix(out.phi[0]).kron(&rotation_matrix(out.phi[1]));
                    out.rho = r * out.rho * r.dagger();
                    out.basis = Basis::HV;
                }
                (Basis::HV, Basis::LR) => {
                    let u = circular_map();
                    let ud = u.dagger().kron(&u.dagger());
                    let uu = u.kron(&u);
                    out.rho = ud * out.rho * uu;
                    out.basis = Basis::LR;
                }
                (Basis::LR, Basis::HV) => {
                    let u = circular_map();
                    let uu = u.kron(&u);
                    out.rho = uu * out.rho * uu.dagger();
                    out.basis = Basis::HV;
                }
                (Basis::HV, Basis::Linear01) | (Basis::LR, Basis::Linear01) => {
                    return Err(Error::Config(
                        "transforming back to the emission basis is not supported".into(),
                    ))
                }
                _ => {}
            }
            if out.basis == target {
                return Ok(out);
            }
        }
    }

    pub fn concurrence(&self) -> Result<f64, Error> {
        Ok(concurrence_of(&self.normalized()?))
    }

    pub fn fidelity(&self) -> Result<f64, Error> {
        Ok(fidelity_of(&self.normalized()?))
    }

    /// All sixteen generalized Stokes parameters, evaluated in the HV basis.
    pub fn stokes_tensor(&self) -> Result<StokesTensor, Error> {
        let hv = self.to_basis(Basis::HV)?;
        let rho_hat = hv.normalized()?;
        let mut s = [[0.0; 4]; 4];
        for l1 in 0..4 {
            for l2 in 0..4 {
                let op = stokes_operator(l1, Basis::HV).kron(&stokes_operator(l2, Basis::HV));
                s[l1][l2] = (rho_hat * op).trace().re;
            }
        }
        Ok(StokesTensor { s })
    }

    /// Reduced single-photon density matrix (partial trace over the other
    /// photon), in this matrix's basis, normalized.
    pub fn reduced(&self, photon: usize) -> Result<Mat2, Error> {
        let rho = self.normalized()?;
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out.0[i][j] += match photon {
                        0 => rho.0[2 * i + k][2 * j + k],
                        1 => rho.0[2 * k + i][2 * k + j],
                        _ => panic!("photon index"),
                    };
                }
            }
        }
        Ok(out)
    }

    /// Hermiticity and positivity diagnostics (max violations relative to the
    /// trace scale).
    pub fn physicality(&self) -> (f64, f64) {
        let scale = self.rho.frobenius_norm().max(1e-300);
        let herm = (self.rho - self.rho.dagger()).max_abs() / scale;
        let (vals, _) = self.rho.hermitian_eigen();
        let min_eig = vals[3] / scale;
        (herm, min_eig)
    }
}

/// Single Stokes parameter s_l = Tr(rho1 S_l) of a normalized one-photon
/// density matrix.
pub fn single_photon_stokes(rho1: &Mat2, l: usize, basis: Basis) -> f64 {
    (*rho1 * stokes_operator(l, basis)).trace().re
}

/// Degree of polarization p = sqrt(s1^2 + s2^2 + s3^2); basis-independent,
/// evaluated through the purity 2 Tr(rho^2) - 1.
pub fn degree_of_polarization(rho1: &Mat2) -> f64 {
    let purity = (*rho1 * *rho1).trace().re;
    (2.0 * purity - 1.0).max(0.0).sqrt()
}

/// One-photon density matrix for nonlinear single-Compton emission.
#[derive(Clone, Copy, Debug)]
pub struct SinglePhotonDensityMatrix {
    pub rho: Mat2,
    pub basis: Basis,
    theta: f64,
    phi: f64,
}

impl SinglePhotonDensityMatrix {
    pub fn from_amplitudes(geo: &SinglePhotonGeometry, amp: &SinglePhotonAmplitude) -> Self {
        let pref = geo.photon.omega
            / (8.0 * (2.0 * PI).powi(3) * geo.p0.dot(&geo.k) * geo.p1.dot(&geo.k));
        let mut rho = Mat2::zero();
        for s0 in 0..2 {
            for s1 in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        rho.0[a][b] += amp.m[s0][s1][a] * amp.m[s0][s1][b].conj() * C64::new(0.5 * pref, 0.0);
                    }
                }
            }
        }
        SinglePhotonDensityMatrix {
            rho,
            basis: Basis::Linear01,
            theta: geo.photon.theta,
            phi: geo.photon.phi,
        }
    }

    /// Differential one-photon emission probability d W.
    pub fn probability(&self) -> f64 {
        self.rho.trace().re
    }

    /// Normalized matrix in the HV basis.
    pub fn normalized_hv(&self) -> Result<Mat2, Error> {
        if self.theta >= FRAC_PI_2 {
            return Err(Error::ForwardHemisphere);
        }
        let tr = self.probability();
        if tr < MIN_TRACE {
            return Err(Error::NotNormalized);
        }
        let r = rotation_matrix(self.phi);
        Ok(r * self.rho * r.dagger() * C64::new(1.0 / tr, 0.0))
    }

    /// (s1, s2, s3) in the HV basis plus the degree of polarization.
    pub fn stokes(&self) -> Result<([f64; 3], f64), Error> {
        let rho = self.normalized_hv()?;
        let mut s = [0.0; 3];
        for l in 1..4 {
            s[l - 1] = single_photon_stokes(&rho, l, Basis::HV);
        }
        Ok((s, degree_of_polarization(&rho)))
    }
}

/// Convenience: lightlike check used by the scan layer.
pub fn is_backscattered(q: &FourVector) -> bool {
    q.z > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::{C_ONE, C_ZERO};
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn pure_state(v: [C64; 4]) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    fn bell_phi_plus() -> Mat4 {
        let r = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
        pure_state([r, C_ZERO, C_ZERO, r])
    }

    fn singlet() -> Mat4 {
        let r = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
        pure_state([C_ZERO, r, -r, C_ZERO])
    }

    #[test]
    fn concurrence_bell_and_product() {
        assert_relative_eq!(concurrence_of(&bell_phi_plus()), 1.0, epsilon = 1e-12);
        let hh = pure_state([C_ONE, C_ZERO, C_ZERO, C_ZERO]);
        assert_relative_eq!(concurrence_of(&hh), 0.0, epsilon = 1e-12);
        assert_relative_eq!(fidelity_of(&bell_phi_plus()), 1.0, epsilon = 1e-10);
        assert!(fidelity_of(&hh) < 1e-12);
        // maximally mixed: all Wootters roots 1/4
        let mixed = Mat4::identity() * 0.25;
        assert_relative_eq!(fidelity_of(&mixed), 1.0, epsilon = 1e-10);
        assert_relative_eq!(concurrence_of(&mixed), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn werner_states_closed_form() {
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0] {
            let rho = singlet() * p + Mat4::identity() * ((1.0 - p) / 4.0);
            // independent closed-form oracle for the Wootters roots of the
            // Werner state: (1+3p)/4 once, (1-p)/4 three times
            let expect_roots = [(1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0];
            let roots = super::wootters_roots(&rho);
            assert_relative_eq!(roots[0], expect_roots[0].max(expect_roots[1]), epsilon = 1e-10);
            let expect_c = (0.5 * (3.0 * p - 1.0)).max(0.0);
            assert_relative_eq!(concurrence_of(&rho), expect_c, epsilon = 1e-10);
        }
    }

    #[test]
    fn concurrence_invariant_under_local_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let random_u2 = |rng: &mut ChaCha8Rng| -> Mat2 {
            let (a, b, c): (f64, f64, f64) = (
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(0.0..FRAC_PI_2),
            );
            let (s, t) = c.sin_cos();
            Mat2([
                [C64::from_polar(t, a), C64::from_polar(s, b)],
                [C64::from_polar(-s, -b), C64::from_polar(t, -a)],
            ])
        };
        // random mixed state from a few pure states
        let mut rho = Mat4::zero();
        for w in [0.5, 0.3, 0.2] {
            let mut v = [C_ZERO; 4];
            let mut norm = 0.0;
            for e in v.iter_mut() {
                *e = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                norm += e.norm_sqr();
            }
            let scale = C64::new((w / norm).sqrt(), 0.0);
            for e in v.iter_mut() {
                *e *= scale;
            }
            rho = rho + pure_state(v);
        }
        rho = rho * C64::new(1.0 / rho.trace().re, 0.0);
        let c0 = concurrence_of(&rho);
        for _ in 0..100 {
            let u = random_u2(&mut rng).kron(&random_u2(&mut rng));
            let rot = u * rho * u.dagger();
            assert!((concurrence_of(&rot) - c0).abs() < 1e-10);
        }
    }

    #[test]
    fn stokes_fixed_points() {
        let mk = |rho: Mat4| TwoPhotonDensityMatrix {
            rho,
            basis: Basis::HV,
            channel: Channel::Total,
            theta: [0.01, 0.01],
            phi: [0.0, 0.0],
        };
        let hh = mk(pure_state([C_ONE, C_ZERO, C_ZERO, C_ZERO]));
        let st = hh.stokes_tensor().unwrap();
        assert_relative_eq!(st.s[0][0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(st.s[1][1], 1.0, epsilon = 1e-12);
        assert_relative_eq!(st.s[2][2], 0.0, epsilon = 1e-12);
        assert_relative_eq!(st.s[3][3], 0.0, epsilon = 1e-12);

        let sg = mk(singlet());
        let st = sg.stokes_tensor().unwrap();
        for l in 1..4 {
            assert_relative_eq!(st.s[l][l], -1.0, epsilon = 1e-12);
        }
        // singlet: P = 1
        assert_relative_eq!(st.two_entangled_degree(), 1.0, epsilon = 1e-12);

        // |LL> in the LR basis: s33 = +1, s11 = s22 = 0
        let ll = TwoPhotonDensityMatrix {
            rho: pure_state([C_ONE, C_ZERO, C_ZERO, C_ZERO]),
            basis: Basis::LR,
            channel: Channel::Total,
            theta: [0.01, 0.01],
            phi: [0.0, 0.0],
        };
        let rho_hat = ll.normalized().unwrap();
        let op33 = stokes_operator(3, Basis::LR).kron(&stokes_operator(3, Basis::LR));
        assert_relative_eq!((rho_hat * op33).trace().re, 1.0, epsilon = 1e-12);
        let op11 = stokes_operator(1, Basis::LR).kron(&stokes_operator(1, Basis::LR));
        assert_relative_eq!((rho_hat * op11).trace().re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn basis_transform_identity_at_zero_azimuth() {
        let rho = bell_phi_plus();
        let dm = TwoPhotonDensityMatrix {
            rho,
            basis: Basis::Linear01,
            channel: Channel::Off,
            theta: [0.01, 0.014],
            phi: [0.0, 0.0],
        };
        let hv = dm.to_basis(Basis::HV).unwrap();
        assert!((hv.rho - rho).max_abs() < 1e-14);
        // trace preserved through LR as well
        let lr = dm.to_basis(Basis::LR).unwrap();
        assert_relative_eq!(lr.rho.trace().re, rho.trace().re, epsilon = 1e-12);
        // concurrence invariant under the full transform chain
        assert_relative_eq!(
            dm.concurrence().unwrap(),
            lr.concurrence().unwrap(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn forward_hemisphere_rejected() {
        let dm = TwoPhotonDensityMatrix {
            rho: bell_phi_plus(),
            basis: Basis::Linear01,
            channel: Channel::Off,
            theta: [1.6, 0.01],
            phi: [0.0, 0.0],
        };
        match dm.to_basis(Basis::HV) {
            Err(Error::ForwardHemisphere) => {}
            other => panic!("expected forward-hemisphere error, got {other:?}"),
        }
    }

    #[test]
    fn reduced_states_and_polarization_degrees() {
        let dm = TwoPhotonDensityMatrix {
            rho: singlet(),
            basis: Basis::HV,
            channel: Channel::Total,
            theta: [0.01, 0.01],
            phi: [0.0, 0.0],
        };
        for photon in 0..2 {
            let r = dm.reduced(photon).unwrap();
            // singlet reduces to the maximally mixed state: p = 0
            assert!(degree_of_polarization(&r) < 1e-12);
        }
        let h = TwoPhotonDensityMatrix {
            rho: pure_state([C_ONE, C_ZERO, C_ZERO, C_ZERO]),
            basis: Basis::HV,
            channel: Channel::Total,
            theta: [0.01, 0.01],
            phi: [0.0, 0.0],
        };
        let r = h.reduced(0).unwrap();
        assert_relative_eq!(single_photon_stokes(&r, 1, Basis::HV), 1.0, epsilon = 1e-12);
        assert_relative_eq!(degree_of_polarization(&r), 1.0, epsilon = 1e-12);
    }
}
