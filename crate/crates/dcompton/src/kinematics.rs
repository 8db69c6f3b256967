//! Scattering kinematics: emitted-photon wavevectors, lightfront phase
//! coefficients, the on-shell projected intermediate momentum for both
//! emission orderings, and the s-photon resonance condition.

use crate::algebra::FourVector;
use crate::error::Error;
use crate::pulse::{LaserPulse, PhaseCoefficients};

/// Emitted photon parameterized by energy (units of m) and emission angles;
/// theta is measured from +z (the electron beam axis).
#[derive(Clone, Copy, Debug)]
pub struct PhotonSpec {
    pub omega: f64,
    pub theta: f64,
    pub phi: f64,
}

impl PhotonSpec {
    pub fn direction(&self) -> FourVector {
        FourVector::new(
            1.0,
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        )
    }

    pub fn wavevector(&self) -> FourVector {
        self.omega * self.direction()
    }
}

/// Initial electron momentum for head-on scattering along +z.
pub fn initial_electron(gamma0: f64) -> FourVector {
    let beta = (1.0 - 1.0 / (gamma0 * gamma0)).sqrt();
    gamma0 * FourVector::new(1.0, 0.0, 0.0, beta)
}

/// Laser-dressed effective momentum pbar = p + m^2 a0^2/(2 p.k) k.
pub fn effective_momentum(p: &FourVector, k: &FourVector, a0: f64) -> FourVector {
    *p + (a0 * a0 / (2.0 * p.dot(k))) * *k
}

/// Final electron momentum p2 = p0 - q1 - q2 + kappa_tilde k; on shell by
/// construction.
pub fn final_electron_momentum(
    p0: &FourVector,
    q1: &FourVector,
    q2: &FourVector,
    k: &FourVector,
) -> Result<FourVector, Error> {
    let q = *q1 + *q2;
    let den = k.dot(&(*p0 - q));
    if den.abs() < 1e-300 {
        return Err(Error::CollinearSingularity);
    }
    let kt = (p0.dot(&q) - 0.5 * q.norm_sqr()) / den;
    Ok(*p0 - q + kt * *k)
}

/// One emission ordering: `first` is the index (0 or 1) of the photon emitted
/// at the first vertex.
#[derive(Clone, Debug)]
pub struct EmissionOrdering {
    pub first: usize,
    /// On-shell projected intermediate momentum.
    pub p1: FourVector,
    pub p1_dot_k: f64,
    /// Phase coefficients for the first and second emission.
    pub coeffs: [PhaseCoefficients; 2],
}

/// Full two-photon kinematics for one spectral point.
#[derive(Clone, Debug)]
pub struct TwoPhotonGeometry {
    pub gamma0: f64,
    pub p0: FourVector,
    pub p2: FourVector,
    pub k: FourVector,
    pub photons: [PhotonSpec; 2],
    pub q: [FourVector; 2],
    /// kappa/zeta/upsilon summed over both emissions (the closed Q-form).
    pub combined: PhaseCoefficients,
    pub orderings: [EmissionOrdering; 2],
}

impl TwoPhotonGeometry {
    pub fn new(
        pulse: &LaserPulse,
        gamma0: f64,
        photon1: PhotonSpec,
        photon2: PhotonSpec,
    ) -> Result<Self, Error> {
        let k = pulse.wavevector();
        let p0 = initial_electron(gamma0);
        let q = [photon1.wavevector(), photon2.wavevector()];
        let qq = q[0] + q[1];
        let eps = &pulse.polarization;

        let kp0 = k.dot(&p0);
        let kpq = k.dot(&(p0 - qq));
        if kp0.abs() < 1e-300 || kpq.abs() < 1e-300 {
            return Err(Error::CollinearSingularity);
        }
        let combined = PhaseCoefficients {
            kappa: (p0.dot(&qq) - 0.5 * qq.norm_sqr()) / kpq,
            zeta: eps.dot_real(&(p0 - qq)) / kpq - eps.dot_real(&p0) / kp0,
            upsilon: 1.0 / kpq - 1.0 / kp0,
        };
        let p2 = p0 - qq + combined.kappa * k;

        let ordering = |first: usize| -> Result<EmissionOrdering, Error> {
            let qf = q[first];
            let kpf = k.dot(&(p0 - qf));
            if kpf.abs() < 1e-300 {
                return Err(Error::CollinearSingularity);
            }
            let kappa1 = p0.dot(&qf) / kpf;
            let c1 = PhaseCoefficients {
                kappa: kappa1,
                zeta: eps.dot_real(&(p0 - qf)) / kpf - eps.dot_real(&p0) / kp0,
                upsilon: 1.0 / kpf - 1.0 / kp0,
            };
            let c2 = PhaseCoefficients {
                kappa: combined.kappa - kappa1,
                zeta: combined.zeta - c1.zeta,
                upsilon: combined.upsilon - c1.upsilon,
            };
            let p1 = p0 - qf + kappa1 * k;
            let p1_dot_k = p1.dot(&k);
            if p1_dot_k <= 0.0 {
                return Err(Error::PositronBranch);
            }
            Ok(EmissionOrdering {
                first,
                p1,
                p1_dot_k,
                coeffs: [c1, c2],
            })
        };

        Ok(TwoPhotonGeometry {
            gamma0,
            p0,
            p2,
            k,
            photons: [photon1, photon2],
            q,
            combined,
            orderings: [ordering(0)?, ordering(1)?],
        })
    }

    /// Recoil parameter r = (p0.k)/m^2.
    pub fn recoil(&self) -> f64 {
        self.p0.dot(&self.k)
    }

    /// All kappa magnitudes that drive phase oscillation, for grid sizing.
    pub fn kappa_max(&self) -> f64 {
        let mut m = self.combined.kappa.abs();
        for ord in &self.orderings {
            for c in &ord.coeffs {
                m = m.max(c.kappa.abs());
            }
        }
        m
    }

    /// Smallest |kappa| entering any 1/kappa regularization prefactor.
    pub fn kappa_min(&self) -> f64 {
        let mut m = self.combined.kappa.abs();
        for ord in &self.orderings {
            for c in &ord.coeffs {
                m = m.min(c.kappa.abs());
            }
        }
        m
    }
}

/// Single-photon (nonlinear Compton) kinematics.
#[derive(Clone, Debug)]
pub struct SinglePhotonGeometry {
    pub gamma0: f64,
    pub p0: FourVector,
    /// Final electron momentum.
    pub p1: FourVector,
    pub k: FourVector,
    pub photon: PhotonSpec,
    pub q: FourVector,
    pub coeffs: PhaseCoefficients,
}

impl SinglePhotonGeometry {
    pub fn new(pulse: &LaserPulse, gamma0: f64, photon: PhotonSpec) -> Result<Self, Error> {
        let k = pulse.wavevector();
        let p0 = initial_electron(gamma0);
        let q = photon.wavevector();
        let kp0 = k.dot(&p0);
        let kp1 = k.dot(&(p0 - q));
        if kp0.abs() < 1e-300 || kp1.abs() < 1e-300 {
            return Err(Error::CollinearSingularity);
        }
        let eps = &pulse.polarization;
        let coeffs = PhaseCoefficients {
            kappa: p0.dot(&q) / kp1,
            zeta: eps.dot_real(&(p0 - q)) / kp1 - eps.dot_real(&p0) / kp0,
            upsilon: 1.0 / kp1 - 1.0 / kp0,
        };
        let p1 = p0 - q + coeffs.kappa * k;
        if p1.dot(&k) <= 0.0 {
            return Err(Error::PositronBranch);
        }
        Ok(SinglePhotonGeometry {
            gamma0,
            p0,
            p1,
            k,
            photon,
            q,
            coeffs,
        })
    }
}

/// Resonance frequency of the second photon for s-photon absorption,
/// given the first photon and the emission direction of the second.
pub fn resonance_frequency(
    s: u32,
    photon1: &PhotonSpec,
    theta2: f64,
    phi2: f64,
    pulse: &LaserPulse,
    gamma0: f64,
) -> Result<f64, Error> {
    let k = pulse.wavevector();
    let p0 = initial_electron(gamma0);
    let pbar = effective_momentum(&p0, &k, pulse.a0);
    let q1 = photon1.wavevector();
    let n2 = PhotonSpec {
        omega: 1.0,
        theta: theta2,
        phi: phi2,
    }
    .direction();
    let s = s as f64;
    let den = n2.dot(&(s * k + pbar - q1));
    if den.abs() < 1e-300 {
        return Err(Error::CollinearSingularity);
    }
    Ok((s * k.dot(&p0) - q1.dot(&(s * k + pbar))) / den)
}
