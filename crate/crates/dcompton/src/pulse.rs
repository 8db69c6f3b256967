//! Pulsed plane-wave background field and the cached phase-grid quantities
//! every integral is built from.
//!
//! The vector potential is `A_B(phi) = A(phi) eps + c.c.` with a cos^2
//! envelope of total phase length `delta_phi` supported on
//! [-delta_phi/2, +delta_phi/2] and unit carrier `exp(-i phi)`.

use crate::algebra::{CFourVector, FourVector};
use crate::cmatrix::C64;
use crate::error::Error;
use crate::quadrature::cumulative_simpson_re;
use crate::{electron_charge, elementary_charge};
use std::f64::consts::{PI, SQRT_2};

/// Laser polarization convention used at the configuration boundary.
///
/// `Circular` uses eps = (0, 1, i, 0)/sqrt(2), the handedness for which the
/// backscattered on-axis fundamental carries Stokes s3 = +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LaserPolarization {
    Linear,
    Circular,
}

/// Finite pulsed plane wave travelling along -z.
#[derive(Clone, Debug)]
pub struct LaserPulse {
    /// Classical nonlinearity parameter a0 = sqrt(2)|e|A0/m.
    pub a0: f64,
    /// Laser photon energy in units of the electron mass.
    pub omega0: f64,
    /// Total pulse length in phase.
    pub delta_phi: f64,
    /// Four-polarization, normalized to eps.eps* = -1 and orthogonal to k.
    pub polarization: CFourVector,
}

impl LaserPulse {
    pub fn new(
        a0: f64,
        omega0: f64,
        delta_phi: f64,
        polarization: CFourVector,
    ) -> Result<Self, Error> {
        let pulse = LaserPulse {
            a0,
            omega0,
            delta_phi,
            polarization,
        };
        let k = CFourVector::from(pulse.wavevector());
        if polarization.dot(&k).norm() > 1e-12 * omega0 {
            return Err(Error::Config("laser polarization not orthogonal to k".into()));
        }
        let n = polarization.dot(&polarization.conj()).re;
        if (n + 1.0).abs() > 1e-12 {
            return Err(Error::Config("laser polarization not normalized to -1".into()));
        }
        if !(a0 > 0.0 && omega0 > 0.0 && delta_phi > 0.0) {
            return Err(Error::Config("a0, omega0 and delta_phi must be positive".into()));
        }
        Ok(pulse)
    }

    pub fn with_polarization(
        a0: f64,
        omega0: f64,
        delta_phi: f64,
        pol: LaserPolarization,
    ) -> Self {
        let c = |x: f64, y: f64| C64::new(x, y);
        let eps = match pol {
            LaserPolarization::Linear => {
                CFourVector::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))
            }
            LaserPolarization::Circular => CFourVector::new(
                c(0.0, 0.0),
                c(1.0 / SQRT_2, 0.0),
                c(0.0, 1.0 / SQRT_2),
                c(0.0, 0.0),
            ),
        };
        LaserPulse::new(a0, omega0, delta_phi, eps).expect("built-in polarization is valid")
    }

    /// k = omega0 (1, 0, 0, -1).
    pub fn wavevector(&self) -> FourVector {
        FourVector::new(self.omega0, 0.0, 0.0, -self.omega0)
    }

    /// Peak amplitude A0 = a0 m / (sqrt(2)|e|).
    pub fn field_amplitude(&self) -> f64 {
        self.a0 / (SQRT_2 * elementary_charge())
    }

    /// cos^2 window, zero outside the pulse.
    pub fn envelope(&self, phi: f64) -> f64 {
        if phi.abs() > self.delta_phi / 2.0 {
            0.0
        } else {
            let c = (PI * phi / self.delta_phi).cos();
            c * c
        }
    }

    /// Complex envelope amplitude A(phi) = A0 cos^2(pi phi/dphi) e^{-i phi}.
    pub fn envelope_amplitude(&self, phi: f64) -> C64 {
        let env = self.field_amplitude() * self.envelope(phi);
        C64::from_polar(env, -phi)
    }

    /// Real four-potential A_B(phi) = A(phi) eps + c.c.
    pub fn field_value(&self, phi: f64) -> FourVector {
        let a = self.envelope_amplitude(phi);
        let e = &self.polarization;
        FourVector::new(
            2.0 * (a * e.t).re,
            2.0 * (a * e.x).re,
            2.0 * (a * e.y).re,
            2.0 * (a * e.z).re,
        )
    }

    /// A_B^2(phi); spacelike, so non-positive everywhere.
    pub fn field_square(&self, phi: f64) -> f64 {
        let env = self.field_amplitude() * self.envelope(phi);
        let eps_sq = self.polarization.dot(&self.polarization);
        let eps_epsc = self.polarization.dot(&self.polarization.conj()).re;
        let carrier = C64::from_polar(1.0, -2.0 * phi);
        env * env * (2.0 * (eps_sq * carrier).re + 2.0 * eps_epsc)
    }
}

/// Per-emission phase coefficients kappa, zeta, upsilon.
#[derive(Clone, Copy, Debug)]
pub struct PhaseCoefficients {
    pub kappa: f64,
    pub zeta: C64,
    pub upsilon: f64,
}

impl PhaseCoefficients {
    pub const ZERO: PhaseCoefficients = PhaseCoefficients {
        kappa: 0.0,
        zeta: C64::new(0.0, 0.0),
        upsilon: 0.0,
    };
}

/// Uniform phase grid over the pulse support with the cumulative integrals
/// that every phase function is assembled from:
/// Gc = int env cos, Gs = int env sin, G2 = int A_B^2/A0^2.
#[derive(Clone, Debug)]
pub struct PulseGrid {
    pub pulse: LaserPulse,
    pub phi: Vec<f64>,
    pub step: f64,
    pub env: Vec<f64>,
    pub a2: Vec<f64>,
    pub cos_phi: Vec<f64>,
    pub sin_phi: Vec<f64>,
    pub gc: Vec<f64>,
    pub gs: Vec<f64>,
    pub g2: Vec<f64>,
    /// Integrands env*cos and env*sin backing gc and gs.
    ec: Vec<f64>,
    es: Vec<f64>,
    /// e A0 with the signed electron charge.
    pub e_a0: f64,
}

impl PulseGrid {
    /// `n` must be odd so composite Simpson applies exactly.
    pub fn new(pulse: &LaserPulse, n: usize) -> Self {
        assert!(n >= 3 && n % 2 == 1, "grid size must be odd and >= 3");
        let half = pulse.delta_phi / 2.0;
        let step = pulse.delta_phi / (n - 1) as f64;
        let phi: Vec<f64> = (0..n).map(|i| -half + i as f64 * step).collect();
        let a0n = pulse.field_amplitude();
        let env: Vec<f64> = phi.iter().map(|&p| pulse.envelope(p)).collect();
        let a2: Vec<f64> = phi
            .iter()
            .map(|&p| pulse.field_square(p) / (a0n * a0n))
            .collect();
        let cos_phi: Vec<f64> = phi.iter().map(|&p| p.cos()).collect();
        let sin_phi: Vec<f64> = phi.iter().map(|&p| p.sin()).collect();
        let ec: Vec<f64> = env.iter().zip(&cos_phi).map(|(e, c)| e * c).collect();
        let es: Vec<f64> = env.iter().zip(&sin_phi).map(|(e, s)| e * s).collect();
        let gc = cumulative_simpson_re(&ec, step);
        let gs = cumulative_simpson_re(&es, step);
        let g2 = cumulative_simpson_re(&a2, step);
        PulseGrid {
            pulse: pulse.clone(),
            phi,
            step,
            env,
            a2,
            cos_phi,
            sin_phi,
            gc,
            gs,
            g2,
            ec,
            es,
            e_a0: electron_charge() * a0n,
        }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    fn cumulant_at(&self, table: &[f64], values: &[f64], phi: f64) -> f64 {
        let half = self.pulse.delta_phi / 2.0;
        if phi <= -half {
            return 0.0;
        }
        if phi >= half {
            return *table.last().unwrap();
        }
        // cubic Hermite in the bracketing cell; the integrand is known exactly
        let x = (phi + half) / self.step;
        let i = (x.floor() as usize).min(self.len() - 2);
        let t = x - i as f64;
        let (f0, f1) = (table[i], table[i + 1]);
        let (d0, d1) = (values[i] * self.step, values[i + 1] * self.step);
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * f0 + h10 * d0 + h01 * f1 + h11 * d1
    }

    /// Cumulative int env cos at an arbitrary phase.
    pub fn gc_at(&self, phi: f64) -> f64 {
        self.cumulant_at(&self.gc, &self.ec, phi)
    }

    pub fn gs_at(&self, phi: f64) -> f64 {
        self.cumulant_at(&self.gs, &self.es, phi)
    }

    pub fn g2_at(&self, phi: f64) -> f64 {
        self.cumulant_at(&self.g2, &self.a2, phi)
    }

    /// Phase function g(phi) at an arbitrary phase; exact linear continuation
    /// kappa*phi + const outside the pulse.
    pub fn phase_g_at(&self, c: &PhaseCoefficients, phi: f64) -> f64 {
        c.kappa * phi
            + 2.0 * self.e_a0 * (c.zeta.re * self.gc_at(phi) + c.zeta.im * self.gs_at(phi))
            - 0.5 * self.e_a0 * self.e_a0 * c.upsilon * self.g2_at(phi)
    }

    /// Classical phase f_p(phi) = int_-inf^phi (2e A_B.p - e^2 A_B^2)/(2 p.k).
    pub fn classical_phase_f(&self, p: &FourVector, phi: f64) -> Result<f64, Error> {
        let k = self.pulse.wavevector();
        let pk = p.dot(&k);
        if pk.abs() < 1e-300 {
            return Err(Error::LightfrontDegenerate);
        }
        let eps_p = self.pulse.polarization.dot_real(p);
        let e_a0 = self.e_a0;
        // A_B.p = 2 A0 env (Re(eps.p) cos + Im(eps.p) sin)
        let ip: Vec<f64> = (0..self.len())
            .map(|i| {
                4.0 * e_a0 * self.env[i] * (eps_p.re * self.cos_phi[i] + eps_p.im * self.sin_phi[i])
                    - e_a0 * e_a0 * self.a2[i]
            })
            .collect();
        let table = cumulative_simpson_re(&ip, self.step);
        Ok(self.cumulant_at(&table, &ip, phi) / (2.0 * pk))
    }

    /// Phase function g(phi) = kappa phi + int [2e Re(zeta A) - e^2 ups A_B^2/2]
    /// at grid node `i`.
    pub fn phase_g(&self, c: &PhaseCoefficients, i: usize) -> f64 {
        c.kappa * self.phi[i]
            + 2.0 * self.e_a0 * (c.zeta.re * self.gc[i] + c.zeta.im * self.gs[i])
            - 0.5 * self.e_a0 * self.e_a0 * c.upsilon * self.g2[i]
    }

    /// dg/dphi - kappa at grid node `i` (the compactly supported part of the
    /// phase derivative).
    pub fn phase_g_slope(&self, c: &PhaseCoefficients, i: usize) -> f64 {
        2.0 * self.e_a0
            * self.env[i]
            * (c.zeta.re * self.cos_phi[i] + c.zeta.im * self.sin_phi[i])
            - 0.5 * self.e_a0 * self.e_a0 * c.upsilon * self.a2[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn linear_pulse() -> LaserPulse {
        LaserPulse::with_polarization(0.1, 1e-5, 40.0, LaserPolarization::Linear)
    }

    #[test]
    fn envelope_window_and_peak() {
        let p = linear_pulse();
        let a0n = p.field_amplitude();
        assert_eq!(p.envelope_amplitude(20.0 + 1e-12).norm(), 0.0);
        assert_eq!(p.envelope_amplitude(-20.0 - 1e-12).norm(), 0.0);
        assert!(p.envelope_amplitude(20.0).norm() < 1e-30);
        assert_relative_eq!(p.envelope_amplitude(0.0).norm(), a0n, max_relative = 1e-15);
        // half-maximum of |A| at +-delta_phi/4 (FWHM = delta_phi/2)
        assert_relative_eq!(
            p.envelope_amplitude(10.0).norm(),
            a0n / 2.0,
            max_relative = 1e-12
        );
        // a0 = sqrt(2) |e| A0
        assert_relative_eq!(
            SQRT_2 * crate::elementary_charge() * a0n,
            0.1,
            max_relative = 1e-14
        );
    }

    #[test]
    fn field_value_linear() {
        let p = linear_pulse();
        let a = p.field_value(0.0);
        assert_relative_eq!(a.x, 2.0 * p.field_amplitude(), max_relative = 1e-14);
        assert_eq!((a.t, a.y, a.z), (0.0, 0.0, 0.0));
        assert_eq!(p.field_value(25.0), FourVector::new(0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn field_square_nonpositive_everywhere() {
        for pol in [LaserPolarization::Linear, LaserPolarization::Circular] {
            let p = LaserPulse::with_polarization(0.5, 1e-5, 40.0, pol);
            for i in 0..2000 {
                let phi = -22.0 + 44.0 * i as f64 / 2000.0;
                assert!(p.field_square(phi) <= 1e-30);
                // consistency with the four-vector route
                let ab = p.field_value(phi);
                assert_relative_eq!(
                    p.field_square(phi),
                    ab.norm_sqr(),
                    epsilon = 1e-12 * p.field_amplitude().powi(2)
                );
            }
        }
    }

    #[test]
    fn circular_polarization_is_valid_and_flat() {
        let p = LaserPulse::with_polarization(0.1, 1e-5, 40.0, LaserPolarization::Circular);
        // |A_B| has no carrier oscillation for circular polarization
        let a0n = p.field_amplitude();
        for phi in [0.0, 0.3, 1.1] {
            assert_relative_eq!(
                p.field_square(phi),
                -2.0 * (a0n * p.envelope(phi)).powi(2),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn classical_phase_zero_cases() {
        let p = linear_pulse();
        let grid = PulseGrid::new(&p, 2049);
        let p0 = FourVector::new(70.7, 0.0, 0.0, 70.69292752);
        assert_eq!(grid.classical_phase_f(&p0, -25.0).unwrap(), 0.0);
        // vanishing field
        let weak = LaserPulse::with_polarization(1e-30, 1e-5, 40.0, LaserPolarization::Linear);
        let gw = PulseGrid::new(&weak, 2049);
        assert!(gw.classical_phase_f(&p0, 5.0).unwrap().abs() < 1e-40);
        // lightfront-degenerate momentum
        let bad = FourVector::new(1.0, 0.0, 0.0, -1.0);
        assert!(grid.classical_phase_f(&bad, 0.0).is_err());
    }

    #[test]
    fn classical_phase_closed_form_perpendicular() {
        // p perpendicular to eps (head-on electron): only the -e^2 A_B^2 term
        // survives; closed form of int cos^4(pi phi/dphi) cos^2(phi).
        let p = linear_pulse();
        let dphi = p.delta_phi;
        let grid = PulseGrid::new(&p, 4097);
        let gamma0: f64 = 70.7;
        let beta = (1.0 - 1.0 / (gamma0 * gamma0)).sqrt();
        let p0 = gamma0 * FourVector::new(1.0, 0.0, 0.0, beta);
        let k = p.wavevector();
        let e2a02 = (crate::electron_charge() * p.field_amplitude()).powi(2);
        // int_-L^L cos^4(b phi) cos^2(phi), b = pi/dphi, L = dphi/2:
        // = 3 dphi/16 + (oscillatory closed form)
        let b = PI / dphi;
        let l = dphi / 2.0;
        let osc = |freq: f64| if freq == 0.0 { 2.0 * l } else { 2.0 * (freq * l).sin() / freq };
        // cos^4(b phi) = 3/8 + cos(2b phi)/2 + cos(4b phi)/8; cos^2 = (1+cos 2phi)/2
        let mut integral = 0.0;
        for (amp, f) in [
            (3.0 / 16.0, 0.0),
            (0.25, 2.0 * b),
            (1.0 / 16.0, 4.0 * b),
            (3.0 / 16.0, 2.0),
            (0.125, 2.0 * b - 2.0),
            (0.125, 2.0 * b + 2.0),
            (1.0 / 32.0, 4.0 * b - 2.0),
            (1.0 / 32.0, 4.0 * b + 2.0),
        ] {
            integral += amp * osc(f);
        }
        let expect = 4.0 * e2a02 * integral / (2.0 * p0.dot(&k));
        let got = grid.classical_phase_f(&p0, dphi / 2.0).unwrap();
        assert_relative_eq!(got, expect, max_relative = 1e-9);
    }

    #[test]
    fn phase_g_reduces_to_linear_term_without_field() {
        let p = LaserPulse::with_polarization(1e-12, 1e-5, 40.0, LaserPolarization::Linear);
        let grid = PulseGrid::new(&p, 513);
        let c = PhaseCoefficients {
            kappa: 1.7,
            zeta: C64::new(0.3, -0.2),
            upsilon: 0.4,
        };
        for i in [0, 100, 512] {
            assert_relative_eq!(
                grid.phase_g(&c, i),
                1.7 * grid.phi[i],
                epsilon = 1e-12
            );
        }
        assert_relative_eq!(grid.phase_g(&c, 0), -1.7 * 20.0, epsilon = 1e-12);
    }
}
