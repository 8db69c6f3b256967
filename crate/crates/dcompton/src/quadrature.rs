//! Oscillatory phase integrals: the 1D combined-phase integrals, the 2D
//! two-emission integrals in their off-shell (sign kernel) and on-shell
//! (factorized) channels, and the regularized zeroth-order values obtained
//! through integral relations instead of divergent direct quadrature.

use crate::cmatrix::{C64, C_I};
use crate::error::Error;
use crate::kinematics::TwoPhotonGeometry;
use crate::pulse::{PhaseCoefficients, PulseGrid};
use std::f64::consts::{PI, SQRT_2, TAU};

/// Below this |kappa| the 1/kappa regularization prefactors are unreliable
/// and the spectral point is masked.
pub const KAPPA_MIN: f64 = 1e-6;

/// Composite Simpson rule on a uniform grid with an odd number of nodes.
pub fn simpson(values: &[C64], h: f64) -> C64 {
    debug_assert!(values.len() % 2 == 1 && values.len() >= 3);
    let mut s4 = C64::new(0.0, 0.0);
    let mut s2 = C64::new(0.0, 0.0);
    for i in (1..values.len() - 1).step_by(2) {
        s4 += values[i];
    }
    for i in (2..values.len() - 1).step_by(2) {
        s2 += values[i];
    }
    (values[0] + values[values.len() - 1] + 4.0 * s4 + 2.0 * s2) * C64::new(h / 3.0, 0.0)
}

pub fn simpson_re(values: &[f64], h: f64) -> f64 {
    debug_assert!(values.len() % 2 == 1 && values.len() >= 3);
    let mut s4 = 0.0;
    let mut s2 = 0.0;
    for i in (1..values.len() - 1).step_by(2) {
        s4 += values[i];
    }
    for i in (2..values.len() - 1).step_by(2) {
        s2 += values[i];
    }
    (values[0] + values[values.len() - 1] + 4.0 * s4 + 2.0 * s2) * h / 3.0
}

/// Cumulative Simpson: O(h^4)-accurate antiderivative values at every node.
/// Odd nodes use the 5/8/-1 half-panel rule.
pub fn cumulative_simpson(values: &[C64], h: f64) -> Vec<C64> {
    let n = values.len();
    debug_assert!(n % 2 == 1 && n >= 3);
    let mut out = vec![C64::new(0.0, 0.0); n];
    for i in (0..n - 2).step_by(2) {
        out[i + 1] = out[i] + (5.0 * values[i] + 8.0 * values[i + 1] - values[i + 2]) * (h / 12.0);
        out[i + 2] = out[i] + (values[i] + 4.0 * values[i + 1] + values[i + 2]) * (h / 3.0);
    }
    out
}

pub fn cumulative_simpson_re(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    debug_assert!(n % 2 == 1 && n >= 3);
    let mut out = vec![0.0; n];
    for i in (0..n - 2).step_by(2) {
        out[i + 1] = out[i] + (5.0 * values[i] + 8.0 * values[i + 1] - values[i + 2]) * (h / 12.0);
        out[i + 2] = out[i] + (values[i] + 4.0 * values[i + 1] + values[i + 2]) * (h / 3.0);
    }
    out
}

/// Recursive adaptive Simpson for smooth real integrands; used as an
/// independent oracle against the cached cumulative grids.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        m: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, m, b, fa, fm, fb, whole, tol, 48)
}

/// Grid sizing and tolerance knobs for all phase quadrature.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSettings {
    pub points_per_period: usize,
    pub min_points: usize,
    pub max_points: usize,
    pub rel_tolerance: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            points_per_period: 24,
            min_points: 2048,
            max_points: 1 << 20,
            rel_tolerance: 1e-6,
        }
    }
}

impl QuadratureSettings {
    /// Odd node count resolving the fastest phase kappa_max plus the carrier
    /// shifts (|l| <= 1 plus the +-2 harmonic content of A_B^2).
    pub fn grid_points(&self, delta_phi: f64, kappa_max: f64) -> Result<usize, Error> {
        let periods = (kappa_max + 3.0) * delta_phi / TAU;
        let wanted = (self.points_per_period as f64 * periods).ceil() as usize;
        let n = wanted.max(self.min_points);
        if n > self.max_points {
            return Err(Error::GridBudget);
        }
        Ok(n | 1)
    }
}

/// Channel of the intermediate-electron propagation between emissions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Off,
    On,
    Total,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Off, Channel::On, Channel::Total];

    pub fn as_str(&self) -> &'static str {
        match self {
            Channel::Off => "off",
            Channel::On => "on",
            Channel::Total => "total",
        }
    }
}

impl std::str::FromStr for Channel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "off" => Ok(Channel::Off),
            "on" => Ok(Channel::On),
            "total" => Ok(Channel::Total),
            other => Err(Error::Config(format!("unknown channel '{other}'"))),
        }
    }
}

/// Index pair (field-power order, harmonic shift) for each emission slot of a
/// two-emission integral; slot 2 is the later vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpsilonKey {
    pub j2: u8,
    pub l2: i8,
    pub j1: u8,
    pub l1: i8,
}

impl UpsilonKey {
    pub const fn new(j2: u8, l2: i8, j1: i8, l1: i8) -> Self {
        UpsilonKey {
            j2,
            l2,
            j1: j1 as u8,
            l1,
        }
    }
}

/// The sixteen keys appearing in the two-photon amplitude, in table order.
pub const AMPLITUDE_KEYS: [UpsilonKey; 16] = [
    UpsilonKey::new(0, 0, 0, 0),
    UpsilonKey::new(1, -1, 0, 0),
    UpsilonKey::new(1, 1, 0, 0),
    UpsilonKey::new(0, 0, 1, -1),
    UpsilonKey::new(0, 0, 1, 1),
    UpsilonKey::new(1, -1, 1, -1),
    UpsilonKey::new(1, 1, 1, 1),
    UpsilonKey::new(1, 1, 1, -1),
    UpsilonKey::new(1, -1, 1, 1),
    UpsilonKey::new(2, 0, 0, 0),
    UpsilonKey::new(0, 0, 2, 0),
    UpsilonKey::new(2, 0, 1, -1),
    UpsilonKey::new(2, 0, 1, 1),
    UpsilonKey::new(1, -1, 2, 0),
    UpsilonKey::new(1, 1, 2, 0),
    UpsilonKey::new(2, 0, 2, 0),
];

fn key_index(key: UpsilonKey) -> usize {
    AMPLITUDE_KEYS
        .iter()
        .position(|k| *k == key)
        .expect("upsilon key outside the amplitude table")
}

/// The four 1D combined-phase integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ITilde {
    /// Regularized zeroth order.
    Zero,
    /// Weight A/A0 (carrier e^{-i phi}).
    OnePlus,
    /// Conjugate partner: weight A*/A0 (carrier e^{+i phi}).
    OneMinusStar,
    /// Weight A_B^2/A0^2.
    Two,
}

/// Phase factor e^{i g(phi)} of one emission on the grid, together with the
/// compactly supported part of dg/dphi.
pub struct PhaseProfile {
    pub kappa: f64,
    pub eg: Vec<C64>,
    pub slope: Vec<f64>,
}

impl PhaseProfile {
    pub fn new(grid: &PulseGrid, coeffs: &PhaseCoefficients) -> Self {
        let n = grid.len();
        let mut eg = Vec::with_capacity(n);
        let mut slope = Vec::with_capacity(n);
        for i in 0..n {
            eg.push(C64::from_polar(1.0, grid.phase_g(coeffs, i)));
            slope.push(grid.phase_g_slope(coeffs, i));
        }
        PhaseProfile {
            kappa: coeffs.kappa,
            eg,
            slope,
        }
    }
}

/// Integrand w_j(phi) e^{i l phi} e^{i g(phi)} on the grid; j = 0, 1, 2 picks
/// 1, |A|/A0, A_B^2/A0^2.
fn weighted_values(grid: &PulseGrid, prof: &PhaseProfile, j: u8, l: i8) -> Vec<C64> {
    let n = grid.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let w = match j {
            0 => 1.0,
            1 => grid.env[i],
            2 => grid.a2[i],
            _ => unreachable!(),
        };
        let carrier = match l {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(grid.cos_phi[i], grid.sin_phi[i]),
            -1 => C64::new(grid.cos_phi[i], -grid.sin_phi[i]),
            _ => unreachable!(),
        };
        out.push(carrier * prof.eg[i] * w);
    }
    out
}

/// 1D leg integral int w_j e^{i l phi} e^{i g}; compactly supported for j >= 1.
pub fn leg_integral(grid: &PulseGrid, prof: &PhaseProfile, j: u8, l: i8) -> C64 {
    debug_assert!(j >= 1, "zeroth order must go through regularized_i0");
    simpson(&weighted_values(grid, prof, j, l), grid.step)
}

/// Regularized zeroth-order 1D integral
/// I0 = -(1/kappa) int (dg/dphi - kappa) e^{i g}; the finite part of
/// int e^{i g} with the oscillatory boundary terms discarded.
pub fn regularized_i0(grid: &PulseGrid, prof: &PhaseProfile) -> Result<C64, Error> {
    if prof.kappa.abs() < KAPPA_MIN {
        return Err(Error::SoftCollinear);
    }
    let vals: Vec<C64> = prof
        .eg
        .iter()
        .zip(&prof.slope)
        .map(|(e, s)| e * s)
        .collect();
    Ok(simpson(&vals, grid.step) * C64::new(-1.0 / prof.kappa, 0.0))
}

/// Off-shell kernel integral with the (1/2) sgn(phi2 - phi1) kernel,
/// evaluated through the cumulative inner integral.
pub fn off_kernel_integral(
    grid: &PulseGrid,
    outer: (&PhaseProfile, u8, i8),
    inner: (&PhaseProfile, u8, i8),
) -> C64 {
    let inner_vals = weighted_values(grid, inner.0, inner.1, inner.2);
    let cum = cumulative_simpson(&inner_vals, grid.step);
    let full_half = cum[cum.len() - 1] * 0.5;
    let mut outer_vals = weighted_values(grid, outer.0, outer.1, outer.2);
    for (v, c) in outer_vals.iter_mut().zip(&cum) {
        *v *= c - full_half;
    }
    simpson(&outer_vals, grid.step)
}

/// Per-ordering integral set, all values computed eagerly at construction.
struct OrderingIntegrals {
    /// [emission][slot], slot 0: (j=1,l=-1), 1: (j=1,l=+1), 2: (j=2,l=0).
    legs: [[C64; 3]; 2],
    /// Regularized zeroth-order 1D integral per emission.
    i0: [C64; 2],
    ups_off: [C64; 16],
    ups_on: [C64; 16],
}

/// All phase integrals for one spectral point.
pub struct IntegralTable {
    pub n_points: usize,
    itilde: [C64; 4],
    ords: [OrderingIntegrals; 2],
    /// a0 of the driving pulse, needed by amplitude prefactors.
    pub a0: f64,
}

fn leg_slot(j: u8, l: i8) -> usize {
    match (j, l) {
        (1, -1) => 0,
        (1, 1) => 1,
        (2, 0) => 2,
        _ => unreachable!("unsupported leg index"),
    }
}

impl IntegralTable {
    pub fn new(
        geo: &TwoPhotonGeometry,
        grid: &PulseGrid,
    ) -> Result<Self, Error> {
        if geo.kappa_min() < KAPPA_MIN {
            return Err(Error::SoftCollinear);
        }
        let a0 = grid.pulse.a0;
        let combined_prof = PhaseProfile::new(grid, &geo.combined);
        let itilde = [
            regularized_i0(grid, &combined_prof)?,
            leg_integral(grid, &combined_prof, 1, -1),
            leg_integral(grid, &combined_prof, 1, 1),
            leg_integral(grid, &combined_prof, 2, 0),
        ];
        let it_for = |j: u8, l: i8| -> C64 {
            match (j, l) {
                (0, 0) => itilde[0],
                (1, -1) => itilde[1],
                (1, 1) => itilde[2],
                (2, 0) => itilde[3],
                _ => unreachable!(),
            }
        };

        let mut ords = Vec::with_capacity(2);
        for ord in &geo.orderings {
            let prof = [
                PhaseProfile::new(grid, &ord.coeffs[0]),
                PhaseProfile::new(grid, &ord.coeffs[1]),
            ];
            let mut legs = [[C64::new(0.0, 0.0); 3]; 2];
            for n in 0..2 {
                legs[n][0] = leg_integral(grid, &prof[n], 1, -1);
                legs[n][1] = leg_integral(grid, &prof[n], 1, 1);
                legs[n][2] = leg_integral(grid, &prof[n], 2, 0);
            }
            let i0 = [
                regularized_i0(grid, &prof[0])?,
                regularized_i0(grid, &prof[1])?,
            ];
            let leg_or_i0 = |n: usize, j: u8, l: i8| -> C64 {
                if j == 0 {
                    i0[n]
                } else {
                    legs[n][leg_slot(j, l)]
                }
            };

            let mut ups_off = [C64::new(0.0, 0.0); 16];
            let mut ups_on = [C64::new(0.0, 0.0); 16];
            let mut ups_total = [C64::new(0.0, 0.0); 16];
            // directly convergent keys (both orders >= 1)
            for (idx, key) in AMPLITUDE_KEYS.iter().enumerate() {
                if key.j2 >= 1 && key.j1 >= 1 {
                    ups_off[idx] = off_kernel_integral(
                        grid,
                        (&prof[1], key.j2, key.l2),
                        (&prof[0], key.j1, key.l1),
                    );
                    ups_on[idx] =
                        0.5 * legs[1][leg_slot(key.j2, key.l2)] * legs[0][leg_slot(key.j1, key.l1)];
                    ups_total[idx] = ups_off[idx] + ups_on[idx];
                }
            }
            // zeroth-order keys: totals from the integral relations, the
            // on-shell parts from factorized regularized 1D integrals, and
            // off = total - on.
            let relation_second = |tot: &[C64; 16], j1: u8, l1: i8| -> C64 {
                // Y_{0 j1}(0, l1) expressed through kappa_2, zeta_2, ups_2
                let c2 = &ord.coeffs[1];
                let get = |j2: u8, l2: i8| tot[key_index(UpsilonKey { j2, l2, j1, l1 })];
                C_I / c2.kappa * it_for(j1, l1)
                    + c2.zeta * (a0 / (SQRT_2 * c2.kappa)) * get(1, -1)
                    + c2.zeta.conj() * (a0 / (SQRT_2 * c2.kappa)) * get(1, 1)
                    + C64::new(a0 * a0 * c2.upsilon / (4.0 * c2.kappa), 0.0) * get(2, 0)
            };
            let relation_first = |tot: &[C64; 16], j2: u8, l2: i8| -> C64 {
                // Y_{j2 0}(l2, 0) expressed through kappa_1, zeta_1, ups_1
                let c1 = &ord.coeffs[0];
                let get = |j1: u8, l1: i8| tot[key_index(UpsilonKey { j2, l2, j1, l1 })];
                -C_I / c1.kappa * it_for(j2, l2)
                    + c1.zeta * (a0 / (SQRT_2 * c1.kappa)) * get(1, -1)
                    + c1.zeta.conj() * (a0 / (SQRT_2 * c1.kappa)) * get(1, 1)
                    + C64::new(a0 * a0 * c1.upsilon / (4.0 * c1.kappa), 0.0) * get(2, 0)
            };
            for (j2, l2) in [(1u8, -1i8), (1, 1), (2, 0)] {
                let idx = key_index(UpsilonKey {
                    j2,
                    l2,
                    j1: 0,
                    l1: 0,
                });
                ups_total[idx] = relation_first(&ups_total, j2, l2);
            }
            for (j1, l1) in [(1u8, -1i8), (1, 1), (2, 0)] {
                let idx = key_index(UpsilonKey {
                    j2: 0,
                    l2: 0,
                    j1,
                    l1,
                });
                ups_total[idx] = relation_second(&ups_total, j1, l1);
            }
            {
                let idx = key_index(UpsilonKey::new(0, 0, 0, 0));
                ups_total[idx] = relation_second(&ups_total, 0, 0);
            }
            for (idx, key) in AMPLITUDE_KEYS.iter().enumerate() {
                if key.j2 == 0 || key.j1 == 0 {
                    ups_on[idx] = 0.5
                        * leg_or_i0(1, key.j2, key.l2)
                        * leg_or_i0(0, key.j1, key.l1);
                    ups_off[idx] = ups_total[idx] - ups_on[idx];
                }
            }
            ords.push(OrderingIntegrals {
                legs,
                i0,
                ups_off,
                ups_on,
            });
        }
        let ords: [OrderingIntegrals; 2] = match <[OrderingIntegrals; 2]>::try_from(ords) {
            Ok(o) => o,
            Err(_) => unreachable!(),
        };
        Ok(IntegralTable {
            n_points: grid.len(),
            itilde,
            ords,
            a0,
        })
    }

    pub fn i_tilde(&self, which: ITilde) -> C64 {
        match which {
            ITilde::Zero => self.itilde[0],
            ITilde::OnePlus => self.itilde[1],
            ITilde::OneMinusStar => self.itilde[2],
            ITilde::Two => self.itilde[3],
        }
    }

    /// Regularized zeroth-order 1D integral for `emission` (0 = first vertex)
    /// of `ordering`.
    pub fn i0(&self, ordering: usize, emission: usize) -> C64 {
        self.ords[ordering].i0[emission]
    }

    /// 1D leg integral; the zeroth order routes to the regularized value.
    pub fn leg(&self, ordering: usize, emission: usize, j: u8, l: i8) -> C64 {
        if j == 0 {
            self.ords[ordering].i0[emission]
        } else {
            self.ords[ordering].legs[emission][leg_slot(j, l)]
        }
    }

    pub fn upsilon(&self, ordering: usize, channel: Channel, key: UpsilonKey) -> C64 {
        let idx = key_index(key);
        let o = &self.ords[ordering];
        match channel {
            Channel::Off => o.ups_off[idx],
            Channel::On => o.ups_on[idx],
            Channel::Total => o.ups_off[idx] + o.ups_on[idx],
        }
    }
}

/// Builds the phase grid for a spectral point per the points-per-period rule.
pub fn grid_for_geometry(
    pulse: &crate::pulse::LaserPulse,
    geo: &TwoPhotonGeometry,
    settings: &QuadratureSettings,
) -> Result<PulseGrid, Error> {
    let n = settings.grid_points(pulse.delta_phi, geo.kappa_max())?;
    Ok(PulseGrid::new(pulse, n))
}

/// Independent quadrature paths used as oracles by the test and selfcheck
/// suites: closed-form phase cumulants for the cos^2 pulse with linear
/// polarization, and a 2D tensor integrator that splits the inner domain at
/// the kernel discontinuity.
pub mod bruteforce {
    use super::*;
    use crate::pulse::LaserPulse;

    /// Closed-form cumulative integrals (int env cos, int env sin,
    /// int A_B^2/A0^2) from the lower pulse edge, for linear polarization.
    pub struct ClosedFormCumulants {
        big_b: f64,
        half: f64,
    }

    impl ClosedFormCumulants {
        pub fn new(pulse: &LaserPulse) -> Self {
            assert!(
                (pulse.polarization.dot(&pulse.polarization).norm() - 1.0).abs() < 1e-12,
                "closed forms implemented for linear polarization"
            );
            ClosedFormCumulants {
                big_b: 2.0 * PI / pulse.delta_phi,
                half: pulse.delta_phi / 2.0,
            }
        }

        fn clamp(&self, phi: f64) -> f64 {
            phi.clamp(-self.half, self.half)
        }

        pub fn gc(&self, phi: f64) -> f64 {
            let b = self.big_b;
            let f = |x: f64| {
                0.5 * x.sin()
                    + 0.25 * (((1.0 + b) * x).sin() / (1.0 + b) + ((1.0 - b) * x).sin() / (1.0 - b))
            };
            f(self.clamp(phi)) - f(-self.half)
        }

        pub fn gs(&self, phi: f64) -> f64 {
            let b = self.big_b;
            let f = |x: f64| {
                -0.5 * x.cos()
                    - 0.25 * (((1.0 + b) * x).cos() / (1.0 + b) + ((1.0 - b) * x).cos() / (1.0 - b))
            };
            f(self.clamp(phi)) - f(-self.half)
        }

        pub fn g2(&self, phi: f64) -> f64 {
            let b = self.big_b;
            let x = self.clamp(phi);
            // A2 = -(1/4)[3 + 4cos(B p) + cos(2B p) + 3cos(2p)
            //             + 2cos((B+2)p) + 2cos((B-2)p)
            //             + cos((2B+2)p)/2 + cos((2B-2)p)/2]
            let mut acc = 3.0 * (x + self.half);
            for (amp, f) in [
                (4.0, b),
                (1.0, 2.0 * b),
                (3.0, 2.0),
                (2.0, b + 2.0),
                (2.0, b - 2.0),
                (0.5, 2.0 * b + 2.0),
                (0.5, 2.0 * b - 2.0),
            ] {
                acc += amp * ((f * x).sin() - (-f * self.half).sin()) / f;
            }
            -0.25 * acc
        }

        /// Phase g(phi) from the closed-form cumulants.
        pub fn phase_g(&self, e_a0: f64, c: &PhaseCoefficients, phi: f64) -> f64 {
            c.kappa * phi
                + 2.0 * e_a0 * (c.zeta.re * self.gc(phi) + c.zeta.im * self.gs(phi))
                - 0.5 * e_a0 * e_a0 * c.upsilon * self.g2(phi)
        }
    }

    /// Two-emission kernels.
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Kernel {
        /// (1/2) sgn(phi2 - phi1): the off-shell channel.
        HalfSign,
        /// Constant 1/2: the on-shell channel.
        Half,
        /// Theta(phi2 - phi1): the time-ordered total (electron branch).
        Theta,
    }

    /// Weight w_j(phi) e^{i l phi} for the cos^2 pulse.
    pub fn weight(pulse: &LaserPulse, j: u8, l: i8, phi: f64) -> C64 {
        let a0n = pulse.field_amplitude();
        let w = match j {
            0 => 1.0,
            1 => pulse.envelope(phi),
            2 => pulse.field_square(phi) / (a0n * a0n),
            _ => unreachable!(),
        };
        C64::from_polar(w, l as f64 * phi)
    }

    /// Brute-force 2D quadrature of
    /// int K(phi2, phi1) w_{j2} e^{i(l2 phi2 + g2)} w_{j1} e^{i(l1 phi1 + g1)}
    /// on tensor Simpson grids, splitting the inner integral exactly at the
    /// kernel discontinuity. Everything is evaluated from closed forms,
    /// independent of the cached grid path.
    #[allow(clippy::too_many_arguments)]
    pub fn upsilon_2d(
        pulse: &LaserPulse,
        e_a0: f64,
        c2: &PhaseCoefficients,
        c1: &PhaseCoefficients,
        key: UpsilonKey,
        kernel: Kernel,
        n_outer: usize,
        n_inner: usize,
    ) -> C64 {
        let cf = ClosedFormCumulants::new(pulse);
        let half = pulse.delta_phi / 2.0;
        let f2 = |phi: f64| -> C64 {
            weight(pulse, key.j2, key.l2, phi)
                * C64::from_polar(1.0, cf.phase_g(e_a0, c2, phi))
        };
        let f1 = |phi: f64| -> C64 {
            weight(pulse, key.j1, key.l1, phi)
                * C64::from_polar(1.0, cf.phase_g(e_a0, c1, phi))
        };
        let simpson_fn = |f: &dyn Fn(f64) -> C64, a: f64, b: f64, n: usize| -> C64 {
            if b - a < 1e-300 {
                return C64::new(0.0, 0.0);
            }
            let n = n | 1;
            let h = (b - a) / (n - 1) as f64;
            let vals: Vec<C64> = (0..n).map(|i| f(a + i as f64 * h)).collect();
            simpson(&vals, h)
        };
        let outer_n = n_outer | 1;
        let h = 2.0 * half / (outer_n - 1) as f64;
        let vals: Vec<C64> = (0..outer_n)
            .map(|i| {
                let phi2 = -half + i as f64 * h;
                let below = simpson_fn(&f1, -half, phi2, n_inner.max(33));
                let above = simpson_fn(&f1, phi2, half, n_inner.max(33));
                let inner = match kernel {
                    Kernel::HalfSign => 0.5 * (below - above),
                    Kernel::Half => 0.5 * (below + above),
                    Kernel::Theta => below,
                };
                f2(phi2) * inner
            })
            .collect();
        simpson(&vals, h)
    }

    /// Direct quadrature of the time-ordered total-channel value of a
    /// zeroth-order key, with the analytically regularized oscillatory tails;
    /// the independent reference for the integral relations.
    pub fn zeroth_total_direct(
        grid: &PulseGrid,
        outer_profile: &PhaseProfile,
        inner_profile: &PhaseProfile,
        key: UpsilonKey,
    ) -> C64 {
        if key.j2 == 0 {
            // inner phi2-integral from phi1 to +inf of e^{i g2}
            debug_assert!(key.l2 == 0);
            let cum = cumulative_simpson(&outer_profile.eg, grid.step);
            let last = cum[cum.len() - 1];
            let tail = outer_profile.eg[grid.len() - 1] * C_I / outer_profile.kappa;
            let mut vals = Vec::with_capacity(grid.len());
            for i in 0..grid.len() {
                let w = match key.j1 {
                    1 => grid.env[i],
                    2 => grid.a2[i],
                    _ => unreachable!(),
                };
                let carrier = C64::from_polar(w, key.l1 as f64 * grid.phi[i]);
                vals.push(carrier * inner_profile.eg[i] * ((last - cum[i]) + tail));
            }
            simpson(&vals, grid.step)
        } else {
            // inner phi1-integral from -inf to phi2 of e^{i g1}
            debug_assert!(key.j1 == 0 && key.l1 == 0);
            let cum = cumulative_simpson(&inner_profile.eg, grid.step);
            let tail = inner_profile.eg[0] * (-C_I) / inner_profile.kappa;
            let mut vals = Vec::with_capacity(grid.len());
            for i in 0..grid.len() {
                let w = match key.j2 {
                    1 => grid.env[i],
                    2 => grid.a2[i],
                    _ => unreachable!(),
                };
                let carrier = C64::from_polar(w, key.l2 as f64 * grid.phi[i]);
                vals.push(carrier * outer_profile.eg[i] * (cum[i] + tail));
            }
            simpson(&vals, grid.step)
        }
    }
}
