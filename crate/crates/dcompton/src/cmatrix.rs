//! Small fixed-size complex matrices used for Dirac algebra and two-qubit
//! density matrices, plus a Hermitian eigensolver.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const C_ZERO: C64 = C64::new(0.0, 0.0);
pub const C_ONE: C64 = C64::new(1.0, 0.0);
pub const C_I: C64 = C64::new(0.0, 1.0);

/// 2x2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// 4x4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[C_ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.0[0][0] = C_ONE;
        m.0[1][1] = C_ONE;
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Square root of a Hermitian positive semidefinite matrix via the
    /// trace/determinant closed form.
    pub fn sqrt_psd(&self) -> Self {
        let det = (self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]).re;
        let tr = (self.0[0][0] + self.0[1][1]).re;
        let s = det.max(0.0).sqrt();
        let denom = (tr + 2.0 * s).sqrt();
        let mut m = *self;
        m.0[0][0] += C64::new(s, 0.0);
        m.0[1][1] += C64::new(s, 0.0);
        m * C64::new(1.0 / denom, 0.0)
    }

    /// Kronecker product, `self` as the slow (first) factor.
    pub fn kron(&self, other: &Mat2) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = self.0[i][j] * other.0[k][l];
                    }
                }
            }
        }
        m
    }
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[C_ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C_ONE;
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for v in row.iter_mut() {
                *v = v.conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
    /// sweeps. Returns eigenvalues in descending order and the matching
    /// eigenvectors as columns of the returned matrix.
    pub fn hermitian_eigen(&self) -> ([f64; 4], Mat4) {
        let mut a = *self;
        let mut v = Mat4::identity();
        for _sweep in 0..60 {
            let mut off = 0.0;
            for p in 0..3 {
                for q in (p + 1)..4 {
                    off += a.0[p][q].norm_sqr();
                }
            }
            if off < 1e-30 * (1.0 + a.frobenius_norm().powi(2)) {
                break;
            }
            for p in 0..3 {
                for q in (p + 1)..4 {
                    let apq = a.0[p][q];
                    if apq.norm_sqr() == 0.0 {
                        continue;
                    }
                    let app = a.0[p][p].re;
                    let aqq = a.0[q][q].re;
                    let phase = apq / apq.norm();
                    let w = (aqq - app) / (2.0 * apq.norm());
                    let t = if w == 0.0 {
                        1.0
                    } else {
                        w.signum() / (w.abs() + (1.0 + w * w).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // columns p,q of A and V are mixed by the plane rotation
                    let (cp, sp) = (C64::new(c, 0.0), phase * s);
                    for i in 0..4 {
                        let aip = a.0[i][p];
                        let aiq = a.0[i][q];
                        a.0[i][p] = aip * cp - aiq * sp.conj();
                        a.0[i][q] = aip * sp + aiq * cp;
                        let vip = v.0[i][p];
                        let viq = v.0[i][q];
                        v.0[i][p] = vip * cp - viq * sp.conj();
                        v.0[i][q] = vip * sp + viq * cp;
                    }
                    for i in 0..4 {
                        let api = a.0[p][i];
                        let aqi = a.0[q][i];
                        a.0[p][i] = api * cp - aqi * sp;
                        a.0[q][i] = api * sp.conj() + aqi * cp;
                    }
                }
            }
        }
        let mut idx = [0usize, 1, 2, 3];
        let lam = [a.0[0][0].re, a.0[1][1].re, a.0[2][2].re, a.0[3][3].re];
        idx.sort_by(|&i, &j| lam[j].partial_cmp(&lam[i]).unwrap());
        let mut vals = [0.0; 4];
        let mut vecs = Mat4::zero();
        for (col, &i) in idx.iter().enumerate() {
            vals[col] = lam[i];
            for r in 0..4 {
                vecs.0[r][col] = v.0[r][i];
            }
        }
        (vals, vecs)
    }

    /// Square root of a Hermitian PSD matrix; tiny negative eigenvalues are
    /// clamped to zero.
    pub fn sqrt_psd(&self) -> Mat4 {
        let (vals, vecs) = self.hermitian_eigen();
        let mut d = Mat4::zero();
        for i in 0..4 {
            d.0[i][i] = C64::new(vals[i].max(0.0).sqrt(), 0.0);
        }
        vecs * d * vecs.dagger()
    }

    pub fn transpose(&self) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    /// Singular values in descending order by one-sided Jacobi; small values
    /// are resolved to absolute accuracy ~eps * ||A|| without squaring.
    pub fn singular_values(&self) -> [f64; 4] {
        let mut a = *self;
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..3 {
                for q in (p + 1)..4 {
                    let mut g = C64::new(0.0, 0.0);
                    let mut np = 0.0;
                    let mut nq = 0.0;
                    for i in 0..4 {
                        g += a.0[i][p].conj() * a.0[i][q];
                        np += a.0[i][p].norm_sqr();
                        nq += a.0[i][q].norm_sqr();
                    }
                    if g.norm_sqr() <= 1e-60 * np * nq || np == 0.0 || nq == 0.0 {
                        continue;
                    }
                    rotated = true;
                    let phase = g / g.norm();
                    let w = (nq - np) / (2.0 * g.norm());
                    let t = if w == 0.0 {
                        1.0
                    } else {
                        w.signum() / (w.abs() + (1.0 + w * w).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let sp = phase * (t * c);
                    let cp = C64::new(c, 0.0);
                    for i in 0..4 {
                        let aip = a.0[i][p];
                        let aiq = a.0[i][q];
                        a.0[i][p] = aip * cp - aiq * sp.conj();
                        a.0[i][q] = aip * sp + aiq * cp;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut s = [0.0f64; 4];
        for (j, sv) in s.iter_mut().enumerate() {
            let mut n = 0.0;
            for i in 0..4 {
                n += a.0[i][j].norm_sqr();
            }
            *sv = n.sqrt();
        }
        s.sort_by(|x, y| y.partial_cmp(x).unwrap());
        s
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self * C64::new(-1.0, 0.0)
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a == C_ZERO {
                    continue;
                }
                for j in 0..4 {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl Mul<C64> for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: C64) -> Mat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] *= rhs;
            }
        }
        m
    }
}

impl Mul<f64> for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: f64) -> Mat4 {
        self * C64::new(rhs, 0.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    m.0[i][j] += self.0[i][k] * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl Mul<C64> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: C64) -> Mat2 {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] *= rhs;
            }
        }
        m
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut m = self;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

/// Pauli matrix sigma_l for l in 0..=3 (sigma_0 is the identity).
pub fn pauli(l: usize) -> Mat2 {
    let mut m = Mat2::zero();
    match l {
        0 => {
            m.0[0][0] = C_ONE;
            m.0[1][1] = C_ONE;
        }
        1 => {
            m.0[0][1] = C_ONE;
            m.0[1][0] = C_ONE;
        }
        2 => {
            m.0[0][1] = -C_I;
            m.0[1][0] = C_I;
        }
        3 => {
            m.0[0][0] = C_ONE;
            m.0[1][1] = -C_ONE;
        }
        _ => panic!("pauli index out of range"),
    }
    m
}
