//! Exact single-qubit linear algebra.
//!
//! Everything here works on explicit 2x2 complex matrices. Powers are taken by
//! binary exponentiation of plain products, never through an eigendecomposition,
//! so the unitarity error of `U^n` grows only with the number of products.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{check_root, Result};

/// The three Euler angles that matter for a single-qubit rotation.
///
/// The global phase is not stored. `beta` and `delta` live in `[0, 2π)`,
/// `gamma` in `[0, π]`; the constructor folds any real input into those ranges
/// (wrapping the phases, reflecting `gamma` at its two boundaries).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    beta: f64,
    delta: f64,
    gamma: f64,
}

impl EulerAngles {
    pub fn new(beta: f64, delta: f64, gamma: f64) -> Self {
        Self {
            beta: wrap_phase(beta),
            delta: wrap_phase(delta),
            gamma: reflect_polar(gamma),
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Angles whose unitary equals [`Unitary2::exact_root`] up to a global
    /// phase of -1.
    pub fn exact_root(k: usize) -> Result<Self> {
        check_root(k, 2)?;
        Ok(Self::new(1.5 * PI, 0.5 * PI, PI / k as f64))
    }

    /// Draws angles distributed as the Haar measure on SU(2): both phases
    /// uniform, `cos(gamma)` uniform on `[-1, 1]`.
    pub fn haar_random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let beta = rng.random::<f64>() * TAU;
        let delta = rng.random::<f64>() * TAU;
        let cos_gamma = 2.0 * rng.random::<f64>() - 1.0;
        Self::new(beta, delta, cos_gamma.acos())
    }

    pub fn to_unitary(&self) -> Unitary2 {
        Unitary2::from_euler(self)
    }
}

/// Folds an angle into `[0, 2π)`.
pub(crate) fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Folds an angle into `[0, π]` by reflecting at 0 and π.
pub(crate) fn reflect_polar(x: f64) -> f64 {
    let r = wrap_phase(x);
    if r > PI {
        TAU - r
    } else {
        r
    }
}

/// A 2x2 complex matrix, row-major: `m[row][col] = <row|U|col>`.
#[derive(Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex64; 2]; 2],
}

impl fmt::Debug for Unitary2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

impl Unitary2 {
    /// Builds a matrix from raw entries. No unitarity check is made; use
    /// [`Unitary2::unitarity_deviation`] when the origin is untrusted.
    pub fn from_entries(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            m: [[one, zero], [zero, one]],
        }
    }

    /// Pauli X.
    pub fn not() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            m: [[zero, one], [one, zero]],
        }
    }

    /// The Euler-angle parameterization with the global phase set to zero.
    pub fn from_euler(a: &EulerAngles) -> Self {
        let (s, c) = (a.gamma / 2.0).sin_cos();
        let sum = (a.beta + a.delta) / 2.0;
        let diff = (a.beta - a.delta) / 2.0;
        Self {
            m: [
                [Complex64::from_polar(c, -sum), -Complex64::from_polar(s, -diff)],
                [Complex64::from_polar(s, diff), Complex64::from_polar(c, sum)],
            ],
        }
    }

    /// `cos(π/2k)·I − i·sin(π/2k)·X`, whose k-th power is `−i·X`.
    pub fn exact_root(k: usize) -> Result<Self> {
        check_root(k, 2)?;
        Ok(Self::x_rotation(PI / (2.0 * k as f64)))
    }

    /// `cos(theta)·I − i·sin(theta)·X`.
    pub fn x_rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let d = Complex64::new(c, 0.0);
        let o = Complex64::new(0.0, -s);
        Self { m: [[d, o], [o, d]] }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    /// Multiplies every entry by `e^{i alpha}`.
    pub fn with_phase(&self, alpha: f64) -> Self {
        let p = Complex64::from_polar(1.0, alpha);
        let mut m = self.m;
        for row in m.iter_mut() {
            for z in row.iter_mut() {
                *z *= p;
            }
        }
        Self { m }
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    /// `U^n` by binary exponentiation; `n = 0` gives the identity.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::identity();
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            n >>= 1;
            if n > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// `|<b|U|a>|²`, the probability that input bit `a` is measured as `b`.
    pub fn transition_prob(&self, a: u8, b: u8) -> f64 {
        debug_assert!(a < 2 && b < 2);
        self.m[b as usize][a as usize].norm_sqr()
    }

    /// Largest absolute entry of `U†U − I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.adjoint() * *self;
        let id = Self::identity();
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((p.m[r][c] - id.m[r][c]).norm());
            }
        }
        worst
    }

    /// Largest absolute entry difference between two matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }
}

impl Mul for Unitary2 {
    type Output = Unitary2;

    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let a = &self.m;
        let b = &rhs.m;
        Unitary2 {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }
}
