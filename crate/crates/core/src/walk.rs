//! Walk parameters, the two coins and their split matrices.
//!
//! The walker lives on the integer line with a two-component chirality
//! spinor at every site. A regular step applies the rotation coin
//! `U = [[c, s], [s, -c]]`, split into `P` (upper row, moves left) and
//! `Q` (lower row, moves right). At the `m` kick times `j(tau + 1)` the
//! coin `H = diag(1, -1)` is used instead, split into `P1`, `Q1`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::ops::{Add, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|alpha|^2 + |beta|^2 - 1`.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Minimum distance of `theta` from the degenerate angles.
pub const THETA_EXCLUSION: f64 = 1e-9;

/// Two chirality amplitudes at one site.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Spinor {
    pub up: Complex64,
    pub down: Complex64,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        up: Complex64::new(0.0, 0.0),
        down: Complex64::new(0.0, 0.0),
    };

    pub fn new(up: Complex64, down: Complex64) -> Self {
        Spinor { up, down }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn scale(&self, factor: Complex64) -> Spinor {
        Spinor::new(self.up * factor, self.down * factor)
    }

    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        (self.up - other.up)
            .norm()
            .max((self.down - other.down).norm())
    }
}

impl Add for Spinor {
    type Output = Spinor;

    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.up + rhs.up, self.down + rhs.down)
    }
}

/// Complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2::real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn real(m: [[f64; 2]; 2]) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        Mat2([[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]])
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Mat2([[a, z], [z, b]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        let m = &self.0;
        Spinor::new(
            m[0][0] * v.up + m[0][1] * v.down,
            m[1][0] * v.up + m[1][1] * v.down,
        )
    }

    pub fn pow(&self, mut exp: u64) -> Mat2 {
        let mut base = *self;
        let mut acc = Mat2::identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += rhs.0[i][j];
            }
        }
        Mat2(out)
    }
}

/// A validated experiment configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    pub theta: f64,
    /// Number of regular steps between kicks.
    pub tau: u32,
    /// Number of kicks.
    pub m: u32,
    /// Number of `tau`-blocks of regular steps after the last kick.
    pub n: u32,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl WalkParams {
    pub fn initial_spinor(&self) -> Spinor {
        Spinor::new(self.alpha, self.beta)
    }

    pub fn cos(&self) -> f64 {
        self.theta.cos()
    }

    pub fn sin(&self) -> f64 {
        self.theta.sin()
    }

    /// The time `(m + n) tau + m` at which the limit theorems are stated.
    pub fn analysis_time(&self) -> u64 {
        (self.m as u64 + self.n as u64) * self.tau as u64 + self.m as u64
    }

    pub fn coins(&self) -> CoinSet {
        coin_matrices(self.theta)
    }

    pub fn with_state(mut self, alpha: Complex64, beta: Complex64) -> Result<Self> {
        check_normalized(alpha, beta)?;
        self.alpha = alpha;
        self.beta = beta;
        Ok(self)
    }
}

fn check_positive(name: &'static str, value: i64) -> Result<u32> {
    if value < 1 || value > u32::MAX as i64 {
        return Err(Error::NonPositive { name, value });
    }
    Ok(value as u32)
}

fn check_normalized(alpha: Complex64, beta: Complex64) -> Result<()> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// True when `theta` is in `[0, 2pi)` and away from every multiple of `pi/2`.
pub fn theta_is_legal(theta: f64) -> bool {
    if !theta.is_finite() || !(0.0..TAU).contains(&theta) {
        return false;
    }
    (0..=4).all(|q| (theta - q as f64 * FRAC_PI_2).abs() > THETA_EXCLUSION)
}

/// Validates raw inputs into [`WalkParams`]. Normalization is checked, never repaired.
pub fn make_params(
    theta: f64,
    tau: i64,
    m: i64,
    n: i64,
    alpha: Complex64,
    beta: Complex64,
) -> Result<WalkParams> {
    if !theta_is_legal(theta) {
        return Err(Error::ForbiddenTheta(theta));
    }
    let tau = check_positive("tau", tau)?;
    let m = check_positive("m", m)?;
    let n = check_positive("n", n)?;
    check_normalized(alpha, beta)?;
    Ok(WalkParams {
        theta,
        tau,
        m,
        n,
        alpha,
        beta,
    })
}

/// `(1/sqrt 2, i/sqrt 2)`: the symmetric state.
pub fn symmetric_state() -> (Complex64, Complex64) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    (Complex64::new(r, 0.0), Complex64::new(0.0, r))
}

/// `(1, 0)`: upper chirality only.
pub fn up_state() -> (Complex64, Complex64) {
    (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinSet {
    pub u: Mat2,
    pub h: Mat2,
    pub p: Mat2,
    pub q: Mat2,
    pub p1: Mat2,
    pub q1: Mat2,
    pub c: f64,
    pub s: f64,
}

pub fn coin_matrices(theta: f64) -> CoinSet {
    let (s, c) = theta.sin_cos();
    CoinSet {
        u: Mat2::real([[c, s], [s, -c]]),
        h: Mat2::real([[1.0, 0.0], [0.0, -1.0]]),
        p: Mat2::real([[c, s], [0.0, 0.0]]),
        q: Mat2::real([[0.0, 0.0], [s, -c]]),
        p1: Mat2::real([[1.0, 0.0], [0.0, 0.0]]),
        q1: Mat2::real([[0.0, 0.0], [0.0, -1.0]]),
        c,
        s,
    }
}

/// Which limit theorem a run is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LimitCase {
    /// No kick acts before time `tau`; the walk is observed at `tau`.
    Usual,
    /// `m` kicks, observed at `(m + n) tau + m`.
    Kicked { m: u32, n: u32 },
}

impl LimitCase {
    pub fn from_params(params: &WalkParams) -> Self {
        LimitCase::Kicked {
            m: params.m,
            n: params.n,
        }
    }

    pub fn final_time(&self, tau: u32) -> u64 {
        match *self {
            LimitCase::Usual => tau as u64,
            LimitCase::Kicked { m, n } => (m as u64 + n as u64) * tau as u64 + m as u64,
        }
    }

    /// Ballistic normalization of `X_t`.
    pub fn scale(&self, tau: u32) -> f64 {
        match *self {
            LimitCase::Usual => tau as f64,
            LimitCase::Kicked { m, n } => (m as f64 + n as f64) * tau as f64,
        }
    }

    /// Errors unless a closed-form law exists for this case.
    pub fn ensure_supported(&self) -> Result<()> {
        match *self {
            LimitCase::Usual => Ok(()),
            LimitCase::Kicked { m, n } if (1..=2).contains(&m) && n >= 1 => Ok(()),
            LimitCase::Kicked { m, n } => Err(Error::UnsupportedCase { m, n }),
        }
    }

    /// `(kicks, trailing blocks)`; the usual walk is zero kicks and one block.
    pub fn blocks(&self) -> (u32, u32) {
        match *self {
            LimitCase::Usual => (0, 1),
            LimitCase::Kicked { m, n } => (m, n),
        }
    }
}

impl std::fmt::Display for LimitCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LimitCase::Usual => write!(f, "usual"),
            LimitCase::Kicked { m, n } => write!(f, "{m},{n}"),
        }
    }
}

impl std::str::FromStr for LimitCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("usual") {
            return Ok(LimitCase::Usual);
        }
        let bad = || Error::InvalidArgument(format!("case must be `usual` or `m,n`, got `{s}`"));
        let (m, n) = s.split_once(',').ok_or_else(bad)?;
        let m: i64 = m.trim().parse().map_err(|_| bad())?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        Ok(LimitCase::Kicked {
            m: check_positive("m", m)?,
            n: check_positive("n", n)?,
        })
    }
}
