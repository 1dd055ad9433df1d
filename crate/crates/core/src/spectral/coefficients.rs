use num_complex::Complex64;

use super::eigen::{eigensystem, EigenSystem};
use crate::error::{Error, Result};
use crate::walk::{Mat2, Spinor, WalkParams};

/// Smallest `|z2 - z1|` accepted by the closed form.
pub const DEGENERATE_GAP: f64 = 1e-12;

/// Eigen-coordinates of the state before and after the kick phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickCoefficients {
    pub nu: Complex64,
    pub z: [Complex64; 2],
    /// `<v_j | psi_0>`.
    pub a0: [Complex64; 2],
    /// `<v_j | Psi_{m(tau+1)}(k)>`.
    pub am: [Complex64; 2],
}

fn sign_pow(exp: u64) -> f64 {
    if exp.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Matrix taking eigen-coordinates across one `H(k) U(k)^tau` block.
pub fn kick_block_matrix(eig: &EigenSystem, tau: u32) -> Mat2 {
    let l1 = eig.lambda[0].powu(tau);
    let l2 = eig.lambda[1].powu(tau);
    Mat2([
        [l1 * eig.a11(), l2 * eig.a12()],
        [l1 * eig.a21(), l2 * eig.a22()],
    ])
}

/// Principal square root, with the imaginary part made non-negative when
/// the real part vanishes.
fn principal_sqrt(x: Complex64) -> Complex64 {
    let r = x.sqrt();
    if r.re == 0.0 && r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// `nu` and the two eigenvalues `z_j = nu - (-1)^j sqrt(nu^2 + (-1)^tau)` of
/// the kick-block matrix.
pub fn block_eigenvalues(eig: &EigenSystem, tau: u32) -> (Complex64, [Complex64; 2]) {
    let parity = sign_pow(tau as u64);
    let x = eig.lambda[0].powu(tau) * eig.a11();
    let nu = (x - x.conj() * parity) * 0.5;
    let root = principal_sqrt(nu * nu + parity);
    (nu, [nu + root, nu - root])
}

/// Closed-form coefficients after `m` kick blocks (two-term recursion solved
/// through the block eigenvalues).
pub fn kick_coefficients(eig: &EigenSystem, params: &WalkParams) -> Result<KickCoefficients> {
    let tau = params.tau;
    let m = params.m as i32;
    let parity = sign_pow(tau as u64);
    let (nu, z) = block_eigenvalues(eig, tau);
    let gap = (z[1] - z[0]).norm();
    if gap < DEGENERATE_GAP {
        return Err(Error::DegenerateZ { gap });
    }
    let a0 = eig.coordinates(&params.initial_spinor());
    let l1 = eig.lambda[0].powu(tau);
    let l2 = eig.lambda[1].powu(tau);
    let diff = |p: i32| z[1].powi(p) - z[0].powi(p);
    let inv = (z[1] - z[0]).inv();

    let a1m = inv
        * (diff(m - 1) * a0[0] * parity
            + l1 * eig.a11() * diff(m) * a0[0]
            + l2 * eig.a12() * diff(m) * a0[1]);
    let a2m = inv
        * (l1 * eig.a21() * diff(m) * a0[0] + diff(m + 1) * a0[1]
            - l1 * eig.a11() * diff(m) * a0[1]);
    Ok(KickCoefficients {
        nu,
        z,
        a0,
        am: [a1m, a2m],
    })
}

/// Same coefficients by explicit powering of the kick-block matrix.
pub fn kick_coefficients_by_power(eig: &EigenSystem, params: &WalkParams) -> KickCoefficients {
    let (nu, z) = block_eigenvalues(eig, params.tau);
    let a0 = eig.coordinates(&params.initial_spinor());
    let out = kick_block_matrix(eig, params.tau)
        .pow(params.m as u64)
        .apply(&Spinor::new(a0[0], a0[1]));
    KickCoefficients {
        nu,
        z,
        a0,
        am: [out.up, out.down],
    }
}

/// Below this gap the closed form loses too many digits and `k_amplitude`
/// powers the block matrix instead.
const CONDITIONING_GAP: f64 = 1e-6;

fn coefficients_for_amplitude(eig: &EigenSystem, params: &WalkParams) -> KickCoefficients {
    match kick_coefficients(eig, params) {
        Ok(co) if (co.z[1] - co.z[0]).norm() >= CONDITIONING_GAP => co,
        _ => kick_coefficients_by_power(eig, params),
    }
}

/// Fourier amplitude at the analysis time `(m + n) tau + m`:
/// `sum_j a_{j,m} lambda_j^{n tau} v_j`.
pub fn k_amplitude(k: f64, params: &WalkParams) -> Spinor {
    let eig = eigensystem(k, params.theta);
    let co = coefficients_for_amplitude(&eig, params);
    let exp = params.n * params.tau;
    (0..2).fold(Spinor::ZERO, |acc, j| {
        acc + eig.v[j].scale(co.am[j] * eig.lambda[j].powu(exp))
    })
}
