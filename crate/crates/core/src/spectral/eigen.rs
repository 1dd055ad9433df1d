use num_complex::Complex64;

use crate::walk::{coin_matrices, Mat2, Spinor};

/// Below this the eigenvector closed form is replaced by a direct solve.
pub const EIGVEC_DEGENERACY: f64 = 1e-12;

/// `U(k) = R(k) U` with `R(k) = diag(e^{ik}, e^{-ik})`.
pub fn u_hat(k: f64, theta: f64) -> Mat2 {
    let r = Mat2::diag(Complex64::cis(k), Complex64::cis(-k));
    r * coin_matrices(theta).u
}

/// `H(k) = R(k) H`.
pub fn h_hat(k: f64) -> Mat2 {
    Mat2::diag(Complex64::cis(k), -Complex64::cis(-k))
}

/// Spectral data of `U(k)` at one quasi-momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub k: f64,
    pub lambda: [Complex64; 2],
    pub v: [Spinor; 2],
    /// Group velocities `i lambda_j' / lambda_j`.
    pub h: [f64; 2],
    /// `overlap[i][j] = <v_i| H(k) |v_j>`.
    pub overlap: [[Complex64; 2]; 2],
    /// False when the eigenvectors came from the direct-solve fallback and
    /// therefore carry a different phase convention.
    pub closed_form: bool,
}

impl EigenSystem {
    pub fn a11(&self) -> Complex64 {
        self.overlap[0][0]
    }

    pub fn a12(&self) -> Complex64 {
        self.overlap[0][1]
    }

    pub fn a21(&self) -> Complex64 {
        self.overlap[1][0]
    }

    pub fn a22(&self) -> Complex64 {
        self.overlap[1][1]
    }

    /// `(<v_1|psi>, <v_2|psi>)`.
    pub fn coordinates(&self, psi: &Spinor) -> [Complex64; 2] {
        [self.v[0].inner(psi), self.v[1].inner(psi)]
    }
}

fn dispersion(k: f64, c: f64) -> f64 {
    let sk = k.sin();
    (1.0 - c * c * sk * sk).sqrt()
}

/// Closed form of `<v_1|H(k)|v_1>`.
pub fn overlap_a11_closed(k: f64, theta: f64) -> Complex64 {
    let c = theta.cos();
    let w = dispersion(k, c);
    let ck = k.cos();
    Complex64::new(c * ck * ck, k.sin() * w) / w
}

/// Closed form of `<v_1|H(k)|v_2>`, real.
pub fn overlap_a12_closed(k: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    s.abs() * k.cos() / dispersion(k, c)
}

pub fn eigensystem(k: f64, theta: f64) -> EigenSystem {
    let (s, c) = theta.sin_cos();
    let w = dispersion(k, c);
    let (sk, ck) = k.sin_cos();
    // lambda_j = -(-1)^j w + i c sin k
    let lambda = [Complex64::new(w, c * sk), Complex64::new(-w, c * sk)];
    let h = [-c * ck / w, c * ck / w];

    // p_j = w + (-1)^{j+1} c cos k; p_1 p_2 = s^2, so the smaller one is
    // taken from the larger to avoid cancellation.
    let big = w + (c * ck).abs();
    let small = s * s / big;
    let p = if c * ck >= 0.0 {
        [big, small]
    } else {
        [small, big]
    };
    let (v, closed_form) = if small < EIGVEC_DEGENERACY {
        let u = u_hat(k, theta);
        (
            [direct_eigvec(&u, lambda[0]), direct_eigvec(&u, lambda[1])],
            false,
        )
    } else {
        let make = |j: usize, sg: f64| {
            Spinor::new(
                Complex64::cis(k) * (s.signum() * (p[j] / (2.0 * w)).sqrt()),
                Complex64::new(sg * (p[1 - j] / (2.0 * w)).sqrt(), 0.0),
            )
        };
        ([make(0, 1.0), make(1, -1.0)], true)
    };

    let hk = h_hat(k);
    let mut overlap = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in overlap.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = v[i].inner(&hk.apply(&v[j]));
        }
    }
    EigenSystem {
        k,
        lambda,
        v,
        h,
        overlap,
        closed_form,
    }
}

/// Null vector of `U - lambda I`, normalized, first nonzero component real positive.
pub(crate) fn direct_eigvec(u: &Mat2, lambda: Complex64) -> Spinor {
    let m = &u.0;
    let from_row0 = Spinor::new(m[0][1], lambda - m[0][0]);
    let from_row1 = Spinor::new(lambda - m[1][1], m[1][0]);
    let pick = if from_row0.norm_sqr() >= from_row1.norm_sqr() {
        from_row0
    } else {
        from_row1
    };
    let norm = pick.norm_sqr().sqrt();
    let lead = if pick.up.norm() > 1e-150 {
        pick.up
    } else {
        pick.down
    };
    let phase = lead.conj() / lead.norm();
    pick.scale(phase / norm)
}
