//! Fourier-space route: the walk is diagonal in quasi-momentum `k`, with
//! `U(k) = R(k) U` for regular steps and `H(k) = R(k) H` for kicks.

mod coefficients;
mod eigen;
mod moments;

pub use coefficients::{
    block_eigenvalues, k_amplitude, kick_block_matrix, kick_coefficients,
    kick_coefficients_by_power, KickCoefficients, DEGENERATE_GAP,
};
pub use eigen::{
    eigensystem, h_hat, overlap_a11_closed, overlap_a12_closed, u_hat, EigenSystem,
    EIGVEC_DEGENERACY,
};
pub use moments::{limit_atom, limit_moment, velocity_weights, DEFAULT_GRID, GRID_TOLERANCE};

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evolve::AmplitudeField;
use crate::walk::{Spinor, WalkParams};

/// Rebuilds `psi_t` at the analysis time from `samples` equispaced values of
/// the Fourier amplitude, `k_l = -pi + 2 pi l / samples`. Exact up to
/// rounding once `samples >= 2t + 1`, since the field lives on `[-t, t]`.
pub fn reconstruct_field(params: &WalkParams, samples: usize) -> Result<AmplitudeField> {
    let t = params.analysis_time();
    let needed = 2 * t as usize + 1;
    if samples < needed {
        return Err(Error::InsufficientSamples {
            needed,
            got: samples,
        });
    }
    let amplitudes: Vec<Spinor> = (0..samples)
        .into_par_iter()
        .map(|l| k_amplitude(-PI + 2.0 * PI * l as f64 / samples as f64, params))
        .collect();
    let twiddle: Vec<Complex64> = (0..samples)
        .map(|j| Complex64::cis(2.0 * PI * j as f64 / samples as f64))
        .collect();

    let t = t as i64;
    let n = samples as i64;
    let values: Vec<Spinor> = (-t..=t)
        .into_par_iter()
        .map(|x| {
            // e^{i k_l x} = e^{-i pi x} e^{2 pi i l x / N}
            let sum = amplitudes
                .iter()
                .enumerate()
                .fold(Spinor::ZERO, |acc, (l, amp)| {
                    let idx = (l as i64 * x).rem_euclid(n) as usize;
                    acc + amp.scale(twiddle[idx])
                });
            let base = if x.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            sum.scale(Complex64::new(base / n as f64, 0.0))
        })
        .collect();

    let mut field = AmplitudeField::zeros(t as u64, t);
    for (x, v) in (-t..=t).zip(values) {
        field.set(x, v);
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::evolve_to;
    use crate::walk::{make_params, symmetric_state, up_state};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn too_few_samples() {
        let (a, b) = up_state();
        let p = make_params(FRAC_PI_4, 2, 1, 1, a, b).unwrap();
        assert_eq!(
            reconstruct_field(&p, 10),
            Err(Error::InsufficientSamples {
                needed: 11,
                got: 10
            })
        );
    }

    #[test]
    fn matches_direct_evolution() {
        let (a, b) = symmetric_state();
        let p = make_params(FRAC_PI_4, 10, 2, 3, a, b).unwrap();
        let t = p.analysis_time();
        let spectral = reconstruct_field(&p, 2 * t as usize + 3).unwrap();
        let direct = evolve_to(&p, t);
        assert!(spectral.max_abs_diff(&direct) <= 1e-10);
        for (x, v) in spectral.iter() {
            if (x + t as i64) % 2 != 0 {
                assert!(v.norm_sqr().sqrt() <= 1e-12);
            }
        }
    }
}
