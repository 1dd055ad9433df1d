//! Fixed workloads shared by the benchmarks.

use kickwalk::{make_params, symmetric_state, WalkParams};

/// Kicked walk at `theta = pi/4` from the symmetric state.
pub fn fixture(tau: i64, m: i64, n: i64) -> WalkParams {
    let (alpha, beta) = symmetric_state();
    make_params(std::f64::consts::FRAC_PI_4, tau, m, n, alpha, beta)
        .expect("fixture parameters are valid")
}
