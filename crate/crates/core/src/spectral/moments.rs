//! Long-time (`tau -> infinity`) moments from the eigen-expansion.
//!
//! After the kick phase and the trailing blocks, the amplitude is a sum of
//! terms `C(k) lambda_1(k)^{N tau}`, one per branch history. The integer `N`
//! is the net number of `tau`-blocks spent on branch 1 minus those on
//! branch 2 (the trailing blocks count `n` times). Each term travels at
//! `N tau h_1(k)`; histories sharing `N` and the final branch interfere,
//! different ones decouple as `tau` grows. Rescaling by `(m + n) tau` gives
//!
//! `lim E[(X_t / ((m + n) tau))^r] = int sum_N w_N(k) (N h_1(k) / (m + n))^r dk / 2pi`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::eigen::{eigensystem, EigenSystem};
use crate::error::Result;
use crate::quad::periodic_mean;
use crate::walk::{LimitCase, WalkParams};

/// Starting trapezoid grid for the moment integrals.
pub const DEFAULT_GRID: usize = 4096;
/// Doubling stops once successive estimates differ by less than this.
pub const GRID_TOLERANCE: f64 = 1e-9;
const MAX_GRID: usize = 1 << 20;

/// Weight carried at velocity multiplier `N` for one `k`, in ascending `N`.
pub fn velocity_weights(
    eig: &EigenSystem,
    psi0_coords: [Complex64; 2],
    kicks: u32,
    blocks: u32,
) -> Vec<(i64, f64)> {
    // (N, final branch) -> coherent amplitude. The (-1)^tau signs from
    // lambda_2 = -conj(lambda_1) are common to every history in a group.
    let mut groups: BTreeMap<(i64, usize), Complex64> = BTreeMap::new();
    let histories = 1usize << (kicks + 1);
    for code in 0..histories {
        let branch = |i: u32| (code >> i) & 1;
        let mut amp = psi0_coords[branch(0)];
        let mut net: i64 = 0;
        for i in 0..kicks {
            let (from, to) = (branch(i), branch(i + 1));
            net += if from == 0 { 1 } else { -1 };
            amp *= eig.overlap[to][from];
        }
        let last = branch(kicks);
        net += blocks as i64 * if last == 0 { 1 } else { -1 };
        *groups
            .entry((net, last))
            .or_insert(Complex64::new(0.0, 0.0)) += amp;
    }
    let mut by_velocity: BTreeMap<i64, f64> = BTreeMap::new();
    for ((net, _), amp) in groups {
        *by_velocity.entry(net).or_insert(0.0) += amp.norm_sqr();
    }
    by_velocity.into_iter().collect()
}

fn integrand(k: f64, params: &WalkParams, kicks: u32, blocks: u32, r: u32) -> f64 {
    let eig = eigensystem(k, params.theta);
    let coords = eig.coordinates(&params.initial_spinor());
    let denom = (kicks + blocks) as f64;
    velocity_weights(&eig, coords, kicks, blocks)
        .into_iter()
        .map(|(net, w)| {
            if r == 0 {
                w
            } else {
                w * (net as f64 * eig.h[0] / denom).powi(r as i32)
            }
        })
        .sum()
}

fn trapezoid<F>(f: F, points: usize) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    let samples: Vec<f64> = (0..points)
        .into_par_iter()
        .map(|l| f(-std::f64::consts::PI + 2.0 * std::f64::consts::PI * l as f64 / points as f64))
        .collect();
    periodic_mean(&samples)
}

fn refine<F>(f: F) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut points = DEFAULT_GRID;
    let mut prev = trapezoid(&f, points);
    while points < MAX_GRID {
        points *= 2;
        let next = trapezoid(&f, points);
        if (next - prev).abs() < GRID_TOLERANCE {
            return next;
        }
        prev = next;
    }
    prev
}

/// `lim_{tau -> inf} E[(X_t / scale)^r]` for a supported case.
pub fn limit_moment(case: LimitCase, params: &WalkParams, r: u32) -> Result<f64> {
    case.ensure_supported()?;
    let (kicks, blocks) = case.blocks();
    Ok(refine(|k| integrand(k, params, kicks, blocks, r)))
}

/// Mass that stays at velocity zero: the weight of the atom at the origin.
pub fn limit_atom(case: LimitCase, params: &WalkParams) -> Result<f64> {
    case.ensure_supported()?;
    let (kicks, blocks) = case.blocks();
    Ok(refine(|k| {
        let eig = eigensystem(k, params.theta);
        let coords = eig.coordinates(&params.initial_spinor());
        velocity_weights(&eig, coords, kicks, blocks)
            .into_iter()
            .filter(|&(net, _)| net == 0)
            .map(|(_, w)| w)
            .sum()
    }))
}
