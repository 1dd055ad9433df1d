//! Position-space evolution under the kick schedule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::walk::{CoinSet, Spinor, WalkParams};

/// Walk state at a fixed time, stored densely over `[-radius, radius]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    time: u64,
    radius: i64,
    values: Vec<Spinor>,
}

impl AmplitudeField {
    /// All amplitude at the origin at time 0.
    pub fn localized(spinor: Spinor) -> Self {
        AmplitudeField {
            time: 0,
            radius: 0,
            values: vec![spinor],
        }
    }

    pub fn zeros(time: u64, radius: i64) -> Self {
        AmplitudeField {
            time,
            radius,
            values: vec![Spinor::ZERO; (2 * radius + 1) as usize],
        }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Amplitude at `x`; zero outside the stored window.
    pub fn get(&self, x: i64) -> Spinor {
        if x.abs() > self.radius {
            return Spinor::ZERO;
        }
        self.values[(x + self.radius) as usize]
    }

    pub fn set(&mut self, x: i64, value: Spinor) {
        assert!(x.abs() <= self.radius, "position {x} outside field window");
        self.values[(x + self.radius) as usize] = value;
    }

    /// `(x, amplitude)` in ascending `x`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Spinor)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (i as i64 - self.radius, v))
    }

    /// Total probability, summed in ascending `x`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(Spinor::norm_sqr).sum()
    }

    /// Largest per-site amplitude difference over the union of both windows.
    pub fn max_abs_diff(&self, other: &AmplitudeField) -> f64 {
        let r = self.radius.max(other.radius);
        (-r..=r)
            .map(|x| self.get(x).max_abs_diff(&other.get(x)))
            .fold(0.0, f64::max)
    }
}

/// Position distribution at one time, ascending in `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistTable {
    pub time: u64,
    pub entries: Vec<(i64, f64)>,
}

impl DistTable {
    pub fn total(&self) -> f64 {
        self.entries.iter().map(|&(_, p)| p).sum()
    }

    pub fn get(&self, x: i64) -> f64 {
        self.entries
            .binary_search_by_key(&x, |&(pos, _)| pos)
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    /// `E[(X / scale)^r]`.
    pub fn scaled_moment(&self, scale: f64, r: u32) -> f64 {
        self.entries
            .iter()
            .map(|&(x, p)| p * (x as f64 / scale).powi(r as i32))
            .sum()
    }
}

/// True iff `t = j (tau + 1)` for some `1 <= j <= m`.
pub fn is_kick_time(t: u64, tau: u32, m: u32) -> bool {
    let period = tau as u64 + 1;
    t > 0 && t.is_multiple_of(period) && t / period <= m as u64
}

/// One time step: `psi'(x) = L psi(x + 1) + R psi(x - 1)` with `(L, R)` the
/// split of `H` on a kick and of `U` otherwise.
pub fn step(field: &AmplitudeField, coins: &CoinSet, use_kick: bool) -> AmplitudeField {
    let (left, right) = if use_kick {
        (&coins.p1, &coins.q1)
    } else {
        (&coins.p, &coins.q)
    };
    let radius = field.radius + 1;
    let mut next = AmplitudeField::zeros(field.time + 1, radius);
    for x in -radius..=radius {
        let from_right = field.get(x + 1);
        let from_left = field.get(x - 1);
        next.values[(x + radius) as usize] = left.apply(&from_right) + right.apply(&from_left);
    }
    next
}

/// Evolves the origin-localized initial state for `t_final` steps.
pub fn evolve_to(params: &WalkParams, t_final: u64) -> AmplitudeField {
    let coins = params.coins();
    let mut field = AmplitudeField::localized(params.initial_spinor());
    for t in 1..=t_final {
        field = step(&field, &coins, is_kick_time(t, params.tau, params.m));
    }
    field
}

/// Per-site probabilities; sites with zero amplitude are omitted.
pub fn probabilities(field: &AmplitudeField) -> Result<DistTable> {
    let entries: Vec<(i64, f64)> = field
        .iter()
        .map(|(x, v)| (x, v.norm_sqr()))
        .filter(|&(_, p)| p > 0.0)
        .collect();
    if entries.is_empty() {
        return Err(Error::EmptyState);
    }
    Ok(DistTable {
        time: field.time,
        entries,
    })
}
