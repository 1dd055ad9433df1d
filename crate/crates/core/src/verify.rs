//! Cross-checks between the simulated walk and the limit laws.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{evolve_to, probabilities, DistTable};
use crate::limitlaw::{limit_law, Component, LimitLaw};
use crate::spectral::limit_moment;
use crate::walk::{LimitCase, WalkParams};

/// Points of the uniform grid on `[-1, 1]` added to every KS evaluation.
pub const KS_GRID_POINTS: usize = 2001;

/// Default half-width of the atom window, in rescaled units.
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.05;

/// Something whose distribution function can be evaluated at sorted points.
pub trait DistributionFunction {
    /// `(F(x-), F(x))` for each point of ascending `xs`.
    fn cdf_sorted(&self, xs: &[f64]) -> Vec<(f64, f64)>;
}

impl DistributionFunction for LimitLaw {
    fn cdf_sorted(&self, xs: &[f64]) -> Vec<(f64, f64)> {
        LimitLaw::cdf_sorted(self, xs)
    }
}

/// Right-continuous step function with jumps at `points`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    points: Vec<f64>,
    cumulative: Vec<f64>,
}

impl EmpiricalCdf {
    /// From `(position, mass)` pairs in ascending position.
    pub fn from_sorted_masses(masses: &[(f64, f64)]) -> Self {
        let mut acc = 0.0;
        let mut points = Vec::with_capacity(masses.len());
        let mut cumulative = Vec::with_capacity(masses.len());
        for &(x, p) in masses {
            acc += p;
            points.push(x);
            cumulative.push(acc);
        }
        EmpiricalCdf { points, cumulative }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.points.partition_point(|&p| p <= x) {
            0 => 0.0,
            i => self.cumulative[i - 1],
        }
    }
}

impl DistributionFunction for EmpiricalCdf {
    fn cdf_sorted(&self, xs: &[f64]) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(xs.len());
        let mut below = 0; // number of jump points < x
        for &x in xs {
            while below < self.points.len() && self.points[below] < x {
                below += 1;
            }
            let left = if below == 0 {
                0.0
            } else {
                self.cumulative[below - 1]
            };
            let mut upto = below;
            while upto < self.points.len() && self.points[upto] <= x {
                upto += 1;
            }
            let right = if upto == 0 {
                0.0
            } else {
                self.cumulative[upto - 1]
            };
            out.push((left, right));
        }
        out
    }
}

/// CDF of `X_t / scale`.
pub fn rescaled_empirical_cdf(dist: &DistTable, scale: f64) -> EmpiricalCdf {
    let masses: Vec<(f64, f64)> = dist
        .entries
        .iter()
        .map(|&(x, p)| (x as f64 / scale, p))
        .collect();
    EmpiricalCdf::from_sorted_masses(&masses)
}

/// Sup distance between the two CDFs, evaluated from both sides at every
/// jump of the empirical CDF, at the origin, and on a uniform grid of
/// [`KS_GRID_POINTS`] over `[-1, 1]`.
pub fn ks_distance<D: DistributionFunction + ?Sized>(empirical: &EmpiricalCdf, target: &D) -> f64 {
    let mut xs: Vec<f64> = empirical.points.clone();
    xs.push(0.0);
    let last = (KS_GRID_POINTS - 1) as f64;
    xs.extend((0..KS_GRID_POINTS).map(|i| -1.0 + 2.0 * i as f64 / last));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let lhs = empirical.cdf_sorted(&xs);
    let rhs = target.cdf_sorted(&xs);
    lhs.iter()
        .zip(&rhs)
        .map(|(a, b)| (a.0 - b.0).abs().max((a.1 - b.1).abs()))
        .fold(0.0, f64::max)
}

/// Probability within `|x| <= window_fraction * scale`.
pub fn localization_mass(dist: &DistTable, scale: f64, window_fraction: f64) -> Result<f64> {
    if !(window_fraction > 0.0 && window_fraction < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "window fraction must lie in (0, 1/2), got {window_fraction}"
        )));
    }
    let half = window_fraction * scale;
    Ok(dist
        .entries
        .iter()
        .filter(|&&(x, _)| (x as f64).abs() <= half)
        .fold(0.0, |acc, &(_, p)| acc + p))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Localization {
    pub window_fraction: f64,
    pub empirical_mass: f64,
    /// Weight of the atom at the origin.
    pub predicted_atom: f64,
    /// Mass the limit law puts in the window, atom plus continuous part.
    pub predicted_window_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub r: u32,
    pub empirical: f64,
    pub spectral: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawSummary {
    pub delta_weight: f64,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub final_time: u64,
    pub scale: f64,
    pub occupied_sites: usize,
    pub total_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub case: String,
    pub params: WalkParams,
    pub run: RunInfo,
    pub law: LawSummary,
    pub ks_distance: f64,
    pub localization: Localization,
    pub moments: Vec<MomentRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareOptions {
    pub window_fraction: f64,
    pub orders: Vec<u32>,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            window_fraction: DEFAULT_WINDOW_FRACTION,
            orders: vec![1, 2],
        }
    }
}

/// Runs the walk to the case's final time and compares it against the
/// limit law: KS distance, atom window, and moments from three routes.
pub fn compare(
    params: &WalkParams,
    case: LimitCase,
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    case.ensure_supported()?;
    let law = limit_law(case, params)?;
    let t = case.final_time(params.tau);
    let scale = case.scale(params.tau);
    let dist = probabilities(&evolve_to(params, t))?;
    let empirical = rescaled_empirical_cdf(&dist, scale);

    let localization = Localization {
        window_fraction: options.window_fraction,
        empirical_mass: localization_mass(&dist, scale, options.window_fraction)?,
        predicted_atom: law.delta_weight,
        predicted_window_mass: law.window_mass(options.window_fraction),
    };
    let moments = options
        .orders
        .iter()
        .map(|&r| {
            Ok(MomentRow {
                r,
                empirical: dist.scaled_moment(scale, r),
                spectral: limit_moment(case, params, r)?,
                density: law.moment(r),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ComparisonReport {
        case: case.to_string(),
        params: *params,
        run: RunInfo {
            final_time: t,
            scale,
            occupied_sites: dist.entries.len(),
            total_probability: dist.total(),
        },
        law: LawSummary {
            delta_weight: law.delta_weight,
            components: law.components.clone(),
        },
        ks_distance: ks_distance(&empirical, &law),
        localization,
        moments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{make_params, symmetric_state, up_state};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    fn table(entries: Vec<(i64, f64)>) -> DistTable {
        DistTable { time: 0, entries }
    }

    #[test]
    fn point_mass_is_a_heaviside() {
        let cdf = rescaled_empirical_cdf(&table(vec![(0, 1.0)]), 37.0);
        assert_eq!(cdf.eval(-1e-9), 0.0);
        assert_eq!(cdf.eval(0.0), 1.0);
        assert_eq!(cdf.cdf_sorted(&[0.0]), vec![(0.0, 1.0)]);
    }

    #[test]
    fn two_point_rescaling() {
        let cdf = rescaled_empirical_cdf(&table(vec![(-40, 0.5), (40, 0.5)]), 40.0);
        assert_eq!(cdf.points(), &[-1.0, 1.0]);
        assert_eq!(cdf.eval(-1.0), 0.5);
        assert_eq!(cdf.eval(0.3), 0.5);
        assert_eq!(cdf.eval(1.0), 1.0);
        assert_eq!(cdf.cdf_sorted(&[-1.0, 1.0]), vec![(0.0, 0.5), (0.5, 1.0)]);
    }

    #[test]
    fn ks_of_identical_distributions_is_zero() {
        let cdf = rescaled_empirical_cdf(&table(vec![(-3, 0.2), (0, 0.5), (5, 0.3)]), 10.0);
        assert!(ks_distance(&cdf, &cdf) <= 1e-12);
    }

    #[test]
    fn ks_sees_a_shift() {
        let (a, b) = symmetric_state();
        let p = make_params(FRAC_PI_4, 10, 1, 1, a, b).unwrap();
        let law = limit_law(LimitCase::Usual, &p).unwrap();
        // fine discretization of the law, then shifted right by 0.1
        let grid: Vec<f64> = (0..=20000).map(|i| -1.0 + i as f64 / 10000.0).collect();
        let cdf = law.cdf_sorted(&grid);
        let make = |shift: f64| {
            let masses: Vec<(f64, f64)> = grid
                .windows(2)
                .zip(cdf.windows(2))
                .map(|(x, f)| (x[1] + shift, f[1].1 - f[0].1))
                .collect();
            EmpiricalCdf::from_sorted_masses(&masses)
        };
        let unshifted = ks_distance(&make(0.0), &law);
        let shifted = ks_distance(&make(0.1), &law);
        assert!(unshifted < 0.01, "{unshifted}");
        assert!(shifted > 0.05, "{shifted}");
    }

    #[test]
    fn localization_window() {
        let dist = table(vec![(-60, 0.25), (-5, 0.25), (5, 0.25), (60, 0.25)]);
        assert_eq!(localization_mass(&dist, 100.0, 0.05).unwrap(), 0.5);
        assert_eq!(localization_mass(&dist, 100.0, 0.049).unwrap(), 0.0);
        assert_eq!(localization_mass(&dist, 100.0, 0.3).unwrap(), 0.5);
        assert_eq!(localization_mass(&dist, 100.0, 0.49).unwrap(), 0.5);
        assert!(localization_mass(&dist, 100.0, 0.5).is_err());
        assert!(localization_mass(&dist, 100.0, 0.0).is_err());
    }

    #[test]
    fn compare_small_run() {
        let (a, b) = up_state();
        let p = make_params(FRAC_PI_4, 60, 2, 3, a, b).unwrap();
        let report = compare(
            &p,
            LimitCase::Kicked { m: 2, n: 3 },
            &CompareOptions::default(),
        )
        .unwrap();
        assert_eq!(report.law.components.len(), 3);
        assert_eq!(report.run.final_time, 302);
        assert_abs_diff_eq!(report.run.total_probability, 1.0, epsilon = 1e-12);
        assert!(report.ks_distance < 0.1);
        for row in &report.moments {
            assert_abs_diff_eq!(row.spectral, row.density, epsilon = 1e-6);
        }
        assert!(compare(
            &p,
            LimitCase::Kicked { m: 3, n: 1 },
            &CompareOptions::default()
        )
        .is_err());
    }
}
