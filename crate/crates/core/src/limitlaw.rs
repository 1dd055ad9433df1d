//! Closed-form limit distributions of `X_t / scale`.
//!
//! Every law is an atom at the origin plus a sum of components
//! `x -> f_K(sigma x; c) W(sigma x)`, where `f_K` is the Konno density
//! supported on `(-|c|, |c|)` and `W` a polynomial-like weight that
//! already carries the factor `sigma`. Component `i` therefore lives on
//! `(-|c| / sigma_i, |c| / sigma_i)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;
use crate::walk::{LimitCase, WalkParams};

/// Absolute tolerance for component integrals.
pub const QUAD_TOLERANCE: f64 = 1e-9;

/// `|s| / (pi (1 - x^2) sqrt(c^2 - x^2))` on the open interval `|x| < |c|`.
pub fn konno_density(x: f64, c: f64) -> f64 {
    let c2 = c * c;
    if x.abs() >= c.abs() {
        return 0.0;
    }
    let s_abs = (1.0 - c2).sqrt();
    s_abs / (PI * (1.0 - x * x) * (c2 - x * x).sqrt())
}

/// Weight of the atom at the origin. Depends only on `theta`.
pub fn delta_weight(m: u32, n: u32, theta: f64) -> Result<f64> {
    if m >= 3 || m == 0 {
        return Err(Error::UnsupportedCase { m, n });
    }
    let (s, c) = theta.sin_cos();
    let sa = s.abs();
    Ok(match (m, n) {
        (1, 1) => s * s / (1.0 + sa),
        (2, 2) => {
            let c2 = c * c;
            c2 * sa / 2.0 + (s * s - c2) * sa * (1.0 - sa).powi(2) / (2.0 * c2 * c2)
        }
        _ => 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightKind {
    /// Weight of the usual (kick-free) walk.
    Usual,
    M1,
    M2,
    M3,
    B1,
    B2,
    B3,
}

/// The scalars every weight is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightContext {
    pub c: f64,
    pub s: f64,
    /// `|alpha|^2 - |beta|^2`
    pub imbalance: f64,
    /// `alpha conj(beta) + conj(alpha) beta`
    pub coherence: f64,
    pub n: u32,
}

impl WeightContext {
    pub fn new(params: &WalkParams, n: u32) -> Self {
        let (s, c) = params.theta.sin_cos();
        WeightContext {
            c,
            s,
            imbalance: params.alpha.norm_sqr() - params.beta.norm_sqr(),
            coherence: 2.0 * (params.alpha * params.beta.conj()).re,
            n,
        }
    }

    /// Coefficient of the linear asymmetry term shared by most weights.
    fn drift(&self) -> f64 {
        self.imbalance + self.coherence * self.s / self.c
    }
}

pub fn weight(kind: WeightKind, x: f64, ctx: &WeightContext) -> f64 {
    let WeightContext { c, s, n, .. } = *ctx;
    let ratio = s * s / (c * c);
    let g = ctx.drift();
    let h = ctx.coherence;
    let n = n as f64;
    let c3 = c * c * c;
    match kind {
        WeightKind::Usual => 1.0 - g * x,
        WeightKind::M1 => (1.0 - g * x) * (1.0 - ratio * x * x),
        WeightKind::M2 => (1.0 - g * x) * (1.0 - ratio * x * x).powi(2),
        WeightKind::M3 => {
            let bracket = 2.0
                - 2.0 * h * s * (1.0 + s * s) / c3 * x
                - ratio * x * x
                - 3.0 * g * ratio * x.powi(3)
                + 4.0 * h * s.powi(3) / c3 * x / (1.0 - x * x);
            3.0 * ratio * x * x * bracket
        }
        WeightKind::B1 => (n + 1.0) / (n - 1.0) * (1.0 + g * x) * ratio * x * x,
        WeightKind::B2 => {
            let bracket = 1.0 + (ctx.imbalance - h * s * (3.0 * s * s + 1.0) / c3) * x
                - 4.0 * g * ratio * x.powi(3)
                + 4.0 * h * s.powi(3) / c3 * x / (1.0 - x * x);
            (n + 2.0) / n * ratio * x * x * bracket
        }
        WeightKind::B3 => {
            (n + 2.0) / (n - 2.0) * (1.0 + g * x) * ratio * x * x * (1.0 - ratio * x * x)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub kind: WeightKind,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitLaw {
    pub case: LimitCase,
    pub delta_weight: f64,
    pub components: Vec<Component>,
    pub ctx: WeightContext,
}

pub fn limit_law(case: LimitCase, params: &WalkParams) -> Result<LimitLaw> {
    case.ensure_supported()?;
    let comp = |kind, scale| Component { kind, scale };
    let (delta, components) = match case {
        LimitCase::Usual => (0.0, vec![comp(WeightKind::Usual, 1.0)]),
        LimitCase::Kicked { m, n } => {
            let delta = delta_weight(m, n, params.theta)?;
            let nf = n as f64;
            let comps = match (m, n) {
                (1, 1) => vec![comp(WeightKind::M1, 1.0)],
                (1, _) => vec![
                    comp(WeightKind::M1, 1.0),
                    comp(WeightKind::B1, (nf + 1.0) / (nf - 1.0)),
                ],
                (2, 1) => vec![comp(WeightKind::M2, 1.0), comp(WeightKind::M3, 3.0)],
                (2, 2) => vec![comp(WeightKind::M2, 1.0), comp(WeightKind::B2, 2.0)],
                (2, _) => vec![
                    comp(WeightKind::M2, 1.0),
                    comp(WeightKind::B2, (nf + 2.0) / nf),
                    comp(WeightKind::B3, (nf + 2.0) / (nf - 2.0)),
                ],
                _ => unreachable!("checked by ensure_supported"),
            };
            (delta, comps)
        }
    };
    let n = match case {
        LimitCase::Usual => 1,
        LimitCase::Kicked { n, .. } => n,
    };
    Ok(LimitLaw {
        case,
        delta_weight: delta,
        components,
        ctx: WeightContext::new(params, n),
    })
}

impl LimitLaw {
    /// Open support `(-|c| / sigma, |c| / sigma)` of component `index`.
    pub fn support(&self, index: usize) -> (f64, f64) {
        let edge = self.ctx.c.abs() / self.components[index].scale;
        (-edge, edge)
    }

    pub fn component_density(&self, index: usize, x: f64) -> f64 {
        let comp = &self.components[index];
        let y = comp.scale * x;
        let fk = konno_density(y, self.ctx.c);
        if fk == 0.0 {
            return 0.0;
        }
        fk * weight(comp.kind, y, &self.ctx)
    }

    /// Continuous part of the density (the atom is excluded).
    pub fn density(&self, x: f64) -> f64 {
        (0..self.components.len())
            .map(|i| self.component_density(i, x))
            .sum()
    }

    /// Integrand after `x = (|c| / sigma) sin u`, times `x^r`. Bounded on
    /// `[-pi/2, pi/2]` because the substitution absorbs the edge singularity.
    fn substituted(&self, index: usize, r: u32) -> impl Fn(f64) -> f64 + '_ {
        let comp = self.components[index];
        let ca = self.ctx.c.abs();
        let sa = self.ctx.s.abs();
        move |u: f64| {
            let y = ca * u.sin();
            let base = sa * weight(comp.kind, y, &self.ctx) / (PI * comp.scale * (1.0 - y * y));
            if r == 0 {
                base
            } else {
                base * (y / comp.scale).powi(r as i32)
            }
        }
    }

    fn to_angle(&self, index: usize, x: f64) -> f64 {
        let (_, edge) = self.support(index);
        (x / edge).clamp(-1.0, 1.0).asin()
    }

    pub fn component_mass(&self, index: usize) -> f64 {
        quad::integrate(
            self.substituted(index, 0),
            -FRAC_PI_2,
            FRAC_PI_2,
            QUAD_TOLERANCE,
        )
    }

    /// Atom plus all component masses.
    pub fn total_mass(&self) -> f64 {
        self.delta_weight
            + (0..self.components.len())
                .map(|i| self.component_mass(i))
                .sum::<f64>()
    }

    /// `int x^r dF`, atom included (it only contributes at `r = 0`).
    pub fn moment(&self, r: u32) -> f64 {
        let atom = if r == 0 { self.delta_weight } else { 0.0 };
        atom + (0..self.components.len())
            .map(|i| {
                quad::integrate(
                    self.substituted(i, r),
                    -FRAC_PI_2,
                    FRAC_PI_2,
                    QUAD_TOLERANCE,
                )
            })
            .sum::<f64>()
    }

    /// Continuous part of the CDF at ascending points, accumulated panel by panel.
    fn continuous_cdf_sorted(&self, xs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; xs.len()];
        for index in 0..self.components.len() {
            let f = self.substituted(index, 0);
            let mut u_prev = -FRAC_PI_2;
            let mut acc = 0.0;
            for (slot, &x) in out.iter_mut().zip(xs) {
                let u = self.to_angle(index, x);
                if u > u_prev {
                    acc += quad::integrate(&f, u_prev, u, QUAD_TOLERANCE);
                    u_prev = u;
                }
                *slot += acc;
            }
        }
        out
    }

    /// `(F(x-), F(x))` at each point of the ascending slice `xs`.
    pub fn cdf_sorted(&self, xs: &[f64]) -> Vec<(f64, f64)> {
        debug_assert!(xs.windows(2).all(|w| w[0] <= w[1]));
        self.continuous_cdf_sorted(xs)
            .into_iter()
            .zip(xs)
            .map(|(cont, &x)| {
                let left = if x > 0.0 {
                    cont + self.delta_weight
                } else {
                    cont
                };
                let right = if x >= 0.0 {
                    cont + self.delta_weight
                } else {
                    cont
                };
                (left, right)
            })
            .collect()
    }

    /// Probability of `[-half_width, half_width]`, atom included.
    pub fn window_mass(&self, half_width: f64) -> f64 {
        let cdf = self.cdf_sorted(&[-half_width, half_width]);
        cdf[1].1 - cdf[0].0
    }
}

/// Right-continuous CDF of the law.
pub fn law_cdf(law: &LimitLaw, x: f64) -> f64 {
    law.cdf_sorted(&[x])[0].1
}

/// Density of one component at `edge - offset`, where `edge` is the upper
/// end of its support. Used to probe whether the inverse-square-root edge
/// singularity is cancelled by a vanishing weight.
pub fn band_edge_value(law: &LimitLaw, component_index: usize, offset: f64) -> f64 {
    let (_, edge) = law.support(component_index);
    law.component_density(component_index, edge - offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{make_params, symmetric_state, up_state};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, SQRT_2};

    fn params(theta: f64, state: (Complex64, Complex64), m: i64, n: i64) -> WalkParams {
        make_params(theta, 100, m, n, state.0, state.1).unwrap()
    }

    fn all_cases() -> Vec<LimitCase> {
        vec![
            LimitCase::Usual,
            LimitCase::Kicked { m: 1, n: 1 },
            LimitCase::Kicked { m: 1, n: 2 },
            LimitCase::Kicked { m: 2, n: 1 },
            LimitCase::Kicked { m: 2, n: 2 },
            LimitCase::Kicked { m: 2, n: 3 },
        ]
    }

    #[test]
    fn konno_values() {
        let c = FRAC_PI_4.cos();
        assert_abs_diff_eq!(konno_density(0.0, c), 1.0 / PI, epsilon = 1e-15);
        // sqrt(1/2) / (pi * 0.75 * sqrt(0.25))
        assert_abs_diff_eq!(konno_density(0.5, c), 0.600_210_9, epsilon = 1e-6);
        assert_eq!(konno_density(c, c), 0.0);
        assert_eq!(konno_density(-c, c), 0.0);
        assert_eq!(konno_density(0.9, c), 0.0);
    }

    #[test]
    fn atom_weights() {
        assert_abs_diff_eq!(
            delta_weight(1, 1, FRAC_PI_4).unwrap(),
            1.0 / (2.0 + SQRT_2),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            delta_weight(1, 1, FRAC_PI_4).unwrap(),
            0.292_893_2,
            epsilon = 1e-7
        );
        assert_abs_diff_eq!(
            delta_weight(2, 2, FRAC_PI_4).unwrap(),
            SQRT_2 / 8.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            delta_weight(2, 2, FRAC_PI_4).unwrap(),
            0.176_776_7,
            epsilon = 1e-7
        );
        assert_eq!(delta_weight(2, 3, 0.3).unwrap(), 0.0);
        assert_eq!(delta_weight(1, 4, 0.3).unwrap(), 0.0);
        assert!(delta_weight(3, 3, 0.3).is_err());
    }

    #[test]
    fn weight_values() {
        let sym = WeightContext::new(&params(FRAC_PI_4, symmetric_state(), 2, 3), 3);
        assert_eq!(weight(WeightKind::M1, 0.0, &sym), 1.0);
        assert_eq!(weight(WeightKind::M2, 0.0, &sym), 1.0);
        assert_abs_diff_eq!(weight(WeightKind::M2, 0.5, &sym), 0.5625, epsilon = 1e-15);
        assert_abs_diff_eq!(weight(WeightKind::B3, 0.5, &sym), 0.9375, epsilon = 1e-14);
    }

    #[test]
    fn assembled_scales() {
        let p = params(FRAC_PI_4, up_state(), 2, 3);
        let law = limit_law(LimitCase::Kicked { m: 2, n: 3 }, &p).unwrap();
        let scales: Vec<f64> = law.components.iter().map(|c| c.scale).collect();
        assert_eq!(scales, vec![1.0, 5.0 / 3.0, 5.0]);
        assert_eq!(law.delta_weight, 0.0);

        let law = limit_law(LimitCase::Kicked { m: 1, n: 1 }, &p).unwrap();
        assert_eq!(law.components.len(), 1);
        assert_abs_diff_eq!(law.delta_weight, 0.292_893_2, epsilon = 1e-7);

        assert!(matches!(
            limit_law(LimitCase::Kicked { m: 3, n: 1 }, &p),
            Err(Error::UnsupportedCase { m: 3, n: 1 })
        ));
    }

    #[test]
    fn every_law_is_normalized() {
        for theta in [FRAC_PI_4, FRAC_PI_3, FRAC_PI_6, 2.0, 3.7, 5.9] {
            for state in [symmetric_state(), up_state()] {
                for case in all_cases() {
                    let p = params(theta, state, 1, 1);
                    let law = limit_law(case, &p).unwrap();
                    assert_abs_diff_eq!(law.total_mass(), 1.0, epsilon = 1e-6);
                    for i in 0..law.components.len() {
                        let (lo, hi) = law.support(i);
                        for j in 1..200 {
                            let x = lo + (hi - lo) * j as f64 / 200.0;
                            assert!(
                                law.component_density(i, x) >= -1e-10,
                                "negative density {case} theta={theta} x={x}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cdf_properties() {
        let p = params(FRAC_PI_4, symmetric_state(), 2, 2);
        for case in all_cases() {
            let law = limit_law(case, &p).unwrap();
            assert_eq!(law_cdf(&law, -1.0), 0.0);
            assert_abs_diff_eq!(law_cdf(&law, 1.0), 1.0, epsilon = 1e-6);
            assert_abs_diff_eq!(law_cdf(&law, 3.0), 1.0, epsilon = 1e-6);
            // symmetric state: F(0-) = (1 - delta) / 2
            let at_zero = law.cdf_sorted(&[0.0])[0];
            assert_abs_diff_eq!(at_zero.0, (1.0 - law.delta_weight) / 2.0, epsilon = 1e-6);
            assert_abs_diff_eq!(at_zero.1 - at_zero.0, law.delta_weight, epsilon = 1e-15);
            let grid: Vec<f64> = (0..=400).map(|i| -1.0 + i as f64 / 200.0).collect();
            let values = law.cdf_sorted(&grid);
            assert!(values.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12));
        }
    }

    #[test]
    fn usual_walk_mean_from_density() {
        let p = params(FRAC_PI_4, up_state(), 1, 1);
        let law = limit_law(LimitCase::Usual, &p).unwrap();
        assert_abs_diff_eq!(law.moment(1), -(1.0 - 0.5f64.sqrt()), epsilon = 1e-9);
        assert_abs_diff_eq!(law.moment(1), -0.292_893_2, epsilon = 1e-7);
    }

    #[test]
    fn cdf_matches_pointwise_quadrature() {
        // independent route: plain x-space quadrature away from the singular
        // edges at 0.1, 0.3 and 0.5
        let p = params(FRAC_PI_3, up_state(), 2, 3);
        let law = limit_law(LimitCase::Kicked { m: 2, n: 3 }, &p).unwrap();
        let a = -0.08;
        let b = 0.07;
        let direct = quad::integrate(|x| law.density(x), a, b, 1e-12);
        let cdf = law.cdf_sorted(&[a, b]);
        assert_abs_diff_eq!(cdf[1].1 - cdf[0].1, direct, epsilon = 1e-10);
    }

    #[test]
    fn band_edge_cancellation() {
        let offsets = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
        for n in [2, 3] {
            let case = LimitCase::Kicked { m: 2, n };
            let law = limit_law(case, &params(FRAC_PI_3, up_state(), 2, n as i64)).unwrap();
            let values: Vec<f64> = offsets
                .iter()
                .map(|&o| band_edge_value(&law, 1, o))
                .collect();
            assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
            assert!(*values.last().unwrap() <= 1e-2);

            let law = limit_law(case, &params(FRAC_PI_4, up_state(), 2, n as i64)).unwrap();
            let values: Vec<f64> = offsets
                .iter()
                .map(|&o| band_edge_value(&law, 1, o))
                .collect();
            assert!(values.windows(2).all(|w| w[1] > w[0]), "{values:?}");
            assert!(*values.last().unwrap() >= 10.0);
        }
    }

    #[test]
    fn band_edge_at_half_width_is_midpoint() {
        let law = limit_law(
            LimitCase::Kicked { m: 2, n: 3 },
            &params(FRAC_PI_4, up_state(), 2, 3),
        )
        .unwrap();
        let (lo, hi) = law.support(1);
        assert_eq!(
            band_edge_value(&law, 1, (hi - lo) / 2.0),
            law.component_density(1, 0.0)
        );
    }
}
