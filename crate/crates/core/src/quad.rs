//! Quadrature rules used by the limit-law and moment routines.

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 40;

/// One 15-point Kronrod panel: `(estimate, |kronrod - gauss|)`.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss-Kronrod integration of a smooth integrand on `[a, b]`.
///
/// Panels are bisected depth-first in a fixed order, so the result is
/// bitwise reproducible.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (est, err) = kronrod15(f, a, b);
        if err <= tol || depth >= MAX_DEPTH {
            return est;
        }
        let mid = 0.5 * (a + b);
        recurse(f, a, mid, 0.5 * tol, depth + 1) + recurse(f, mid, b, 0.5 * tol, depth + 1)
    }
    recurse(&f, a, b, abs_tol, 0)
}

/// Trapezoid rule for a `2pi`-periodic integrand: mean of `samples`, which
/// must be equispaced over one period. Summed in index order.
pub fn periodic_mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_and_transcendentals() {
        assert_abs_diff_eq!(integrate(|x| x * x, 0.0, 3.0, 1e-12), 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(integrate(f64::sin, 0.0, PI, 1e-12), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            integrate(|x| (-x * x).exp(), -8.0, 8.0, 1e-12),
            PI.sqrt(),
            epsilon = 1e-11
        );
        assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-9), 0.0);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let fwd = integrate(f64::exp, 0.0, 1.0, 1e-12);
        let rev = integrate(f64::exp, 1.0, 0.0, 1e-12);
        assert_abs_diff_eq!(fwd, -rev, epsilon = 1e-14);
    }

    #[test]
    fn arcsine_density_after_substitution() {
        // 1/(pi sqrt(1-x^2)) has unit mass; with x = sin u it is constant.
        let mass = integrate(
            |u: f64| u.cos() / (PI * u.cos()),
            -PI / 2.0,
            PI / 2.0,
            1e-12,
        );
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn periodic_trapezoid_is_spectral() {
        // mean of exp(cos k) over a period is I0(1)
        let n = 64;
        let samples: Vec<f64> = (0..n)
            .map(|l| (-PI + 2.0 * PI * l as f64 / n as f64).cos().exp())
            .collect();
        assert_abs_diff_eq!(
            periodic_mean(&samples),
            1.266_065_877_752_008_4,
            epsilon = 1e-15
        );
    }
}
