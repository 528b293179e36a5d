//! Stable summation and quadrature primitives shared across the crate.

/// Log-sum-exp of two log-magnitudes.
#[inline]
pub fn logsumexp2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY && b == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// Log-sum-exp of a slice using the shift-by-max trick.
///
/// Returns `NEG_INFINITY` for an empty slice or when every entry is `-inf`.
pub fn logsumexp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + values.iter().map(|&v| (v - max).exp()).sum::<f64>().ln()
}

/// Turn log-magnitudes into normalized linear weights plus the log of their sum.
///
/// The weights are divided by their linear-space total, so they sum to 1 up to
/// a couple of ulps regardless of the dynamic range of the inputs.
pub(crate) fn normalize_log_weights(log_terms: &[f64]) -> (Vec<f64>, f64) {
    let max = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(
        max.is_finite(),
        "all log terms are -inf; nothing to normalize"
    );
    let mut weights: Vec<f64> = log_terms.iter().map(|&lt| (lt - max).exp()).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    (weights, max + total.ln())
}

/// Composite Simpson rule over uniformly spaced samples.
///
/// `y` holds the integrand at `n + 1` nodes spanning `n` intervals of width
/// `h`; `n` must be even.
pub fn simpson_uniform(y: &[f64], h: f64) -> f64 {
    let n = y.len() - 1;
    assert!(
        n >= 2 && n.is_multiple_of(2),
        "Simpson needs an even interval count >= 2"
    );
    let mut sum = 0.0;
    for i in 0..n / 2 {
        sum += y[2 * i] + 4.0 * y[2 * i + 1] + y[2 * i + 2];
    }
    h / 3.0 * sum
}

/// Trapezoid rule over uniformly spaced samples spanning `y.len() - 1` intervals.
pub fn trapezoid_uniform(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    assert!(n >= 2);
    let interior: f64 = y[1..n - 1].iter().sum();
    h * (0.5 * (y[0] + y[n - 1]) + interior)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logsumexp_matches_naive_in_range() {
        let vals: [f64; 3] = [-1.0, -2.0, -3.0];
        let naive = vals.iter().map(|v| v.exp()).sum::<f64>().ln();
        assert!((logsumexp(&vals) - naive).abs() < 1e-15);
    }

    #[test]
    fn logsumexp_survives_large_magnitudes() {
        let vals = [1234.0, 1232.0];
        let expected = 1234.0 + (1.0 + (-2.0f64).exp()).ln();
        assert!((logsumexp(&vals) - expected).abs() < 1e-12);
        assert!(vals.iter().map(|v| v.exp()).sum::<f64>().is_infinite());
    }

    #[test]
    fn logsumexp_all_neg_inf() {
        assert_eq!(logsumexp(&[f64::NEG_INFINITY; 3]), f64::NEG_INFINITY);
        assert_eq!(
            logsumexp2(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn normalized_weights_sum_to_one() {
        let logs = [0.0, -700.0, 3.0, -2.0, 400.0];
        let (w, _) = normalize_log_weights(&logs);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn simpson_integrates_cubics_exactly() {
        // x^3 on [0, 9]: Simpson is exact for cubics up to rounding.
        let y: Vec<f64> = (0..=90).map(|i| (i as f64 * 0.1).powi(3)).collect();
        let exact = 9.0f64.powi(4) / 4.0;
        assert!((simpson_uniform(&y, 0.1) - exact).abs() < 1e-9);
    }

    #[test]
    fn trapezoid_is_spectrally_accurate_on_periodic_data() {
        let m = 64;
        let h = std::f64::consts::TAU / m as f64;
        let y: Vec<f64> = (0..=m).map(|j| (j as f64 * h).sin().powi(2)).collect();
        assert!((trapezoid_uniform(&y, h) - std::f64::consts::PI).abs() < 1e-13);
    }
}
