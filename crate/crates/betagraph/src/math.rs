//! Shared numeric helpers: stable logistic forms, a counter-style uniform
//! generator, and significant-digit formatting for CSV output.

/// Logistic function 1/(1+e^{-x}), evaluated without overflow for any
/// finite argument (split at zero so the exponent is always negative).
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let ex = x.exp();
        ex / (1.0 + ex)
    }
}

/// log(1 + e^x) without overflow for large |x|.
#[inline]
pub fn log1p_exp(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// log(p/(1-p)); -inf at 0 and +inf at 1.
#[inline]
pub fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

/// SplitMix64 finalizer: a bijective 64-bit mixer with full avalanche.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform draw in [0,1) keyed by (seed, i, j). Counter-based so the draw
/// for a pair is independent of the order pairs are visited in.
#[inline]
pub fn keyed_uniform(seed: u64, i: u64, j: u64) -> f64 {
    let key = mix64(seed ^ mix64((i << 32) | j));
    // 53 high bits -> dyadic rational in [0,1)
    (key >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Format with 6 significant digits, plain decimal notation for the
/// magnitudes this crate emits and scientific notation outside them.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.000000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigmoid_stable_at_extremes() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert!(sigmoid(700.0) <= 1.0 && sigmoid(700.0) > 0.999);
        assert!(sigmoid(-700.0) >= 0.0 && sigmoid(-700.0) < 1e-300);
        for x in [-5.0, -1.0, 0.5, 3.0] {
            assert!((sigmoid(-x) - (1.0 - sigmoid(x))).abs() < 1e-15);
        }
    }

    #[test]
    fn log1p_exp_matches_naive_in_safe_range() {
        for x in [-30.0, -2.0, 0.0, 1.5, 30.0] {
            let naive = (1.0 + x.exp()).ln();
            assert!((log1p_exp(x) - naive).abs() < 1e-12);
        }
        // saturates to x for large x instead of overflowing
        assert_eq!(log1p_exp(800.0), 800.0);
    }

    #[test]
    fn keyed_uniform_is_deterministic_and_in_range() {
        for seed in [0u64, 1, 0xdead_beef] {
            for (i, j) in [(1u64, 2u64), (7, 33), (199, 200)] {
                let a = keyed_uniform(seed, i, j);
                let b = keyed_uniform(seed, i, j);
                assert_eq!(a, b);
                assert!((0.0..1.0).contains(&a));
            }
        }
        assert_ne!(keyed_uniform(1, 1, 2), keyed_uniform(2, 1, 2));
    }

    #[test]
    fn keyed_uniform_mean_is_centered() {
        let n = 100_000u64;
        let mean: f64 = (0..n).map(|k| keyed_uniform(42, k / 317, k % 317)).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.005, "mean {mean}");
    }

    #[test]
    fn sig6_formatting() {
        assert_eq!(sig6(0.0), "0.000000");
        assert_eq!(sig6(0.346_573_59), "0.346574");
        assert_eq!(sig6(-2.601_714_566), "-2.60171");
        assert_eq!(sig6(123_456.7), "123457");
        assert_eq!(sig6(1.959_963_984), "1.95996");
        assert_eq!(sig6(0.000_089_48), "8.94800e-5");
    }
}
