//! Exact-arithmetic reference sums for cross-validating `degen-cs`.
//!
//! Everything here is deliberately naive and self-contained: integer spectra
//! rebuilt from scratch (no shared code with the production crate), a
//! rational amplitude z = num/den, and fixed-truncation series summed
//! exactly with big integers over one common denominator. Conversion to f64
//! happens once at the very end, so reference values are correctly rounded
//! far below the 1e-10 tolerances they back.
//!
//! Test infrastructure only; not part of the library API proper.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// An integer-valued spectrum: shifted energies with degeneracy counts.
#[derive(Debug, Clone)]
pub struct IntegerSpectrum {
    pub rho: Vec<u64>,
    pub degeneracy: Vec<u64>,
}

/// Count ordered pairs (n, m), n, m >= 1, with n^2 + m^2 = target.
fn sum_of_two_squares_count(target: u64) -> u64 {
    let mut count = 0;
    let mut n = 1u64;
    while n * n < target {
        let remainder = target - n * n;
        let m = remainder.isqrt();
        if m >= 1 && m * m == remainder {
            count += 1;
        }
        n += 1;
    }
    count
}

/// Two-dimensional square box: walk candidate energies one by one and keep
/// those with at least one lattice representation.
pub fn box2d(levels: usize) -> IntegerSpectrum {
    let mut rho = Vec::with_capacity(levels);
    let mut degeneracy = Vec::with_capacity(levels);
    let mut energy = 2u64;
    while rho.len() < levels {
        let count = sum_of_two_squares_count(energy);
        if count > 0 {
            rho.push(energy - 2);
            degeneracy.push(count);
        }
        energy += 1;
    }
    IntegerSpectrum { rho, degeneracy }
}

/// Three-dimensional harmonic oscillator: rho = v, d = (v+1)(v+2)/2.
pub fn ho3d(levels: usize) -> IntegerSpectrum {
    let rho = (0..levels as u64).collect();
    let degeneracy = (0..levels as u64).map(|v| (v + 1) * (v + 2) / 2).collect();
    IntegerSpectrum { rho, degeneracy }
}

/// Two-dimensional harmonic oscillator: rho = v, d = v + 1.
pub fn ho2d(levels: usize) -> IntegerSpectrum {
    let rho = (0..levels as u64).collect();
    let degeneracy = (0..levels as u64).map(|v| v + 1).collect();
    IntegerSpectrum { rho, degeneracy }
}

/// Nondegenerate oscillator: rho = n, d = 1.
pub fn glauber(levels: usize) -> IntegerSpectrum {
    let rho = (0..levels as u64).collect();
    let degeneracy = vec![1; levels];
    IntegerSpectrum { rho, degeneracy }
}

/// Exactly computed moments of the truncated level-weight distribution.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceMoments {
    /// N = sum_n |z|^{2n} d_n / [rho_n]! over the first `terms` levels.
    pub normalization: f64,
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub mandel_q: f64,
}

/// Sum the first `terms` levels of the weight series for z = num/den.
///
/// All terms are brought over the common denominator
/// den^{2(T-1)} [rho_{T-1}]!, making every partial sum a plain big integer;
/// the generalized factorial [rho_n]! = rho_n rho_{n-1} ... rho_1.
pub fn reference_moments(
    spectrum: &IntegerSpectrum,
    num: u64,
    den: u64,
    terms: usize,
) -> ReferenceMoments {
    assert!(den > 0);
    let terms = terms.min(spectrum.rho.len());
    assert!(terms >= 1);

    let num_sq = BigUint::from(num) * num;
    let den_sq = BigUint::from(den) * den;

    // suffix[n] = product of rho_k for k = n+1 .. terms-1  ( = [rho_{T-1}]!/[rho_n]! )
    let mut suffix = vec![BigUint::one(); terms];
    for n in (0..terms.saturating_sub(1)).rev() {
        suffix[n] = &suffix[n + 1] * spectrum.rho[n + 1];
    }
    let mut den_sq_pows = vec![BigUint::one(); terms];
    for i in 1..terms {
        den_sq_pows[i] = &den_sq_pows[i - 1] * &den_sq;
    }

    let mut total = BigUint::zero();
    let mut first = BigUint::zero();
    let mut second = BigUint::zero();
    let mut num_sq_pow = BigUint::one();
    for n in 0..terms {
        let term = &num_sq_pow * &den_sq_pows[terms - 1 - n] * spectrum.degeneracy[n] * &suffix[n];
        let n64 = n as u64;
        first += &term * n64;
        second += &term * (n64 * n64);
        total += term;
        num_sq_pow *= &num_sq;
    }

    let mean = big_ratio_to_f64(&first, &total);
    let second_moment = big_ratio_to_f64(&second, &total);
    // Var = (second*total - first^2) / total^2, kept exact until the final division.
    let variance_numerator = &second * &total - &first * &first;
    let variance = big_ratio_to_f64(&variance_numerator, &(&total * &total));
    let mandel_q = if first.is_zero() {
        0.0
    } else {
        big_ratio_to_f64(&variance_numerator, &(&first * &total)) - 1.0
    };
    let normalization = big_ratio_to_f64(&total, &(&den_sq_pows[terms - 1] * &suffix[0]));

    ReferenceMoments {
        normalization,
        mean,
        second_moment,
        variance,
        mandel_q,
    }
}

/// num/den rounded to f64 with >= 64 significant quotient bits.
fn big_ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = (64 + den.bits()).saturating_sub(num.bits());
    let quotient = (num << shift) / den;
    quotient.to_f64().expect("BigUint::to_f64 is total") * 2.0f64.powi(-(shift as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box2d_matches_published_degeneracies() {
        let s = box2d(23);
        assert_eq!(s.rho[..7], [0, 3, 6, 8, 11, 15, 16]);
        assert_eq!(s.degeneracy[0], 1);
        assert_eq!(s.degeneracy[1], 2);
        assert_eq!(s.degeneracy[17], 3);
        assert_eq!(s.degeneracy[22], 4);
    }

    #[test]
    fn glauber_moments_are_poissonian() {
        let m = reference_moments(&glauber(300), 2, 1, 300);
        assert!((m.mean - 4.0).abs() < 1e-14);
        assert!((m.variance - 4.0).abs() < 1e-13);
        assert!(m.mandel_q.abs() < 1e-13);
        assert!((m.normalization - 4.0f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn half_amplitude_denominators_work() {
        // z = 1/2 on the Glauber spectrum: lambda = 1/4.
        let m = reference_moments(&glauber(200), 1, 2, 200);
        assert!((m.mean - 0.25).abs() < 1e-15);
        assert!((m.variance - 0.25).abs() < 1e-15);
    }

    #[test]
    fn truncation_is_saturated() {
        let a = reference_moments(&box2d(400), 5, 1, 250);
        let b = reference_moments(&box2d(400), 5, 1, 350);
        assert!((a.mean - b.mean).abs() < 1e-13 * b.mean);
        assert!((a.normalization - b.normalization).abs() < 1e-13 * b.normalization);
    }

    #[test]
    fn ratio_conversion_is_tight() {
        let num = BigUint::from(1u32) << 200;
        let den = BigUint::from(3u32);
        let expected = 2.0f64.powi(200) / 3.0;
        assert!((big_ratio_to_f64(&num, &den) - expected).abs() <= expected * 1e-15);
    }
}
