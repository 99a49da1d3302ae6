//! Seeded AWGN test channel.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

/// Noise variance (total complex power) for an SNR in dB relative to unit
/// symbol energy. Infinite SNR means a disabled channel.
pub fn noise_variance(snr_db: f64) -> f64 {
    if snr_db.is_infinite() {
        0.0
    } else {
        10f64.powf(-snr_db / 10.0)
    }
}

/// Add complex Gaussian noise at the given SNR; deterministic under `seed`.
pub fn awgn(symbols: &[Complex64], snr_db: f64, seed: u64) -> Vec<Complex64> {
    let var = noise_variance(snr_db);
    if var == 0.0 {
        return symbols.to_vec();
    }
    let sigma_axis = (var / 2.0).sqrt();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    symbols
        .iter()
        .map(|s| {
            let ni: f64 = StandardNormal.sample(&mut rng);
            let nq: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(s.re + ni * sigma_axis, s.im + nq * sigma_axis)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_snr_is_identity() {
        let syms = vec![Complex64::new(0.5, -0.25); 16];
        assert_eq!(awgn(&syms, f64::INFINITY, 1), syms);
    }

    #[test]
    fn deterministic_under_seed() {
        let syms = vec![Complex64::new(1.0, 0.0); 256];
        assert_eq!(awgn(&syms, 3.0, 42), awgn(&syms, 3.0, 42));
        assert_ne!(awgn(&syms, 3.0, 42), awgn(&syms, 3.0, 43));
    }

    #[test]
    fn sample_variance_matches_nominal() {
        let n = 1_000_000;
        let syms = vec![Complex64::new(0.0, 0.0); n];
        let snr_db = 5.0;
        let noisy = awgn(&syms, snr_db, 9);
        let measured: f64 =
            noisy.iter().map(|s| s.re * s.re + s.im * s.im).sum::<f64>() / n as f64;
        let nominal = noise_variance(snr_db);
        assert!(
            (measured / nominal - 1.0).abs() < 0.01,
            "measured {measured}, nominal {nominal}"
        );
    }
}
