//! Gray-mapped square QAM with unit average symbol energy, and the matching
//! max-log LLR demapper.
//!
//! Bit layout per symbol: the first O_m/2 bits select the I level, the rest
//! the Q level. Within an axis the all-zero bit group maps to the most
//! positive amplitude, so a positive LLR always argues for bit 0 (the
//! toolkit-wide sign convention).

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Fixed-point scale for I/Q components (Q2.13: 16-bit signed, range +-4).
pub const FIXED_SCALE: f64 = 8192.0;

/// Complex baseband symbols as 16-bit fixed-point I/Q pairs (32 bits each).
#[derive(Debug, Clone, PartialEq)]
pub struct IqSymbolBlock {
    pub i: Vec<i16>,
    pub q: Vec<i16>,
    /// Zero bits appended to fill the last symbol.
    pub padded_bits: u32,
}

impl IqSymbolBlock {
    pub fn len(&self) -> usize {
        self.i.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i.is_empty()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.i
            .iter()
            .zip(&self.q)
            .map(|(&i, &q)| Complex64::new(i as f64 / FIXED_SCALE, q as f64 / FIXED_SCALE))
            .collect()
    }
}

fn check_o_m(o_m: u32) -> Result<()> {
    if ![2, 4, 6, 8].contains(&o_m) {
        return Err(Error::Domain(format!("modulation order {o_m} not in {{2, 4, 6, 8}}")));
    }
    Ok(())
}

/// Amplitude normalization so that E[|s|^2] = 1 for 2^bpa levels per axis.
fn axis_scale(bpa: u32) -> f64 {
    let levels = 1u32 << bpa;
    (3.0 / (2.0 * ((levels * levels - 1) as f64))).sqrt()
}

/// Binary-reflected Gray decode.
fn gray_decode(mut v: u32) -> u32 {
    let mut k = v;
    while v > 0 {
        v >>= 1;
        k ^= v;
    }
    k
}

/// Amplitude for a bit group on one axis: all-zero bits -> most positive level.
fn pam_level(bits_value: u32, bpa: u32) -> f64 {
    let levels = 1i32 << bpa;
    let k = gray_decode(bits_value) as i32;
    ((levels - 1 - 2 * k) as f64) * axis_scale(bpa)
}

/// Map coded bits onto QAM symbols; zero-pads to a multiple of O_m.
pub fn modulate(bits: &[u8], o_m: u32) -> Result<IqSymbolBlock> {
    check_o_m(o_m)?;
    let o_m = o_m as usize;
    let n_symbols = bits.len().div_ceil(o_m);
    let padded_bits = (n_symbols * o_m - bits.len()) as u32;
    let bpa = (o_m / 2) as u32;
    let mut i_out = Vec::with_capacity(n_symbols);
    let mut q_out = Vec::with_capacity(n_symbols);
    let bit_at = |idx: usize| -> u32 {
        if idx < bits.len() {
            bits[idx] as u32
        } else {
            0
        }
    };
    for s in 0..n_symbols {
        let base = s * o_m;
        let mut i_bits = 0u32;
        let mut q_bits = 0u32;
        for b in 0..bpa as usize {
            i_bits = (i_bits << 1) | bit_at(base + b);
            q_bits = (q_bits << 1) | bit_at(base + bpa as usize + b);
        }
        let i_amp = pam_level(i_bits, bpa);
        let q_amp = pam_level(q_bits, bpa);
        i_out.push((i_amp * FIXED_SCALE).round() as i16);
        q_out.push((q_amp * FIXED_SCALE).round() as i16);
    }
    Ok(IqSymbolBlock {
        i: i_out,
        q: q_out,
        padded_bits,
    })
}

/// Max-log per-bit LLRs for a symbol stream.
///
/// `noise_variance` is the total complex noise power (both axes). LLR for bit
/// position j: (min over bit=1 levels of squared distance minus min over
/// bit=0 levels) divided by the noise variance. Positive means bit 0 is more
/// likely.
pub fn demodulate_llr(symbols: &[Complex64], o_m: u32, noise_variance: f64) -> Result<Vec<f32>> {
    check_o_m(o_m)?;
    if !(noise_variance > 0.0) {
        return Err(Error::Domain("noise variance must be positive".into()));
    }
    let bpa = (o_m / 2) as u32;
    let levels = 1u32 << bpa;
    // amplitude per bit-group value, indexed by the transmitted bits
    let amps: Vec<f64> = (0..levels).map(|v| pam_level(v, bpa)).collect();
    let mut llrs = Vec::with_capacity(symbols.len() * o_m as usize);
    let mut axis_llrs = vec![0.0f32; bpa as usize];
    let demap_axis = |r: f64, out: &mut Vec<f32>, scratch: &mut [f32]| {
        for bit in 0..bpa {
            let mut best0 = f64::INFINITY;
            let mut best1 = f64::INFINITY;
            for (v, &a) in amps.iter().enumerate() {
                let d = (r - a) * (r - a);
                // bit index 0 is the MSB of the axis group
                if (v as u32 >> (bpa - 1 - bit)) & 1 == 0 {
                    best0 = best0.min(d);
                } else {
                    best1 = best1.min(d);
                }
            }
            scratch[bit as usize] = ((best1 - best0) / noise_variance) as f32;
        }
        out.extend_from_slice(scratch);
    };
    for s in symbols {
        demap_axis(s.re, &mut llrs, &mut axis_llrs);
        demap_axis(s.im, &mut llrs, &mut axis_llrs);
    }
    Ok(llrs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qpsk_corner_for_zero_bits() {
        let block = modulate(&[0, 0], 2).unwrap();
        assert_eq!(block.len(), 1);
        let s = block.to_complex()[0];
        let a = 1.0 / 2.0f64.sqrt();
        assert!((s.re - a).abs() < 1e-3 && (s.im - a).abs() < 1e-3);
    }

    #[test]
    fn symbol_counts_and_padding() {
        assert_eq!(modulate(&[1; 12], 4).unwrap().len(), 3);
        let padded = modulate(&[1; 13], 4).unwrap();
        assert_eq!(padded.len(), 4);
        assert_eq!(padded.padded_bits, 3);
        assert!(modulate(&[0; 8], 3).is_err());
    }

    #[test]
    fn unit_average_energy() {
        for o_m in [2u32, 4, 6, 8] {
            // exhaust all bit groups of one symbol
            let bpa = o_m / 2;
            let levels = 1u32 << bpa;
            let mut total = 0.0;
            for v in 0..levels {
                let a = pam_level(v, bpa);
                total += a * a;
            }
            let per_axis = total / levels as f64;
            assert!((2.0 * per_axis - 1.0).abs() < 1e-12, "o_m {o_m}");
        }
    }

    #[test]
    fn gray_neighbors_differ_in_one_bit() {
        for bpa in [1u32, 2, 3, 4] {
            let levels = 1u32 << bpa;
            // sort bit groups by amplitude and check adjacent Hamming distance
            let mut by_amp: Vec<(u32, f64)> = (0..levels).map(|v| (v, pam_level(v, bpa))).collect();
            by_amp.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
            for w in by_amp.windows(2) {
                assert_eq!((w[0].0 ^ w[1].0).count_ones(), 1);
            }
        }
    }

    #[test]
    fn noiseless_qpsk_llr_closed_form() {
        // hand oracle: r = a = 1/sqrt(2), levels +-a, per-axis max-log LLR is
        // ((r+a)^2 - (r-a)^2)/sigma^2 = 4a^2/sigma^2 = 2/sigma^2
        let block = modulate(&[0, 0], 2).unwrap();
        let llrs = demodulate_llr(&block.to_complex(), 2, 0.5).unwrap();
        assert_eq!(llrs.len(), 2);
        for l in llrs {
            assert!(l > 0.0);
            assert!((l - 4.0).abs() < 0.01, "llr {l}");
        }
    }

    #[test]
    fn origin_symbol_gives_zero_llr_for_sign_bits() {
        // QPSK: both bits are sign bits, so the origin is fully undecided.
        for l in demodulate_llr(&[Complex64::new(0.0, 0.0)], 2, 1.0).unwrap() {
            assert!(l.abs() < 1e-9);
        }
        // Higher orders: only the per-axis sign bit (MSB) sits on a symmetric
        // boundary at the origin; amplitude bits are decided there because
        // the inner levels sit closer (their sign depends on which bit group
        // the innermost level belongs to).
        for o_m in [4u32, 6, 8] {
            let llrs = demodulate_llr(&[Complex64::new(0.0, 0.0)], o_m, 1.0).unwrap();
            let bpa = (o_m / 2) as usize;
            assert!(llrs[0].abs() < 1e-9);
            assert!(llrs[bpa].abs() < 1e-9);
            for axis in 0..2 {
                for bit in 1..bpa {
                    assert!(llrs[axis * bpa + bit].abs() > 1e-9, "o_m {o_m} bit {bit}");
                }
            }
        }
    }

    #[test]
    fn llr_sign_flips_across_decision_boundary() {
        for o_m in [2u32, 4, 6, 8] {
            let r = Complex64::new(0.3, 0.3);
            let llr_pos = demodulate_llr(&[r], o_m, 1.0).unwrap();
            let llr_neg = demodulate_llr(&[-r], o_m, 1.0).unwrap();
            // reflecting through the origin flips every per-axis MSB LLR
            let bpa = (o_m / 2) as usize;
            assert!((llr_pos[0] + llr_neg[0]).abs() < 1e-6);
            assert!((llr_pos[bpa] + llr_neg[bpa]).abs() < 1e-6);
        }
    }

    #[test]
    fn demod_rejects_bad_variance() {
        assert!(demodulate_llr(&[Complex64::new(0.0, 0.0)], 2, 0.0).is_err());
        assert!(demodulate_llr(&[Complex64::new(0.0, 0.0)], 2, -1.0).is_err());
    }
}
