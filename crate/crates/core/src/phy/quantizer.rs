//! Soft-bit quantization: symmetric uniform quantizer with saturation.
//!
//! Step = clip / 2^(s_bw - 1); words are rounded to the nearest step (ties
//! away from zero) and clamped to +-(2^(s_bw-1) - 1), so the quantizer is
//! odd-symmetric and zero maps to word zero. Words travel the fronthaul as
//! s_bw-bit two's-complement fields packed MSB-first.

use crate::error::{Error, Result};

/// Uplink payload unit: quantized LLR words for one code block.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftBitBlock {
    pub llr_words: Vec<i32>,
    /// Bits per soft bit.
    pub s_bw: u32,
    /// Quantizer step (word value 1 corresponds to this LLR magnitude).
    pub scale: f32,
}

fn check_s_bw(s_bw: u32) -> Result<()> {
    if !(2..=16).contains(&s_bw) {
        return Err(Error::Domain(format!("soft-bit bitwidth {s_bw} not in [2, 16]")));
    }
    Ok(())
}

/// Quantize LLRs to s_bw-bit words saturating at +-clip.
pub fn quantize_llr(llrs: &[f32], s_bw: u32, clip: f32) -> Result<SoftBitBlock> {
    check_s_bw(s_bw)?;
    if !(clip > 0.0) {
        return Err(Error::Domain("clip level must be positive".into()));
    }
    let max_word = (1i32 << (s_bw - 1)) - 1;
    let step = clip / (1u32 << (s_bw - 1)) as f32;
    let words = llrs
        .iter()
        .map(|&l| {
            let w = (l / step).round() as i64;
            w.clamp(-max_word as i64, max_word as i64) as i32
        })
        .collect();
    Ok(SoftBitBlock {
        llr_words: words,
        s_bw,
        scale: step,
    })
}

impl SoftBitBlock {
    pub fn dequantize(&self) -> Vec<f32> {
        self.llr_words.iter().map(|&w| w as f32 * self.scale).collect()
    }

    /// Pack words into bytes, s_bw bits each, MSB-first.
    pub fn pack(&self) -> Vec<u8> {
        let total_bits = self.llr_words.len() * self.s_bw as usize;
        let mut out = vec![0u8; total_bits.div_ceil(8)];
        let mut bitpos = 0usize;
        let mask = (1u32 << self.s_bw) - 1;
        for &w in &self.llr_words {
            let field = (w as u32) & mask;
            for j in (0..self.s_bw).rev() {
                if (field >> j) & 1 == 1 {
                    out[bitpos / 8] |= 0x80 >> (bitpos % 8);
                }
                bitpos += 1;
            }
        }
        out
    }

    /// Inverse of `pack` given the word count carried in frame metadata.
    pub fn unpack(bytes: &[u8], count: usize, s_bw: u32, scale: f32) -> Result<SoftBitBlock> {
        check_s_bw(s_bw)?;
        let need_bits = count * s_bw as usize;
        if bytes.len() * 8 < need_bits {
            return Err(Error::Framing {
                offset: bytes.len(),
                reason: format!("need {need_bits} bits for {count} soft words"),
            });
        }
        let mut words = Vec::with_capacity(count);
        let mut bitpos = 0usize;
        let sign_bit = 1u32 << (s_bw - 1);
        for _ in 0..count {
            let mut field = 0u32;
            for _ in 0..s_bw {
                let bit = (bytes[bitpos / 8] >> (7 - bitpos % 8)) & 1;
                field = (field << 1) | bit as u32;
                bitpos += 1;
            }
            let value = if field & sign_bit != 0 {
                field as i32 - (1i32 << s_bw)
            } else {
                field as i32
            };
            words.push(value);
        }
        Ok(SoftBitBlock {
            llr_words: words,
            s_bw,
            scale,
        })
    }
}

/// Clip level that keeps the smallest nonzero LLR magnitude representable:
/// step = min |llr|, so clip = min * 2^(s_bw - 1). Dense constellations at
/// very high SNR produce LLR magnitudes spanning a wider range than a 4- or
/// 5-bit word can hold under the RMS-based default; this rule trades top-end
/// resolution (harmless saturation) for never erasing a decided bit.
pub fn min_preserving_clip(llrs: &[f32], s_bw: u32) -> f32 {
    let min_nonzero = llrs
        .iter()
        .map(|l| l.abs())
        .filter(|&m| m > 0.0)
        .fold(f32::INFINITY, f32::min);
    if min_nonzero.is_finite() {
        min_nonzero * (1u32 << (s_bw.clamp(2, 16) - 1)) as f32
    } else {
        default_clip(llrs)
    }
}

/// Default clip rule: 4x the RMS LLR magnitude of the batch.
pub fn default_clip(llrs: &[f32]) -> f32 {
    if llrs.is_empty() {
        return 1.0;
    }
    let ms: f64 = llrs.iter().map(|&l| (l as f64) * (l as f64)).sum::<f64>() / llrs.len() as f64;
    let rms = ms.sqrt() as f32;
    if rms > 0.0 {
        4.0 * rms
    } else {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_maps_to_word_zero() {
        let q = quantize_llr(&[0.0], 5, 8.0).unwrap();
        assert_eq!(q.llr_words, vec![0]);
    }

    #[test]
    fn saturates_at_clip() {
        let q = quantize_llr(&[100.0, -100.0, 8.0], 5, 8.0).unwrap();
        assert_eq!(q.llr_words[0], 15);
        assert_eq!(q.llr_words[1], -15);
        assert_eq!(q.llr_words[2], 15);
    }

    #[test]
    fn roundtrip_error_within_half_step() {
        let llrs: Vec<f32> = (-40..40).map(|i| i as f32 * 0.17).collect();
        let q = quantize_llr(&llrs, 8, 8.0).unwrap();
        let step = q.scale;
        for (orig, deq) in llrs.iter().zip(q.dequantize()) {
            if orig.abs() < 8.0 - step {
                assert!((orig - deq).abs() <= step / 2.0 + 1e-6);
            }
        }
    }

    #[test]
    fn min_preserving_clip_keeps_smallest_magnitude() {
        // magnitudes spanning 16:1, as dense QAM produces at high SNR
        let llrs = [64.0f32, -36.0, 16.0, -4.0];
        for s_bw in [4u32, 5, 8] {
            let clip = min_preserving_clip(&llrs, s_bw);
            let q = quantize_llr(&llrs, s_bw, clip).unwrap();
            assert!(q.llr_words.iter().all(|&w| w != 0), "s_bw {s_bw}: {:?}", q.llr_words);
            // signs survive
            for (w, l) in q.llr_words.iter().zip(&llrs) {
                assert_eq!(w.signum(), l.signum() as i32);
            }
        }
        // all-zero batch falls back to the default rule
        assert_eq!(min_preserving_clip(&[0.0, 0.0], 4), 1.0);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(quantize_llr(&[0.0], 1, 1.0).is_err());
        assert!(quantize_llr(&[0.0], 17, 1.0).is_err());
        assert!(quantize_llr(&[0.0], 5, 0.0).is_err());
    }

    #[test]
    fn word_range_invariant() {
        for s_bw in [2u32, 4, 5, 8, 16] {
            let llrs: Vec<f32> = (-100..100).map(|i| i as f32 * 0.7).collect();
            let q = quantize_llr(&llrs, s_bw, 5.0).unwrap();
            let lim = 1i32 << (s_bw - 1);
            assert!(q.llr_words.iter().all(|&w| -lim <= w && w < lim));
        }
    }

    proptest! {
        #[test]
        fn odd_symmetry(x in -50.0f32..50.0, s_bw in 2u32..=16) {
            let q_pos = quantize_llr(&[x], s_bw, 10.0).unwrap();
            let q_neg = quantize_llr(&[-x], s_bw, 10.0).unwrap();
            // half-step boundaries may round apart; skip exact ties
            let step = q_pos.scale;
            let frac = (x / step).fract().abs();
            prop_assume!((frac - 0.5).abs() > 1e-3);
            prop_assert_eq!(q_pos.llr_words[0], -q_neg.llr_words[0]);
        }

        #[test]
        fn pack_unpack_roundtrip(words in proptest::collection::vec(-40.0f32..40.0, 0..80), s_bw in 2u32..=16) {
            let q = quantize_llr(&words, s_bw, 9.0).unwrap();
            let packed = q.pack();
            let back = SoftBitBlock::unpack(&packed, q.llr_words.len(), s_bw, q.scale).unwrap();
            prop_assert_eq!(back, q);
        }
    }
}
