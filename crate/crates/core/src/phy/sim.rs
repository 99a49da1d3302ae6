//! Seeded Monte Carlo BER harness over the encode -> modulate -> AWGN ->
//! demap -> (quantize) -> Viterbi chain.
//!
//! Quantized and unquantized variants of the same run share the exact noise
//! realization (paired sampling): the LLR stream is computed once per chunk
//! and each requested bitwidth quantizes that same stream.

use super::{channel, conv, modulation, quantizer};
use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// One BER measurement.
#[derive(Debug, Clone, Copy)]
pub struct BerResult {
    /// None = unquantized soft decoding.
    pub s_bw: Option<u32>,
    pub bit_errors: u64,
    pub bits: u64,
}

impl BerResult {
    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.bit_errors as f64 / self.bits as f64
        }
    }
}

const CHUNK_INFO_BITS: usize = 10_000;

/// How a variant picks its quantizer clip from each LLR batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClipRule {
    /// 4x RMS magnitude: the session default, right for noisy operation.
    RmsDefault,
    /// Keep the smallest nonzero magnitude representable: right for
    /// near-noiseless runs of dense constellations at narrow bitwidths.
    MinPreserving,
}

/// Measure BER at one channel SNR for several quantizer settings at once.
///
/// `variants` lists soft-bit bitwidths, with `None` for the unquantized
/// reference. At least `n_info_bits` are simulated in chunks; every variant
/// sees the same payloads and the same noise.
pub fn ber_paired(
    snr_db: f64,
    o_m: u32,
    n_info_bits: usize,
    seed: u64,
    variants: &[Option<u32>],
    clip_rule: ClipRule,
) -> Result<Vec<BerResult>> {
    let mut results: Vec<BerResult> = variants
        .iter()
        .map(|&s_bw| BerResult {
            s_bw,
            bit_errors: 0,
            bits: 0,
        })
        .collect();
    let noise_var = channel::noise_variance(snr_db);
    let mut done = 0usize;
    let mut chunk_idx = 0u64;
    while done < n_info_bits {
        let take = CHUNK_INFO_BITS.min(n_info_bits - done);
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(chunk_idx + 1)));
        let info: Vec<u8> = (0..take).map(|_| rng.gen_range(0..2u8)).collect();
        let coded = conv::encode_bits(&info);
        let coded_len = coded.len();
        let symbols = modulation::modulate(&coded, o_m)?;
        let rx = channel::awgn(&symbols.to_complex(), snr_db, seed.wrapping_add(chunk_idx));
        let demod_var = if noise_var > 0.0 { noise_var } else { 1e-9 };
        let mut llrs = modulation::demodulate_llr(&rx, o_m, demod_var)?;
        llrs.truncate(coded_len); // drop modulation padding
        for result in results.iter_mut() {
            let decoded = match result.s_bw {
                None => conv::viterbi_decode(&llrs)?,
                Some(s_bw) => {
                    let clip = match clip_rule {
                        ClipRule::RmsDefault => quantizer::default_clip(&llrs),
                        ClipRule::MinPreserving => quantizer::min_preserving_clip(&llrs, s_bw),
                    };
                    let q = quantizer::quantize_llr(&llrs, s_bw, clip)?;
                    conv::viterbi_decode(&q.dequantize())?
                }
            };
            let errors = decoded.iter().zip(&info).filter(|(a, b)| a != b).count();
            result.bit_errors += errors as u64;
            result.bits += take as u64;
        }
        done += take;
        chunk_idx += 1;
    }
    Ok(results)
}
