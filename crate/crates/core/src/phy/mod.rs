//! Toy PHY pipeline for the bidirectional 7.3 split: CRC-protected transport
//! blocks, rate-1/2 K=7 convolutional coding, Gray-mapped QAM, a seeded AWGN
//! channel, max-log LLR demapping, soft-bit quantization, and (parallel)
//! soft-decision Viterbi decoding.

pub mod block;
pub mod channel;
pub mod conv;
pub mod crc;
pub mod modulation;
pub mod parallel;
pub mod quantizer;
pub mod sim;

pub use block::{decode_llrs, decode_soft, encode, CodeBlock, Decoded, TransportBlock};
pub use channel::{awgn, noise_variance};
pub use modulation::{demodulate_llr, modulate, IqSymbolBlock};
pub use parallel::{decode_llrs_parallel, decode_soft_parallel, ParallelDecode};
pub use quantizer::{default_clip, min_preserving_clip, quantize_llr, SoftBitBlock};
pub use sim::{ber_paired, BerResult, ClipRule};
