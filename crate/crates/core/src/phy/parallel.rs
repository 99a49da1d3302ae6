//! Bounded worker pool for per-code-block Viterbi decoding.
//!
//! Code blocks are independent work items pulled from a shared index; each
//! result lands in its own slot, so the reassembled output is bit-identical
//! to the sequential decode for any worker count.

use super::block::{reassemble, Decoded};
use super::conv;
use super::quantizer::SoftBitBlock;
use crate::error::{Error, Result};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub struct ParallelDecode {
    pub decoded: Decoded,
    pub wall_time: Duration,
}

/// Decode per-block LLR sequences on `workers` threads.
pub fn decode_llrs_parallel(
    block_llrs: &[Vec<f32>],
    block_id: u32,
    workers: usize,
) -> Result<ParallelDecode> {
    if workers == 0 {
        return Err(Error::Domain("worker count must be at least 1".into()));
    }
    let start = Instant::now();
    let n = block_llrs.len();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Vec<u8>>>>> = (0..n).map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..workers.min(n.max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let result = conv::viterbi_decode(&block_llrs[i]);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });

    let mut info_bits = Vec::new();
    for slot in slots {
        let bits = slot.into_inner().unwrap().expect("worker filled every slot")?;
        info_bits.extend(bits);
    }
    let decoded = reassemble(info_bits, block_id)?;
    Ok(ParallelDecode {
        decoded,
        wall_time: start.elapsed(),
    })
}

/// Decode quantized soft-bit blocks on a worker pool.
pub fn decode_soft_parallel(
    blocks: &[SoftBitBlock],
    block_id: u32,
    workers: usize,
) -> Result<ParallelDecode> {
    let llrs: Vec<Vec<f32>> = blocks.iter().map(|b| b.dequantize()).collect();
    decode_llrs_parallel(&llrs, block_id, workers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phy::block::{encode, TransportBlock};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn coded_llrs(tb: &TransportBlock, max_bits: usize) -> Vec<Vec<f32>> {
        encode(tb, max_bits)
            .unwrap()
            .iter()
            .map(|b| b.coded_bits.iter().map(|&x| if x == 0 { 3.0 } else { -3.0 }).collect())
            .collect()
    }

    #[test]
    fn rejects_zero_workers() {
        assert!(decode_llrs_parallel(&[], 0, 0).is_err());
    }

    #[test]
    fn identical_to_sequential_for_all_worker_counts() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let payload: Vec<u8> = (0..2000).map(|_| rng.gen()).collect();
        let tb = TransportBlock::new(payload, 9);
        let llrs = coded_llrs(&tb, 1000);
        let sequential = crate::phy::block::decode_llrs(&llrs, 9).unwrap();
        for workers in [1usize, 2, 4, 8] {
            let par = decode_llrs_parallel(&llrs, 9, workers).unwrap();
            assert_eq!(par.decoded.block, sequential.block, "workers = {workers}");
            assert_eq!(par.decoded.crc_ok, sequential.crc_ok);
            assert!(par.decoded.crc_ok);
        }
    }
}
