//! Rate-1/2, K=7 convolutional code with soft-decision Viterbi decoding.
//!
//! Generators 0o171/0o133 (the NASA standard pair), zero-terminated: every
//! code block ends with K-1 = 6 tail zeros so the trellis closes in state 0.
//! Soft inputs follow the toolkit-wide LLR sign convention: positive means
//! bit 0 is more likely.

use crate::error::{Error, Result};

pub const CONSTRAINT_LENGTH: usize = 7;
pub const G0: u32 = 0o171;
pub const G1: u32 = 0o133;
const STATES: usize = 64;
const TAIL_BITS: usize = CONSTRAINT_LENGTH - 1;

#[inline]
fn parity(v: u32) -> u8 {
    (v.count_ones() & 1) as u8
}

#[inline]
fn branch_outputs(state: u32, bit: u32) -> (u8, u8) {
    let full = (bit << 6) | state;
    (parity(full & G0), parity(full & G1))
}

/// Encode info bits (0/1 values), appending the zero tail.
/// Output length is exactly 2 * (info.len() + 6).
pub fn encode_bits(info: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * (info.len() + TAIL_BITS));
    let mut state = 0u32;
    for &b in info.iter().chain(std::iter::repeat(&0u8).take(TAIL_BITS)) {
        debug_assert!(b <= 1);
        let full = ((b as u32) << 6) | state;
        out.push(parity(full & G0));
        out.push(parity(full & G1));
        state = full >> 1;
    }
    out
}

/// Soft-decision Viterbi decode over the 64-state trellis.
///
/// `llrs` holds one value per coded bit (2 per trellis step); the tail is
/// consumed and not returned. Returns the info bits.
pub fn viterbi_decode(llrs: &[f32]) -> Result<Vec<u8>> {
    if llrs.len() % 2 != 0 {
        return Err(Error::Framing {
            offset: llrs.len(),
            reason: "odd soft-bit count for a rate-1/2 code".into(),
        });
    }
    let n_steps = llrs.len() / 2;
    if n_steps <= TAIL_BITS {
        return Err(Error::Framing {
            offset: 0,
            reason: format!("code block of {n_steps} steps is shorter than the tail"),
        });
    }
    let info_len = n_steps - TAIL_BITS;

    // branch metric table per (state, input), rebuilt from the llr pair each step
    let mut out_table = [[(0u8, 0u8); 2]; STATES];
    for (s, row) in out_table.iter_mut().enumerate() {
        row[0] = branch_outputs(s as u32, 0);
        row[1] = branch_outputs(s as u32, 1);
    }

    const NEG: f32 = -1.0e30;
    let mut metrics = [NEG; STATES];
    metrics[0] = 0.0;
    let mut next_metrics = [NEG; STATES];
    let mut decisions: Vec<u64> = Vec::with_capacity(n_steps);

    for t in 0..n_steps {
        let llr0 = llrs[2 * t];
        let llr1 = llrs[2 * t + 1];
        let tail = t >= info_len;
        let mut decision = 0u64;
        for (n, slot) in next_metrics.iter_mut().enumerate() {
            let b = (n >> 5) as u32;
            if tail && b == 1 {
                *slot = NEG;
                continue;
            }
            let p0 = (n & 31) << 1;
            let p1 = p0 + 1;
            let bm = |s: usize| -> f32 {
                let (o0, o1) = out_table[s][b as usize];
                let m0 = if o0 == 0 { llr0 } else { -llr0 };
                let m1 = if o1 == 0 { llr1 } else { -llr1 };
                m0 + m1
            };
            let m0 = metrics[p0] + bm(p0);
            let m1 = metrics[p1] + bm(p1);
            if m1 > m0 {
                decision |= 1u64 << n;
                *slot = m1;
            } else {
                *slot = m0;
            }
        }
        decisions.push(decision);
        metrics = next_metrics;
    }

    // traceback from the terminated state 0
    let mut bits = vec![0u8; info_len];
    let mut state = 0usize;
    for t in (0..n_steps).rev() {
        let b = (state >> 5) as u8;
        let pred = ((state & 31) << 1) | ((decisions[t] >> state) & 1) as usize;
        if t < info_len {
            bits[t] = b;
        }
        state = pred;
    }
    Ok(bits)
}
