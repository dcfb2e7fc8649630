//! Fixed-width suffix coding.
//!
//! The suffix span `delta = o - q` bounds `|beta| < 10^delta`, so the
//! magnitude always fits in `ceil(log2(10^delta))` bits and no length field
//! is needed. The sign follows the prefix and is written only when the
//! prefix is empty.

use crate::bitio::{BitReader, BitWriter};
use crate::converter::{MAX_DELTA, POW10};
use crate::error::Result;

/// `ceil(log2(10^delta))` for `delta` in `0..=15`.
const FIXED_LEN: [u32; 16] = [0, 4, 7, 10, 14, 17, 20, 24, 27, 30, 34, 37, 40, 44, 47, 50];

/// Bits reserved for the suffix magnitude at span `delta`.
///
/// Panics if `delta` is outside `0..=15`.
pub fn suffix_bit_length(delta: i32) -> u32 {
    assert!(
        (0..=MAX_DELTA).contains(&delta),
        "suffix span {delta} out of range"
    );
    FIXED_LEN[delta as usize]
}

/// Layout of one suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffixPlan {
    pub delta: i32,
    pub fixed_len: u32,
    pub needs_sign_bit: bool,
}

impl SuffixPlan {
    pub fn new(delta: i32, alpha_is_zero: bool) -> Self {
        Self {
            delta,
            fixed_len: suffix_bit_length(delta),
            needs_sign_bit: alpha_is_zero,
        }
    }

    /// Bits this plan emits, independent of the suffix value.
    pub fn emitted_bits(&self) -> u32 {
        u32::from(self.needs_sign_bit) + self.fixed_len
    }
}

/// Write `beta` according to `plan`.
///
/// Panics if `|beta| >= 10^delta`.
pub fn encode_suffix(beta: i64, plan: SuffixPlan, w: &mut BitWriter) {
    let magnitude = beta.unsigned_abs();
    assert!(
        (magnitude as f64) < POW10[plan.delta as usize],
        "suffix {beta} exceeds span {}",
        plan.delta
    );
    if plan.needs_sign_bit {
        w.write_bit(beta < 0);
    }
    w.write_bits(magnitude, plan.fixed_len);
}

/// Read a suffix written by [`encode_suffix`]. `prefix_sign` is the sign of
/// the prefix (`-1`, `0` or `1`); it is ignored when the plan carries an
/// explicit sign bit.
pub fn decode_suffix(plan: SuffixPlan, prefix_sign: i8, r: &mut BitReader<'_>) -> Result<i64> {
    let negative = if plan.needs_sign_bit {
        r.read_bit()?
    } else {
        prefix_sign < 0
    };
    let magnitude = r.read_bits(plan.fixed_len)? as i64;
    Ok(if negative { -magnitude } else { magnitude })
}
