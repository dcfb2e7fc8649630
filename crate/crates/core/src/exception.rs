//! Exception records: exponent differences with adaptive width.
//!
//! Values the decimal pipeline cannot serve keep their sign and 52-bit
//! fraction verbatim. Only the stored exponent is compressed, as the
//! difference `es` to the previous value's exponent, written in `el` bits
//! with a bias of `2^(el-1) - 1`. The all-ones pattern is reserved: it flags
//! an overflow and is followed by the full 64-bit value.
//!
//! `el` grows by one after each overflow and shrinks by one after more than
//! `rho` consecutive differences that would also have fit one bit narrower.

use crate::bitio::{BitReader, BitWriter};
use crate::converter::FloatBits;
use crate::error::Result;

pub const MIN_EL: u32 = 1;
pub const MAX_EL: u32 = 12;
pub const DEFAULT_RHO: u32 = 8;

/// Largest `|es|` storable at width `el`, i.e. `2^(el-1) - 1`.
#[inline]
fn half_span(el: u32) -> i64 {
    (1i64 << (el - 1)) - 1
}

/// Biased encoding of `es` at width `el`, or `None` on overflow.
pub fn es_store_value(es: i64, el: u32) -> Option<u64> {
    debug_assert!((MIN_EL..=MAX_EL).contains(&el));
    let span = half_span(el);
    (-span..=span).contains(&es).then(|| (es + span) as u64)
}

/// Encoder/decoder state of the adaptive exponent width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveState {
    pub el: u32,
    pub shrink_count: u32,
    pub rho: u32,
    pub prev_exp: Option<u64>,
}

impl Default for AdaptiveState {
    fn default() -> Self {
        Self::new(DEFAULT_RHO)
    }
}

impl AdaptiveState {
    pub fn new(rho: u32) -> Self {
        Self {
            el: MIN_EL,
            shrink_count: 0,
            rho,
            prev_exp: None,
        }
    }

    /// Adjust `el` after one record. Expansion takes priority over contraction.
    pub fn update_el(&mut self, es: i64, overflowed: bool) {
        if overflowed {
            self.el = (self.el + 1).min(MAX_EL);
            self.shrink_count = 0;
        } else if self.el > MIN_EL && es.abs() <= half_span(self.el - 1) {
            self.shrink_count += 1;
            if self.shrink_count > self.rho {
                self.el -= 1;
                self.shrink_count = 0;
            }
        } else {
            self.shrink_count = 0;
        }
    }

    /// Bits the next record would take: `el + 53`, or `el + 64` on overflow.
    pub fn record_cost(&self, bits: FloatBits) -> u32 {
        let es = bits.exp() as i64 - self.prev_exp.unwrap_or(0) as i64;
        match es_store_value(es, self.el) {
            Some(_) => self.el + 53,
            None => self.el + 64,
        }
    }
}

/// Write one exception record and advance the state. Returns true on overflow.
///
/// `state.prev_exp` must already hold the previous value's exponent.
pub fn encode_exception(bits: FloatBits, state: &mut AdaptiveState, w: &mut BitWriter) -> bool {
    let prev_exp = state
        .prev_exp
        .expect("exception record without a previous exponent");
    let es = bits.exp() as i64 - prev_exp as i64;
    let el = state.el;
    let overflowed = match es_store_value(es, el) {
        Some(stored) => {
            w.write_bits(stored, el);
            w.write_bits(bits.sign(), 1);
            w.write_bits(bits.fraction(), 52);
            false
        }
        None => {
            w.write_bits((1u64 << el) - 1, el);
            w.write_bits(bits.raw(), 64);
            true
        }
    };
    state.update_el(es, overflowed);
    state.prev_exp = Some(bits.exp());
    overflowed
}

/// Read one exception record, mirroring [`encode_exception`].
pub fn decode_exception(state: &mut AdaptiveState, r: &mut BitReader<'_>) -> Result<FloatBits> {
    let prev_exp = state
        .prev_exp
        .expect("exception record without a previous exponent");
    let el = state.el;
    let stored = r.read_bits(el)?;
    let (bits, es, overflowed) = if stored == (1u64 << el) - 1 {
        let bits = FloatBits(r.read_bits(64)?);
        (bits, bits.exp() as i64 - prev_exp as i64, true)
    } else {
        let es = stored as i64 - half_span(el);
        let exp = prev_exp as i64 + es;
        let sign = r.read_bits(1)?;
        let fraction = r.read_bits(52)?;
        // A corrupt width field can push the exponent out of range.
        let exp = exp.clamp(0, 0x7ff) as u64;
        (FloatBits::from_parts(sign, exp, fraction), es, false)
    };
    state.update_el(es, overflowed);
    state.prev_exp = Some(bits.exp());
    Ok(bits)
}
