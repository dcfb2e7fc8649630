//! XOR-based reference codec in the style of Gorilla.
//!
//! Each value is XORed with its predecessor. A zero XOR costs one bit;
//! otherwise the meaningful bits (first to last set bit) are written either
//! inside the previous leading/trailing window (`10` + bits) or with a new
//! window (`11` + 5-bit leading count + 6-bit length + bits). The leading
//! count is clamped to 31 and a length of 64 is written as 0.

use crate::bitio::{BitReader, BitWriter};
use crate::container::{StreamHeader, StreamMode};
use crate::error::{Error, Result};
use crate::metrics::StreamStats;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GorillaState {
    pub prev_bits: Option<u64>,
    pub prev_leading: u32,
    /// Zero until the first window is written.
    pub prev_meaningful: u32,
}

impl GorillaState {
    pub fn new() -> Self {
        Self::default()
    }

    fn prev_trailing(&self) -> u32 {
        64 - self.prev_leading - self.prev_meaningful
    }

    /// Encode one value and return the bits written.
    pub fn compress_value(&mut self, bits: u64, w: &mut BitWriter) -> u64 {
        let before = w.bit_len();
        let Some(prev) = self.prev_bits else {
            w.write_bits(bits, 64);
            self.prev_bits = Some(bits);
            return 64;
        };
        let x = bits ^ prev;
        if x == 0 {
            w.write_bit(false);
        } else {
            w.write_bit(true);
            let leading = x.leading_zeros().min(31);
            let trailing = x.trailing_zeros();
            if self.prev_meaningful > 0
                && leading >= self.prev_leading
                && trailing >= self.prev_trailing()
            {
                w.write_bit(false);
                w.write_bits(x >> self.prev_trailing(), self.prev_meaningful);
            } else {
                let meaningful = 64 - leading - trailing;
                w.write_bit(true);
                w.write_bits(u64::from(leading), 5);
                w.write_bits(u64::from(meaningful % 64), 6);
                w.write_bits(x >> trailing, meaningful);
                self.prev_leading = leading;
                self.prev_meaningful = meaningful;
            }
        }
        self.prev_bits = Some(bits);
        w.bit_len() - before
    }

    pub fn decompress_value(&mut self, r: &mut BitReader<'_>) -> Result<u64> {
        let Some(prev) = self.prev_bits else {
            let bits = r.read_bits(64)?;
            self.prev_bits = Some(bits);
            return Ok(bits);
        };
        if !r.read_bit()? {
            return Ok(prev);
        }
        let x = if r.read_bit()? {
            let at = r.position();
            let leading = r.read_bits(5)? as u32;
            let meaningful = match r.read_bits(6)? as u32 {
                0 => 64,
                n => n,
            };
            if leading + meaningful > 64 {
                return Err(Error::Corrupt {
                    bit_offset: at,
                    reason: format!("window {leading}+{meaningful} exceeds 64 bits"),
                });
            }
            self.prev_leading = leading;
            self.prev_meaningful = meaningful;
            r.read_bits(meaningful)? << self.prev_trailing()
        } else {
            if self.prev_meaningful == 0 {
                return Err(Error::Corrupt {
                    bit_offset: r.position(),
                    reason: "window reuse before any window was set".into(),
                });
            }
            r.read_bits(self.prev_meaningful)? << self.prev_trailing()
        };
        let bits = prev ^ x;
        self.prev_bits = Some(bits);
        Ok(bits)
    }
}

/// Compress raw patterns into a mode-0x02 container.
pub fn compress_stream(values: &[u64]) -> Vec<u8> {
    compress_stream_with_stats(values).0
}

pub fn compress_stream_with_stats(values: &[u64]) -> (Vec<u8>, StreamStats) {
    let mut st = GorillaState::new();
    let mut w = BitWriter::with_capacity(values.len() * 2);
    let mut stats = StreamStats::default();
    for &v in values {
        let cost = st.compress_value(v, &mut w);
        stats.record_bits(cost);
    }
    let (payload, payload_bits) = w.finish();
    let header = StreamHeader::new(StreamMode::Gorilla, values.len() as u64, payload_bits);
    let mut out = Vec::with_capacity(header.encoded_len() + payload.len());
    header.write_to(&mut out);
    out.extend_from_slice(&payload);
    (out, stats)
}

pub(crate) fn decode_payload(payload: &[u8], payload_bits: u64, count: u64) -> Result<Vec<u64>> {
    let mut r = BitReader::with_bit_len(payload, payload_bits)?;
    let mut st = GorillaState::new();
    let mut out = Vec::with_capacity(usize::try_from(count).unwrap_or(0).min(1 << 24));
    for _ in 0..count {
        out.push(st.decompress_value(&mut r)?);
    }
    if r.remaining() != 0 {
        return Err(Error::Corrupt {
            bit_offset: r.position(),
            reason: format!("{} unread payload bits", r.remaining()),
        });
    }
    Ok(out)
}
