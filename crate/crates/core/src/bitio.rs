//! MSB-first bit writer and reader over byte buffers.
//!
//! Every encoding in the crate is a sequence of `write_bits(value, n)` calls
//! and the matching `read_bits(n)` calls on the way back. Bits fill each byte
//! from the most significant end, so a hexdump reads left to right in the
//! same order the bits were written.

use crate::error::{Error, Result};

/// Append-only bit sink.
#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buf: Vec<u8>,
    /// Pending bits, right-aligned. Holds fewer than 64 bits between calls.
    acc: u64,
    acc_len: u32,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bytes: usize) -> Self {
        Self {
            buf: Vec::with_capacity(bytes),
            ..Self::default()
        }
    }

    /// Number of bits written so far.
    pub fn bit_len(&self) -> u64 {
        self.buf.len() as u64 * 8 + u64::from(self.acc_len)
    }

    /// Append the `n` low-order bits of `value`, most significant first.
    ///
    /// Panics if `n > 64` or if `value` does not fit in `n` bits; silently
    /// dropping high bits would corrupt the stream.
    #[inline]
    pub fn write_bits(&mut self, value: u64, n: u32) {
        assert!(n <= 64, "bit count {n} exceeds 64");
        assert!(
            n == 64 || value >> n == 0,
            "value {value:#x} does not fit in {n} bits"
        );
        if n == 0 {
            return;
        }
        let free = 64 - self.acc_len;
        if n < free {
            self.acc = (self.acc << n) | value;
            self.acc_len += n;
            return;
        }
        // Completes a 64-bit word.
        let rest = n - free;
        let top = value >> rest;
        let word = if self.acc_len == 0 {
            top
        } else {
            (self.acc << free) | top
        };
        self.buf.extend_from_slice(&word.to_be_bytes());
        self.acc = if rest == 0 {
            0
        } else {
            value & ((1u64 << rest) - 1)
        };
        self.acc_len = rest;
    }

    #[inline]
    pub fn write_bit(&mut self, bit: bool) {
        self.write_bits(u64::from(bit), 1);
    }

    /// Zero-pad to a byte boundary and return the bytes with the exact bit length.
    pub fn finish(mut self) -> (Vec<u8>, u64) {
        let bit_len = self.bit_len();
        if self.acc_len > 0 {
            let aligned = self.acc << (64 - self.acc_len);
            let nbytes = self.acc_len.div_ceil(8) as usize;
            self.buf.extend_from_slice(&aligned.to_be_bytes()[..nbytes]);
        }
        (self.buf, bit_len)
    }
}

/// Cursor over a bit payload of known length.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    bit_len: u64,
    pos: u64,
}

impl<'a> BitReader<'a> {
    /// Reader over every bit of `bytes`.
    pub fn new(bytes: &'a [u8]) -> Self {
        Self {
            bytes,
            bit_len: bytes.len() as u64 * 8,
            pos: 0,
        }
    }

    /// Reader limited to the first `bit_len` bits of `bytes`.
    pub fn with_bit_len(bytes: &'a [u8], bit_len: u64) -> Result<Self> {
        if bit_len > bytes.len() as u64 * 8 {
            return Err(Error::Corrupt {
                bit_offset: 0,
                reason: format!(
                    "declared {bit_len} payload bits but only {} bytes present",
                    bytes.len()
                ),
            });
        }
        Ok(Self {
            bytes,
            bit_len,
            pos: 0,
        })
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.bit_len - self.pos
    }

    /// Read `n` bits (0..=64) as an unsigned integer.
    #[inline]
    pub fn read_bits(&mut self, n: u32) -> Result<u64> {
        assert!(n <= 64, "bit count {n} exceeds 64");
        if u64::from(n) > self.remaining() {
            return Err(Error::UnexpectedEnd {
                bit_offset: self.pos,
                wanted: n,
            });
        }
        let mut out = 0u64;
        let mut left = n;
        while left > 0 {
            let byte = self.bytes[(self.pos / 8) as usize];
            let used = (self.pos % 8) as u32;
            let avail = 8 - used;
            let take = avail.min(left);
            let bits = (u64::from(byte) >> (avail - take)) & ((1u64 << take) - 1);
            out = if take == 64 {
                bits
            } else {
                (out << take) | bits
            };
            self.pos += u64::from(take);
            left -= take;
        }
        Ok(out)
    }

    #[inline]
    pub fn read_bit(&mut self) -> Result<bool> {
        Ok(self.read_bits(1)? == 1)
    }
}
