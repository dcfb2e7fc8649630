//! Per-value stream codec.
//!
//! The first value of a stream is stored raw in 64 bits. Every later value
//! goes through the converter: a normal result is written as a case code,
//! any coordinate fields the code calls for, and the fixed-width suffix;
//! anything else becomes case `11` followed by an exception record. In
//! exception-only mode the case codes are dropped and every value after the
//! first is an exception record.
//!
//! Encoder and decoder run the same state machine over [`CodecState`], so
//! after each value both sides hold identical state.

use crate::bitio::{BitReader, BitWriter};
use crate::container::{CodecParams, StreamHeader, StreamMode};
use crate::converter::{
    classify_case, get_prefix_and_suffix, get_tail, prefix_at, read_case, reconstruct, write_case,
    CaseCode, ConvertOutcome, DecimalCoords, FloatBits, Tolerance,
};
use crate::error::{Error, Result};
use crate::exception::{decode_exception, encode_exception, AdaptiveState, DEFAULT_RHO};
use crate::metrics::StreamStats;
use crate::suffix::{decode_suffix, encode_suffix, SuffixPlan};

/// Whether the decimal pipeline runs at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Full,
    /// Every value is an exception record and no case codes are written.
    /// Suited to streams known to carry full-precision values.
    ExceptionOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodecConfig {
    pub mode: Mode,
    pub tolerance: Tolerance,
    pub rho: u32,
}

impl Default for CodecConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Full,
            tolerance: Tolerance::DEFAULT,
            rho: DEFAULT_RHO,
        }
    }
}

impl CodecConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_rho(mut self, rho: u32) -> Self {
        self.rho = rho;
        self
    }

    pub(crate) fn params(&self) -> CodecParams {
        CodecParams {
            tolerance: self.tolerance,
            rho: self.rho,
        }
    }
}

/// How one value was encoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuePath {
    /// First value of the stream, stored raw.
    Bootstrap,
    Normal(CaseCode),
    Exception {
        overflowed: bool,
    },
}

/// History shared by encoder and decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct CodecState {
    pub config: CodecConfig,
    pub prev_bits: Option<FloatBits>,
    pub prev_value: f64,
    /// Coordinates of the most recent normal value.
    pub prev_coords: DecimalCoords,
    /// Prefix of the previous value when it was normal; lets case `10` skip
    /// recomputing it.
    pub prev_alpha: Option<f64>,
    pub adaptive: AdaptiveState,
}

impl CodecState {
    pub fn new(config: CodecConfig) -> Self {
        Self {
            config,
            prev_bits: None,
            prev_value: 0.0,
            prev_coords: DecimalCoords::new(0, 0),
            prev_alpha: None,
            adaptive: AdaptiveState::new(config.rho),
        }
    }

    /// Seed the coordinates from the first value as if it had been compared
    /// with itself, so an immediate repeat is a plain case `10`.
    fn bootstrap(&mut self, bits: FloatBits) {
        if bits.is_normal() {
            if let Some(q) = get_tail(bits.value(), 0, self.config.tolerance) {
                self.prev_coords = DecimalCoords::new(q, q);
            }
        }
        self.advance(bits, None);
    }

    fn advance(&mut self, bits: FloatBits, alpha: Option<f64>) {
        self.prev_bits = Some(bits);
        self.prev_value = bits.value();
        self.prev_alpha = alpha;
        self.adaptive.prev_exp = Some(bits.exp());
    }

    /// Encode one value.
    pub fn compress_value(&mut self, bits: FloatBits, w: &mut BitWriter) -> ValuePath {
        if self.prev_bits.is_none() {
            w.write_bits(bits.raw(), 64);
            self.bootstrap(bits);
            return ValuePath::Bootstrap;
        }
        if self.config.mode == Mode::ExceptionOnly {
            let overflowed = encode_exception(bits, &mut self.adaptive, w);
            self.advance(bits, None);
            return ValuePath::Exception { overflowed };
        }

        let outcome = get_prefix_and_suffix(
            bits,
            self.prev_value,
            self.prev_coords.q,
            self.config.tolerance,
        );
        if let ConvertOutcome::Normal(rec) = outcome {
            let code = classify_case(rec.coords, self.prev_coords);
            if code != CaseCode::Exception {
                write_case(code, rec.coords, w);
                let plan = SuffixPlan::new(rec.coords.delta(), rec.alpha_is_zero());
                encode_suffix(rec.beta, plan, w);
                self.prev_coords = rec.coords;
                self.advance(bits, Some(rec.alpha));
                return ValuePath::Normal(code);
            }
        }

        w.write_bits(CaseCode::Exception.bits(), 2);
        let overflowed = encode_exception(bits, &mut self.adaptive, w);
        self.advance(bits, None);
        ValuePath::Exception { overflowed }
    }

    /// Decode one value, mirroring [`CodecState::compress_value`].
    pub fn decompress_value(&mut self, r: &mut BitReader<'_>) -> Result<FloatBits> {
        if self.prev_bits.is_none() {
            let bits = FloatBits(r.read_bits(64)?);
            self.bootstrap(bits);
            return Ok(bits);
        }
        if self.config.mode == Mode::ExceptionOnly {
            let bits = decode_exception(&mut self.adaptive, r)?;
            self.advance(bits, None);
            return Ok(bits);
        }

        let (code, coords) = read_case(self.prev_coords, r)?;
        if code == CaseCode::Exception {
            let bits = decode_exception(&mut self.adaptive, r)?;
            self.advance(bits, None);
            return Ok(bits);
        }
        if !(0..=crate::converter::MAX_DELTA).contains(&coords.delta()) {
            // Only reachable through a corrupt or truncated span field.
            return Err(Error::Corrupt {
                bit_offset: r.position(),
                reason: format!("suffix span {} out of range", coords.delta()),
            });
        }
        let alpha = match (code, self.prev_alpha) {
            (CaseCode::Reuse, Some(alpha)) => alpha,
            _ => prefix_at(self.prev_value, coords.o, self.config.tolerance),
        };
        let prefix_sign = if alpha > 0.0 {
            1
        } else if alpha < 0.0 {
            -1
        } else {
            0
        };
        let plan = SuffixPlan::new(coords.delta(), alpha == 0.0);
        let beta = decode_suffix(plan, prefix_sign, r)?;
        let bits = FloatBits::from_f64(reconstruct(alpha, beta, coords.q));
        self.prev_coords = coords;
        self.advance(bits, Some(alpha));
        Ok(bits)
    }
}

/// Streaming encoder that accumulates a payload and its statistics.
#[derive(Debug)]
pub struct Encoder {
    state: CodecState,
    writer: BitWriter,
    stats: StreamStats,
}

impl Encoder {
    pub fn new(config: CodecConfig) -> Self {
        Self {
            state: CodecState::new(config),
            writer: BitWriter::new(),
            stats: StreamStats::default(),
        }
    }

    /// Encode one value and return the number of bits it took.
    pub fn push(&mut self, bits: FloatBits) -> u64 {
        let before = self.writer.bit_len();
        let path = self.state.compress_value(bits, &mut self.writer);
        let cost = self.writer.bit_len() - before;
        self.stats.record(path, cost);
        cost
    }

    pub fn push_f64(&mut self, v: f64) -> u64 {
        self.push(FloatBits::from_f64(v))
    }

    pub fn state(&self) -> &CodecState {
        &self.state
    }

    pub fn stats(&self) -> &StreamStats {
        &self.stats
    }

    pub fn bit_len(&self) -> u64 {
        self.writer.bit_len()
    }

    /// Payload bytes, exact payload bit length and statistics.
    pub fn finish(self) -> (Vec<u8>, u64, StreamStats) {
        let (bytes, bits) = self.writer.finish();
        (bytes, bits, self.stats)
    }

    /// Wrap the payload in a container.
    pub fn finish_container(self) -> (Vec<u8>, StreamStats) {
        let config = self.state.config;
        let count = self.stats.value_count;
        let (payload, payload_bits, stats) = self.finish();
        let mode = match config.mode {
            Mode::Full => StreamMode::Full,
            Mode::ExceptionOnly => StreamMode::ExceptionOnly,
        };
        let header = StreamHeader::new(mode, count, payload_bits).with_params(config.params());
        let mut out = Vec::with_capacity(header.encoded_len() + payload.len());
        header.write_to(&mut out);
        out.extend_from_slice(&payload);
        (out, stats)
    }
}

/// Streaming decoder over a payload.
#[derive(Debug)]
pub struct Decoder<'a> {
    state: CodecState,
    reader: BitReader<'a>,
}

impl<'a> Decoder<'a> {
    pub fn new(config: CodecConfig, payload: &'a [u8], payload_bits: u64) -> Result<Self> {
        Ok(Self {
            state: CodecState::new(config),
            reader: BitReader::with_bit_len(payload, payload_bits)?,
        })
    }

    pub fn next_value(&mut self) -> Result<FloatBits> {
        self.state.decompress_value(&mut self.reader)
    }

    pub fn state(&self) -> &CodecState {
        &self.state
    }

    pub fn remaining_bits(&self) -> u64 {
        self.reader.remaining()
    }
}

/// Compress raw 64-bit patterns into a container.
pub fn compress_stream(values: &[u64], config: CodecConfig) -> Vec<u8> {
    compress_stream_with_stats(values, config).0
}

pub fn compress_stream_with_stats(values: &[u64], config: CodecConfig) -> (Vec<u8>, StreamStats) {
    let mut enc = Encoder::new(config);
    for &v in values {
        enc.push(FloatBits(v));
    }
    enc.finish_container()
}

/// Decode a container produced by [`compress_stream`] or
/// [`crate::gorilla::compress_stream`], dispatching on the header mode.
pub fn decompress_stream(bytes: &[u8]) -> Result<Vec<u64>> {
    let (header, payload) = StreamHeader::parse(bytes)?;
    let config = match header.mode {
        StreamMode::Gorilla => {
            return crate::gorilla::decode_payload(payload, header.payload_bits, header.count)
        }
        StreamMode::Full => CodecConfig::default().with_mode(Mode::Full),
        StreamMode::ExceptionOnly => CodecConfig::default().with_mode(Mode::ExceptionOnly),
    };
    let params = header.params();
    let config = config.with_tolerance(params.tolerance).with_rho(params.rho);
    let mut dec = Decoder::new(config, payload, header.payload_bits)?;
    let count = header.count;
    let mut out = Vec::with_capacity(usize::try_from(count).unwrap_or(0).min(1 << 24));
    for _ in 0..count {
        out.push(dec.next_value()?.raw());
    }
    if dec.remaining_bits() != 0 {
        return Err(Error::Corrupt {
            bit_offset: header.payload_bits - dec.remaining_bits(),
            reason: format!("{} unread payload bits", dec.remaining_bits()),
        });
    }
    Ok(out)
}
