//! Container framing for compressed streams.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "DXOR"
//! 4       1     version (0x01, or 0x02 when codec parameters follow)
//! 5       1     mode: 0x00 full, 0x01 exception-only, 0x02 gorilla
//! 6       8     value count, little-endian
//! 14      8     payload length in bits, little-endian
//! -- version 0x02 only --
//! 22      8     tolerance, f64 little-endian
//! 30      4     rho, u32 little-endian
//! ```
//!
//! The payload follows immediately: MSB-first bits, zero-padded to a byte
//! boundary. Version 0x01 streams use the default tolerance (1e-6) and
//! rho (8).

use crate::converter::Tolerance;
use crate::error::{Error, Result};
use crate::exception::DEFAULT_RHO;

pub const MAGIC: [u8; 4] = *b"DXOR";
pub const VERSION: u8 = 0x01;
pub const VERSION_WITH_PARAMS: u8 = 0x02;
pub const HEADER_LEN: usize = 22;
const PARAMS_LEN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum StreamMode {
    Full = 0x00,
    ExceptionOnly = 0x01,
    Gorilla = 0x02,
}

impl StreamMode {
    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0x00 => Some(StreamMode::Full),
            0x01 => Some(StreamMode::ExceptionOnly),
            0x02 => Some(StreamMode::Gorilla),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StreamMode::Full => "dexor",
            StreamMode::ExceptionOnly => "dexor-exception-only",
            StreamMode::Gorilla => "gorilla",
        }
    }
}

/// Decoder-visible codec parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodecParams {
    pub tolerance: Tolerance,
    pub rho: u32,
}

impl Default for CodecParams {
    fn default() -> Self {
        Self {
            tolerance: Tolerance::DEFAULT,
            rho: DEFAULT_RHO,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamHeader {
    pub mode: StreamMode,
    pub count: u64,
    pub payload_bits: u64,
    params: Option<CodecParams>,
}

impl StreamHeader {
    pub fn new(mode: StreamMode, count: u64, payload_bits: u64) -> Self {
        Self {
            mode,
            count,
            payload_bits,
            params: None,
        }
    }

    /// Attach codec parameters; defaults are dropped so the header stays at
    /// the basic 22-byte layout.
    pub fn with_params(mut self, params: CodecParams) -> Self {
        self.params = (params != CodecParams::default()).then_some(params);
        self
    }

    pub fn params(&self) -> CodecParams {
        self.params.unwrap_or_default()
    }

    pub fn version(&self) -> u8 {
        if self.params.is_some() {
            VERSION_WITH_PARAMS
        } else {
            VERSION
        }
    }

    pub fn encoded_len(&self) -> usize {
        HEADER_LEN + if self.params.is_some() { PARAMS_LEN } else { 0 }
    }

    pub fn payload_len(&self) -> u64 {
        self.payload_bits.div_ceil(8)
    }

    pub fn write_to(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&MAGIC);
        out.push(self.version());
        out.push(self.mode as u8);
        out.extend_from_slice(&self.count.to_le_bytes());
        out.extend_from_slice(&self.payload_bits.to_le_bytes());
        if let Some(p) = self.params {
            out.extend_from_slice(&p.tolerance.get().to_le_bytes());
            out.extend_from_slice(&p.rho.to_le_bytes());
        }
    }

    /// Parse a header and return it with the payload slice.
    pub fn parse(bytes: &[u8]) -> Result<(Self, &[u8])> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!(
                "{} bytes is shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if bytes[0..4] != MAGIC {
            return Err(Error::Format(format!("bad magic {:02x?}", &bytes[0..4])));
        }
        let version = bytes[4];
        if version != VERSION && version != VERSION_WITH_PARAMS {
            return Err(Error::Format(format!("unsupported version {version:#04x}")));
        }
        let mode = StreamMode::from_byte(bytes[5])
            .ok_or_else(|| Error::Format(format!("unknown mode {:#04x}", bytes[5])))?;
        let count = u64::from_le_bytes(bytes[6..14].try_into().unwrap());
        let payload_bits = u64::from_le_bytes(bytes[14..22].try_into().unwrap());

        let mut header = StreamHeader::new(mode, count, payload_bits);
        let mut body = &bytes[HEADER_LEN..];
        if version == VERSION_WITH_PARAMS {
            if body.len() < PARAMS_LEN {
                return Err(Error::Format("truncated parameter block".into()));
            }
            let tol = f64::from_le_bytes(body[0..8].try_into().unwrap());
            let rho = u32::from_le_bytes(body[8..12].try_into().unwrap());
            let tolerance = Tolerance::new(tol)
                .ok_or_else(|| Error::Format(format!("invalid tolerance {tol}")))?;
            header.params = Some(CodecParams { tolerance, rho });
            body = &body[PARAMS_LEN..];
        }

        if body.len() as u64 != header.payload_len() {
            return Err(Error::Corrupt {
                bit_offset: (body.len() as u64).min(header.payload_len()) * 8,
                reason: format!(
                    "header declares {payload_bits} payload bits ({} bytes) but {} bytes follow",
                    header.payload_len(),
                    body.len()
                ),
            });
        }
        Ok((header, body))
    }
}
