use thiserror::Error;

/// Errors raised while reading compressed streams or analysing values.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The bit reader ran out of payload.
    #[error("unexpected end of payload at bit {bit_offset} (wanted {wanted} more bits)")]
    UnexpectedEnd { bit_offset: u64, wanted: u32 },

    /// The stream is structurally inconsistent (bad lengths, trailing data, ...).
    #[error("corrupt stream at bit {bit_offset}: {reason}")]
    Corrupt { bit_offset: u64, reason: String },

    /// The container header is not one we understand.
    #[error("invalid container header: {0}")]
    Format(String),

    /// A metric could not be evaluated for the given values.
    #[error("analysis error: {0}")]
    Analysis(String),
}

impl Error {
    /// Bit offset into the payload where decoding failed, if known.
    pub fn bit_offset(&self) -> Option<u64> {
        match self {
            Error::UnexpectedEnd { bit_offset, .. } | Error::Corrupt { bit_offset, .. } => {
                Some(*bit_offset)
            }
            _ => None,
        }
    }

    /// True for errors produced while walking a payload, false for header
    /// and analysis errors.
    pub fn is_decode_error(&self) -> bool {
        matches!(self, Error::UnexpectedEnd { .. } | Error::Corrupt { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
