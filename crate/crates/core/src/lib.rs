//! Streaming lossless compression for 64-bit floating-point values.
//!
//! Consecutive values are compared in decimal space: the digits two values
//! share are elided and only the remaining suffix is stored, as a
//! fixed-width integer whose width follows from two small coordinates.
//! Values without a short decimal form (full-precision doubles, NaN,
//! infinities, zero, subnormals) fall back to an exception record that
//! compresses only the IEEE754 exponent.
//!
//! ```
//! use dexor::{compress_stream, decompress_stream, CodecConfig};
//!
//! let values: Vec<u64> = [88.1537, 88.1479, 88.1479, 88.2]
//!     .iter()
//!     .map(|v: &f64| v.to_bits())
//!     .collect();
//! let bytes = compress_stream(&values, CodecConfig::default());
//! assert_eq!(decompress_stream(&bytes).unwrap(), values);
//! ```
//!
//! Modules, bottom up:
//!
//! * [`bitio`]: MSB-first bit writer and reader.
//! * [`converter`]: tail/LCP coordinates, prefix and suffix extraction.
//! * [`suffix`]: fixed-width suffix layout.
//! * [`exception`]: exponent-difference records with adaptive width.
//! * [`stream`]: per-value state machine, encoder, decoder.
//! * [`container`]: on-disk header.
//! * [`gorilla`]: XOR baseline codec.
//! * [`metrics`]: CBL, smoothness and bits-per-value accounting.

pub mod bitio;
pub mod cli;
pub mod container;
pub mod converter;
pub mod error;
pub mod exception;
pub mod gorilla;
pub mod input;
pub mod metrics;
pub mod stream;
pub mod suffix;

pub use converter::{FloatBits, Tolerance};
pub use error::{Error, Result};
pub use metrics::StreamStats;
pub use stream::{
    compress_stream, compress_stream_with_stats, decompress_stream, CodecConfig, Decoder, Encoder,
    Mode,
};
