//! Compression accounting and smoothness measures.

use crate::converter::{get_tail, scale, CaseCode, Tolerance};
use crate::error::{Error, Result};
use crate::stream::ValuePath;

/// Center bit length: span from the highest to the lowest set bit, 0 for 0.
#[inline]
pub fn cbl(word: u64) -> u32 {
    if word == 0 {
        0
    } else {
        64 - word.leading_zeros() - word.trailing_zeros()
    }
}

/// Smoothness between two values: CBL of the magnitude of their difference
/// after both are scaled by the finer of their two tail coordinates.
///
/// A zero value places no constraint on the shared coordinate.
pub fn smoothness_s(vx: f64, vy: f64, tol: Tolerance) -> Result<u32> {
    let tail = |v: f64| -> Result<Option<i32>> {
        if v == 0.0 {
            return Ok(None);
        }
        get_tail(v, 0, tol)
            .map(Some)
            .ok_or_else(|| Error::Analysis(format!("{v:?} has no tail coordinate in range")))
    };
    let q_hat = match (tail(vx)?, tail(vy)?) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return Ok(0),
    };
    let diff = (scale(vx, -q_hat) - scale(vy, -q_hat)).abs().round();
    if diff.is_nan() || diff >= 18_446_744_073_709_551_616.0 {
        return Err(Error::Analysis(format!(
            "scaled difference of {vx:?} and {vy:?} exceeds 64 bits"
        )));
    }
    Ok(cbl(diff as u64))
}

/// Per-stream bit accounting. Header bytes and byte padding are excluded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StreamStats {
    pub total_payload_bits: u64,
    pub value_count: u64,
    /// Counts per path in [`CaseCode::ALL`] order. Exception-only streams
    /// write no codes but still count their records under `11`.
    pub case_histogram: [u64; 4],
    pub exception_overflows: u64,
}

impl StreamStats {
    pub fn record(&mut self, path: ValuePath, bits: u64) {
        self.record_bits(bits);
        match path {
            ValuePath::Bootstrap => {}
            ValuePath::Normal(code) => self.case_histogram[code.index()] += 1,
            ValuePath::Exception { overflowed } => {
                self.case_histogram[CaseCode::Exception.index()] += 1;
                self.exception_overflows += u64::from(overflowed);
            }
        }
    }

    /// Account a value without a path, as the baseline codec does.
    pub fn record_bits(&mut self, bits: u64) {
        self.total_payload_bits += bits;
        self.value_count += 1;
    }

    pub fn acb(&self) -> Result<f64> {
        acb(self)
    }

    /// `acb / 64`.
    pub fn compression_ratio(&self) -> Result<f64> {
        Ok(self.acb()? / 64.0)
    }

    pub fn count(&self, code: CaseCode) -> u64 {
        self.case_histogram[code.index()]
    }
}

/// Average compressed bits per value.
pub fn acb(stats: &StreamStats) -> Result<f64> {
    if stats.value_count == 0 {
        return Err(Error::Analysis("average bits of an empty stream".into()));
    }
    Ok(stats.total_payload_bits as f64 / stats.value_count as f64)
}
