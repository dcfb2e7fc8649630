//! Decimal-space prefix/suffix extraction.
//!
//! For the current value `v` and the previous value `v_prev` the converter
//! finds two decimal coordinates:
//!
//! * the tail coordinate `q`, the lowest nonzero decimal place of `v`;
//! * the LCP coordinate `o`, the lowest place down to which `v` and `v_prev`
//!   agree digit for digit.
//!
//! The shared prefix `alpha` (the digits of `v` at places `>= o`) can be
//! rebuilt by the decoder from `o` and the previous value, so only the suffix
//! `beta = (v - alpha) * 10^-q`, an integer with fewer than `o - q` digits,
//! is stored.
//!
//! All coordinate tests use scaling and truncation on doubles instead of
//! string conversion. Rounding noise from the scaling is absorbed by a
//! tolerance, and every candidate is checked by rebuilding the value with the
//! exact expression the decoder uses. Anything that does not rebuild
//! bit-for-bit is handed to the exception path.

use crate::bitio::{BitReader, BitWriter};
use crate::error::Result;

/// Lowest supported tail coordinate.
pub const Q_MIN: i32 = -20;
/// Highest supported coordinate (tail or head).
pub const Q_MAX: i32 = 11;
/// LCP search stops here: no value in range has a digit at this place, so
/// the shared prefix is empty.
pub const LCP_CAP: i32 = Q_MAX + 1;
/// Widest suffix span (`o - q`) the main pipeline accepts.
pub const MAX_DELTA: i32 = 15;

const EXP_MASK: u64 = 0x7ff;
const FRACTION_MASK: u64 = (1 << 52) - 1;
/// Exponent bias for binary64.
pub const EXP_BIAS: i32 = 1023;

/// Nearest doubles to 10^0 ..= 10^25. Encoder and decoder scale through this
/// table only.
pub const POW10: [f64; 26] = [
    1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12, 1e13, 1e14, 1e15, 1e16,
    1e17, 1e18, 1e19, 1e20, 1e21, 1e22, 1e23, 1e24, 1e25,
];

/// At and above this magnitude every double is an integer, so integrality
/// carries no information about decimal digits.
const INTEGRAL_LIMIT: f64 = 4_503_599_627_370_496.0; // 2^52

/// Raw IEEE754 binary64 pattern with sign/exponent/fraction accessors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FloatBits(pub u64);

impl FloatBits {
    pub fn from_f64(v: f64) -> Self {
        FloatBits(v.to_bits())
    }

    pub fn from_parts(sign: u64, exp: u64, fraction: u64) -> Self {
        debug_assert!(sign <= 1 && exp <= EXP_MASK && fraction <= FRACTION_MASK);
        FloatBits(sign << 63 | exp << 52 | fraction)
    }

    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn sign(self) -> u64 {
        self.0 >> 63
    }

    /// Stored (biased) exponent.
    #[inline]
    pub fn exp(self) -> u64 {
        (self.0 >> 52) & EXP_MASK
    }

    #[inline]
    pub fn fraction(self) -> u64 {
        self.0 & FRACTION_MASK
    }

    #[inline]
    pub fn value(self) -> f64 {
        f64::from_bits(self.0)
    }

    /// Nonzero, finite and not subnormal.
    #[inline]
    pub fn is_normal(self) -> bool {
        let e = self.exp();
        e != 0 && e != EXP_MASK
    }
}

/// Absolute tolerance used when testing a scaled value for integrality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-6);

    /// Returns `None` unless `0 < tol < 0.5`.
    pub fn new(tol: f64) -> Option<Self> {
        (tol > 0.0 && tol < 0.5).then_some(Tolerance(tol))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `v * 10^k` through the shared power table (division for negative `k`).
#[inline]
pub fn scale(v: f64, k: i32) -> f64 {
    if k >= 0 {
        v * POW10[k as usize]
    } else {
        v / POW10[(-k) as usize]
    }
}

/// Distance from the nearest integer still treated as that integer.
///
/// Scaling a double by a power of ten is off by up to `|x| * 2^-52`, which
/// outgrows any fixed tolerance once `|x|` passes about 10^10. For decimals
/// of up to 15 digits this band stays below the smallest digit fraction at
/// every coarser place, so it cannot invent a tail.
#[inline]
fn snap_band(x: f64, tol: Tolerance) -> f64 {
    tol.0.max(x.abs() * f64::EPSILON)
}

/// `round(x)` when `x` lies within the snap band of it, otherwise `trunc(x)`.
#[inline]
pub fn tolerant_trunc(x: f64, tol: Tolerance) -> f64 {
    let r = x.round();
    if (x - r).abs() < snap_band(x, tol) {
        r
    } else {
        x.trunc()
    }
}

/// A nonzero value scaled above its head rounds to zero; that is not a tail.
#[inline]
fn is_integral(x: f64, tol: Tolerance) -> bool {
    let r = x.round();
    r != 0.0 && x.abs() < INTEGRAL_LIMIT && (x - r).abs() < snap_band(x, tol)
}

/// Tail coordinate of `v`, searched from `q_prev`.
///
/// If `v` is integral at `q_prev` the search walks up to coarser places,
/// otherwise down to finer ones. `None` when no coordinate in
/// `[Q_MIN, Q_MAX]` is the tail.
pub fn get_tail(v: f64, q_prev: i32, tol: Tolerance) -> Option<i32> {
    let integral = |q: i32| is_integral(scale(v, -q), tol);
    // Places where the scaled value outgrows double precision say nothing.
    let start =
        (q_prev.clamp(Q_MIN, Q_MAX)..=Q_MAX).find(|&q| scale(v, -q).abs() < INTEGRAL_LIMIT)?;
    if integral(start) {
        let mut q = start;
        while integral(q + 1) {
            if q + 1 > Q_MAX {
                return None;
            }
            q += 1;
        }
        Some(q)
    } else {
        (Q_MIN..start).rev().find(|&q| integral(q))
    }
}

/// Lowest coordinate `l >= q` at which `v` and `v_prev` truncate to the same
/// value; `LCP_CAP` when they share no prefix.
pub fn get_lcp(v: f64, v_prev: f64, q: i32, tol: Tolerance) -> i32 {
    (q..LCP_CAP)
        .find(|&l| tolerant_trunc(scale(v, -l), tol) == tolerant_trunc(scale(v_prev, -l), tol))
        .unwrap_or(LCP_CAP)
}

/// Digits of `v` at places `>= o`.
#[inline]
pub fn prefix_at(v: f64, o: i32, tol: Tolerance) -> f64 {
    if o >= LCP_CAP {
        0.0
    } else {
        // `+ 0.0` folds a negative zero prefix into the positive one.
        scale(tolerant_trunc(scale(v, -o), tol), o) + 0.0
    }
}

/// `alpha + beta * 10^q`, the only reconstruction expression in the codec.
///
/// The sum is formed on the integer grid `10^q` and scaled once, so a value
/// with few enough digits is recovered by a single correctly rounded
/// operation. Adding `alpha` directly would round twice
/// (`88.1 + 0.0479 != 88.1479`).
#[inline]
pub fn reconstruct(alpha: f64, beta: i64, q: i32) -> f64 {
    let digits = scale(alpha, -q).round() + beta as f64;
    scale(digits, q)
}

/// True iff the canonical reconstruction reproduces `bits` exactly.
pub fn verify_reconstruction(bits: FloatBits, alpha: f64, beta: i64, q: i32) -> bool {
    reconstruct(alpha, beta, q).to_bits() == bits.raw()
}

/// Tail and LCP coordinates of one value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecimalCoords {
    pub q: i32,
    pub o: i32,
}

impl DecimalCoords {
    pub fn new(q: i32, o: i32) -> Self {
        Self { q, o }
    }

    /// Suffix span `o - q`.
    pub fn delta(self) -> i32 {
        self.o - self.q
    }
}

/// A value the main pipeline can carry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalRecord {
    pub coords: DecimalCoords,
    pub alpha: f64,
    pub beta: i64,
}

impl NormalRecord {
    pub fn alpha_is_zero(&self) -> bool {
        self.alpha == 0.0
    }
}

/// Why a value left the main pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionReason {
    /// Zero, subnormal, infinite or NaN.
    NotNormal,
    TailNotFound,
    /// `o - q` wider than the 4-bit span field.
    SpanTooWide,
    /// The suffix does not fit the span (misaligned prefix after rounding).
    SuffixOverflow,
    /// Prefix and suffix signs disagree, so the sign cannot be elided.
    SignMismatch,
    /// Prefix rebuilt from the previous value differs from the current one.
    PrefixMismatch,
    /// `alpha + beta * 10^q` does not round to the original bits.
    ReconstructionMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvertOutcome {
    Normal(NormalRecord),
    Exception(ExceptionReason),
}

/// Split `bits` into prefix and suffix against the previous value.
pub fn get_prefix_and_suffix(
    bits: FloatBits,
    prev_value: f64,
    prev_q: i32,
    tol: Tolerance,
) -> ConvertOutcome {
    use ConvertOutcome::Exception;
    use ExceptionReason::*;

    if !bits.is_normal() {
        return Exception(NotNormal);
    }
    let v = bits.value();
    let Some(q) = get_tail(v, prev_q, tol) else {
        return Exception(TailNotFound);
    };
    let o = get_lcp(v, prev_value, q, tol);
    let delta = o - q;
    if delta > MAX_DELTA {
        return Exception(SpanTooWide);
    }
    let alpha = prefix_at(v, o, tol);
    // The decoder only sees the previous value.
    let alpha_prev = prefix_at(prev_value, o, tol);
    if alpha != alpha_prev {
        return Exception(PrefixMismatch);
    }
    let beta = scale(v - alpha, -q).round();
    if beta.is_nan() || beta.abs() >= POW10[delta as usize] {
        return Exception(SuffixOverflow);
    }
    let beta = beta as i64;
    if alpha != 0.0 && beta != 0 && (alpha < 0.0) != (beta < 0) {
        return Exception(SignMismatch);
    }
    if !verify_reconstruction(bits, alpha, beta, q) {
        return Exception(ReconstructionMismatch);
    }
    ConvertOutcome::Normal(NormalRecord {
        coords: DecimalCoords { q, o },
        alpha,
        beta,
    })
}

/// Two-bit control code preceding every value after the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseCode {
    /// `10`: same `q` and `o` as the previous normal value.
    Reuse,
    /// `01`: same `q`, new `o`; followed by 4-bit `o - q`.
    NewLcp,
    /// `00`: new `q`; followed by 5-bit `q + 20` and 4-bit `o - q`.
    NewTail,
    /// `11`: exception record follows.
    Exception,
}

impl CaseCode {
    pub const ALL: [CaseCode; 4] = [
        CaseCode::Reuse,
        CaseCode::NewLcp,
        CaseCode::NewTail,
        CaseCode::Exception,
    ];

    pub fn bits(self) -> u64 {
        match self {
            CaseCode::Reuse => 0b10,
            CaseCode::NewLcp => 0b01,
            CaseCode::NewTail => 0b00,
            CaseCode::Exception => 0b11,
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        match bits & 0b11 {
            0b10 => CaseCode::Reuse,
            0b01 => CaseCode::NewLcp,
            0b00 => CaseCode::NewTail,
            _ => CaseCode::Exception,
        }
    }

    /// Index into a 4-slot histogram, in `ALL` order.
    pub fn index(self) -> usize {
        match self {
            CaseCode::Reuse => 0,
            CaseCode::NewLcp => 1,
            CaseCode::NewTail => 2,
            CaseCode::Exception => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseCode::Reuse => "10",
            CaseCode::NewLcp => "01",
            CaseCode::NewTail => "00",
            CaseCode::Exception => "11",
        }
    }
}

/// Pick the case code for a normal value given the previous coordinates.
/// Coordinates that do not fit their fields yield `CaseCode::Exception`.
pub fn classify_case(coords: DecimalCoords, prev: DecimalCoords) -> CaseCode {
    let span_ok = (0..=MAX_DELTA).contains(&coords.delta());
    let tail_ok = (0..=31).contains(&(coords.q - Q_MIN));
    if !span_ok || !tail_ok {
        CaseCode::Exception
    } else if coords.q != prev.q {
        CaseCode::NewTail
    } else if coords.o != prev.o {
        CaseCode::NewLcp
    } else {
        CaseCode::Reuse
    }
}

/// Emit the control code and whatever coordinate fields it implies.
pub fn write_case(code: CaseCode, coords: DecimalCoords, w: &mut BitWriter) {
    w.write_bits(code.bits(), 2);
    match code {
        CaseCode::NewLcp => w.write_bits(coords.delta() as u64, 4),
        CaseCode::NewTail => {
            w.write_bits((coords.q - Q_MIN) as u64, 5);
            w.write_bits(coords.delta() as u64, 4);
        }
        CaseCode::Reuse | CaseCode::Exception => {}
    }
}

/// Read a control code and resolve the coordinates for the value it
/// introduces. Returns the previous coordinates unchanged for `Reuse` and
/// `Exception`.
pub fn read_case(prev: DecimalCoords, r: &mut BitReader<'_>) -> Result<(CaseCode, DecimalCoords)> {
    let code = CaseCode::from_bits(r.read_bits(2)?);
    let coords = match code {
        CaseCode::NewLcp => {
            let delta = r.read_bits(4)? as i32;
            DecimalCoords::new(prev.q, prev.q + delta)
        }
        CaseCode::NewTail => {
            let q = r.read_bits(5)? as i32 + Q_MIN;
            let delta = r.read_bits(4)? as i32;
            DecimalCoords::new(q, q + delta)
        }
        CaseCode::Reuse | CaseCode::Exception => prev,
    };
    Ok((code, coords))
}
