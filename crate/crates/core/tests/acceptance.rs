//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use dexor::bitio::BitReader;
use dexor::converter::{get_prefix_and_suffix, prefix_at, ConvertOutcome, FloatBits, Tolerance};
use dexor::metrics::smoothness_s;
use dexor::suffix::suffix_bit_length;
use dexor::{compress_stream_with_stats, decompress_stream, gorilla, CodecConfig, Encoder, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

const TOL: Tolerance = Tolerance::DEFAULT;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn full() -> CodecConfig {
    CodecConfig::default()
}

fn exception_only() -> CodecConfig {
    CodecConfig::default().with_mode(Mode::ExceptionOnly)
}

/// Uniform patterns with a share of forced special values.
fn random_patterns(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    const SPECIAL: [u64; 8] = [
        0x0000_0000_0000_0000,
        0x8000_0000_0000_0000,
        0x7ff0_0000_0000_0000,
        0xfff0_0000_0000_0000,
        0x7ff8_0000_0000_0000,
        0xfff8_0000_0000_0001,
        0x0000_0000_0000_0001,
        0x000f_ffff_ffff_ffff,
    ];
    (0..n)
        .map(|_| match rng.random_range(0..20) {
            0 => SPECIAL[rng.random_range(0..SPECIAL.len())],
            // NaN with a random payload and sign.
            1 => 0x7ff0_0000_0000_0001 | rng.random::<u64>() & 0x800f_ffff_ffff_ffff,
            // Subnormal with a random sign.
            2 => rng.random::<u64>() & 0x800f_ffff_ffff_ffff,
            _ => rng.random(),
        })
        .collect()
}

fn ac1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let values = random_patterns(1_000_000, &mut rng);
    let start = Instant::now();
    let mut mismatches = 0usize;
    for config in [full(), exception_only()] {
        let (bytes, _) = compress_stream_with_stats(&values, config);
        match decompress_stream(&bytes) {
            Ok(back) if back.len() == values.len() => {
                mismatches += back.iter().zip(&values).filter(|(a, b)| a != b).count()
            }
            _ => mismatches += values.len(),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 60.0,
        format!("10^6 patterns x 2 modes, {mismatches} mismatches, {secs:.2}s"),
    )
}

fn ac2() -> Outcome {
    let mut enc = Encoder::new(full());
    enc.push_f64(88.1537);
    let coords = enc.state().prev_coords;
    let cost = enc.push_f64(88.1479);
    let (payload, bits, _) = enc.finish();
    let mut r = BitReader::with_bit_len(&payload, bits).unwrap();
    r.read_bits(64).unwrap();
    let emitted: String = (0..cost)
        .map(|_| if r.read_bit().unwrap() { '1' } else { '0' })
        .collect();
    let expected = "0100110111011111";
    outcome(
        coords.q == -4 && coords.o != -1 && emitted == expected,
        format!("emitted {emitted}, expected {expected}"),
    )
}

fn with_exp(exp: u64, fraction: u64) -> u64 {
    FloatBits::from_parts(0, exp, fraction).raw()
}

fn ac3() -> Outcome {
    let values = [
        with_exp(1026, 0x1234),
        with_exp(1029, 0x5_5555_5555),
        with_exp(1030, 1),
        with_exp(1031, 0xf_ffff_ffff_ffff),
    ];
    let (bytes, stats) = compress_stream_with_stats(&values, exception_only());
    let after_bootstrap = stats.total_payload_bits - 64;
    let lossless = decompress_stream(&bytes)
        .map(|v| v == values)
        .unwrap_or(false);
    outcome(
        after_bootstrap == 175 && lossless,
        format!("{after_bootstrap} bits after bootstrap, expected 175"),
    )
}

fn random_walk_4dp(n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = Normal::new(0.0, 0.05).unwrap();
    let mut x = 50.0f64;
    (0..n)
        .map(|_| {
            x += step.sample(&mut rng);
            if x < 0.0 {
                x = -x;
            }
            if x > 100.0 {
                x = 200.0 - x;
            }
            let v = (x * 1e4).round() / 1e4;
            v.to_bits()
        })
        .collect()
}

fn ac4() -> Outcome {
    let values = random_walk_4dp(100_000, 4);
    let (bytes, dexor) = compress_stream_with_stats(&values, full());
    let (gbytes, gor) = gorilla::compress_stream_with_stats(&values);
    let lossless = decompress_stream(&bytes).ok() == Some(values.clone())
        && decompress_stream(&gbytes).ok() == Some(values);
    let (a, b) = (dexor.acb().unwrap(), gor.acb().unwrap());
    outcome(
        lossless && a <= 20.0 && a < b,
        format!("ACB dexor {a:.3}, gorilla {b:.3}, gap {:.3}", b - a),
    )
}

/// Exact expectation of the per-value gap, by counting every bit length
/// inside each decade.
fn exact_fixed_minus_variable() -> f64 {
    let mut total = 0.0;
    for delta in 1..=15i32 {
        let (lo, hi) = (10u64.pow(delta as u32 - 1), 10u64.pow(delta as u32));
        let fixed = i64::from(suffix_bit_length(delta));
        let mut sum = 0i128;
        let mut b = lo;
        while b < hi {
            let len = 64 - b.leading_zeros();
            let next = hi.min(1u64 << len);
            sum += i128::from(next - b) * i128::from(4 + fixed - 6 - i64::from(len));
            b = next;
        }
        total += sum as f64 / (hi - lo) as f64;
    }
    total / 15.0
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 1_000_000u64;
    let (mut fixed, mut variable) = (0u64, 0u64);
    for _ in 0..n {
        let delta = rng.random_range(1..=15i32);
        let lo = 10u64.pow(delta as u32 - 1);
        let beta = rng.random_range(lo..lo * 10);
        fixed += 4 + u64::from(suffix_bit_length(delta));
        variable += 6 + u64::from(64 - beta.leading_zeros());
    }
    let gap = (fixed as f64 - variable as f64) / n as f64;
    let exact = exact_fixed_minus_variable();
    // -0.159 is an upper bound on the gap; the exact mean sits near -1.
    let band = if (-0.5..0.0).contains(&gap) {
        "inside"
    } else {
        "outside"
    };
    outcome(
        gap < 0.0 && (gap - exact).abs() < 0.01,
        format!(
            "mean fixed minus variable cost {gap:.4} bits (exact {exact:.4}); \
             {band} the expected band [-0.5, 0)"
        ),
    )
}

/// Doubles in [64, 128) whose shortest decimal form needs 17 digits.
fn seventeen_digit_values(n: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = f64::from_bits(with_exp(1029, rng.random::<u64>() >> 12));
        let s = format!("{v:e}");
        let mantissa = s.split('e').next().unwrap();
        if mantissa.chars().filter(char::is_ascii_digit).count() == 17 {
            out.push(v.to_bits());
        }
    }
    out
}

fn ac6() -> Outcome {
    let values = seventeen_digit_values(10_000, 6);
    let mut enc = Encoder::new(full());
    let costs: Vec<u64> = values.iter().map(|&v| enc.push(FloatBits(v))).collect();
    let tail_ok = costs[costs.len() - 1000..].iter().all(|&c| c == 56);
    let (bytes, _) = enc.finish_container();
    let lossless = decompress_stream(&bytes).ok() == Some(values);
    let off = costs[costs.len() - 1000..]
        .iter()
        .filter(|&&c| c != 56)
        .count();
    outcome(
        tail_ok && lossless,
        format!("last 1000 values: {off} not at 56 bits"),
    )
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut pairs, mut attempts, mut failures) = (0u32, 0u32, 0u32);
    while pairs < 10_000 {
        attempts += 1;
        let dp = rng.random_range(1..=7u32);
        let q = rng.random_range(-6..=2i32);
        let digits = || 10i64.pow(dp);
        let draw = |rng: &mut ChaCha8Rng| {
            let m = rng.random_range(1..digits()) * if rng.random_bool(0.2) { -1 } else { 1 };
            dexor::converter::scale(m as f64, q)
        };
        let v_prev = draw(&mut rng);
        let v = if rng.random_bool(0.5) {
            // Share a prefix more often than chance.
            let bump = rng.random_range(-50..50i64);
            dexor::converter::scale(
                (dexor::converter::scale(v_prev, -q).round() as i64 + bump) as f64,
                q,
            )
        } else {
            draw(&mut rng)
        };
        let ConvertOutcome::Normal(rec) =
            get_prefix_and_suffix(FloatBits::from_f64(v), v_prev, q, TOL)
        else {
            continue;
        };
        let alpha = prefix_at(v, rec.coords.o, TOL);
        let lhs = smoothness_s(v - alpha, v_prev - alpha, TOL);
        let rhs = smoothness_s(v, v_prev, TOL);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => failures += 1,
        }
        pairs += 1;
    }
    outcome(
        failures == 0,
        format!("{pairs} normal pairs ({attempts} drawn), {failures} mismatches"),
    )
}

fn ac8() -> Outcome {
    let mut enc = Encoder::new(full());
    enc.push_f64(88.1479);
    let costs: Vec<u64> = (0..1000).map(|_| enc.push_f64(88.1479)).collect();
    let bad = costs.iter().filter(|&&c| c != 2).count();
    outcome(bad == 0, format!("{bad} of 1000 repeats not at 2 bits"))
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut values = vec![];
    let mut exp = 1029u64;
    for _ in 0..400 {
        // Rare large jumps, long flat runs.
        exp = (exp as i64 + rng.random_range(-300..300i64)).clamp(1, 2046) as u64;
        let run = rng.random_range(20..200);
        values.extend((0..run).map(|_| with_exp(exp, rng.random::<u64>() >> 12)));
    }
    let acb = |rho| {
        let (bytes, stats) = compress_stream_with_stats(&values, exception_only().with_rho(rho));
        assert_eq!(decompress_stream(&bytes).unwrap(), values);
        stats.acb().unwrap()
    };
    let (adaptive, fixed) = (acb(8), acb(u32::MAX));
    outcome(
        adaptive <= fixed,
        format!("ACB rho=8 {adaptive:.3}, contraction disabled {fixed:.3}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC-1", ac1),
        ("AC-2", ac2),
        ("AC-3", ac3),
        ("AC-4", ac4),
        ("AC-5", ac5),
        ("AC-6", ac6),
        ("AC-7", ac7),
        ("AC-8", ac8),
        ("AC-9", ac9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "{name} {} {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
