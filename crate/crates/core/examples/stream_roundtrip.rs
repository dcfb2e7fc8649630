//! Compress a synthetic sensor series in both modes and check the round trip.

use dexor::metrics::StreamStats;
use dexor::{compress_stream_with_stats, decompress_stream, CodecConfig, Mode};

fn print(name: &str, bytes: usize, stats: &StreamStats) {
    let h = stats.case_histogram;
    println!(
        "{name:<16} {bytes:>7} bytes  acb {:>6.3}  ratio {:.3}  cases 10:{} 01:{} 00:{} 11:{}",
        stats.acb().unwrap(),
        stats.compression_ratio().unwrap(),
        h[0],
        h[1],
        h[2],
        h[3],
    );
}

fn main() {
    // Temperature readings with two decimals and the occasional dropout.
    let values: Vec<u64> = (0..10_000)
        .map(|i| {
            if i % 997 == 0 {
                f64::NAN.to_bits()
            } else {
                let t = 21.0 + 3.0 * (i as f64 / 300.0).sin();
                ((t * 100.0).round() / 100.0).to_bits()
            }
        })
        .collect();

    for (name, mode) in [
        ("full", Mode::Full),
        ("exception-only", Mode::ExceptionOnly),
    ] {
        let (bytes, stats) =
            compress_stream_with_stats(&values, CodecConfig::default().with_mode(mode));
        assert_eq!(decompress_stream(&bytes).unwrap(), values);
        print(name, bytes.len(), &stats);
    }
    println!("raw              {:>7} bytes", values.len() * 8);
}
