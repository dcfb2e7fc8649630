//! Compare against the XOR baseline on series of different decimal precision.

use dexor::{compress_stream_with_stats, decompress_stream, gorilla, CodecConfig};

fn series(decimals: i32) -> Vec<u64> {
    let scale = 10f64.powi(decimals);
    let mut x = 50.0f64;
    let mut seed = 0x2545_f491_4f6c_dd1du64;
    (0..50_000)
        .map(|_| {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            x += (seed % 2_000_001) as f64 / 1e6 - 1.0;
            ((x * scale).round() / scale).to_bits()
        })
        .collect()
}

fn main() {
    println!("{:>8} {:>10} {:>10}", "decimals", "dexor", "gorilla");
    for decimals in [0, 1, 2, 4, 6] {
        let values = series(decimals);
        let (a, da) = compress_stream_with_stats(&values, CodecConfig::default());
        let (b, db) = gorilla::compress_stream_with_stats(&values);
        assert_eq!(decompress_stream(&a).unwrap(), values);
        assert_eq!(decompress_stream(&b).unwrap(), values);
        println!(
            "{decimals:>8} {:>10.3} {:>10.3}",
            da.acb().unwrap(),
            db.acb().unwrap()
        );
    }
}
