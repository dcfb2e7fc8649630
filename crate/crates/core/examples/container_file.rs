//! Write a container to disk, inspect its header, read it back.

use dexor::container::StreamHeader;
use dexor::{compress_stream, decompress_stream, CodecConfig, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let values: Vec<u64> = (0..1000).map(|i| (i as f64 * 0.125).to_bits()).collect();
    let config = CodecConfig::default()
        .with_tolerance(Tolerance::new(1e-9).unwrap())
        .with_rho(16);
    let path = std::env::temp_dir().join("dexor_example.dxor");
    std::fs::write(&path, compress_stream(&values, config))?;

    let bytes = std::fs::read(&path)?;
    let (header, payload) = StreamHeader::parse(&bytes)?;
    println!("file       {}", path.display());
    println!("version    {:#04x}", header.version());
    println!("mode       {}", header.mode.name());
    println!("count      {}", header.count);
    println!(
        "bits       {} ({} payload bytes)",
        header.payload_bits,
        payload.len()
    );
    println!("tolerance  {:e}", header.params().tolerance.get());
    println!("rho        {}", header.params().rho);

    assert_eq!(decompress_stream(&bytes)?, values);
    std::fs::remove_file(&path)?;
    Ok(())
}
