//! Binary XOR versus decimal smoothness for a few neighbouring pairs.

use dexor::converter::Tolerance;
use dexor::metrics::{cbl, smoothness_s};

fn main() {
    let pairs = [
        (88.1537, 88.1479),
        (0.1, 0.2),
        (1024.5, 1024.25),
        (-3.75, -3.5),
        (1e-5, 2e-5),
    ];
    println!(
        "{:>10} {:>10} {:>9} {:>9}",
        "prev", "value", "xor cbl", "decimal"
    );
    for (prev, v) in pairs {
        let xor = cbl(f64::to_bits(prev) ^ f64::to_bits(v));
        let s = smoothness_s(v, prev, Tolerance::DEFAULT).unwrap();
        println!("{prev:>10} {v:>10} {xor:>9} {s:>9}");
    }
}
