//! Fixed suffix widths next to what a length-prefixed encoding would spend.

use dexor::suffix::suffix_bit_length;

fn main() {
    println!(
        "{:>5} {:>6} {:>12} {:>12}",
        "span", "width", "fixed cost", "worst var."
    );
    for delta in 0..=15 {
        let width = suffix_bit_length(delta);
        // Length-prefixed: 6 length bits plus the significant bits.
        let largest = 10u64.pow(delta as u32) - 1;
        let var = 6 + (64 - largest.leading_zeros());
        println!("{delta:>5} {width:>6} {:>12} {var:>12}", 4 + width);
    }
}
