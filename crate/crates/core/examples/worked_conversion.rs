//! Decompose one value against its predecessor and print every step.
//!
//! ```text
//! cargo run --example worked_conversion -- 88.1479 88.1537
//! ```

use dexor::bitio::BitWriter;
use dexor::converter::{
    classify_case, get_lcp, get_prefix_and_suffix, get_tail, write_case, ConvertOutcome,
    DecimalCoords, FloatBits, Tolerance,
};
use dexor::suffix::{encode_suffix, SuffixPlan};

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("a number"))
        .collect();
    let (v, prev) = match args[..] {
        [v, prev] => (v, prev),
        _ => (88.1479, 88.1537),
    };
    let tol = Tolerance::DEFAULT;
    let prev_q = get_tail(prev, 0, tol).expect("previous value has a tail");

    let bits = FloatBits::from_f64(v);
    println!("value        {v:?}");
    println!(
        "bits         sign={} exp={} fraction={:#015x}",
        bits.sign(),
        bits.exp(),
        bits.fraction()
    );
    println!("previous     {prev:?} (tail {prev_q})");

    let Some(q) = get_tail(v, prev_q, tol) else {
        println!("no tail coordinate in range: exception path");
        return;
    };
    println!("tail q       {q}");
    println!("lcp o        {}", get_lcp(v, prev, q, tol));

    match get_prefix_and_suffix(bits, prev, prev_q, tol) {
        ConvertOutcome::Normal(rec) => {
            println!("prefix       {:?}", rec.alpha);
            println!("suffix       {}", rec.beta);
            // The predecessor's own coordinates, as a stream seeds them.
            let prev_coords = DecimalCoords::new(prev_q, prev_q);
            let code = classify_case(rec.coords, prev_coords);
            let mut w = BitWriter::new();
            write_case(code, rec.coords, &mut w);
            encode_suffix(
                rec.beta,
                SuffixPlan::new(rec.coords.delta(), rec.alpha_is_zero()),
                &mut w,
            );
            let (bytes, len) = w.finish();
            let text: String = (0..len)
                .map(|i| {
                    if bytes[(i / 8) as usize] >> (7 - i % 8) & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            println!("case         {}", code.label());
            println!("emitted      {text} ({len} bits)");
        }
        ConvertOutcome::Exception(reason) => println!("exception    {reason:?}"),
    }
}
