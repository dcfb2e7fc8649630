//! Watch the adaptive exponent width react to a stream of full-precision values.

use dexor::bitio::BitWriter;
use dexor::converter::FloatBits;
use dexor::exception::{encode_exception, AdaptiveState, DEFAULT_RHO};

fn main() {
    let mut state = AdaptiveState::new(DEFAULT_RHO);
    let mut w = BitWriter::new();
    // Exponent runs: steady, then a jump, then steady again.
    let exps = [1029u64; 6]
        .into_iter()
        .chain([1029, 1035, 1030, 1031])
        .chain([1031; 12]);
    state.prev_exp = Some(1029);
    println!(
        "{:>4} {:>4} {:>3} {:>5} {:>8}",
        "exp", "es", "el", "bits", "overflow"
    );
    for (i, exp) in exps.enumerate() {
        let bits = FloatBits::from_parts(0, exp, 0x5_5555_5555 + i as u64);
        let es = exp as i64 - state.prev_exp.unwrap() as i64;
        let el = state.el;
        let before = w.bit_len();
        let overflow = encode_exception(bits, &mut state, &mut w);
        println!(
            "{exp:>4} {es:>4} {el:>3} {:>5} {overflow:>8}",
            w.bit_len() - before
        );
    }
}
