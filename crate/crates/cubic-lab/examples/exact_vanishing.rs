//! The exact-arithmetic layer: symmetric harmonic sums cancel term by term
//! for even characters, and full-period orthogonality is certified through
//! cyclotomic divisibility, with no floating point anywhere.
//!
//! ```bash
//! cargo run --release --example exact_vanishing
//! ```

use cubic_lab::characters::{all_characters, enumerate_cubic_primitive, ResidueGroup};
use cubic_lab::charsum::symmetric_harmonic_sum;
use cubic_lab::exact::ExactRootSum;

fn main() {
    // sum_{1 <= |n| <= Z} chi(n)/n vanishes exactly for even characters
    println!("symmetric harmonic sums over 1 <= |n| <= Z:");
    for chi in enumerate_cubic_primitive(20).expect("enumeration") {
        for z in [100u64, 10_000] {
            let s = symmetric_harmonic_sum(&chi, z);
            println!(
                "  {} Z = {z:>6}: pairwise-cancelled = {}, exactly zero = {}",
                chi.id(),
                s.is_empty(),
                s.is_zero()
            );
        }
    }
    println!();

    // an odd character leaves an honest nonzero remainder
    let g7 = ResidueGroup::new(7).unwrap();
    let legendre = all_characters(&g7)
        .into_iter()
        .find(|c| c.order() == 2)
        .unwrap();
    let s = symmetric_harmonic_sum(&legendre, 50);
    println!(
        "odd character {}: symmetric sum zero = {}, float shadow = {:.6}",
        legendre.id(),
        s.is_zero(),
        s.to_complex()
    );
    println!();

    // full-period orthogonality: sum over a period of chi(n) is zero, and
    // the proof object is divisibility by a cyclotomic polynomial
    println!("full-period orthogonality (exact, via cyclotomic divisibility):");
    for q in [7u64, 9, 12, 91] {
        let g = ResidueGroup::new(q).unwrap();
        for chi in all_characters(&g).into_iter().take(4) {
            if chi.is_principal() {
                continue;
            }
            let mut sum = ExactRootSum::new();
            for n in 1..=q {
                if let Some((a, b)) = chi.eval(n).angle() {
                    sum.add_int(a, b, 1);
                }
            }
            println!(
                "  q = {q:>3} chi = {:>10}: sum over period = 0: {}",
                chi.id(),
                sum.is_zero()
            );
        }
    }
}
