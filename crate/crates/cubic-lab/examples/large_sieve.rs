//! Numerical large-sieve checks: the mean-square bound over all primitive
//! characters, and the diagonal/off-diagonal split over the cubic family.
//!
//! ```bash
//! cargo run --release --example large_sieve
//! ```

use cubic_lab::oracles::{cubic_family_char_sum, cubic_family_sieve_check, large_sieve_ratio};

fn main() {
    println!("classical large sieve: ratios LHS / ((Q^2 + M) sum |a|^2)");
    println!(
        "{:>6} {:>8} {:>8} {:>12} {:>12}",
        "Q", "M", "trials", "max ratio", "mean ratio"
    );
    for (q, m, trials) in [(50u64, 500u64, 25u64), (100, 2000, 50), (100, 8000, 25)] {
        let s = large_sieve_ratio(q, m, 13, trials).unwrap();
        println!(
            "{q:>6} {m:>8} {trials:>8} {:>12.5} {:>12.5}",
            s.max_ratio, s.mean_ratio
        );
    }
    println!();

    println!("cubic family: off-diagonal remainder / envelope");
    println!(
        "{:>6} {:>6} {:>8} {:>10} {:>14}",
        "Q", "M", "trials", "family", "max ratio"
    );
    for (q, m, trials) in [(100u64, 30u64, 20u64), (200, 50, 50)] {
        let s = cubic_family_sieve_check(q, m, 13, trials).unwrap();
        println!(
            "{q:>6} {m:>6} {trials:>8} {:>10} {:>14.3e}",
            s.family_size, s.max_ratio
        );
    }
    println!();

    println!("family character sums sum_chi chi(n) for Q = 100:");
    for n in [2u64, 3, 5, 8, 27] {
        let s = cubic_family_char_sum(100, n).unwrap();
        println!("  n = {n:>3}: {:+.4} {:+.4}i", s.re, s.im);
    }
    println!();
    println!("note: at n = 8 = 2^3 and n = 27 = 3^3 the sum counts the family");
    println!("members coprime to n, since cubic characters are 1 on coprime cubes.");
}
