//! Brute-force oracles: divisor functions, cube pairs, the divisor-sum /
//! expectation-product identity, coefficient self-convolutions, and the
//! prime-tuple bound with both exponent readings.
//!
//! ```bash
//! cargo run --release --example divisor_oracles
//! ```

use num_complex::Complex64;

use cubic_lab::oracles::{
    d_k, g_coefficients, is_cube_pair, prime_tuple_cube_sum, rough_cube_divisor_sum,
    smooth_cube_divisor_sum, x_pair_expectation_counts,
};
use cubic_lab::random_model::x_moment_vs_divisor_sum;

fn main() {
    println!(
        "divisor functions: d_2(6) = {}, d_3(4) = {}, d_4(360) = {}",
        d_k(6, 2),
        d_k(4, 3),
        d_k(360, 4)
    );
    println!();

    println!("cube pairs (n m^2 a perfect cube):");
    for (n, m) in [(2u64, 2u64), (2, 3), (4, 1), (3, 9)] {
        println!("  ({n}, {m}): {}", is_cube_pair(n, m));
    }
    let (c0, c1, c2, total) = x_pair_expectation_counts(12, 18);
    println!(
        "  exhaustive atom average at (12, 18): counts ({c0}, {c1}, {c2}) of {total} -> E = {}",
        if c0 == total {
            "1"
        } else if c0 == c1 && c1 == c2 {
            "0"
        } else {
            "?"
        }
    );
    println!();

    println!("divisor-sum side vs per-prime expectation product (s = 1):");
    for (k, p) in [(1u32, 3u64), (2, 5), (2, 7)] {
        let c = x_moment_vs_divisor_sum(k, 1.0, 10u128.pow(24), p).unwrap();
        println!(
            "  k = {k}, P-smooth = {p}: {:.12} vs {:.12} (rel {:.1e}, tail bound {:.1e})",
            c.divisor_sum_side, c.product_side, c.rel_diff, c.tail_bound
        );
    }
    println!();

    println!("rough cube-pair divisor sums (truncated at N = 10^5):");
    for (k, y) in [(2u32, 11.0f64), (2, 31.0), (3, 11.0), (3, 31.0)] {
        let v = rough_cube_divisor_sum(k, y, 100_000);
        let constant = v.powf(1.0 / k as f64) * y * y.ln() / k as f64;
        println!("  k = {k}, y = {y:>4}: sum = {v:.3e}, effective constant = {constant:.2}");
    }
    let (smooth, _) = smooth_cube_divisor_sum(8, 1.0 / 8f64.ln(), 10_000).unwrap();
    println!("  smooth-complete value at k = 8 (eta = 1/log k): {smooth:.4e}");
    println!();

    println!("coefficient self-convolution g on [2, 3], k = 2, alpha = 0:");
    let one = |_n: u64| Complex64::new(1.0, 0.0);
    let g = g_coefficients(2, 3, 2, 0.0, &one).unwrap();
    for (&n, v) in &g.values {
        println!("  g({n}) = {:.1}  (d_2({n}) = {})", v.re, d_k(n, 2));
    }
    println!();

    println!("prime-tuple cube sums over (y, P] with both bound exponents:");
    for (ell, y, p) in [(1u32, 5.0f64, 50u64), (1, 11.0, 100), (2, 5.0, 30)] {
        let rep = prime_tuple_cube_sum(ell, y, p).unwrap();
        println!(
            "  l = {ell}, y = {y}, P = {p}: value = {:.4e}, bracket = {:.4e}",
            rep.value, rep.bracket
        );
        println!(
            "      bound with exponent l   = {:.4e}  (holds: {})",
            rep.bound_exponent_ell, rep.within_ell
        );
        println!(
            "      bound with exponent 2l  = {:.4e}  (holds: {})",
            rep.bound_exponent_two_ell, rep.within_two_ell
        );
    }
}
