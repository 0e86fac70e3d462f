//! L-values at `1 + it` by truncated series and smooth Euler products, plus
//! the heuristic screen for moduli with suspicious real characters.
//!
//! ```bash
//! cargo run --release --example lfunction_values
//! ```

use std::f64::consts::PI;

use cubic_lab::characters::{all_characters, enumerate_cubic_primitive, ResidueGroup};
use cubic_lab::lfunctions::{euler_smooth, exceptional_screen, l_one_truncated, CharProduct};

fn main() {
    // classical reference points
    let g3 = ResidueGroup::new(3).unwrap();
    let chi3 = all_characters(&g3)
        .into_iter()
        .find(|c| c.is_primitive())
        .unwrap();
    let l = l_one_truncated(&CharProduct::new(&chi3, None), 0.0, 1_000_000).unwrap();
    println!(
        "L(1, quadratic mod 3)  = {:.8}  (pi/(3 sqrt 3) = {:.8}, est err {:.1e})",
        l.re,
        PI / (3.0 * 3.0_f64.sqrt()),
        l.error_estimate
    );
    let g4 = ResidueGroup::new(4).unwrap();
    let chi4 = all_characters(&g4)
        .into_iter()
        .find(|c| c.is_primitive())
        .unwrap();
    let l = l_one_truncated(&CharProduct::new(&chi4, None), 0.0, 1_000_000).unwrap();
    println!(
        "L(1, quadratic mod 4)  = {:.8}  (pi/4         = {:.8}, est err {:.1e})",
        l.re,
        PI / 4.0,
        l.error_estimate
    );
    println!();

    // two routes to the same twisted value
    let chi = enumerate_cubic_primitive(7).expect("enumeration").remove(0);
    let prod = CharProduct::new(&chi, Some(&chi3));
    println!("two routes to L(1 + it, cubic mod 7 * conj(quadratic mod 3)):");
    println!(
        "{:>6}  {:>24}  {:>24}",
        "t", "truncated (Z = 1e6)", "euler (y = 1e6)"
    );
    for t in [0.0, 0.3, -0.7] {
        let a = l_one_truncated(&prod, t, 1_000_000).unwrap();
        let b = euler_smooth(&prod, t, 1_000_000.0);
        println!(
            "{t:>6.2}  {:>24}  {:>24}",
            format!("{:.6}", a.value()),
            format!("{:.6}", b.value())
        );
    }
    println!();

    // the heuristic real-zero screen on small moduli
    println!("heuristic screen (sign changes of L(sigma, chi) near sigma = 1):");
    for m in [1u64, 3, 4, 5, 8, 11, 12] {
        let rep = exceptional_screen(m).unwrap();
        println!(
            "  m = {m:>3}: flagged = {:<5} ({} real primitive characters scanned)",
            rep.is_flagged,
            rep.scans.len()
        );
    }
}
