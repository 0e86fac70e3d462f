//! Truncated Fourier expansion of character partial sums: convention
//! calibration and the residual's decay in the truncation length.
//!
//! ```bash
//! cargo run --release --example polya_expansion
//! ```

use num_complex::Complex64;

use cubic_lab::characters::enumerate_cubic_primitive;
use cubic_lab::charsum::{
    polya_calibration, polya_truncated, polya_truncated_with, PolyaConvention,
};

fn main() {
    let cal = polya_calibration();
    println!("convention calibration (cubic characters mod 7 and 13, Z = q^2):");
    println!(
        "  conjugated-inside residual: {:.6}",
        cal.max_residual_conjugated
    );
    println!(
        "  direct-inside residual:     {:.6}",
        cal.max_residual_direct
    );
    println!("  chosen: {:?}", cal.chosen);
    println!();

    let chi = enumerate_cubic_primitive(31)
        .expect("enumeration")
        .into_iter()
        .find(|c| c.modulus() == 31)
        .unwrap();
    let q = chi.modulus();
    println!(
        "character {}: residuals |direct - expansion| on a t-grid",
        chi.id()
    );
    println!(
        "{:>8}  {:>12}  {:>12}  {:>12}",
        "t", "Z=q", "Z=q^2", "Z=q^3"
    );
    for j in [7u64, 15, 23, 31, 39, 47, 55, 63] {
        let t = j as f64 * q as f64 / 64.0;
        let direct: Complex64 = (1..=(t.floor() as u64)).map(|n| chi.eval_complex(n)).sum();
        let r1 = (direct - polya_truncated(&chi, t, q).unwrap()).norm();
        let r2 = (direct - polya_truncated(&chi, t, q * q).unwrap()).norm();
        let r3 = (direct - polya_truncated(&chi, t, q * q * q).unwrap()).norm();
        println!("{t:>8.2}  {r1:>12.6}  {r2:>12.6}  {r3:>12.6}");
    }
    println!();

    // what happens with the wrong convention
    let t = 11.0 * q as f64 / 64.0;
    let direct: Complex64 = (1..=(t.floor() as u64)).map(|n| chi.eval_complex(n)).sum();
    let good = polya_truncated_with(&chi, t, q * q, cal.chosen).unwrap();
    let other = match cal.chosen {
        PolyaConvention::Conjugated => PolyaConvention::Direct,
        PolyaConvention::Direct => PolyaConvention::Conjugated,
    };
    let bad = polya_truncated_with(&chi, t, q * q, other).unwrap();
    println!("at t = {t:.2}: direct sum = {direct:.4}");
    println!(
        "  calibrated convention: {good:.4}  (residual {:.4})",
        (direct - good).norm()
    );
    println!(
        "  other convention:      {bad:.4}  (residual {:.4})",
        (direct - bad).norm()
    );
}
