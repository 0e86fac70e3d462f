//! Maximizing exponential sums over a grid with one DFT: reconstruction of
//! M(chi) and the smooth/rough decomposition of the harmonic sum.
//!
//! ```bash
//! cargo run --release --example grid_maximum
//! ```

use std::f64::consts::TAU;

use cubic_lab::characters::enumerate_cubic_primitive;
use cubic_lab::charsum::{grid_max, msum_exact, Side, Weight};

fn main() {
    let family = enumerate_cubic_primitive(100).expect("enumeration");
    println!("reconstructing M(chi) from the grid maximum (Z = q^2, R = 4Z):");
    println!(
        "{:>10}  {:>10}  {:>14}  {:>10}",
        "character", "M exact", "grid/(2 pi)", "deviation"
    );
    for chi in &family {
        let q = chi.modulus();
        let m = msum_exact(chi).unwrap().m;
        let gm = grid_max(
            chi,
            q * q,
            4 * q * q,
            Weight::All,
            0.0,
            0.0,
            Side::Symmetric,
        )
        .unwrap();
        println!(
            "{:>10}  {:>10.6}  {:>14.6}  {:>10.2e}",
            chi.id(),
            m,
            gm.value / TAU,
            (gm.value / TAU - m).abs()
        );
    }
    println!();

    // decompose by largest prime factor: smooth part dominates
    let chi = family.last().unwrap();
    let q = chi.modulus();
    let (z, r) = (q * q, 4 * q * q);
    println!(
        "smooth/rough split for {} at y over a sweep (Z = q^2):",
        chi.id()
    );
    println!(
        "{:>8}  {:>12}  {:>12}  {:>12}",
        "y", "smooth max", "rough max", "all max"
    );
    for y in [3.0, 7.0, 19.0, 53.0, 149.0] {
        let smooth = grid_max(chi, z, r, Weight::Smooth, y, 0.0, Side::Symmetric).unwrap();
        let rough = grid_max(chi, z, r, Weight::Rough, y, 0.0, Side::Symmetric).unwrap();
        let all = grid_max(chi, z, r, Weight::All, y, 0.0, Side::Symmetric).unwrap();
        println!(
            "{y:>8.0}  {:>12.6}  {:>12.6}  {:>12.6}",
            smooth.value, rough.value, all.value
        );
    }
    println!();

    // an archimedean twist shifts mass between grid points but keeps scale
    println!("twisted maxima (rough part, positive n only, y = 7):");
    println!("{:>8}  {:>12}  {:>10}", "t", "max", "argmax b/R");
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let gm = grid_max(chi, z, r, Weight::Rough, 7.0, t, Side::PositiveOnly).unwrap();
        println!(
            "{t:>8.2}  {:>12.6}  {:>10.5}",
            gm.value,
            gm.argmax_num as f64 / gm.grid as f64
        );
    }
}
