//! Enumerate the primitive cubic family and inspect its structure.
//!
//! ```bash
//! cargo run --release --example enumerate_family
//! ```

use cubic_lab::characters::{cubic_conductors, enumerate_cubic_primitive, gauss_sum};

fn main() {
    let q_max = 500;
    let family = enumerate_cubic_primitive(q_max).expect("enumeration");
    println!(
        "primitive cubic characters with conductor <= {q_max}: {}",
        family.len()
    );
    println!();
    println!(
        "{:>10}  {:>6}  {:>6}  {:>6}  {:>12}",
        "character", "cond", "order", "parity", "|tau|/sqrt q"
    );
    for chi in family.iter().take(16) {
        let tau = gauss_sum(chi).expect("primitive");
        println!(
            "{:>10}  {:>6}  {:>6}  {:>6}  {:>12.9}",
            chi.id(),
            chi.conductor(),
            chi.order(),
            format!("{:?}", chi.parity()),
            tau.norm() / (chi.modulus() as f64).sqrt()
        );
    }
    println!("... ({} more)", family.len().saturating_sub(16));
    println!();

    // conductors are squarefree products of primes = 1 (mod 3)
    let conductors = cubic_conductors(q_max);
    println!(
        "admissible conductors up to {q_max} ({} total):",
        conductors.len()
    );
    println!("{:?}", &conductors[..conductors.len().min(20)]);
    println!();

    // family size by conductor count: 2^omega(q) characters per conductor
    let per_conductor: Vec<usize> = conductors
        .iter()
        .map(|&q| family.iter().filter(|c| c.modulus() == q).count())
        .collect();
    let pairs = per_conductor.iter().filter(|&&c| c == 2).count();
    let quads = per_conductor.iter().filter(|&&c| c == 4).count();
    println!("conductors carrying 2 characters (primes): {pairs}");
    println!("conductors carrying 4 characters (two prime factors): {quads}");
}
