//! Exact character-sum maxima: M(chi), the attaining point, and the running
//! maximum trajectory.
//!
//! ```bash
//! cargo run --release --example charsum_profile
//! ```

use cubic_lab::characters::enumerate_cubic_primitive;
use cubic_lab::charsum::msum_exact;

fn main() {
    let family = enumerate_cubic_primitive(2000).expect("enumeration");
    println!("family size up to 2000: {}", family.len());

    // the largest and smallest maxima in the family
    let mut profiles: Vec<_> = family.iter().map(|c| msum_exact(c).unwrap()).collect();
    profiles.sort_by(|a, b| b.m.partial_cmp(&a.m).unwrap());

    println!();
    println!("five largest maxima:");
    println!(
        "{:>12}  {:>8}  {:>10}  {:>8}  {:>8}",
        "character", "q", "M", "N_max", "alpha"
    );
    for p in profiles.iter().take(5) {
        println!(
            "{:>12}  {:>8}  {:>10.6}  {:>8}  {:>8.5}",
            p.id, p.conductor, p.m, p.n_max, p.alpha
        );
    }
    println!();
    println!("five smallest maxima:");
    for p in profiles.iter().rev().take(5) {
        println!(
            "{:>12}  {:>8}  {:>10.6}  {:>8}  {:>8.5}",
            p.id, p.conductor, p.m, p.n_max, p.alpha
        );
    }

    // conjugate characters attain the same maximum (the attaining point may
    // differ when several points tie)
    let chi = &family[0];
    let bar = chi.conjugate();
    let (a, b) = (msum_exact(chi).unwrap(), msum_exact(&bar).unwrap());
    println!();
    println!(
        "conjugate pair {} / {}: M = {:.12} / {:.12}",
        a.id, b.id, a.m, b.m
    );

    // running-maximum trajectory of the family champion
    let champ = &profiles[0];
    println!();
    println!("running maximum of {} (sampled):", champ.id);
    for (t, m) in champ.trajectory.iter().step_by(8) {
        let bar_len = (m * 40.0) as usize;
        println!("  t = {t:>6}  {:<42} {m:.4}", "#".repeat(bar_len));
    }
}
