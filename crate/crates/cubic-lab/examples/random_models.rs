//! The two random completely multiplicative models: sampling, Euler products
//! at s = 1, Monte Carlo vs exact moments, and the moment growth shape.
//!
//! ```bash
//! cargo run --release --example random_models
//! ```

use cubic_lab::characters::{all_characters, ResidueGroup};
use cubic_lab::random_model::{
    atom_distribution, euler_product_at_one, exact_moment, mc_moment, sample, ModelKind,
    RandomMultSpec,
};
use cubic_lab::{Parity, BETA};

fn main() {
    // atom distributions at a split prime
    println!("atom probabilities at p = 7:");
    for kind in [ModelKind::X, ModelKind::Y] {
        let atoms = atom_distribution(kind, 7);
        let txt: Vec<String> = atoms
            .iter()
            .map(|(a, n, d)| format!("{a:?}: {n}/{d}"))
            .collect();
        println!("  {kind:?}: {}", txt.join(", "));
    }
    println!();

    let g3 = ResidueGroup::new(3).unwrap();
    let psi = all_characters(&g3)
        .into_iter()
        .find(|c| c.is_primitive() && c.parity() == Parity::Odd)
        .unwrap();

    // a few seeded Euler products
    let spec = RandomMultSpec {
        kind: ModelKind::Y,
        prime_cutoff: 10_000,
    };
    println!("seeded Euler products |L(1, Y * conj(psi))| (P = 10^4):");
    for seed in 0..6u64 {
        let s = sample(spec, seed).unwrap();
        let zeros = s
            .values()
            .iter()
            .filter(|(_, a)| matches!(a, cubic_lab::random_model::Atom::Zero))
            .count();
        let l = euler_product_at_one(&s, &psi);
        println!(
            "  seed {seed}: |L| = {:.6}  (zero atoms: {zeros})",
            l.norm()
        );
    }
    println!();

    // Monte Carlo vs the exact per-prime expectation product; the sampling
    // distribution of the mean is right-skewed (rare large |L|^2 draws), so
    // single runs typically land slightly below the exact value
    let exact = exact_moment(spec, &psi, 1, 10_000).unwrap();
    let mc = mc_moment(spec, &psi, 1.0, 10_000, 20_240_817).unwrap();
    println!("second moment, P = 10^4:");
    println!("  exact product: {:.6}", exact.estimate);
    println!(
        "  monte carlo:   {:.6} +- {:.6}  ({} replicates, {:+.2} sigma)",
        mc.estimate,
        mc.stderr,
        mc.replicates,
        (mc.estimate - exact.estimate) / mc.stderr
    );
    println!();

    // growth of log-moments against the leading shape 2 r beta log log r
    let big = RandomMultSpec {
        kind: ModelKind::Y,
        prime_cutoff: 1_000_000,
    };
    println!("log E|L|^{{2r}} vs 2 r beta log log r (P = 10^6):");
    println!(
        "{:>4}  {:>14}  {:>14}  {:>8}",
        "r", "log moment", "leading term", "ratio"
    );
    for r in [2u32, 4, 8, 16] {
        let m = exact_moment(big, &psi, r, 1_000_000).unwrap();
        let leading = 2.0 * r as f64 * BETA * (r as f64).ln().ln();
        println!(
            "{r:>4}  {:>14.4}  {:>14.4}  {:>8.3}",
            m.log_estimate,
            leading,
            m.log_estimate / leading
        );
    }
}
