//! Random completely multiplicative models on primes with values in the cube
//! roots of unity (plus a per-prime zero atom in the conductor-weighted
//! variant), their Euler products at `s = 1`, and moments both by Monte Carlo
//! and by exact per-prime expectation products.
//!
//! Sampling is integer-based against exact atom probabilities and uses one
//! independent ChaCha stream per replicate, so results are bitwise
//! reproducible under any parallel schedule.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::sieve::Sieve;

/// Which per-prime distribution the model uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum ModelKind {
    /// Uniform on the three cube roots of unity at every prime.
    X,
    /// Uniform on the cube roots at `p = 3` and `p = 2 (mod 3)`; at
    /// `p = 1 (mod 3)` a zero atom of mass `2/(p+2)` and mass `p/(3(p+2))`
    /// on each cube root.
    Y,
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct RandomMultSpec {
    pub kind: ModelKind,
    pub prime_cutoff: u64,
}

/// A sampled value at one prime: zero or the cube root `e(j/3)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Atom {
    Zero,
    Root(u8),
}

impl Atom {
    pub fn to_complex(self) -> Complex64 {
        match self {
            Atom::Zero => Complex64::new(0.0, 0.0),
            Atom::Root(j) => {
                let theta = TAU * j as f64 / 3.0;
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }
}

/// Exact atom probabilities `(atom, numerator, denominator)` at a prime.
pub fn atom_distribution(kind: ModelKind, p: u64) -> Vec<(Atom, u64, u64)> {
    match kind {
        ModelKind::X => (0..3).map(|j| (Atom::Root(j), 1, 3)).collect(),
        ModelKind::Y => {
            if p == 3 || p % 3 == 2 {
                (0..3).map(|j| (Atom::Root(j), 1, 3)).collect()
            } else {
                let den = 3 * (p + 2);
                let mut v = vec![(Atom::Zero, 6, den)];
                v.extend((0..3).map(|j| (Atom::Root(j), p, den)));
                v
            }
        }
    }
}

/// One seeded realization of the model on primes `p <= prime_cutoff`.
#[derive(Clone, Debug)]
pub struct RandomMultSample {
    pub spec: RandomMultSpec,
    pub seed: u64,
    pub stream: u64,
    values: Vec<(u64, Atom)>,
}

impl RandomMultSample {
    pub fn values(&self) -> &[(u64, Atom)] {
        &self.values
    }
}

/// Deterministic sample from `(spec, seed)`; draws use exact integer ranges,
/// so every atom carries exactly its rational probability.
pub fn sample(spec: RandomMultSpec, seed: u64) -> Result<RandomMultSample> {
    sample_stream(spec, seed, 0)
}

/// Same, on an explicit ChaCha stream (replicate index).
pub fn sample_stream(spec: RandomMultSpec, seed: u64, stream: u64) -> Result<RandomMultSample> {
    if spec.prime_cutoff < 2 {
        return Err(Error::Domain("prime cutoff must be >= 2".into()));
    }
    let sieve = Sieve::new(spec.prime_cutoff as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let values = sieve
        .primes()
        .iter()
        .map(|&p| (p, draw_atom(&mut rng, spec.kind, p)))
        .collect();
    Ok(RandomMultSample {
        spec,
        seed,
        stream,
        values,
    })
}

/// One draw against the exact atom probabilities (integer ranges, no float
/// sampling bias).
fn draw_atom(rng: &mut ChaCha8Rng, kind: ModelKind, p: u64) -> Atom {
    match kind {
        ModelKind::X => Atom::Root(rng.gen_range(0..3u8)),
        ModelKind::Y => {
            if p == 3 || p % 3 == 2 {
                Atom::Root(rng.gen_range(0..3u8))
            } else {
                // zero with 6/(3(p+2)), each root with p/(3(p+2))
                let r = rng.gen_range(0..3 * (p + 2));
                if r < 6 {
                    Atom::Zero
                } else {
                    Atom::Root(((r - 6) / p) as u8)
                }
            }
        }
    }
}

/// Finite Euler product `prod_{p <= P} (1 - v_p conj(psi(p)) / p)^{-1}` of one
/// sample against a character twist. The almost-surely-convergent tail past
/// `P` is not included; compare only equal-truncation quantities.
pub fn euler_product_at_one(sample: &RandomMultSample, psi: &DirichletCharacter) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &(p, atom) in &sample.values {
        let v = atom.to_complex() * psi.eval_complex(p).conj();
        let factor = Complex64::new(1.0, 0.0) - v / p as f64;
        debug_assert!(
            factor.norm() > 0.0,
            "|1 - v/p| = 0 is impossible for |v| <= 1 < p"
        );
        acc /= factor;
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum MomentMethod {
    MonteCarlo,
    ExactProduct,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct MomentEstimate {
    pub target: String,
    pub estimate: f64,
    /// `ln` of the estimate; the robust field when the moment overflows.
    pub log_estimate: f64,
    pub stderr: f64,
    pub replicates: u64,
    pub method: MomentMethod,
}

/// Pairwise (fixed-order) summation; reduction order is independent of the
/// parallel schedule that produced the values.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => {
            let half = n / 2;
            pairwise_sum(&xs[..half]) + pairwise_sum(&xs[half..])
        }
    }
}

/// Monte Carlo estimate of `E |L(1, model * conj(psi))|^{2r}` from
/// `replicates` independent samples; each replicate runs on its own stream
/// derived from `(seed, replicate index)`.
pub fn mc_moment(
    spec: RandomMultSpec,
    psi: &DirichletCharacter,
    r: f64,
    replicates: u64,
    seed: u64,
) -> Result<MomentEstimate> {
    if replicates < 100 {
        return Err(Error::Domain("need at least 100 replicates".into()));
    }
    if r < 0.0 {
        return Err(Error::Domain("moment exponent r must be >= 0".into()));
    }
    let target = format!("E|L(1, {:?} * conj({}))|^{}", spec.kind, psi.id(), 2.0 * r);
    if r == 0.0 {
        return Ok(MomentEstimate {
            target,
            estimate: 1.0,
            log_estimate: 0.0,
            stderr: 0.0,
            replicates,
            method: MomentMethod::MonteCarlo,
        });
    }
    // one sieve and one pass of twist values for the whole run; each
    // replicate draws exactly as sample_stream would on its own stream
    let sieve = Sieve::new(spec.prime_cutoff.max(2) as usize);
    let primes: Vec<u64> = sieve.primes().to_vec();
    let twists: Vec<Complex64> = primes.iter().map(|&p| psi.eval_complex(p).conj()).collect();
    let vals: Vec<f64> = (0..replicates)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            for (&p, &tw) in primes.iter().zip(&twists) {
                let atom = draw_atom(&mut rng, spec.kind, p);
                let factor = Complex64::new(1.0, 0.0) - atom.to_complex() * tw / p as f64;
                acc /= factor;
            }
            acc.norm_sqr().powf(r)
        })
        .collect();
    let n = replicates as f64;
    let mean = pairwise_sum(&vals) / n;
    let sq: Vec<f64> = vals.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = pairwise_sum(&sq) / (n - 1.0);
    let stderr = (var / n).sqrt();
    Ok(MomentEstimate {
        target,
        estimate: mean,
        log_estimate: mean.ln(),
        stderr,
        replicates,
        method: MomentMethod::MonteCarlo,
    })
}

/// Exact moment `prod_{p<=P} E |1 - v conj(psi(p))/p|^{-2r}` by averaging over
/// the finite atom set at every prime. No sampling error.
pub fn exact_moment(
    spec: RandomMultSpec,
    psi: &DirichletCharacter,
    r: u32,
    prime_cutoff: u64,
) -> Result<MomentEstimate> {
    if r < 1 {
        return Err(Error::Domain("exact_moment needs integer r >= 1".into()));
    }
    let sieve = Sieve::new(prime_cutoff.max(2) as usize);
    let mut log_sum = 0.0f64;
    for &p in sieve.primes() {
        log_sum += exact_prime_factor(spec.kind, psi, p, r).ln();
    }
    Ok(MomentEstimate {
        target: format!("E|L(1, {:?} * conj({}))|^{}", spec.kind, psi.id(), 2 * r),
        estimate: log_sum.exp(),
        log_estimate: log_sum,
        stderr: 0.0,
        replicates: 0,
        method: MomentMethod::ExactProduct,
    })
}

/// `E |1 - v conj(psi(p)) / p|^{-2r}` over the exact atoms at `p`.
pub fn exact_prime_factor(kind: ModelKind, psi: &DirichletCharacter, p: u64, r: u32) -> f64 {
    let tw = psi.eval_complex(p).conj();
    let mut acc = 0.0f64;
    for (atom, num, den) in atom_distribution(kind, p) {
        let w = Complex64::new(1.0, 0.0) - atom.to_complex() * tw / p as f64;
        acc += (num as f64 / den as f64) * w.norm_sqr().powi(-(r as i32));
    }
    acc
}

/// Two-sided check of the divisor-sum / expectation-product identity at
/// `s`, both sides restricted to `P`-smooth integers.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DivisorMomentComparison {
    pub k: u32,
    pub s: f64,
    pub smooth_bound: u64,
    pub truncation: f64,
    pub divisor_sum_side: f64,
    pub product_side: f64,
    pub rel_diff: f64,
    /// Rankin-style bound on what the truncation can have cost the divisor
    /// side.
    pub tail_bound: f64,
}

/// Left side: `sum d_k(n) d_k(m) / (nm)^s` over `P`-smooth pairs with
/// `n m^2` a cube, truncated at `n, m <= N`. Right side: the per-prime
/// three-atom expectation product. The cube condition is equivalent to
/// componentwise-equal exponents mod 3, so the double sum is grouped by
/// exponent signature; this is an exact reorganization, not an approximation.
pub fn x_moment_vs_divisor_sum(
    k: u32,
    s: f64,
    n_trunc: u128,
    p_smooth: u64,
) -> Result<DivisorMomentComparison> {
    if s.is_nan() || s <= 0.5 {
        return Err(Error::Domain(format!(
            "s = {s} <= 1/2: the untruncated product diverges"
        )));
    }
    if s > 1.0 {
        return Err(Error::Domain("s must lie in (1/2, 1]".into()));
    }
    if k == 0 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    let sieve = Sieve::new(p_smooth.max(2) as usize);
    let primes: Vec<u64> = sieve.primes_up_to(p_smooth as f64).to_vec();
    if primes.is_empty() {
        return Err(Error::Domain("no primes below the smoothness bound".into()));
    }

    // product side
    let mut product_side = 1.0f64;
    for &p in &primes {
        let mut acc = 0.0;
        for j in 0..3u8 {
            let theta = TAU * j as f64 / 3.0;
            let w = Complex64::new(1.0, 0.0)
                - Complex64::new(theta.cos(), theta.sin()) / (p as f64).powf(s);
            acc += w.norm_sqr().powi(-(k as i32)) / 3.0;
        }
        product_side *= acc;
    }

    // divisor-sum side, grouped by exponent signature mod 3
    let sig_count = 3usize.pow(primes.len() as u32);
    let mut buckets = vec![0.0f64; sig_count];
    let mut exps = vec![0u32; primes.len()];
    smooth_dfs(&primes, n_trunc, 0, 1u128, &mut exps, &mut |n, exps| {
        let mut sig = 0usize;
        let mut dk = 1.0f64;
        for &e in exps.iter() {
            sig = sig * 3 + (e % 3) as usize;
            dk *= binomial_f64(e + k - 1, k - 1);
        }
        buckets[sig] += dk / (n as f64).powf(s);
    });
    let divisor_sum_side: f64 = buckets.iter().map(|a| a * a).sum();

    // Rankin bound on the truncated part: terms with n > N (or m > N)
    // contribute at most 2 * tail * full + tail^2
    let mut tail_bound = f64::INFINITY;
    for u in [0.2f64, 0.35, 0.5, 0.7] {
        if s - u <= 0.0 {
            continue;
        }
        let mut full = 1.0f64;
        let mut shifted = 1.0f64;
        for &p in &primes {
            full *= (1.0 - (p as f64).powf(-s)).powi(-(k as i32));
            shifted *= (1.0 - (p as f64).powf(-(s - u))).powi(-(k as i32));
        }
        let tail = (n_trunc as f64).powf(-u) * shifted;
        tail_bound = tail_bound.min(2.0 * tail * full + tail * tail);
    }

    let rel_diff = (divisor_sum_side - product_side).abs() / product_side.abs();
    Ok(DivisorMomentComparison {
        k,
        s,
        smooth_bound: p_smooth,
        truncation: n_trunc as f64,
        divisor_sum_side,
        product_side,
        rel_diff,
        tail_bound,
    })
}

/// Enumerates `P`-smooth integers `<= bound` with their exponent vectors.
fn smooth_dfs(
    primes: &[u64],
    bound: u128,
    idx: usize,
    acc: u128,
    exps: &mut Vec<u32>,
    f: &mut impl FnMut(u128, &[u32]),
) {
    if idx == primes.len() {
        f(acc, exps);
        return;
    }
    let p = primes[idx] as u128;
    let mut cur = acc;
    let mut e = 0u32;
    loop {
        exps[idx] = e;
        smooth_dfs(primes, bound, idx + 1, cur, exps, f);
        if cur > bound / p {
            break;
        }
        cur *= p;
        e += 1;
    }
    exps[idx] = 0;
}

fn binomial_f64(n: u32, k: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (k - i) as f64;
    }
    acc
}
