//! Character-sum machinery: the exact maximum `M(chi)`, truncated Fourier
//! expansions of partial sums, grid-maximized exponential sums via a single
//! DFT, and twisted rough tails.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rustfft::FftPlanner;
use std::cell::RefCell;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::characters::{gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::ExactRootSum;
use crate::sieve::Sieve;

pub use crate::sieve::Sieve as SmoothnessSieve;

/// Completely multiplicative unimodular twist, evaluated at positive integers.
pub type HFn = dyn Fn(u64) -> Complex64 + Sync;

/// Exact profile of the running character-sum maximum for one character.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CharSumProfile {
    pub id: String,
    pub conductor: u64,
    /// `M(chi)`: max of |partial sums| / sqrt(q).
    pub m: f64,
    /// Smallest point attaining the maximum.
    pub n_max: u64,
    /// `n_max / q`.
    pub alpha: f64,
    /// Sampled running maxima `(t, runmax/sqrt(q))`, ~64 checkpoints.
    pub trajectory: Vec<(u64, f64)>,
}

/// Single O(q) pass over the running partial sums; ties broken by smallest
/// attaining point.
pub fn msum_exact(chi: &DirichletCharacter) -> Result<CharSumProfile> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter { op: "msum_exact" });
    }
    let q = chi.modulus();
    let values = chi.complex_table();
    let sqrt_q = (q as f64).sqrt();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut best = f64::NEG_INFINITY;
    let mut best_at = 1u64;
    let step = (q / 64).max(1);
    let mut trajectory = Vec::with_capacity(64);
    for t in 1..=q {
        sum += values[(t % q) as usize];
        let norm = sum.norm_sqr();
        if norm > best {
            best = norm;
            best_at = t;
        }
        if t % step == 0 || t == q {
            trajectory.push((t, best.sqrt() / sqrt_q));
        }
    }
    let m = best.sqrt() / sqrt_q;
    Ok(CharSumProfile {
        id: chi.id(),
        conductor: chi.modulus(),
        m,
        n_max: best_at,
        alpha: best_at as f64 / q as f64,
        trajectory,
    })
}

/// Which character the truncated Fourier expansion of partial sums carries
/// inside the harmonic sum. The two conventions circulate in the literature;
/// [`polya_calibration`] selects the one that actually reproduces partial sums
/// and every default path uses that choice.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum PolyaConvention {
    /// `conj(chi)(n)` inside the sum.
    Conjugated,
    /// `chi(n)` inside the sum.
    Direct,
}

/// Truncated Fourier expansion of `sum_{n<=t} chi(n)` with an explicit
/// convention:
///
/// `tau(chi)/(2 pi i) * sum_{1<=|n|<=Z} c(n)/n * (1 - e(-n t / q))`.
pub fn polya_truncated_with(
    chi: &DirichletCharacter,
    t: f64,
    z: u64,
    convention: PolyaConvention,
) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            op: "polya_truncated",
            conductor: chi.conductor(),
            modulus: chi.modulus(),
        });
    }
    if z == 0 {
        return Err(Error::Domain("truncation Z must be >= 1".into()));
    }
    let q = chi.modulus();
    if !(t > 0.0 && t <= q as f64) {
        return Err(Error::Domain(format!("t = {t} outside (0, q]")));
    }
    let tau = gauss_sum(chi)?;
    let mut table = chi.complex_table();
    if convention == PolyaConvention::Conjugated {
        for v in &mut table {
            *v = v.conj();
        }
    }
    let even = chi.is_even();

    // w = e(-t/q); u tracks w^n by rotation (drift is ~ sqrt(Z) eps, harmless)
    let theta = -TAU * t / q as f64;
    let w = Complex64::new(theta.cos(), theta.sin());
    let mut u = w;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=z {
        let v = table[(n % q) as usize];
        if v.re != 0.0 || v.im != 0.0 {
            // (1 - u) - chi(-1) (1 - conj u), which collapses to a single
            // real or imaginary factor depending on parity
            let factor = if even {
                Complex64::new(0.0, -2.0 * u.im)
            } else {
                Complex64::new(2.0 - 2.0 * u.re, 0.0)
            };
            acc += v * factor * (1.0 / n as f64);
        }
        u *= w;
    }
    // tau / (2 pi i) * acc
    let denom = Complex64::new(0.0, 2.0 * PI);
    Ok(tau / denom * acc)
}

/// Result of the one-time numeric convention calibration.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Calibration {
    pub chosen: PolyaConvention,
    pub max_residual_conjugated: f64,
    pub max_residual_direct: f64,
}

static CALIBRATION: OnceLock<Calibration> = OnceLock::new();

/// Compares both conventions against direct partial sums on the cubic
/// characters mod 7 and 13 and fixes the one with the smaller residual.
pub fn polya_calibration() -> &'static Calibration {
    CALIBRATION.get_or_init(|| {
        let mut worst = [0.0f64; 2];
        for q in [7u64, 13] {
            let fam =
                crate::characters::enumerate_cubic_primitive(q).expect("small family enumerates");
            for chi in fam.iter().filter(|c| c.modulus() == q) {
                let z = q * q;
                let values = chi.complex_table();
                for j in 1..=16u64 {
                    let t = j as f64 * q as f64 / 16.0;
                    let direct: Complex64 = (1..=(t.floor() as u64))
                        .map(|n| values[(n % q) as usize])
                        .sum();
                    for (slot, conv) in [
                        (0, PolyaConvention::Conjugated),
                        (1, PolyaConvention::Direct),
                    ] {
                        let approx = polya_truncated_with(chi, t, z, conv)
                            .expect("primitive cubic character");
                        let r = (direct - approx).norm();
                        if r > worst[slot] {
                            worst[slot] = r;
                        }
                    }
                }
            }
        }
        let chosen = if worst[0] <= worst[1] {
            PolyaConvention::Conjugated
        } else {
            PolyaConvention::Direct
        };
        Calibration {
            chosen,
            max_residual_conjugated: worst[0],
            max_residual_direct: worst[1],
        }
    })
}

/// Truncated Fourier expansion of `sum_{n<=t} chi(n)` in the calibrated
/// convention.
pub fn polya_truncated(chi: &DirichletCharacter, t: f64, z: u64) -> Result<Complex64> {
    polya_truncated_with(chi, t, z, polya_calibration().chosen)
}

/// Coefficient selection for grid maxima: restrict by largest prime factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Weight {
    /// `P+(n) <= y` (n = 1 included).
    Smooth,
    /// `P+(n) > y`.
    Rough,
    All,
}

/// Whether the harmonic sum runs over `1 <= |n| <= Z` or only positive `n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Side {
    Symmetric,
    PositiveOnly,
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct GridMax {
    pub value: f64,
    /// Attaining grid point `argmax_num / grid`.
    pub argmax_num: u64,
    pub grid: u64,
    /// True when `R < 2Z`, i.e. coefficients wrapped onto each other.
    pub aliased: bool,
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn weight_keeps(weight: Weight, sieve: Option<&Sieve>, n: u64, y: f64) -> bool {
    match weight {
        Weight::All => true,
        Weight::Smooth => sieve.unwrap().largest_prime_factor(n) as f64 <= y,
        Weight::Rough => sieve.unwrap().largest_prime_factor(n) as f64 > y,
    }
}

/// Builds the length-R coefficient array for
/// `sum chi(n) h(n) e(n alpha) / n^(1+it)` (negative `n`, when included, use
/// `|n|^(-it)` and `h(|n|)`) and returns the grid maximum over
/// `alpha in {b/R}` via one DFT.
#[allow(clippy::too_many_arguments)]
pub fn grid_max_with(
    chi: &DirichletCharacter,
    z: u64,
    r: u64,
    weight: Weight,
    y: f64,
    t_twist: f64,
    side: Side,
    h: Option<&HFn>,
) -> Result<GridMax> {
    if r < 8 {
        return Err(Error::InvalidGrid(r));
    }
    if z == 0 {
        return Err(Error::Domain("truncation Z must be >= 1".into()));
    }
    let sieve = match weight {
        Weight::All => None,
        _ => Some(Sieve::new(z as usize)),
    };
    let q = chi.modulus();
    let table = chi.complex_table();
    let minus_one = chi.eval_i64(-1).to_complex();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); r as usize];
    for n in 1..=z {
        if !weight_keeps(weight, sieve.as_ref(), n, y) {
            continue;
        }
        let v = table[(n % q.max(1)) as usize];
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        let hv = match h {
            Some(f) => f(n),
            None => Complex64::new(1.0, 0.0),
        };
        let twist = if t_twist != 0.0 {
            let phi = -t_twist * (n as f64).ln();
            Complex64::new(phi.cos(), phi.sin())
        } else {
            Complex64::new(1.0, 0.0)
        };
        let c = v * hv * twist / n as f64;
        let j = (n % r) as usize;
        coeffs[j] += c;
        if side == Side::Symmetric {
            // chi(-n) / (-n) = -chi(-1) chi(n) / n, folded to index R - (n mod R)
            let jm = ((r - n % r) % r) as usize;
            coeffs[jm] -= minus_one * c;
        }
    }
    let (value, argmax_num) = dft_max(coeffs);
    Ok(GridMax {
        value,
        argmax_num,
        grid: r,
        aliased: r < 2 * z,
    })
}

/// Spec surface: grid maximum of the weighted harmonic sum over `{b/R}`.
pub fn grid_max(
    chi: &DirichletCharacter,
    z: u64,
    r: u64,
    weight: Weight,
    y: f64,
    t_twist: f64,
    side: Side,
) -> Result<GridMax> {
    grid_max_with(chi, z, r, weight, y, t_twist, side, None)
}

/// Evaluates `X[b] = sum_j c_j e(j b / R)` for all b and returns the maximum
/// modulus with the smallest attaining index.
fn dft_max(mut coeffs: Vec<Complex64>) -> (f64, u64) {
    let len = coeffs.len();
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_inverse(len);
        fft.process(&mut coeffs);
    });
    let mut best = f64::NEG_INFINITY;
    let mut best_at = 0u64;
    for (b, x) in coeffs.iter().enumerate() {
        let norm = x.norm_sqr();
        if norm > best {
            best = norm;
            best_at = b as u64;
        }
    }
    (best.sqrt(), best_at)
}

/// The twisted rough sum `sum_{1<n<=z, P-(n)>y} chi(n) h(n) e(n alpha) / n^(1+it)`
/// at a given point `(t, alpha)`; `h = 1` when not supplied.
pub fn rough_tail(chi: &DirichletCharacter, y: f64, z: f64, t: f64, alpha: f64) -> Complex64 {
    rough_tail_with(chi, y, z, t, alpha, None)
}

pub fn rough_tail_with(
    chi: &DirichletCharacter,
    y: f64,
    z: f64,
    t: f64,
    alpha: f64,
    h: Option<&HFn>,
) -> Complex64 {
    let zi = z.floor() as u64;
    if zi < 2 || y >= z {
        return Complex64::new(0.0, 0.0);
    }
    let sieve = Sieve::new(zi as usize);
    let q = chi.modulus();
    let table = chi.complex_table();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 2..=zi {
        if (sieve.smallest_prime_factor(n) as f64) <= y {
            continue;
        }
        let v = table[(n % q.max(1)) as usize];
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        let hv = match h {
            Some(f) => f(n),
            None => Complex64::new(1.0, 0.0),
        };
        let phase = TAU * (n as f64 * alpha).fract() - t * (n as f64).ln();
        let e = Complex64::new(phase.cos(), phase.sin());
        acc += v * hv * e / n as f64;
    }
    acc
}

/// The symmetric harmonic sum `sum_{1<=|n|<=Z} chi(n)/n` carried exactly:
/// per-angle rational coefficients, with the `n`/`-n` pair reduced together so
/// even characters cancel term by term. The sum is exactly zero iff the
/// returned accumulator says so.
pub fn symmetric_harmonic_sum(chi: &DirichletCharacter, z: u64) -> ExactRootSum {
    let mut s = ExactRootSum::new();
    for n in 1..=z {
        let vp = chi.eval(n);
        let vm = chi.eval_i64(-(n as i64));
        if vp.angle() == vm.angle() {
            // chi(n)/n + chi(-n)/(-n) = 0 exactly
            continue;
        }
        if let Some((a, d)) = vp.angle() {
            s.add(a, d, BigRational::new(BigInt::from(1), BigInt::from(n)));
        }
        if let Some((a, d)) = vm.angle() {
            s.add(a, d, BigRational::new(BigInt::from(-1), BigInt::from(n)));
        }
    }
    s
}
