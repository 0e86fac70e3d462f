//! Dirichlet L-values at `1 + it` for character products `chi * conj(psi)`,
//! by truncated series with an Abel-summation tail estimate and by finite
//! Euler products over small primes, plus a heuristic screen for moduli whose
//! real characters look like they carry a low-lying real zero.

use num_complex::Complex64;

use crate::characters::{all_characters, DirichletCharacter, ResidueGroup};
use crate::error::{Error, Result};
use crate::sieve::{lcm, Sieve};

/// Default constant in the heuristic zero screen window `[1 - c/log(2m), 1)`.
pub const DEFAULT_EXCEPTIONAL_C: f64 = 0.1;

/// The product `chi * conj(psi)` as a (generally imprimitive) character mod
/// `lcm` of the two moduli. `psi = None` means just `chi`.
pub struct CharProduct {
    chi: DirichletCharacter,
    psi: Option<DirichletCharacter>,
    modulus: u64,
}

impl CharProduct {
    pub fn new(chi: &DirichletCharacter, psi: Option<&DirichletCharacter>) -> Self {
        let modulus = match psi {
            Some(p) => lcm(chi.modulus(), p.modulus()),
            None => chi.modulus(),
        };
        CharProduct {
            chi: chi.clone(),
            psi: psi.cloned(),
            modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn id(&self) -> String {
        match &self.psi {
            Some(p) => format!("{}*conj({})", self.chi.id(), p.id()),
            None => self.chi.id(),
        }
    }

    pub fn eval_complex(&self, n: u64) -> Complex64 {
        let a = self.chi.eval_complex(n);
        match &self.psi {
            Some(p) => a * p.eval_complex(n).conj(),
            None => a,
        }
    }

    /// Exact principality test over one full period.
    pub fn is_principal(&self) -> bool {
        let q = self.modulus;
        for n in 1..=q {
            let v = self.chi.eval(n)
                * match &self.psi {
                    Some(p) => p.eval(n).conj(),
                    None => crate::characters::CharValue::one(),
                };
            if !v.is_zero() && !v.is_one() {
                return false;
            }
        }
        true
    }

    pub fn value_table(&self) -> Vec<Complex64> {
        (0..self.modulus).map(|n| self.eval_complex(n)).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum LMethod {
    TruncatedSum,
    EulerSmooth,
}

/// One evaluated L-value with the method and an error estimate attached.
#[derive(Clone, Debug, serde::Serialize)]
pub struct LValue {
    /// Imaginary part of the evaluation point `s = 1 + it`.
    pub t: f64,
    pub character: String,
    pub re: f64,
    pub im: f64,
    pub method: LMethod,
    /// Z for the truncated sum, y for the Euler product.
    pub truncation: f64,
    pub error_estimate: f64,
}

impl LValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// `sum_{n<=Z} (chi conj(psi))(n) / n^{1+it}` with an Abel-summation tail
/// estimate from the period maximum of the character partial sums.
pub fn l_one_truncated(product: &CharProduct, t: f64, z: u64) -> Result<LValue> {
    if product.is_principal() {
        return Err(Error::PoleAtOne);
    }
    let period = product.modulus();
    if z < period {
        return Err(Error::Domain(format!(
            "truncation Z = {z} below the period {period}"
        )));
    }
    let table = product.value_table();
    let mut acc = Complex64::new(0.0, 0.0);
    if t == 0.0 {
        for n in 1..=z {
            let v = table[(n % period) as usize];
            if v.re != 0.0 || v.im != 0.0 {
                acc += v / n as f64;
            }
        }
    } else {
        for n in 1..=z {
            let v = table[(n % period) as usize];
            if v.re != 0.0 || v.im != 0.0 {
                let w = -t * (n as f64).ln();
                acc += v * Complex64::new(w.cos(), w.sin()) / n as f64;
            }
        }
    }
    // partial sums of a non-principal character are period-bounded; the tail
    // after Z is at most 2 max|A| sqrt(1+t^2) / Z by partial summation
    let mut run = Complex64::new(0.0, 0.0);
    let mut amax = 0.0f64;
    for n in 1..=period {
        run += table[(n % period) as usize];
        amax = amax.max(run.norm());
    }
    let error_estimate = 2.0 * amax * (1.0 + t * t).sqrt() / z as f64;
    Ok(LValue {
        t,
        character: product.id(),
        re: acc.re,
        im: acc.im,
        method: LMethod::TruncatedSum,
        truncation: z as f64,
        error_estimate,
    })
}

/// Finite Euler product `prod_{p<=y} (1 - (chi conj(psi))(p) / p^{1+it})^{-1}`.
///
/// The attached error estimate is a convergence-rate heuristic (size of the
/// last octave's log-contribution), not a bound.
pub fn euler_smooth(product: &CharProduct, t: f64, y: f64) -> LValue {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut last_octave = 0.0f64;
    if y >= 2.0 {
        let sieve = Sieve::new(y.floor() as usize);
        for &p in sieve.primes_up_to(y) {
            let v = product.eval_complex(p);
            let w = -t * (p as f64).ln();
            let factor = Complex64::new(1.0, 0.0) - v * Complex64::new(w.cos(), w.sin()) / p as f64;
            acc /= factor;
            if (p as f64) > y / 2.0 {
                last_octave += (v.norm() / p as f64) * 2.0;
            }
        }
    }
    LValue {
        t,
        character: product.id(),
        re: acc.re,
        im: acc.im,
        method: LMethod::EulerSmooth,
        truncation: y,
        error_estimate: last_octave + 2.0 / y.max(2.0),
    }
}

/// Outcome of the heuristic real-zero scan for one real character.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ScreenScan {
    pub divisor: u64,
    pub character: String,
    pub order: u64,
    pub sign_change: bool,
    pub min_value: f64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ScreenReport {
    pub modulus: u64,
    pub c: f64,
    pub is_flagged: bool,
    pub scans: Vec<ScreenScan>,
}

/// Heuristic screen: scans `L(sigma, chi)` for sign changes on
/// `sigma in [1 - c/log(2m), 1)` for every real primitive character mod a
/// divisor of `m`. Detection is numeric and makes no rigor claim.
pub fn exceptional_screen(m: u64) -> Result<ScreenReport> {
    exceptional_screen_with(m, DEFAULT_EXCEPTIONAL_C)
}

pub fn exceptional_screen_with(m: u64, c: f64) -> Result<ScreenReport> {
    if m == 0 {
        return Err(Error::InvalidModulus(0, u64::MAX));
    }
    let mut scans = Vec::new();
    let mut flagged = false;
    for d in 2..=m {
        if m % d != 0 {
            continue;
        }
        let group = ResidueGroup::new(d)?;
        for chi in all_characters(&group) {
            if chi.order() != 2 || !chi.is_primitive() {
                continue;
            }
            let sigma_lo = 1.0 - c / (2.0 * m as f64).ln();
            let table = chi.complex_table();
            let n_terms = 4000 * d;
            let grid = 33;
            let mut prev = f64::NAN;
            let mut sign_change = false;
            let mut min_value = f64::INFINITY;
            for j in 0..grid {
                let sigma = sigma_lo + (1.0 - sigma_lo) * j as f64 / grid as f64;
                let mut s = 0.0f64;
                for n in 1..=n_terms {
                    let v = table[(n % d) as usize].re;
                    if v != 0.0 {
                        s += v / (n as f64).powf(sigma);
                    }
                }
                min_value = min_value.min(s.abs());
                if !prev.is_nan() && s.signum() != prev.signum() {
                    sign_change = true;
                }
                prev = s;
            }
            flagged |= sign_change;
            scans.push(ScreenScan {
                divisor: d,
                character: chi.id(),
                order: chi.order(),
                sign_change,
                min_value,
            });
        }
    }
    Ok(ScreenReport {
        modulus: m,
        c,
        is_flagged: flagged,
        scans,
    })
}

/// Helper used by the family-moment pipelines: the modulus together with a
/// maximal-order primitive character mod a prime, mirroring the screen's
/// "record the character used" contract.
pub fn max_order_character(m: u64) -> Result<DirichletCharacter> {
    let group = ResidueGroup::new(m)?;
    all_characters(&group)
        .into_iter()
        .filter(|c| c.is_primitive())
        .max_by_key(|c| (c.order(), std::cmp::Reverse(c.exponents().to_vec())))
        .ok_or_else(|| Error::Domain(format!("no primitive character mod {m}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_cubic_primitive;
    use std::f64::consts::PI;

    fn quadratic_mod(q: u64) -> DirichletCharacter {
        let g = ResidueGroup::new(q).unwrap();
        all_characters(&g)
            .into_iter()
            .find(|c| c.order() == 2 && c.is_primitive())
            .unwrap()
    }

    #[test]
    fn classical_l_values() {
        // L(1, chi mod 3) = pi / (3 sqrt 3)
        let chi3 = quadratic_mod(3);
        let l = l_one_truncated(&CharProduct::new(&chi3, None), 0.0, 1_000_000).unwrap();
        assert!((l.re - PI / (3.0 * 3.0_f64.sqrt())).abs() < 1e-3);
        assert!(l.im.abs() < 1e-9);

        // L(1, chi mod 4) = pi / 4
        let chi4 = quadratic_mod(4);
        let l = l_one_truncated(&CharProduct::new(&chi4, None), 0.0, 1_000_000).unwrap();
        assert!((l.re - PI / 4.0).abs() < 1e-3);
    }

    #[test]
    fn truncated_vs_euler_smooth() {
        let chi = enumerate_cubic_primitive(7).unwrap().remove(0);
        let g3 = ResidueGroup::new(3).unwrap();
        let psi = all_characters(&g3)
            .into_iter()
            .find(|c| c.is_primitive())
            .unwrap();
        let prod = CharProduct::new(&chi, Some(&psi));
        let a = l_one_truncated(&prod, 0.0, 1_000_000).unwrap();
        let b = euler_smooth(&prod, 0.0, 1_000_000.0);
        let dev = (a.value() - b.value()).norm();
        assert!(
            dev <= a.error_estimate + b.error_estimate,
            "dev {dev} > {} + {}",
            a.error_estimate,
            b.error_estimate
        );
    }

    #[test]
    fn euler_smooth_degenerate_and_principal() {
        let g = ResidueGroup::new(7).unwrap();
        let one = DirichletCharacter::principal(&g);
        let prod = CharProduct::new(&one, None);
        // empty product
        let l = euler_smooth(&prod, 0.0, 1.5);
        assert_eq!(l.re, 1.0);
        // zeta-like partial product over p <= 10, skipping p = 7 where chi = 0
        let l = euler_smooth(&prod, 0.0, 10.0);
        let expected = 2.0 * (3.0 / 2.0) * (5.0 / 4.0);
        assert!((l.re - expected).abs() < 1e-12);
    }

    #[test]
    fn principal_product_is_pole() {
        let g = ResidueGroup::new(5).unwrap();
        let one = DirichletCharacter::principal(&g);
        assert!(matches!(
            l_one_truncated(&CharProduct::new(&one, None), 0.0, 100),
            Err(Error::PoleAtOne)
        ));
        // chi * conj(chi) is also principal
        let chi = quadratic_mod(5);
        assert!(l_one_truncated(&CharProduct::new(&chi, Some(&chi)), 0.0, 100).is_err());
    }

    #[test]
    fn conjugation_symmetry() {
        let chi = enumerate_cubic_primitive(13)
            .unwrap()
            .into_iter()
            .find(|c| c.modulus() == 13)
            .unwrap();
        let g3 = ResidueGroup::new(3).unwrap();
        let psi = all_characters(&g3)
            .into_iter()
            .find(|c| c.is_primitive())
            .unwrap();
        let t = 0.37;
        let z = 50_000;
        let fwd = l_one_truncated(&CharProduct::new(&chi, Some(&psi)), t, z).unwrap();
        let bwd = l_one_truncated(
            &CharProduct::new(&chi.conjugate(), Some(&psi.conjugate())),
            -t,
            z,
        )
        .unwrap();
        assert!((fwd.value().conj() - bwd.value()).norm() < 1e-12);
        assert!((fwd.value().norm() - bwd.value().norm()).abs() < 1e-12);
    }

    #[test]
    fn screen_small_moduli_not_flagged() {
        assert!(!exceptional_screen(1).unwrap().is_flagged);
        for m in 2..=11u64 {
            let rep = exceptional_screen(m).unwrap();
            assert!(!rep.is_flagged, "m = {m} unexpectedly flagged: {rep:?}");
        }
    }

    #[test]
    fn screen_records_characters() {
        let rep = exceptional_screen(12).unwrap();
        // divisors 3, 4 carry the real primitive quadratic characters
        assert!(rep.scans.iter().any(|s| s.divisor == 3));
        assert!(rep.scans.iter().any(|s| s.divisor == 4));
        // and a prime modulus has a character of order m - 1 available
        let psi = max_order_character(11).unwrap();
        assert_eq!(psi.order(), 10);
    }
}
