//! Exact arithmetic over roots of unity.
//!
//! Character values are rational angles `a/N` standing for `e(a/N)`. Sums of
//! such values with rational coefficients can be tested for exact vanishing:
//! a linear combination of `N`-th roots with integer coefficients is zero in
//! `C` precisely when the associated polynomial is divisible by the `N`-th
//! cyclotomic polynomial. No floating point is involved anywhere here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::sieve::{gcd, lcm};

/// Accumulates `sum coeff * e(num/den)` with exact rational coefficients.
#[derive(Default, Debug, Clone)]
pub struct ExactRootSum {
    // reduced angle (num, den) -> rational coefficient
    terms: BTreeMap<(u64, u64), BigRational>,
}

impl ExactRootSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff * e(num/den)`.
    pub fn add(&mut self, num: u64, den: u64, coeff: BigRational) {
        assert!(den > 0);
        let (num, den) = reduce_angle(num, den);
        let entry = self
            .terms
            .entry((num, den))
            .or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(num, den));
        }
    }

    pub fn add_int(&mut self, num: u64, den: u64, coeff: i64) {
        self.add(num, den, BigRational::from_integer(BigInt::from(coeff)));
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &BigRational)> {
        self.terms.iter()
    }

    /// Exact test for `sum = 0` in `C`.
    ///
    /// Clears denominators to integer coefficients over a common root order
    /// `N`, then checks divisibility by the cyclotomic polynomial `Phi_N`.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let n = self.terms.keys().fold(1u64, |acc, &(_, den)| lcm(acc, den));
        // common denominator of all coefficients
        let mut scale = BigInt::one();
        for c in self.terms.values() {
            let d = c.denom();
            let g = num_integer::Integer::gcd(&scale, d);
            scale = &scale / g * d;
        }
        let mut poly = vec![BigInt::zero(); n as usize];
        for (&(num, den), coeff) in &self.terms {
            let j = (num * (n / den)) % n;
            poly[j as usize] += (coeff * BigRational::from_integer(scale.clone())).to_integer();
        }
        poly_divisible(&poly, &cyclotomic(n))
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        use std::f64::consts::TAU;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (&(num, den), coeff) in &self.terms {
            let c = rational_to_f64(coeff);
            let theta = TAU * num as f64 / den as f64;
            acc += num_complex::Complex64::new(theta.cos(), theta.sin()) * c;
        }
        acc
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // good enough for display; exactness is never needed on this path
    let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

pub fn reduce_angle(num: u64, den: u64) -> (u64, u64) {
    let num = num % den;
    let g = gcd(num, den);
    if num == 0 {
        (0, 1)
    } else {
        (num / g, den / g)
    }
}

/// Cyclotomic polynomial `Phi_n` with integer coefficients, ascending order.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut quotient = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            quotient = poly_div_exact(&quotient, &phi_d);
        }
    }
    quotient
}

/// Exact polynomial division, panics if the division is not exact.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = poly_degree(den);
    let nd = poly_degree(&rem);
    assert!(dd <= nd);
    let lead = &den[dd];
    let mut q = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=(nd - dd)).rev() {
        let c = &rem[i + dd] / lead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate().take(dd + 1) {
                let t = &c * dj;
                rem[i + j] -= t;
            }
        }
        q[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact poly division");
    q
}

fn poly_degree(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Whether `den` divides `num` exactly over the integers.
fn poly_divisible(num: &[BigInt], den: &[BigInt]) -> bool {
    let nd = poly_degree(num);
    if num.iter().all(|c| c.is_zero()) {
        return true;
    }
    let dd = poly_degree(den);
    if dd > nd {
        return false;
    }
    let mut rem: Vec<BigInt> = num.to_vec();
    let lead = &den[dd];
    for i in (0..=(nd - dd)).rev() {
        if rem[i + dd].is_zero() {
            continue;
        }
        // cyclotomics are monic so the division stays integral
        let (c, r) = num_integer::Integer::div_rem(&rem[i + dd], lead);
        if !r.is_zero() {
            return false;
        }
        for (j, dj) in den.iter().enumerate().take(dd + 1) {
            let t = &c * dj;
            rem[i + j] -= t;
        }
    }
    rem.iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), coeffs(&[-1, 1]));
        assert_eq!(cyclotomic(2), coeffs(&[1, 1]));
        assert_eq!(cyclotomic(3), coeffs(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), coeffs(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn root_sum_zero_cases() {
        // 1 + w + w^2 = 0
        let mut s = ExactRootSum::new();
        s.add_int(0, 3, 1);
        s.add_int(1, 3, 1);
        s.add_int(2, 3, 1);
        assert!(s.is_zero());

        // 2 + 2w + 2w^2 = 0
        let mut s = ExactRootSum::new();
        s.add_int(0, 3, 2);
        s.add_int(1, 3, 2);
        s.add_int(2, 3, 2);
        assert!(s.is_zero());

        // 1 + w != 0
        let mut s = ExactRootSum::new();
        s.add_int(0, 3, 1);
        s.add_int(1, 3, 1);
        assert!(!s.is_zero());

        // e(1/4) + e(3/4) = 0
        let mut s = ExactRootSum::new();
        s.add_int(1, 4, 1);
        s.add_int(3, 4, 1);
        assert!(s.is_zero());

        // sum over all sixth roots = 0
        let mut s = ExactRootSum::new();
        for j in 0..6 {
            s.add_int(j, 6, 1);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn root_sum_rational_cancellation() {
        use num_rational::BigRational;
        let mut s = ExactRootSum::new();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        s.add(1, 3, half.clone());
        s.add(1, 3, -half);
        assert!(s.is_empty());
        assert!(s.is_zero());
    }

    #[test]
    fn angle_reduction() {
        assert_eq!(reduce_angle(4, 6), (2, 3));
        assert_eq!(reduce_angle(6, 6), (0, 1));
        assert_eq!(reduce_angle(9, 6), (1, 2));
    }
}
