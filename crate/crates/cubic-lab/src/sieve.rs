//! Linear sieve for smallest/largest prime factors and prime lists.
//!
//! Built once per bound and shared; every smoothness split and factorization
//! in the crate reduces to these arrays.

/// Smallest- and largest-prime-factor tables for `1..=bound`.
///
/// Conventions: `P+(1) = 1` and `P-(1)` is treated as infinite (`u64::MAX`).
pub struct Sieve {
    bound: usize,
    spf: Vec<u32>,
    lpf: Vec<u32>,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn new(bound: usize) -> Self {
        let n = bound.max(1);
        let mut spf = vec![0u32; n + 1];
        let mut lpf = vec![0u32; n + 1];
        let mut primes: Vec<u64> = Vec::new();
        if n >= 1 {
            spf[1] = 1;
            lpf[1] = 1;
        }
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                lpf[i] = i as u32;
                primes.push(i as u64);
            }
            for &p in &primes {
                let p = p as usize;
                if p > spf[i] as usize || i * p > n {
                    break;
                }
                spf[i * p] = p as u32;
                lpf[i * p] = lpf[i];
            }
        }
        Sieve {
            bound: n,
            spf,
            lpf,
            primes,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Largest prime factor; `P+(1) = 1`.
    pub fn largest_prime_factor(&self, n: u64) -> u64 {
        debug_assert!(n >= 1 && n as usize <= self.bound);
        self.lpf[n as usize] as u64
    }

    /// Smallest prime factor; `P-(1) = u64::MAX` (infinity convention).
    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        debug_assert!(n >= 1 && n as usize <= self.bound);
        if n == 1 {
            u64::MAX
        } else {
            self.spf[n as usize] as u64
        }
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn primes_up_to(&self, x: f64) -> &[u64] {
        let cut = self.primes.partition_point(|&p| p as f64 <= x);
        &self.primes[..cut]
    }

    /// Prime factorization via repeated smallest-prime-factor division.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        debug_assert!(n >= 1 && n as usize <= self.bound);
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }
}

/// `gcd` on u64.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `base^exp mod m` with 128-bit intermediates.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Trial-division factorization for moduli-scale integers (no sieve needed).
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
