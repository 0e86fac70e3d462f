//! Unit groups `(Z/qZ)*`, Dirichlet characters as exact roots of unity,
//! classification (order, parity, conductor, primitivity), enumeration of the
//! primitive cubic family, and Gauss sums.
//!
//! A character is stored as one exponent per cyclic component of the unit
//! group; its value at a unit is recovered from discrete-log tables built once
//! per modulus. Values are exact rational angles, so identity tests never see
//! floating point.

use num_complex::Complex64;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sieve::{factorize_u64, gcd, lcm, mod_pow, Sieve};

/// Largest modulus the discrete-log tables will be built for. Desk-scale work
/// targets `q <= 10^6`; the ceiling leaves headroom without risking surprise
/// memory use.
pub const MAX_MODULUS: u64 = 10_000_000;

/// An exact character value: zero or the root of unity `e(num/den)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CharValue {
    Zero,
    Root { num: u64, den: u64 },
}

impl CharValue {
    pub fn one() -> Self {
        CharValue::Root { num: 0, den: 1 }
    }

    pub fn root(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let num = num % den;
        let g = gcd(num, den);
        if num == 0 {
            CharValue::Root { num: 0, den: 1 }
        } else {
            CharValue::Root {
                num: num / g,
                den: den / g,
            }
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn is_one(self) -> bool {
        matches!(self, CharValue::Root { num: 0, .. })
    }

    /// Multiplicative order of the value (den of the reduced angle); zero has
    /// no order and returns `None`.
    pub fn order(self) -> Option<u64> {
        match self {
            CharValue::Zero => None,
            CharValue::Root { den, .. } => Some(den),
        }
    }

    pub fn pow(self, k: u64) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => {
                let num = (num as u128 * k as u128 % den as u128) as u64;
                CharValue::root(num, den)
            }
        }
    }

    pub fn conj(self) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => CharValue::root(den - num, den),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::Root { num, den } => {
                let theta = TAU * num as f64 / den as f64;
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }

    /// Reduced angle `(num, den)` for nonzero values.
    pub fn angle(self) -> Option<(u64, u64)> {
        match self {
            CharValue::Zero => None,
            CharValue::Root { num, den } => Some((num, den)),
        }
    }
}

impl std::ops::Mul for CharValue {
    type Output = CharValue;

    fn mul(self, other: CharValue) -> CharValue {
        match (self, other) {
            (CharValue::Zero, _) | (_, CharValue::Zero) => CharValue::Zero,
            (CharValue::Root { num: a, den: n }, CharValue::Root { num: b, den: m }) => {
                // a/n + b/m as a reduced angle
                let l = lcm(n, m);
                let num = ((a as u128 * (l / n) as u128 + b as u128 * (l / m) as u128) % l as u128)
                    as u64;
                CharValue::root(num, l)
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// One cyclic component of the unit group, `<generator> ~ C_order`.
#[derive(Clone, Debug)]
pub struct CyclicComponent {
    pub generator: u64,
    pub order: u64,
}

#[derive(Clone, Debug)]
struct FactorData {
    prime: u64,
    exponent: u32,
    modulus: u64, // prime^exponent
    components: Vec<CyclicComponent>,
    // discrete logs per component, indexed by residue mod `modulus`,
    // u32::MAX on non-units
    dlog: Vec<Vec<u32>>,
}

/// `(Z/qZ)*` split into cyclic components with eager discrete-log tables.
pub struct ResidueGroup {
    modulus: u64,
    factors: Vec<FactorData>,
    // flattened component orders (in factor order)
    component_orders: Vec<u64>,
    phi: u64,
}

impl fmt::Debug for ResidueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResidueGroup")
            .field("modulus", &self.modulus)
            .field("component_orders", &self.component_orders)
            .finish()
    }
}

/// Smallest primitive root mod an odd prime `p`.
fn primitive_root_mod_p(p: u64) -> u64 {
    if p == 3 {
        return 2;
    }
    let factors = factorize_u64(p - 1);
    'outer: for g in 2..p {
        for &(r, _) in &factors {
            if mod_pow(g, (p - 1) / r, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root mod prime {p}");
}

/// Smallest primitive root mod `p^e` for odd `p`.
fn primitive_root_mod_pe(p: u64, e: u32) -> u64 {
    if e == 1 {
        return primitive_root_mod_p(p);
    }
    let p2 = p * p;
    let factors = factorize_u64(p - 1);
    'outer: for g in 2.. {
        for &(r, _) in &factors {
            if mod_pow(g, (p - 1) / r, p) == 1 {
                continue 'outer;
            }
        }
        if mod_pow(g, p - 1, p2) != 1 {
            return g;
        }
    }
    unreachable!()
}

impl ResidueGroup {
    pub fn new(q: u64) -> Result<Arc<ResidueGroup>> {
        if q == 0 || q > MAX_MODULUS {
            return Err(Error::InvalidModulus(q, MAX_MODULUS));
        }
        let mut factors = Vec::new();
        for (p, e) in factorize_u64(q) {
            let pe = p.pow(e);
            let mut components = Vec::new();
            if p == 2 {
                match e {
                    1 => {}
                    2 => components.push(CyclicComponent {
                        generator: 3,
                        order: 2,
                    }),
                    _ => {
                        components.push(CyclicComponent {
                            generator: pe - 1, // -1
                            order: 2,
                        });
                        components.push(CyclicComponent {
                            generator: 5,
                            order: pe / 4, // 2^(e-2)
                        });
                    }
                }
            } else {
                let g = primitive_root_mod_pe(p, e);
                components.push(CyclicComponent {
                    generator: g,
                    order: pe / p * (p - 1), // phi(p^e)
                });
            }
            let dlog = build_dlog(pe, &components);
            factors.push(FactorData {
                prime: p,
                exponent: e,
                modulus: pe,
                components,
                dlog,
            });
        }
        let component_orders: Vec<u64> = factors
            .iter()
            .flat_map(|f| f.components.iter().map(|c| c.order))
            .collect();
        let phi = component_orders.iter().product::<u64>().max(1);
        Ok(Arc::new(ResidueGroup {
            modulus: q,
            factors,
            component_orders,
            phi,
        }))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn component_orders(&self) -> &[u64] {
        &self.component_orders
    }

    /// Factor summary: (prime, exponent, generators, component orders).
    pub fn factor_summary(&self) -> Vec<(u64, u32, Vec<u64>, Vec<u64>)> {
        self.factors
            .iter()
            .map(|f| {
                (
                    f.prime,
                    f.exponent,
                    f.components.iter().map(|c| c.generator).collect(),
                    f.components.iter().map(|c| c.order).collect(),
                )
            })
            .collect()
    }

    /// Discrete log of a unit as exponents per component; `None` off units.
    pub fn dlog(&self, n: u64) -> Option<Vec<u64>> {
        let r = n % self.modulus;
        if gcd(r, self.modulus) != 1 {
            return None;
        }
        let mut out = Vec::with_capacity(self.component_orders.len());
        for f in &self.factors {
            let u = (r % f.modulus) as usize;
            for t in &f.dlog {
                let k = t[u];
                if k == u32::MAX {
                    return None;
                }
                out.push(k as u64);
            }
        }
        Some(out)
    }
}

fn build_dlog(pe: u64, components: &[CyclicComponent]) -> Vec<Vec<u32>> {
    match components.len() {
        0 => Vec::new(),
        1 => {
            let c = &components[0];
            let mut t = vec![u32::MAX; pe as usize];
            let mut cur: u64 = 1;
            for k in 0..c.order {
                t[cur as usize] = k as u32;
                cur = (cur as u128 * c.generator as u128 % pe as u128) as u64;
            }
            vec![t]
        }
        2 => {
            // 2^e with e >= 3: residue = (-1)^s * 5^t
            let (c0, c1) = (&components[0], &components[1]);
            let mut t0 = vec![u32::MAX; pe as usize];
            let mut t1 = vec![u32::MAX; pe as usize];
            for s in 0..c0.order {
                let mut cur = mod_pow(c0.generator, s, pe);
                for t in 0..c1.order {
                    t0[cur as usize] = s as u32;
                    t1[cur as usize] = t as u32;
                    cur = (cur as u128 * c1.generator as u128 % pe as u128) as u64;
                }
            }
            vec![t0, t1]
        }
        _ => unreachable!(),
    }
}

/// A Dirichlet character, defined by one exponent per cyclic component and
/// classified eagerly at construction.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<ResidueGroup>,
    exponents: Vec<u64>,
    order: u64,
    parity: Parity,
    conductor: u64,
    is_primitive: bool,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}]", self.id())
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}
impl Eq for DirichletCharacter {}

impl PartialOrd for DirichletCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for DirichletCharacter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.modulus(), &self.exponents).cmp(&(other.modulus(), &other.exponents))
    }
}

impl DirichletCharacter {
    pub fn from_exponents(group: &Arc<ResidueGroup>, exponents: Vec<u64>) -> Result<Self> {
        let orders = group.component_orders();
        if exponents.len() != orders.len() {
            return Err(Error::Domain(format!(
                "expected {} exponents for modulus {}, got {}",
                orders.len(),
                group.modulus(),
                exponents.len()
            )));
        }
        for (&a, &d) in exponents.iter().zip(orders) {
            if a >= d {
                return Err(Error::Domain(format!(
                    "exponent {a} out of range for component of order {d}"
                )));
            }
        }
        let order = exponents
            .iter()
            .zip(orders)
            .map(|(&a, &d)| d / gcd(a, d))
            .fold(1, lcm);
        let conductor = conductor_from_exponents(group, &exponents);
        let mut chi = DirichletCharacter {
            is_primitive: conductor == group.modulus(),
            group: Arc::clone(group),
            exponents,
            order,
            parity: Parity::Even,
            conductor,
        };
        chi.parity = if chi.modulus() <= 2 {
            Parity::Even
        } else {
            match chi.eval_i64(-1) {
                CharValue::Root { num: 0, .. } => Parity::Even,
                CharValue::Root { num: 1, den: 2 } => Parity::Odd,
                v => unreachable!("chi(-1) must be +-1, got {v:?}"),
            }
        };
        Ok(chi)
    }

    pub fn principal(group: &Arc<ResidueGroup>) -> Self {
        let zeros = vec![0u64; group.component_orders().len()];
        DirichletCharacter::from_exponents(group, zeros).expect("principal is well-formed")
    }

    pub fn group(&self) -> &Arc<ResidueGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.is_primitive
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// `(order, parity, conductor, is_primitive)`.
    pub fn classify(&self) -> (u64, Parity, u64, bool) {
        (self.order, self.parity, self.conductor, self.is_primitive)
    }

    /// Stable identifier `modulus:e1.e2...` used in CSV/JSON output.
    pub fn id(&self) -> String {
        if self.exponents.is_empty() {
            format!("{}:principal", self.modulus())
        } else {
            let e: Vec<String> = self.exponents.iter().map(|x| x.to_string()).collect();
            format!("{}:{}", self.modulus(), e.join("."))
        }
    }

    /// Exact value at `n` (reduced mod q internally).
    pub fn eval(&self, n: u64) -> CharValue {
        let q = self.modulus();
        if q == 1 {
            return CharValue::one();
        }
        let r = n % q;
        if gcd(r, q) != 1 {
            return CharValue::Zero;
        }
        // angle = sum over components of a_i * k_i / d_i
        let mut num: u64 = 0;
        let mut den: u64 = 1;
        let mut idx = 0;
        for f in &self.group.factors {
            let u = (r % f.modulus) as usize;
            for (ci, t) in f.dlog.iter().enumerate() {
                let d = f.components[ci].order;
                let a = self.exponents[idx];
                idx += 1;
                if a == 0 {
                    continue;
                }
                let k = t[u] as u64;
                let part = (a as u128 * k as u128 % d as u128) as u64;
                if part == 0 {
                    continue;
                }
                let l = lcm(den, d);
                num = ((num as u128 * (l / den) as u128 + part as u128 * (l / d) as u128)
                    % l as u128) as u64;
                den = l;
            }
        }
        CharValue::root(num, den)
    }

    pub fn eval_i64(&self, n: i64) -> CharValue {
        let q = self.modulus() as i64;
        self.eval(n.rem_euclid(q.max(1)) as u64)
    }

    pub fn eval_complex(&self, n: u64) -> Complex64 {
        self.eval(n).to_complex()
    }

    /// One full period of exact values, indexed by residue.
    pub fn value_table(&self) -> Vec<CharValue> {
        (0..self.modulus()).map(|n| self.eval(n)).collect()
    }

    /// One full period of complex values, indexed by residue.
    pub fn complex_table(&self) -> Vec<Complex64> {
        (0..self.modulus()).map(|n| self.eval_complex(n)).collect()
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let orders = self.group.component_orders();
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(orders)
            .map(|(&a, &d)| if a == 0 { 0 } else { d - a })
            .collect();
        DirichletCharacter::from_exponents(&self.group, exps).expect("conjugate is well-formed")
    }
}

fn conductor_from_exponents(group: &Arc<ResidueGroup>, exponents: &[u64]) -> u64 {
    let mut cond: u64 = 1;
    let mut idx = 0;
    for f in &group.factors {
        let n = f.components.len();
        cond *= local_conductor(f, &exponents[idx..idx + n]);
        idx += n;
    }
    cond
}

fn local_conductor(f: &FactorData, local: &[u64]) -> u64 {
    let p = f.prime;
    let e = f.exponent;
    if p != 2 {
        let a = local[0];
        if a == 0 {
            return 1;
        }
        let mut v = 0u32;
        let mut x = a;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        return p.pow(e - v);
    }
    match e {
        1 => 1,
        2 => {
            if local[0] == 0 {
                1
            } else {
                4
            }
        }
        _ => {
            let (a1, a2) = (local[0], local[1]);
            if a2 != 0 {
                let v = a2.trailing_zeros();
                2u64.pow(e - v)
            } else if a1 != 0 {
                4
            } else {
                1
            }
        }
    }
}

/// Every character mod q, in lexicographic exponent order.
pub fn all_characters(group: &Arc<ResidueGroup>) -> Vec<DirichletCharacter> {
    let orders = group.component_orders().to_vec();
    let total: u64 = orders.iter().product::<u64>().max(1);
    let mut out = Vec::with_capacity(total as usize);
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(
            DirichletCharacter::from_exponents(group, exps.clone())
                .expect("odometer stays in range"),
        );
        // odometer with the last coordinate fastest => lexicographic order
        let mut i = orders.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// Conductors that can carry a primitive cubic character coprime to 3:
/// squarefree products of primes `p = 1 (mod 3)`, ascending.
pub fn cubic_conductors(q_max: u64) -> Vec<u64> {
    if q_max < 7 {
        return Vec::new();
    }
    let sieve = Sieve::new(q_max as usize);
    let ps: Vec<u64> = sieve
        .primes()
        .iter()
        .copied()
        .filter(|&p| p % 3 == 1)
        .collect();
    let mut out = Vec::new();
    fn dfs(ps: &[u64], start: usize, acc: u64, q_max: u64, out: &mut Vec<u64>) {
        for i in start..ps.len() {
            let p = ps[i];
            if acc > q_max / p {
                break;
            }
            let next = acc * p;
            out.push(next);
            dfs(ps, i + 1, next, q_max, out);
        }
    }
    dfs(&ps, 0, 1, q_max, &mut out);
    out.sort_unstable();
    out
}

/// The family of primitive cubic characters with conductor `q <= q_max` and
/// `gcd(q, 3) = 1`, sorted by (conductor, exponent vector). Groups for
/// distinct conductors are built in parallel; the output order is fixed.
pub fn enumerate_cubic_primitive(q_max: u64) -> Result<Vec<DirichletCharacter>> {
    use rayon::prelude::*;
    let per_conductor: Vec<Result<Vec<DirichletCharacter>>> = cubic_conductors(q_max)
        .into_par_iter()
        .map(|q| {
            let group = ResidueGroup::new(q)?;
            let orders = group.component_orders().to_vec();
            let r = orders.len();
            let mut chars = Vec::with_capacity(1 << r);
            for mask in 0u64..(1u64 << r) {
                let exps: Vec<u64> = (0..r)
                    .map(|i| {
                        let d = orders[i];
                        if (mask >> (r - 1 - i)) & 1 == 0 {
                            d / 3
                        } else {
                            2 * d / 3
                        }
                    })
                    .collect();
                let chi = DirichletCharacter::from_exponents(&group, exps)?;
                debug_assert!(chi.is_primitive() && chi.order() == 3);
                chars.push(chi);
            }
            Ok(chars)
        })
        .collect();
    let mut family = Vec::new();
    for chars in per_conductor {
        family.extend(chars?);
    }
    Ok(family)
}

/// Gauss sum `tau(chi) = sum_a chi(a) e(a/q)` in floating point.
///
/// Only primitive characters have `|tau| = sqrt(q)`, so anything else is a
/// domain error.
pub fn gauss_sum(chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter { op: "gauss_sum" });
    }
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive {
            op: "gauss_sum",
            conductor: chi.conductor(),
            modulus: chi.modulus(),
        });
    }
    let q = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..q {
        let v = chi.eval(a);
        if v.is_zero() {
            continue;
        }
        let theta = TAU * a as f64 / q as f64;
        acc += v.to_complex() * Complex64::new(theta.cos(), theta.sin());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactRootSum;

    #[test]
    fn group_q7_is_cyclic_order_6() {
        let g = ResidueGroup::new(7).unwrap();
        assert_eq!(g.component_orders(), &[6]);
        let summary = g.factor_summary();
        assert_eq!(summary.len(), 1);
        // smallest primitive root mod 7 is 3
        assert_eq!(summary[0].2, vec![3]);
        assert_eq!(g.phi(), 6);
    }

    #[test]
    fn group_q1_trivial() {
        let g = ResidueGroup::new(1).unwrap();
        assert_eq!(g.component_orders().len(), 0);
        assert_eq!(g.phi(), 1);
    }

    #[test]
    fn group_q8_is_c2_x_c2() {
        let g = ResidueGroup::new(8).unwrap();
        assert_eq!(g.component_orders(), &[2, 2]);
    }

    #[test]
    fn group_q0_rejected() {
        assert!(ResidueGroup::new(0).is_err());
    }

    #[test]
    fn dlog_round_trip() {
        for q in [7u64, 8, 16, 45, 360, 998] {
            let g = ResidueGroup::new(q).unwrap();
            let product: u64 = g
                .factor_summary()
                .iter()
                .map(|(p, e, _, _)| p.pow(*e))
                .product();
            assert_eq!(product, q, "factor moduli must multiply back to q");
            let gens: Vec<(u64, u64)> = g
                .factor_summary()
                .iter()
                .flat_map(|(_, _, gs, _)| gs.iter().map(|&gg| (gg, 0)))
                .zip(g.component_orders().iter())
                .map(|((gg, _), &d)| (gg, d))
                .collect();
            // re-exponentiate each unit's dlog vector against per-factor generators
            for u in 1..q {
                if gcd(u, q) != 1 {
                    assert!(g.dlog(u).is_none());
                    continue;
                }
                let ks = g.dlog(u).expect("unit has a dlog");
                // rebuild u via CRT: product over factors of g_i^{k_i} mod p^e
                let mut idx = 0;
                let mut rebuilt_ok = true;
                for (p, e, gens_f, orders_f) in g.factor_summary() {
                    let pe = p.pow(e);
                    let mut acc = 1u64;
                    for (gg, _d) in gens_f.iter().zip(orders_f.iter()) {
                        acc = (acc as u128 * mod_pow(*gg, ks[idx], pe) as u128 % pe as u128) as u64;
                        idx += 1;
                    }
                    if acc != u % pe {
                        rebuilt_ok = false;
                    }
                }
                assert!(rebuilt_ok, "dlog round trip failed at q={q}, u={u}");
            }
            let _ = gens;
        }
    }

    #[test]
    fn cubic_values_are_cube_roots() {
        let fam = enumerate_cubic_primitive(10).unwrap();
        assert_eq!(fam.len(), 2);
        for chi in &fam {
            assert_eq!(chi.modulus(), 7);
            for n in 1..7u64 {
                let v = chi.eval(n);
                assert!(matches!(v.order(), Some(1) | Some(3)));
            }
            assert!(chi.eval(7).is_zero());
            // chi(-1) = 1: cubic characters are even
            assert!(chi.eval_i64(-1).is_one());
            assert_eq!(chi.parity(), Parity::Even);
        }
    }

    #[test]
    fn multiplicativity_fuzz() {
        // 1000 pseudo-random pairs on a composite modulus
        let g = ResidueGroup::new(91).unwrap();
        for chi in all_characters(&g) {
            let mut x = 0x9e3779b97f4a7c15u64;
            for _ in 0..40 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
                let m = x >> 40;
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
                let n = x >> 40;
                let lhs = chi.eval(m.wrapping_mul(n) % 91);
                let rhs = chi.eval(m) * chi.eval(n);
                assert_eq!(lhs, rhs, "chi={} m={m} n={n}", chi.id());
            }
        }
    }

    #[test]
    fn classify_principal() {
        let g = ResidueGroup::new(45).unwrap();
        let chi = DirichletCharacter::principal(&g);
        let (order, parity, cond, prim) = chi.classify();
        assert_eq!(order, 1);
        assert_eq!(parity, Parity::Even);
        assert_eq!(cond, 1);
        assert!(!prim);
    }

    #[test]
    fn classify_mod7_exhaustive() {
        // all 6 characters mod 7, orders/conductors checked directly from values
        let g = ResidueGroup::new(7).unwrap();
        let chars = all_characters(&g);
        assert_eq!(chars.len(), 6);
        let mut order3 = 0;
        for chi in &chars {
            // order from the value table
            let mut k = 1u64;
            loop {
                let all_one = (1..7).all(|n| chi.eval(n).pow(k).is_one());
                if all_one {
                    break;
                }
                k += 1;
            }
            assert_eq!(chi.order(), k, "cached order disagrees with values");
            if k == 3 {
                order3 += 1;
                assert_eq!(chi.conductor(), 7);
                assert!(chi.is_primitive());
                assert_eq!(chi.parity(), Parity::Even);
            }
        }
        assert_eq!(order3, 2);
    }

    #[test]
    fn classify_legendre_mod7() {
        let g = ResidueGroup::new(7).unwrap();
        let legendre = all_characters(&g)
            .into_iter()
            .find(|c| c.order() == 2)
            .unwrap();
        // brute-force values: quadratic residues mod 7 are {1, 2, 4}
        for n in 1..7u64 {
            let expected_qr = [1, 2, 4].contains(&n);
            let v = legendre.eval(n);
            assert_eq!(v.is_one(), expected_qr, "n={n}");
        }
        assert_eq!(legendre.parity(), Parity::Odd);
        assert_eq!(legendre.conductor(), 7);
        assert!(legendre.is_primitive());
    }

    /// Conductor of chi from the raw definition: the smallest d | q such
    /// that chi is constant on unit residue classes mod d.
    fn conductor_by_definition(chi: &DirichletCharacter) -> u64 {
        let q = chi.modulus();
        let values: Vec<CharValue> = (0..q).map(|n| chi.eval(n)).collect();
        for d in 1..=q {
            if q % d != 0 {
                continue;
            }
            let mut induced = true;
            'classes: for r in 0..d {
                let mut first = None;
                let mut a = r;
                while a < q {
                    if gcd(a, q) == 1 {
                        match first {
                            None => first = Some(values[a as usize]),
                            Some(f) => {
                                if values[a as usize] != f {
                                    induced = false;
                                    break 'classes;
                                }
                            }
                        }
                    }
                    a += d.max(1);
                }
            }
            if induced {
                return d;
            }
        }
        q
    }

    #[test]
    fn conductor_matches_definition_on_even_and_prime_power_moduli() {
        // exercises the two-component 2^e factors and lifted primitive roots
        for q in [8u64, 16, 32, 9, 27, 25, 24, 45, 48, 175, 98] {
            let g = ResidueGroup::new(q).unwrap();
            for chi in all_characters(&g) {
                assert_eq!(
                    chi.conductor(),
                    conductor_by_definition(&chi),
                    "conductor mismatch for {}",
                    chi.id()
                );
            }
        }
    }

    #[test]
    fn order_matches_value_table_on_mixed_moduli() {
        for q in [8u64, 16, 9, 24, 45] {
            let g = ResidueGroup::new(q).unwrap();
            for chi in all_characters(&g) {
                let order_from_values = (0..q)
                    .filter_map(|n| chi.eval(n).order())
                    .fold(1, crate::sieve::lcm);
                assert_eq!(chi.order(), order_from_values, "chi = {}", chi.id());
            }
        }
    }

    #[test]
    fn enumerate_small_families() {
        assert!(enumerate_cubic_primitive(6).unwrap().is_empty());
        let fam10 = enumerate_cubic_primitive(10).unwrap();
        assert_eq!(fam10.len(), 2);
        assert!(fam10.iter().all(|c| c.modulus() == 7));

        let fam100 = enumerate_cubic_primitive(100).unwrap();
        for chi in &fam100 {
            let q = chi.conductor();
            assert_eq!(q % 3, 1, "conductor {q} not coprime-compatible");
            let f = factorize_u64(q);
            assert!(f.iter().all(|&(p, e)| e == 1 && p % 3 == 1), "q={q}");
            assert_eq!(chi.order(), 3);
            assert!(chi.is_primitive());
            assert_eq!(chi.parity(), Parity::Even);
        }
        // sorted by (conductor, exponents)
        let mut sorted = fam100.clone();
        sorted.sort();
        assert_eq!(fam100, sorted);
    }

    #[test]
    fn conjugate_is_square_for_cubic() {
        for chi in enumerate_cubic_primitive(40).unwrap() {
            let bar = chi.conjugate();
            for n in 0..chi.modulus() {
                let lhs = bar.eval(n);
                let rhs = chi.eval(n) * chi.eval(n);
                assert_eq!(lhs, rhs, "n={n}");
            }
        }
    }

    #[test]
    fn full_period_orthogonality_exact() {
        for q in [7u64, 9, 12, 36, 91] {
            let g = ResidueGroup::new(q).unwrap();
            for chi in all_characters(&g) {
                if chi.is_principal() {
                    continue;
                }
                let mut sum = ExactRootSum::new();
                for n in 1..=q {
                    if let Some((a, b)) = chi.eval(n).angle() {
                        sum.add_int(a, b, 1);
                    }
                }
                assert!(sum.is_zero(), "orthogonality failed for {}", chi.id());
            }
        }
    }

    #[test]
    fn gauss_sum_values() {
        // quadratic character mod 5: tau = sqrt(5) exactly (real)
        let g5 = ResidueGroup::new(5).unwrap();
        let quad = all_characters(&g5)
            .into_iter()
            .find(|c| c.order() == 2)
            .unwrap();
        let tau = gauss_sum(&quad).unwrap();
        assert!((tau.re - 5.0_f64.sqrt()).abs() < 1e-12);
        assert!(tau.im.abs() < 1e-12);

        // cubic mod 7: |tau| = sqrt(7)
        for chi in enumerate_cubic_primitive(10).unwrap() {
            let tau = gauss_sum(&chi).unwrap();
            assert!((tau.norm() - 7.0_f64.sqrt()).abs() < 1e-9 * 7.0_f64.sqrt());
        }

        // principal -> error
        let g = ResidueGroup::new(7).unwrap();
        assert!(gauss_sum(&DirichletCharacter::principal(&g)).is_err());

        // imprimitive -> error
        let g9 = ResidueGroup::new(9).unwrap();
        let impr = DirichletCharacter::principal(&g9);
        assert!(gauss_sum(&impr).is_err());
    }

    #[test]
    fn char_value_algebra() {
        let a = CharValue::root(1, 3);
        let b = CharValue::root(2, 3);
        assert!((a * b).is_one());
        assert_eq!(a.conj(), b);
        assert_eq!(a.pow(3), CharValue::one());
        assert_eq!(CharValue::Zero * a, CharValue::Zero);
        assert_eq!(CharValue::root(5, 10), CharValue::root(1, 2));
    }
}
