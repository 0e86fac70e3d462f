//! Family-level pipelines: the empirical distribution of `M(chi)` over the
//! cubic family, twisted rough-tail exceedance rates, the structure
//! diagnostics (rational approximation of the argmax location, twist fit,
//! L-value ratio), and family moments of `|L(1, chi conj(psi))|`.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::characters::{enumerate_cubic_primitive, DirichletCharacter, Parity};
use crate::charsum::{grid_max_with, msum_exact, CharSumProfile, HFn, Side, Weight};
use crate::error::{Error, Result};
use crate::lfunctions::{l_one_truncated, CharProduct};
use crate::pretentious::{best_twist, PretentiousFit};
use crate::random_model::pairwise_sum;
use crate::sieve::lcm;
use crate::BETA;

/// Default truncation exponent for family-scale Fourier work: `Z = Q^(21/40)`.
pub fn default_z(q_max: u64) -> u64 {
    (q_max as f64).powf(21.0 / 40.0).ceil() as u64
}

/// Empirical tail of `M(chi)` over the family.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DistRow {
    pub v: f64,
    pub count: u64,
    pub proportion: f64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DistributionTable {
    pub q_max: u64,
    pub family_size: u64,
    pub empty: bool,
    pub rows: Vec<DistRow>,
}

/// Exact counts of `#\{chi : M(chi) > V\}` over the family, one row per grid
/// value.
pub fn dist_table(q_max: u64, v_grid: &[f64]) -> Result<DistributionTable> {
    let profiles = family_profiles(q_max)?;
    let total = profiles.len() as u64;
    let mut rows = Vec::with_capacity(v_grid.len());
    for &v in v_grid {
        let count = profiles.iter().filter(|p| p.m > v).count() as u64;
        rows.push(DistRow {
            v,
            count,
            proportion: if total == 0 {
                0.0
            } else {
                count as f64 / total as f64
            },
        });
    }
    Ok(DistributionTable {
        q_max,
        family_size: total,
        empty: total == 0,
        rows,
    })
}

/// `M(chi)` profiles for the whole family, in family order.
pub fn family_profiles(q_max: u64) -> Result<Vec<CharSumProfile>> {
    let family = enumerate_cubic_primitive(q_max)?;
    family
        .par_iter()
        .map(msum_exact)
        .collect::<Result<Vec<_>>>()
}

/// Parses `start:stop:step` into an inclusive grid.
pub fn parse_vgrid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Domain(format!(
            "V grid must be start:stop:step, got {spec:?}"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid start {:?}", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid stop {:?}", parts[1])))?;
    let step: f64 = parts[2]
        .parse()
        .map_err(|_| Error::Domain(format!("bad grid step {:?}", parts[2])))?;
    if step.is_nan() || step <= 0.0 || stop < start {
        return Err(Error::Domain("need step > 0 and stop >= start".into()));
    }
    if (stop - start) / step > 1e6 {
        return Err(Error::Domain("grid would exceed one million points".into()));
    }
    let mut grid = Vec::new();
    let mut v = start;
    while v <= stop + 1e-12 {
        grid.push(v);
        v = start + grid.len() as f64 * step;
    }
    Ok(grid)
}

/// Exceedance statistics for the grid-maximized twisted rough tail over the
/// family.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TailRateReport {
    pub q_max: u64,
    pub y: f64,
    pub z: u64,
    pub r: u64,
    pub t_grid_len: u64,
    pub threshold: f64,
    pub family_size: u64,
    pub exceed_count: u64,
    pub rate: f64,
    pub max_statistic: f64,
}

/// Optional overrides for the tail pipeline; defaults follow the family
/// conventions `Z = Q^(21/40)`, `R = 4Z`, `T = ceil(R (log Z)^2 / Z)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TailParams {
    pub z: Option<u64>,
    pub r: Option<u64>,
}

/// Fraction of the family whose rough-part maximum (over the alpha grid and
/// the t grid `{l/T}`) exceeds the threshold. The rough sum runs over
/// positive `n` only.
pub fn tail_event_rate(
    q_max: u64,
    y: f64,
    threshold: f64,
    params: TailParams,
    h: Option<&HFn>,
) -> Result<TailRateReport> {
    let z = params.z.unwrap_or_else(|| default_z(q_max)).max(2);
    let r = params.r.unwrap_or(4 * z).max(8);
    let t_count = ((r as f64) * (z as f64).ln().powi(2) / z as f64).ceil() as u64;
    let t_grid: Vec<f64> = (0..=t_count).map(|l| l as f64 / t_count as f64).collect();
    let family = enumerate_cubic_primitive(q_max)?;
    let stats: Vec<f64> = family
        .par_iter()
        .map(|chi| {
            let mut best = 0.0f64;
            for &t in &t_grid {
                let gm = grid_max_with(chi, z, r, Weight::Rough, y, t, Side::PositiveOnly, h)
                    .expect("validated grid");
                if gm.value > best {
                    best = gm.value;
                }
            }
            best
        })
        .collect();
    let exceed_count = stats.iter().filter(|&&s| s > threshold).count() as u64;
    let family_size = stats.len() as u64;
    Ok(TailRateReport {
        q_max,
        y,
        z,
        r,
        t_grid_len: t_count + 1,
        threshold,
        family_size,
        exceed_count,
        rate: if family_size == 0 {
            0.0
        } else {
            exceed_count as f64 / family_size as f64
        },
        max_statistic: stats.iter().cloned().fold(0.0, f64::max),
    })
}

/// Best rational approximation under the two-sided constraint: the reduced
/// `a/b` with the smallest `b <= cap` satisfying `|alpha - a/b| < 1/(b cap)`
/// (existence by the pigeonhole argument). For very large caps the search
/// falls back to the last continued-fraction convergent with denominator
/// within the cap.
pub fn rational_approx(alpha: f64, b_cap: u64) -> (u64, u64) {
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    let cap = b_cap.max(1);
    if cap <= 2_000_000 {
        for b in 1..=cap {
            let a = (alpha * b as f64).round() as u64;
            let a = a.min(b); // alpha <= 1
            if num_integer::gcd(a, b) != 1 && !(a == 0 && b == 1) {
                continue;
            }
            if (alpha - a as f64 / b as f64).abs() < 1.0 / (b as f64 * cap as f64) {
                return (a, b);
            }
        }
    }
    // continued-fraction fallback: last convergent with denominator <= cap
    let (mut h0, mut k0, mut h1, mut k1) = (1u64, 0u64, 0u64, 1u64);
    let mut x = alpha;
    loop {
        let a = x.floor();
        let (h2, k2) = (
            (a as u64).saturating_mul(h1).saturating_add(h0),
            (a as u64).saturating_mul(k1).saturating_add(k0),
        );
        if k2 > cap {
            break;
        }
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    (h1, k1.max(1))
}

/// One structure-diagnostic record for a character with a large maximum.
#[derive(Clone, Debug, serde::Serialize)]
pub struct StructureRecord {
    pub character: String,
    pub conductor: u64,
    pub m_value: f64,
    pub n_max: u64,
    pub alpha: f64,
    /// Reduced rational approximation of alpha with denominator cap `b_cap`.
    pub a: u64,
    pub b: u64,
    pub b_cap: u64,
    pub y: f64,
    pub xi: String,
    pub xi_conductor: u64,
    pub xi_is_odd: bool,
    pub t: f64,
    pub fit_value: f64,
    pub m_divides_b: bool,
    pub lvalue_abs: f64,
    /// `M(chi) sqrt(m) / |L(1+it, chi conj(xi))|`.
    pub ratio: f64,
    pub y_clamped: bool,
    pub b_cap_clamped: bool,
    pub degenerate_v: bool,
    /// Whether V sits below the stated validity ceiling for the asymptotic
    /// regime (the lower constant is unknown, so this is one-sided).
    pub below_regime_ceiling: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct StructureReport {
    pub q_max: u64,
    pub top_fraction: f64,
    pub epsilon: f64,
    pub z_policy: String,
    pub family_size: u64,
    pub records: Vec<StructureRecord>,
}

/// The cutoff `y(V) = exp(V^{1/beta} (log V)^{1/(4 beta) + eps/2})`,
/// NaN when `V <= 1`.
pub fn y_of_v(v: f64, epsilon: f64) -> f64 {
    if v <= 1.0 {
        return f64::NAN;
    }
    (v.powf(1.0 / BETA) * v.ln().powf(1.0 / (4.0 * BETA) + epsilon / 2.0)).exp()
}

const B_CAP_MAX: f64 = 1_000_000.0;

/// Structure diagnostics over the top fraction of the family by `M(chi)`.
pub fn structure_report(q_max: u64, top_fraction: f64, epsilon: f64) -> Result<StructureReport> {
    if !(top_fraction > 0.0 && top_fraction <= 1.0) {
        return Err(Error::Domain("top fraction must lie in (0, 1]".into()));
    }
    let family = enumerate_cubic_primitive(q_max)?;
    let family_size = family.len() as u64;
    let mut profiles: Vec<(CharSumProfile, DirichletCharacter)> = family
        .par_iter()
        .map(|chi| msum_exact(chi).map(|p| (p, chi.clone())))
        .collect::<Result<Vec<_>>>()?;
    profiles
        .sort_by(|(pa, ca), (pb, cb)| pb.m.partial_cmp(&pa.m).unwrap().then_with(|| ca.cmp(cb)));
    let keep =
        ((top_fraction * profiles.len() as f64).ceil() as usize).clamp(1, profiles.len().max(1));
    profiles.truncate(keep);

    let ceiling = regime_ceiling(q_max, epsilon);
    let records: Vec<StructureRecord> = profiles
        .par_iter()
        .map(|(prof, chi)| structure_record(prof, chi, q_max, epsilon, ceiling))
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureReport {
        q_max,
        top_fraction,
        epsilon,
        z_policy: "max(Q^(21/40), 10 * lcm(q, m))".into(),
        family_size,
        records,
    })
}

/// `(log_2 Q)^beta (log_3 Q)^(-1/4 - eps)`: the stated ceiling of the
/// asymptotic regime (vacuously small at desk scale; reported, not enforced).
pub fn regime_ceiling(q_max: u64, epsilon: f64) -> f64 {
    let l2 = (q_max as f64).ln().ln();
    if l2 <= 1.0 {
        return f64::NAN;
    }
    let l3 = l2.ln();
    if l3 <= 0.0 {
        return f64::NAN;
    }
    l2.powf(BETA) * l3.powf(-0.25 - epsilon)
}

fn structure_record(
    prof: &CharSumProfile,
    chi: &DirichletCharacter,
    q_max: u64,
    epsilon: f64,
    ceiling: f64,
) -> Result<StructureRecord> {
    let v = prof.m;
    let degenerate_v = v <= 1.0;
    let y_raw = y_of_v(v, epsilon);
    // NaN (degenerate V) counts as clamped
    let y_clamped = y_raw.is_nan() || y_raw < 100.0;
    let y = if y_clamped { 100.0 } else { y_raw };

    let b_cap_raw = if v > 1.0 {
        (v / v.ln()).exp()
    } else {
        f64::NAN
    };
    let b_cap_clamped = b_cap_raw.is_nan() || b_cap_raw < 2.0 || b_cap_raw > B_CAP_MAX;
    let b_cap = if b_cap_raw.is_nan() || b_cap_raw < 2.0 {
        2.0
    } else {
        b_cap_raw.min(B_CAP_MAX)
    }
    .floor() as u64;

    let (a, b) = rational_approx(prof.alpha, b_cap);
    let fit: PretentiousFit = best_twist(chi, y)?;
    let z = default_z(q_max).max(10 * lcm(chi.modulus(), fit.m.max(1)));
    let product = CharProduct::new(chi, Some(&fit.xi));
    let lvalue_abs = match l_one_truncated(&product, fit.t, z) {
        Ok(l) => l.value().norm(),
        Err(Error::PoleAtOne) => f64::NAN,
        Err(e) => return Err(e),
    };
    let ratio = v * (fit.m as f64).sqrt() / lvalue_abs;
    Ok(StructureRecord {
        character: chi.id(),
        conductor: chi.modulus(),
        m_value: v,
        n_max: prof.n_max,
        alpha: prof.alpha,
        a,
        b,
        b_cap,
        y,
        xi: fit.xi.id(),
        xi_conductor: fit.m,
        xi_is_odd: fit.xi.parity() == Parity::Odd,
        t: fit.t,
        fit_value: fit.value,
        m_divides_b: fit.m != 0 && b % fit.m.max(1) == 0,
        lvalue_abs,
        ratio,
        y_clamped,
        b_cap_clamped,
        degenerate_v,
        below_regime_ceiling: ceiling.is_finite() && v <= ceiling,
    })
}

/// Family mean of `|L(1, chi conj(psi))|^{2r}` with exact per-character
/// L-values; reduction is fixed-order pairwise, so the result is independent
/// of evaluation order.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FamilyMoment {
    pub q_max: u64,
    pub psi: String,
    pub r: f64,
    pub family_size: u64,
    pub value: f64,
}

pub fn family_l_moment(q_max: u64, psi: &DirichletCharacter, r: f64) -> Result<FamilyMoment> {
    let family = enumerate_cubic_primitive(q_max)?;
    let family_size = family.len() as u64;
    if r == 0.0 {
        return Ok(FamilyMoment {
            q_max,
            psi: psi.id(),
            r,
            family_size,
            value: 1.0,
        });
    }
    let vals: Vec<f64> = family
        .par_iter()
        .map(|chi| {
            let product = CharProduct::new(chi, Some(psi));
            let z = 50_000u64.max(16 * lcm(chi.modulus(), psi.modulus()));
            l_one_truncated(&product, 0.0, z).map(|l| l.value().norm_sqr().powf(r))
        })
        .collect::<Result<Vec<_>>>()?;
    // family order is already deterministic; keep the reduction fixed
    let n = vals.len() as f64;
    let value = pairwise_sum(&vals) / n;
    Ok(FamilyMoment {
        q_max,
        psi: psi.id(),
        r,
        family_size,
        value,
    })
}

/// Single-point evaluation of the smooth symmetric sum
/// `sum_{1<=|n|<=Z, P+(n)<=y} chi(n) e(n alpha) / n`, used by the structure
/// diagnostics as the reconstruction proxy for `2 pi M(chi)`.
pub fn smooth_sum_at(chi: &DirichletCharacter, z: u64, y: f64, alpha: f64) -> Complex64 {
    let sieve = crate::sieve::Sieve::new(z as usize);
    let q = chi.modulus();
    let table = chi.complex_table();
    let minus_one = chi.eval_i64(-1).to_complex();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=z {
        if sieve.largest_prime_factor(n) as f64 > y {
            continue;
        }
        let v = table[(n % q) as usize];
        if v.re == 0.0 && v.im == 0.0 {
            continue;
        }
        let phase = TAU * (n as f64 * alpha).fract();
        let e = Complex64::new(phase.cos(), phase.sin());
        acc += v * e / n as f64;
        acc -= minus_one * v * e.conj() / n as f64;
    }
    acc
}
