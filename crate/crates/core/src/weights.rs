//! Weight distributions: exhaustive enumeration, closed-form predictions,
//! Pless power moments and the `w_min / w_max` ratio test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{d1_size_formula, Family, LinearCode};
use crate::parallel;

/// Largest number of codewords enumerated.
pub const ENUMERATION_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("enumerating {p}^{k} codewords exceeds the budget of 2^24")]
    BudgetExceeded { p: u32, k: usize },
    #[error("e = {e} does not divide m = {m}")]
    EDoesNotDivideM { e: u32, m: u32 },
    #[error("the two-weight tables require e < m (got e = {e}, m = {m})")]
    EqualsHalfDegree { e: u32, m: u32 },
    #[error("family {0:?} needs a value for e")]
    MissingE(Family),
    #[error("m must be at least 1")]
    ZeroM,
    #[error("parameters overflow 64-bit arithmetic")]
    Overflow,
    #[error("the code has no nonzero codeword")]
    ZeroCode,
    #[error("power moments need dimension k >= 1")]
    ZeroDimension,
}

/// Exact weight distribution `w -> A_w`, including `A_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, w: usize) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }

    /// Nonzero weights with positive multiplicity.
    pub fn nonzero_weights(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .filter(|&(&w, &a)| w > 0 && a > 0)
            .map(|(&w, &a)| (w, a))
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.nonzero_weights().map(|(w, _)| w).next()
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.nonzero_weights().map(|(w, _)| w).last()
    }

    /// Two-column CSV `weight,multiplicity` sorted by weight.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(["weight", "multiplicity"]).expect("csv");
        for (weight, count) in &self.counts {
            w.serialize((weight, count)).expect("csv");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

fn check_budget(code: &LinearCode) -> Result<u64, WeightError> {
    let total = u64::from(code.p())
        .checked_pow(code.k() as u32)
        .filter(|&t| t <= ENUMERATION_BUDGET)
        .ok_or(WeightError::BudgetExceeded {
            p: code.p(),
            k: code.k(),
        })?;
    Ok(total)
}

/// Enumerates all `p^k` codewords.
pub fn weight_distribution(code: &LinearCode) -> Result<WeightDistribution, WeightError> {
    weight_distribution_with_workers(code, parallel::worker_count())
}

/// As [`weight_distribution`], with an explicit worker count. The result does
/// not depend on `workers`.
pub fn weight_distribution_with_workers(code: &LinearCode, workers: usize) -> Result<WeightDistribution, WeightError> {
    check_budget(code)?;
    let p = code.p();
    let k = code.k();
    let n = code.n();
    // Split on the top `prefix_len` message digits; each worker walks the
    // remaining digits with a p-ary Gray code.
    let mut prefix_len = 0;
    while prefix_len < k && (p as usize).pow(prefix_len as u32) < workers.max(1) {
        prefix_len += 1;
    }
    let prefixes: Vec<u64> = (0..u64::from(p).pow(prefix_len as u32)).collect();
    let partials = parallel::map_chunks(&prefixes, workers, |chunk| {
        let mut hist = vec![0u64; n + 1];
        for &prefix in chunk {
            walk_suffix(code, prefix, prefix_len, &mut hist);
        }
        hist
    });
    let mut hist = vec![0u64; n + 1];
    for part in partials {
        for (h, x) in hist.iter_mut().zip(part) {
            *h += x;
        }
    }
    let counts = hist.into_iter().enumerate().filter(|&(_, a)| a > 0).collect();
    Ok(WeightDistribution { n, k, p, counts })
}

/// Adds the weights of all codewords whose top `prefix_len` message digits
/// spell `prefix` (most significant digit = last generator row).
fn walk_suffix(code: &LinearCode, prefix: u64, prefix_len: usize, hist: &mut [u64]) {
    let p = code.p();
    let k = code.k();
    let gen = code.generator();
    let free = k - prefix_len;
    let mut word = vec![0u32; code.n()];
    let mut rest = prefix;
    for row in gen[free..].iter() {
        let digit = (rest % u64::from(p)) as u32;
        rest /= u64::from(p);
        add_scaled(&mut word, row, digit, p);
    }
    let mut weight = word.iter().filter(|&&x| x != 0).count();
    hist[weight] += 1;
    // Modular p-ary Gray code: step t bumps digit v_p(t) by one, i.e. adds
    // that generator row once.
    let steps = u64::from(p).pow(free as u32);
    for t in 1..steps {
        let mut j = 0;
        let mut tt = t;
        while tt % u64::from(p) == 0 {
            tt /= u64::from(p);
            j += 1;
        }
        for (x, &g) in word.iter_mut().zip(&gen[j]) {
            if g == 0 {
                continue;
            }
            let was_zero = *x == 0;
            let mut y = *x + g;
            if y >= p {
                y -= p;
            }
            *x = y;
            match (was_zero, y == 0) {
                (true, false) => weight += 1,
                (false, true) => weight -= 1,
                _ => {}
            }
        }
        hist[weight] += 1;
    }
}

fn add_scaled(word: &mut [u32], row: &[u32], c: u32, p: u32) {
    if c == 0 {
        return;
    }
    for (x, &g) in word.iter_mut().zip(row) {
        *x = ((u64::from(*x) + u64::from(c) * u64::from(g)) % u64::from(p)) as u32;
    }
}

fn pow(p: u64, e: u32) -> Result<u64, WeightError> {
    p.checked_pow(e).ok_or(WeightError::Overflow)
}

/// The distribution the closed-form tables predict for a family.
///
/// For `D2` the multiplicity of `p^{2m-1}(p-1) - p^{m-1}` is taken as the
/// complement `p^{3m} - 1 - A_{w1} - A_{w2}`; see
/// [`d2_printed_third_multiplicity`] for the formula as printed.
pub fn predicted_distribution(
    family: Family,
    p: u32,
    m: u32,
    e: Option<u32>,
) -> Result<WeightDistribution, WeightError> {
    if m == 0 {
        return Err(WeightError::ZeroM);
    }
    let pp = u64::from(p);
    let mut counts = BTreeMap::from([(0usize, 1u64)]);
    let (n, k) = match family {
        Family::D1 | Family::D1Bar => {
            let e = e.ok_or(WeightError::MissingE(family))?;
            if e == 0 || !m.is_multiple_of(e) {
                return Err(WeightError::EDoesNotDivideM { e, m });
            }
            if e == m {
                return Err(WeightError::EqualsHalfDegree { e, m });
            }
            let q = pow(pp, 2 * m)?;
            let w1 = pow(pp, 2 * m - e)? - pow(pp, 2 * m - e - 1)?;
            let w2 = (pow(pp, 2 * m - e - 1)? - pow(pp, m - 1)?) * (pp - 1);
            let a1 = pow(pp, 2 * m - e)? - (pow(pp, e)? - 1) * pow(pp, m - e)? - 1;
            let a2 = (pow(pp, e)? - 1) * (q + pow(pp, m)?) / pow(pp, e)?;
            let n = d1_size_formula(p, m, e);
            let div = if family == Family::D1Bar { pp - 1 } else { 1 };
            counts.insert((w1 / div) as usize, a1);
            *counts.entry((w2 / div) as usize).or_insert(0) += a2;
            ((n / div) as usize, 2 * m as usize)
        }
        Family::D2 => {
            let n = pow(pp, 2 * m)? - 1;
            let w1 = pow(pp, 2 * m - 1)? * (pp - 1);
            let w2 = (pow(pp, 2 * m - 1)? + pow(pp, m - 1)?) * (pp - 1);
            let w3 = pow(pp, 2 * m - 1)? * (pp - 1) - pow(pp, m - 1)?;
            let a1 = n;
            let a2 = pow(pp, m - 1)? * (pow(pp, m)? - 1) * (pow(pp, m)? - pp + 1);
            let a3 = pow(pp, 3 * m)? - 1 - a1 - a2;
            for (w, a) in [(w1, a1), (w2, a2), (w3, a3)] {
                *counts.entry(w as usize).or_insert(0) += a;
            }
            (n as usize, 3 * m as usize)
        }
    };
    counts.retain(|_, a| *a > 0);
    Ok(WeightDistribution { n, k, p, counts })
}

/// The third multiplicity of the three-weight table as printed,
/// `(p^m - 1)(p - 1)(p^{2m} - 1)`. It is inconsistent with the total count
/// `p^{3m}`; kept only so the discrepancy can be reported.
pub fn d2_printed_third_multiplicity(p: u32, m: u32) -> u64 {
    let p = u64::from(p);
    (p.pow(m) - 1) * (p - 1) * (p.pow(2 * m) - 1)
}

/// Residuals of the first three Pless power moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerMomentResiduals {
    pub r0: i128,
    pub r1: i128,
    pub r2: i128,
}

impl PowerMomentResiduals {
    pub fn all_zero(&self) -> bool {
        self.r0 == 0 && self.r1 == 0 && self.r2 == 0
    }
}

/// `r0 = Σ A_w - (p^k - 1)`, `r1 = Σ w A_w - p^{k-1} n (p-1)`,
/// `r2 = Σ w² A_w - p^{k-2} n (p-1)(np - n + 1)`, sums over `w > 0`.
///
/// For `k = 1` the second-moment target is not an integer in general, so
/// `r2` is reported multiplied by `p` (its zero set is unchanged).
pub fn power_moment_residuals(dist: &WeightDistribution) -> Result<PowerMomentResiduals, WeightError> {
    if dist.k == 0 {
        return Err(WeightError::ZeroDimension);
    }
    let p = i128::from(dist.p);
    let n = dist.n as i128;
    let k = dist.k as u32;
    let (mut s0, mut s1, mut s2) = (0i128, 0i128, 0i128);
    for (w, a) in dist.nonzero_weights() {
        let (w, a) = (w as i128, i128::from(a));
        s0 += a;
        s1 += w * a;
        s2 += w * w * a;
    }
    let r0 = s0 - (p.pow(k) - 1);
    let r1 = s1 - p.pow(k - 1) * n * (p - 1);
    let second = n * (p - 1) * (n * p - n + 1);
    let r2 = if k >= 2 {
        s2 - p.pow(k - 2) * second
    } else {
        p * s2 - second
    };
    Ok(PowerMomentResiduals { r0, r1, r2 })
}

/// Outcome of the `w_min / w_max > (p-1)/p` test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioVerdict {
    pub w_min: usize,
    pub w_max: usize,
    /// `w_min / w_max` in lowest terms.
    pub ratio: (u64, u64),
    pub threshold: (u64, u64),
    pub passes: bool,
}

/// Compares `w_min / w_max` with `(p-1)/p` exactly by cross-multiplication.
pub fn wmin_wmax_check(dist: &WeightDistribution) -> Result<RatioVerdict, WeightError> {
    let (Some(w_min), Some(w_max)) = (dist.min_nonzero_weight(), dist.max_weight()) else {
        return Err(WeightError::ZeroCode);
    };
    let p = u64::from(dist.p);
    let g = num_integer::gcd(w_min as u64, w_max as u64);
    Ok(RatioVerdict {
        w_min,
        w_max,
        ratio: (w_min as u64 / g, w_max as u64 / g),
        threshold: (p - 1, p),
        passes: u128::from(w_min as u64) * u128::from(p) > u128::from(w_max as u64) * u128::from(p - 1),
    })
}
