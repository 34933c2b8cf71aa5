//! Griesmer and sphere-packing bounds, and the optimality labels built on
//! them.
//!
//! A code `[n, k, d]_q` is labelled *Griesmer-optimal* when `d` is the
//! largest distance the Griesmer bound admits at length `n`, and
//! *Griesmer-almost-optimal* when `d + 1` is.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("minimum distance must be positive")]
    ZeroDistance,
    #[error("length {n} is smaller than dimension {k}")]
    LengthBelowDimension { n: u64, k: u64 },
    #[error("field size must be at least 2")]
    FieldSize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    GriesmerOptimal,
    GriesmerAlmostOptimal,
    WithinHamming,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub q: u64,
    pub griesmer_min_length: u64,
    pub griesmer_max_d: u64,
    pub hamming_max_d: u64,
    pub labels: Vec<Label>,
}

impl BoundVerdict {
    pub fn has(&self, label: Label) -> bool {
        self.labels.contains(&label)
    }
}

/// `sum_{i<k} ceil(d / q^i)`.
pub fn griesmer_min_length(k: u64, d: u64, q: u64) -> Result<u64, BoundsError> {
    if k == 0 {
        return Err(BoundsError::ZeroDimension);
    }
    if d == 0 {
        return Err(BoundsError::ZeroDistance);
    }
    if q < 2 {
        return Err(BoundsError::FieldSize);
    }
    let mut total = 0u64;
    let mut qi: Option<u64> = Some(1);
    for _ in 0..k {
        // once q^i >= d every remaining term is 1
        total += match qi {
            Some(v) => d.div_ceil(v),
            None => 1,
        };
        qi = qi.and_then(|v| v.checked_mul(q));
    }
    Ok(total)
}

/// Largest `d` with `griesmer_min_length(k, d, q) <= n`.
pub fn griesmer_max_d(n: u64, k: u64, q: u64) -> Result<u64, BoundsError> {
    if k == 0 {
        return Err(BoundsError::ZeroDimension);
    }
    if n < k {
        return Err(BoundsError::LengthBelowDimension { n, k });
    }
    // d = 1 always fits (length k); the bound is at least d, so d <= n
    let (mut lo, mut hi) = (1u64, n);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if griesmer_min_length(k, mid, q)? <= n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

fn binomial(n: u64, r: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Hamming ball volume `sum_{i<=t} C(n, i) (q-1)^i`.
pub fn hamming_volume(n: u64, t: u64, q: u64) -> BigUint {
    (0..=t.min(n))
        .map(|i| binomial(n, i) * BigUint::from(q - 1).pow(i as u32))
        .sum()
}

/// Largest `d` such that balls of radius `floor((d-1)/2)` pack into
/// `q^{n-k}`, capped by the Singleton bound `n - k + 1`.
pub fn hamming_max_d(n: u64, k: u64, q: u64) -> Result<u64, BoundsError> {
    if k == 0 {
        return Err(BoundsError::ZeroDimension);
    }
    if n < k {
        return Err(BoundsError::LengthBelowDimension { n, k });
    }
    if q < 2 {
        return Err(BoundsError::FieldSize);
    }
    let space = BigUint::from(q).pow((n - k) as u32);
    let mut t = 0;
    while t < n && hamming_volume(n, t + 1, q) <= space {
        t += 1;
    }
    Ok((2 * t + 2).min(n - k + 1))
}

pub fn bound_verdict(n: u64, k: u64, d: u64, q: u64) -> Result<BoundVerdict, BoundsError> {
    let griesmer_min_length = griesmer_min_length(k, d, q)?;
    let griesmer_max_d = griesmer_max_d(n, k, q)?;
    let hamming_max_d = hamming_max_d(n, k, q)?;
    let mut labels = Vec::new();
    if d == griesmer_max_d {
        labels.push(Label::GriesmerOptimal);
    }
    if d + 1 == griesmer_max_d {
        labels.push(Label::GriesmerAlmostOptimal);
    }
    if d <= hamming_max_d {
        labels.push(Label::WithinHamming);
    }
    Ok(BoundVerdict {
        n,
        k,
        d,
        q,
        griesmer_min_length,
        griesmer_max_d,
        hamming_max_d,
        labels,
    })
}
