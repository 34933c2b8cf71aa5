//! Dual codes and their minimum distance.
//!
//! The generator matrix of a code is a parity-check matrix of its dual, so
//! the dual distance is the size of the smallest set of generator columns
//! that is linearly dependent with all coefficients nonzero. The search walks
//! sizes `1, 2, ..., cap` and collects every dependency at the first size that
//! has one.

use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::code::{CodeError, Construction, Family, LinearCode, Provenance};
use crate::field::{Field, FieldError};
use crate::linalg;
use crate::parallel;
use crate::poly::inv_mod;
use crate::weights::{self, WeightError};

pub const DEFAULT_CAP: usize = 5;

/// Largest dual size `p^{n-k}` the enumeration cross-check will walk.
pub const DUAL_ENUMERATION_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("search cap must be at least 2, got {0}")]
    CapTooSmall(usize),
    #[error("code carries no provenance")]
    MissingProvenance,
    #[error("dual has {p}^{r} codewords, above the enumeration budget")]
    TooLargeToEnumerate { p: u32, r: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A set of generator columns with nonzero coefficients summing to zero,
/// normalized so the first coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Witness {
    pub columns: Vec<usize>,
    pub coeffs: Vec<u32>,
}

impl Witness {
    /// The dual codeword of length `n` this witness describes.
    pub fn to_vector(&self, n: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        for (&c, &a) in self.columns.iter().zip(&self.coeffs) {
            v[c] = a;
        }
        v
    }

    pub fn all_coefficients_equal(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualDistance {
    Exact(usize),
    /// No dependency among at most `cap` columns.
    ExceedsCap(usize),
}

impl DualDistance {
    pub fn exact(self) -> Option<usize> {
        match self {
            DualDistance::Exact(d) => Some(d),
            DualDistance::ExceedsCap(_) => None,
        }
    }
}

impl fmt::Display for DualDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualDistance::Exact(d) => write!(f, "{d}"),
            DualDistance::ExceedsCap(c) => write!(f, "exceeds cap {c}"),
        }
    }
}

impl Serialize for DualDistance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DualDistance::Exact(d) => s.serialize_u64(*d as u64),
            DualDistance::ExceedsCap(_) => s.serialize_str("exceeds cap"),
        }
    }
}

/// Weight-3 witnesses split by coefficient pattern (ternary `D2` codes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PatternSummary {
    pub all_equal: usize,
    pub mixed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualReport {
    pub n: usize,
    pub k_dual: usize,
    pub cap: usize,
    pub d_dual: DualDistance,
    pub witnesses: Vec<Witness>,
    pub pattern_summary: Option<PatternSummary>,
}

/// The dual `[n, n-k]` code: a basis of the null space of the generator.
pub fn dual_code(code: &LinearCode) -> Result<LinearCode, DualError> {
    let p = code.p();
    let n = code.n();
    let rows = if code.k() == 0 {
        (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect()
    } else {
        linalg::null_space(code.generator(), n, p)
    };
    let prov = code.provenance().map(|src| Provenance {
        construction: Construction::Dual(src.family()),
        p,
        m: src.m,
        e: src.e,
        field: src.field.clone(),
        expected_k: None,
        warnings: Vec::new(),
    });
    Ok(LinearCode::from_generator(p, n, rows, prov)?)
}

struct Columns {
    p: u32,
    cols: Vec<Vec<u32>>,
    /// normalized key -> (column index, scale) in increasing column order
    classes: HashMap<Vec<u32>, Vec<(usize, u32)>>,
}

/// Splits a nonzero vector as `scale * key` with the first nonzero entry of
/// `key` equal to 1.
fn normalize(v: &[u32], p: u32) -> Option<(Vec<u32>, u32)> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = u64::from(inv_mod(lead, p));
    let key = v.iter().map(|&x| (u64::from(x) * inv % u64::from(p)) as u32).collect();
    Some((key, lead))
}

fn combine(a: &[u32], b: &[u32], cb: u32, p: u32) -> Vec<u32> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((u64::from(x) + u64::from(cb) * u64::from(y)) % u64::from(p)) as u32)
        .collect()
}

fn neg_div(nu: u32, mu: u32, p: u32) -> u32 {
    // -(nu / mu)
    let q = u64::from(nu) * u64::from(inv_mod(mu, p)) % u64::from(p);
    ((u64::from(p) - q) % u64::from(p)) as u32
}

fn mul(a: u32, b: u32, p: u32) -> u32 {
    (u64::from(a) * u64::from(b) % u64::from(p)) as u32
}

impl Columns {
    fn new(code: &LinearCode) -> Self {
        let p = code.p();
        let cols: Vec<Vec<u32>> = (0..code.n()).map(|j| code.column(j)).collect();
        let mut classes: HashMap<Vec<u32>, Vec<(usize, u32)>> = HashMap::new();
        for (j, c) in cols.iter().enumerate() {
            if let Some((key, scale)) = normalize(c, p) {
                classes.entry(key).or_default().push((j, scale));
            }
        }
        Columns { p, cols, classes }
    }

    fn n(&self) -> usize {
        self.cols.len()
    }

    fn size_one(&self) -> Vec<Witness> {
        (0..self.n())
            .filter(|&j| self.cols[j].iter().all(|&x| x == 0))
            .map(|j| Witness {
                columns: vec![j],
                coeffs: vec![1],
            })
            .collect()
    }

    fn size_two(&self) -> Vec<Witness> {
        let mut out = Vec::new();
        for members in self.classes.values() {
            for (a, &(i, si)) in members.iter().enumerate() {
                for &(j, sj) in &members[a + 1..] {
                    out.push(Witness {
                        columns: vec![i, j],
                        coeffs: vec![1, neg_div(si, sj, self.p)],
                    });
                }
            }
        }
        out
    }

    /// Dependencies `col_i + b col_j + c col_l = 0` with `i < j < l`.
    fn size_three(&self, workers: usize) -> Vec<Witness> {
        let p = self.p;
        let firsts: Vec<usize> = (0..self.n()).collect();
        parallel::map_chunks(&firsts, workers, |chunk| {
            let mut out = Vec::new();
            for &i in chunk {
                for j in i + 1..self.n() {
                    for b in 1..p {
                        let w = combine(&self.cols[i], &self.cols[j], b, p);
                        let Some((key, nu)) = normalize(&w, p) else { continue };
                        let Some(members) = self.classes.get(&key) else {
                            continue;
                        };
                        for &(l, mu) in members.iter().filter(|&&(l, _)| l > j) {
                            out.push(Witness {
                                columns: vec![i, j, l],
                                coeffs: vec![1, b, neg_div(nu, mu, p)],
                            });
                        }
                    }
                }
            }
            out
        })
        .concat()
    }

    /// Dependencies among four columns, meeting in the middle on pair sums.
    fn size_four(&self, workers: usize) -> Vec<Witness> {
        let p = self.p;
        let n = self.n();
        // key -> (k, l, d, sigma) with col_k + d col_l = sigma * key
        type Pair = (usize, usize, u32, u32);
        let mut pairs: HashMap<Vec<u32>, Vec<Pair>> = HashMap::new();
        for k in 0..n {
            for l in k + 1..n {
                for d in 1..p {
                    let u = combine(&self.cols[k], &self.cols[l], d, p);
                    if let Some((key, sigma)) = normalize(&u, p) {
                        pairs.entry(key).or_default().push((k, l, d, sigma));
                    }
                }
            }
        }
        let firsts: Vec<usize> = (0..n).collect();
        parallel::map_chunks(&firsts, workers, |chunk| {
            let mut out = Vec::new();
            for &i in chunk {
                for j in i + 1..n {
                    for b in 1..p {
                        let w = combine(&self.cols[i], &self.cols[j], b, p);
                        let Some((key, nu)) = normalize(&w, p) else { continue };
                        let Some(entries) = pairs.get(&key) else { continue };
                        for &(k, l, d, sigma) in entries.iter().filter(|e| e.0 > j) {
                            let c = neg_div(nu, sigma, p);
                            out.push(Witness {
                                columns: vec![i, j, k, l],
                                coeffs: vec![1, b, c, mul(c, d, p)],
                            });
                        }
                    }
                }
            }
            out
        })
        .concat()
    }

    /// Generic search for `size >= 3`: every `(size-1)`-subset with leading
    /// coefficient 1, completed by a single proportional column.
    fn size_general(&self, size: usize, workers: usize) -> Vec<Witness> {
        let n = self.n();
        let firsts: Vec<usize> = (0..n).collect();
        parallel::map_chunks(&firsts, workers, |chunk| {
            let mut out = Vec::new();
            for &i in chunk {
                let mut cols = vec![i];
                let mut coeffs = vec![1];
                self.extend(size, &mut cols, &mut coeffs, self.cols[i].clone(), &mut out);
            }
            out
        })
        .concat()
    }

    fn extend(&self, size: usize, cols: &mut Vec<usize>, coeffs: &mut Vec<u32>, acc: Vec<u32>, out: &mut Vec<Witness>) {
        let p = self.p;
        let last = *cols.last().expect("nonempty");
        if cols.len() == size - 1 {
            let Some((key, nu)) = normalize(&acc, p) else { return };
            let Some(members) = self.classes.get(&key) else { return };
            for &(l, mu) in members.iter().filter(|&&(l, _)| l > last) {
                let mut c = cols.clone();
                c.push(l);
                let mut a = coeffs.clone();
                a.push(neg_div(nu, mu, p));
                out.push(Witness { columns: c, coeffs: a });
            }
            return;
        }
        for j in last + 1..self.n() {
            for b in 1..p {
                let next = combine(&acc, &self.cols[j], b, p);
                cols.push(j);
                coeffs.push(b);
                self.extend(size, cols, coeffs, next, out);
                cols.pop();
                coeffs.pop();
            }
        }
    }
}

/// Minimum distance of the dual of `code`, searched up to `cap` columns.
pub fn dual_min_distance(code: &LinearCode, cap: usize) -> Result<DualReport, DualError> {
    dual_min_distance_with_workers(code, cap, parallel::worker_count())
}

pub fn dual_min_distance_with_workers(code: &LinearCode, cap: usize, workers: usize) -> Result<DualReport, DualError> {
    if cap < 2 {
        return Err(DualError::CapTooSmall(cap));
    }
    let cols = Columns::new(code);
    let mut d_dual = DualDistance::ExceedsCap(cap);
    let mut witnesses = Vec::new();
    for size in 1..=cap.min(code.n()) {
        let mut found = match size {
            1 => cols.size_one(),
            2 => cols.size_two(),
            3 => cols.size_three(workers),
            4 => cols.size_four(workers),
            _ => cols.size_general(size, workers),
        };
        if !found.is_empty() {
            found.sort();
            witnesses = found;
            d_dual = DualDistance::Exact(size);
            break;
        }
    }
    let ternary_d2 = code.p() == 3
        && code.provenance().and_then(Provenance::family) == Some(Family::D2)
        && d_dual == DualDistance::Exact(3);
    let pattern_summary = ternary_d2.then(|| {
        let all_equal = witnesses.iter().filter(|w| w.all_coefficients_equal()).count();
        PatternSummary {
            all_equal,
            mixed: witnesses.len() - all_equal,
        }
    });
    Ok(DualReport {
        n: code.n(),
        k_dual: code.n() - code.k(),
        cap,
        d_dual,
        witnesses,
        pattern_summary,
    })
}

/// Minimum nonzero weight of the dual found by enumerating every dual
/// codeword, or `None` for the zero dual.
pub fn dual_min_distance_by_enumeration(code: &LinearCode) -> Result<Option<usize>, DualError> {
    let r = code.n() - code.k();
    let size = u64::from(code.p()).checked_pow(r as u32);
    if size.is_none_or(|s| s > DUAL_ENUMERATION_BUDGET) {
        return Err(DualError::TooLargeToEnumerate { p: code.p(), r });
    }
    let dual = dual_code(code)?;
    Ok(weights::weight_distribution(&dual)?.min_nonzero_weight())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    /// Short stable identifier, e.g. `dual-range`.
    pub id: &'static str,
    pub claim: String,
    pub holds: bool,
    pub detail: String,
}

fn verdict(id: &'static str, claim: &str, holds: bool, detail: String) -> TheoremVerdict {
    TheoremVerdict {
        id,
        claim: claim.to_string(),
        holds,
        detail,
    }
}

/// Checks the dual-distance statements that apply to the code's family.
///
/// `D1`: `2 <= d <= 4`, and `d = 3` when `p = 2, m >= 3`. `D2`: `3 <= d <= 4`
/// and no dual word of weight at most 2; for `p = 3` additionally that no
/// weight-3 witness has all coefficients equal, that every mixed witness
/// `c(x1 + x2) - c x3 = 0` has `(x2/x1)^{3^m - 1} = -1`, and that `d = 3`.
/// Other codes get an empty list.
pub fn verify_dual_theorems(code: &LinearCode, report: &DualReport) -> Result<Vec<TheoremVerdict>, DualError> {
    let prov = code.provenance().ok_or(DualError::MissingProvenance)?;
    let d = report.d_dual.exact();
    let p = code.p();
    let mut out = Vec::new();
    match prov.family() {
        Some(Family::D1) => {
            out.push(verdict(
                "dual-range",
                "2 <= d_dual <= 4",
                d.is_some_and(|d| (2..=4).contains(&d)),
                format!("d_dual = {}", report.d_dual),
            ));
            if p == 2 && prov.m.is_some_and(|m| m >= 3) {
                out.push(verdict(
                    "binary-d3",
                    "d_dual = 3 for p = 2, m >= 3",
                    d == Some(3),
                    format!("d_dual = {}", report.d_dual),
                ));
            }
        }
        Some(Family::D2) => {
            out.push(verdict(
                "dual-range",
                "3 <= d_dual <= 4",
                d.is_some_and(|d| (3..=4).contains(&d)),
                format!("d_dual = {}", report.d_dual),
            ));
            out.push(verdict(
                "no-weight-2",
                "no dual codeword of weight 1 or 2",
                d.is_none_or(|d| d > 2),
                format!("d_dual = {}", report.d_dual),
            ));
            if p == 3 {
                out.extend(ternary_d2_verdicts(prov, report)?);
            }
        }
        Some(Family::D1Bar) | None => {}
    }
    Ok(out)
}

fn ternary_d2_verdicts(prov: &Provenance, report: &DualReport) -> Result<Vec<TheoremVerdict>, DualError> {
    let desc = prov.field.as_ref().ok_or(DualError::MissingProvenance)?;
    let field = Field::from_descriptor(desc)?;
    let m = field.half_degree()?;
    let summary = report
        .pattern_summary
        .unwrap_or(PatternSummary { all_equal: 0, mixed: 0 });
    let minus_one = field.neg(field.one())?;
    let exponent = 3i64.pow(m) - 1;
    let mut bad = 0usize;
    let weight_three: Vec<&Witness> = report
        .witnesses
        .iter()
        .filter(|w| w.columns.len() == 3 && !w.all_coefficients_equal())
        .collect();
    for w in &weight_three {
        // the odd coefficient out marks x3
        let odd = (0..3)
            .find(|&t| w.coeffs[t] != w.coeffs[(t + 1) % 3] && w.coeffs[t] != w.coeffs[(t + 2) % 3])
            .expect("mixed ternary pattern");
        let pair: Vec<usize> = (0..3).filter(|&t| t != odd).collect();
        let x = |t: usize| field.exp(w.columns[t] as u64);
        let (x1, x2, x3) = (x(pair[0]), x(pair[1]), x(odd));
        let sum_ok = field.add(x1, x2)? == x3;
        let ratio = field.div(x2, x1)?;
        let pow_ok = field.pow(ratio, exponent)? == minus_one;
        if !(sum_ok && pow_ok) {
            bad += 1;
        }
    }
    Ok(vec![
        verdict(
            "no-all-equal",
            "no weight-3 witness with all coefficients equal",
            summary.all_equal == 0,
            format!("all-equal witnesses: {}", summary.all_equal),
        ),
        verdict(
            "mixed-structure",
            "mixed witnesses satisfy x3 = x1 + x2 and (x2/x1)^(3^m-1) = -1",
            bad == 0,
            format!("{} mixed witnesses, {bad} violations", weight_three.len()),
        ),
        verdict(
            "ternary-d3",
            "d_dual = 3 (all-equal patterns impossible, mixed patterns present)",
            report.d_dual == DualDistance::Exact(3) && summary.mixed > 0 && summary.all_equal == 0,
            format!("d_dual = {}, mixed = {}", report.d_dual, summary.mixed),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: u32, rows: Vec<Vec<u32>>) -> LinearCode {
        let n = rows[0].len();
        LinearCode::from_generator(p, n, rows, None).unwrap()
    }

    #[test]
    fn hamming_7_4_dual_is_simplex_like() {
        // parity-check matrix of the [7,4,3] Hamming code as a generator:
        // its dual is the Hamming code, distance 3
        let h = code(
            2,
            vec![
                vec![1, 0, 1, 0, 1, 0, 1],
                vec![0, 1, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
        );
        let r = dual_min_distance(&h, 5).unwrap();
        assert_eq!(r.d_dual, DualDistance::Exact(3));
        assert_eq!(r.witnesses.len(), 7);
        assert_eq!(r.k_dual, 4);
        assert_eq!(dual_min_distance_by_enumeration(&h).unwrap(), Some(3));
    }

    #[test]
    fn zero_and_proportional_columns() {
        let c = code(3, vec![vec![1, 0, 2]]);
        let r = dual_min_distance(&c, 5).unwrap();
        assert_eq!(r.d_dual, DualDistance::Exact(1));
        assert_eq!(
            r.witnesses,
            vec![Witness {
                columns: vec![1],
                coeffs: vec![1]
            }]
        );
        let c = code(3, vec![vec![1, 2]]);
        let r = dual_min_distance(&c, 5).unwrap();
        assert_eq!(r.d_dual, DualDistance::Exact(2));
        // 1*1 + 1*2 = 0 mod 3
        assert_eq!(r.witnesses[0].coeffs, vec![1, 1]);
    }

    #[test]
    fn identity_exceeds_cap() {
        let c = code(5, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let r = dual_min_distance(&c, 5).unwrap();
        assert_eq!(r.d_dual, DualDistance::ExceedsCap(5));
        assert_eq!(dual_code(&c).unwrap().k(), 0);
        assert_eq!(dual_min_distance(&c, 1).unwrap_err(), DualError::CapTooSmall(1));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["d_dual"], "exceeds cap");
    }

    #[test]
    fn size_four_and_five_paths() {
        // repetition-like parity checks: the dual of the [5,1] repetition code
        // generator has distance 2; use a generator whose columns are a
        // 4-circuit: e1, e2, e3, e1+e2+e3 over F_2
        let c = code(2, vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
        let r = dual_min_distance(&c, 5).unwrap();
        assert_eq!(r.d_dual, DualDistance::Exact(4));
        assert_eq!(r.witnesses.len(), 1);
        let c = code(
            3,
            vec![
                vec![1, 0, 0, 0, 1],
                vec![0, 1, 0, 0, 1],
                vec![0, 0, 1, 0, 1],
                vec![0, 0, 0, 1, 1],
            ],
        );
        let r = dual_min_distance(&c, 5).unwrap();
        assert_eq!(r.d_dual, DualDistance::Exact(5));
        assert_eq!(
            r.witnesses,
            vec![Witness {
                columns: vec![0, 1, 2, 3, 4],
                coeffs: vec![1, 1, 1, 1, 2]
            }]
        );
        assert_eq!(dual_min_distance_by_enumeration(&c).unwrap(), Some(5));
    }

    #[test]
    fn missing_provenance() {
        let c = code(2, vec![vec![1, 1]]);
        let r = dual_min_distance(&c, 5).unwrap();
        assert_eq!(verify_dual_theorems(&c, &r).unwrap_err(), DualError::MissingProvenance);
    }
}
