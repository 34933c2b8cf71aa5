//! Exact additive character sums over F_{p^{2m}}.
//!
//! A sum `Σ ζ_p^{f(x)}` is stored as the histogram of exponents
//! `(a_0, ..., a_{p-1})`, i.e. the cyclotomic integer `Σ a_j ζ^j`. Since
//! `1 + ζ + ... + ζ^{p-1} = 0`, histograms differing by a constant vector
//! are equal; the canonical form has minimum entry zero.
//!
//! All quantities here are computed by exhaustive summation and compared
//! against their closed forms:
//!
//! * the Weil-type sum `Σ_x ζ^{Tr^m_1(λ x^{p^m+1}) + Tr^{2m}_1(β x)}`
//!   against `-p^m ζ^{Tr^m_1(-λ^{-1} β^{p^m+1})}`;
//! * `A = Σ_{λ ∈ F_{p^e}*} Σ_x ζ^{Tr^m_1(λ x^{p^m+1})} = -(p^e - 1) p^m`;
//! * `B = Σ_{λ, y ∈ F_p*, x} ζ^{Tr^m_1(λ x^{p^m+1}) + Tr(y β x)}`, which is
//!   `-(p-1)(p^e-1)p^m` or `(p-1)p^m` depending on whether
//!   `Tr^m_e(β^{p^m+1})` vanishes;
//! * `N_β = (q + A + B) / p^{e+1} - 1`, the number of `x ∈ D1` with
//!   `Tr(β x) = 0`, so that `wt(c_β) = |D1| - N_β`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::code::{self, CodeError, LinearCode};
use crate::field::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharSumError {
    #[error("expected {expected} exponent counts, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("lambda must lie in F_{{p^{0}}}")]
    LambdaOutsideSubfield(u32),
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("e = {e} does not divide m = {m}")]
    EDoesNotDivideM { e: u32, m: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// An element of Z[ζ_p] as a canonical exponent histogram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicInteger {
    p: u32,
    counts: Vec<i64>,
}

impl CyclotomicInteger {
    /// Canonicalizes `raw` by subtracting its minimum entry.
    pub fn from_counts(p: u32, raw: &[i64]) -> Result<Self, CharSumError> {
        if raw.len() != p as usize {
            return Err(CharSumError::LengthMismatch {
                expected: p as usize,
                got: raw.len(),
            });
        }
        let min = raw.iter().copied().min().unwrap_or(0);
        Ok(CyclotomicInteger {
            p,
            counts: raw.iter().map(|&a| a - min).collect(),
        })
    }

    /// `c ζ^t`.
    pub fn monomial(p: u32, c: i64, t: u32) -> Self {
        let mut raw = vec![0i64; p as usize];
        raw[(t % p) as usize] = c;
        Self::from_counts(p, &raw).expect("length p")
    }

    pub fn from_integer(p: u32, c: i64) -> Self {
        Self::monomial(p, c, 0)
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&a| a == 0)
    }

    /// The rational integer this sum equals, if it is one: exactly when
    /// `a_1 = ... = a_{p-1}`, and then the value is `a_0 - a_1`.
    pub fn as_integer(&self) -> Option<i64> {
        let rest = &self.counts[1..];
        match rest.first() {
            None => Some(self.counts[0]),
            Some(&a1) => rest.iter().all(|&a| a == a1).then_some(self.counts[0] - a1),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let raw: Vec<i64> = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        Self::from_counts(self.p, &raw).expect("same length")
    }
}

/// Which trace the quadratic term of the Weil-type sum uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadraticTrace {
    /// `Tr^m_1(λ x^{p^m+1})`, the trace down from the half field.
    Half,
    /// `Tr^{2m}_1(λ x^{p^m+1})`, the trace down from the whole field.
    Full,
}

/// Per-field tables shared by the exhaustive sums.
struct Tables<'a> {
    field: &'a Field,
    p: u32,
    m: u32,
    /// `x^{p^m+1}` by element index
    norms: Vec<u32>,
}

impl<'a> Tables<'a> {
    fn new(field: &'a Field) -> Result<Self, CharSumError> {
        let m = field.half_degree()?;
        let p = field.characteristic();
        let exponent = u64::from(p).pow(m) + 1;
        let norms = (0..field.order()).map(|x| field.pow_raw(x, exponent)).collect();
        Ok(Tables { field, p, m, norms })
    }

    fn quadratic(&self, lambda: u32, x: u32, which: QuadraticTrace) -> u32 {
        let y = self.field.mul_raw(lambda, self.norms[x as usize]);
        match which {
            QuadraticTrace::Half => self.field.subfield_trace_raw(y, self.m, 1),
            QuadraticTrace::Full => self.field.trace_raw(y),
        }
    }

    /// `Tr(β x)` for every `x`, by element index.
    fn linear(&self, beta: u32) -> Vec<u32> {
        (0..self.field.order())
            .map(|x| self.field.trace_raw(self.field.mul_raw(beta, x)))
            .collect()
    }

    /// `Tr^m_1(λ x^{p^m+1})` for every `x`.
    fn quadratic_row(&self, lambda: u32, which: QuadraticTrace) -> Vec<u32> {
        (0..self.field.order())
            .map(|x| self.quadratic(lambda, x, which))
            .collect()
    }

    fn subfield_units(&self, e: u32) -> Vec<u32> {
        let field = self.field;
        let sub = u64::from(self.p).pow(e) - 1;
        let step = (u64::from(field.order()) - 1) / sub;
        (0..sub).map(|j| field.exp_raw(j * step)).collect()
    }

    fn histogram(&self, exps: impl Iterator<Item = u32>) -> CyclotomicInteger {
        let mut raw = vec![0i64; self.p as usize];
        for t in exps {
            raw[(t % self.p) as usize] += 1;
        }
        CyclotomicInteger::from_counts(self.p, &raw).expect("length p")
    }
}

fn check_e(field: &Field, e: u32) -> Result<u32, CharSumError> {
    let m = field.half_degree()?;
    if e == 0 || m % e != 0 {
        return Err(CharSumError::EDoesNotDivideM { e, m });
    }
    Ok(m)
}

fn check_lambda(field: &Field, lambda: FieldElement, m: u32) -> Result<(), CharSumError> {
    if lambda.is_zero() {
        return Err(CharSumError::ZeroLambda);
    }
    if !field.in_subfield(lambda, m)? {
        return Err(CharSumError::LambdaOutsideSubfield(m));
    }
    Ok(())
}

/// Exhaustive Weil-type sum `Σ_{x ∈ F_q} ζ^{T(λ x^{p^m+1}) + Tr(β x)}`,
/// with `T` selected by `which`. `λ` must be a nonzero element of F_{p^m}.
pub fn weil_sum(
    field: &Field,
    lambda: FieldElement,
    beta: FieldElement,
    which: QuadraticTrace,
) -> Result<CyclotomicInteger, CharSumError> {
    let tables = Tables::new(field)?;
    check_lambda(field, lambda, tables.m)?;
    // validates beta's field
    field.trace(beta)?;
    let (l, b) = (lambda.index(), beta.index());
    Ok(tables
        .histogram((0..field.order()).map(|x| tables.quadratic(l, x, which) + field.trace_raw(field.mul_raw(b, x)))))
}

/// Closed form `-p^m ζ^{Tr^m_1(-λ^{-1} β^{p^m+1})}`.
pub fn weil_closed_form(
    field: &Field,
    lambda: FieldElement,
    beta: FieldElement,
) -> Result<CyclotomicInteger, CharSumError> {
    let m = field.half_degree()?;
    check_lambda(field, lambda, m)?;
    let p = field.characteristic();
    let arg = field.mul(field.neg(field.inv(lambda)?)?, field.norm_to_half(beta)?)?;
    let t = field.subfield_trace(arg, m, 1)?.index();
    Ok(CyclotomicInteger::monomial(p, -(i64::from(p).pow(m)), t))
}

/// Result of the exhaustive `A` sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumAReport {
    pub value: Option<i64>,
    pub expected: i64,
    /// `(q + A) / p^e - 1`, when the division is exact.
    pub n1_from_sum: Option<i64>,
    pub d1_size: usize,
}

impl SumAReport {
    pub fn holds(&self) -> bool {
        self.value == Some(self.expected) && self.n1_from_sum == Some(self.d1_size as i64)
    }
}

/// `A = Σ_{λ ∈ F_{p^e}*} Σ_{x ∈ F_q} ζ^{Tr^m_1(λ x^{p^m+1})}` by exhaustive
/// summation, together with `n1 = (q + A)/p^e - 1` and `|D1|`.
pub fn sum_a(field: &Arc<Field>, e: u32) -> Result<SumAReport, CharSumError> {
    let m = check_e(field, e)?;
    let tables = Tables::new(field)?;
    let p = i64::from(field.characteristic());
    let mut total = CyclotomicInteger::from_integer(field.characteristic(), 0);
    for lambda in tables.subfield_units(e) {
        let row = tables.quadratic_row(lambda, QuadraticTrace::Half);
        total = total.add(&tables.histogram(row.into_iter()));
    }
    let value = total.as_integer();
    let pe = p.pow(e);
    let q = i64::from(field.order());
    let n1_from_sum = value.and_then(|a| ((q + a) % pe == 0).then(|| (q + a) / pe - 1));
    Ok(SumAReport {
        value,
        expected: -(pe - 1) * p.pow(m),
        n1_from_sum,
        d1_size: code::defining_set_d1(field, e)?.len(),
    })
}

/// Whether `Tr^m_e(β^{p^m+1}) = 0`.
pub fn trace_condition(field: &Field, e: u32, beta: FieldElement) -> Result<bool, CharSumError> {
    let m = check_e(field, e)?;
    let norm = field.norm_to_half(beta)?;
    Ok(field.subfield_trace(norm, m, e)?.is_zero())
}

/// Closed-form value of `B` for the given trace condition.
pub fn sum_b_expected(p: u32, m: u32, e: u32, condition: bool) -> i64 {
    let p = i64::from(p);
    if condition {
        -(p - 1) * (p.pow(e) - 1) * p.pow(m)
    } else {
        (p - 1) * p.pow(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumBReport {
    pub value: Option<i64>,
    pub trace_condition: bool,
    pub expected: i64,
}

impl SumBReport {
    pub fn holds(&self) -> bool {
        self.value == Some(self.expected)
    }
}

/// `B` for one nonzero `β`, by exhaustive triple summation.
pub fn sum_b(field: &Field, e: u32, beta: FieldElement) -> Result<SumBReport, CharSumError> {
    let m = check_e(field, e)?;
    if beta.is_zero() {
        return Err(CharSumError::ZeroBeta);
    }
    let tables = Tables::new(field)?;
    let quad: Vec<Vec<u32>> = tables
        .subfield_units(e)
        .into_iter()
        .map(|l| tables.quadratic_row(l, QuadraticTrace::Half))
        .collect();
    let lin = tables.linear(beta.index());
    let value = sum_b_from_rows(&tables, &quad, &lin).as_integer();
    let condition = trace_condition(field, e, beta)?;
    Ok(SumBReport {
        value,
        trace_condition: condition,
        expected: sum_b_expected(field.characteristic(), m, e, condition),
    })
}

fn sum_b_from_rows(tables: &Tables<'_>, quad: &[Vec<u32>], lin: &[u32]) -> CyclotomicInteger {
    let p = tables.p;
    let mut total = CyclotomicInteger::from_integer(p, 0);
    for row in quad {
        for y in 1..p {
            total = total.add(&tables.histogram(row.iter().zip(lin).map(|(&a, &t)| a + y * t)));
        }
    }
    total
}

/// One verification row for a nonzero `β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NBetaRow {
    pub beta_log: u32,
    pub trace_condition: bool,
    #[serde(rename = "B")]
    pub b: Option<i64>,
    #[serde(rename = "N_beta")]
    pub n_beta: usize,
    /// `(q + A + B) / p^{e+1} - 1`, when integral.
    #[serde(skip)]
    pub n_beta_formula: Option<i64>,
    /// Weight of the encoded codeword `c_β`, when the `D1` code exists.
    pub weight: Option<usize>,
    pub ok: bool,
}

/// Lemma checks for a single `(field, e)` over every nonzero `β` and every
/// `λ ∈ F_{p^e}*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub p: u32,
    pub m: u32,
    pub e: u32,
    pub weil_checks: usize,
    pub weil_failures_half: usize,
    pub weil_failures_full: usize,
    pub sum_a: SumAReport,
    pub b_failures: usize,
    pub n_beta_failures: usize,
    /// Distinct values of `B` observed, keyed by the trace condition.
    pub b_values: Vec<(bool, i64)>,
    pub rows: Vec<NBetaRow>,
}

impl SweepReport {
    pub fn all_hold(&self) -> bool {
        self.weil_failures_half == 0 && self.sum_a.holds() && self.b_failures == 0 && self.n_beta_failures == 0
    }
}

/// `N_β` for one nonzero `β`: direct count, formula and codeword weight.
pub fn n_beta(field: &Arc<Field>, e: u32, beta: FieldElement) -> Result<NBetaRow, CharSumError> {
    if beta.is_zero() {
        return Err(CharSumError::ZeroBeta);
    }
    let ctx = SweepContext::new(field, e)?;
    Ok(ctx.row(beta.index()))
}

struct SweepContext<'a> {
    tables: Tables<'a>,
    e: u32,
    quad: Vec<Vec<u32>>,
    in_d1: Vec<bool>,
    a: SumAReport,
    code: Option<LinearCode>,
}

impl<'a> SweepContext<'a> {
    fn new(field: &'a Arc<Field>, e: u32) -> Result<Self, CharSumError> {
        let m = check_e(field, e)?;
        let tables = Tables::new(field)?;
        let quad = tables
            .subfield_units(e)
            .into_iter()
            .map(|l| tables.quadratic_row(l, QuadraticTrace::Half))
            .collect();
        let in_d1 = (0..field.order())
            .map(|x| x != 0 && field.subfield_trace_raw(tables.norms[x as usize], m, e) == 0)
            .collect();
        let a = sum_a(field, e)?;
        let d1 = code::defining_set_d1(field, e)?;
        let code = if d1.is_empty() {
            None
        } else {
            Some(code::code_from_defining_set(&d1)?)
        };
        Ok(SweepContext {
            tables,
            e,
            quad,
            in_d1,
            a,
            code,
        })
    }

    fn row(&self, beta: u32) -> NBetaRow {
        let field = self.tables.field;
        let p = i64::from(self.tables.p);
        let m = self.tables.m;
        let lin = self.tables.linear(beta);
        let b = sum_b_from_rows(&self.tables, &self.quad, &lin).as_integer();
        let condition = {
            let norm = self.tables.norms[beta as usize];
            field.subfield_trace_raw(norm, m, self.e) == 0
        };
        let count = (1..field.order() as usize)
            .filter(|&x| self.in_d1[x] && lin[x] == 0)
            .count();
        let q = i64::from(field.order());
        let denom = p.pow(self.e + 1);
        let formula = match (self.a.value, b) {
            (Some(a), Some(b)) if (q + a + b) % denom == 0 => Some((q + a + b) / denom - 1),
            _ => None,
        };
        let weight = self.code.as_ref().map(|c| {
            let msg = field.coeffs(field.from_index(u64::from(beta)).expect("valid index"));
            c.encode(&msg)
                .expect("message length is s")
                .iter()
                .filter(|&&x| x != 0)
                .count()
        });
        let n1 = self.a.d1_size;
        let b_ok = b == Some(sum_b_expected(self.tables.p, m, self.e, condition));
        let ok = b_ok && formula == Some(count as i64) && weight.map_or(n1 == 0 && count == 0, |w| w + count == n1);
        NBetaRow {
            beta_log: field.log_raw(beta),
            trace_condition: condition,
            b,
            n_beta: count,
            n_beta_formula: formula,
            weight,
            ok,
        }
    }
}

/// Runs every lemma check for `(field, e)`: the Weil-type sum (both trace
/// readings) for all `β ∈ F_q` and `λ ∈ F_{p^e}*`, `A`, and `B` / `N_β` for
/// all nonzero `β`.
pub fn lemma_sweep(field: &Arc<Field>, e: u32) -> Result<SweepReport, CharSumError> {
    let ctx = SweepContext::new(field, e)?;
    let p = field.characteristic();
    let m = ctx.tables.m;
    let lambdas = ctx.tables.subfield_units(e);
    let full_quad: Vec<Vec<u32>> = lambdas
        .iter()
        .map(|&l| ctx.tables.quadratic_row(l, QuadraticTrace::Full))
        .collect();
    let mut weil_checks = 0;
    let mut weil_failures_half = 0;
    let mut weil_failures_full = 0;
    for beta in field.elements() {
        let lin = ctx.tables.linear(beta.index());
        for (idx, &l) in lambdas.iter().enumerate() {
            let lambda = field.from_index(u64::from(l))?;
            let closed = weil_closed_form(field, lambda, beta)?;
            let half = ctx
                .tables
                .histogram(ctx.quad[idx].iter().zip(&lin).map(|(&a, &t)| a + t));
            let full = ctx
                .tables
                .histogram(full_quad[idx].iter().zip(&lin).map(|(&a, &t)| a + t));
            weil_checks += 1;
            weil_failures_half += usize::from(half != closed);
            weil_failures_full += usize::from(full != closed);
        }
    }
    let mut rows = Vec::new();
    let mut b_values = Vec::new();
    let mut b_failures = 0;
    let mut n_beta_failures = 0;
    for beta in field.nonzero_elements() {
        let row = ctx.row(beta.index());
        let expected = sum_b_expected(p, m, e, row.trace_condition);
        if row.b != Some(expected) {
            b_failures += 1;
        }
        if let Some(b) = row.b {
            if !b_values.contains(&(row.trace_condition, b)) {
                b_values.push((row.trace_condition, b));
            }
        }
        if !row.ok {
            n_beta_failures += 1;
        }
        rows.push(row);
    }
    b_values.sort_unstable();
    Ok(SweepReport {
        p,
        m,
        e,
        weil_checks,
        weil_failures_half,
        weil_failures_full,
        sum_a: ctx.a.clone(),
        b_failures,
        n_beta_failures,
        b_values,
        rows,
    })
}
