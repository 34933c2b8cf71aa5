//! Defining sets and the trace codes built from them.
//!
//! For a defining set `D = {d_1, ..., d_n}` of nonzero elements of
//! F_q (q = p^{2m}) the code is `{(Tr(β d_1), ..., Tr(β d_n)) : β ∈ F_q}`.
//! Three families are supported:
//!
//! * `D1`: the `x ≠ 0` whose norm `x^{p^m+1}` has zero trace down to F_{p^e};
//! * `D1BAR`: one representative per F_p*-orbit of `D1`;
//! * `D2`: all of F_q*, with an extra `Tr^m_1(γ x^{p^m+1})` term per codeword.
//!
//! Columns follow the discrete-log order of the field generator.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldDescriptor, FieldElement, FieldError};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("e = {e} does not divide m = {m}")]
    EDoesNotDivideM { e: u32, m: u32 },
    #[error("expected a defining set of family {expected:?}, got {got:?}")]
    WrongFamily { expected: Family, got: Family },
    #[error("defining set is empty")]
    EmptyDefiningSet,
    #[error("message has length {got}, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("generator rows must all have length {0}")]
    RaggedGenerator(usize),
    #[error("entries must be residues below {0}")]
    EntryOutOfRange(u32),
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "D1")]
    D1,
    #[serde(rename = "D1BAR")]
    D1Bar,
    #[serde(rename = "D2")]
    D2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::D1 => "D1",
            Family::D1Bar => "D1BAR",
            Family::D2 => "D2",
        }
    }
}

/// How the representative of an F_p*-orbit is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitChoice {
    #[default]
    MinLog,
    MaxLog,
}

/// A duplicate-free list of nonzero field elements, tagged with the
/// construction that produced it.
#[derive(Debug, Clone)]
pub struct DefiningSet {
    field: Arc<Field>,
    elements: Vec<FieldElement>,
    family: Family,
    m: u32,
    e: Option<u32>,
    warnings: Vec<String>,
}

/// Serialized form: the elements as discrete logs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSetRecord {
    pub family: Family,
    pub p: u32,
    pub m: u32,
    pub e: Option<u32>,
    pub field: FieldDescriptor,
    pub logs: Vec<u32>,
}

impl DefiningSet {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> Option<u32> {
        self.e
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn logs(&self) -> Vec<u32> {
        self.elements
            .iter()
            .map(|&x| self.field.log(x).expect("defining sets exclude zero"))
            .collect()
    }

    pub fn record(&self) -> DefiningSetRecord {
        DefiningSetRecord {
            family: self.family,
            p: self.field.characteristic(),
            m: self.m,
            e: self.e,
            field: self.field.descriptor(),
            logs: self.logs(),
        }
    }
}

/// What produced a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Trace(Family),
    /// Dual of a code with the given construction family.
    Dual(Option<Family>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: Construction,
    pub p: u32,
    pub m: Option<u32>,
    pub e: Option<u32>,
    pub field: Option<FieldDescriptor>,
    pub expected_k: Option<usize>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl Provenance {
    /// The trace family, if this is one of the three constructions.
    pub fn family(&self) -> Option<Family> {
        match self.construction {
            Construction::Trace(f) => Some(f),
            Construction::Dual(_) => None,
        }
    }
}

/// A linear `[n, k]` code over Z_p given by a full-rank `k × n` generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    p: u32,
    n: usize,
    k: usize,
    gen: Vec<Vec<u32>>,
    provenance: Option<Provenance>,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting rank-deficient input.
    pub fn from_generator(
        p: u32,
        n: usize,
        gen: Vec<Vec<u32>>,
        provenance: Option<Provenance>,
    ) -> Result<Self, CodeError> {
        validate_rows(p, n, &gen)?;
        let rank = linalg::rank(&gen, p);
        if rank != gen.len() {
            return Err(CodeError::RankDeficient { rank, rows: gen.len() });
        }
        Ok(LinearCode {
            p,
            n,
            k: gen.len(),
            gen,
            provenance,
        })
    }

    /// Builds the code spanned by `rows`, keeping a maximal independent
    /// subset (in order) and recording a warning when rows were dropped.
    pub fn from_spanning_rows(
        p: u32,
        n: usize,
        rows: Vec<Vec<u32>>,
        mut provenance: Option<Provenance>,
    ) -> Result<Self, CodeError> {
        validate_rows(p, n, &rows)?;
        let keep = linalg::independent_rows(&rows, p);
        if keep.len() < rows.len() {
            if let Some(prov) = provenance.as_mut() {
                prov.warnings.push(format!(
                    "generator rows have rank {} < {}; reduced to an independent subset",
                    keep.len(),
                    rows.len()
                ));
            }
        }
        let gen: Vec<Vec<u32>> = keep.into_iter().map(|i| rows[i].clone()).collect();
        Ok(LinearCode {
            p,
            n,
            k: gen.len(),
            gen,
            provenance,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.gen
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Column `j` of the generator matrix.
    pub fn column(&self, j: usize) -> Vec<u32> {
        self.gen.iter().map(|row| row[j]).collect()
    }

    /// `message · G` over Z_p.
    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>, CodeError> {
        if message.len() != self.k {
            return Err(CodeError::MessageLength {
                expected: self.k,
                got: message.len(),
            });
        }
        let p = u64::from(self.p);
        let mut out = vec![0u64; self.n];
        for (&c, row) in message.iter().zip(&self.gen) {
            let c = u64::from(c) % p;
            if c == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = (*o + c * u64::from(g)) % p;
            }
        }
        Ok(out.into_iter().map(|x| x as u32).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(vec![]);
        for row in &self.gen {
            w.serialize(row).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

fn validate_rows(p: u32, n: usize, rows: &[Vec<u32>]) -> Result<(), CodeError> {
    if rows.iter().any(|r| r.len() != n) {
        return Err(CodeError::RaggedGenerator(n));
    }
    if rows.iter().flatten().any(|&x| x >= p) {
        return Err(CodeError::EntryOutOfRange(p));
    }
    Ok(())
}

fn check_e(m: u32, e: u32) -> Result<(), CodeError> {
    if e == 0 || !m.is_multiple_of(e) {
        return Err(CodeError::EDoesNotDivideM { e, m });
    }
    Ok(())
}

/// `|D1| = (p^{m-e} - 1)(p^m + 1) = p^{2m-e} + p^{m-e} - p^m - 1`.
pub fn d1_size_formula(p: u32, m: u32, e: u32) -> u64 {
    let p = u64::from(p);
    (p.pow(m - e) - 1) * (p.pow(m) + 1)
}

/// Whether `x` belongs to `D1`: `Tr^m_e(x^{p^m+1}) = 0`.
///
/// The norm lies in F_{p^m}, where `Tr^{2m}_e = 2 Tr^m_e`; for odd `p` this is
/// the same as requiring `Tr^{2m}_e(x^{p^m+1}) = 0`.
fn in_d1(field: &Field, x: u32, m: u32, e: u32) -> bool {
    let p = u64::from(field.characteristic());
    let norm = field.pow_raw(x, p.pow(m) + 1);
    field.subfield_trace_raw(norm, m, e) == 0
}

/// The defining set `D1` for `(p, m, e)` inside `field = F_{p^{2m}}`, in
/// increasing discrete-log order.
pub fn defining_set_d1(field: &Arc<Field>, e: u32) -> Result<DefiningSet, CodeError> {
    let m = field.half_degree()?;
    check_e(m, e)?;
    let elements: Vec<FieldElement> = field
        .nonzero_elements()
        .filter(|x| in_d1(field, x.index(), m, e))
        .collect();
    let mut warnings = Vec::new();
    if e == m {
        warnings.push(format!("e = m = {m} lies outside the two-weight hypothesis e < m"));
    } else {
        let expected = d1_size_formula(field.characteristic(), m, e);
        if elements.len() as u64 != expected {
            warnings.push(format!(
                "|D1| = {} differs from the closed form {expected}",
                elements.len()
            ));
        }
    }
    Ok(DefiningSet {
        field: Arc::clone(field),
        elements,
        family: Family::D1,
        m,
        e: Some(e),
        warnings,
    })
}

/// One representative per F_p*-orbit of a `D1` set.
pub fn orbit_representatives(d1: &DefiningSet) -> Result<DefiningSet, CodeError> {
    orbit_representatives_with(d1, OrbitChoice::MinLog)
}

pub fn orbit_representatives_with(d1: &DefiningSet, choice: OrbitChoice) -> Result<DefiningSet, CodeError> {
    if d1.family != Family::D1 {
        return Err(CodeError::WrongFamily {
            expected: Family::D1,
            got: d1.family,
        });
    }
    let field = &d1.field;
    let p = field.characteristic();
    let n = u64::from(field.order()) - 1;
    // F_p* is generated by α^((q-1)/(p-1)), so an orbit is a coset of
    // multiples of `stride` in the exponent group.
    let stride = n / u64::from(p - 1);
    let mut reps: Vec<u32> = d1
        .elements
        .iter()
        .map(|&x| {
            let l = u64::from(field.log_raw(x.index()));
            let r = l % stride;
            match choice {
                OrbitChoice::MinLog => r,
                OrbitChoice::MaxLog => r + stride * u64::from(p - 2),
            }
        })
        .map(|l| l as u32)
        .collect();
    reps.sort_unstable();
    reps.dedup();
    Ok(DefiningSet {
        field: Arc::clone(field),
        elements: reps.into_iter().map(|l| field.exp(u64::from(l))).collect(),
        family: Family::D1Bar,
        m: d1.m,
        e: d1.e,
        warnings: d1.warnings.clone(),
    })
}

fn trace_provenance(field: &Field, family: Family, m: u32, e: Option<u32>, k: usize) -> Provenance {
    Provenance {
        construction: Construction::Trace(family),
        p: field.characteristic(),
        m: Some(m),
        e,
        field: Some(field.descriptor()),
        expected_k: Some(k),
        warnings: Vec::new(),
    }
}

/// The trace code of a defining set. Generator row `i` is the codeword of
/// `β = α^i`, so a message is the coordinate vector of `β` in the
/// polynomial basis.
pub fn code_from_defining_set(dset: &DefiningSet) -> Result<LinearCode, CodeError> {
    if dset.is_empty() {
        return Err(CodeError::EmptyDefiningSet);
    }
    let field = &dset.field;
    let s = field.degree();
    let p = field.characteristic();
    let rows: Vec<Vec<u32>> = (0..s)
        .map(|i| {
            let beta = p.pow(i);
            dset.elements
                .iter()
                .map(|d| field.trace_raw(field.mul_raw(beta, d.index())))
                .collect()
        })
        .collect();
    let mut prov = trace_provenance(field, dset.family, dset.m, dset.e, 2 * dset.m as usize);
    prov.warnings.extend(dset.warnings.iter().cloned());
    LinearCode::from_spanning_rows(p, dset.len(), rows, Some(prov))
}

/// The three-weight code on all of F_q*: codeword
/// `(Tr^{2m}_1(β d) + Tr^m_1(γ d^{p^m+1}))_d` for `β ∈ F_q`, `γ ∈ F_{p^m}`.
///
/// The first `2m` generator rows take `β = α^i`, `γ = 0`; the last `m` take
/// `β = 0`, `γ = ω^i` with `ω = α^((q-1)/(p^m-1))` generating F_{p^m}*.
pub fn code_d2(field: &Arc<Field>) -> Result<LinearCode, CodeError> {
    let m = field.half_degree()?;
    let p = field.characteristic();
    let q = u64::from(field.order());
    let pm = u64::from(p).pow(m);
    let columns: Vec<u32> = field.nonzero_elements().map(FieldElement::index).collect();
    let mut rows: Vec<Vec<u32>> = (0..2 * m)
        .map(|i| {
            let beta = p.pow(i);
            columns
                .iter()
                .map(|&d| field.trace_raw(field.mul_raw(beta, d)))
                .collect()
        })
        .collect();
    let omega_step = (q - 1) / (pm - 1);
    let norms: Vec<u32> = columns.iter().map(|&d| field.pow_raw(d, pm + 1)).collect();
    for i in 0..u64::from(m) {
        let gamma = field.exp_raw(i * omega_step);
        rows.push(
            norms
                .iter()
                .map(|&nd| field.subfield_trace_raw(field.mul_raw(gamma, nd), m, 1))
                .collect(),
        );
    }
    let prov = trace_provenance(field, Family::D2, m, None, 3 * m as usize);
    LinearCode::from_spanning_rows(p, columns.len(), rows, Some(prov))
}

/// Builds `D1`, `D1BAR` or the `D2` code for `(p, m, e)` with the canonical
/// field modulus.
pub fn build_family(family: Family, field: &Arc<Field>, e: Option<u32>) -> Result<LinearCode, CodeError> {
    match family {
        Family::D2 => code_d2(field),
        Family::D1 | Family::D1Bar => {
            let m = field.half_degree()?;
            let e = e.ok_or(CodeError::EDoesNotDivideM { e: 0, m })?;
            let d1 = defining_set_d1(field, e)?;
            if family == Family::D1 {
                code_from_defining_set(&d1)
            } else {
                code_from_defining_set(&orbit_representatives(&d1)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn field(p: u32, s: u32) -> Arc<Field> {
        Arc::new(Field::new(p, s).unwrap())
    }

    #[test]
    fn d1_sizes_from_examples() {
        assert_eq!(defining_set_d1(&field(3, 4), 1).unwrap().len(), 20);
        assert_eq!(defining_set_d1(&field(5, 4), 1).unwrap().len(), 104);
        assert_eq!(defining_set_d1(&field(2, 6), 1).unwrap().len(), 27);
    }

    #[test]
    fn d1_errors() {
        assert!(matches!(
            defining_set_d1(&field(3, 3), 1).unwrap_err(),
            CodeError::Field(FieldError::OddDegree(3))
        ));
        assert_eq!(
            defining_set_d1(&field(2, 6), 2).unwrap_err(),
            CodeError::EDoesNotDivideM { e: 2, m: 3 }
        );
    }

    #[test]
    fn e_equal_m_is_flagged_and_empty() {
        let d = defining_set_d1(&field(3, 4), 2).unwrap();
        assert!(d.is_empty());
        assert_eq!(d.warnings().len(), 1);
        assert_eq!(code_from_defining_set(&d).unwrap_err(), CodeError::EmptyDefiningSet);
    }

    #[test]
    fn orbit_sizes() {
        let d = defining_set_d1(&field(3, 6), 1).unwrap();
        assert_eq!(d.len(), 224);
        assert_eq!(orbit_representatives(&d).unwrap().len(), 112);
        let d = defining_set_d1(&field(5, 4), 1).unwrap();
        assert_eq!(orbit_representatives(&d).unwrap().len(), 26);
        let d = defining_set_d1(&field(2, 6), 1).unwrap();
        assert_eq!(orbit_representatives(&d).unwrap().elements(), d.elements());
    }

    #[test]
    fn orbit_representatives_rejects_wrong_family() {
        let d = defining_set_d1(&field(3, 4), 1).unwrap();
        let bar = orbit_representatives(&d).unwrap();
        assert!(matches!(
            orbit_representatives(&bar).unwrap_err(),
            CodeError::WrongFamily { .. }
        ));
    }

    #[test]
    fn saturation_and_scaling_closure() {
        let f = field(5, 4);
        let d = defining_set_d1(&f, 1).unwrap();
        let all: HashSet<_> = d.elements().iter().copied().collect();
        for choice in [OrbitChoice::MinLog, OrbitChoice::MaxLog] {
            let bar = orbit_representatives_with(&d, choice).unwrap();
            let mut saturated = HashSet::new();
            for &b in bar.elements() {
                for a in f.prime_units() {
                    let ab = f.mul(a, b).unwrap();
                    assert!(all.contains(&ab));
                    assert!(saturated.insert(ab), "representatives are proportional");
                }
            }
            assert_eq!(saturated, all);
        }
    }

    #[test]
    fn code_dimensions() {
        let c = build_family(Family::D1, &field(3, 4), Some(1)).unwrap();
        assert_eq!((c.n(), c.k()), (20, 4));
        let c = build_family(Family::D1, &field(3, 6), Some(1)).unwrap();
        assert_eq!((c.n(), c.k()), (224, 6));
        let c = code_d2(&field(5, 2)).unwrap();
        assert_eq!((c.n(), c.k()), (24, 3));
        let c = code_d2(&field(3, 4)).unwrap();
        assert_eq!((c.n(), c.k()), (80, 6));
        assert!(c.provenance().unwrap().warnings.is_empty());
    }

    #[test]
    fn encode_basics() {
        let c = build_family(Family::D1, &field(3, 4), Some(1)).unwrap();
        assert_eq!(c.encode(&[0; 4]).unwrap(), vec![0; 20]);
        assert_eq!(c.encode(&[1, 0, 0, 0]).unwrap(), c.generator()[0]);
        assert_eq!(
            c.encode(&[1, 0]).unwrap_err(),
            CodeError::MessageLength { expected: 4, got: 2 }
        );
        let d2 = code_d2(&field(5, 2)).unwrap();
        assert_eq!(d2.encode(&[0; 3]).unwrap(), vec![0; 24]);
    }

    #[test]
    fn rank_deficient_rows_are_reduced_with_warning() {
        let prov = Provenance {
            construction: Construction::Dual(None),
            p: 3,
            m: None,
            e: None,
            field: None,
            expected_k: None,
            warnings: vec![],
        };
        let c = LinearCode::from_spanning_rows(3, 2, vec![vec![1, 2], vec![2, 1]], Some(prov)).unwrap();
        assert_eq!(c.k(), 1);
        assert_eq!(c.provenance().unwrap().warnings.len(), 1);
        assert!(matches!(
            LinearCode::from_generator(3, 2, vec![vec![1, 2], vec![2, 1]], None).unwrap_err(),
            CodeError::RankDeficient { rank: 1, rows: 2 }
        ));
    }

    #[test]
    fn json_shape() {
        let c = code_d2(&field(2, 2)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["k"], 3);
        assert_eq!(v["provenance"]["construction"]["trace"], "D2");
        let set = defining_set_d1(&field(3, 4), 1).unwrap();
        let rec = serde_json::to_value(set.record()).unwrap();
        assert_eq!(rec["logs"].as_array().unwrap().len(), 20);
    }
}
