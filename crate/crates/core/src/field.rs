//! Exact arithmetic in F_{p^s}.
//!
//! An element is the coefficient vector of a polynomial in the fixed root
//! `α` of the field modulus, packed into a single base-`p` integer (its
//! *index*). The packed vector is the source of truth; the discrete-log
//! tables only accelerate multiplication and exponentiation.
//!
//! The multiplicative group is cyclic of order `p^s - 1` and generated by
//! `α` (the modulus is always primitive), so the discrete log of an element
//! is its exponent with respect to `α`.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{s} exceeds the supported maximum of 2^20")]
    TooLarge { p: u64, s: u32 },
    #[error("modulus must be monic of degree {degree} with coefficients below {p}")]
    MalformedModulus { p: u32, degree: u32 },
    #[error("modulus is reducible")]
    Reducible,
    #[error("modulus is irreducible but not primitive (root has order {order}, expected {expected})")]
    NotPrimitive { order: u64, expected: u64 },
    #[error("no primitive polynomial of degree {s} over Z_{p}")]
    NoPrimitivePolynomial { p: u32, s: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{e} does not divide {s}")]
    NotADivisor { e: u32, s: u32 },
    #[error("the field has odd extension degree {0}")]
    OddDegree(u32),
    #[error("coefficient vector must have {s} entries below {p}")]
    BadCoefficients { p: u32, s: u32 },
    #[error("element index {0} out of range")]
    IndexOutOfRange(u64),
    #[error("element does not lie in the subfield of degree {0}")]
    NotInSubfield(u32),
}

/// An element of a specific [`Field`].
///
/// Elements are only meaningful together with the field that produced them;
/// the field tag lets checked operations reject mixed-field operands.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    index: u32,
    tag: u64,
}

impl FieldElement {
    /// The packed coefficient vector `sum c_i p^i`.
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.index)
    }
}

/// Serializable description of a field: prime, degree and modulus
/// coefficients low-degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub s: u32,
    pub modulus: Vec<u32>,
}

/// The field F_{p^s} modelled as Z_p[x] / (modulus).
#[derive(Clone)]
pub struct Field {
    p: u32,
    s: u32,
    order: u32,
    modulus: Vec<u32>,
    /// `exp[i]` is the index of `α^i`, for `0 <= i < order - 1`.
    exp: Vec<u32>,
    /// `log[x]` is the discrete log of `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `p^i` for `0 <= i <= s`.
    radix: Vec<u32>,
    /// Absolute traces of the basis elements `α^i`.
    basis_traces: Vec<u32>,
    tag: u64,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_parameters(p: u32, s: u32) -> Result<u32, FieldError> {
    if !is_prime(u64::from(p)) {
        return Err(FieldError::NotPrime(u64::from(p)));
    }
    if s == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let order = u64::from(p)
        .checked_pow(s)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or(FieldError::TooLarge { p: u64::from(p), s })?;
    Ok(order as u32)
}

impl Field {
    /// Builds F_{p^s} with the canonical modulus: the lexicographically
    /// smallest monic primitive polynomial of degree `s` (coefficients
    /// compared low-degree first).
    pub fn new(p: u32, s: u32) -> Result<Self, FieldError> {
        check_parameters(p, s)?;
        let modulus = poly::primitive_polynomials(p, s)
            .next()
            .ok_or(FieldError::NoPrimitivePolynomial { p, s })?;
        Self::with_modulus(p, s, &modulus)
    }

    /// Builds F_{p^s} from a caller-supplied monic modulus, which must be
    /// irreducible and primitive.
    pub fn with_modulus(p: u32, s: u32, modulus: &[u32]) -> Result<Self, FieldError> {
        let order = check_parameters(p, s)?;
        if modulus.len() != s as usize + 1 || modulus[s as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::MalformedModulus { p, degree: s });
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(FieldError::Reducible);
        }
        let exp = poly::power_cycle(modulus, p).ok_or(FieldError::Reducible)?;
        if exp.len() as u64 != u64::from(order) - 1 {
            return Err(FieldError::NotPrimitive {
                order: exp.len() as u64,
                expected: u64::from(order) - 1,
            });
        }
        let mut log = vec![u32::MAX; order as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let radix: Vec<u32> = (0..=s).map(|i| p.pow(i)).collect();
        let mut hasher = DefaultHasher::new();
        (p, s, modulus).hash(&mut hasher);
        let mut field = Field {
            p,
            s,
            order,
            modulus: modulus.to_vec(),
            exp,
            log,
            radix,
            basis_traces: Vec::new(),
            tag: hasher.finish(),
        };
        field.basis_traces = (0..s)
            .map(|i| {
                let t = field.relative_trace_raw(field.radix[i as usize], 1);
                debug_assert!(t < p);
                t
            })
            .collect();
        Ok(field)
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self, FieldError> {
        Self::with_modulus(desc.p, desc.s, &desc.modulus)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            s: self.s,
            modulus: self.modulus.clone(),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Half the extension degree, for fields of even degree `s = 2m`.
    pub fn half_degree(&self) -> Result<u32, FieldError> {
        if self.s % 2 == 1 {
            return Err(FieldError::OddDegree(self.s));
        }
        Ok(self.s / 2)
    }

    pub(crate) fn wrap(&self, index: u32) -> FieldElement {
        FieldElement { index, tag: self.tag }
    }

    fn check(&self, x: FieldElement) -> Result<u32, FieldError> {
        if x.tag != self.tag {
            return Err(FieldError::FieldMismatch);
        }
        Ok(x.index)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The primitive element `α`, the class of `x`.
    pub fn generator(&self) -> FieldElement {
        self.wrap(self.exp[1 % self.exp.len()])
    }

    /// The prime-field element `c mod p`.
    pub fn from_int(&self, c: u64) -> FieldElement {
        self.wrap((c % u64::from(self.p)) as u32)
    }

    pub fn from_index(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index >= u64::from(self.order) {
            return Err(FieldError::IndexOutOfRange(index));
        }
        Ok(self.wrap(index as u32))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.s as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoefficients { p: self.p, s: self.s });
        }
        Ok(self.wrap(poly::pack(coeffs, self.p)))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        poly::unpack(x.index, self.p, self.s as usize)
    }

    /// `α^i`, with `i` reduced modulo `p^s - 1`.
    pub fn exp(&self, i: u64) -> FieldElement {
        self.wrap(self.exp_raw(i))
    }

    /// Discrete log of a nonzero element with respect to `α`.
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        (!x.is_zero()).then(|| self.log[x.index as usize])
    }

    /// All elements in index order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.wrap(i))
    }

    /// Nonzero elements in increasing discrete-log order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.exp.iter().map(move |&i| self.wrap(i))
    }

    // ----- raw index arithmetic; callers guarantee the operands are valid -----

    pub(crate) fn exp_raw(&self, i: u64) -> u32 {
        self.exp[(i % self.exp.len() as u64) as usize]
    }

    pub(crate) fn log_raw(&self, x: u32) -> u32 {
        self.log[x as usize]
    }

    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &r in &self.radix[..self.s as usize] {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * r;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        for &r in &self.radix[..self.s as usize] {
            let d = (self.p - a % self.p) % self.p;
            out += d * r;
            a /= self.p;
        }
        out
    }

    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        let l = u64::from(self.log[a as usize]) + u64::from(self.log[b as usize]);
        self.exp[(l % n) as usize]
    }

    pub(crate) fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.exp.len() as u128;
        let l = u128::from(self.log[a as usize]) * u128::from(e) % n;
        self.exp[l as usize]
    }

    /// `a^(p^k)`.
    pub(crate) fn frobenius_raw(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = self.exp.len() as u64;
        let mut e = 1u64;
        for _ in 0..k {
            e = e * u64::from(self.p) % n;
        }
        self.pow_raw(a, e)
    }

    /// Absolute trace `Tr^s_1`, via F_p-linearity on the polynomial basis.
    pub(crate) fn trace_raw(&self, a: u32) -> u32 {
        let mut a = a;
        let mut acc = 0u64;
        for &t in &self.basis_traces {
            acc += u64::from(a % self.p) * u64::from(t);
            a /= self.p;
        }
        (acc % u64::from(self.p)) as u32
    }

    /// `sum_{i < s/e} a^(p^(e i))`, directly from the definition.
    pub(crate) fn relative_trace_raw(&self, a: u32, e: u32) -> u32 {
        self.subfield_trace_raw(a, self.s, e)
    }

    pub(crate) fn subfield_trace_raw(&self, a: u32, from: u32, to: u32) -> u32 {
        let mut acc = 0;
        let mut term = a;
        for _ in 0..from / to {
            acc = self.add_raw(acc, term);
            term = self.frobenius_raw(term, to);
        }
        acc
    }

    pub(crate) fn in_subfield_raw(&self, a: u32, e: u32) -> bool {
        self.frobenius_raw(a, e) == a
    }

    // ----- checked public arithmetic -----

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.add_raw(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let nb = self.neg_raw(self.check(b)?);
        Ok(self.wrap(self.add_raw(self.check(a)?, nb)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.neg_raw(self.check(a)?)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.mul_raw(self.check(a)?, self.check(b)?)))
    }

    /// Multiplication through polynomial arithmetic modulo the field
    /// polynomial, bypassing the log tables.
    pub fn mul_polynomial(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let ca = poly::unpack(self.check(a)?, self.p, self.s as usize);
        let cb = poly::unpack(self.check(b)?, self.p, self.s as usize);
        let prod = poly::mul_mod(&ca, &cb, &self.modulus, self.p);
        Ok(self.wrap(poly::pack(&prod, self.p)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.exp.len() as u64;
        Ok(self.wrap(self.exp_raw((n - u64::from(self.log[a as usize])) % n)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let b_inv = self.inv(b)?;
        self.mul(a, b_inv)
    }

    /// `a^e` for any integer exponent; negative exponents require `a != 0`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        let ai = self.check(a)?;
        if e >= 0 {
            return Ok(self.wrap(self.pow_raw(ai, e as u64)));
        }
        let inv = self.inv(a)?;
        Ok(self.wrap(self.pow_raw(inv.index, e.unsigned_abs())))
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> Result<FieldElement, FieldError> {
        Ok(self.wrap(self.frobenius_raw(self.check(a)?, k)))
    }

    /// Absolute trace `Tr^s_1(a)` as a residue mod `p`.
    pub fn trace(&self, a: FieldElement) -> Result<u32, FieldError> {
        Ok(self.trace_raw(self.check(a)?))
    }

    /// Relative trace `Tr^s_e(a) = sum_{i=0}^{s/e-1} a^(p^(e i))`, an element
    /// of the subfield F_{p^e}.
    pub fn relative_trace(&self, a: FieldElement, e: u32) -> Result<FieldElement, FieldError> {
        let a = self.check(a)?;
        if e == 0 || !self.s.is_multiple_of(e) {
            return Err(FieldError::NotADivisor { e, s: self.s });
        }
        Ok(self.wrap(self.relative_trace_raw(a, e)))
    }

    /// Trace `Tr^from_to` of an element of the intermediate field F_{p^from}.
    pub fn subfield_trace(&self, a: FieldElement, from: u32, to: u32) -> Result<FieldElement, FieldError> {
        let a = self.check(a)?;
        if from == 0 || !self.s.is_multiple_of(from) {
            return Err(FieldError::NotADivisor { e: from, s: self.s });
        }
        if to == 0 || !from.is_multiple_of(to) {
            return Err(FieldError::NotADivisor { e: to, s: from });
        }
        if !self.in_subfield_raw(a, from) {
            return Err(FieldError::NotInSubfield(from));
        }
        Ok(self.wrap(self.subfield_trace_raw(a, from, to)))
    }

    /// `x^(p^m + 1)` in F_{p^{2m}}, which lands in F_{p^m}.
    pub fn norm_to_half(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let m = self.half_degree()?;
        let a = self.check(a)?;
        Ok(self.wrap(self.pow_raw(a, u64::from(self.p).pow(m) + 1)))
    }

    pub fn in_subfield(&self, a: FieldElement, e: u32) -> Result<bool, FieldError> {
        let a = self.check(a)?;
        if e == 0 || !self.s.is_multiple_of(e) {
            return Err(FieldError::NotADivisor { e, s: self.s });
        }
        Ok(self.in_subfield_raw(a, e))
    }

    /// Elements of the subfield F_{p^e}: zero followed by the powers of
    /// `α^((q-1)/(p^e-1))` in increasing exponent.
    pub fn subfield_elements(&self, e: u32) -> Result<Vec<FieldElement>, FieldError> {
        if e == 0 || !self.s.is_multiple_of(e) {
            return Err(FieldError::NotADivisor { e, s: self.s });
        }
        let sub = u64::from(self.p).pow(e) - 1;
        let step = (u64::from(self.order) - 1) / sub;
        let mut out = vec![self.zero()];
        out.extend((0..sub).map(|j| self.exp(j * step)));
        Ok(out)
    }

    /// Nonzero elements of F_p, i.e. the scalars `1..p`.
    pub fn prime_units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.p).map(move |c| self.wrap(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_case() {
        let f = Field::new(3, 1).unwrap();
        // x + 1: root 2 generates Z_3*
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.generator().index(), 2);
        let two = f.from_int(2);
        assert_eq!(f.mul(two, two).unwrap(), f.one());
        assert_eq!(f.add(two, two).unwrap(), f.one());
    }

    #[test]
    fn example_field_of_order_81() {
        let f = Field::new(3, 4).unwrap();
        assert_eq!(f.order(), 81);
        assert_eq!(f.nonzero_elements().count(), 80);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Field::new(4, 2).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(Field::new(2, 21).unwrap_err(), FieldError::TooLarge { .. }));
        assert!(Field::new(2, 20).is_ok());
        // x^2 + 1 over Z_3: irreducible, root of order 4
        assert_eq!(
            Field::with_modulus(3, 2, &[1, 0, 1]).unwrap_err(),
            FieldError::NotPrimitive { order: 4, expected: 8 }
        );
        assert_eq!(
            Field::with_modulus(5, 2, &[1, 0, 1]).unwrap_err(),
            FieldError::Reducible
        );
        assert!(matches!(
            Field::with_modulus(3, 2, &[1, 0, 2]).unwrap_err(),
            FieldError::MalformedModulus { .. }
        ));
    }

    #[test]
    fn non_primitive_irreducible_quartic_rejected() {
        // x^4 + x^3 + x^2 + x + 1 over Z_3 is irreducible; its root has order 5
        let m = [1, 1, 1, 1, 1];
        assert!(poly::is_irreducible(&m, 3));
        assert_eq!(poly::power_cycle(&m, 3).unwrap().len(), 5);
        assert!(!poly::is_irreducible(&[1, 0, 0, 0, 1], 3));
        assert!(matches!(
            Field::with_modulus(3, 4, &m).unwrap_err(),
            FieldError::NotPrimitive { .. }
        ));
    }

    #[test]
    fn division_by_zero_and_mixed_fields() {
        let f = Field::new(3, 2).unwrap();
        let g = Field::new(5, 1).unwrap();
        assert_eq!(f.inv(f.zero()).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(f.div(f.one(), f.zero()).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(f.pow(f.zero(), -1).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(f.add(f.one(), g.one()).unwrap_err(), FieldError::FieldMismatch);
    }

    #[test]
    fn exhaustive_order_81_laws() {
        let f = Field::new(3, 4).unwrap();
        let g = f.generator();
        assert_eq!(f.mul(g, f.inv(g).unwrap()).unwrap(), f.one());
        for x in f.elements() {
            assert_eq!(f.add(x, f.zero()).unwrap(), x);
            assert_eq!(f.pow(x, 81).unwrap(), x);
            if !x.is_zero() {
                assert_eq!(f.pow(x, 80).unwrap(), f.one());
                assert_eq!(f.pow(x, -1).unwrap(), f.inv(x).unwrap());
            }
        }
    }

    #[test]
    fn log_tables_are_consistent() {
        let f = Field::new(5, 3).unwrap();
        for x in f.nonzero_elements() {
            assert_eq!(f.exp(u64::from(f.log(x).unwrap())), x);
        }
    }

    #[test]
    fn trace_edge_cases() {
        let f = Field::new(3, 4).unwrap();
        assert_eq!(f.relative_trace(f.zero(), 2).unwrap(), f.zero());
        // Tr(1) = s mod p = 1
        assert_eq!(f.relative_trace(f.one(), 1).unwrap(), f.one());
        assert_eq!(f.trace(f.one()).unwrap(), 1);
        assert_eq!(
            f.relative_trace(f.one(), 3).unwrap_err(),
            FieldError::NotADivisor { e: 3, s: 4 }
        );
    }

    #[test]
    fn norm_to_half_edges() {
        let f = Field::new(3, 4).unwrap();
        assert_eq!(f.norm_to_half(f.zero()).unwrap(), f.zero());
        assert_eq!(f.norm_to_half(f.one()).unwrap(), f.one());
        let odd = Field::new(3, 3).unwrap();
        assert_eq!(odd.norm_to_half(odd.one()).unwrap_err(), FieldError::OddDegree(3));
    }

    #[test]
    fn descriptor_json() {
        let f = Field::new(2, 3).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert_eq!(json, r#"{"p":2,"s":3,"modulus":[1,0,1,1]}"#);
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(Field::from_descriptor(&back).unwrap(), f);
    }
}
