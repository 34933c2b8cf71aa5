//! Brute-force oracles that share no code with the library: schoolbook
//! polynomial arithmetic, traces by repeated powering, codewords by direct
//! encoding and dual distances by trying every coefficient vector.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// F_{p^s} as coefficient vectors modulo a monic polynomial.
#[derive(Clone)]
pub struct NaiveField {
    pub p: u32,
    pub s: usize,
    pub modulus: Vec<u32>,
}

pub type Elem = Vec<u32>;

impl NaiveField {
    pub fn new(p: u32, modulus: &[u32]) -> Self {
        NaiveField {
            p,
            s: modulus.len() - 1,
            modulus: modulus.to_vec(),
        }
    }

    pub fn order(&self) -> u64 {
        u64::from(self.p).pow(self.s as u32)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.s]
    }

    pub fn one(&self) -> Elem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    /// The element with base-p digits of `i` as coefficients.
    pub fn elem(&self, mut i: u64) -> Elem {
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = (i % u64::from(self.p)) as u32;
            i /= u64::from(self.p);
        }
        v
    }

    pub fn all(&self) -> Vec<Elem> {
        (0..self.order()).map(|i| self.elem(i)).collect()
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, c: u32, a: &Elem) -> Elem {
        a.iter().map(|x| (x * c) % self.p).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let p = u64::from(self.p);
        let s = self.s;
        let mut prod = vec![0u64; 2 * s];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        // reduce with x^s = -(m_0 + ... + m_{s-1} x^{s-1})
        for d in (s..2 * s).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..s {
                let sub = c * u64::from(self.modulus[i]) % p;
                prod[d - s + i] = (prod[d - s + i] + p - sub) % p;
            }
        }
        prod[..s].iter().map(|&c| c as u32).collect()
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `Σ_{i < from/to} a^{p^{to·i}}`.
    pub fn trace(&self, a: &Elem, from: usize, to: usize) -> Elem {
        let mut acc = self.zero();
        let mut term = a.clone();
        for _ in 0..from / to {
            acc = self.add(&acc, &term);
            term = self.pow(&term, u64::from(self.p).pow(to as u32));
        }
        acc
    }

    /// Absolute trace as a residue.
    pub fn abs_trace(&self, a: &Elem) -> u32 {
        let t = self.trace(a, self.s, 1);
        assert!(t[1..].iter().all(|&c| c == 0), "trace must lie in F_p");
        t[0]
    }

    pub fn norm_to_half(&self, a: &Elem) -> Elem {
        let m = self.s / 2;
        self.pow(a, u64::from(self.p).pow(m as u32) + 1)
    }

    /// The monomial basis element `x^i`.
    pub fn monomial(&self, i: usize) -> Elem {
        let mut v = self.zero();
        v[i] = 1;
        v
    }
}

/// `{x != 0 : Tr^m_e(x^{p^m+1}) = 0}` in index order.
pub fn naive_d1(f: &NaiveField, e: usize) -> Vec<Elem> {
    let m = f.s / 2;
    f.all()
        .into_iter()
        .filter(|x| !f.is_zero(x))
        .filter(|x| f.is_zero(&f.trace(&f.norm_to_half(x), m, e)))
        .collect()
}

/// One element per F_p*-orbit: the first in index order.
pub fn naive_orbit_reps(f: &NaiveField, set: &[Elem]) -> Vec<Elem> {
    let mut seen: Vec<Elem> = Vec::new();
    let mut reps = Vec::new();
    for x in set {
        if seen.contains(x) {
            continue;
        }
        for a in 1..f.p {
            seen.push(f.scale(a, x));
        }
        reps.push(x.clone());
    }
    reps
}

/// Generator rows `(Tr(x^i d))_d` for `i < s`.
pub fn trace_generator(f: &NaiveField, set: &[Elem]) -> Vec<Vec<u32>> {
    (0..f.s)
        .map(|i| {
            let b = f.monomial(i);
            set.iter().map(|d| f.abs_trace(&f.mul(&b, d))).collect()
        })
        .collect()
}

/// Generator of the three-weight code on F_q*: trace rows plus rows
/// `(Tr^m_1(γ d^{p^m+1}))_d` for γ running over a basis of F_{p^m}.
pub fn d2_generator(f: &NaiveField) -> Vec<Vec<u32>> {
    let m = f.s / 2;
    let units: Vec<Elem> = f.all().into_iter().filter(|x| !f.is_zero(x)).collect();
    let mut rows = trace_generator(f, &units);
    // a basis of F_{p^m}: powers of a generator of the subfield, greedily
    // keeping independent ones
    let sub: Vec<Elem> = f
        .all()
        .into_iter()
        .filter(|x| f.pow(x, u64::from(f.p).pow(m as u32)) == *x)
        .collect();
    let mut basis: Vec<Elem> = Vec::new();
    for x in &sub {
        let mut cand = basis.clone();
        cand.push(x.clone());
        if naive_rank(&cand, f.p) == cand.len() {
            basis = cand;
        }
        if basis.len() == m {
            break;
        }
    }
    for g in &basis {
        rows.push(
            units
                .iter()
                .map(|d| {
                    let t = f.trace(&f.mul(g, &f.norm_to_half(d)), m, 1);
                    t[0]
                })
                .collect(),
        );
    }
    rows
}

/// Rank by Gaussian elimination over Z_p.
pub fn naive_rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| u64::from(x)).collect()).collect();
    let p = u64::from(p);
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = (1..p).find(|&x| x * m[rank][col] % p == 1).unwrap();
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let c = m[r][col];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - c * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Weight distribution of the row space of `gen` by encoding every message.
pub fn naive_distribution(gen: &[Vec<u32>], p: u32) -> BTreeMap<usize, u64> {
    let k = gen.len();
    let n = gen[0].len();
    let mut counts = BTreeMap::new();
    let mut seen = std::collections::HashSet::new();
    for t in 0..u64::from(p).pow(k as u32) {
        let mut msg = vec![0u32; k];
        let mut r = t;
        for c in msg.iter_mut() {
            *c = (r % u64::from(p)) as u32;
            r /= u64::from(p);
        }
        let word: Vec<u32> = (0..n)
            .map(|j| msg.iter().zip(gen).map(|(&c, row)| c * row[j]).sum::<u32>() % p)
            .collect();
        // count distinct codewords so rank-deficient spanning sets still work
        if seen.insert(word.clone()) {
            *counts.entry(word.iter().filter(|&&x| x != 0).count()).or_insert(0) += 1;
        }
    }
    counts
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// Smallest `w <= cap` such that some `w` columns of `gen` have a
/// dependency with all coefficients nonzero, together with the number of
/// such dependencies (all coefficient vectors, not normalized).
pub fn naive_dual_distance(gen: &[Vec<u32>], p: u32, cap: usize) -> Option<(usize, usize)> {
    let n = gen[0].len();
    let k = gen.len();
    for w in 1..=cap {
        let mut found = 0usize;
        combinations(n, w, &mut |cols| {
            for t in 0..u64::from(p - 1).pow(w as u32) {
                let mut r = t;
                let coeffs: Vec<u32> = (0..w)
                    .map(|_| {
                        let c = (r % u64::from(p - 1)) as u32 + 1;
                        r /= u64::from(p - 1);
                        c
                    })
                    .collect();
                let zero = (0..k).all(|i| cols.iter().zip(&coeffs).map(|(&j, &c)| c * gen[i][j]).sum::<u32>() % p == 0);
                if zero {
                    found += 1;
                }
            }
        });
        if found > 0 {
            return Some((w, found));
        }
    }
    None
}

/// `Σ_x exp(2πi f(x)/p)` as a complex pair, summing exponents given as residues.
pub fn complex_sum(p: u32, exponents: impl Iterator<Item = u32>) -> (f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    for t in exponents {
        let a = 2.0 * std::f64::consts::PI * f64::from(t % p) / f64::from(p);
        re += a.cos();
        im += a.sin();
    }
    (re, im)
}
