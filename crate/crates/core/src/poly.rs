//! Dense polynomials over the prime field Z_p.
//!
//! Coefficients are stored low-degree first. These helpers back the modulus
//! search and the table-free multiplication path of [`crate::field::Field`].

/// Removes trailing zero coefficients.
pub fn trim(poly: &mut Vec<u32>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

/// Degree of `poly`, or `None` for the zero polynomial.
pub fn degree(poly: &[u32]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = u64::from(p);
    let mut acc = 1u64 % p64;
    let mut b = u64::from(base) % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo the monic or non-monic nonzero polynomial `m`.
pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = u64::from(inv_mod(m[dm], p));
    let p64 = u64::from(p);
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = u64::from(r[dr]) * lead_inv % p64;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = factor * u64::from(c) % p64;
            let cur = u64::from(r[shift + i]);
            r[shift + i] = ((cur + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

/// Product `a * b mod m` over Z_p, result padded to `deg(m)` coefficients.
pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p64 = u64::from(p);
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let dm = degree(m).expect("zero modulus");
    let mut r = rem(&prod, m, p);
    r.resize(dm, 0);
    r
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        let count = (p as u64).pow(dd as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(dd + 1);
            let mut rest = t;
            for _ in 0..dd {
                g.push((rest % u64::from(p)) as u32);
                rest /= u64::from(p);
            }
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Successive powers `x^0, x^1, ...` modulo the monic `f` (degree `s`),
/// packed as base-`p` integers, stopping just before the first repeat of 1.
///
/// Returns `None` when `x` is not a unit (constant term zero). The length of
/// the returned vector is the multiplicative order of `x`.
pub fn power_cycle(f: &[u32], p: u32) -> Option<Vec<u32>> {
    let s = f.len() - 1;
    if f[0] == 0 {
        return None;
    }
    let p64 = u64::from(p);
    let mut cur = vec![0u32; s];
    cur[0] = 1;
    let mut out = Vec::new();
    loop {
        out.push(pack(&cur, p));
        // multiply by x, reduce by the monic modulus
        let top = u64::from(cur[s - 1]);
        for i in (1..s).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..s {
                let sub = top * u64::from(f[i]) % p64;
                cur[i] = ((u64::from(cur[i]) + p64 - sub) % p64) as u32;
            }
        }
        if cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
            return Some(out);
        }
    }
}

/// Packs a coefficient vector into the integer `sum c_i p^i`.
pub fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Inverse of [`pack`] for a vector of length `s`.
pub fn unpack(mut index: u32, p: u32, s: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(s);
    for _ in 0..s {
        out.push(index % p);
        index /= p;
    }
    out
}

/// Monic primitive polynomials of degree `s` over Z_p, in lexicographic order
/// of their coefficient vectors compared low-degree first.
///
/// Primitivity is decided by exhaustive powering of the root `x`.
pub fn primitive_polynomials(p: u32, s: u32) -> impl Iterator<Item = Vec<u32>> {
    let s = s as usize;
    let q = u64::from(p).pow(s as u32);
    (0..q).filter_map(move |t| {
        // c0 is the most significant digit of the counter
        let mut f = vec![0u32; s + 1];
        let mut rest = t;
        for i in (0..s).rev() {
            f[i] = (rest % u64::from(p)) as u32;
            rest /= u64::from(p);
        }
        f[s] = 1;
        let cycle = power_cycle(&f, p)?;
        (cycle.len() as u64 == q - 1).then_some(f)
    })
}
