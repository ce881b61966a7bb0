//! Dense polynomials over `F_p`, little-endian coefficient vectors.
//! Only what the irreducibility test and the field reduction need.

use super::PrimeField;

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn sub(fp: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| fp.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

pub(crate) fn mul(fp: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a non-zero `f`.
pub(crate) fn rem(fp: PrimeField, a: &[u32], f: &[u32]) -> Vec<u32> {
    let f = trim(f.to_vec());
    assert!(!f.is_empty(), "polynomial division by zero");
    let mut r = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = fp.inv(f[df]).expect("leading coefficient is non-zero");
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = fp.mul(*r.last().unwrap(), lead_inv);
        for (k, &fk) in f.iter().enumerate() {
            r[shift + k] = fp.sub(r[shift + k], fp.mul(c, fk));
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(fp: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(fp, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// `base^e mod f`.
pub(crate) fn pow_mod(fp: PrimeField, base: &[u32], mut e: u64, f: &[u32]) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(fp, base, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(fp, &mul(fp, &acc, &b), f);
        }
        b = rem(fp, &mul(fp, &b, &b), f);
        e >>= 1;
    }
    rem(fp, &acc, f)
}

/// Ben-Or: `f` of degree `n` is irreducible iff `gcd(x^{p^i} - x, f) = 1`
/// for every `1 <= i <= n/2`.
pub(crate) fn is_irreducible(fp: PrimeField, f: &[u32]) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = pow_mod(fp, &h, u64::from(fp.p()), &f);
        let g = gcd(fp, &sub(fp, &h, &x), &f);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
