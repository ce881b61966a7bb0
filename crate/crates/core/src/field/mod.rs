//! Arithmetic in `F_p` and `F_{p^n}`.
//!
//! Extension-field elements are polynomials of degree `< n` in the
//! polynomial basis, little-endian, reduced modulo a monic irreducible
//! `modulus`. Every [`FieldCtx`] also carries a generator `t` of the
//! multiplicative group.

pub mod gauss;
pub(crate) mod poly;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

pub use gauss::{gauss_solve, rank, FpMatrix};

/// Largest field order accepted; `p^n - 1` is factored by trial division.
pub const MAX_FIELD_ORDER: u64 = 1 << 48;
pub const MAX_EXTENSION_DEGREE: usize = 8;

/// `F_p` for a prime `p < 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 16 {
            return Err(Error::InvalidParameter(format!("p must be below 2^16 (got {p})")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn reduce(self, a: u64) -> u32 {
        (a % u64::from(self.p)) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        let mut b = a % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, u64::from(self.p) - 2))
    }
}

/// Element of `F_{p^n}`: `n` coefficients over `F_p`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(Vec<u32>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// `F_{p^n} = F_p[u] / (modulus)` together with a multiplicative generator `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct FieldCtx {
    fp: PrimeField,
    n: usize,
    modulus: Vec<u32>,
    t: FieldElement,
    /// Distinct primes dividing `p^n - 1`.
    order_factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    p: u64,
    n: usize,
    modulus: Vec<u32>,
    t: Vec<u32>,
}

impl TryFrom<FieldRepr> for FieldCtx {
    type Error = Error;

    fn try_from(r: FieldRepr) -> Result<Self> {
        check_dim(r.n + 1, r.modulus.len())?;
        FieldCtx::from_parts(r.p, r.modulus, r.t)
    }
}

impl From<FieldCtx> for FieldRepr {
    fn from(c: FieldCtx) -> Self {
        FieldRepr {
            p: u64::from(c.fp.p),
            n: c.n,
            modulus: c.modulus,
            t: c.t.0,
        }
    }
}

fn distinct_prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

fn field_order(p: u32, n: usize) -> Result<u64> {
    if n == 0 || n > MAX_EXTENSION_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "extension degree must be in 1..={MAX_EXTENSION_DEGREE} (got {n})"
        )));
    }
    u64::from(p)
        .checked_pow(n as u32)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::InvalidParameter(format!("field order {p}^{n} is too large")))
}

/// Monic irreducible polynomial of degree `n` over `F_p`, drawn by random
/// trial from `seed`. Returned little-endian with the leading 1 included.
pub fn find_irreducible(p: u64, n: usize, seed: u64) -> Result<Vec<u32>> {
    let fp = PrimeField::new(p)?;
    field_order(fp.p, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut f: Vec<u32> = (0..n).map(|_| rng.gen_range(0..fp.p)).collect();
        f.push(1);
        if poly::is_irreducible(fp, &f) {
            return Ok(f);
        }
    }
}

impl FieldCtx {
    /// Random irreducible modulus from `seed`, then the first generator in
    /// enumeration order.
    pub fn new(p: u64, n: usize, seed: u64) -> Result<Self> {
        let modulus = find_irreducible(p, n, seed)?;
        FieldCtx::with_modulus(p, modulus)
    }

    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        let mut ctx = FieldCtx::without_generator(p, modulus)?;
        ctx.t = ctx.find_primitive();
        Ok(ctx)
    }

    /// Validates both the modulus and the claimed generator.
    pub fn from_parts(p: u64, modulus: Vec<u32>, t: Vec<u32>) -> Result<Self> {
        let mut ctx = FieldCtx::without_generator(p, modulus)?;
        let t = ctx.element(t)?;
        if !ctx.is_primitive(&t) {
            return Err(Error::InvalidParameter(
                "t does not generate the multiplicative group".into(),
            ));
        }
        ctx.t = t;
        Ok(ctx)
    }

    fn without_generator(p: u64, modulus: Vec<u32>) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::InvalidParameter("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= fp.p) {
            return Err(Error::InvalidParameter("modulus coefficients must be reduced mod p".into()));
        }
        let n = modulus.len() - 1;
        let q = field_order(fp.p, n)?;
        if !poly::is_irreducible(fp, &modulus) {
            return Err(Error::InvalidParameter("modulus is not irreducible".into()));
        }
        Ok(FieldCtx {
            fp,
            n,
            modulus,
            t: FieldElement(vec![0; n]),
            order_factors: distinct_prime_factors(q - 1),
        })
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn p(&self) -> u32 {
        self.fp.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `p^n`.
    pub fn order(&self) -> u64 {
        u64::from(self.fp.p).pow(self.n as u32)
    }

    /// The multiplicative generator.
    pub fn t(&self) -> &FieldElement {
        &self.t
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement> {
        check_dim(self.n, coeffs.len())?;
        if coeffs.iter().any(|&c| c >= self.fp.p) {
            return Err(Error::InvalidParameter("coefficient not reduced mod p".into()));
        }
        Ok(FieldElement(coeffs))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.n])
    }

    pub fn one(&self) -> FieldElement {
        self.from_fp(1)
    }

    /// Embeds `c ∈ F_p`.
    pub fn from_fp(&self, c: u32) -> FieldElement {
        let mut v = vec![0; self.n];
        v[0] = c % self.fp.p;
        FieldElement(v)
    }

    /// Element whose coefficients are the base-`p` digits of `code`.
    pub fn from_index(&self, mut code: u64) -> FieldElement {
        let p = u64::from(self.fp.p);
        FieldElement(
            (0..self.n)
                .map(|_| {
                    let c = (code % p) as u32;
                    code /= p;
                    c
                })
                .collect(),
        )
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement((0..self.n).map(|_| rng.gen_range(0..self.fp.p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.fp.add(x, y)).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.fp.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| self.fp.neg(x)).collect())
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, c: u32, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| self.fp.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.n;
        let fp = self.fp;
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = fp.add(prod[i + j], fp.mul(x, y));
            }
        }
        // modulus is monic: u^n = -(m_0 + … + m_{n-1} u^{n-1})
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mj) in self.modulus[..n].iter().enumerate() {
                prod[k - n + j] = fp.sub(prod[k - n + j], fp.mul(c, mj));
            }
        }
        prod.truncate(n);
        FieldElement(prod)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Inverse via `a^{q-2}`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplicative order of a non-zero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order() - 1;
        for &r in &self.order_factors {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn is_primitive(&self, a: &FieldElement) -> bool {
        let q1 = self.order() - 1;
        !a.is_zero() && self.order_factors.iter().all(|&r| self.pow(a, q1 / r) != self.one())
    }

    /// First element of multiplicative order `p^n - 1`, scanning candidates
    /// in [`FieldCtx::from_index`] order.
    pub fn find_primitive(&self) -> FieldElement {
        (1..self.order())
            .map(|code| self.from_index(code))
            .find(|a| self.is_primitive(a))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}
