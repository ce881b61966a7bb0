//! The twisted group ring `K^α D_2m` over `K = F_{p^n}`.
//!
//! `D_2m = <x, y | x^m = y^2 = 1, y x^a = x^{m-a} y>`; the element `x^i y^k`
//! is stored as `(i, k)`. The twist is `α(x^i, ·) = 1` and
//! `α(x^i y, x^j y^l) = τ^j`, where `τ` must satisfy `τ^m = 1` for `α` to be
//! a 2-cocycle (the exponent `j` is only defined mod `m`). The context picks
//! `τ = t^{(q-1)/gcd(m, q-1)}` for the generator `t` of `K^×`: a primitive
//! `m`-th root of unity whenever `m | q - 1`, and `t` itself when
//! `q - 1 | m`. The adjoint scales the coefficient of `x^i y^k` by `τ^{-i}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::field::{gauss_solve, FieldCtx, FieldElement, FpMatrix};

pub const MAX_M: usize = 64;

/// `x^i y^k` in `D_2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dihedral {
    pub i: usize,
    pub k: u8,
    pub m: usize,
}

#[allow(clippy::should_implement_trait)]
impl Dihedral {
    pub fn new(i: usize, k: u8, m: usize) -> Result<Self> {
        if m == 0 || i >= m || k > 1 {
            return Err(Error::InvalidParameter(format!("x^{i} y^{k} is not an element of D_2·{m}")));
        }
        Ok(Dihedral { i, k, m })
    }

    pub fn identity(m: usize) -> Self {
        Dihedral { i: 0, k: 0, m }
    }

    /// `(x^i y^k)(x^j y^l) = x^{i ± j} y^{k+l}`, with `-` when `k = 1`.
    pub fn mul(self, rhs: Dihedral) -> Result<Dihedral> {
        check_dim(self.m, rhs.m)?;
        let j = if self.k == 1 { (self.m - rhs.i) % self.m } else { rhs.i };
        Ok(Dihedral {
            i: (self.i + j) % self.m,
            k: self.k ^ rhs.k,
            m: self.m,
        })
    }

    /// Position in the dense coefficient layout.
    pub fn index(self) -> usize {
        usize::from(self.k) * self.m + self.i
    }

    pub fn all(m: usize) -> impl Iterator<Item = Dihedral> {
        (0..2u8).flat_map(move |k| (0..m).map(move |i| Dihedral { i, k, m }))
    }
}

/// `Σ r_g · ḡ` with one coefficient per group element, indexed by
/// [`Dihedral::index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedElement {
    m: usize,
    coeffs: Vec<FieldElement>,
}

impl TwistedElement {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeff(&self, g: Dihedral) -> &FieldElement {
        &self.coeffs[g.index()]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    /// The rotation (`k = 0`) half.
    pub fn rotation_part(&self) -> &[FieldElement] {
        &self.coeffs[..self.m]
    }

    /// The reflection (`k = 1`) half.
    pub fn reflection_part(&self) -> &[FieldElement] {
        &self.coeffs[self.m..]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subspace {
    /// `K C_m`, the rotations.
    R1,
    /// Symmetric rotations, `r_i = r_{m-i}`.
    A1,
    /// Symmetric reflections `Σ r_i x^i y` with `r_i = r_{m-i}`.
    A2,
}

/// An `F_p` basis of one of the subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub label: Subspace,
    pub elements: Vec<TwistedElement>,
}

/// Ring context: the coefficient field, `m`, and the twist root `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCtx {
    field: FieldCtx,
    m: usize,
    twist_pows: Vec<FieldElement>,
    twist_inv_pows: Vec<FieldElement>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `t^{(q-1)/gcd(m, q-1)}`: the element of largest order dividing `m` in `K^×`.
pub fn twist_root(field: &FieldCtx, m: usize) -> FieldElement {
    let q1 = field.order() - 1;
    field.pow(field.t(), q1 / gcd(m as u64, q1))
}

impl TwistedCtx {
    pub fn new(field: FieldCtx, m: usize) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::InvalidParameter(format!("m must be in 1..={MAX_M} (got {m})")));
        }
        let tau = twist_root(&field, m);
        let tau_inv = field.inv(&tau)?;
        let powers = |base: &FieldElement| {
            std::iter::successors(Some(field.one()), |prev| Some(field.mul(prev, base)))
                .take(m)
                .collect::<Vec<_>>()
        };
        let twist_pows = powers(&tau);
        let twist_inv_pows = powers(&tau_inv);
        Ok(TwistedCtx {
            field,
            m,
            twist_pows,
            twist_inv_pows,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `τ`.
    pub fn twist(&self) -> &FieldElement {
        self.twist_pows.get(1).unwrap_or(&self.twist_pows[0])
    }

    /// `α(g, h)`.
    pub fn cocycle(&self, g: Dihedral, h: Dihedral) -> FieldElement {
        if g.k == 1 {
            self.twist_pows[h.i].clone()
        } else {
            self.field.one()
        }
    }

    fn check(&self, a: &TwistedElement) -> Result<()> {
        if a.m != self.m || a.coeffs.len() != 2 * self.m {
            return Err(Error::ContextMismatch);
        }
        if a.coeffs.iter().any(|c| c.coeffs().len() != self.field.n()) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> TwistedElement {
        TwistedElement {
            m: self.m,
            coeffs: vec![self.field.zero(); 2 * self.m],
        }
    }

    pub fn one(&self) -> TwistedElement {
        self.monomial(self.field.one(), Dihedral::identity(self.m))
    }

    /// `c · ḡ`.
    pub fn monomial(&self, c: FieldElement, g: Dihedral) -> TwistedElement {
        let mut e = self.zero();
        e.coeffs[g.index()] = c;
        e
    }

    pub fn element(&self, coeffs: Vec<FieldElement>) -> Result<TwistedElement> {
        let e = TwistedElement { m: self.m, coeffs };
        self.check(&e)?;
        Ok(e)
    }

    pub fn add(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(TwistedElement {
            m: self.m,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.field.add(x, y)).collect(),
        })
    }

    pub fn neg(&self, a: &TwistedElement) -> TwistedElement {
        TwistedElement {
            m: a.m,
            coeffs: a.coeffs.iter().map(|x| self.field.neg(x)).collect(),
        }
    }

    pub fn sub(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        self.add(a, &self.neg(b))
    }

    /// Left multiplication by `c ∈ K` (which is central).
    pub fn scale(&self, c: &FieldElement, a: &TwistedElement) -> TwistedElement {
        TwistedElement {
            m: a.m,
            coeffs: a.coeffs.iter().map(|x| self.field.mul(c, x)).collect(),
        }
    }

    pub fn scale_fp(&self, c: u32, a: &TwistedElement) -> TwistedElement {
        TwistedElement {
            m: a.m,
            coeffs: a.coeffs.iter().map(|x| self.field.scale(c, x)).collect(),
        }
    }

    /// `(a ḡ)(b h̄) = a b α(g, h) \overline{gh}`, extended bilinearly.
    pub fn mul(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        self.check(a)?;
        self.check(b)?;
        let m = self.m;
        let mut out = self.zero();
        for g in Dihedral::all(m) {
            let ag = &a.coeffs[g.index()];
            if ag.is_zero() {
                continue;
            }
            for h in Dihedral::all(m) {
                let bh = &b.coeffs[h.index()];
                if bh.is_zero() {
                    continue;
                }
                let gh = g.mul(h)?;
                let mut c = self.field.mul(ag, bh);
                if g.k == 1 {
                    c = self.field.mul(&c, &self.twist_pows[h.i]);
                }
                let slot = &mut out.coeffs[gh.index()];
                *slot = self.field.add(slot, &c);
            }
        }
        Ok(out)
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, factors: &[&TwistedElement]) -> Result<TwistedElement> {
        factors.iter().try_fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `h* = Σ r_{i,k} τ^{-i} x^i y^k`.
    pub fn adjoint(&self, h: &TwistedElement) -> Result<TwistedElement> {
        self.check(h)?;
        let coeffs = Dihedral::all(self.m)
            .map(|g| self.field.mul(&h.coeffs[g.index()], &self.twist_inv_pows[g.i]))
            .collect();
        Ok(TwistedElement { m: self.m, coeffs })
    }

    /// Coefficients as one `F_p` vector of length `2m·n`.
    pub fn flatten(&self, a: &TwistedElement) -> Result<Vec<u32>> {
        self.check(a)?;
        Ok(a.coeffs.iter().flat_map(|c| c.coeffs().iter().copied()).collect())
    }

    pub fn unflatten(&self, v: &[u32]) -> Result<TwistedElement> {
        let n = self.field.n();
        check_dim(2 * self.m * n, v.len())?;
        let coeffs = v
            .chunks(n)
            .map(|c| self.field.element(c.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistedElement { m: self.m, coeffs })
    }

    /// `t^i`, `0 <= i < n`: an `F_p` basis of `K`.
    fn field_basis(&self) -> Vec<FieldElement> {
        let f = &self.field;
        std::iter::successors(Some(f.one()), |prev| Some(f.mul(prev, f.t())))
            .take(f.n())
            .collect()
    }

    /// Symmetric index sets `{j, m - j}` for `0 <= j <= m/2`.
    fn symmetric_orbits(&self) -> Vec<Vec<usize>> {
        let m = self.m;
        (0..=m / 2)
            .map(|j| {
                let partner = (m - j) % m;
                if partner == j {
                    vec![j]
                } else {
                    vec![j, partner]
                }
            })
            .collect()
    }

    pub fn basis(&self, label: Subspace) -> SubspaceBasis {
        let tb = self.field_basis();
        let mut elements = Vec::new();
        match label {
            Subspace::R1 => {
                for ti in &tb {
                    for j in 0..self.m {
                        elements.push(self.monomial(ti.clone(), Dihedral { i: j, k: 0, m: self.m }));
                    }
                }
            }
            Subspace::A1 | Subspace::A2 => {
                let k = u8::from(label == Subspace::A2);
                for ti in &tb {
                    for orbit in self.symmetric_orbits() {
                        let mut e = self.zero();
                        for &j in &orbit {
                            e.coeffs[Dihedral { i: j, k, m: self.m }.index()] = ti.clone();
                        }
                        elements.push(e);
                    }
                }
            }
        }
        SubspaceBasis { label, elements }
    }

    pub fn basis_r1(&self) -> SubspaceBasis {
        self.basis(Subspace::R1)
    }

    pub fn basis_a1(&self) -> SubspaceBasis {
        self.basis(Subspace::A1)
    }

    pub fn basis_a2(&self) -> SubspaceBasis {
        self.basis(Subspace::A2)
    }

    /// `Σ c_b · b` over an `F_p` basis.
    pub fn combine(&self, basis: &SubspaceBasis, coords: &[u32]) -> Result<TwistedElement> {
        check_dim(basis.elements.len(), coords.len())?;
        basis
            .elements
            .iter()
            .zip(coords)
            .try_fold(self.zero(), |acc, (b, &c)| self.add(&acc, &self.scale_fp(c, b)))
    }

    /// `F_p` coordinates of `e` in `basis`, or `None` if `e` is outside the span.
    pub fn coordinates(&self, basis: &SubspaceBasis, e: &TwistedElement) -> Result<Option<Vec<u32>>> {
        let columns = basis
            .elements
            .iter()
            .map(|b| self.flatten(b))
            .collect::<Result<Vec<_>>>()?;
        let rows = 2 * self.m * self.field.n();
        let a = FpMatrix::from_columns(rows, &columns)?;
        gauss_solve(self.field.prime_field(), &a, &self.flatten(e)?)
    }

    pub fn contains(&self, label: Subspace, e: &TwistedElement) -> Result<bool> {
        Ok(self.coordinates(&self.basis(label), e)?.is_some())
    }

    /// Uniform `F_p` combination of the basis of `label`.
    pub fn sample(&self, label: Subspace, seed: u64) -> TwistedElement {
        use rand::Rng;
        let basis = self.basis(label);
        let p = self.field.p();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords: Vec<u32> = (0..basis.elements.len()).map(|_| rng.gen_range(0..p)).collect();
        self.combine(&basis, &coords).expect("basis lives in this context")
    }

    pub fn sample_r1(&self, seed: u64) -> TwistedElement {
        self.sample(Subspace::R1, seed)
    }

    pub fn sample_a2(&self, seed: u64) -> TwistedElement {
        self.sample(Subspace::A2, seed)
    }

    pub fn to_json(&self, e: &TwistedElement) -> ElementJson {
        let coeffs = Dihedral::all(self.m)
            .filter(|g| !e.coeffs[g.index()].is_zero())
            .map(|g| (g.i, g.k, e.coeffs[g.index()].coeffs().to_vec()))
            .collect();
        ElementJson {
            m: self.m,
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn from_json(&self, json: &ElementJson) -> Result<TwistedElement> {
        if json.m != self.m || json.field != self.field {
            return Err(Error::ContextMismatch);
        }
        let mut e = self.zero();
        for (i, k, c) in &json.coeffs {
            let g = Dihedral::new(*i, *k, self.m)?;
            e.coeffs[g.index()] = self.field.element(c.clone())?;
        }
        Ok(e)
    }
}

/// Sparse JSON form `{"m": .., "field": .., "coeffs": [[i, k, [..]], ..]}`
/// listing the non-zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub m: usize,
    pub field: FieldCtx,
    pub coeffs: Vec<(usize, u8, Vec<u32>)>,
}

impl ElementJson {
    pub fn context(&self) -> Result<TwistedCtx> {
        TwistedCtx::new(self.field.clone(), self.m)
    }
}
