//! Key exchange over `K^α D_2m` and its recovery from public data.
//!
//! Alice publishes `p_A = g_1 h k_1` with `g_1 ∈ R_1`, `k_1 ∈ A_2`; the shared
//! key is `g_1 p_B k_1^* = g_2 p_A k_2^*`. With `F_p` bases `{L¹_i}` of `R_1`
//! and `{L²_j}` of `A_2`, `p_A = Σ z_ij L¹_i h L²_j` is linear over `F_p` in
//! the `z_ij`. For any solution,
//! `Σ z_ij L¹_i p_B (L²_j)^* = g_2 (Σ z_ij L¹_i h L²_j) k_2^* = g_2 p_A k_2^*`,
//! using commutativity of `R_1` and `k_2 (L²_j)^* = L²_j k_2^*` on `A_2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gauss_solve, FieldCtx, FpMatrix};
use crate::twisted::{Dihedral, TwistedCtx, TwistedElement};

/// How the public element `h` is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HMode {
    /// Every coefficient a uniform non-zero element of `K`.
    #[default]
    Full,
    /// Every coefficient uniform in `K`, zeros allowed.
    Uniform,
    /// `(1 + ȳ)` times a full-support element, a zero divisor.
    ZeroDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedParams {
    pub ctx: TwistedCtx,
    pub h: TwistedElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedKeyPair {
    pub g: TwistedElement,
    pub k: TwistedElement,
    pub pk: TwistedElement,
}

impl TwistedParams {
    pub fn new(ctx: TwistedCtx, h: TwistedElement) -> Result<Self> {
        ctx.add(&h, &ctx.zero())?;
        Ok(TwistedParams { ctx, h })
    }

    /// Field (random irreducible modulus), then `h`, both from `seed`.
    pub fn generate(p: u64, fext: usize, m: usize, seed: u64, mode: HMode) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = FieldCtx::new(p, fext, rng.gen())?;
        let ctx = TwistedCtx::new(field, m)?;
        let h = sample_h(&ctx, &mut rng, mode);
        Ok(TwistedParams { ctx, h })
    }

    pub fn keygen(&self, seed: u64) -> TwistedKeyPair {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = self.ctx.sample_r1(rng.gen());
        let k = self.ctx.sample_a2(rng.gen());
        TwistedKeyPair::from_private(self, g, k).expect("samples live in this context")
    }
}

fn sample_h(ctx: &TwistedCtx, rng: &mut ChaCha8Rng, mode: HMode) -> TwistedElement {
    let field = ctx.field();
    let mut draw = |nonzero: bool| {
        let coeffs = (0..2 * ctx.m())
            .map(|_| if nonzero { field.random_nonzero(rng) } else { field.random(rng) })
            .collect();
        ctx.element(coeffs).expect("shape fixed by ctx")
    };
    match mode {
        HMode::Full => draw(true),
        HMode::Uniform => draw(false),
        HMode::ZeroDivisor => {
            let y = ctx.monomial(field.one(), Dihedral { i: 0, k: 1, m: ctx.m() });
            let one_plus_y = ctx.add(&ctx.one(), &y).expect("same ctx");
            ctx.mul(&one_plus_y, &draw(true)).expect("same ctx")
        }
    }
}

impl TwistedKeyPair {
    pub fn from_private(params: &TwistedParams, g: TwistedElement, k: TwistedElement) -> Result<Self> {
        let pk = params.ctx.product(&[&g, &params.h, &k])?;
        Ok(TwistedKeyPair { g, k, pk })
    }

    /// `g · other_pk · k^*`.
    pub fn shared_key(&self, ctx: &TwistedCtx, other_pk: &TwistedElement) -> Result<TwistedElement> {
        ctx.product(&[&self.g, other_pk, &ctx.adjoint(&self.k)?])
    }
}

/// Outcome of [`attack`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedAttack {
    pub key: TwistedElement,
    /// Coefficients over `F_p`, index `i * |A_2 basis| + j` for `(L¹_i, L²_j)`.
    pub z: Vec<u32>,
    pub unknowns: usize,
    pub equations: usize,
}

/// The flattened system `Σ z_ij L¹_i h L²_j = p_A` as a matrix over `F_p`
/// (one column per basis pair) and the right-hand side.
pub fn attack_system(params: &TwistedParams, alice_pk: &TwistedElement) -> Result<(FpMatrix, Vec<u32>)> {
    let ctx = &params.ctx;
    let left = ctx.basis_r1().elements;
    let right = ctx.basis_a2().elements;
    let mut columns = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        let lh = ctx.mul(l, &params.h)?;
        for r in &right {
            columns.push(ctx.flatten(&ctx.mul(&lh, r)?)?);
        }
    }
    let rows = 2 * ctx.m() * ctx.field().n();
    Ok((FpMatrix::from_columns(rows, &columns)?, ctx.flatten(alice_pk)?))
}

/// `Σ z_ij L¹_i · pk · (L²_j)^*` for any coefficient vector `z`.
pub fn apply_solution(params: &TwistedParams, z: &[u32], pk: &TwistedElement) -> Result<TwistedElement> {
    let ctx = &params.ctx;
    let left = ctx.basis_r1().elements;
    let right = ctx
        .basis_a2()
        .elements
        .iter()
        .map(|r| ctx.adjoint(r))
        .collect::<Result<Vec<_>>>()?;
    crate::error::check_dim(left.len() * right.len(), z.len())?;
    let mut key = ctx.zero();
    for (i, l) in left.iter().enumerate() {
        let row = &z[i * right.len()..(i + 1) * right.len()];
        if row.iter().all(|&c| c == 0) {
            continue;
        }
        let lp = ctx.mul(l, pk)?;
        for (&c, r) in row.iter().zip(&right) {
            if c != 0 {
                key = ctx.add(&key, &ctx.scale_fp(c, &ctx.mul(&lp, r)?))?;
            }
        }
    }
    Ok(key)
}

/// Recovers the shared key from public data only.
pub fn attack(params: &TwistedParams, alice_pk: &TwistedElement, bob_pk: &TwistedElement) -> Result<TwistedAttack> {
    attack_with_order(params, alice_pk, bob_pk, None)
}

/// [`attack`] with the unknowns eliminated in the given column order, which
/// changes which variables end up free (and zero) in the particular solution.
pub fn attack_with_order(
    params: &TwistedParams,
    alice_pk: &TwistedElement,
    bob_pk: &TwistedElement,
    order: Option<&[usize]>,
) -> Result<TwistedAttack> {
    let (a, b) = attack_system(params, alice_pk)?;
    let fp = params.ctx.field().prime_field();
    let z = match order {
        None => gauss_solve(fp, &a, &b)?,
        Some(order) => gauss_solve(fp, &a.permute_columns(order)?, &b)?.map(|zp| {
            let mut z = vec![0; zp.len()];
            for (k, &c) in order.iter().enumerate() {
                z[c] = zp[k];
            }
            z
        }),
    }
    .ok_or_else(|| Error::NoSolution("public key is not in the span of the basis products".into()))?;
    let key = apply_solution(params, &z, bob_pk)?;
    Ok(TwistedAttack {
        key,
        unknowns: a.cols(),
        equations: a.rows(),
        z,
    })
}

/// An honest run with both key pairs and both computed keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedExchange {
    pub params: TwistedParams,
    pub alice: TwistedKeyPair,
    pub bob: TwistedKeyPair,
    pub alice_key: TwistedElement,
    pub bob_key: TwistedElement,
}

impl TwistedExchange {
    pub fn run(params: TwistedParams, alice_seed: u64, bob_seed: u64) -> Result<Self> {
        let alice = params.keygen(alice_seed);
        let bob = params.keygen(bob_seed);
        let alice_key = alice.shared_key(&params.ctx, &bob.pk)?;
        let bob_key = bob.shared_key(&params.ctx, &alice.pk)?;
        Ok(TwistedExchange {
            params,
            alice,
            bob,
            alice_key,
            bob_key,
        })
    }

    pub fn seeded(p: u64, fext: usize, m: usize, seed: u64, mode: HMode) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = TwistedParams::generate(p, fext, m, rng.gen(), mode)?;
        TwistedExchange::run(params, rng.gen(), rng.gen())
    }

    pub fn keys_agree(&self) -> bool {
        self.alice_key == self.bob_key
    }
}
