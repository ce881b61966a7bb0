//! Circulant key exchange over `Mat_n(W)` and the public-data attack on it.
//!
//! Alice publishes `pk = A_1 ⊗ M ⊗ A_2` with circulant `A_1, A_2`. Every
//! circulant is `⊕_i a_i ⊗ C_i` for the generators `C_i = Circ(e_i)`, so
//! `pk = ⊕_{i,j} z_ij ⊗ C_i ⊗ M ⊗ C_j` is a one-sided linear system in the
//! `n²` scalars `z_ij`. Any solution `z` gives
//! `⊕ z_ij ⊗ C_i ⊗ pk_B ⊗ C_j = B_1 ⊗ pk_A ⊗ B_2`, the shared key.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digital::{DigitalValue, Finite, Infinity};
use crate::error::{check_dim, Error, Result};
use crate::matrix::{circulant_generators, flatten_two_sided, Circulant, Matrix};
use crate::solver::LinearSystem;

pub const DEFAULT_ENTRY_BOUND: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitalParams {
    pub n: usize,
    pub m: Matrix<DigitalValue>,
    pub entry_bound: u64,
    /// Lets private circulants contain `∞` entries. Off for honest runs.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_infinity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitalKeyPair {
    pub a1: Circulant<DigitalValue>,
    pub a2: Circulant<DigitalValue>,
    pub pk: Matrix<DigitalValue>,
}

fn sample_entry(rng: &mut ChaCha8Rng, bound: u64, allow_infinity: bool) -> DigitalValue {
    if allow_infinity && rng.gen_ratio(1, 8) {
        Infinity
    } else {
        Finite(rng.gen_range(0..=bound))
    }
}

impl DigitalParams {
    pub fn new(m: Matrix<DigitalValue>, entry_bound: u64) -> Result<Self> {
        let out_of_bound = m.as_slice().iter().any(|v| matches!(v, Finite(x) if *x > entry_bound));
        if out_of_bound {
            return Err(Error::InvalidParameter(format!(
                "public matrix entry exceeds the entry bound {entry_bound}"
            )));
        }
        Ok(DigitalParams {
            n: m.n(),
            m,
            entry_bound,
            allow_infinity: false,
        })
    }

    /// Public matrix with finite entries uniform in `[0, entry_bound]`.
    pub fn generate(n: usize, entry_bound: u64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::from_fn(n, |_, _| Finite(rng.gen_range(0..=entry_bound)));
        DigitalParams::new(m, entry_bound)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        check_dim(self.n, self.m.n())
    }

    pub fn keygen(&self, seed: u64) -> DigitalKeyPair {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            let c = (0..self.n)
                .map(|_| sample_entry(&mut rng, self.entry_bound, self.allow_infinity))
                .collect();
            Circulant::new(c).expect("n >= 1")
        };
        let a1 = draw();
        let a2 = draw();
        DigitalKeyPair::from_private(a1, a2, &self.m).expect("dimensions fixed by params")
    }
}

impl DigitalKeyPair {
    pub fn from_private(
        a1: Circulant<DigitalValue>,
        a2: Circulant<DigitalValue>,
        m: &Matrix<DigitalValue>,
    ) -> Result<Self> {
        let pk = a1.expand().mul(m)?.mul(&a2.expand())?;
        Ok(DigitalKeyPair { a1, a2, pk })
    }

    /// `A_1 ⊗ pk_other ⊗ A_2`.
    pub fn shared_key(&self, other_pk: &Matrix<DigitalValue>) -> Result<Matrix<DigitalValue>> {
        self.a1.expand().mul(other_pk)?.mul(&self.a2.expand())
    }
}

/// Outcome of [`attack`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalAttack {
    pub key: Matrix<DigitalValue>,
    /// Solution coefficients, indexed `i * n + j` for the pair `(C_i, C_j)`.
    pub z: Vec<DigitalValue>,
    pub unknowns: usize,
    pub equations: usize,
}

/// The linear system `pk_A = ⊕_{i,j} z_ij ⊗ C_i ⊗ M ⊗ C_j`.
pub fn attack_system(
    params: &DigitalParams,
    alice_pk: &Matrix<DigitalValue>,
) -> Result<LinearSystem<DigitalValue>> {
    params.validate()?;
    check_dim(params.n, alice_pk.n())?;
    let gens = circulant_generators(params.n);
    let (columns, _) = flatten_two_sided(&params.m, &gens, &gens)?;
    LinearSystem::new(columns, alice_pk.as_slice().to_vec())
}

/// Recovers the shared key from public data only.
pub fn attack(
    params: &DigitalParams,
    alice_pk: &Matrix<DigitalValue>,
    bob_pk: &Matrix<DigitalValue>,
) -> Result<DigitalAttack> {
    check_dim(params.n, bob_pk.n())?;
    let system = attack_system(params, alice_pk)?;
    let z = system.solve()?;
    let key = apply_solution(params.n, &z, bob_pk)?;
    Ok(DigitalAttack {
        key,
        unknowns: system.unknowns(),
        equations: system.equations(),
        z,
    })
}

/// `⊕_{i,j} z_ij ⊗ C_i ⊗ pk ⊗ C_j` for any coefficient vector `z`.
pub fn apply_solution(
    n: usize,
    z: &[DigitalValue],
    pk: &Matrix<DigitalValue>,
) -> Result<Matrix<DigitalValue>> {
    check_dim(n * n, z.len())?;
    let gens = circulant_generators(n);
    let (columns, _) = flatten_two_sided(pk, &gens, &gens)?;
    let system = LinearSystem::new(columns, vec![DigitalValue::ZERO; n * n])?;
    let flat = system.evaluate(z)?;
    Ok(Matrix::from_fn(n, |i, j| flat[i * n + j]))
}

/// An honest run: public parameters, both key pairs, both computed keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalExchange {
    pub params: DigitalParams,
    pub alice: DigitalKeyPair,
    pub bob: DigitalKeyPair,
    pub alice_key: Matrix<DigitalValue>,
    pub bob_key: Matrix<DigitalValue>,
}

impl DigitalExchange {
    pub fn run(params: DigitalParams, alice_seed: u64, bob_seed: u64) -> Result<Self> {
        params.validate()?;
        let alice = params.keygen(alice_seed);
        let bob = params.keygen(bob_seed);
        let alice_key = alice.shared_key(&bob.pk)?;
        let bob_key = bob.shared_key(&alice.pk)?;
        Ok(DigitalExchange {
            params,
            alice,
            bob,
            alice_key,
            bob_key,
        })
    }

    /// Public matrix and both key pairs all drawn from one seed.
    pub fn seeded(n: usize, entry_bound: u64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = DigitalParams::generate(n, entry_bound, rng.gen())?;
        DigitalExchange::run(params, rng.gen(), rng.gen())
    }

    pub fn keys_agree(&self) -> bool {
        self.alice_key == self.bob_key
    }
}
