//! JSON transcripts of honest exchanges, and attacks run on their public part.
//!
//! ```json
//! {"scheme": "digital", "seed": 7, "params": {..}, "alice_pk": {..},
//!  "bob_pk": {..}, "keys_agree": true, "private": {..}}
//! ```
//!
//! `private` (both key pairs and the shared key) is only written on request.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::digital::DigitalValue;
use crate::digital_kex::{self, DigitalExchange, DigitalKeyPair, DigitalParams};
use crate::error::{Error, Result};
use crate::field::{gauss_solve, FieldCtx};
use crate::matrix::Matrix;
use crate::twisted::{ElementJson, TwistedCtx, TwistedElement};
use crate::twisted_kex::{self, TwistedExchange, TwistedKeyPair, TwistedParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Transcript {
    Digital(DigitalTranscript),
    Twisted(TwistedTranscript),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitalTranscript {
    pub seed: u64,
    pub params: DigitalParams,
    pub alice_pk: Matrix<DigitalValue>,
    pub bob_pk: Matrix<DigitalValue>,
    pub keys_agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub private: Option<DigitalPrivate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitalPrivate {
    pub alice: DigitalKeyPair,
    pub bob: DigitalKeyPair,
    pub shared_key: Matrix<DigitalValue>,
}

/// `{"p", "n", "m", "modulus", "t", "h"}`; `h` lists its non-zero
/// coefficients as `[i, k, [..]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedParamsJson {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub t: Vec<u32>,
    pub h: Vec<(usize, u8, Vec<u32>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedTranscript {
    pub seed: u64,
    pub params: TwistedParamsJson,
    pub alice_pk: ElementJson,
    pub bob_pk: ElementJson,
    pub keys_agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub private: Option<TwistedPrivate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedKeyPairJson {
    pub g: ElementJson,
    pub k: ElementJson,
    pub pk: ElementJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedPrivate {
    pub alice: TwistedKeyPairJson,
    pub bob: TwistedKeyPairJson,
    pub shared_key: ElementJson,
}

impl TwistedParamsJson {
    pub fn from_params(params: &TwistedParams) -> Self {
        let field = params.ctx.field();
        TwistedParamsJson {
            p: u64::from(field.p()),
            n: field.n(),
            m: params.ctx.m(),
            modulus: field.modulus().to_vec(),
            t: field.t().coeffs().to_vec(),
            h: params.ctx.to_json(&params.h).coeffs,
        }
    }

    pub fn to_params(&self) -> Result<TwistedParams> {
        if self.modulus.len() != self.n + 1 {
            return Err(Error::InvalidParameter("modulus degree does not match n".into()));
        }
        let field = FieldCtx::from_parts(self.p, self.modulus.clone(), self.t.clone())?;
        let ctx = TwistedCtx::new(field.clone(), self.m)?;
        let h = ctx.from_json(&ElementJson {
            m: self.m,
            field,
            coeffs: self.h.clone(),
        })?;
        TwistedParams::new(ctx, h)
    }
}

impl Transcript {
    pub fn digital(ex: &DigitalExchange, seed: u64, insecure_dump: bool) -> Self {
        Transcript::Digital(DigitalTranscript {
            seed,
            params: ex.params.clone(),
            alice_pk: ex.alice.pk.clone(),
            bob_pk: ex.bob.pk.clone(),
            keys_agree: ex.keys_agree(),
            private: insecure_dump.then(|| DigitalPrivate {
                alice: ex.alice.clone(),
                bob: ex.bob.clone(),
                shared_key: ex.alice_key.clone(),
            }),
        })
    }

    pub fn twisted(ex: &TwistedExchange, seed: u64, insecure_dump: bool) -> Self {
        let ctx = &ex.params.ctx;
        let pair = |kp: &TwistedKeyPair| TwistedKeyPairJson {
            g: ctx.to_json(&kp.g),
            k: ctx.to_json(&kp.k),
            pk: ctx.to_json(&kp.pk),
        };
        Transcript::Twisted(TwistedTranscript {
            seed,
            params: TwistedParamsJson::from_params(&ex.params),
            alice_pk: ctx.to_json(&ex.alice.pk),
            bob_pk: ctx.to_json(&ex.bob.pk),
            keys_agree: ex.keys_agree(),
            private: insecure_dump.then(|| TwistedPrivate {
                alice: pair(&ex.alice),
                bob: pair(&ex.bob),
                shared_key: ctx.to_json(&ex.alice_key),
            }),
        })
    }

    pub fn scheme(&self) -> &'static str {
        match self {
            Transcript::Digital(_) => "digital",
            Transcript::Twisted(_) => "twisted",
        }
    }

    pub fn keys_agree(&self) -> bool {
        match self {
            Transcript::Digital(t) => t.keys_agree,
            Transcript::Twisted(t) => t.keys_agree,
        }
    }

    pub fn has_private(&self) -> bool {
        match self {
            Transcript::Digital(t) => t.private.is_some(),
            Transcript::Twisted(t) => t.private.is_some(),
        }
    }

    /// Copy with the private section removed.
    pub fn public_only(&self) -> Transcript {
        let mut out = self.clone();
        match &mut out {
            Transcript::Digital(t) => t.private = None,
            Transcript::Twisted(t) => t.private = None,
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts always serialize")
    }
}

/// The key an attack produced, in the scheme's own representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecoveredKey {
    Digital(Matrix<DigitalValue>),
    Twisted(TwistedElement),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackReport {
    pub scheme: &'static str,
    pub unknowns: usize,
    pub equations: usize,
    /// Building and solving the linear system.
    pub solve_ms: f64,
    /// The whole attack, including the final key assembly.
    pub attack_ms: f64,
    /// `None` when the transcript carries no shared key to compare against.
    pub attack_key_matches: Option<bool>,
    #[serde(skip)]
    pub key: RecoveredKey,
}

fn millis(since: Instant) -> f64 {
    (since.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Runs the matching attack. Only the public fields are handed to it; the
/// stored shared key, if any, is used afterwards for the verdict.
pub fn attack_transcript(transcript: &Transcript) -> Result<AttackReport> {
    let public = transcript.public_only();
    let mut report = match &public {
        Transcript::Digital(t) => attack_digital(&t.params, &t.alice_pk, &t.bob_pk)?,
        Transcript::Twisted(t) => attack_twisted(&t.params, &t.alice_pk, &t.bob_pk)?,
    };
    report.attack_key_matches = match (transcript, &report.key) {
        (Transcript::Digital(t), RecoveredKey::Digital(key)) => t.private.as_ref().map(|p| &p.shared_key == key),
        (Transcript::Twisted(t), RecoveredKey::Twisted(key)) => match &t.private {
            Some(p) => {
                let ctx = p.shared_key.context()?;
                Some(ctx.from_json(&p.shared_key)? == *key)
            }
            None => None,
        },
        _ => unreachable!("attack returns the transcript's scheme"),
    };
    Ok(report)
}

fn attack_digital(
    params: &DigitalParams,
    alice_pk: &Matrix<DigitalValue>,
    bob_pk: &Matrix<DigitalValue>,
) -> Result<AttackReport> {
    let start = Instant::now();
    let system = digital_kex::attack_system(params, alice_pk)?;
    let z = system.solve()?;
    let solve_ms = millis(start);
    let key = digital_kex::apply_solution(params.n, &z, bob_pk)?;
    Ok(AttackReport {
        scheme: "digital",
        unknowns: system.unknowns(),
        equations: system.equations(),
        solve_ms,
        attack_ms: millis(start),
        attack_key_matches: None,
        key: RecoveredKey::Digital(key),
    })
}

fn attack_twisted(params: &TwistedParamsJson, alice_pk: &ElementJson, bob_pk: &ElementJson) -> Result<AttackReport> {
    let params = params.to_params()?;
    let alice_pk = params.ctx.from_json(alice_pk)?;
    let bob_pk = params.ctx.from_json(bob_pk)?;
    let start = Instant::now();
    let (a, b) = twisted_kex::attack_system(&params, &alice_pk)?;
    let z = gauss_solve(params.ctx.field().prime_field(), &a, &b)?
        .ok_or_else(|| Error::NoSolution("public key is not in the span of the basis products".into()))?;
    let solve_ms = millis(start);
    let key = twisted_kex::apply_solution(&params, &z, &bob_pk)?;
    Ok(AttackReport {
        scheme: "twisted",
        unknowns: a.cols(),
        equations: a.rows(),
        solve_ms,
        attack_ms: millis(start),
        attack_key_matches: None,
        key: RecoveredKey::Twisted(key),
    })
}
