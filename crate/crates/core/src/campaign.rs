//! Seeded attack campaigns over a parameter grid.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digital_kex::DigitalExchange;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::transcript::{attack_transcript, Transcript};
use crate::twisted_kex::{HMode, TwistedExchange};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum Grid {
    Digital { ns: Vec<usize>, entry_bound: u64 },
    /// `(p, n, m)`: `K = F_{p^n}`, group `D_2m`.
    Twisted { triples: Vec<(u64, usize, usize)>, h_mode: HMode },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub grid: Grid,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub scheme: &'static str,
    pub params: String,
    pub trial: usize,
    pub solve_ms: f64,
    pub attack_ms: f64,
    pub keys_agree: bool,
    pub success: bool,
    pub error: Option<String>,
}

/// splitmix64 finalizer, used to derive independent per-trial seeds.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, point: usize, trial: usize) -> u64 {
    mix(mix(master ^ mix(point as u64)) ^ trial as u64)
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        match &self.grid {
            Grid::Digital { ns, .. } => {
                if ns.is_empty() {
                    return Err(Error::InvalidParameter("grid is empty".into()));
                }
                if ns.contains(&0) {
                    return Err(Error::InvalidParameter("n must be at least 1".into()));
                }
            }
            Grid::Twisted { triples, .. } => {
                if triples.is_empty() {
                    return Err(Error::InvalidParameter("grid is empty".into()));
                }
                for &(p, n, m) in triples {
                    PrimeField::new(p)?;
                    crate::field::find_irreducible(p, n, 0)?;
                    if m == 0 || m > crate::twisted::MAX_M {
                        return Err(Error::InvalidParameter(format!("m must be in 1..={}", crate::twisted::MAX_M)));
                    }
                }
            }
        }
        Ok(())
    }

    fn points(&self) -> usize {
        match &self.grid {
            Grid::Digital { ns, .. } => ns.len(),
            Grid::Twisted { triples, .. } => triples.len(),
        }
    }

    /// One trial: honest exchange, then the attack on the public transcript.
    pub fn run_trial(&self, point: usize, trial: usize) -> TrialRow {
        let seed = trial_seed(self.seed, point, trial);
        let (scheme, params, transcript) = match &self.grid {
            Grid::Digital { ns, entry_bound } => {
                let n = ns[point];
                let t = DigitalExchange::seeded(n, *entry_bound, seed).map(|ex| Transcript::digital(&ex, seed, true));
                ("digital", format!("n={n}"), t)
            }
            Grid::Twisted { triples, h_mode } => {
                let (p, n, m) = triples[point];
                let t = TwistedExchange::seeded(p, n, m, seed, *h_mode).map(|ex| Transcript::twisted(&ex, seed, true));
                ("twisted", format!("p={p};n={n};m={m}"), t)
            }
        };
        let mut row = TrialRow {
            scheme,
            params,
            trial,
            solve_ms: 0.0,
            attack_ms: 0.0,
            keys_agree: false,
            success: false,
            error: None,
        };
        let outcome = transcript.and_then(|t| {
            row.keys_agree = t.keys_agree();
            attack_transcript(&t)
        });
        match outcome {
            Ok(report) => {
                row.solve_ms = report.solve_ms;
                row.attack_ms = report.attack_ms;
                row.success = row.keys_agree && report.attack_key_matches == Some(true);
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        row
    }

    /// All trials, ordered by grid point then trial index regardless of the
    /// order in which they ran.
    pub fn run(&self) -> Result<Vec<TrialRow>> {
        self.validate()?;
        let jobs: Vec<(usize, usize)> = (0..self.points())
            .flat_map(|p| (0..self.trials).map(move |t| (p, t)))
            .collect();
        Ok(jobs.par_iter().map(|&(p, t)| self.run_trial(p, t)).collect())
    }
}

/// `scheme,params,trial,solve_ms,attack_ms,success`. Timing columns are left
/// empty when `with_timing` is false so that reruns are byte-identical.
pub fn to_csv(rows: &[TrialRow], with_timing: bool) -> String {
    let mut out = String::from("scheme,params,trial,solve_ms,attack_ms,success\n");
    for r in rows {
        let (solve, attack) = if with_timing {
            (format!("{:.3}", r.solve_ms), format!("{:.3}", r.attack_ms))
        } else {
            (String::new(), String::new())
        };
        let _ = writeln!(out, "{},{},{},{},{},{}", r.scheme, r.params, r.trial, solve, attack, r.success);
    }
    out
}
