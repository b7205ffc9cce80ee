use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::structures::Signature;

use super::orders::{geq_lex, geq_surj};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Logic {
    Fo,
    Lfp,
    /// LFP with a parity quantifier.
    LfpParity,
}

impl Logic {
    pub const ALL: [Logic; 3] = [Logic::Fo, Logic::Lfp, Logic::LfpParity];
}

impl FromStr for Logic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fo" => Ok(Logic::Fo),
            "lfp" => Ok(Logic::Lfp),
            "lfpparity" | "lfp[+]" | "lfp-parity" => Ok(Logic::LfpParity),
            _ => Err(Error::pre(format!("unknown logic `{s}` (expected FO, LFP or LFPparity)"))),
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Fo => "FO",
            Logic::Lfp => "LFP",
            Logic::LfpParity => "LFPparity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Exists,
    NotExists,
    /// Exists exactly when one-way functions exist.
    IffOwf,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "Exists",
            Verdict::NotExists => "NotExists",
            Verdict::IffOwf => "IffOWF",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: String,
}

/// Whether a pseudorandom generator from σ-structures to τ-structures exists
/// with generator logic `gen` against adversaries in `adv`.
pub fn classify(gen: Logic, adv: Logic, sigma: &Signature, tau: &Signature) -> Result<Classification> {
    let c = |verdict, reason: String| Ok(Classification { verdict, reason });
    match (gen, adv) {
        (Logic::Fo | Logic::Lfp, _) => {
            let s = geq_surj(sigma, tau);
            match s.violating_k {
                None => c(Verdict::Exists, format!("{gen} generator: sigma >=_S tau")),
                Some(k) => c(Verdict::NotExists, format!("{gen} generator: sigma >=_S tau fails at k={k}")),
            }
        }
        (Logic::LfpParity, Logic::Fo | Logic::Lfp) => {
            let sigma_unary = sigma.all_unary();
            if !sigma_unary {
                c(Verdict::Exists, "LFPparity generator vs weaker adversary: sigma has a non-unary relation".into())
            } else if tau.all_unary() && sigma.len() >= tau.len() {
                c(
                    Verdict::Exists,
                    format!("LFPparity generator vs weaker adversary: both all-unary and {} >= {}", sigma.len(), tau.len()),
                )
            } else {
                c(
                    Verdict::NotExists,
                    "LFPparity generator vs weaker adversary: sigma all-unary and sigma <_L tau".into(),
                )
            }
        }
        (Logic::LfpParity, Logic::LfpParity) => {
            if geq_lex(sigma, tau)? {
                c(Verdict::Exists, "LFPparity vs LFPparity: sigma >=_L tau".into())
            } else if !sigma.all_unary() {
                c(Verdict::IffOwf, "LFPparity vs LFPparity: sigma <_L tau and sigma has a non-unary relation".into())
            } else {
                c(Verdict::NotExists, "LFPparity vs LFPparity: sigma <_L tau and sigma all-unary".into())
            }
        }
    }
}
