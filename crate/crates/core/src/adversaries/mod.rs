//! Adaptive adversaries, each of which bounds the fairness factor that any
//! online algorithm can reach against it.
//!
//! Constructions that single out "the agent who got the first good" track
//! that agent concretely and lay out the rest of the stream around it.

mod freq;
mod identical;
mod noinfo;
mod norm;
mod script;

pub use freq::FreqEfxThree;
pub use identical::{IdenticalNormEfx, IdenticalNormEfxTwo};
pub use noinfo::{IdenticalNoInfoEfx, NoInfoEf1};
pub use norm::{NormEf1Three, NormEfxTwo};

use std::fmt;
use std::str::FromStr;

use crate::algorithms::Algorithm;
use crate::error::{FairError, Result};
use crate::fairness::BruteForceBudget;
use crate::harness::{run_match, Adversary, Bound, Transcript};
use crate::value::{ExtendedFactor, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdversaryKind {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
}

impl AdversaryKind {
    pub fn all() -> [AdversaryKind; 7] {
        use AdversaryKind::*;
        [A1, A2, A3, A4, A5, A6, A7]
    }

    pub fn name(&self) -> &'static str {
        match self {
            AdversaryKind::A1 => "a1",
            AdversaryKind::A2 => "a2",
            AdversaryKind::A3 => "a3",
            AdversaryKind::A4 => "a4",
            AdversaryKind::A5 => "a5",
            AdversaryKind::A6 => "a6",
            AdversaryKind::A7 => "a7",
        }
    }

    /// Agent count used when none is given.
    pub fn default_n(&self) -> usize {
        match self {
            AdversaryKind::A3 | AdversaryKind::A4 | AdversaryKind::A6 => 3,
            _ => 2,
        }
    }

    pub fn build(&self, params: &AdversaryParams) -> Result<Box<dyn Adversary>> {
        let n = params.n.unwrap_or_else(|| self.default_n());
        let p = params;
        Ok(match self {
            AdversaryKind::A1 => Box::new(NoInfoEf1::new(n, p.big_k.clone())?),
            AdversaryKind::A2 => {
                fixed_n(n, 2, *self)?;
                Box::new(NormEfxTwo::new(p.k)?)
            }
            AdversaryKind::A3 => Box::new(NormEf1Three::new(n, p.epsilon.clone(), p.delta.clone())?),
            AdversaryKind::A4 => Box::new(FreqEfxThree::new(n, p.epsilon.clone(), p.big_k.clone())?),
            AdversaryKind::A5 if n >= 3 => Box::new(IdenticalNormEfx::new(n, p.epsilon.clone())?.without_advice()),
            AdversaryKind::A5 => {
                fixed_n(n, 2, *self)?;
                Box::new(IdenticalNoInfoEfx::new(p.big_k.clone())?)
            }
            AdversaryKind::A6 => Box::new(IdenticalNormEfx::new(n, p.epsilon.clone())?),
            AdversaryKind::A7 => {
                fixed_n(n, 2, *self)?;
                Box::new(IdenticalNormEfxTwo::new(p.epsilon.clone())?)
            }
        })
    }
}

fn fixed_n(n: usize, want: usize, kind: AdversaryKind) -> Result<()> {
    if n != want {
        return Err(FairError::InvalidValue(format!("{} needs n = {want}, got {n}", kind.name())));
    }
    Ok(())
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdversaryKind {
    type Err = FairError;

    fn from_str(s: &str) -> Result<Self> {
        AdversaryKind::all()
            .into_iter()
            .find(|k| k.name() == s.to_ascii_lowercase())
            .ok_or_else(|| FairError::Parse(format!("unknown adversary {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryParams {
    pub n: Option<usize>,
    pub big_k: Value,
    pub epsilon: Value,
    pub delta: Value,
    /// Exponent parameter of the two-agent EFX construction with totals.
    pub k: u32,
}

impl Default for AdversaryParams {
    fn default() -> Self {
        AdversaryParams {
            n: None,
            big_k: Value::integer(100),
            epsilon: Value::ratio(1, 100),
            delta: Value::integer(100),
            k: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certification {
    pub transcript: Transcript,
    pub bound: Bound,
    pub measured: ExtendedFactor,
    pub branch: Option<String>,
    /// `measured <= ceiling`. False means a bug in an adversary or checker.
    pub holds: bool,
}

/// Plays `algorithm` against `adversary` and compares the measured factor of
/// the targeted property with the adversary's ceiling.
pub fn certify_bound(
    adversary: &mut dyn Adversary,
    algorithm: &Algorithm,
    budget: BruteForceBudget,
) -> Result<Certification> {
    let transcript = run_match(algorithm, adversary, budget)?;
    let bound = adversary.bound();
    let measured = transcript
        .report
        .get(bound.property)
        .cloned()
        .ok_or_else(|| FairError::BruteForceBudgetExceeded {
            n: transcript.instance.n(),
            m: transcript.instance.m(),
            max_agents: budget.max_agents,
            max_goods: budget.max_goods,
        })?;
    let holds = measured.at_most(&bound.ceiling);
    Ok(Certification {
        branch: adversary.branch().map(str::to_owned),
        transcript,
        bound,
        measured,
        holds,
    })
}
