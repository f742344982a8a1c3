//! Registry of the built-in online algorithms and the advice each one needs.

use std::fmt;
use std::str::FromStr;

use crate::error::{FairError, Result};
use crate::fairness::BruteForceBudget;
use crate::frequency::{FreqMetaAllocator, FrequencyMultiset, ShareOracle};
use crate::harness::OnlineAllocator;
use crate::model::Advice;
use crate::online::{DumpAllocator, GreedyAllocator, NormAllocator, RoundRobinAllocator, ThresholdAllocator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Norm,
    FreqRoundRobin,
    FreqLeximin,
    FreqBruteForce,
    Threshold,
    Greedy,
    Dump,
    RoundRobin,
}

impl Algorithm {
    pub fn all() -> [Algorithm; 8] {
        [
            Algorithm::Norm,
            Algorithm::FreqRoundRobin,
            Algorithm::FreqLeximin,
            Algorithm::FreqBruteForce,
            Algorithm::Threshold,
            Algorithm::Greedy,
            Algorithm::Dump,
            Algorithm::RoundRobin,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Norm => "norm",
            Algorithm::FreqRoundRobin => "freq-rr",
            Algorithm::FreqLeximin => "freq-leximin",
            Algorithm::FreqBruteForce => "freq-bruteforce",
            Algorithm::Threshold => "threshold",
            Algorithm::Greedy => "greedy",
            Algorithm::Dump => "dump",
            Algorithm::RoundRobin => "round-robin",
        }
    }

    /// Threshold and greedy reject goods that agents value differently.
    pub fn requires_identical(&self) -> bool {
        matches!(self, Algorithm::Threshold | Algorithm::Greedy)
    }

    /// Whether the algorithm runs without any advice.
    pub fn needs_no_advice(&self) -> bool {
        matches!(self, Algorithm::Greedy | Algorithm::Dump | Algorithm::RoundRobin)
    }

    pub fn build(&self, n: usize, advice: &Advice) -> Result<Box<dyn OnlineAllocator>> {
        self.build_with(n, advice, BruteForceBudget::default())
    }

    /// Initializes the allocator; fails with `AdviceMismatch` when the advice
    /// is of a kind it cannot use.
    pub fn build_with(&self, n: usize, advice: &Advice, budget: BruteForceBudget) -> Result<Box<dyn OnlineAllocator>> {
        if n == 0 {
            return Err(FairError::InvalidValue("no agents".into()));
        }
        advice.validate(n)?;
        Ok(match self {
            Algorithm::Norm => Box::new(NormAllocator::new(n, advice)?),
            Algorithm::Threshold => Box::new(ThresholdAllocator::new(n, advice)?),
            Algorithm::Greedy => Box::new(GreedyAllocator::new(n)),
            Algorithm::Dump => Box::new(DumpAllocator),
            Algorithm::RoundRobin => Box::new(RoundRobinAllocator::new(n)?),
            Algorithm::FreqRoundRobin | Algorithm::FreqLeximin | Algorithm::FreqBruteForce => {
                let Advice::Frequency(sets) = advice else {
                    return Err(FairError::AdviceMismatch(format!(
                        "{} needs frequency predictions, got {}",
                        self.name(),
                        advice.kind()
                    )));
                };
                let oracle = match self {
                    Algorithm::FreqRoundRobin => ShareOracle::RoundRobin,
                    Algorithm::FreqLeximin => {
                        if n != 2 {
                            return Err(FairError::AdviceMismatch(format!("freq-leximin needs n = 2, got {n}")));
                        }
                        ShareOracle::Leximin(budget)
                    }
                    _ => ShareOracle::BruteForce(budget),
                };
                let multisets: Vec<FrequencyMultiset> = sets.iter().cloned().map(FrequencyMultiset::new).collect();
                let share = oracle.compute(&multisets)?;
                Box::new(FreqMetaAllocator::new(multisets, share.sequence)?)
            }
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = FairError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::all()
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| FairError::Parse(format!("unknown algorithm {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::Value;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::all() {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("nope".parse::<Algorithm>().is_err());
    }

    #[test]
    fn advice_compatibility() {
        let totals = Advice::Totals(vec![Value::one(); 3]);
        assert!(Algorithm::Norm.build(3, &totals).is_ok());
        assert!(matches!(Algorithm::FreqRoundRobin.build(3, &totals), Err(FairError::AdviceMismatch(_))));
        let freq = Advice::Frequency(vec![vec![Value::one()]; 3]);
        assert!(matches!(Algorithm::FreqLeximin.build(3, &freq), Err(FairError::AdviceMismatch(_))));
        assert!(matches!(Algorithm::Threshold.build(3, &totals), Err(FairError::AdviceMismatch(_))));
        assert!(Algorithm::Dump.build(3, &Advice::None).is_ok());
    }
}
