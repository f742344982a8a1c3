use std::fmt;

use super::FrequencyMultiset;
use crate::error::{FairError, Result};
use crate::model::{Allocation, Instance};
use crate::value::Value;

/// Agent turns, one per good.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PickingSequence(pub Vec<usize>);

impl PickingSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn turns(&self) -> &[usize] {
        &self.0
    }

    /// Turn indices of one agent.
    pub fn turns_of(&self, agent: usize) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| self.0[k] == agent).collect()
    }

    /// Number of turns per agent.
    pub fn counts(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for &a in &self.0 {
            c[a] += 1;
        }
        c
    }
}

/// Shown 1-based, e.g. `(1,2,1)`.
impl fmt::Display for PickingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| (a + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Values of the goods `g_first, ..., g_{first+m-1}` in which every agent's
/// values are nonincreasing in the good index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdoProfile {
    pub first_good: usize,
    pub table: Instance,
}

/// The `k`-th largest value of every agent goes to the `k`-th good.
pub fn ido_profile(multisets: &[FrequencyMultiset], first_good: usize) -> Result<IdoProfile> {
    let columns: Vec<Vec<Value>> = multisets.iter().map(|s| s.values().to_vec()).collect();
    check_cardinality(multisets)?;
    Ok(IdoProfile {
        first_good,
        table: Instance::from_columns(&columns)?,
    })
}

pub(crate) fn check_cardinality(multisets: &[FrequencyMultiset]) -> Result<usize> {
    let m = multisets
        .first()
        .ok_or_else(|| FairError::CardinalityMismatch("no agents".into()))?
        .len();
    if let Some((agent, s)) = multisets.iter().enumerate().find(|(_, s)| s.len() != m) {
        return Err(FairError::CardinalityMismatch(format!(
            "agent 0 has {m} values, agent {agent} has {}",
            s.len()
        )));
    }
    Ok(m)
}

/// Result of running a picking sequence on a value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PickOutcome {
    pub allocation: Allocation,
    /// `picks[k]` is the good taken at turn `k`.
    pub picks: Vec<usize>,
}

/// Each scheduled agent takes its highest-valued remaining good, ties to the
/// lowest good index.
pub fn simulate_picking(sequence: &PickingSequence, table: &Instance) -> Result<PickOutcome> {
    let m = table.m();
    if sequence.len() != m {
        return Err(FairError::SequenceLengthMismatch {
            sequence: sequence.len(),
            goods: m,
        });
    }
    let mut taken = vec![false; m];
    let mut owner = vec![0; m];
    let mut picks = Vec::with_capacity(m);
    for &agent in sequence.turns() {
        if agent >= table.n() {
            return Err(FairError::InvalidIndex(format!("agent {agent} in picking sequence, n = {}", table.n())));
        }
        let mut best: Option<usize> = None;
        for g in (0..m).filter(|&g| !taken[g]) {
            if best.is_none_or(|b| table.value(agent, g) > table.value(agent, b)) {
                best = Some(g);
            }
        }
        let g = best.expect("a good remains for every turn");
        taken[g] = true;
        owner[g] = agent;
        picks.push(g);
    }
    Ok(PickOutcome {
        allocation: Allocation::new(table.n(), owner)?,
        picks,
    })
}

/// Under an IDO profile the `k`-th pick is always good `k`, so the owner
/// vector is the picking sequence.
pub fn allocation_to_sequence(allocation: &Allocation, profile: &Instance) -> Result<PickingSequence> {
    if allocation.m() != profile.m() {
        return Err(FairError::SequenceLengthMismatch {
            sequence: allocation.m(),
            goods: profile.m(),
        });
    }
    for agent in 0..profile.n() {
        if (1..profile.m()).any(|g| profile.value(agent, g) > profile.value(agent, g - 1)) {
            return Err(FairError::NotIdo { agent });
        }
    }
    Ok(PickingSequence(allocation.owner().to_vec()))
}

/// Value each agent receives when `sequence` is played on `profile`.
pub fn sequence_values(sequence: &PickingSequence, profile: &Instance) -> Result<Vec<Value>> {
    Ok(simulate_picking(sequence, profile)?.allocation.bundle_values(profile))
}
