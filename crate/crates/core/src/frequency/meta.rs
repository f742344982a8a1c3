//! The online meta-algorithm for frequency predictions.
//!
//! It keeps a picking sequence for the goods that have not arrived yet. When a
//! good arrives it is placed first in a virtual profile, the not-yet-seen goods
//! carry the IDO profile of the still unused predicted values, and the
//! sequence is simulated on that profile. Whoever picks the arriving good gets
//! it, and the turn they used is deleted.

use super::picking::{check_cardinality, simulate_picking, PickingSequence};
use super::FrequencyMultiset;
use crate::error::{FairError, Result};
use crate::harness::OnlineAllocator;
use crate::model::Instance;
use crate::value::Value;

#[derive(Clone, Debug)]
pub struct FreqMetaAllocator {
    n: usize,
    remaining: Vec<FrequencyMultiset>,
    sequence: Vec<usize>,
    t: usize,
}

impl FreqMetaAllocator {
    pub fn new(multisets: Vec<FrequencyMultiset>, sequence: PickingSequence) -> Result<Self> {
        let m = check_cardinality(&multisets)?;
        let n = multisets.len();
        if sequence.len() != m {
            return Err(FairError::SequenceLengthMismatch {
                sequence: sequence.len(),
                goods: m,
            });
        }
        if let Some(&a) = sequence.turns().iter().find(|&&a| a >= n) {
            return Err(FairError::InvalidIndex(format!("agent {a} in picking sequence, n = {n}")));
        }
        Ok(FreqMetaAllocator {
            n,
            remaining: multisets,
            sequence: sequence.0,
            t: 0,
        })
    }

    /// The picking sequence for the goods still to come.
    pub fn sequence(&self) -> PickingSequence {
        PickingSequence(self.sequence.clone())
    }

    pub fn remaining(&self) -> &[FrequencyMultiset] {
        &self.remaining
    }
}

impl OnlineAllocator for FreqMetaAllocator {
    fn name(&self) -> &str {
        "freq-meta"
    }

    fn step(&mut self, values: &[Value]) -> Result<usize> {
        if values.len() != self.n {
            return Err(FairError::InvalidValue(format!("{} values for {} agents", values.len(), self.n)));
        }
        if self.sequence.is_empty() {
            return Err(FairError::ExhaustedPredictions { agent: 0 });
        }
        if let Some(agent) = (0..self.n).find(|&i| !self.remaining[i].contains(&values[i])) {
            return Err(FairError::PredictionViolated {
                agent,
                good: self.t,
                value: values[agent].to_string(),
            });
        }
        for (set, v) in self.remaining.iter_mut().zip(values) {
            set.remove_one(v);
        }
        let mut goods = Vec::with_capacity(self.sequence.len());
        goods.push(values.to_vec());
        for k in 0..self.remaining[0].len() {
            goods.push(self.remaining.iter().map(|s| s.values()[k].clone()).collect());
        }
        let table = Instance::new(self.n, goods)?;
        let outcome = simulate_picking(&PickingSequence(self.sequence.clone()), &table)?;
        let turn = outcome
            .picks
            .iter()
            .position(|&g| g == 0)
            .expect("every good is picked once");
        let agent = self.sequence.remove(turn);
        self.t += 1;
        Ok(agent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run_stream;

    fn ints(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::integer(x)).collect()
    }

    fn ms(xs: &[i64]) -> FrequencyMultiset {
        FrequencyMultiset::new(ints(xs))
    }

    #[test]
    fn hand_trace() {
        let inst = Instance::from_columns(&[ints(&[1, 3, 2]), ints(&[2, 1, 3])]).unwrap();
        let mut alg = FreqMetaAllocator::new(vec![ms(&[3, 2, 1]), ms(&[3, 2, 1])], PickingSequence(vec![0, 1, 0])).unwrap();
        let alloc = run_stream(&mut alg, &inst).unwrap();
        assert_eq!(alloc.bundles(), vec![vec![1, 2], vec![0]]);
        assert_eq!(alloc.bundle_values(&inst), ints(&[5, 2]));
        assert!(alg.sequence().is_empty());
    }

    #[test]
    fn single_agent_sequence_takes_everything() {
        let inst = Instance::from_columns(&[ints(&[1, 5, 2]), ints(&[7, 1, 3])]).unwrap();
        let mut alg =
            FreqMetaAllocator::new(vec![ms(&[1, 5, 2]), ms(&[7, 1, 3])], PickingSequence(vec![0, 0, 0])).unwrap();
        assert_eq!(run_stream(&mut alg, &inst).unwrap().owner(), &[0, 0, 0]);
    }

    #[test]
    fn refuses_unpredicted_values() {
        let mut alg = FreqMetaAllocator::new(vec![ms(&[1]), ms(&[1])], PickingSequence(vec![0])).unwrap();
        let err = alg.step(&ints(&[1, 2])).unwrap_err();
        assert!(matches!(err, FairError::PredictionViolated { agent: 1, good: 0, .. }));
    }
}
