use crate::error::{FairError, Result};
use crate::frequency::{FreqMetaAllocator, FrequencyMultiset, ShareOracle, ShareResult};
use crate::harness::OnlineAllocator;
use crate::model::{Allocation, Instance};
use crate::value::Value;

/// Maps each observed value to one of an agent's still unused predicted
/// values, so that the meta-algorithm only ever sees predicted values.
pub trait InstantiationRule {
    fn instantiate(&mut self, agent: usize, observed: &Value) -> Result<Value>;
}

/// Picks the closest unused predicted value, the smaller one on ties.
#[derive(Clone, Debug)]
pub struct ClosestMatch {
    unused: Vec<FrequencyMultiset>,
}

impl ClosestMatch {
    pub fn new(predicted: Vec<FrequencyMultiset>) -> Self {
        ClosestMatch { unused: predicted }
    }
}

impl InstantiationRule for ClosestMatch {
    fn instantiate(&mut self, agent: usize, observed: &Value) -> Result<Value> {
        let set = self
            .unused
            .get_mut(agent)
            .ok_or_else(|| FairError::InvalidIndex(format!("agent {agent}")))?;
        instantiate_closest(set, observed, agent)
    }
}

/// Removes and returns the unused value closest to `observed`.
pub fn instantiate_closest(unused: &mut FrequencyMultiset, observed: &Value, agent: usize) -> Result<Value> {
    let k = unused
        .values()
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (*a - observed).abs().cmp(&(*b - observed).abs()).then(a.cmp(b)))
        .map(|(k, _)| k)
        .ok_or(FairError::ExhaustedPredictions { agent })?;
    Ok(unused.remove_at(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantiationTrace {
    /// `virtual_values[t][i]`: the predicted value that stood in for
    /// `v_i(g_t)`.
    pub virtual_values: Vec<Vec<Value>>,
    /// `sum_t |v_i(g_t) - virtual_i(g_t)|`.
    pub eta: Vec<Value>,
    /// `min(1, eta_i / s_i)`, or 0 when the share `s_i` is 0.
    pub eps: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoisyFreqOutcome {
    pub allocation: Allocation,
    pub trace: InstantiationTrace,
    pub share: ShareResult,
    /// Realized `v_i(A_i)`.
    pub values: Vec<Value>,
    /// `v_i(A_i) >= (1 - eps_i) s_i` for every agent.
    pub guarantee_holds: bool,
    /// `v_i(A_i) >= s_i - eta_i` for every agent.
    pub additive_holds: bool,
    /// Sorted-matching cost between each agent's realized and predicted
    /// multisets.
    pub wasserstein: Vec<Value>,
    /// `eta_i` is at least the matching cost for every agent.
    pub wasserstein_holds: bool,
}

/// Runs the meta-algorithm on predicted multisets, instantiating each
/// arriving value with the closest unused prediction.
pub fn noisy_freq_run(instance: &Instance, predicted: &[Vec<Value>], oracle: ShareOracle) -> Result<NoisyFreqOutcome> {
    let sets: Vec<FrequencyMultiset> = predicted.iter().cloned().map(FrequencyMultiset::new).collect();
    noisy_freq_run_with(instance, predicted, oracle, &mut ClosestMatch::new(sets))
}

pub fn noisy_freq_run_with(
    instance: &Instance,
    predicted: &[Vec<Value>],
    oracle: ShareOracle,
    rule: &mut dyn InstantiationRule,
) -> Result<NoisyFreqOutcome> {
    let n = instance.n();
    let m = instance.m();
    if predicted.len() != n {
        return Err(FairError::CardinalityMismatch(format!("{} predicted multisets for {n} agents", predicted.len())));
    }
    if let Some((agent, p)) = predicted.iter().enumerate().find(|(_, p)| p.len() != m) {
        return Err(FairError::CardinalityMismatch(format!(
            "agent {agent} has {} predicted values for {m} goods",
            p.len()
        )));
    }
    let sets: Vec<FrequencyMultiset> = predicted.iter().cloned().map(FrequencyMultiset::new).collect();
    let share = oracle.compute(&sets)?;
    let mut alg = FreqMetaAllocator::new(sets, share.sequence.clone())?;
    let mut owner = Vec::with_capacity(m);
    let mut virtual_values = Vec::with_capacity(m);
    for good in instance.goods() {
        let virt = good
            .iter()
            .enumerate()
            .map(|(i, v)| rule.instantiate(i, v))
            .collect::<Result<Vec<Value>>>()?;
        owner.push(alg.step(&virt)?);
        virtual_values.push(virt);
    }
    let allocation = Allocation::new(n, owner)?;
    let values = allocation.bundle_values(instance);
    let eta: Vec<Value> = (0..n)
        .map(|i| {
            instance
                .goods()
                .iter()
                .zip(&virtual_values)
                .map(|(g, v)| (&g[i] - &v[i]).abs())
                .sum()
        })
        .collect();
    let eps: Vec<Value> = eta
        .iter()
        .zip(&share.benchmark)
        .map(|(e, s)| {
            if s.is_zero() {
                Value::zero()
            } else {
                std::cmp::min(Value::one(), e / s)
            }
        })
        .collect();
    let one = Value::one();
    let guarantee_holds = (0..n).all(|i| values[i] >= (&one - &eps[i]) * &share.benchmark[i]);
    let additive_holds = (0..n).all(|i| values[i] >= &share.benchmark[i] - &eta[i]);
    let wasserstein: Vec<Value> = (0..n)
        .map(|i| sorted_matching_cost(&instance.column(i), &predicted[i]))
        .collect::<Result<_>>()?;
    let wasserstein_holds = eta.iter().zip(&wasserstein).all(|(e, w)| e >= w);
    Ok(NoisyFreqOutcome {
        allocation,
        trace: InstantiationTrace {
            virtual_values,
            eta,
            eps,
        },
        share,
        values,
        guarantee_holds,
        additive_holds,
        wasserstein,
        wasserstein_holds,
    })
}

/// Cost of matching two equal-size multisets in sorted order, which is the
/// optimal matching on the line.
pub fn sorted_matching_cost(a: &[Value], b: &[Value]) -> Result<Value> {
    if a.len() != b.len() {
        return Err(FairError::CardinalityMismatch(format!("{} vs {} values", a.len(), b.len())));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frequency::run_freq_pipeline;

    fn ints(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::integer(x)).collect()
    }

    #[test]
    fn closest_examples() {
        let mut s = FrequencyMultiset::new(ints(&[3, 2, 1]));
        assert_eq!(instantiate_closest(&mut s, &Value::integer(2), 0).unwrap(), Value::integer(2));
        assert_eq!(s.values(), &ints(&[3, 1])[..]);
        assert_eq!(instantiate_closest(&mut s, &Value::integer(2), 0).unwrap(), Value::integer(1));
        assert_eq!(s.values(), &ints(&[3])[..]);
        let mut s = FrequencyMultiset::new(ints(&[5]));
        assert_eq!(instantiate_closest(&mut s, &Value::zero(), 0).unwrap(), Value::integer(5));
        assert_eq!(instantiate_closest(&mut s, &Value::zero(), 4), Err(FairError::ExhaustedPredictions { agent: 4 }));
    }

    #[test]
    fn exact_predictions_match_pipeline() {
        let inst = Instance::from_columns(&[ints(&[1, 3, 2, 5]), ints(&[2, 1, 3, 0])]).unwrap();
        let predicted: Vec<Vec<Value>> = (0..2).map(|i| inst.column(i)).collect();
        let out = noisy_freq_run(&inst, &predicted, ShareOracle::RoundRobin).unwrap();
        assert!(out.trace.eta.iter().all(Value::is_zero));
        assert!(out.trace.eps.iter().all(Value::is_zero));
        let plain = run_freq_pipeline(&inst, ShareOracle::RoundRobin).unwrap();
        assert_eq!(out.allocation, plain.allocation);
        assert!(out.guarantee_holds && out.additive_holds && out.wasserstein_holds);
    }

    #[test]
    fn perturbed_prediction() {
        let lambda = Value::ratio(1, 10);
        let col = vec![Value::ratio(1, 2), Value::ratio(1, 5), Value::ratio(3, 10), Value::ratio(7, 10), Value::ratio(1, 10)];
        let inst = Instance::from_columns(&[col.clone(), col.iter().rev().cloned().collect()]).unwrap();
        let mut predicted: Vec<Vec<Value>> = (0..2).map(|i| inst.column(i)).collect();
        predicted[0][3] = &predicted[0][3] + &lambda;
        let out = noisy_freq_run(&inst, &predicted, ShareOracle::RoundRobin).unwrap();
        assert!(out.trace.eta[0] <= &lambda * Value::integer(2));
        assert!(out.guarantee_holds && out.additive_holds && out.wasserstein_holds);
        // The virtual values of each agent are exactly its predictions.
        for (i, p) in predicted.iter().enumerate() {
            let mut used: Vec<Value> = out.trace.virtual_values.iter().map(|v| v[i].clone()).collect();
            let mut want = p.clone();
            used.sort();
            want.sort();
            assert_eq!(used, want);
        }
    }

    #[test]
    fn zero_share_means_zero_eps() {
        let inst = Instance::from_columns(&[ints(&[1, 1]), ints(&[1, 1])]).unwrap();
        let predicted = vec![ints(&[0, 0]), ints(&[1, 1])];
        let out = noisy_freq_run(&inst, &predicted, ShareOracle::RoundRobin).unwrap();
        assert_eq!(out.trace.eps[0], Value::zero());
        assert!(out.guarantee_holds);
    }
}
