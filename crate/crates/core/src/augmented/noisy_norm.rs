use crate::error::{FairError, Result};
use crate::harness::run_stream;
use crate::model::{Advice, Allocation, Instance};
use crate::online::NormAllocator;
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoisyNormReport {
    /// `upper_i - lower_i`.
    pub rho: Vec<Value>,
    /// `lower_i / upper_i`.
    pub kappa: Vec<Value>,
    /// For two agents, the smallest `v_i(A_i) - v_i(A_j - g) + rho_i` with
    /// `g` the most valued good in `A_j`. Nonnegative means the additive
    /// EF1 guarantee holds.
    pub additive_ef1_margin: Option<Value>,
    /// Every agent reaches `kappa_i * v_i(G) / n` after adding one good.
    pub kappa_prop1: bool,
    pub certificates_hold: bool,
}

impl NoisyNormReport {
    pub fn additive_ef1(&self) -> Option<bool> {
        self.additive_ef1_margin.as_ref().map(|m| !m.is_negative())
    }

    pub fn min_kappa(&self) -> Value {
        self.kappa.iter().min().cloned().unwrap_or_else(Value::one)
    }
}

/// Runs the normalization allocator scaled by each lower bound.
pub fn noisy_norm_run(instance: &Instance, intervals: &[(Value, Value)]) -> Result<(Allocation, NoisyNormReport)> {
    let n = instance.n();
    if intervals.len() != n {
        return Err(FairError::InvalidAdvice(format!("{} intervals for {n} agents", intervals.len())));
    }
    for (agent, (lo, hi)) in intervals.iter().enumerate() {
        let total = instance.total(agent);
        if !lo.is_positive() || lo > &total || &total > hi {
            return Err(FairError::InvalidInterval {
                agent,
                reason: format!("need 0 < lower <= total <= upper, got {lo} <= {total} <= {hi}"),
            });
        }
    }
    let mut alg = NormAllocator::new(n, &Advice::TotalIntervals(intervals.to_vec()))?;
    let allocation = run_stream(&mut alg, instance)?;
    let rho: Vec<Value> = intervals.iter().map(|(lo, hi)| hi - lo).collect();
    let kappa: Vec<Value> = intervals.iter().map(|(lo, hi)| lo / hi).collect();
    let additive_ef1_margin = (n == 2).then(|| additive_ef1_margin(instance, &allocation, &rho));
    let kappa_prop1 = kappa_prop1_holds(instance, &allocation, &kappa);
    Ok((
        allocation,
        NoisyNormReport {
            rho,
            kappa,
            additive_ef1_margin,
            kappa_prop1,
            certificates_hold: alg.certificates_hold(),
        },
    ))
}

/// `min_{i != j, A_j nonempty} v_i(A_i) - v_i(A_j - g*) + slack_i` where
/// `g*` is the good in `A_j` that agent `i` values most. Pairs with an empty
/// rival bundle are skipped; with no pairs left the margin is 0.
pub fn additive_ef1_margin(instance: &Instance, allocation: &Allocation, slack: &[Value]) -> Value {
    let bundles = allocation.bundles();
    let mut margin: Option<Value> = None;
    for i in 0..instance.n() {
        let own: Value = bundles[i].iter().map(|&g| instance.value(i, g)).sum();
        for (j, rival) in bundles.iter().enumerate() {
            if j == i || rival.is_empty() {
                continue;
            }
            let total: Value = rival.iter().map(|&g| instance.value(i, g)).sum();
            let top = rival.iter().map(|&g| instance.value(i, g)).max().expect("nonempty");
            let m = &own - (total - top) + &slack[i];
            if margin.as_ref().is_none_or(|cur| &m < cur) {
                margin = Some(m);
            }
        }
    }
    margin.unwrap_or_else(Value::zero)
}

/// Each agent either owns everything or reaches `kappa_i * v_i(G) / n` with
/// its bundle plus one outside good.
pub fn kappa_prop1_holds(instance: &Instance, allocation: &Allocation, kappa: &[Value]) -> bool {
    let n = Value::integer(instance.n() as i64);
    (0..instance.n()).all(|i| {
        let bundle = allocation.bundle(i);
        if bundle.len() == instance.m() {
            return true;
        }
        let own: Value = bundle.iter().map(|&g| instance.value(i, g)).sum();
        let best_outside = (0..instance.m())
            .filter(|&g| allocation.owner_of(g) != i)
            .map(|g| instance.value(i, g))
            .max()
            .expect("some good is outside");
        own + best_outside >= &kappa[i] * instance.total(i) / &n
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::{ef1_factor, prop1_factor};
    use crate::value::ExtendedFactor;

    #[test]
    fn unsure_agent_loses_everything() {
        let eps = Value::ratio(1, 10);
        let one = Value::one();
        let inst = Instance::from_columns(&[vec![one.clone(), Value::zero()], vec![&one - &eps, eps.clone()]]).unwrap();
        let intervals = vec![(one.clone(), one.clone()), (&one - &eps, one.clone())];
        let (alloc, report) = noisy_norm_run(&inst, &intervals).unwrap();
        assert_eq!(alloc.owner(), &[0, 0]);
        assert_eq!(report.additive_ef1_margin, Some(Value::zero()));
        assert_eq!(ef1_factor(&inst, &alloc).unwrap(), ExtendedFactor::finite(Value::zero()));
        assert!(report.kappa_prop1);
    }

    #[test]
    fn exact_intervals_reduce_to_plain_run() {
        let inst = Instance::from_columns(&[
            vec![Value::ratio(1, 2), Value::ratio(1, 4), Value::ratio(1, 4)],
            vec![Value::ratio(1, 3), Value::ratio(1, 3), Value::ratio(1, 3)],
        ])
        .unwrap();
        let intervals: Vec<_> = inst.totals().into_iter().map(|t| (t.clone(), t)).collect();
        let (alloc, report) = noisy_norm_run(&inst, &intervals).unwrap();
        assert!(report.rho.iter().all(Value::is_zero));
        assert!(report.kappa.iter().all(|k| *k == Value::one()));
        assert!(ef1_factor(&inst, &alloc).unwrap().satisfied());
        assert!(prop1_factor(&inst, &alloc).unwrap().satisfied());
    }

    #[test]
    fn rejects_intervals_missing_the_total() {
        let inst = Instance::identical(2, &[Value::one()]).unwrap();
        let bad = vec![(Value::ratio(1, 2), Value::ratio(3, 4)), (Value::one(), Value::one())];
        assert!(matches!(noisy_norm_run(&inst, &bad), Err(FairError::InvalidInterval { agent: 0, .. })));
        let zero = vec![(Value::zero(), Value::one()), (Value::one(), Value::one())];
        assert!(matches!(noisy_norm_run(&inst, &zero), Err(FairError::InvalidInterval { agent: 0, .. })));
    }
}
