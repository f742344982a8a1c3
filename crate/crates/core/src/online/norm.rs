//! The certificate allocator for normalization information.
//!
//! Each agent carries a certificate `x_i = v_i(A_i) + (n-1)/n * max(M_i, v_i(g))`
//! where `M_i` is the largest value it sees among goods held by others. An
//! agent whose certificate reaches `1/n` leaves the active set for good; once
//! the active set empties, this and every later good goes to agent 0.
//! Valuations are divided by the advised lower bound on each agent's total
//! before anything else, so exact totals are the case `lower = upper`.

use crate::error::{FairError, Result};
use crate::harness::OnlineAllocator;
use crate::model::Advice;
use crate::value::Value;

#[derive(Clone, Debug)]
pub struct NormAllocator {
    n: usize,
    scale: Vec<Value>,
    bundle_value: Vec<Value>,
    outside_max: Vec<Value>,
    active: Vec<bool>,
    removed_at: Vec<Option<usize>>,
    owner: Vec<usize>,
    sticky: bool,
    alpha: Value,
    share: Value,
}

impl NormAllocator {
    /// Accepts `Totals` or `TotalIntervals` advice with positive lower bounds.
    pub fn new(n: usize, advice: &Advice) -> Result<Self> {
        let intervals = advice.intervals().ok_or_else(|| {
            FairError::AdviceMismatch(format!("normalization allocator needs totals, got {}", advice.kind()))
        })?;
        if intervals.len() != n {
            return Err(FairError::InvalidAdvice(format!("{} totals for {n} agents", intervals.len())));
        }
        let mut scale = Vec::with_capacity(n);
        for (agent, (lower, upper)) in intervals.into_iter().enumerate() {
            if !lower.is_positive() {
                return Err(FairError::InvalidAdvice(format!("agent {agent}: nonpositive scale {lower}")));
            }
            if lower > upper {
                return Err(FairError::InvalidAdvice(format!("agent {agent}: lower {lower} above upper {upper}")));
            }
            scale.push(lower);
        }
        let n_value = Value::integer(n as i64);
        Ok(NormAllocator {
            n,
            scale,
            bundle_value: vec![Value::zero(); n],
            outside_max: vec![Value::zero(); n],
            active: vec![true; n],
            removed_at: vec![None; n],
            owner: Vec::new(),
            sticky: false,
            alpha: Value::integer(n as i64 - 1) / &n_value,
            share: Value::one() / n_value,
        })
    }

    /// `v_i(A_i) + (n-1)/n * M_i` under the scaled valuation.
    pub fn certificate(&self, agent: usize) -> Value {
        &self.bundle_value[agent] + &self.alpha * &self.outside_max[agent]
    }

    /// Every agent removed so far holds a certificate of at least `1/n`.
    pub fn certificates_hold(&self) -> bool {
        (0..self.n)
            .filter(|&i| self.removed_at[i].is_some())
            .all(|i| self.certificate(i) >= self.share)
    }

    /// The step (0-based) at which an agent left the active set.
    pub fn removed_at(&self, agent: usize) -> Option<usize> {
        self.removed_at[agent]
    }

    /// Whether every remaining good now goes to agent 0.
    pub fn is_exhausted(&self) -> bool {
        self.sticky
    }

    /// Scaled bundle values `v_i(A_i) / lower_i`.
    pub fn scaled_bundle_values(&self) -> &[Value] {
        &self.bundle_value
    }

    pub fn scaled_outside_max(&self) -> &[Value] {
        &self.outside_max
    }

    fn choose(&mut self, scaled: &[Value]) -> usize {
        let t = self.owner.len();
        if self.sticky {
            return 0;
        }
        let certificates: Vec<Option<Value>> = (0..self.n)
            .map(|i| {
                self.active[i].then(|| {
                    let probe = std::cmp::max(&self.outside_max[i], &scaled[i]);
                    &self.bundle_value[i] + &self.alpha * probe
                })
            })
            .collect();
        for (i, x) in certificates.iter().enumerate() {
            if x.as_ref().is_some_and(|x| x >= &self.share) {
                self.active[i] = false;
                self.removed_at[i] = Some(t);
            }
        }
        if !self.active.iter().any(|&a| a) {
            self.sticky = true;
            return 0;
        }
        // Highest value, then smallest certificate, then lowest index.
        (0..self.n)
            .filter(|&j| self.active[j])
            .min_by(|&a, &b| {
                scaled[b]
                    .cmp(&scaled[a])
                    .then_with(|| certificates[a].cmp(&certificates[b]))
                    .then(a.cmp(&b))
            })
            .expect("active set is nonempty")
    }
}

impl OnlineAllocator for NormAllocator {
    fn name(&self) -> &str {
        "norm"
    }

    fn step(&mut self, values: &[Value]) -> Result<usize> {
        if values.len() != self.n {
            return Err(FairError::InvalidValue(format!("{} values for {} agents", values.len(), self.n)));
        }
        let scaled: Vec<Value> = values.iter().zip(&self.scale).map(|(v, s)| v / s).collect();
        let k = self.choose(&scaled);
        self.bundle_value[k] += &scaled[k];
        for i in (0..self.n).filter(|&i| i != k) {
            if scaled[i] > self.outside_max[i] {
                self.outside_max[i] = scaled[i].clone();
            }
        }
        self.owner.push(k);
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::{ef1_factor, prop1_factor};
    use crate::harness::run_stream;
    use crate::model::Instance;

    fn trap() -> Instance {
        let eps = Value::ratio(1, 100);
        let q = Value::ratio(3, 16);
        Instance::identical(2, &[Value::ratio(1, 4) - &eps, eps, q.clone(), q.clone(), q.clone(), q]).unwrap()
    }

    #[test]
    fn trap_trace() {
        let inst = trap();
        let mut alg = NormAllocator::new(2, &Advice::exact_totals(&inst)).unwrap();
        let alloc = run_stream(&mut alg, &inst).unwrap();
        assert_eq!(alloc.bundles(), vec![vec![0, 4, 5], vec![1, 2, 3]]);
        let eps = Value::ratio(1, 100);
        assert_eq!(alloc.bundle_values(&inst), vec![Value::ratio(5, 8) - &eps, Value::ratio(3, 8) + &eps]);
        assert_eq!(alg.removed_at(1), Some(4));
        assert_eq!(alg.removed_at(0), Some(5));
        assert!(alg.certificates_hold());
        assert!(ef1_factor(&inst, &alloc).unwrap().satisfied());
        assert!(prop1_factor(&inst, &alloc).unwrap().satisfied());
    }

    #[test]
    fn single_good_empties_active_set() {
        let inst = Instance::identical(2, &[Value::one()]).unwrap();
        let mut alg = NormAllocator::new(2, &Advice::exact_totals(&inst)).unwrap();
        assert_eq!(alg.step(inst.good(0)).unwrap(), 0);
        assert!(alg.is_exhausted());
        assert_eq!(alg.step(&[Value::zero(), Value::zero()]).unwrap(), 0);
    }

    #[test]
    fn symmetric_thirds_are_prop1() {
        let third = Value::ratio(1, 3);
        let inst = Instance::identical(3, &[third.clone(), third.clone(), third]).unwrap();
        let mut alg = NormAllocator::new(3, &Advice::exact_totals(&inst)).unwrap();
        let alloc = run_stream(&mut alg, &inst).unwrap();
        assert!(prop1_factor(&inst, &alloc).unwrap().satisfied());
    }

    #[test]
    fn rejects_bad_advice() {
        assert!(matches!(NormAllocator::new(2, &Advice::None), Err(FairError::AdviceMismatch(_))));
        let zero = Advice::Totals(vec![Value::zero(), Value::one()]);
        assert!(matches!(NormAllocator::new(2, &zero), Err(FairError::InvalidAdvice(_))));
        let short = Advice::Totals(vec![Value::one()]);
        assert!(matches!(NormAllocator::new(2, &short), Err(FairError::InvalidAdvice(_))));
    }
}
