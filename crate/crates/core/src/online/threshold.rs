//! Golden-ratio threshold for two agents with identical normalized valuations:
//! agent 0 keeps taking goods while its bundle stays at most `(sqrt 5 - 1)/2`,
//! everything else goes to agent 1.

use super::identical_value;
use crate::error::{FairError, Result};
use crate::harness::OnlineAllocator;
use crate::model::Advice;
use crate::value::{golden_leq, Value};

#[derive(Clone, Debug)]
pub struct ThresholdAllocator {
    total: Value,
    load0: Value,
    t: usize,
}

impl ThresholdAllocator {
    /// Needs `n = 2` and one exact positive total shared by both agents.
    /// Values are divided by that total, so any common total works.
    pub fn new(n: usize, advice: &Advice) -> Result<Self> {
        if n != 2 {
            return Err(FairError::AdviceMismatch(format!("threshold allocator needs n = 2, got {n}")));
        }
        let intervals = advice.intervals().ok_or_else(|| {
            FairError::AdviceMismatch(format!("threshold allocator needs totals, got {}", advice.kind()))
        })?;
        if intervals.len() != 2 {
            return Err(FairError::InvalidAdvice(format!("{} totals for 2 agents", intervals.len())));
        }
        let (lo, hi) = &intervals[0];
        if lo != hi || intervals[1] != intervals[0] {
            return Err(FairError::AdviceMismatch(
                "threshold allocator needs one exact total shared by both agents".into(),
            ));
        }
        if !lo.is_positive() {
            return Err(FairError::InvalidAdvice(format!("nonpositive total {lo}")));
        }
        Ok(ThresholdAllocator {
            total: lo.clone(),
            load0: Value::zero(),
            t: 0,
        })
    }

    /// Normalized value of agent 0's bundle.
    pub fn load0(&self) -> &Value {
        &self.load0
    }
}

impl OnlineAllocator for ThresholdAllocator {
    fn name(&self) -> &str {
        "threshold"
    }

    fn step(&mut self, values: &[Value]) -> Result<usize> {
        if values.len() != 2 {
            return Err(FairError::InvalidValue(format!("{} values for 2 agents", values.len())));
        }
        let v = identical_value(values, self.t)? / &self.total;
        self.t += 1;
        let candidate = &self.load0 + &v;
        if golden_leq(&candidate)? {
            self.load0 = candidate;
            Ok(0)
        } else {
            Ok(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::efx_factor;
    use crate::harness::run_stream;
    use crate::model::Instance;
    use crate::value::ExtendedFactor;
    use proptest::prelude::*;

    fn run(values: &[Value]) -> (Instance, crate::model::Allocation) {
        let inst = Instance::identical(2, values).unwrap();
        let mut alg = ThresholdAllocator::new(2, &Advice::exact_totals(&inst)).unwrap();
        let alloc = run_stream(&mut alg, &inst).unwrap();
        (inst, alloc)
    }

    /// `f >= (sqrt 5 - 1)/2` for a factor, through the algebraic predicate.
    fn at_least_golden(f: &ExtendedFactor) -> bool {
        match f {
            ExtendedFactor::Infinite => true,
            ExtendedFactor::Finite(v) => crate::value::golden_geq(v).unwrap(),
        }
    }

    #[test]
    fn three_goods() {
        let (inst, alloc) = run(&[Value::ratio(1, 2), Value::ratio(3, 10), Value::ratio(1, 5)]);
        assert_eq!(alloc.bundles(), vec![vec![0], vec![1, 2]]);
        assert_eq!(efx_factor(&inst, &alloc).unwrap(), ExtendedFactor::finite(Value::ratio(5, 3)));
    }

    #[test]
    fn single_unit_good_goes_to_agent_one() {
        let (_, alloc) = run(&[Value::one()]);
        assert_eq!(alloc.owner(), &[1]);
    }

    #[test]
    fn epsilon_goods_pile_on_agent_zero() {
        let mut stream = vec![Value::ratio(1, 100); 24];
        stream.extend(vec![Value::ratio(38, 100); 2]);
        let (_, alloc) = run(&stream);
        assert!(alloc.owner()[..24].iter().all(|&a| a == 0));
    }

    #[test]
    fn rejects_unequal_totals() {
        let advice = Advice::Totals(vec![Value::one(), Value::ratio(1, 2)]);
        assert!(matches!(ThresholdAllocator::new(2, &advice), Err(FairError::AdviceMismatch(_))));
        assert!(matches!(
            ThresholdAllocator::new(3, &Advice::Totals(vec![Value::one(); 3])),
            Err(FairError::AdviceMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn golden_efx(nums in proptest::collection::vec(0i64..=64, 1..10)) {
            let values: Vec<Value> = nums.iter().map(|&x| Value::integer(x)).collect();
            prop_assume!(values.iter().any(Value::is_positive));
            let (inst, alloc) = run(&values);
            let total = inst.total(0);
            let loads = alloc.bundle_values(&inst);
            prop_assert!(golden_leq(&(&loads[0] / &total)).unwrap());
            prop_assert!(at_least_golden(&efx_factor(&inst, &alloc).unwrap()));
        }
    }
}
