//! Least-loaded greedy for identical valuations.

use super::identical_value;
use crate::error::Result;
use crate::harness::OnlineAllocator;
use crate::value::Value;

#[derive(Clone, Debug)]
pub struct GreedyAllocator {
    loads: Vec<Value>,
    t: usize,
}

impl GreedyAllocator {
    pub fn new(n: usize) -> Self {
        GreedyAllocator {
            loads: vec![Value::zero(); n],
            t: 0,
        }
    }

    pub fn loads(&self) -> &[Value] {
        &self.loads
    }
}

impl OnlineAllocator for GreedyAllocator {
    fn name(&self) -> &str {
        "greedy"
    }

    fn step(&mut self, values: &[Value]) -> Result<usize> {
        let v = identical_value(values, self.t)?.clone();
        self.t += 1;
        // min_by_key keeps the first minimum, i.e. the lowest index.
        let (agent, _) = self
            .loads
            .iter()
            .enumerate()
            .min_by_key(|(_, load)| *load)
            .expect("n >= 1");
        self.loads[agent] += &v;
        Ok(agent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::FairError;
    use crate::fairness::ef1_factor;
    use crate::harness::run_stream;
    use crate::model::Instance;
    use crate::value::ExtendedFactor;

    fn ints(xs: &[i64]) -> Vec<Value> {
        xs.iter().map(|&x| Value::integer(x)).collect()
    }

    #[test]
    fn ties_go_low() {
        let inst = Instance::identical(2, &ints(&[1, 1, 1])).unwrap();
        let alloc = run_stream(&mut GreedyAllocator::new(2), &inst).unwrap();
        assert_eq!(alloc.bundles(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn heavy_first_good() {
        let inst = Instance::identical(2, &ints(&[5, 1, 1, 1, 1, 1])).unwrap();
        let alloc = run_stream(&mut GreedyAllocator::new(2), &inst).unwrap();
        assert_eq!(alloc.bundles(), vec![vec![0], vec![1, 2, 3, 4, 5]]);
        assert_eq!(ef1_factor(&inst, &alloc).unwrap(), ExtendedFactor::finite(Value::ratio(5, 4)));
    }

    #[test]
    fn rejects_distinct_values() {
        let mut g = GreedyAllocator::new(2);
        let err = g.step(&[Value::one(), Value::zero()]).unwrap_err();
        assert_eq!(err, FairError::IdenticalViolation { good: 0 });
    }
}
