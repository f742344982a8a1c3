use crate::value::Value;

/// A multiset of values kept sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FrequencyMultiset(Vec<Value>);

impl FrequencyMultiset {
    pub fn new(mut values: Vec<Value>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        FrequencyMultiset(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values in descending order.
    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.position(v).is_some()
    }

    /// Removes one occurrence of `v`; false when absent.
    pub fn remove_one(&mut self, v: &Value) -> bool {
        match self.position(v) {
            Some(k) => {
                self.0.remove(k);
                true
            }
            None => false,
        }
    }

    pub(crate) fn remove_at(&mut self, k: usize) -> Value {
        self.0.remove(k)
    }

    /// Sum of the `k` largest values.
    pub fn top_sum(&self, k: usize) -> Value {
        self.0.iter().take(k).sum()
    }

    pub fn total(&self) -> Value {
        self.0.iter().sum()
    }

    fn position(&self, v: &Value) -> Option<usize> {
        self.0.binary_search_by(|probe| v.cmp(probe)).ok()
    }
}

impl From<Vec<Value>> for FrequencyMultiset {
    fn from(values: Vec<Value>) -> Self {
        FrequencyMultiset::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_removable() {
        let mut s = FrequencyMultiset::new(vec![Value::integer(1), Value::integer(3), Value::integer(2), Value::integer(3)]);
        assert_eq!(s.values(), &[3, 3, 2, 1].map(Value::integer));
        assert!(s.remove_one(&Value::integer(3)));
        assert!(!s.remove_one(&Value::integer(5)));
        assert_eq!(s.values(), &[3, 2, 1].map(Value::integer));
        assert_eq!(s.top_sum(2), Value::integer(5));
    }
}
