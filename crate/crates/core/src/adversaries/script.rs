use std::collections::VecDeque;

use crate::harness::Emit;
use crate::value::Value;

/// Bookkeeping shared by the scripted adversaries: the decisions seen so far
/// and the goods already committed to.
#[derive(Clone, Debug, Default)]
pub(crate) struct Script {
    pub decisions: Vec<usize>,
    pub emitted: usize,
    pub finished: bool,
    queue: VecDeque<Vec<Value>>,
}

impl Script {
    /// Records the last decision; true when the adversary must plan more goods.
    pub fn record(&mut self, last: Option<usize>) -> bool {
        if let Some(d) = last {
            self.decisions.push(d);
        }
        self.queue.is_empty() && !self.finished
    }

    pub fn push(&mut self, good: Vec<Value>) {
        self.queue.push_back(good);
    }

    pub fn finish(&mut self) {
        self.finished = true;
    }

    pub fn pop(&mut self) -> Emit {
        match self.queue.pop_front() {
            Some(good) => {
                self.emitted += 1;
                Emit::Good(good)
            }
            None => Emit::Stop,
        }
    }
}

/// `n` copies of `base` with some entries overridden.
pub(crate) fn row(n: usize, base: &Value, special: &[(usize, &Value)]) -> Vec<Value> {
    let mut r = vec![base.clone(); n];
    for (i, v) in special {
        r[*i] = (*v).clone();
    }
    r
}
