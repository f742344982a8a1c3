//! EFX for three or more agents with exact frequency predictions.

use super::script::{row, Script};
use crate::error::{FairError, Result};
use crate::fairness::Property;
use crate::harness::{Adversary, Bound, Emit};
use crate::model::Advice;
use crate::value::Value;

/// Every agent is told its values will be `K^2` (`n - 2` times), `K`, `eps`
/// and `eps`. The first good is worth `K` to everyone; the rest of the table
/// is fixed once its recipient `r` is known.
///
/// | good      | r     | others |
/// |-----------|-------|--------|
/// | 1         | K     | K      |
/// | 2         | K^2   | eps    |
/// | 3         | eps   | eps    |
/// | 4 ..= n   | K^2   | K^2    |
/// | n + 1     | eps   | K^2    |
#[derive(Clone, Debug)]
pub struct FreqEfxThree {
    n: usize,
    eps: Value,
    big_k: Value,
    script: Script,
}

impl FreqEfxThree {
    pub fn new(n: usize, eps: Value, big_k: Value) -> Result<Self> {
        if n < 3 {
            return Err(FairError::InvalidValue(format!("needs n >= 3, got {n}")));
        }
        if !eps.is_positive() || big_k <= Value::one() || eps >= big_k {
            return Err(FairError::InvalidValue(format!("needs 0 < eps < K and K > 1, got eps = {eps}, K = {big_k}")));
        }
        Ok(FreqEfxThree {
            n,
            eps,
            big_k,
            script: Script::default(),
        })
    }

    /// The multiset announced for every agent.
    pub fn multiset(&self) -> Vec<Value> {
        let k2 = &self.big_k * &self.big_k;
        let mut v = vec![k2; self.n - 2];
        v.extend([self.big_k.clone(), self.eps.clone(), self.eps.clone()]);
        v
    }

    fn plan(&mut self) {
        let n = self.n;
        let k2 = &self.big_k * &self.big_k;
        let eps = &self.eps;
        let s = &mut self.script;
        if s.emitted == 0 {
            s.push(vec![self.big_k.clone(); n]);
            return;
        }
        let r = s.decisions[0];
        s.push(row(n, eps, &[(r, &k2)]));
        s.push(vec![eps.clone(); n]);
        for _ in 3..n {
            s.push(vec![k2.clone(); n]);
        }
        s.push(row(n, &k2, &[(r, eps)]));
        s.finish();
    }
}

impl Adversary for FreqEfxThree {
    fn name(&self) -> &str {
        "a4"
    }

    fn n(&self) -> usize {
        self.n
    }

    fn identical(&self) -> bool {
        false
    }

    fn announce_advice(&self) -> Advice {
        Advice::Frequency(vec![self.multiset(); self.n])
    }

    fn next(&mut self, last: Option<usize>) -> Emit {
        if self.script.record(last) {
            self.plan();
        }
        self.script.pop()
    }

    fn bound(&self) -> Bound {
        let k2 = &self.big_k * &self.big_k;
        let two_eps = &self.eps * Value::integer(2);
        Bound {
            property: Property::Efx,
            ceiling: std::cmp::max(&self.eps / &self.big_k, (&self.big_k + two_eps) / k2),
        }
    }
}
