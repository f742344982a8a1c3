//! Adversaries for identical valuations with known totals (all 1).

use super::script::Script;
use crate::error::{FairError, Result};
use crate::fairness::Property;
use crate::harness::{Adversary, Bound, Emit};
use crate::model::Advice;
use crate::value::Value;

/// EFX for `n >= 3`: two goods of value `eps`, then either one big good and
/// zeros (if one agent took both) or `n - 1` equal goods sharing the rest.
#[derive(Clone, Debug)]
pub struct IdenticalNormEfx {
    n: usize,
    eps: Value,
    announce_totals: bool,
    script: Script,
}

impl IdenticalNormEfx {
    pub fn new(n: usize, eps: Value) -> Result<Self> {
        if n < 3 {
            return Err(FairError::InvalidValue(format!("needs n >= 3, got {n}")));
        }
        if !eps.is_positive() || eps >= Value::ratio(1, 4) {
            return Err(FairError::InvalidValue(format!("needs 0 < eps < 1/4, got {eps}")));
        }
        Ok(IdenticalNormEfx {
            n,
            eps,
            announce_totals: true,
            script: Script::default(),
        })
    }

    /// The same stream with no advice announced.
    pub fn without_advice(mut self) -> Self {
        self.announce_totals = false;
        self
    }

    fn plan(&mut self) {
        let n = self.n;
        let rest = Value::one() - &self.eps * Value::integer(2);
        let s = &mut self.script;
        if s.emitted == 0 {
            s.push(vec![self.eps.clone(); n]);
            s.push(vec![self.eps.clone(); n]);
            return;
        }
        if s.decisions[0] == s.decisions[1] {
            s.push(vec![rest; n]);
            for _ in 2..n {
                s.push(vec![Value::zero(); n]);
            }
        } else {
            let part = rest / Value::integer(n as i64 - 1);
            for _ in 1..n {
                s.push(vec![part.clone(); n]);
            }
        }
        s.finish();
    }
}

impl Adversary for IdenticalNormEfx {
    fn name(&self) -> &str {
        if self.announce_totals {
            "a6"
        } else {
            "a5"
        }
    }

    fn n(&self) -> usize {
        self.n
    }

    fn identical(&self) -> bool {
        true
    }

    fn announce_advice(&self) -> Advice {
        if self.announce_totals {
            Advice::Totals(vec![Value::one(); self.n])
        } else {
            Advice::None
        }
    }

    fn next(&mut self, last: Option<usize>) -> Emit {
        if self.script.record(last) {
            self.plan();
        }
        self.script.pop()
    }

    fn bound(&self) -> Bound {
        let n1 = Value::integer(self.n as i64 - 1);
        Bound {
            property: Property::Efx,
            ceiling: n1 * &self.eps / (Value::one() - &self.eps * Value::integer(2)),
        }
    }

    fn branch(&self) -> Option<&str> {
        let d = &self.script.decisions;
        (d.len() >= 2).then(|| if d[0] == d[1] { "same-recipient" } else { "split" })
    }
}

/// EFX for two agents: `k` goods of value `eps`, with `k` the least integer
/// such that `k * eps >= sqrt 5 - 2`. If both agents hold some of them, one
/// good carries the remaining value; otherwise it is split over two goods.
#[derive(Clone, Debug)]
pub struct IdenticalNormEfxTwo {
    eps: Value,
    k: usize,
    script: Script,
}

impl IdenticalNormEfxTwo {
    pub fn new(eps: Value) -> Result<Self> {
        if !eps.is_positive() {
            return Err(FairError::InvalidValue(format!("needs eps > 0, got {eps}")));
        }
        let two = Value::integer(2);
        let five = Value::integer(5);
        let mut k = 1usize;
        let mut ke = eps.clone();
        while (&ke + &two).times(&(&ke + &two)) < five {
            k += 1;
            ke = &ke + &eps;
        }
        if k < 2 || &ke + &eps >= Value::one() {
            return Err(FairError::InvalidValue(format!(
                "eps = {eps} gives k = {k}; need k >= 2 and (k + 1) eps < 1"
            )));
        }
        Ok(IdenticalNormEfxTwo {
            eps,
            k,
            script: Script::default(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn k_eps(&self) -> Value {
        &self.eps * Value::integer(self.k as i64)
    }

    /// Ratios for: both agents holding small goods, the small-goods holder
    /// getting one half, and the small-goods holder getting both halves.
    pub fn case_ceilings(&self) -> [Value; 3] {
        let one = Value::one();
        let ke = self.k_eps();
        let two = Value::integer(2);
        [
            (&ke - &self.eps) / (&one - &ke),
            (&one - &ke) / (&ke - &two * &self.eps + &one),
            &two * &ke / (&one - &ke),
        ]
    }

    fn plan(&mut self) {
        let rest = Value::one() - self.k_eps();
        let s = &mut self.script;
        if s.emitted == 0 {
            for _ in 0..self.k {
                s.push(vec![self.eps.clone(); 2]);
            }
            return;
        }
        let first = s.decisions[0];
        if s.decisions.iter().any(|&d| d != first) {
            s.push(vec![rest; 2]);
        } else {
            let half = rest / Value::integer(2);
            s.push(vec![half.clone(); 2]);
            s.push(vec![half; 2]);
        }
        s.finish();
    }
}

impl Adversary for IdenticalNormEfxTwo {
    fn name(&self) -> &str {
        "a7"
    }

    fn n(&self) -> usize {
        2
    }

    fn identical(&self) -> bool {
        true
    }

    fn announce_advice(&self) -> Advice {
        Advice::Totals(vec![Value::one(); 2])
    }

    fn next(&mut self, last: Option<usize>) -> Emit {
        if self.script.record(last) {
            self.plan();
        }
        self.script.pop()
    }

    fn bound(&self) -> Bound {
        Bound {
            property: Property::Efx,
            ceiling: self.case_ceilings().into_iter().max().expect("three cases"),
        }
    }

    fn branch(&self) -> Option<&str> {
        let d = &self.script.decisions;
        (d.len() >= self.k).then(|| {
            if d[..self.k].iter().any(|&x| x != d[0]) {
                "shared"
            } else {
                "single-holder"
            }
        })
    }
}
