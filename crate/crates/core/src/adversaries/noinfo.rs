//! Adversaries against algorithms without advice.

use super::script::{row, Script};
use crate::error::{FairError, Result};
use crate::fairness::Property;
use crate::harness::{Adversary, Bound, Emit};
use crate::model::Advice;
use crate::value::Value;

/// EF1 is out of reach without advice. The first good is worth 1 to
/// everyone; its recipient `a` then sees a good worth `K` that everyone else
/// values at `1/K`. If `a` takes that too, a worthless good ends the stream;
/// otherwise `n - 1` goods follow that `a` and the second recipient value at
/// `K` and the rest at 1.
#[derive(Clone, Debug)]
pub struct NoInfoEf1 {
    n: usize,
    big_k: Value,
    script: Script,
}

impl NoInfoEf1 {
    pub fn new(n: usize, big_k: Value) -> Result<Self> {
        if n < 2 {
            return Err(FairError::InvalidValue(format!("needs n >= 2, got {n}")));
        }
        if big_k <= Value::one() {
            return Err(FairError::InvalidValue(format!("needs K > 1, got {big_k}")));
        }
        Ok(NoInfoEf1 {
            n,
            big_k,
            script: Script::default(),
        })
    }

    fn plan(&mut self) {
        let n = self.n;
        let s = &mut self.script;
        match s.emitted {
            0 => s.push(vec![Value::one(); n]),
            1 => {
                let a = s.decisions[0];
                s.push(row(n, &self.big_k.recip().expect("K > 1"), &[(a, &self.big_k)]));
            }
            _ => {
                let a = s.decisions[0];
                let b = s.decisions[1];
                if a == b {
                    s.push(vec![Value::zero(); n]);
                } else {
                    for _ in 1..n {
                        s.push(row(n, &Value::one(), &[(a, &self.big_k), (b, &self.big_k)]));
                    }
                }
                s.finish();
            }
        }
    }
}

impl Adversary for NoInfoEf1 {
    fn name(&self) -> &str {
        "a1"
    }

    fn n(&self) -> usize {
        self.n
    }

    fn identical(&self) -> bool {
        false
    }

    fn announce_advice(&self) -> Advice {
        Advice::None
    }

    fn next(&mut self, last: Option<usize>) -> Emit {
        if self.script.record(last) {
            self.plan();
        }
        self.script.pop()
    }

    fn bound(&self) -> Bound {
        Bound {
            property: Property::Ef1,
            ceiling: self.big_k.recip().expect("K > 1"),
        }
    }

    fn branch(&self) -> Option<&str> {
        let d = &self.script.decisions;
        (d.len() >= 2).then(|| if d[0] == d[1] { "same-recipient" } else { "split" })
    }
}

/// EFX is out of reach for two agents with identical valuations and no
/// advice: two unit goods, then a worthless good if one agent took both and a
/// good worth `K` otherwise.
#[derive(Clone, Debug)]
pub struct IdenticalNoInfoEfx {
    big_k: Value,
    script: Script,
}

impl IdenticalNoInfoEfx {
    pub fn new(big_k: Value) -> Result<Self> {
        if big_k <= Value::one() {
            return Err(FairError::InvalidValue(format!("needs K > 1, got {big_k}")));
        }
        Ok(IdenticalNoInfoEfx {
            big_k,
            script: Script::default(),
        })
    }

    fn plan(&mut self) {
        let s = &mut self.script;
        if s.emitted == 0 {
            s.push(vec![Value::one(); 2]);
            s.push(vec![Value::one(); 2]);
        } else {
            let v = if s.decisions[0] == s.decisions[1] {
                Value::zero()
            } else {
                self.big_k.clone()
            };
            s.push(vec![v; 2]);
            s.finish();
        }
    }
}

impl Adversary for IdenticalNoInfoEfx {
    fn name(&self) -> &str {
        "a5"
    }

    fn n(&self) -> usize {
        2
    }

    fn identical(&self) -> bool {
        true
    }

    fn announce_advice(&self) -> Advice {
        Advice::None
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
            ceiling: self.big_k.recip().expect("K > 1"),
        }
    }

    fn branch(&self) -> Option<&str> {
        let d = &self.script.decisions;
        (d.len() >= 2).then(|| if d[0] == d[1] { "same-recipient" } else { "split" })
    }
}
