//! Adversaries against algorithms that know every agent's total (all 1).

use super::script::{row, Script};
use crate::error::{FairError, Result};
use crate::fairness::Property;
use crate::harness::{Adversary, Bound, Emit};
use crate::model::Advice;
use crate::value::Value;

/// EFX for two agents with known totals. With `tiny = 2^-k^3`,
/// `small = 2^-k^2` and `l = 2^k^2`: the first good is worth `tiny` to
/// both, and its recipient `h` is the agent who will be starved. The other
/// agent `o` values the following goods at `small` while `h` values them at
/// `tiny`. As long as `h` keeps getting them the stream goes on up to good
/// `l`, and a finishing good then sets both totals to 1.
#[derive(Clone, Debug)]
pub struct NormEfxTwo {
    k: u32,
    tiny: Value,
    small: Value,
    ell: usize,
    script: Script,
    branch: Option<&'static str>,
}

impl NormEfxTwo {
    /// `k` is limited to 2..=4; the filler stream has `2^k^2` goods.
    pub fn new(k: u32) -> Result<Self> {
        if !(2..=4).contains(&k) {
            return Err(FairError::InvalidValue(format!("needs 2 <= k <= 4, got {k}")));
        }
        let k2 = i64::from(k * k);
        let k3 = i64::from(k * k * k);
        Ok(NormEfxTwo {
            k,
            tiny: Value::pow2(-k3),
            small: Value::pow2(-k2),
            ell: 1usize << (k * k),
            script: Script::default(),
            branch: None,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `2^(-k^3+1) < 2^(-k^2)`, which the construction relies on.
    pub fn branch_inequality_holds(&self) -> bool {
        &self.tiny * Value::integer(2) < self.small
    }

    /// The four case ratios: `h` starved after the first finisher, `o`
    /// starved after any finisher, `o` holding only the last good, and `h`
    /// starved after a late deviation.
    pub fn case_ceilings(&self) -> [Value; 4] {
        let one = Value::one();
        let ell_tiny = &self.tiny * Value::integer(self.ell as i64);
        [
            &self.tiny / (&one - &self.tiny * Value::integer(2)),
            &self.small / (&one - &self.tiny - &self.small),
            (&self.small - &self.tiny) / (&one - &self.small),
            &ell_tiny / (&one - &ell_tiny),
        ]
    }

    fn plan(&mut self) {
        let s = &mut self.script;
        let e = s.emitted;
        if e == 0 {
            s.push(vec![self.tiny.clone(); 2]);
            return;
        }
        let h = s.decisions[0];
        let o = 1 - h;
        let filler = row(2, &self.tiny, &[(o, &self.small)]);
        if e == 1 {
            s.push(filler);
            return;
        }
        // Goods 2..e (1-based) were fillers; good e is the latest.
        if s.decisions[e - 1] == o {
            let j = Value::integer(e as i64);
            let one = Value::one();
            let vo = &one - &self.tiny - (&j - &one) * &self.small;
            let vh = &one - &j * &self.tiny;
            let mut good = vec![Value::zero(); 2];
            good[o] = vo;
            good[h] = vh;
            s.push(good);
            s.finish();
            self.branch = Some(if e == 2 { "early-deviation" } else { "late-deviation" });
        } else if e < self.ell {
            s.push(filler);
        } else {
            let one = Value::one();
            let mut good = vec![Value::zero(); 2];
            good[o] = &self.small - &self.tiny;
            good[h] = &one - &self.tiny * Value::integer(self.ell as i64);
            s.push(good);
            s.finish();
            self.branch = Some("no-deviation");
        }
    }
}

impl Adversary for NormEfxTwo {
    fn name(&self) -> &str {
        "a2"
    }

    fn n(&self) -> usize {
        2
    }

    fn identical(&self) -> bool {
        false
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
            ceiling: self.case_ceilings().into_iter().max().expect("four cases"),
        }
    }

    fn branch(&self) -> Option<&str> {
        self.branch
    }
}

/// EF1 for three or more agents with known totals. Everyone values the
/// first good at `eps`; its recipient `r` values the second at `1/n`, the
/// others at `eps/delta`. The remaining `n - 1` goods depend on whether `r`
/// took the second good as well.
#[derive(Clone, Debug)]
pub struct NormEf1Three {
    n: usize,
    eps: Value,
    delta: Value,
    script: Script,
}

impl NormEf1Three {
    pub fn new(n: usize, eps: Value, delta: Value) -> Result<Self> {
        if n < 3 {
            return Err(FairError::InvalidValue(format!("needs n >= 3, got {n}")));
        }
        let limit = Value::ratio(1, (n * (n - 1)) as i64);
        if !eps.is_positive() || eps >= limit {
            return Err(FairError::InvalidValue(format!("needs 0 < eps < {limit}, got {eps}")));
        }
        if delta <= Value::one() {
            return Err(FairError::InvalidValue(format!("needs delta > 1, got {delta}")));
        }
        Ok(NormEf1Three {
            n,
            eps,
            delta,
            script: Script::default(),
        })
    }

    fn plan(&mut self) {
        let n = self.n;
        let nv = Value::integer(n as i64);
        let share = Value::one() / &nv;
        let one = Value::one();
        let eps = &self.eps;
        let s = &mut self.script;
        match s.emitted {
            0 => s.push(vec![eps.clone(); n]),
            1 => {
                let r = s.decisions[0];
                s.push(row(n, &(eps / &self.delta), &[(r, &share)]));
            }
            _ => {
                let r = s.decisions[0];
                let mid_r = &share + eps;
                let last_r = &share - (&nv - &one) * eps;
                let n2 = Value::integer(n as i64 - 2);
                let (mid, last) = if s.decisions[1] == r {
                    let d2 = &self.delta * &self.delta;
                    (eps / &d2, &one - eps - eps / &self.delta - &n2 * eps / &d2)
                } else {
                    (eps.clone(), &one - (&nv - &one) * eps - eps / &self.delta)
                };
                for _ in 2..n {
                    s.push(row(n, &mid, &[(r, &mid_r)]));
                }
                s.push(row(n, &last, &[(r, &last_r)]));
                s.finish();
            }
        }
    }
}

impl Adversary for NormEf1Three {
    fn name(&self) -> &str {
        "a3"
    }

    fn n(&self) -> usize {
        self.n
    }

    fn identical(&self) -> bool {
        false
    }

    fn announce_advice(&self) -> Advice {
        Advice::Totals(vec![Value::one(); self.n])
    }

    fn next(&mut self, last: Option<usize>) -> Emit {
        if self.script.record(last) {
            self.plan();
        }
        self.script.pop()
    }

    fn bound(&self) -> Bound {
        let nv = Value::integer(self.n as i64);
        let gap = Value::one() / &nv - (&nv - Value::one()) * &self.eps;
        Bound {
            property: Property::Ef1,
            ceiling: std::cmp::max(self.delta.recip().expect("delta > 1"), &self.eps / gap),
        }
    }

    fn branch(&self) -> Option<&str> {
        let d = &self.script.decisions;
        (d.len() >= 2).then(|| if d[0] == d[1] { "same-recipient" } else { "split" })
    }
}
