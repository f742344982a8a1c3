//! Instances, allocations and advice.
//!
//! Goods are indexed by arrival order and agents by `0..n`. A good is stored as
//! its value vector: `goods[t][i]` is agent `i`'s value for the `t`-th arrival.


use crate::error::{FairError, Result};
use crate::value::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    goods: Vec<Vec<Value>>,
}

impl Instance {
    pub fn new(n: usize, goods: Vec<Vec<Value>>) -> Result<Self> {
        if n == 0 {
            return Err(FairError::InvalidValue("an instance needs at least one agent".into()));
        }
        for (t, good) in goods.iter().enumerate() {
            validate_good(n, t, good)?;
        }
        Ok(Instance { n, goods })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Instance::new(n, Vec::new())
    }

    /// Every agent assigns good `t` the value `values[t]`.
    pub fn identical(n: usize, values: &[Value]) -> Result<Self> {
        Instance::new(n, values.iter().map(|v| vec![v.clone(); n]).collect())
    }

    /// Builds an instance from per-agent value columns of equal length.
    pub fn from_columns(columns: &[Vec<Value>]) -> Result<Self> {
        let n = columns.len();
        let m = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != m) {
            return Err(FairError::CardinalityMismatch("columns of unequal length".into()));
        }
        let goods = (0..m)
            .map(|t| columns.iter().map(|c| c[t].clone()).collect())
            .collect();
        Instance::new(n, goods)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.goods.len()
    }

    pub fn goods(&self) -> &[Vec<Value>] {
        &self.goods
    }

    pub fn good(&self, t: usize) -> &[Value] {
        &self.goods[t]
    }

    pub fn value(&self, agent: usize, good: usize) -> &Value {
        &self.goods[good][agent]
    }

    pub fn push(&mut self, good: Vec<Value>) -> Result<()> {
        validate_good(self.n, self.goods.len(), &good)?;
        self.goods.push(good);
        Ok(())
    }

    /// Agent `agent`'s values in arrival order.
    pub fn column(&self, agent: usize) -> Vec<Value> {
        self.goods.iter().map(|g| g[agent].clone()).collect()
    }

    pub fn total(&self, agent: usize) -> Value {
        self.goods.iter().map(|g| &g[agent]).sum()
    }

    pub fn totals(&self) -> Vec<Value> {
        (0..self.n).map(|i| self.total(i)).collect()
    }

    pub fn is_identical(&self) -> bool {
        self.goods.iter().all(|g| g.iter().all(|v| v == &g[0]))
    }

    /// `v_agent(bundle)`, checking every index.
    pub fn value_of_bundle(&self, agent: usize, bundle: &[usize]) -> Result<Value> {
        if agent >= self.n {
            return Err(FairError::InvalidIndex(format!("agent {agent} with n = {}", self.n)));
        }
        let mut total = Value::zero();
        for &g in bundle {
            let good = self
                .goods
                .get(g)
                .ok_or_else(|| FairError::InvalidIndex(format!("good {g} with m = {}", self.m())))?;
            total += &good[agent];
        }
        Ok(total)
    }

    /// The same goods with each agent's values divided by `scale[i]`.
    pub fn scaled(&self, scale: &[Value]) -> Result<Instance> {
        if scale.len() != self.n || scale.iter().any(|s| !s.is_positive()) {
            return Err(FairError::InvalidAdvice("scale must be n positive values".into()));
        }
        let goods = self
            .goods
            .iter()
            .map(|g| g.iter().zip(scale).map(|(v, s)| v / s).collect())
            .collect();
        Instance::new(self.n, goods)
    }

    pub fn prefix(&self, len: usize) -> Instance {
        Instance {
            n: self.n,
            goods: self.goods[..len].to_vec(),
        }
    }

    /// The goods reordered so that the `k`-th arrival is `self.goods[order[k]]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Instance> {
        let mut seen = vec![false; self.m()];
        for &g in order {
            if g >= self.m() || std::mem::replace(&mut seen[g], true) {
                return Err(FairError::InvalidIndex(format!("{order:?} is not a permutation")));
            }
        }
        if order.len() != self.m() {
            return Err(FairError::InvalidIndex(format!("{order:?} is not a permutation")));
        }
        Instance::new(self.n, order.iter().map(|&g| self.goods[g].clone()).collect())
    }
}

pub(crate) fn validate_good(n: usize, t: usize, good: &[Value]) -> Result<()> {
    if good.len() != n {
        return Err(FairError::InvalidValue(format!(
            "good {t} has {} values, expected {n}",
            good.len()
        )));
    }
    if let Some(v) = good.iter().find(|v| v.is_negative()) {
        return Err(FairError::InvalidValue(format!("good {t} carries negative value {v}")));
    }
    Ok(())
}

/// A complete assignment of goods to agents: `owner[t]` holds good `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    n: usize,
    owner: Vec<usize>,
}

impl Allocation {
    pub fn new(n: usize, owner: Vec<usize>) -> Result<Self> {
        if let Some((t, &a)) = owner.iter().enumerate().find(|(_, &a)| a >= n) {
            return Err(FairError::InvalidIndex(format!("good {t} assigned to agent {a} with n = {n}")));
        }
        Ok(Allocation { n, owner })
    }

    /// Builds a complete allocation from a partial map, failing on any
    /// unassigned good.
    pub fn from_partial(n: usize, owner: &[Option<usize>]) -> Result<Self> {
        let mut full = Vec::with_capacity(owner.len());
        for (t, o) in owner.iter().enumerate() {
            match o {
                Some(a) => full.push(*a),
                None => return Err(FairError::IncompleteAllocation(format!("good {t} is unassigned"))),
            }
        }
        Allocation::new(n, full)
    }

    /// Builds an allocation from explicit bundles; each of the `m` goods must
    /// appear in exactly one bundle.
    pub fn from_bundles(m: usize, bundles: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![None; m];
        for (agent, bundle) in bundles.iter().enumerate() {
            for &g in bundle {
                let slot = owner
                    .get_mut(g)
                    .ok_or_else(|| FairError::InvalidIndex(format!("good {g} with m = {m}")))?;
                if slot.replace(agent).is_some() {
                    return Err(FairError::InvalidIndex(format!("good {g} appears in two bundles")));
                }
            }
        }
        Allocation::from_partial(bundles.len(), &owner)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self) -> &[usize] {
        &self.owner
    }

    pub fn owner_of(&self, good: usize) -> usize {
        self.owner[good]
    }

    pub fn bundle(&self, agent: usize) -> Vec<usize> {
        (0..self.owner.len()).filter(|&t| self.owner[t] == agent).collect()
    }

    pub fn bundles(&self) -> Vec<Vec<usize>> {
        let mut bundles = vec![Vec::new(); self.n];
        for (t, &a) in self.owner.iter().enumerate() {
            bundles[a].push(t);
        }
        bundles
    }

    pub fn bundle_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n];
        for &a in &self.owner {
            sizes[a] += 1;
        }
        sizes
    }

    /// Fails unless this allocation covers exactly the goods and agents of
    /// `instance`.
    pub fn check_complete(&self, instance: &Instance) -> Result<()> {
        if self.n != instance.n() {
            return Err(FairError::IncompleteAllocation(format!(
                "allocation has {} agents, instance has {}",
                self.n,
                instance.n()
            )));
        }
        if self.owner.len() != instance.m() {
            return Err(FairError::IncompleteAllocation(format!(
                "allocation covers {} goods, instance has {}",
                self.owner.len(),
                instance.m()
            )));
        }
        Ok(())
    }

    /// Per-agent bundle values `v_i(A_i)`.
    pub fn bundle_values(&self, instance: &Instance) -> Vec<Value> {
        let mut values = vec![Value::zero(); self.n];
        for (t, &a) in self.owner.iter().enumerate() {
            values[a] += instance.value(a, t);
        }
        values
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdviceKind {
    None,
    Totals,
    TotalIntervals,
    Frequency,
}

impl std::fmt::Display for AdviceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AdviceKind::None => "none",
            AdviceKind::Totals => "totals",
            AdviceKind::TotalIntervals => "intervals",
            AdviceKind::Frequency => "frequency",
        })
    }
}

/// Information about the whole stream handed to an allocator before the first
/// arrival.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Advice {
    None,
    /// Exact per-agent total value `v_i(G)`.
    Totals(Vec<Value>),
    /// Certified bounds `lower_i <= v_i(G) <= upper_i`.
    TotalIntervals(Vec<(Value, Value)>),
    /// Per-agent multiset of the values that will arrive.
    Frequency(Vec<Vec<Value>>),
}

impl Advice {
    pub fn kind(&self) -> AdviceKind {
        match self {
            Advice::None => AdviceKind::None,
            Advice::Totals(_) => AdviceKind::Totals,
            Advice::TotalIntervals(_) => AdviceKind::TotalIntervals,
            Advice::Frequency(_) => AdviceKind::Frequency,
        }
    }

    /// Exact totals read off the realized instance.
    pub fn exact_totals(instance: &Instance) -> Advice {
        Advice::Totals(instance.totals())
    }

    /// Exact frequency multisets read off the realized instance.
    pub fn exact_frequency(instance: &Instance) -> Advice {
        Advice::Frequency((0..instance.n()).map(|i| instance.column(i)).collect())
    }

    /// Totals as intervals; exact totals are the degenerate case
    /// `lower = upper`.
    pub fn intervals(&self) -> Option<Vec<(Value, Value)>> {
        match self {
            Advice::Totals(t) => Some(t.iter().map(|v| (v.clone(), v.clone())).collect()),
            Advice::TotalIntervals(iv) => Some(iv.clone()),
            _ => None,
        }
    }

    /// Checks the shape of the advice against an agent count.
    pub fn validate(&self, n: usize) -> Result<()> {
        let len = match self {
            Advice::None => return Ok(()),
            Advice::Totals(t) => t.len(),
            Advice::TotalIntervals(iv) => iv.len(),
            Advice::Frequency(f) => f.len(),
        };
        if len != n {
            return Err(FairError::InvalidAdvice(format!("{} advice for {len} agents, expected {n}", self.kind())));
        }
        match self {
            Advice::Totals(t) => {
                if let Some(v) = t.iter().find(|v| v.is_negative()) {
                    return Err(FairError::InvalidAdvice(format!("negative total {v}")));
                }
            }
            Advice::TotalIntervals(iv) => {
                for (agent, (lo, hi)) in iv.iter().enumerate() {
                    if !lo.is_positive() || lo > hi {
                        return Err(FairError::InvalidInterval {
                            agent,
                            reason: format!("need 0 < lower <= upper, got [{lo}, {hi}]"),
                        });
                    }
                }
            }
            Advice::Frequency(f) => {
                let m = f[0].len();
                if f.iter().any(|s| s.len() != m) {
                    return Err(FairError::CardinalityMismatch("frequency multisets of unequal size".into()));
                }
                if f.iter().flatten().any(Value::is_negative) {
                    return Err(FairError::InvalidAdvice("negative predicted value".into()));
                }
            }
            Advice::None => {}
        }
        Ok(())
    }

    /// Describes the first way in which `instance` disagrees with this advice,
    /// or `None` when the stream is consistent with it.
    pub fn inconsistency(&self, instance: &Instance) -> Option<String> {
        if let Err(e) = self.validate(instance.n()) {
            return Some(e.to_string());
        }
        match self {
            Advice::None => None,
            Advice::Totals(t) => (0..instance.n()).find_map(|i| {
                let actual = instance.total(i);
                (actual != t[i]).then(|| format!("agent {i}: announced total {}, realized {actual}", t[i]))
            }),
            Advice::TotalIntervals(iv) => (0..instance.n()).find_map(|i| {
                let actual = instance.total(i);
                let (lo, hi) = &iv[i];
                (actual < *lo || actual > *hi)
                    .then(|| format!("agent {i}: realized total {actual} outside [{lo}, {hi}]"))
            }),
            Advice::Frequency(f) => (0..instance.n()).find_map(|i| {
                let mut announced = f[i].clone();
                let mut realized = instance.column(i);
                announced.sort();
                realized.sort();
                (announced != realized).then(|| format!("agent {i}: realized multiset differs from the announced one"))
            }),
        }
    }
}
