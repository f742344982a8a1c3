//! Exact fairness factors for EF1, EFX, PROP1 and MMS.
//!
//! Each checker returns the largest `alpha` for which the allocation is
//! `alpha`-fair. Factors are reported raw, so they can exceed one; the property
//! holds exactly iff the factor is at least one. A pair or agent whose reference
//! quantity is zero is vacuously satisfied and contributes
//! [`ExtendedFactor::Infinite`].

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{FairError, Result};
use crate::model::{Allocation, Instance};
use crate::value::{common_denominator, to_scaled_integers, ExtendedFactor, Value};

/// Limits for the exhaustive searches over `n^m` assignment vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceBudget {
    pub max_agents: usize,
    pub max_goods: usize,
}

impl Default for BruteForceBudget {
    fn default() -> Self {
        BruteForceBudget {
            max_agents: 4,
            max_goods: 12,
        }
    }
}

impl BruteForceBudget {
    pub fn check(&self, n: usize, m: usize) -> Result<()> {
        if n > self.max_agents || m > self.max_goods {
            return Err(FairError::BruteForceBudgetExceeded {
                n,
                m,
                max_agents: self.max_agents,
                max_goods: self.max_goods,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Ef1,
    Efx,
    Prop1,
    Mms,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Property::Ef1 => "EF1",
            Property::Efx => "EFX",
            Property::Prop1 => "PROP1",
            Property::Mms => "MMS",
        })
    }
}

/// MMS factor, or `NotComputed` when the instance is above the brute-force
/// budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MmsOutcome {
    Factor(ExtendedFactor),
    NotComputed,
}

impl MmsOutcome {
    pub fn factor(&self) -> Option<&ExtendedFactor> {
        match self {
            MmsOutcome::Factor(f) => Some(f),
            MmsOutcome::NotComputed => None,
        }
    }
}

impl std::fmt::Display for MmsOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MmsOutcome::Factor(x) => write!(f, "{x}"),
            MmsOutcome::NotComputed => f.write_str("skipped(budget)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairnessReport {
    pub ef1: ExtendedFactor,
    pub efx: ExtendedFactor,
    pub prop1: ExtendedFactor,
    pub mms: MmsOutcome,
}

impl FairnessReport {
    pub fn compute(instance: &Instance, allocation: &Allocation, budget: BruteForceBudget) -> Result<Self> {
        let mms = match mms_factor(instance, allocation, budget) {
            Ok(f) => MmsOutcome::Factor(f),
            Err(FairError::BruteForceBudgetExceeded { .. }) => MmsOutcome::NotComputed,
            Err(e) => return Err(e),
        };
        Ok(FairnessReport {
            ef1: ef1_factor(instance, allocation)?,
            efx: efx_factor(instance, allocation)?,
            prop1: prop1_factor(instance, allocation)?,
            mms,
        })
    }

    pub fn get(&self, property: Property) -> Option<&ExtendedFactor> {
        match property {
            Property::Ef1 => Some(&self.ef1),
            Property::Efx => Some(&self.efx),
            Property::Prop1 => Some(&self.prop1),
            Property::Mms => self.mms.factor(),
        }
    }
}

/// Which good the envy comparison removes from the rival bundle.
#[derive(Clone, Copy)]
enum Removal {
    MostValued,
    LeastValued,
}

fn envy_factor(instance: &Instance, allocation: &Allocation, removal: Removal) -> Result<ExtendedFactor> {
    allocation.check_complete(instance)?;
    let n = instance.n();
    let bundles = allocation.bundles();
    let own = allocation.bundle_values(instance);
    let mut factor = ExtendedFactor::Infinite;
    for i in 0..n {
        for (j, bundle) in bundles.iter().enumerate() {
            if i == j || bundle.is_empty() {
                continue;
            }
            let values = bundle.iter().map(|&g| instance.value(i, g));
            let total: Value = values.clone().sum();
            let removed = match removal {
                Removal::MostValued => values.max(),
                Removal::LeastValued => values.min(),
            }
            .expect("bundle is nonempty");
            let rest = total - removed;
            factor = factor.min(ExtendedFactor::ratio(&own[i], &rest));
        }
    }
    Ok(factor)
}

/// Best `alpha` such that for every pair `(i, j)` with `A_j` nonempty some
/// good `g` in `A_j` has `v_i(A_i) >= alpha * v_i(A_j \ {g})`. The best
/// witness is always the good agent `i` values most.
pub fn ef1_factor(instance: &Instance, allocation: &Allocation) -> Result<ExtendedFactor> {
    envy_factor(instance, allocation, Removal::MostValued)
}

/// Best `alpha` such that `v_i(A_i) >= alpha * v_i(A_j \ {g})` for every good
/// `g` in `A_j`; the binding good is the one agent `i` values least.
pub fn efx_factor(instance: &Instance, allocation: &Allocation) -> Result<ExtendedFactor> {
    envy_factor(instance, allocation, Removal::LeastValued)
}

/// Best `alpha` such that every agent with `A_i != G` reaches
/// `alpha * v_i(G) / n` after adding its favourite outside good.
pub fn prop1_factor(instance: &Instance, allocation: &Allocation) -> Result<ExtendedFactor> {
    allocation.check_complete(instance)?;
    let n = instance.n();
    let own = allocation.bundle_values(instance);
    let mut factor = ExtendedFactor::Infinite;
    for (i, own_value) in own.iter().enumerate() {
        let best_outside = (0..instance.m())
            .filter(|&g| allocation.owner_of(g) != i)
            .map(|g| instance.value(i, g))
            .max();
        let Some(best_outside) = best_outside else {
            continue;
        };
        let proportional = instance.total(i) / Value::integer(n as i64);
        factor = factor.min(ExtendedFactor::ratio(&(own_value + best_outside), &proportional));
    }
    Ok(factor)
}

/// Per-agent maximin shares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmsValues(pub Vec<Value>);

impl MmsValues {
    pub fn get(&self, agent: usize) -> &Value {
        &self.0[agent]
    }
}

/// Exact `MMS_i` for every agent.
pub fn mms_values(instance: &Instance, budget: BruteForceBudget) -> Result<MmsValues> {
    budget.check(instance.n(), instance.m())?;
    Ok(MmsValues(
        (0..instance.n())
            .map(|i| maximin_share(&instance.column(i), instance.n()))
            .collect(),
    ))
}

/// Maximin share of a single value list split into `n` bundles.
///
/// Depth-first search over assignments of the values (sorted descending) to
/// bundles, on a common integer scale. Bundles with equal current load are
/// interchangeable, so only the first of them is tried. A branch is cut when
/// its lightest bundle plus all unassigned value cannot beat the incumbent, and
/// the search stops once the incumbent reaches the average load.
pub fn maximin_share(values: &[Value], n: usize) -> Value {
    if n == 0 || values.is_empty() {
        return Value::zero();
    }
    let scale = common_denominator(values);
    let mut ints = to_scaled_integers(values, &scale);
    ints.sort_unstable_by(|a, b| b.cmp(a));
    let total: BigInt = ints.iter().sum();
    let mut suffix = vec![BigInt::zero(); ints.len() + 1];
    for k in (0..ints.len()).rev() {
        suffix[k] = &suffix[k + 1] + &ints[k];
    }
    // The minimum bundle never exceeds the average.
    let ceiling = &total / BigInt::from(n);
    let mut search = MmsSearch {
        ints: &ints,
        suffix: &suffix,
        loads: vec![BigInt::zero(); n],
        best: BigInt::zero(),
        ceiling,
    };
    search.descend(0);
    Value::from(num_rational::BigRational::new(search.best, scale))
}

struct MmsSearch<'a> {
    ints: &'a [BigInt],
    suffix: &'a [BigInt],
    loads: Vec<BigInt>,
    best: BigInt,
    ceiling: BigInt,
}

impl MmsSearch<'_> {
    fn done(&self) -> bool {
        self.best >= self.ceiling
    }

    fn descend(&mut self, k: usize) {
        if k == self.ints.len() {
            let min = self.loads.iter().min().expect("n >= 1").clone();
            if min > self.best {
                self.best = min;
            }
            return;
        }
        // The lightest bundle can at most absorb everything still unassigned.
        let n = self.loads.len();
        let lightest = self.loads.iter().min().expect("n >= 1");
        if lightest + &self.suffix[k] <= self.best {
            return;
        }
        let mut tried: Vec<BigInt> = Vec::with_capacity(n);
        for b in 0..n {
            if tried.contains(&self.loads[b]) {
                continue;
            }
            tried.push(self.loads[b].clone());
            self.loads[b] += &self.ints[k];
            self.descend(k + 1);
            self.loads[b] -= &self.ints[k];
            if self.done() {
                return;
            }
        }
    }
}

/// Best `alpha` with `v_i(A_i) >= alpha * MMS_i` for every agent.
pub fn mms_factor(instance: &Instance, allocation: &Allocation, budget: BruteForceBudget) -> Result<ExtendedFactor> {
    allocation.check_complete(instance)?;
    let mms = mms_values(instance, budget)?;
    Ok(mms_factor_with(instance, allocation, &mms))
}

pub fn mms_factor_with(instance: &Instance, allocation: &Allocation, mms: &MmsValues) -> ExtendedFactor {
    allocation
        .bundle_values(instance)
        .iter()
        .zip(&mms.0)
        .map(|(own, share)| ExtendedFactor::ratio(own, share))
        .min()
        .unwrap_or(ExtendedFactor::Infinite)
}

/// Iterates over all `n^m` assignment vectors in lexicographic order.
pub struct AssignmentIter {
    n: usize,
    current: Option<Vec<usize>>,
}

impl AssignmentIter {
    pub fn new(n: usize, m: usize) -> Self {
        AssignmentIter {
            n,
            current: (n > 0 || m == 0).then(|| vec![0; m]),
        }
    }
}

impl Iterator for AssignmentIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.n {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}

/// The allocation maximizing the named factor, found by exhaustive search.
/// Ties go to the lexicographically smallest owner vector.
pub fn best_allocation_by(
    instance: &Instance,
    property: Property,
    budget: BruteForceBudget,
) -> Result<(Allocation, ExtendedFactor)> {
    let n = instance.n();
    budget.check(n, instance.m())?;
    let mms = match property {
        Property::Mms => Some(mms_values(instance, budget)?),
        _ => None,
    };
    let mut best: Option<(Allocation, ExtendedFactor)> = None;
    for owner in AssignmentIter::new(n, instance.m()) {
        let allocation = Allocation::new(n, owner)?;
        let factor = match property {
            Property::Ef1 => ef1_factor(instance, &allocation)?,
            Property::Efx => efx_factor(instance, &allocation)?,
            Property::Prop1 => prop1_factor(instance, &allocation)?,
            Property::Mms => mms_factor_with(instance, &allocation, mms.as_ref().expect("computed above")),
        };
        if best.as_ref().is_none_or(|(_, f)| factor > *f) {
            best = Some((allocation, factor));
        }
    }
    Ok(best.expect("at least one assignment exists"))
}
