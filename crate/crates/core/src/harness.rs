//! The online protocol: allocators consume one value vector at a time and
//! adversaries choose each next good after seeing every earlier decision.

use crate::algorithms::Algorithm;
use crate::error::{FairError, Result};
use crate::fairness::{BruteForceBudget, FairnessReport, Property};
use crate::model::{validate_good, Advice, Allocation, Instance};
use crate::value::Value;

/// An online allocation algorithm after initialization with `n` and its
/// advice. `step` sees only the current good; decisions are irrevocable.
pub trait OnlineAllocator {
    fn name(&self) -> &str;

    /// Assigns the arriving good, given as one value per agent.
    fn step(&mut self, values: &[Value]) -> Result<usize>;
}

/// What an adversary does next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emit {
    Good(Vec<Value>),
    Stop,
}

/// A guaranteed upper bound on a fairness factor against an adversary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub property: Property,
    pub ceiling: Value,
}

/// An adaptive stream generator.
pub trait Adversary {
    fn name(&self) -> &str;

    fn n(&self) -> usize;

    /// Whether every emitted good is valued identically by all agents.
    fn identical(&self) -> bool;

    fn announce_advice(&self) -> Advice;

    /// Next good, given the recipient of the previously emitted one (`None` on
    /// the first call).
    fn next(&mut self, last_decision: Option<usize>) -> Emit;

    fn bound(&self) -> Bound;

    /// Which case of its construction the adversary ended up in, once known.
    fn branch(&self) -> Option<&str> {
        None
    }
}

#[derive(Clone, Debug)]
pub struct Transcript {
    pub advice: Advice,
    pub instance: Instance,
    pub decisions: Vec<usize>,
    pub allocation: Allocation,
    pub report: FairnessReport,
    /// Set when the realized stream contradicts the announced advice.
    pub advice_violation: Option<FairError>,
}

/// Runs a built-in algorithm against an adversary.
pub fn run_match(algorithm: &Algorithm, adversary: &mut dyn Adversary, budget: BruteForceBudget) -> Result<Transcript> {
    if algorithm.requires_identical() && !adversary.identical() {
        return Err(FairError::AdviceMismatch(format!(
            "{} needs identical valuations, {} does not emit them",
            algorithm.name(),
            adversary.name()
        )));
    }
    let advice = adversary.announce_advice();
    let mut allocator = algorithm.build(adversary.n(), &advice)?;
    run_match_with(allocator.as_mut(), adversary, budget)
}

/// Drives an already-initialized allocator against an adversary until the
/// adversary stops.
pub fn run_match_with(
    allocator: &mut dyn OnlineAllocator,
    adversary: &mut dyn Adversary,
    budget: BruteForceBudget,
) -> Result<Transcript> {
    let n = adversary.n();
    let advice = adversary.announce_advice();
    let mut instance = Instance::empty(n)?;
    let mut decisions = Vec::new();
    let mut last = None;
    while let Emit::Good(values) = adversary.next(last) {
        validate_good(n, instance.m(), &values)?;
        let agent = allocator.step(&values)?;
        if agent >= n {
            return Err(FairError::InvalidIndex(format!(
                "{} chose agent {agent} with n = {n}",
                allocator.name()
            )));
        }
        instance.push(values)?;
        decisions.push(agent);
        last = Some(agent);
    }
    finish(advice, instance, decisions, budget)
}

/// Replays a fixed list of goods through an allocator.
pub fn run_stream(allocator: &mut dyn OnlineAllocator, instance: &Instance) -> Result<Allocation> {
    let mut owner = Vec::with_capacity(instance.m());
    for good in instance.goods() {
        let agent = allocator.step(good)?;
        if agent >= instance.n() {
            return Err(FairError::InvalidIndex(format!("agent {agent} with n = {}", instance.n())));
        }
        owner.push(agent);
    }
    Allocation::new(instance.n(), owner)
}

fn finish(advice: Advice, instance: Instance, decisions: Vec<usize>, budget: BruteForceBudget) -> Result<Transcript> {
    let allocation = Allocation::new(instance.n(), decisions.clone())?;
    let report = FairnessReport::compute(&instance, &allocation, budget)?;
    let advice_violation = advice.inconsistency(&instance).map(FairError::AdversaryInconsistent);
    Ok(Transcript {
        advice,
        instance,
        decisions,
        allocation,
        report,
        advice_violation,
    })
}
