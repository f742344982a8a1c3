//! Every adversary's ceiling must hold against every deterministic algorithm,
//! so each one is played against all decision sequences, not only the
//! built-in allocators.

use online_fair::adversaries::{AdversaryKind, AdversaryParams};
use online_fair::fairness::{ef1_factor, efx_factor, prop1_factor};
use online_fair::{Adversary, Allocation, Emit, ExtendedFactor, Instance, Property, Value};

struct Leaf {
    instance: Instance,
    decisions: Vec<usize>,
}

/// Replays `prefix`, then answers 0 until the adversary stops.
fn play(adv: &mut dyn Adversary, prefix: &[usize]) -> Leaf {
    let mut instance = Instance::empty(adv.n()).unwrap();
    let mut decisions = Vec::new();
    let mut last = None;
    while let Emit::Good(values) = adv.next(last) {
        instance.push(values).unwrap();
        let d = prefix.get(decisions.len()).copied().unwrap_or(0);
        decisions.push(d);
        last = Some(d);
    }
    Leaf { instance, decisions }
}

fn measure(property: Property, inst: &Instance, alloc: &Allocation) -> ExtendedFactor {
    match property {
        Property::Ef1 => ef1_factor(inst, alloc),
        Property::Efx => efx_factor(inst, alloc),
        Property::Prop1 => prop1_factor(inst, alloc),
        Property::Mms => panic!("no adversary targets MMS"),
    }
    .unwrap()
}

/// Depth-first over decision paths. Returns the number of leaves.
fn explore(kind: AdversaryKind, params: &AdversaryParams, cap: usize) -> usize {
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    let mut leaves = 0;
    while let Some(prefix) = stack.pop() {
        let mut adv = kind.build(params).unwrap();
        let leaf = play(adv.as_mut(), &prefix);
        let bound = adv.bound();
        let n = adv.n();
        let alloc = Allocation::new(n, leaf.decisions.clone()).unwrap();
        let measured = measure(bound.property, &leaf.instance, &alloc);
        assert!(
            measured.at_most(&bound.ceiling),
            "{} path {:?}: {measured} > {}",
            kind.name(),
            leaf.decisions,
            bound.ceiling
        );
        assert_eq!(adv.announce_advice().inconsistency(&leaf.instance), None, "{} path {:?}", kind.name(), leaf.decisions);
        if adv.identical() {
            assert!(leaf.instance.is_identical());
        }
        leaves += 1;
        assert!(leaves <= cap, "{} tree larger than {cap}", kind.name());
        for t in prefix.len()..leaf.decisions.len() {
            for alt in 1..n {
                let mut next = leaf.decisions[..t].to_vec();
                next.push(alt);
                stack.push(next);
            }
        }
    }
    leaves
}

fn params(n: Option<usize>, big_k: i64, eps: Value) -> AdversaryParams {
    AdversaryParams {
        n,
        big_k: Value::integer(big_k),
        epsilon: eps,
        ..AdversaryParams::default()
    }
}

#[test]
fn a1_all_paths() {
    for n in 2..=3 {
        assert!(explore(AdversaryKind::A1, &params(Some(n), 6, Value::ratio(1, 100)), 200_000) > 1);
    }
}

#[test]
fn a2_all_paths() {
    assert!(explore(AdversaryKind::A2, &AdversaryParams::default(), 200_000) > 1);
}

#[test]
fn a3_all_paths() {
    assert!(explore(AdversaryKind::A3, &params(Some(3), 100, Value::ratio(1, 100)), 200_000) > 1);
}

#[test]
fn a4_all_paths() {
    assert!(explore(AdversaryKind::A4, &params(Some(3), 10, Value::ratio(1, 100)), 200_000) > 1);
}

#[test]
fn a5_all_paths() {
    assert!(explore(AdversaryKind::A5, &params(None, 6, Value::ratio(1, 100)), 200_000) > 1);
    assert!(explore(AdversaryKind::A5, &params(Some(3), 6, Value::ratio(1, 100)), 200_000) > 1);
}

#[test]
fn a6_all_paths() {
    assert!(explore(AdversaryKind::A6, &params(Some(3), 100, Value::ratio(1, 100)), 200_000) > 1);
}

#[test]
fn a7_all_paths() {
    assert!(explore(AdversaryKind::A7, &params(None, 100, Value::ratio(1, 20)), 200_000) > 1);
}
