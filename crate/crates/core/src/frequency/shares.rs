//! Offline share oracles. Each one works on the IDO profile of the predicted
//! multisets and returns the picking sequence that realizes its allocation
//! there, together with the value every agent gets under that profile.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::picking::{allocation_to_sequence, check_cardinality, ido_profile, PickingSequence};
use super::FrequencyMultiset;
use crate::error::{FairError, Result};
use crate::fairness::{mms_factor_with, mms_values, AssignmentIter, BruteForceBudget};
use crate::model::{Allocation, Instance};
use crate::value::{common_denominator, to_scaled_integers, ExtendedFactor, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareResult {
    pub sequence: PickingSequence,
    /// The oracle's allocation of the IDO profile.
    pub allocation: Allocation,
    /// `v_i^IDO(A_i)` per agent: the share each agent is promised online.
    pub benchmark: Vec<Value>,
    /// Achieved `min_i v_i(X_i) / MMS_i` on the IDO profile, when the oracle
    /// optimizes it.
    pub ratio: Option<ExtendedFactor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShareOracle {
    RoundRobin,
    Leximin(BruteForceBudget),
    BruteForce(BruteForceBudget),
}

impl ShareOracle {
    pub fn name(&self) -> &'static str {
        match self {
            ShareOracle::RoundRobin => "round-robin",
            ShareOracle::Leximin(_) => "leximin",
            ShareOracle::BruteForce(_) => "bruteforce",
        }
    }

    pub fn compute(&self, multisets: &[FrequencyMultiset]) -> Result<ShareResult> {
        match self {
            ShareOracle::RoundRobin => {
                let m = check_cardinality(multisets)?;
                let sequence = share_round_robin(multisets.len(), m);
                from_sequence(multisets, sequence, None)
            }
            ShareOracle::Leximin(budget) => leximin_cut_choose(multisets, *budget),
            ShareOracle::BruteForce(budget) => share_bruteforce_maximin_ratio(multisets, *budget),
        }
    }
}

/// `(0, 1, ..., n-1, 0, 1, ...)` truncated to `m` turns.
pub fn share_round_robin(n: usize, m: usize) -> PickingSequence {
    PickingSequence((0..m).map(|k| k % n.max(1)).collect())
}

fn from_sequence(
    multisets: &[FrequencyMultiset],
    sequence: PickingSequence,
    ratio: Option<ExtendedFactor>,
) -> Result<ShareResult> {
    let profile = ido_profile(multisets, 0)?.table;
    let allocation = Allocation::new(profile.n(), sequence.turns().to_vec())?;
    let benchmark = allocation.bundle_values(&profile);
    Ok(ShareResult {
        sequence,
        allocation,
        benchmark,
        ratio,
    })
}

/// `num / den` with `den = 0` read as infinity.
struct Ratio {
    num: BigInt,
    den: BigInt,
}

impl Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        match (self.den.is_zero(), other.den.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

/// Maximizes `min_i v_i(X_i) / MMS_i` over all allocations of the IDO
/// profile, ties to the lexicographically smallest owner vector.
pub fn share_bruteforce_maximin_ratio(
    multisets: &[FrequencyMultiset],
    budget: BruteForceBudget,
) -> Result<ShareResult> {
    let m = check_cardinality(multisets)?;
    let n = multisets.len();
    budget.check(n, m)?;
    let profile = ido_profile(multisets, 0)?.table;
    let mms = mms_values(&profile, budget)?;
    // Per-agent integer scale so the inner loop only adds integers.
    let mut ints = Vec::with_capacity(n);
    let mut shares = Vec::with_capacity(n);
    for i in 0..n {
        let column = profile.column(i);
        let scale = common_denominator(column.iter().chain(std::iter::once(mms.get(i))));
        ints.push(to_scaled_integers(&column, &scale));
        shares.push(to_scaled_integers(std::slice::from_ref(mms.get(i)), &scale).remove(0));
    }
    let mut best: Option<(Vec<usize>, Ratio)> = None;
    let mut sums = vec![BigInt::zero(); n];
    for owner in AssignmentIter::new(n, m) {
        sums.iter_mut().for_each(|s| *s = BigInt::zero());
        for (g, &a) in owner.iter().enumerate() {
            sums[a] += &ints[a][g];
        }
        let worst = (0..n)
            .map(|i| Ratio {
                num: sums[i].clone(),
                den: shares[i].clone(),
            })
            .min_by(|a, b| a.cmp(b))
            .expect("n >= 1");
        if best.as_ref().is_none_or(|(_, r)| worst.cmp(r) == Ordering::Greater) {
            best = Some((owner, worst));
        }
    }
    let (owner, _) = best.expect("at least one assignment");
    let allocation = Allocation::new(n, owner)?;
    let ratio = mms_factor_with(&profile, &allocation, &mms);
    let sequence = allocation_to_sequence(&allocation, &profile)?;
    from_sequence(multisets, sequence, Some(ratio))
}

/// Cut-and-choose for two agents. Agent 0 cuts the IDO profile into the
/// two bundles closest in its own value, preferring a larger bundle on the
/// lighter side and then the lexicographically smallest membership vector
/// with good 0 on the left. Agent 1 takes the side it values more, and the
/// side without good 0 when indifferent.
///
/// When the bundles tie in agent 0's value, either one counts as the
/// lighter side, so the larger cardinality of the two is used.
pub fn leximin_cut_choose(multisets: &[FrequencyMultiset], budget: BruteForceBudget) -> Result<ShareResult> {
    if multisets.len() != 2 {
        return Err(FairError::AdviceMismatch(format!(
            "cut-and-choose needs n = 2, got {}",
            multisets.len()
        )));
    }
    let m = check_cardinality(multisets)?;
    budget.check(2, m)?;
    if multisets[0].total().is_zero() {
        return from_sequence(multisets, PickingSequence(vec![1; m]), None);
    }
    if multisets[1].total().is_zero() {
        return from_sequence(multisets, PickingSequence(vec![0; m]), None);
    }
    let profile = ido_profile(multisets, 0)?.table;
    let cut = best_cut(&profile, 0);
    let chooser = |side: &[bool], want: bool| -> Value {
        (0..m).filter(|&g| side[g] == want).map(|g| profile.value(1, g)).sum()
    };
    // `cut[g]` marks the side without good 0.
    let left = chooser(&cut, false);
    let right = chooser(&cut, true);
    let chooser_takes_right = right >= left;
    let owner: Vec<usize> = cut.iter().map(|&r| usize::from(r == chooser_takes_right)).collect();
    let allocation = Allocation::new(2, owner)?;
    let sequence = allocation_to_sequence(&allocation, &profile)?;
    from_sequence(multisets, sequence, None)
}

/// Membership vector (true = right side) of the cutter's preferred partition.
fn best_cut(profile: &Instance, cutter: usize) -> Vec<bool> {
    let m = profile.m();
    let column = profile.column(cutter);
    let scale = common_denominator(&column);
    let ints = to_scaled_integers(&column, &scale);
    let total: BigInt = ints.iter().sum();
    let mut best: Option<(BigInt, usize, Vec<bool>)> = None;
    if m == 0 {
        return Vec::new();
    }
    // Enumerate goods 1..m as a binary counter with good 1 most significant,
    // which visits membership vectors in lexicographic order.
    let free = m - 1;
    for r in 0u64..(1u64 << free) {
        let side: Vec<bool> = (0..m).map(|g| g > 0 && (r >> (free - g)) & 1 == 1).collect();
        let right: BigInt = (0..m).filter(|&g| side[g]).map(|g| &ints[g]).sum();
        let left = &total - &right;
        let gap = (&left - &right).abs();
        let right_count = side.iter().filter(|&&s| s).count();
        let left_count = m - right_count;
        let lighter_count = match left.cmp(&right) {
            Ordering::Less => left_count,
            Ordering::Greater => right_count,
            Ordering::Equal => left_count.max(right_count),
        };
        let better = match &best {
            None => true,
            Some((g, c, _)) => gap < *g || (gap == *g && lighter_count > *c),
        };
        if better {
            best = Some((gap, lighter_count, side));
        }
    }
    best.expect("m >= 1").2
}
