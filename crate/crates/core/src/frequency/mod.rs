//! Frequency predictions: IDO profiles, picking sequences, offline share
//! oracles and the online meta-algorithm that turns a sequence into online
//! decisions.

mod meta;
mod multiset;
mod picking;
mod shares;

pub use meta::FreqMetaAllocator;
pub use multiset::FrequencyMultiset;
pub use picking::{
    allocation_to_sequence, ido_profile, sequence_values, simulate_picking, IdoProfile, PickOutcome, PickingSequence,
};
pub use shares::{leximin_cut_choose, share_bruteforce_maximin_ratio, share_round_robin, ShareOracle, ShareResult};

use crate::error::Result;
use crate::harness::run_stream;
use crate::model::{Allocation, Instance};
use crate::value::Value;

/// Per-agent predicted multisets read off an instance.
pub fn multisets_of(instance: &Instance) -> Vec<FrequencyMultiset> {
    (0..instance.n()).map(|i| FrequencyMultiset::new(instance.column(i))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineReport {
    pub allocation: Allocation,
    pub share: ShareResult,
    /// Realized `v_i(A_i)`.
    pub values: Vec<Value>,
    pub sizes: Vec<usize>,
}

impl PipelineReport {
    /// Every agent reaches its IDO benchmark with the same number of goods.
    pub fn meets_benchmark(&self) -> bool {
        let ido_sizes = self.share.allocation.bundle_sizes();
        self.values.iter().zip(&self.share.benchmark).all(|(v, b)| v >= b) && self.sizes == ido_sizes
    }
}

/// Predicts the exact multisets of `instance`, runs the oracle, then feeds
/// the goods in arrival order through the meta-algorithm.
pub fn run_freq_pipeline(instance: &Instance, oracle: ShareOracle) -> Result<PipelineReport> {
    let multisets = multisets_of(instance);
    let share = oracle.compute(&multisets)?;
    let allocation = run_with_sequence(instance, multisets, share.sequence.clone())?;
    Ok(PipelineReport {
        values: allocation.bundle_values(instance),
        sizes: allocation.bundle_sizes(),
        allocation,
        share,
    })
}

/// Runs the meta-algorithm with a caller-chosen initial sequence.
pub fn run_with_sequence(
    instance: &Instance,
    multisets: Vec<FrequencyMultiset>,
    sequence: PickingSequence,
) -> Result<Allocation> {
    let mut alg = FreqMetaAllocator::new(multisets, sequence)?;
    run_stream(&mut alg, instance)
}
