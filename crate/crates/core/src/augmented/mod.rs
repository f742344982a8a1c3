//! Allocators that receive imprecise advice: certified intervals around each
//! total, or predicted value multisets that may not match what arrives.

mod noisy_freq;
mod noisy_norm;

pub use noisy_freq::{
    instantiate_closest, noisy_freq_run, noisy_freq_run_with, sorted_matching_cost, ClosestMatch, InstantiationRule,
    InstantiationTrace, NoisyFreqOutcome,
};
pub use noisy_norm::{additive_ef1_margin, kappa_prop1_holds, noisy_norm_run, NoisyNormReport};
