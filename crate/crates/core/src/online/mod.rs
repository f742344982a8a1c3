//! Online allocators that see one good at a time.

mod baseline;
mod greedy;
mod norm;
mod threshold;

pub use baseline::{DumpAllocator, RoundRobinAllocator};
pub use greedy::GreedyAllocator;
pub use norm::NormAllocator;
pub use threshold::ThresholdAllocator;

use crate::error::{FairError, Result};
use crate::value::Value;

/// The common value of an identically valued good.
pub(crate) fn identical_value(values: &[Value], good: usize) -> Result<&Value> {
    let first = values
        .first()
        .ok_or_else(|| FairError::InvalidValue(format!("good {good} has no values")))?;
    if values.iter().any(|v| v != first) {
        return Err(FairError::IdenticalViolation { good });
    }
    Ok(first)
}
