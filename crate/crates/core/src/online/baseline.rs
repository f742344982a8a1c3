//! Advice-free baselines.

use crate::error::{FairError, Result};
use crate::harness::OnlineAllocator;
use crate::value::Value;

/// Gives every good to agent 0.
#[derive(Clone, Debug, Default)]
pub struct DumpAllocator;

impl OnlineAllocator for DumpAllocator {
    fn name(&self) -> &str {
        "dump"
    }

    fn step(&mut self, _values: &[Value]) -> Result<usize> {
        Ok(0)
    }
}

/// Gives good `t` to agent `t mod n`, ignoring values.
#[derive(Clone, Debug)]
pub struct RoundRobinAllocator {
    n: usize,
    t: usize,
}

impl RoundRobinAllocator {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(FairError::InvalidValue("round robin needs at least one agent".into()));
        }
        Ok(RoundRobinAllocator { n, t: 0 })
    }
}

impl OnlineAllocator for RoundRobinAllocator {
    fn name(&self) -> &str {
        "round-robin"
    }

    fn step(&mut self, _values: &[Value]) -> Result<usize> {
        let agent = self.t % self.n;
        self.t += 1;
        Ok(agent)
    }
}
