//! Frequency predictions: the oracle plans a picking sequence on the IDO
//! profile and the meta-algorithm follows it online.

use online_fair::fairness::{efx_factor, mms_factor};
use online_fair::frequency::{run_freq_pipeline, ShareOracle};
use online_fair::{BruteForceBudget, Instance, Value};

fn ints(xs: &[i64]) -> Vec<Value> {
    xs.iter().map(|&x| Value::integer(x)).collect()
}

fn main() -> online_fair::Result<()> {
    let inst = Instance::from_columns(&[ints(&[2, 7, 1, 4, 4]), ints(&[5, 1, 3, 3, 6])])?;
    let budget = BruteForceBudget::default();
    for oracle in [ShareOracle::RoundRobin, ShareOracle::Leximin(budget), ShareOracle::BruteForce(budget)] {
        let r = run_freq_pipeline(&inst, oracle)?;
        println!(
            "{:<11} sequence {} owners {:?} values {:?} benchmark {:?}",
            oracle.name(),
            r.share.sequence,
            r.allocation.owner(),
            r.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            r.share.benchmark.iter().map(ToString::to_string).collect::<Vec<_>>(),
        );
        println!(
            "            efx {} mms {}",
            efx_factor(&inst, &r.allocation)?,
            mms_factor(&inst, &r.allocation, budget)?
        );
    }
    Ok(())
}
