//! Auditing a fixed allocation and searching for the best one.

use online_fair::fairness::{best_allocation_by, mms_values};
use online_fair::{Allocation, BruteForceBudget, FairnessReport, Instance, Property, Value};

fn main() -> online_fair::Result<()> {
    let values: Vec<Value> = [16, 16, 16, 4].iter().map(|&x| Value::integer(x)).chain([Value::ratio(1, 16), Value::ratio(1, 16)]).collect();
    let inst = Instance::identical(3, &values)?;
    let budget = BruteForceBudget::default();
    println!("mms per agent: {:?}", mms_values(&inst, budget)?.0.iter().map(ToString::to_string).collect::<Vec<_>>());

    let alloc = Allocation::new(3, vec![0, 1, 2, 2, 0, 1])?;
    let report = FairnessReport::compute(&inst, &alloc, budget)?;
    println!("owners {:?}: ef1 {} efx {} prop1 {} mms {}", alloc.owner(), report.ef1, report.efx, report.prop1, report.mms);

    for property in [Property::Efx, Property::Mms] {
        let (best, factor) = best_allocation_by(&inst, property, budget)?;
        println!("best by {property}: owners {:?} factor {factor}", best.owner());
    }
    Ok(())
}
