//! Normalization advice: each agent's total is known in advance.

use online_fair::fairness::{ef1_factor, prop1_factor};
use online_fair::online::NormAllocator;
use online_fair::{run_stream, Advice, Instance, Value};

fn main() -> online_fair::Result<()> {
    let eps = Value::ratio(1, 100);
    let q = Value::ratio(3, 16);
    let inst = Instance::identical(2, &[Value::ratio(1, 4) - &eps, eps, q.clone(), q.clone(), q.clone(), q])?;

    let mut alg = NormAllocator::new(2, &Advice::exact_totals(&inst))?;
    let alloc = run_stream(&mut alg, &inst)?;
    for (i, bundle) in alloc.bundles().iter().enumerate() {
        let goods: Vec<String> = bundle.iter().map(|g| format!("g{}", g + 1)).collect();
        let removed = alg.removed_at(i).map_or("never".to_string(), |t| format!("at good {}", t + 1));
        println!("agent {}: {{{}}}, left the active set {removed}", i + 1, goods.join(", "));
    }
    println!("ef1 = {}, prop1 = {}", ef1_factor(&inst, &alloc)?, prop1_factor(&inst, &alloc)?);
    Ok(())
}
