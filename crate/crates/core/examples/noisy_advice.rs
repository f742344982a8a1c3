//! Advice with errors: interval totals, and predicted multisets that are off.

use online_fair::augmented::{noisy_freq_run, noisy_norm_run};
use online_fair::frequency::ShareOracle;
use online_fair::{Instance, Value};

fn ints(xs: &[i64]) -> Vec<Value> {
    xs.iter().map(|&x| Value::integer(x)).collect()
}

fn main() -> online_fair::Result<()> {
    let inst = Instance::from_columns(&[ints(&[3, 1, 2, 2]), ints(&[1, 4, 1, 2])])?;

    let intervals = vec![(Value::integer(7), Value::integer(9)), (Value::integer(6), Value::integer(8))];
    let (alloc, r) = noisy_norm_run(&inst, &intervals)?;
    println!("intervals: owners {:?}", alloc.owner());
    let show = |xs: &[Value]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    println!("  rho {} kappa {}", show(&r.rho), show(&r.kappa));
    println!("  additive ef1 {:?}, kappa-prop1 {}", r.additive_ef1(), r.kappa_prop1);

    let predicted = vec![ints(&[3, 2, 2, 2]), ints(&[4, 2, 1, 0])];
    let out = noisy_freq_run(&inst, &predicted, ShareOracle::RoundRobin)?;
    println!("predictions: owners {:?}", out.allocation.owner());
    for i in 0..inst.n() {
        println!(
            "  agent {}: value {} share {} eta {} eps {} matching cost {}",
            i + 1,
            out.values[i],
            out.share.benchmark[i],
            out.trace.eta[i],
            out.trace.eps[i],
            out.wasserstein[i]
        );
    }
    println!("  guarantee holds: {}", out.guarantee_holds);
    Ok(())
}
