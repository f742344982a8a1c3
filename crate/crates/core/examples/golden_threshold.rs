//! Two agents with identical normalized valuations, and the adversary that
//! pins the threshold allocator near the golden ratio.

use online_fair::adversaries::{certify_bound, IdenticalNormEfxTwo};
use online_fair::fairness::efx_factor;
use online_fair::online::ThresholdAllocator;
use online_fair::{gen, golden_geq, run_stream, Advice, Algorithm, BruteForceBudget, ExtendedFactor, Value};

fn main() -> online_fair::Result<()> {
    let mut rng = gen::seeded(2024);
    let mut worst: Option<Value> = None;
    for _ in 0..200 {
        let inst = gen::random_identical_instance(&mut rng, 2, 8, 64);
        let mut alg = ThresholdAllocator::new(2, &Advice::exact_totals(&inst))?;
        let alloc = run_stream(&mut alg, &inst)?;
        if let ExtendedFactor::Finite(v) = efx_factor(&inst, &alloc)? {
            assert!(golden_geq(&v)?);
            if worst.as_ref().is_none_or(|w| &v < w) {
                worst = Some(v);
            }
        }
    }
    println!("worst efx over 200 random streams: {}", worst.map_or("inf".into(), |w| w.to_string()));

    for eps in [Value::ratio(1, 20), Value::ratio(1, 100), Value::ratio(1, 1000)] {
        let mut adv = IdenticalNormEfxTwo::new(eps.clone())?;
        let c = certify_bound(&mut adv, &Algorithm::Threshold, BruteForceBudget::default())?;
        let f = c.measured.as_finite().map_or(f64::INFINITY, Value::to_f64);
        println!("eps {eps}: k = {}, threshold efx = {} ({f:.4}), ceiling {}", adv.k(), c.measured, c.bound.ceiling);
    }
    Ok(())
}
