//! Seeded random instances for property checks and fuzzing.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::frequency::PickingSequence;
use crate::model::Instance;
use crate::value::Value;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A value `k / denominator` with `k` uniform in `0..=denominator`.
pub fn random_value<R: Rng>(rng: &mut R, denominator: i64) -> Value {
    Value::ratio(rng.gen_range(0..=denominator), denominator)
}

pub fn random_instance<R: Rng>(rng: &mut R, n: usize, m: usize, denominator: i64) -> Instance {
    let goods = (0..m)
        .map(|_| (0..n).map(|_| random_value(rng, denominator)).collect())
        .collect();
    Instance::new(n, goods).expect("generated goods have n values")
}

/// Like [`random_instance`], redrawn until every agent has a positive total.
/// Needs `m >= 1`.
pub fn random_positive_instance<R: Rng>(rng: &mut R, n: usize, m: usize, denominator: i64) -> Instance {
    assert!(m >= 1, "positive totals need at least one good");
    loop {
        let inst = random_instance(rng, n, m, denominator);
        if inst.totals().iter().all(Value::is_positive) {
            return inst;
        }
    }
}

/// Identical valuations with a positive total.
pub fn random_identical_instance<R: Rng>(rng: &mut R, n: usize, m: usize, denominator: i64) -> Instance {
    assert!(m >= 1, "positive totals need at least one good");
    loop {
        let values: Vec<Value> = (0..m).map(|_| random_value(rng, denominator)).collect();
        if values.iter().any(Value::is_positive) {
            return Instance::identical(n, &values).expect("n >= 1");
        }
    }
}

pub fn random_sequence<R: Rng>(rng: &mut R, n: usize, m: usize) -> PickingSequence {
    PickingSequence((0..m).map(|_| rng.gen_range(0..n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_instance(&mut seeded(7), 3, 5, 64);
        let b = random_instance(&mut seeded(7), 3, 5, 64);
        assert_eq!(a, b);
        assert!(a.goods().iter().flatten().all(|v| *v >= Value::zero() && *v <= Value::one()));
    }

    #[test]
    fn positive_totals() {
        let mut rng = seeded(1);
        for _ in 0..50 {
            let inst = random_positive_instance(&mut rng, 2, 1, 2);
            assert!(inst.totals().iter().all(Value::is_positive));
        }
    }
}
