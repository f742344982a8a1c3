mod common;

use online_fair::fairness::{ef1_factor, efx_factor, mms_values, prop1_factor};
use online_fair::{gen, Allocation, BruteForceBudget, Instance, Value};
use proptest::prelude::*;
use rand::Rng;

fn random_allocation<R: Rng>(rng: &mut R, n: usize, m: usize) -> Allocation {
    Allocation::new(n, (0..m).map(|_| rng.gen_range(0..n)).collect()).unwrap()
}

#[test]
fn factors_match_naive_enumerator() {
    let mut rng = gen::seeded(91);
    for _ in 0..1500 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=7);
        let d = [1, 4, 64][rng.gen_range(0..3)];
        let inst = gen::random_instance(&mut rng, n, m, d);
        let alloc = random_allocation(&mut rng, n, m);
        assert_eq!(ef1_factor(&inst, &alloc).unwrap(), common::naive_ef1(&inst, &alloc), "{inst:?} {alloc:?}");
        assert_eq!(efx_factor(&inst, &alloc).unwrap(), common::naive_efx(&inst, &alloc), "{inst:?} {alloc:?}");
        assert_eq!(prop1_factor(&inst, &alloc).unwrap(), common::naive_prop1(&inst, &alloc), "{inst:?} {alloc:?}");
    }
}

#[test]
fn mms_matches_counting_enumeration() {
    let mut rng = gen::seeded(92);
    for _ in 0..600 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=7);
        let inst = gen::random_instance(&mut rng, n, m, 16);
        let mms = mms_values(&inst, BruteForceBudget::default()).unwrap();
        for i in 0..n {
            assert_eq!(mms.get(i), &common::naive_mms(&inst.column(i), n), "{inst:?}");
        }
    }
}

fn arb_instance() -> impl Strategy<Value = Instance> {
    (1usize..=3, 0usize..=6).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(0i64..=12, n), m)
            .prop_map(move |rows| {
                let goods = rows.into_iter().map(|r| r.into_iter().map(|x| Value::ratio(x, 4)).collect()).collect();
                Instance::new(n, goods).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn efx_never_exceeds_ef1((inst, seed) in (arb_instance(), any::<u64>())) {
        let mut rng = gen::seeded(seed);
        let alloc = random_allocation(&mut rng, inst.n(), inst.m());
        let ef1 = ef1_factor(&inst, &alloc).unwrap();
        let efx = efx_factor(&inst, &alloc).unwrap();
        prop_assert!(efx <= ef1);
    }

    #[test]
    fn mms_is_at_most_proportional_share(inst in arb_instance()) {
        let mms = mms_values(&inst, BruteForceBudget::default()).unwrap();
        for i in 0..inst.n() {
            prop_assert!(mms.get(i) * &Value::integer(inst.n() as i64) <= inst.total(i));
        }
    }
}
