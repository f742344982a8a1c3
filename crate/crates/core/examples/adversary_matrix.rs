//! Every built-in adversary against every algorithm that accepts its advice.

use online_fair::adversaries::{certify_bound, AdversaryKind, AdversaryParams};
use online_fair::{Algorithm, BruteForceBudget, FairError};

fn main() -> online_fair::Result<()> {
    let params = AdversaryParams::default();
    println!("{:<4} {:<16} {:<6} {:>14} {:>10}  holds", "adv", "algorithm", "prop", "measured", "ceiling");
    for kind in AdversaryKind::all() {
        for algo in Algorithm::all() {
            let mut adv = kind.build(&params)?;
            let c = match certify_bound(adv.as_mut(), &algo, BruteForceBudget::default()) {
                Ok(c) => c,
                Err(FairError::AdviceMismatch(_)) => continue,
                Err(e) => return Err(e),
            };
            println!(
                "{:<4} {:<16} {:<6} {:>14} {:>10}  {}",
                kind.name(),
                algo.name(),
                c.bound.property.to_string(),
                c.measured.to_string(),
                c.bound.ceiling.to_string(),
                c.holds
            );
        }
    }
    Ok(())
}
