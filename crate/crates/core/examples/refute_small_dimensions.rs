//! Certified infeasibility of every dip pattern for small dimensions.

use cubical::feasibility::refute_dimension;

fn main() -> cubical::Result<()> {
    for d in 2..=10 {
        let r = refute_dimension(d)?;
        r.replay_all()?;
        println!("d = {d:2}: {} patterns, refuted = {}", r.outcomes.len(), r.refuted());
    }
    let r = refute_dimension(5)?;
    let first = &r.outcomes[0];
    let cert = first.outcome.certificate().expect("refuted");
    println!("\npattern {} Farkas multipliers:", first.pattern);
    for (id, m) in &cert.farkas {
        println!("  {m} * [{}]", first.system.tags()[*id]);
    }
    Ok(())
}
