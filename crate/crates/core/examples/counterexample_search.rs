//! Exact cap-count intervals and the smallest dipping capped NCP.

use cubical::feasibility::DipPattern;
use cubical::search::{dip_caps_interval, find_counterexample, minimal_vertex_exponent};

fn main() -> cubical::Result<()> {
    let p = DipPattern::new(4, 5, 6)?;
    for n in [100, 131, 200] {
        match dip_caps_interval(12, n, p)? {
            Some(iv) => println!("n = {n}: caps in {iv}"),
            None => println!("n = {n}: no interval"),
        }
    }
    if let Some(s) = find_counterexample(12, 131)? {
        println!("smallest c for n = 131: {} (pattern {})", s.c, s.pattern);
    }
    println!("smallest n for d = 12: {:?}", minimal_vertex_exponent(12, 140)?);
    Ok(())
}
