//! Symmetric unimodal h-vectors whose f-vector dips, from d = 11 on.

use cubical::feasibility::{find_h_witness, refute_dimension};

fn main() -> cubical::Result<()> {
    println!("feasible patterns for d = 11: {:?}", refute_dimension(11)?.feasible_patterns());
    for d in [10, 11, 12] {
        match find_h_witness(d)? {
            None => println!("d = {d}: no witness"),
            Some(w) => {
                println!("d = {d}: pattern {} dips at {:?}", w.pattern, w.dip_indices);
                println!("  h = {:?}", w.h.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>());
                println!("  f = {:?}", w.f);
            }
        }
    }
    Ok(())
}
