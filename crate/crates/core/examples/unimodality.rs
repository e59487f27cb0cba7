//! Peak and dip analysis of integer sequences.

use cubical::seqkit::unimodality_report;

fn main() -> cubical::Result<()> {
    for s in [vec![1, 3, 3, 2], vec![1, 4, 2, 3, 1], vec![5, 5, 5]] {
        let r = unimodality_report(&s)?;
        println!("{s:?}: unimodal={} peaks={:?} dips={:?}", r.is_unimodal, r.peak_indices, r.dip_indices);
    }
    Ok(())
}
