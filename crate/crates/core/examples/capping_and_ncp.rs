//! Capping increments, neighborly cubical polytopes and their capped versions.

use cubical::constructions::{capped_ncp_f_vector, capping_delta, ncp_f_vector, NcpParams};
use cubical::seqkit::unimodality_report;
use num_bigint::BigInt;

fn main() -> cubical::Result<()> {
    println!("delta(5) = {:?}", capping_delta(5)?);
    let p = NcpParams::new(6, 10)?;
    let f = ncp_f_vector(p)?;
    println!("NCP(6, 10) f = {:?}", f.entries());
    let capped = capped_ncp_f_vector(p, &BigInt::from(1000))?;
    let r = unimodality_report(capped.entries())?;
    println!("with 1000 caps: {:?} peaks={:?}", capped.entries(), r.peak_indices);
    Ok(())
}
