//! Verifies the capped neighborly 12-polytope on 2^131 vertices with 1841 * 10^39 caps.

use cubical::search::verify_paper_counterexample;

fn main() -> cubical::Result<()> {
    let r = verify_paper_counterexample()?;
    println!("f_0 = {} ({} digits)", r.f[0], r.vertex_digit_count);
    for (i, x) in r.f.iter().enumerate() {
        println!("f_{i:<2} = {x}");
    }
    println!("dips at {:?}; f_4 > f_5 < f_6: {}", r.dip_indices, r.dip_4_5_6);
    println!("all checks pass: {}", r.ok());
    Ok(())
}
