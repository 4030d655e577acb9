//! Low-order bit diagnostics for the two seeded sources.

use gausszig::stats::{layer_occupancy_chi_square, low_bits_chi_square};
use gausszig::{Lcg48, ModifiedZiggurat, SplitMix64};

fn main() -> gausszig::Result<()> {
    let seed = 0x5EED;
    let n = 1_000_000;
    for k in [1, 4, 8] {
        let lcg = low_bits_chi_square(&mut Lcg48::new(seed), k, n)?;
        let sm = low_bits_chi_square(&mut SplitMix64::new(seed), k, n)?;
        println!("k = {k}: lcg48 p = {:.4}, splitmix p = {:.4}", lcg.p_value, sm.p_value);
    }

    // The raw LCG state's lowest bit simply alternates.
    let mut lcg = Lcg48::new(seed);
    let bits: String = (0..16).map(|_| if lcg.step() & 1 == 1 { '1' } else { '0' }).collect();
    println!("state bit 0: {bits}");

    let occ = layer_occupancy_chi_square(&mut Lcg48::new(seed), &mut ModifiedZiggurat::new(), n)?;
    println!("modified-ziggurat layer occupancy over lcg48: p = {:.4} ({:?})", occ.p_value, occ.verdict);
    Ok(())
}
