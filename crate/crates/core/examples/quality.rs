//! Runs the normality report (moments, KS, 100-bin chi-square) on a pairing.

use gausszig::stats::verify_normality;
use gausszig::{SamplerId, SplitMix64};

fn main() -> gausszig::Result<()> {
    let seed = 0x5EED;
    let n = 1_000_000;
    let mut src = SplitMix64::new(seed);
    let report = verify_normality(&mut src, "splitmix", SamplerId::ModifiedZiggurat, n, Some(seed))?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    println!("passed: {}", report.passed);
    Ok(())
}
