//! Builds ziggurat tables, prints their constants and round-trips the JSON.

use gausszig::ZigguratTables;

fn main() -> gausszig::Result<()> {
    for n in [128, 256] {
        let t = ZigguratTables::build(n)?;
        println!("n = {n:>3}  r = {:.12}  v = {:.12e}", t.r(), t.v());
        let back = ZigguratTables::from_json(&t.to_json())?;
        assert_eq!(back, t);
    }

    let t = ZigguratTables::standard(128)?;
    let inner: f64 = t.x().windows(2).map(|w| w[1] / w[0]).sum();
    println!("mean fast-path acceptance per layer: {:.4}", inner / t.n() as f64);
    println!("first layers x: {:.6?}", &t.x()[..4]);
    Ok(())
}
