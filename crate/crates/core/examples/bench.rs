//! Times every sanctioned pairing with the short profile and prints the table.

use gausszig::bench::{comparisons, render_comparisons, render_table, run_benchmark, BenchConfig, Format};
use gausszig::SamplerId;

fn main() -> gausszig::Result<()> {
    let cfg = BenchConfig::smoke(0x5EED);
    let mut results = Vec::new();
    for (source, sampler) in gausszig::bench::sanctioned_grid() {
        results.push(run_benchmark(sampler, source, &cfg)?);
    }
    print!("{}", render_table(&results, Format::Markdown)?);
    print!("{}", render_comparisons(&comparisons(&results, SamplerId::Polar)?));
    Ok(())
}
