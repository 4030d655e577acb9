use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

use super::{BenchResult, ComparisonRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(invalid(format!(
                "unknown format `{other}` (expected md, csv or json)"
            ))),
        }
    }
}

pub const CSV_HEADER: &str = "source,sampler,ns_per_op,ci_half_width,iters,ops_total,seed";

/// `17.393 ± 0.300 ns/op`
pub fn format_cell(r: &BenchResult) -> String {
    format!("{:.3} ± {:.3} ns/op", r.ns_per_op, r.ci_half_width)
}

fn first_seen<T: PartialEq + Copy>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out = Vec::new();
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

/// Renders results as a source-by-sampler markdown grid, CSV rows, or a
/// JSON array of [`BenchResult`].
pub fn render_table(rows: &[BenchResult], format: Format) -> Result<String> {
    if rows.is_empty() {
        return Err(invalid("nothing to render: no benchmark results"));
    }
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.source_id,
                    r.sampler_id,
                    r.ns_per_op,
                    r.ci_half_width,
                    r.per_iteration_ns_per_op.len(),
                    r.ops_total,
                    r.seed
                )
                .unwrap();
            }
            Ok(out)
        }
        Format::Markdown => {
            let sources = first_seen(rows.iter().map(|r| r.source_id));
            let samplers = first_seen(rows.iter().map(|r| r.sampler_id));
            let mut out = String::from("| Source |");
            for s in &samplers {
                write!(out, " {s} |").unwrap();
            }
            out.push_str("\n|:--|");
            out.push_str(&"--:|".repeat(samplers.len()));
            out.push('\n');
            for src in &sources {
                write!(out, "| {src} |").unwrap();
                for s in &samplers {
                    let cell = rows
                        .iter()
                        .find(|r| r.source_id == *src && r.sampler_id == *s)
                        .map(format_cell)
                        .unwrap_or_else(|| "n/a".to_string());
                    write!(out, " {cell} |").unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

pub fn render_comparisons(rows: &[ComparisonRow]) -> String {
    let mut out = String::new();
    for c in rows {
        writeln!(
            out,
            "{}: {} is {:.2}% faster than {} ({:.3} vs {:.3} ns/op)",
            c.candidate.source_id,
            c.candidate.sampler_id,
            c.percent_faster,
            c.baseline.sampler_id,
            c.candidate.ns_per_op,
            c.baseline.ns_per_op,
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{SamplerId, SourceId};

    fn result(source: SourceId, sampler: SamplerId, ns: f64, ci: f64) -> BenchResult {
        BenchResult {
            sampler_id: sampler,
            source_id: source,
            ns_per_op: ns,
            ci_half_width: ci,
            per_iteration_ns_per_op: vec![ns; 5],
            ops_total: 1_000_000,
            checksum: 0xABCD,
            seed: 7,
        }
    }

    #[test]
    fn cell_format() {
        let r = result(SourceId::Lcg48, SamplerId::Ziggurat, 17.393, 0.300);
        assert_eq!(format_cell(&r), "17.393 ± 0.300 ns/op");
    }

    #[test]
    fn markdown_grid_marks_missing_cells() {
        let rows = vec![
            result(SourceId::Lcg48, SamplerId::Ziggurat, 17.393, 0.3),
            result(SourceId::Lcg48, SamplerId::Polar, 103.037, 0.951),
            result(SourceId::SplitMix, SamplerId::Ziggurat, 10.089, 0.139),
            result(SourceId::SplitMix, SamplerId::ModifiedZiggurat, 8.927, 0.026),
        ];
        let md = render_table(&rows, Format::Markdown).unwrap();
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines[0], "| Source | ziggurat | polar | modified-ziggurat |");
        assert_eq!(
            lines[2],
            "| lcg48 | 17.393 ± 0.300 ns/op | 103.037 ± 0.951 ns/op | n/a |"
        );
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn csv_columns() {
        let rows = vec![result(SourceId::SplitMix, SamplerId::Polar, 20.5, 1.25)];
        let csv = render_table(&rows, Format::Csv).unwrap();
        assert_eq!(csv, format!("{CSV_HEADER}\nsplitmix,polar,20.5,1.25,5,1000000,7\n"));
    }

    #[test]
    fn json_round_trips() {
        let rows = vec![
            result(SourceId::Lcg48, SamplerId::Polar, 1.0 / 3.0, 0.1),
            result(SourceId::SplitMix, SamplerId::ModifiedZiggurat, 9.0, 0.2),
        ];
        let json = render_table(&rows, Format::Json).unwrap();
        let back: Vec<BenchResult> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn refuses_empty_and_unknown() {
        assert!(render_table(&[], Format::Csv).is_err());
        assert!("xml".parse::<Format>().is_err());
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
    }
}
