//! CSV and markdown serialization of sample statistics.

use std::collections::BTreeSet;
use std::io::{Read, Write};

use serde::Deserialize;

use crate::experiment::SampleStats;

pub const CSV_HEADER: [&str; 6] = ["n", "k", "trials", "median", "msd", "eps_strip"];
/// Significant digits of every real in the CSV output.
pub const CSV_DIGITS: usize = 6;

/// `x` rounded to `digits` significant digits, printed in the shortest form
/// that reads back to the rounded value (no trailing zeros, like `%g`
/// without the exponent switch).
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() || x == 0.0 {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let rounded: f64 = format!("{:.*e}", digits.max(1) - 1, x)
        .parse()
        .expect("float round trip");
    format!("{rounded}")
}

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRecord {
    pub n: u32,
    pub k: u32,
    pub trials: u32,
    pub median: f64,
    pub msd: f64,
    pub eps_strip: f64,
}

impl From<&SampleStats> for TableRecord {
    fn from(s: &SampleStats) -> Self {
        Self {
            n: s.n,
            k: s.k,
            trials: s.trials,
            median: s.median,
            msd: s.msd,
            eps_strip: s.eps_strip,
        }
    }
}

impl TableRecord {
    pub fn fields(&self) -> [String; 6] {
        [
            self.n.to_string(),
            self.k.to_string(),
            self.trials.to_string(),
            format_sig(self.median, CSV_DIGITS),
            format_sig(self.msd, CSV_DIGITS),
            format_sig(self.eps_strip, CSV_DIGITS),
        ]
    }

    /// The same record as it reads back from CSV.
    pub fn rounded(&self) -> Self {
        let r = |x: f64| format_sig(x, CSV_DIGITS).parse().unwrap();
        Self {
            median: r(self.median),
            msd: r(self.msd),
            eps_strip: r(self.eps_strip),
            ..*self
        }
    }
}

/// Input rows need only `n`, `k` and `median`; the rest may be empty or absent.
#[derive(Debug, Deserialize)]
struct RawRecord {
    n: u32,
    k: u32,
    #[serde(default)]
    trials: Option<u32>,
    median: f64,
    #[serde(default)]
    msd: Option<f64>,
    #[serde(default)]
    eps_strip: Option<f64>,
}

pub fn write_csv<W: Write>(out: W, records: &[TableRecord]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<TableRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    reader
        .deserialize::<RawRecord>()
        .map(|row| {
            let row = row?;
            Ok(TableRecord {
                n: row.n,
                k: row.k,
                trials: row.trials.unwrap_or(0),
                median: row.median,
                msd: row.msd.unwrap_or(0.0),
                eps_strip: row.eps_strip.unwrap_or(row.k as f64 / row.n as f64),
            })
        })
        .collect()
}

/// Medians laid out with one row per `k` and one column per `n`; absent
/// pairs are left blank.
pub fn markdown(records: &[TableRecord]) -> String {
    let ns: BTreeSet<u32> = records.iter().map(|r| r.n).collect();
    let ks: BTreeSet<u32> = records.iter().map(|r| r.k).collect();
    let mut out = String::from("| k \\ n |");
    for n in &ns {
        out.push_str(&format!(" {n} |"));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(ns.len()));
    out.push('\n');
    for k in &ks {
        out.push_str(&format!("| {k} |"));
        for n in &ns {
            match records.iter().find(|r| r.n == *n && r.k == *k) {
                Some(r) => out.push_str(&format!(" {:.2} |", r.median)),
                None => out.push_str("  |"),
            }
        }
        out.push('\n');
    }
    out
}
