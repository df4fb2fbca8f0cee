//! Result files written by `fibsum search`.
//!
//! JSON files hold one object `{manifest, records}`. CSV files start with a
//! single `# manifest: {...}` comment line carrying the same manifest as
//! JSON, followed by a header row `p,q,k,n,trivial,lhs_digits`.

use std::io::{BufRead, BufReader, Read, Write};

use anyhow::{bail, Context, Result};
use chrono::{DateTime, Utc};
use fibsum::SolutionRecord;
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const CSV_MANIFEST_PREFIX: &str = "# manifest: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub started: DateTime<Utc>,
    pub finished: DateTime<Utc>,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub manifest: RunManifest,
    pub records: Vec<SolutionRecord>,
}

impl ResultFile {
    pub fn write<W: Write>(&self, format: Format, mut out: W) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                writeln!(
                    out,
                    "{CSV_MANIFEST_PREFIX}{}",
                    serde_json::to_string(&self.manifest)?
                )?;
                let mut w = csv::Writer::from_writer(&mut out);
                for r in &self.records {
                    w.serialize(r)?;
                }
                // Header only appears once a record is serialized.
                if self.records.is_empty() {
                    w.write_record(["p", "q", "k", "n", "trivial", "lhs_digits"])?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    pub fn read<R: Read>(format: Format, input: R) -> Result<Self> {
        match format {
            Format::Json => Ok(serde_json::from_reader(input)?),
            Format::Csv => {
                let mut reader = BufReader::new(input);
                let mut first = String::new();
                reader.read_line(&mut first)?;
                let Some(manifest) = first.trim_end().strip_prefix(CSV_MANIFEST_PREFIX) else {
                    bail!("CSV result file does not start with a manifest line");
                };
                let manifest = serde_json::from_str(manifest).context("manifest line")?;
                let records = csv::Reader::from_reader(reader)
                    .deserialize()
                    .collect::<Result<Vec<SolutionRecord>, _>>()?;
                Ok(ResultFile { manifest, records })
            }
        }
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &SolutionRecord> {
        self.records.iter().filter(|r| !r.trivial)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} solutions ({} non-trivial)",
            self.records.len(),
            self.nontrivial().count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultFile {
        let now = Utc::now();
        ResultFile {
            manifest: RunManifest {
                command: "search".into(),
                config: serde_json::json!({"k_max": 4}),
                started: now,
                finished: now,
                tool_version: TOOL_VERSION.into(),
            },
            records: fibsum::solve_fixed_pq(1, 1, 4).unwrap(),
        }
    }

    #[test]
    fn json_and_csv_round_trip() {
        let file = sample();
        for format in [Format::Json, Format::Csv] {
            let mut buf = Vec::new();
            file.write(format, &mut buf).unwrap();
            let back = ResultFile::read(format, buf.as_slice()).unwrap();
            assert_eq!(back, file, "{format:?}");
        }
        assert_eq!(file.summary(), "4 solutions (1 non-trivial)");
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert!(lines[0].starts_with("# manifest: {"));
        assert_eq!(lines[1], "p,q,k,n,trivial,lhs_digits");
        assert_eq!(lines[5], "1,1,4,8,false,2");
    }

    #[test]
    fn empty_csv_keeps_header() {
        let mut file = sample();
        file.records.clear();
        let mut buf = Vec::new();
        file.write(Format::Csv, &mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .contains("p,q,k,n,trivial,lhs_digits"));
        assert!(ResultFile::read(Format::Csv, b"p,q\n".as_slice()).is_err());
    }
}
