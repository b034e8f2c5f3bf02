//! Report serialization: JSON (array of reports) and CSV with a fixed
//! column order. Floats are written with Rust's shortest-round-trip
//! formatting, so both formats preserve every numeric field exactly.

use std::io::Write;

use super::predict::{ExperimentReport, FValue, QueryFields, RegimeFlags};
use crate::error::Error;
use crate::Result;

pub const CSV_HEADER: &str = "x,t,m,interval_lo,interval_hi,raw_count,pi_x,empirical_ratio,\
prediction,error_value,main_term_eq5,regime_delta_window,regime_m_lower,regime_m_upper,\
f_value,f_tail_bound,notes";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidInput(format!(
                "unknown report format `{other}` (csv|json)"
            ))),
        }
    }
}

/// Serializes reports in the requested format.
pub fn emit<W: Write>(reports: &[ExperimentReport], mut w: W, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut w, reports)?;
            w.write_all(b"\n").map_err(|e| Error::Io {
                path: "<writer>".into(),
                source: e,
            })?;
            Ok(())
        }
        ReportFormat::Csv => {
            let io_err = |e: std::io::Error| Error::Io {
                path: "<writer>".into(),
                source: e,
            };
            writeln!(w, "{CSV_HEADER}").map_err(io_err)?;
            for r in reports {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.query.x,
                    r.query.t,
                    r.query.m,
                    r.query.interval[0],
                    r.query.interval[1],
                    r.raw_count,
                    r.pi_x,
                    r.empirical_ratio,
                    r.prediction,
                    r.error_value,
                    r.main_term_eq5,
                    r.regime.delta_window,
                    r.regime.m_lower,
                    r.regime.m_upper,
                    r.f.value,
                    r.f.tail_bound,
                    csv_quote(&r.notes)
                )
                .map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn csv_unquote(s: &str) -> Result<String> {
    let inner = s
        .strip_prefix('"')
        .and_then(|v| v.strip_suffix('"'))
        .ok_or_else(|| Error::InvalidInput(format!("notes field not quoted: `{s}`")))?;
    Ok(inner.replace("\"\"", "\""))
}

/// Parses a CSV document produced by [`emit`].
pub fn parse_csv(text: &str) -> Result<Vec<ExperimentReport>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "bad report CSV header: {other:?}"
            )))
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.splitn(17, ',').collect();
        if fields.len() != 17 {
            return Err(Error::InvalidInput(format!(
                "report CSV line {}: expected 17 fields, got {}",
                i + 2,
                fields.len()
            )));
        }
        let ef = |e: std::num::ParseFloatError| {
            Error::InvalidInput(format!("report CSV line {}: {e}", i + 2))
        };
        let ei = |e: std::num::ParseIntError| {
            Error::InvalidInput(format!("report CSV line {}: {e}", i + 2))
        };
        let eb = |e: std::str::ParseBoolError| {
            Error::InvalidInput(format!("report CSV line {}: {e}", i + 2))
        };
        out.push(ExperimentReport {
            query: QueryFields {
                x: fields[0].parse().map_err(ef)?,
                t: fields[1].parse().map_err(ei)?,
                m: fields[2].parse().map_err(ei)?,
                interval: [
                    fields[3].parse().map_err(ef)?,
                    fields[4].parse().map_err(ef)?,
                ],
            },
            raw_count: fields[5].parse().map_err(ei)?,
            pi_x: fields[6].parse().map_err(ei)?,
            empirical_ratio: fields[7].parse().map_err(ef)?,
            prediction: fields[8].parse().map_err(ef)?,
            error_value: fields[9].parse().map_err(ef)?,
            main_term_eq5: fields[10].parse().map_err(ef)?,
            regime: RegimeFlags {
                delta_window: fields[11].parse().map_err(eb)?,
                m_lower: fields[12].parse().map_err(eb)?,
                m_upper: fields[13].parse().map_err(eb)?,
            },
            f: FValue {
                value: fields[14].parse().map_err(ef)?,
                tail_bound: fields[15].parse().map_err(ef)?,
            },
            notes: csv_unquote(fields[16])?,
        });
    }
    Ok(out)
}

/// Parses a JSON document produced by [`emit`].
pub fn parse_json(text: &str) -> Result<Vec<ExperimentReport>> {
    Ok(serde_json::from_str(text)?)
}
