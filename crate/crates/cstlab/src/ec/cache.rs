//! Trace cache: a CSV file `p,ap1,ap2,a1p` with optional leading `#`
//! comment lines. Reading re-validates every record invariant and the
//! ascending-p ordering, reporting offending line numbers.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::curve::TraceRecord;
use crate::error::Error;
use crate::Result;

pub const HEADER: &str = "p,ap1,ap2,a1p";

/// Writes records with optional comment lines (written before the header,
/// each prefixed `# `).
pub fn write_records<W: Write>(
    mut w: W,
    comments: &[String],
    records: &[TraceRecord],
) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Io {
        path: "<writer>".into(),
        source: e,
    };
    for c in comments {
        writeln!(w, "# {c}").map_err(io_err)?;
    }
    writeln!(w, "{HEADER}").map_err(io_err)?;
    for r in records {
        writeln!(w, "{},{},{},{}", r.p, r.ap1, r.ap2, r.a1p).map_err(io_err)?;
    }
    Ok(())
}

pub fn write_records_path(
    path: &Path,
    comments: &[String],
    records: &[TraceRecord],
) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    write_records(BufWriter::new(f), comments, records)
}

/// Parses and validates a cache stream.
pub fn read_records<R: Read>(r: R) -> Result<Vec<TraceRecord>> {
    let reader = BufReader::new(r);
    let mut records = Vec::new();
    let mut saw_header = false;
    let mut last_p: u64 = 0;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Io {
            path: "<reader>".into(),
            source: e,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            if saw_header && !trimmed.is_empty() {
                return Err(Error::CacheParse {
                    line: line_no,
                    msg: "comment lines are only allowed before the header".into(),
                });
            }
            continue;
        }
        if !saw_header {
            if trimmed != HEADER {
                return Err(Error::CacheParse {
                    line: line_no,
                    msg: format!("expected header `{HEADER}`, found `{trimmed}`"),
                });
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::CacheParse {
                line: line_no,
                msg: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let p: u64 = fields[0].parse().map_err(|_| Error::CacheParse {
            line: line_no,
            msg: format!("bad prime field `{}`", fields[0]),
        })?;
        let parse_i = |s: &str| -> Result<i64> {
            s.parse().map_err(|_| Error::CacheParse {
                line: line_no,
                msg: format!("bad integer field `{s}`"),
            })
        };
        let ap1 = parse_i(fields[1])?;
        let ap2 = parse_i(fields[2])?;
        let a1p = parse_i(fields[3])?;
        let rec = TraceRecord::new(p, ap1, ap2, a1p).map_err(|e| Error::CacheParse {
            line: line_no,
            msg: e.to_string(),
        })?;
        if p <= last_p {
            return Err(Error::CacheParse {
                line: line_no,
                msg: format!("primes not strictly ascending: {p} after {last_p}"),
            });
        }
        last_p = p;
        records.push(rec);
    }
    if !saw_header {
        return Err(Error::CacheParse {
            line: 0,
            msg: "missing header".into(),
        });
    }
    Ok(records)
}

pub fn read_records_path(path: &Path) -> Result<Vec<TraceRecord>> {
    let f = std::fs::File::open(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    read_records(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<TraceRecord> {
        vec![
            TraceRecord::new(2, -2, -2, -4).unwrap(),
            TraceRecord::new(3, -3, -2, -5).unwrap(),
            TraceRecord::new(5, -2, -4, -6).unwrap(),
        ]
    }

    #[test]
    fn roundtrip_bytes() {
        let mut buf = Vec::new();
        write_records(&mut buf, &["seed = 0".into()], &sample()).unwrap();
        let back = read_records(buf.as_slice()).unwrap();
        assert_eq!(back, sample());

        // byte-identical re-serialization
        let mut buf2 = Vec::new();
        write_records(&mut buf2, &["seed = 0".into()], &back).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn empty_stream_roundtrip() {
        let mut buf = Vec::new();
        write_records(&mut buf, &[], &[]).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "p,ap1,ap2,a1p\n");
        assert!(read_records(buf.as_slice()).unwrap().is_empty());
    }

    #[test]
    fn rejects_hasse_violation_with_line() {
        let text = "p,ap1,ap2,a1p\n7,6,0,6\n";
        match read_records(text.as_bytes()) {
            Err(Error::CacheParse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("Hasse"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_sum_mismatch() {
        let text = "p,ap1,ap2,a1p\n7,1,1,3\n";
        assert!(matches!(
            read_records(text.as_bytes()),
            Err(Error::CacheParse { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_non_ascending() {
        let text = "p,ap1,ap2,a1p\n7,1,1,2\n5,0,0,0\n";
        match read_records(text.as_bytes()) {
            Err(Error::CacheParse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("ascending"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_line() {
        let text = "p,ap1,ap2,a1p\n7,1,1\n";
        assert!(matches!(
            read_records(text.as_bytes()),
            Err(Error::CacheParse { line: 2, .. })
        ));
        let text2 = "p,ap1,ap2,a1p\nx,1,1,2\n";
        assert!(matches!(
            read_records(text2.as_bytes()),
            Err(Error::CacheParse { line: 2, .. })
        ));
    }
}
