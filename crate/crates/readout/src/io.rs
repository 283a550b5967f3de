use std::io::{BufRead, BufReader, Read, Write};

use crate::demod::ReadoutResult;
use crate::error::ReadoutError;

/// One exported readout record: which repetition produced which I/Q pair.
#[derive(Debug, Clone, Copy)]
pub struct ReadoutRow {
    pub rep: u32,
    pub result: ReadoutResult,
}

/// Write readout results as CSV with columns `rep,channel,i,q`.
pub fn write_readout_csv<W: Write>(out: &mut W, rows: &[ReadoutRow]) -> Result<(), ReadoutError> {
    writeln!(out, "rep,channel,i,q")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.rep, row.result.channel, row.result.i, row.result.q
        )?;
    }
    Ok(())
}

/// Load prototype filter coefficients from CSV. Accepts either bare values
/// (one per line) or `index,value` rows, with an optional header.
pub fn read_prototype_csv<R: Read>(input: R) -> Result<Vec<f64>, ReadoutError> {
    let reader = BufReader::new(input);
    let mut taps = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if lineno == 0 && trimmed.chars().next().is_some_and(|c| c.is_alphabetic()) {
            continue; // header
        }
        let field = trimmed.rsplit(',').next().unwrap_or(trimmed).trim();
        let v: f64 = field.parse().map_err(|e| ReadoutError::CsvParse {
            line: lineno + 1,
            msg: format!("bad coefficient: {e}"),
        })?;
        taps.push(v);
    }
    Ok(taps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn readout_csv_has_stable_layout() {
        let rows = vec![
            ReadoutRow {
                rep: 0,
                result: ReadoutResult {
                    i: 1.5,
                    q: -0.25,
                    channel: 3,
                    n_samples: 64,
                },
            },
            ReadoutRow {
                rep: 1,
                result: ReadoutResult {
                    i: 0.0,
                    q: 2.0,
                    channel: 5,
                    n_samples: 64,
                },
            },
        ];
        let mut buf = Vec::new();
        write_readout_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "rep,channel,i,q\n0,3,1.5,-0.25\n1,5,0,2\n");
    }

    #[test]
    fn prototype_csv_accepts_both_layouts() {
        let bare = "0.25\n0.5\n0.25\n";
        assert_eq!(read_prototype_csv(bare.as_bytes()).unwrap(), vec![0.25, 0.5, 0.25]);
        let indexed = "index,value\n0,0.25\n1,0.5\n2,0.25\n";
        assert_eq!(
            read_prototype_csv(indexed.as_bytes()).unwrap(),
            vec![0.25, 0.5, 0.25]
        );
    }
}
