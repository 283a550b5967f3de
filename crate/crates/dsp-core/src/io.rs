use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::DspError;

/// Write complex samples as CSV with columns `index,re,im`.
///
/// Floats are printed with Rust's shortest round-trip formatting, so output
/// is byte-identical across reruns and reloads exactly.
pub fn write_waveform_csv<W: Write>(out: &mut W, samples: &[Complex64]) -> Result<(), DspError> {
    writeln!(out, "index,re,im")?;
    for (i, s) in samples.iter().enumerate() {
        writeln!(out, "{},{},{}", i, s.re, s.im)?;
    }
    Ok(())
}

/// Read complex samples from `index,re,im` CSV (header optional).
pub fn read_waveform_csv<R: Read>(input: R) -> Result<Vec<Complex64>, DspError> {
    let reader = BufReader::new(input);
    let mut samples = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if lineno == 0 && trimmed.starts_with("index") {
            continue;
        }
        let mut fields = trimmed.split(',');
        let parse = |field: Option<&str>, what: &str| -> Result<f64, DspError> {
            field
                .ok_or_else(|| DspError::CsvParse {
                    line: lineno + 1,
                    msg: format!("missing {what} column"),
                })?
                .trim()
                .parse()
                .map_err(|e| DspError::CsvParse {
                    line: lineno + 1,
                    msg: format!("bad {what}: {e}"),
                })
        };
        let _index = parse(fields.next(), "index")?;
        let re = parse(fields.next(), "re")?;
        let im = parse(fields.next(), "im")?;
        samples.push(Complex64::new(re, im));
    }
    Ok(samples)
}

/// Convenience file wrappers.
pub fn write_waveform_csv_file(path: &Path, samples: &[Complex64]) -> Result<(), DspError> {
    let mut f = std::fs::File::create(path)?;
    write_waveform_csv(&mut f, samples)
}

pub fn read_waveform_csv_file(path: &Path) -> Result<Vec<Complex64>, DspError> {
    read_waveform_csv(std::fs::File::open(path)?)
}
