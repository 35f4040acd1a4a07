use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::sweep::MeasureRecord;
use crate::error::Result;

pub const CSV_HEADER: [&str; 5] = ["scenario", "r", "measure", "subsystem", "value"];
const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style formatting: fixed notation for decimal exponents in
/// `[-4, 12)`, scientific otherwise, trailing zeros removed.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes records as CSV (LF line endings) and returns the number of data rows.
pub fn write_csv<W: Write>(records: &[MeasureRecord], out: W) -> Result<usize> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        w.write_record([
            rec.scenario.name().as_str(),
            &format_significant(rec.r, SIGNIFICANT_DIGITS),
            &rec.name,
            &rec.subsystem,
            &format_significant(rec.value, SIGNIFICANT_DIGITS),
        ])?;
    }
    w.flush()?;
    Ok(records.len())
}

pub fn emit_csv(records: &[MeasureRecord], path: &Path) -> Result<usize> {
    let file = BufWriter::new(File::create(path)?);
    write_csv(records, file)
}
