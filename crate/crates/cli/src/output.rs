use std::io::Write;

use crate::config::{Format, RunConfig};
use crate::CliError;

/// Overall outcome of a run; decides the `status` key and the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }

    pub fn from_passes(all: bool) -> Verdict {
        if all {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// A table of preformatted cells. Both writers print the same strings.
#[derive(Clone, Debug)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Report {
        Report {
            columns: columns.to_vec(),
            rows: Vec::new(),
            verdict: Verdict::Ok,
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// `v` with `sig` significant digits, like `%g` but always with a decimal
/// point in fixed notation (`1.0`, not `1`).
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0.0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..sig as i32).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_fraction(format!("{:.*}", decimals, v))
    } else {
        let m = trim_fraction(mantissa.to_string());
        format!("{}e{}", m, exp)
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.push('0');
        }
    } else {
        s.push_str(".0");
    }
    s
}

pub fn write_report(out: &mut dyn Write, cfg: &RunConfig, report: &Report) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match cfg.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&report.columns).map_err(csv_err)?;
            for row in &report.rows {
                w.write_record(row).map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = report
                .rows
                .iter()
                .map(|row| {
                    let obj: serde_json::Map<String, serde_json::Value> = report
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, v)| ((*k).to_string(), serde_json::Value::String(v.clone())))
                        .collect();
                    serde_json::Value::Object(obj)
                })
                .collect();
            let doc = serde_json::json!({
                "command": cfg.command.as_str(),
                "config": cfg.to_json(),
                "rows": rows,
                "status": report.verdict.as_str(),
            });
            serde_json::to_writer_pretty(&mut *out, &doc)
                .map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out).map_err(io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.0, 12), "1.0");
        assert_eq!(format_sig(0.336904809123, 9), "0.336904809");
        assert_eq!(format_sig(-0.95879261, 9), "-0.95879261");
        assert_eq!(format_sig(1.5e-9, 12), "1.5e-9");
        assert_eq!(format_sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(format_sig(0.0, 12), "0.0");
        assert_eq!(format_sig(9.9999999999999, 3), "10.0");
    }
}
