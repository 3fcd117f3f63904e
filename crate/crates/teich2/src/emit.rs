//! CSV, JSON and SVG writers with fixed, byte-stable formatting.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "teich2/v1";

/// Seventeen significant digits in scientific notation, enough to round-trip
/// any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Where a command's main output goes.
#[derive(Debug, Clone)]
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn from_option(path: Option<&Path>) -> Sink {
        match path {
            Some(p) if p.as_os_str() != "-" => Sink::File(p.to_path_buf()),
            _ => Sink::Stdout,
        }
    }

    fn label(&self) -> PathBuf {
        match self {
            Sink::Stdout => PathBuf::from("<stdout>"),
            Sink::File(p) => p.clone(),
        }
    }

    /// Runs `body` against the sink, attaching the path to any I/O error.
    pub fn write_with<F>(&self, stdout: &mut dyn Write, body: F) -> CliResult<()>
    where
        F: FnOnce(&mut dyn Write) -> io::Result<()>,
    {
        let result = match self {
            Sink::Stdout => body(stdout).and_then(|_| stdout.flush()),
            Sink::File(path) => File::create(path).and_then(|f| {
                let mut w = BufWriter::new(f);
                body(&mut w)?;
                w.flush()
            }),
        };
        result.map_err(|e| CliError::io(self.label(), e))
    }
}

/// Header row plus records, `,`-separated, LF line endings.
pub fn write_csv<I>(w: &mut dyn Write, header: &[&str], rows: I) -> io::Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(&row)?;
    }
    writer.flush()
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    #[serde(flatten)]
    data: &'a T,
}

/// Pretty-printed JSON with a top-level `"schema"` and `"command"`.
pub fn write_json<T: Serialize>(w: &mut dyn Write, command: &str, data: &T) -> io::Result<()> {
    let env = Envelope {
        schema: SCHEMA,
        command,
        data,
    };
    serde_json::to_writer_pretty(&mut *w, &env)?;
    w.write_all(b"\n")
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    schema: &'static str,
    error: ErrorBody<'a>,
}

pub fn write_json_error(w: &mut dyn Write, err: &CliError) -> io::Result<()> {
    let env = ErrorEnvelope {
        schema: SCHEMA,
        error: ErrorBody {
            kind: err.kind(),
            message: err.to_string(),
            exit_code: err.exit_code(),
        },
    };
    serde_json::to_writer_pretty(&mut *w, &env)?;
    w.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 27.023328706074827, -1e-300, 6.02e23] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
        }
    }

    #[test]
    fn csv_header_only_and_lf() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["P", "area"], Vec::<Vec<String>>::new()).unwrap();
        assert_eq!(buf, b"P,area\n");
        let mut buf = Vec::new();
        write_csv(&mut buf, &["x"], vec![vec![fmt_f64(1.5)], vec![fmt_f64(2.0)]]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "x\n1.5000000000000000e0\n2.0000000000000000e0\n"
        );
    }

    #[test]
    fn json_envelope() {
        #[derive(Serialize)]
        struct D {
            x: f64,
        }
        let mut buf = Vec::new();
        write_json(&mut buf, "demo", &D { x: 0.1 }).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["command"], "demo");
        assert_eq!(v["x"].as_f64().unwrap().to_bits(), 0.1f64.to_bits());
    }
}
