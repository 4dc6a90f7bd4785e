//! Output plumbing. CSV has a header row, `.` decimals, `\n` terminators and 17
//! significant digits; JSON reports carry [`SCHEMA_VERSION`].

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use beltrami_core::eigenbasis::{MultiIndex, Operator};
use serde::Serialize;

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Shortest text that keeps 17 significant digits.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// A buffered destination: a file, or stdout when no path is given.
pub struct Sink {
    path: PathBuf,
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => {
                let file = File::create(p).map_err(|source| CliError::Io {
                    path: p.to_owned(),
                    source,
                })?;
                Ok(Self {
                    path: p.to_owned(),
                    inner: Box::new(BufWriter::new(file)),
                })
            }
            None => Ok(Self {
                path: PathBuf::from("<stdout>"),
                inner: Box::new(BufWriter::new(io::stdout().lock())),
            }),
        }
    }

    fn io_err(&self, source: io::Error) -> CliError {
        CliError::Io {
            path: self.path.clone(),
            source,
        }
    }

    /// Writes CSV `header` then `rows`, each a list of preformatted cells.
    pub fn csv<I>(mut self, header: &[&str], rows: I) -> Result<()>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut self.inner);
            w.write_record(header)?;
            for row in rows {
                w.write_record(&row)?;
            }
            w.flush().map_err(|e| CliError::Io {
                path: self.path.clone(),
                source: e,
            })?;
        }
        self.inner.flush().map_err(|e| self.io_err(e))
    }

    pub fn json<T: Serialize>(mut self, value: &T) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.inner, value)?;
        self.inner.write_all(b"\n").map_err(|e| self.io_err(e))?;
        self.inner.flush().map_err(|e| self.io_err(e))
    }
}

/// A multi-index spelled out for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexRecord {
    pub index: String,
    pub operator: String,
    pub n: u32,
    pub m: u32,
    pub k: i32,
    /// `+` or `-` for curl, empty for grad-div.
    pub sign: String,
}

impl From<MultiIndex> for IndexRecord {
    fn from(idx: MultiIndex) -> Self {
        Self {
            index: idx.to_string(),
            operator: idx.operator().to_string(),
            n: idx.n(),
            m: idx.m(),
            k: idx.k(),
            sign: sign_cell(idx),
        }
    }
}

pub fn sign_cell(idx: MultiIndex) -> String {
    match idx.operator() {
        Operator::Curl => idx.sign().to_string(),
        Operator::GradDiv => String::new(),
    }
}

/// One coefficient or eigenvalue entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermRecord {
    #[serde(flatten)]
    pub index: IndexRecord,
    pub eigenvalue: f64,
    pub value: f64,
}

impl From<&beltrami_core::spectral::Term> for TermRecord {
    fn from(t: &beltrami_core::spectral::Term) -> Self {
        Self {
            index: t.index.into(),
            eigenvalue: t.eigenvalue,
            value: t.value,
        }
    }
}

pub const TERM_HEADER: [&str; 7] = ["operator", "n", "m", "k", "sign", "eigenvalue", "value"];

pub fn term_row(t: &TermRecord) -> Vec<String> {
    vec![
        t.index.operator.clone(),
        t.index.n.to_string(),
        t.index.m.to_string(),
        t.index.k.to_string(),
        t.index.sign.clone(),
        real(t.eigenvalue),
        real(t.value),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_keep_seventeen_digits() {
        assert_eq!(real(0.1), "1.0000000000000001e-1");
        assert_eq!(real(-4.493409457909064), "-4.4934094579090642e0");
        assert_eq!(real(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        Sink::open(Some(&path))
            .unwrap()
            .csv(&["a", "b"], vec![vec!["1".into(), "x,y".into()]])
            .unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n1,\"x,y\"\n");
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let err = Sink::open(Some(Path::new("/nonexistent/dir/out.csv")))
            .err()
            .unwrap();
        assert_eq!(err.exit_code(), crate::error::exit::IO);
    }
}
