//! Machine-readable run reports and the exit-code discipline.
//!
//! Every invocation prints exactly one JSON report to stdout. Exact values
//! (classes, pairings, indices) are rendered as integers or `"p/q"` strings,
//! never as floats; only residual maxima are floating point. Reports are
//! byte-identical across identical invocations: field order is fixed and
//! output maps are sorted.

use std::collections::BTreeMap;
use std::path::Path;

use endband::band::OpError;
use endband::bundle::BundleError;
use endband::fourier::FourierError;
use endband::osc::OscError;
use endband::seq::SeqError;
use serde::Serialize;
use serde_json::Value;

use crate::formats::SpecError;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, Value>,
    pub status: String,
}

impl Report {
    pub fn ok(command: String, inputs: BTreeMap<String, String>, outputs: BTreeMap<String, Value>) -> Self {
        Self {
            command,
            inputs,
            outputs,
            status: "ok".into(),
        }
    }

    pub fn error(command: String, inputs: BTreeMap<String, String>, err: &CmdError) -> Self {
        let mut outputs = BTreeMap::new();
        outputs.insert("error".into(), Value::String(err.message.clone()));
        Self {
            command,
            inputs,
            outputs,
            status: format!("error({})", err.kind.code_name()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Domain,
    Tolerance,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Domain => 2,
            ErrorKind::Tolerance => 3,
            ErrorKind::Io => 4,
        }
    }

    fn code_name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Domain => "domain",
            ErrorKind::Tolerance => "tolerance",
            ErrorKind::Io => "io",
        }
    }
}

#[derive(Debug)]
pub struct CmdError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CmdError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Usage,
            message: msg.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Domain,
            message: msg.into(),
        }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Io,
            message: msg.into(),
        }
    }
}

impl From<SpecError> for CmdError {
    fn from(e: SpecError) -> Self {
        CmdError::usage(e.0)
    }
}

impl From<SeqError> for CmdError {
    fn from(e: SeqError) -> Self {
        CmdError::domain(e.to_string())
    }
}

impl From<OpError> for CmdError {
    fn from(e: OpError) -> Self {
        CmdError::domain(e.to_string())
    }
}

impl From<BundleError> for CmdError {
    fn from(e: BundleError) -> Self {
        CmdError::domain(e.to_string())
    }
}

impl From<FourierError> for CmdError {
    fn from(e: FourierError) -> Self {
        CmdError::domain(e.to_string())
    }
}

impl From<OscError> for CmdError {
    fn from(e: OscError) -> Self {
        let kind = match e {
            OscError::ToleranceExceeded { .. } | OscError::WindingUnstable { .. } => {
                ErrorKind::Tolerance
            }
            _ => ErrorKind::Domain,
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

/// CSV side file: a header row plus data rows.
#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), CmdError> {
        std::fs::write(path, self.render())
            .map_err(|e| CmdError::io(format!("write {}: {e}", path.display())))
    }
}
