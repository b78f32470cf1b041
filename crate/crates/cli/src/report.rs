//! Run reports, input digests and the exit-code contract.

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use snkit::Error;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::Duration;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SIZE_BOUND: i32 = 65;
pub const EXIT_TIMEOUT: i32 = 66;

/// Why a command produced no result.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unreadable, malformed or invalid input.
    Usage(String),
    SizeBound(String),
    /// Ran out of time; the value lies in `[lower, upper]` when known.
    Timeout(Option<(u32, u32)>),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::SizeBound(_) => EXIT_SIZE_BOUND,
            Failure::Timeout(_) => EXIT_TIMEOUT,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::SizeBound(m) => format!("size bound exceeded: {m}"),
            Failure::Timeout(Some((l, u))) => format!("timed out; the value lies in [{l}, {u}]"),
            Failure::Timeout(None) => "timed out".into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeBound(m) => Failure::SizeBound(m),
            Error::Timeout { lower, upper } => Failure::Timeout(Some((lower, upper))),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub type CmdResult<T> = Result<T, Failure>;

/// What a finished command hands back: result fields and an exit code.
pub struct Outcome {
    pub fields: Map<String, Value>,
    pub exit: i32,
}

impl Outcome {
    pub fn ok(fields: Value) -> Self {
        Outcome::with_exit(fields, EXIT_OK)
    }

    pub fn with_exit(fields: Value, exit: i32) -> Self {
        let fields = match fields {
            Value::Object(m) => m,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Outcome { fields, exit }
    }
}

/// Reads input files and remembers a SHA-256 digest of each. Clones share
/// one record, so the digests survive a command that never returns.
#[derive(Clone, Default)]
pub struct Inputs {
    digests: Arc<Mutex<BTreeMap<String, String>>>,
}

impl Inputs {
    pub fn read(&self, path: &Path) -> CmdResult<String> {
        let bytes = fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.digests
            .lock()
            .unwrap()
            .insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|_| Failure::Usage(format!("{} is not UTF-8", path.display())))
    }

    pub fn graph(&self, path: &Path) -> CmdResult<snkit::Multigraph> {
        let text = self.read(path)?;
        snkit::io::parse_graph(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }

    pub fn digests(&self) -> Value {
        Value::Object(
            self.digests
                .lock()
                .unwrap()
                .iter()
                .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
                .collect(),
        )
    }
}

/// Resolves a path found inside `file` relative to that file's directory.
pub fn relative_to(file: &Path, inner: &str) -> PathBuf {
    let p = Path::new(inner);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    file.parent().map_or_else(|| p.to_path_buf(), |d| d.join(p))
}

/// Assembles the report printed on stdout. Result fields sit at the top
/// level next to `command`, `inputs`, `timing` and `version`.
pub fn run_report(argv: &[String], inputs: Value, fields: Map<String, Value>, elapsed: Duration) -> Value {
    let mut report = fields;
    report.insert("command".into(), Value::from(argv.to_vec()));
    report.insert("inputs".into(), inputs);
    report.insert("timing".into(), serde_json::json!({ "seconds": elapsed.as_secs_f64() }));
    report.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
    Value::Object(report)
}

/// Writes canonical JSON followed by a newline.
pub fn write_json(path: &Path, v: &Value) -> CmdResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, format!("{v}\n")).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
