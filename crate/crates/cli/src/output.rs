use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// An input file and the SHA-256 of its bytes.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn read_input(path: &Path) -> Result<(String, InputDigest), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let text = String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))?;
    Ok((text, InputDigest { path: path.display().to_string(), sha256: digest }))
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// `foo.csv` -> `foo.csv.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(format!(".{suffix}"));
    PathBuf::from(s)
}

/// Rounds every float in a JSON document to twelve significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            let x = n.as_f64().unwrap_or(0.0);
            hodgewalk::fmt::format_float(x)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

pub fn json_text(v: &impl Serialize) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&round_floats(value)).expect("serializable");
    s.push('\n');
    s
}

/// Everything a command produced, before anything touches the disk.
pub struct Artifacts {
    /// Main payload.
    pub primary: String,
    /// Extra files written next to the primary output, by suffix.
    pub extra: Vec<(String, String)>,
    pub summary: String,
    pub seed: Option<u64>,
}

impl Artifacts {
    pub fn new(primary: String, summary: String) -> Self {
        Self { primary, extra: Vec::new(), summary, seed: None }
    }
}

/// Writes the artifacts and the run manifest, or prints the payload.
pub fn emit(
    out: Option<&Path>,
    command: &str,
    params: &impl Serialize,
    inputs: &[InputDigest],
    art: Artifacts,
) -> Result<(), CliError> {
    let Some(out) = out else {
        print!("{}", art.primary);
        eprintln!("{}", art.summary);
        return Ok(());
    };
    let mut outputs = vec![out.display().to_string()];
    write_atomic(out, &art.primary)?;
    for (suffix, text) in &art.extra {
        let p = sibling(out, suffix);
        write_atomic(&p, text)?;
        outputs.push(p.display().to_string());
    }
    let manifest = json!({
        "command": command,
        "parameters": params,
        "seed": art.seed,
        "versions": {
            "hodgewalk": env!("CARGO_PKG_VERSION"),
            "rng": hodgewalk::walk::RNG_NAME,
        },
        "inputs": inputs,
        "outputs": outputs,
    });
    write_atomic(&sibling(out, "manifest.json"), &json_text(&manifest))?;
    println!("{}", art.summary);
    Ok(())
}
