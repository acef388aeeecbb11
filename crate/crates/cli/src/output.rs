use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use crate::{GlobalOpts, UsageError};

/// Writes `body` to `--out` or stdout. A trailing newline is added if
/// missing.
pub fn emit(opts: &GlobalOpts, mut body: String) -> Result<()> {
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &opts.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())).into()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn csv<I, R>(header: &[&str], records: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in records {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
