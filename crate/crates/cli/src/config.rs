//! Flat `key = value` parameter files, expanded into long flags.

use std::ffi::OsString;
use std::path::Path;

use crate::error::CliError;

/// Parses a parameter file into `--key value` pairs. Blank lines and lines
/// starting with `#` are skipped; boolean keys take `true` or `false`.
pub fn parse(text: &str, origin: &Path) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Validation(format!(
                "{}:{}: expected `key = value`",
                origin.display(),
                number + 1
            )));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key == "config" || key.starts_with('-') {
            return Err(CliError::Validation(format!(
                "{}:{}: invalid key `{key}`",
                origin.display(),
                number + 1
            )));
        }
        match (key, value) {
            ("svg", "true") => out.push(OsString::from("--svg")),
            ("svg", "false") => {}
            ("svg", _) => {
                return Err(CliError::Validation(format!(
                    "{}:{}: svg must be true or false",
                    origin.display(),
                    number + 1
                )))
            }
            _ => {
                out.push(OsString::from(format!("--{key}")));
                out.push(OsString::from(value));
            }
        }
    }
    Ok(out)
}

/// Splices the flags of a `--config` file in front of the command-line flags,
/// so that explicit flags take precedence.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut path = None;
    for (i, arg) in args.iter().enumerate() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            path = args.get(i + 1).map(|p| p.into());
        } else if let Some(rest) = text.strip_prefix("--config=") {
            path = Some(rest.into());
        }
    }
    let Some(path): Option<std::path::PathBuf> = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    let flags = parse(&text, &path)?;
    if args.len() < 2 {
        return Ok(args);
    }
    let mut out = args[..2].to_vec();
    out.extend(flags);
    out.extend_from_slice(&args[2..]);
    Ok(out)
}
