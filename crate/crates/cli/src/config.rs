use std::ffi::OsString;
use std::fs;

/// Appends `--key value` pairs from a `key=value` file named by `--config`.
///
/// Later occurrences win during parsing, so file entries override flags
/// given on the command line.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut path = None;
    let mut iter = args.iter().skip(1);
    while let Some(a) = iter.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            path = iter.next().map(|p| p.to_string_lossy().into_owned());
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let mut out = args;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "config" {
            continue;
        }
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    Ok(out)
}

/// Memory budget from `GOLDTWIN_MEM_BUDGET`, in table entries.
pub fn memory_budget() -> Result<u64, String> {
    match std::env::var("GOLDTWIN_MEM_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| format!("GOLDTWIN_MEM_BUDGET={v} is not an integer")),
        Err(_) => Ok(goldtwin_core::DEFAULT_BUDGET),
    }
}
