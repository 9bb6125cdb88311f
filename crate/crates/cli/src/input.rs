//! Stream and table files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use predict_core::process::ProcessTable;
use predict_core::{BitStr, Error, Ratio};

use crate::error::{CliError, CliResult};

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// ASCII `0`/`1` digits; whitespace anywhere is ignored.
pub fn parse_stream(text: &str) -> Result<BitStr, Error> {
    let mut z = BitStr::empty();
    for (i, line) in text.lines().enumerate() {
        for (j, c) in line.chars().enumerate() {
            match c {
                '0' => z.push(0),
                '1' => z.push(1),
                c if c.is_whitespace() => {}
                c => {
                    return Err(parse_error(
                        i + 1,
                        j + 1,
                        format!("unexpected character {c:?}"),
                    ))
                }
            }
        }
    }
    Ok(z)
}

/// `string<TAB>num/den` lines with `.` for the empty string; `#` lines and
/// blank lines are skipped and duplicate strings rejected.
pub fn parse_value_table(text: &str) -> Result<BTreeMap<BitStr, Ratio>, Error> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let Some((key, value)) = raw.split_once('\t') else {
            return Err(parse_error(line, 1, "expected string<TAB>value"));
        };
        let x: BitStr = key
            .parse()
            .map_err(|e: Error| parse_error(line, 1, e.to_string()))?;
        let v: Ratio = value
            .trim()
            .parse()
            .map_err(|e: Error| parse_error(line, key.chars().count() + 2, e.to_string()))?;
        if out.insert(x.clone(), v).is_some() {
            return Err(parse_error(line, 1, format!("duplicate string {x}")));
        }
    }
    Ok(out)
}

pub fn value_table_text(values: &BTreeMap<BitStr, Ratio>) -> Vec<String> {
    values.iter().map(|(x, v)| format!("{x}\t{v}")).collect()
}

pub fn read_stream(path: &Path) -> CliResult<BitStr> {
    parse_stream(&read_file(path)?).map_err(|e| CliError::from(e).context(path.display()))
}

pub fn read_process(path: &Path) -> CliResult<ProcessTable> {
    ProcessTable::parse(&read_file(path)?).map_err(|e| CliError::from(e).context(path.display()))
}

pub fn read_value_table(path: &Path) -> CliResult<BTreeMap<BitStr, Ratio>> {
    parse_value_table(&read_file(path)?).map_err(|e| CliError::from(e).context(path.display()))
}
