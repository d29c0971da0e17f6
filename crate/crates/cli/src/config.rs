//! `key=value` config files. Each key names a long flag of the chosen
//! subcommand (or a global flag); values given on the command line win.

use std::ffi::OsString;
use std::path::Path;

use clap::parser::ValueSource;
use clap::{ArgAction, ArgMatches, Command};

use crate::report::CliError;

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "config line {}: expected key=value, got {line:?}",
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(CliError::Usage(format!(
                "config line {}: empty key",
                lineno + 1
            )));
        }
        if pairs.iter().any(|(k, _): &(String, String)| k == key) {
            return Err(CliError::Usage(format!(
                "config line {}: duplicate key {key:?}",
                lineno + 1
            )));
        }
        pairs.push((key.to_string(), value.to_string()));
    }
    Ok(pairs)
}

pub fn load_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Extends `argv` with `--key value` for every config entry whose flag was
/// not given on the command line. Unknown keys are rejected.
pub fn merge_into_args(
    root: &Command,
    matches: &ArgMatches,
    pairs: &[(String, String)],
    mut argv: Vec<OsString>,
) -> Result<Vec<OsString>, CliError> {
    let (sub_name, sub_matches) = matches
        .subcommand()
        .ok_or_else(|| CliError::Usage("a subcommand is required".into()))?;
    let sub = root
        .find_subcommand(sub_name)
        .expect("matched subcommand exists");
    for (key, value) in pairs {
        if key == "config" {
            return Err(CliError::Usage(
                "config files cannot include other config files".into(),
            ));
        }
        let (arg, m) = match sub.get_arguments().find(|a| a.get_long() == Some(key)) {
            Some(a) => (a, sub_matches),
            None => match root.get_arguments().find(|a| a.get_long() == Some(key)) {
                Some(a) => (a, matches),
                None => {
                    return Err(CliError::Usage(format!(
                        "unknown config key {key:?} for {sub_name}"
                    )))
                }
            },
        };
        let id = arg.get_id().as_str();
        let on_command_line = m.value_source(id) == Some(ValueSource::CommandLine)
            || sub_matches.value_source(id) == Some(ValueSource::CommandLine);
        if on_command_line {
            continue;
        }
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" => argv.push(format!("--{key}").into()),
                "false" => {}
                _ => {
                    return Err(CliError::Usage(format!(
                        "config key {key:?} expects true or false"
                    )))
                }
            }
        } else {
            argv.push(format!("--{key}").into());
            argv.push(value.into());
        }
    }
    Ok(argv)
}
