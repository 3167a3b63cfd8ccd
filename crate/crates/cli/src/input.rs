//! Resolving command-line operands: inline text, `@path` files and `-` for stdin.

use std::fs;
use std::io::{self, Read};

/// Failure to read an operand; reported as a usage error.
#[derive(Debug)]
pub struct InputError(pub String);

fn read_stdin() -> Result<String, InputError> {
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| InputError(format!("reading stdin: {e}")))?;
    Ok(text)
}

fn read_file(path: &str) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("reading {path}: {e}")))
}

/// A short operand such as a word or ranker. Surrounding whitespace is dropped
/// so that file and inline forms parse the same.
pub fn inline_or_file(arg: &str) -> Result<String, InputError> {
    let text = match arg {
        "-" => read_stdin()?,
        _ => match arg.strip_prefix('@') {
            Some(path) => read_file(path)?,
            None => return Ok(arg.to_string()),
        },
    };
    Ok(text.trim().to_string())
}

/// A file operand (`-` for stdin, `@path` accepted as well).
pub fn file(arg: &str) -> Result<String, InputError> {
    match arg {
        "-" => read_stdin(),
        _ => read_file(arg.strip_prefix('@').unwrap_or(arg)),
    }
}
