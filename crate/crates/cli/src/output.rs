use std::fs;
use std::io::{self, Write};

use skewcode::capacity::format_significant;

use crate::Common;

/// Writes `text` to `--out` or standard output.
pub fn emit(common: &Common, text: &str) -> io::Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// 12 significant digits, for JSON numbers.
pub fn round12(x: f64) -> f64 {
    if x.is_finite() {
        format_significant(x, 12).parse().unwrap_or(x)
    } else {
        x
    }
}

pub fn sig12(x: f64) -> String {
    format_significant(x, 12)
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
