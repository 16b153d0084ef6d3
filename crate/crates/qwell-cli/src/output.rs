//! Number formatting and output plumbing.

use std::path::PathBuf;

use crate::CliError;

/// Full round-trip precision: 17 significant digits.
pub fn full(v: f64) -> String {
    format!("{v:.16e}")
}

/// Plain decimal with the requested number of significant digits.
pub fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return format!("{v:.*}", digits.saturating_sub(1));
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Optional values render as empty CSV cells; non-finite numbers too.
pub fn full_opt(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => full(x),
        _ => String::new(),
    }
}

pub fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
