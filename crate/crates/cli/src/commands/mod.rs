//! One module per subcommand.

pub mod barrier;
pub mod build;
pub mod calibrate;
pub mod coring;
pub mod decode;
pub mod export;
pub mod kmc;
pub mod lifetime;
pub mod product;

use std::path::Path;

use anyhow::{Context, Result};

/// Writes pretty-printed JSON with a path in the error context.
pub(crate) fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
