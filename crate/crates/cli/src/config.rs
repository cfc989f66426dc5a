//! Run settings from an optional `key=value` file, overridden by flags.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub trials: usize,
    pub bound: u64,
    pub ladder: u32,
    pub format: Format,
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        let checks = dlfq::checks::CheckConfig::default();
        Self {
            seed: checks.seed,
            trials: checks.trials,
            bound: checks.bound,
            ladder: dlfq::variety::DEFAULT_LADDER,
            format: Format::Json,
            timings: false,
        }
    }
}

impl Settings {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected key=value", path.display(), lineno + 1);
            };
            self.set(key.trim(), value.trim())
                .with_context(|| format!("{}:{}", path.display(), lineno + 1))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "seed" => self.seed = value.parse()?,
            "trials" => self.trials = value.parse()?,
            "bound" => self.bound = value.parse()?,
            "ladder" => self.ladder = value.parse()?,
            "timings" => self.timings = value.parse()?,
            "format" => self.format = parse_format(value)?,
            other => bail!("unknown config key {other}"),
        }
        Ok(())
    }
}

pub fn parse_format(value: &str) -> Result<Format> {
    match value {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => bail!("unknown format {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let dir = std::env::temp_dir().join(format!("dlfq-config-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        fs::write(&path, "# desk run\nseed = 7\ntrials=10\nformat=csv\n").unwrap();
        let mut s = Settings::default();
        s.apply_file(&path).unwrap();
        assert_eq!((s.seed, s.trials, s.format), (7, 10, Format::Csv));
        fs::write(&path, "colour=blue\n").unwrap();
        assert!(s.apply_file(&path).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
