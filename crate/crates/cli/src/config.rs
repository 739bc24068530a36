use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use korovkin_core::fourier::{FourierConvention, PhaseMode};
use korovkin_core::grunwald::TABLE_GRID_STEP;

/// Window truncation for `K_{n,m}` tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LTrunc {
    /// `m = n`, as in the published tables.
    #[default]
    Paper,
    /// Smallest `m` whose window tail is negligible.
    Auto,
    Fixed(usize),
}

impl FromStr for LTrunc {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "paper" => Ok(LTrunc::Paper),
            "auto" => Ok(LTrunc::Auto),
            other => other
                .parse::<usize>()
                .map(LTrunc::Fixed)
                .map_err(|_| format!("expected an integer, `auto` or `paper`, got `{other}`")),
        }
    }
}

impl fmt::Display for LTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LTrunc::Paper => write!(f, "paper"),
            LTrunc::Auto => write!(f, "auto"),
            LTrunc::Fixed(m) => write!(f, "{m}"),
        }
    }
}

pub fn parse_phase(s: &str) -> std::result::Result<PhaseMode, String> {
    match s.trim() {
        "alternating" => Ok(PhaseMode::Alternating),
        "exact" => Ok(PhaseMode::Exact),
        other => Err(format!("expected `alternating` or `exact`, got `{other}`")),
    }
}

pub fn phase_name(p: PhaseMode) -> &'static str {
    match p {
        PhaseMode::Alternating => "alternating",
        PhaseMode::Exact => "exact",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid_step: f64,
    pub quad_tol: f64,
    pub l_truncation: LTrunc,
    pub convention: FourierConvention,
    pub out_dir: PathBuf,
    pub emit_svg: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_step: TABLE_GRID_STEP,
            quad_tol: 1e-10,
            l_truncation: LTrunc::Paper,
            convention: FourierConvention::default().with_phase(PhaseMode::Alternating),
            out_dir: PathBuf::from("out"),
            emit_svg: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.grid_step > 0.0 && self.grid_step.is_finite()) {
            bail!("grid_step must be positive, got {}", self.grid_step);
        }
        if !(self.quad_tol > 0.0 && self.quad_tol.is_finite()) {
            bail!("quad_tol must be positive, got {}", self.quad_tol);
        }
        if !(self.convention.forward_scale > 0.0 && self.convention.forward_scale.is_finite()) {
            bail!("forward_scale must be positive");
        }
        Ok(())
    }

    /// Applies one `key = value` setting. Keys match the long flag names,
    /// with `-` or `_` accepted.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "grid_step" => self.grid_step = v.parse().context("grid_step")?,
            "quad_tol" => self.quad_tol = v.parse().context("quad_tol")?,
            "l_trunc" => self.l_truncation = v.parse().map_err(anyhow::Error::msg)?,
            "phase_mode" => self.convention.phase_mode = parse_phase(v).map_err(anyhow::Error::msg)?,
            "forward_scale" => self.convention.forward_scale = v.parse().context("forward_scale")?,
            "out_dir" => self.out_dir = PathBuf::from(v),
            "svg" => self.emit_svg = parse_bool(v)?,
            other => bail!("unknown config key `{other}`"),
        }
        Ok(())
    }
}

fn parse_bool(v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => bail!("expected a boolean, got `{v}`"),
    }
}

/// Reads `key = value` lines. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .with_context(|| format!("line {}: expected key = value", i + 1))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    parse_config_text(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_settings() {
        let map = parse_config_text("# comment\ngrid-step = 0.001\n\nphase_mode=exact\nsvg = yes\nl_trunc = 12\n")
            .unwrap();
        let mut cfg = RunConfig::default();
        for (k, v) in &map {
            cfg.set(k, v).unwrap();
        }
        assert_eq!(cfg.grid_step, 0.001);
        assert_eq!(cfg.convention.phase_mode, PhaseMode::Exact);
        assert!(cfg.emit_svg);
        assert_eq!(cfg.l_truncation, LTrunc::Fixed(12));
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_config_text("novalue").is_err());
        let mut cfg = RunConfig::default();
        assert!(cfg.set("colour", "red").is_err());
        assert!(cfg.set("l_trunc", "many").is_err());
        cfg.set("grid_step", "-1").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn truncation_roundtrip() {
        for t in [LTrunc::Paper, LTrunc::Auto, LTrunc::Fixed(7)] {
            assert_eq!(t.to_string().parse::<LTrunc>().unwrap(), t);
        }
    }
}
