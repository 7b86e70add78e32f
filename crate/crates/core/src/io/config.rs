//! TOML optimizer configuration.
//!
//! Every key is optional; omitted keys take their defaults.
//!
//! ```toml
//! seed = 1
//! accel = "geometric"
//! reward_mode = "best"
//! alpha = "auto"          # or a weight in kg
//! exploration = 1.4142135623730951
//! eta_min = 0.01
//! theta_max = 3
//! max_rounds = 200
//!
//! [expansion]
//! sizing = 0.5
//! shape = 0.5
//!
//! [infeasible]
//! policy = "zero"         # or "penalty" with `exponent = 2.0`
//!
//! [schedule.sizing]
//! window_ratio = 0.5
//! ```

use std::path::Path;

use crate::error::{ConfigError, Error};
use crate::optimizer::OptimizationConfig;

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<OptimizationConfig, Error> {
    let config: OptimizationConfig = toml::from_str(text).map_err(|e| {
        Error::Config(ConfigError::Invalid(e.message().to_string()))
    })?;
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<OptimizationConfig, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design_space::AccelKind;

    #[test]
    fn defaults_from_empty() {
        assert_eq!(parse_config("").unwrap(), OptimizationConfig::default());
    }

    #[test]
    fn overrides() {
        let c = parse_config("seed = 4\naccel = \"linear\"\n[schedule.shape]\nmesh_ratio = 0.25\n").unwrap();
        assert_eq!(c.seed, 4);
        assert_eq!(c.accel, AccelKind::Linear);
        assert_eq!(c.schedule.shape.mesh_ratio, 0.25);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!(parse_config("sed = 4").is_err());
        assert!(parse_config("accel = \"fast\"").is_err());
        assert!(parse_config("eta_min = -1.0").is_err());
    }
}
