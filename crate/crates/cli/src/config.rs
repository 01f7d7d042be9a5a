use std::path::Path;

use milnor::{Error, Tolerances};
use serde::{Deserialize, Serialize};

/// Run configuration; every report carries a copy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceConfig {
    #[serde(flatten)]
    pub tolerances: Tolerances,
    /// Default word length for `verify`.
    pub jorgensen_depth: usize,
    /// Recorded for reproducibility; no subcommand draws random numbers yet.
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            jorgensen_depth: 4,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let config: ToleranceConfig = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if !config.tolerances.is_valid() {
            return Err(Error::Parse(
                "tolerances must be positive and finite".into(),
            ));
        }
        if config.jorgensen_depth == 0 {
            return Err(Error::InvalidDepth);
        }
        Ok(config)
    }
}
