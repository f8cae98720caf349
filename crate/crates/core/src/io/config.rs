//! Run configuration, read from TOML.
//!
//! ```toml
//! seed = 7                        # required
//! p = 2.0
//! truncation_constant = 1.4426950408889634
//!
//! [quadrature]
//! method = "auto"                 # auto | tensor_grid | qmc
//! max_total_points = 4194304
//!
//! [montel]
//! radii = [0.5]
//! eps = 1e-3
//! schedule = { kind = "geometric", start = 0.5, ratio = 0.5 }
//! audit = { samples = 1000, net_cap = 100000000 }
//!
//! [dirichlet]
//! eps = 0.5
//! eta = 0.2
//!
//! [bayart]
//! horizon = 1e4
//! samples = 200000
//! ```
//!
//! Missing tables and fields take their defaults. The top-level `seed` drives
//! every random stream (QMC shifts, audit samples) and `p` is the exponent
//! of the Montel limit check.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bounds::DEFAULT_TRUNCATION_CONSTANT;
use crate::error::{Error, Result};
use crate::montel::{DirichletMontelConfig, MontelConfig};
use crate::polytorus::QuadratureConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BayartConfig {
    /// Half-width `R` of the window `[-R, R]`.
    pub horizon: f64,
    pub samples: usize,
}

impl Default for BayartConfig {
    fn default() -> Self {
        Self {
            horizon: 1e4,
            samples: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_constant")]
    pub truncation_constant: f64,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub montel: MontelConfig,
    #[serde(default)]
    pub dirichlet: DirichletMontelConfig,
    #[serde(default)]
    pub bayart: BayartConfig,
}

fn default_p() -> f64 {
    2.0
}

fn default_constant() -> f64 {
    DEFAULT_TRUNCATION_CONSTANT
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::with_seed(0)
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        let mut cfg = Self {
            seed,
            p: default_p(),
            truncation_constant: default_constant(),
            quadrature: QuadratureConfig::default(),
            montel: MontelConfig::default(),
            dirichlet: DirichletMontelConfig::default(),
            bayart: BayartConfig::default(),
        };
        cfg.propagate();
        cfg
    }

    /// Copies the run-level seed and exponent into the nested settings.
    fn propagate(&mut self) {
        self.quadrature.seed = self.seed;
        self.montel.audit.seed = self.seed;
        self.montel.p = self.p;
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map_or(0, |span| text[..span.start.min(text.len())].matches('\n').count() + 1);
            Error::parse(line, e.message().to_string())
        })?;
        cfg.propagate();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Range checks for the fields the parser cannot express.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::domain(format!("config: {what}")));
        if !(self.p >= 1.0 && self.p.is_finite()) {
            return bad("p must be a finite number >= 1");
        }
        if !(self.truncation_constant > 0.0) {
            return bad("truncation_constant must be positive");
        }
        let q = &self.quadrature;
        if q.initial_points == 0 || q.max_total_points == 0 || q.qmc_points == 0 || q.qmc_shifts == 0 {
            return bad("quadrature budgets must be positive");
        }
        if !(q.rel_tol > 0.0) {
            return bad("quadrature.rel_tol must be positive");
        }
        let m = &self.montel;
        if m.radii.iter().any(|r| !(*r >= 0.0 && *r < 1.0)) {
            return bad("montel.radii must lie in [0, 1)");
        }
        if !(m.eps > 0.0) || m.dense_points == 0 || m.audit.net_cap == 0 {
            return bad("montel.eps, dense_points and audit.net_cap must be positive");
        }
        let d = &self.dirichlet;
        if !(d.eps > 0.0 && d.eta > 0.0 && d.constant > 0.0) || d.max_tail_cut == 0 {
            return bad("dirichlet.eps, eta, constant and max_tail_cut must be positive");
        }
        if !(self.bayart.horizon > 0.0) || self.bayart.samples < 2 {
            return bad("bayart.horizon must be positive and samples at least 2");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montel::ToleranceSchedule;
    use crate::polytorus::GridMethod;

    #[test]
    fn minimal_config_takes_defaults() {
        let cfg = RunConfig::from_toml("seed = 7\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.p, 2.0);
        assert_eq!(cfg.truncation_constant, DEFAULT_TRUNCATION_CONSTANT);
        assert_eq!(cfg.quadrature.seed, 7);
        assert_eq!(cfg.montel.audit.seed, 7);
        assert_eq!(cfg, RunConfig::with_seed(7));
    }

    #[test]
    fn seed_is_required() {
        assert!(matches!(RunConfig::from_toml("p = 2.0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn nested_tables() {
        let text = r#"
seed = 1
p = 4.0
[quadrature]
method = "qmc"
qmc_points = 1021
[montel]
radii = [0.5, 0.25]
schedule = { kind = "geometric", start = 0.5, ratio = 0.5 }
audit = { samples = 10, net_cap = 1000 }
[dirichlet]
eta = 0.1
"#;
        let cfg = RunConfig::from_toml(text).unwrap();
        assert_eq!(cfg.quadrature.method, GridMethod::Qmc);
        assert_eq!(cfg.quadrature.qmc_points, 1021);
        assert_eq!(cfg.montel.radii, vec![0.5, 0.25]);
        assert_eq!(cfg.montel.p, 4.0);
        assert_eq!(cfg.montel.schedule, ToleranceSchedule::Geometric { start: 0.5, ratio: 0.5 });
        assert_eq!(cfg.montel.audit.net_cap, 1000);
        assert_eq!(cfg.dirichlet.eta, 0.1);
        assert_eq!(cfg.dirichlet.eps, 0.5);
    }

    #[test]
    fn rejects_unknown_and_out_of_range() {
        match RunConfig::from_toml("seed = 1\n\nbogus = 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(RunConfig::from_toml("seed = 1\np = 0.5\n").is_err());
        assert!(RunConfig::from_toml("seed = 1\n[montel]\nradii = [1.0]\n").is_err());
        assert!(RunConfig::from_toml("seed = 1\n[quadrature]\nseed = 4\n").is_err());
    }
}
