//! Experiment configuration documents.

use nextbest_core::analysis::{ExperimentConfig, MuRule};
use nextbest_core::{AlgorithmKind, GeneratorKind};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::graph_doc::FORMAT_VERSION;

/// `"log2"` or a fixed label maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MuSpec {
    Explicit(u32),
    Named(String),
}

impl Default for MuSpec {
    fn default() -> Self {
        MuSpec::Named("log2".to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub format_version: u32,
    pub n_values: Vec<u32>,
    pub c_values: Vec<u32>,
    pub alpha_values: Vec<f64>,
    #[serde(default)]
    pub mu: MuSpec,
    pub algorithms: Vec<String>,
    pub graphs_per_cell: u32,
    pub pairs_per_graph: u32,
    #[serde(default)]
    pub base_seed: Option<u64>,
    #[serde(default)]
    pub generator: Option<String>,
}

/// Command-line values that replace the file's.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub base_seed: Option<u64>,
    pub generator: Option<String>,
    pub graphs_per_cell: Option<u32>,
    pub pairs_per_graph: Option<u32>,
}

impl ConfigDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: ConfigDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Usage(format!("config field `{path}`: {}", e.inner()))
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(CliError::Usage(format!(
                "config field `format_version`: unsupported version {} (expected {FORMAT_VERSION})",
                doc.format_version
            )));
        }
        Ok(doc)
    }

    pub fn apply(&mut self, o: &ConfigOverrides) {
        if let Some(s) = o.base_seed {
            self.base_seed = Some(s);
        }
        if let Some(g) = &o.generator {
            self.generator = Some(g.clone());
        }
        if let Some(g) = o.graphs_per_cell {
            self.graphs_per_cell = g;
        }
        if let Some(p) = o.pairs_per_graph {
            self.pairs_per_graph = p;
        }
    }

    /// Converts to a validated core config. `base_seed` must be resolved
    /// by now.
    pub fn to_config(&self) -> CliResult<ExperimentConfig> {
        let mu_rule = match &self.mu {
            MuSpec::Explicit(m) => MuRule::Explicit(*m),
            MuSpec::Named(s) if s == "log2" => MuRule::Log2OfN,
            MuSpec::Named(s) => {
                return Err(CliError::Usage(format!(
                    "config field `mu`: expected \"log2\" or an integer, got `{s}`"
                )))
            }
        };
        let algorithms = self
            .algorithms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.parse::<AlgorithmKind>()
                    .map_err(|e| CliError::Usage(format!("config field `algorithms[{i}]`: {e}")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let generator = match &self.generator {
            Some(g) => g
                .parse::<GeneratorKind>()
                .map_err(|e| CliError::Usage(format!("config field `generator`: {e}")))?,
            None => GeneratorKind::default(),
        };
        let base_seed = self
            .base_seed
            .ok_or_else(|| CliError::Usage("config field `base_seed`: missing".to_string()))?;
        let config = ExperimentConfig {
            n_values: self.n_values.clone(),
            c_values: self.c_values.clone(),
            alpha_values: self.alpha_values.clone(),
            mu_rule,
            algorithms,
            graphs_per_cell: self.graphs_per_cell,
            pairs_per_graph: self.pairs_per_graph,
            base_seed,
            generator,
        };
        config
            .validate()
            .map_err(|e| CliError::Usage(format!("config: {e}")))?;
        Ok(config)
    }

    pub fn from_config(config: &ExperimentConfig) -> Self {
        ConfigDocument {
            format_version: FORMAT_VERSION,
            n_values: config.n_values.clone(),
            c_values: config.c_values.clone(),
            alpha_values: config.alpha_values.clone(),
            mu: match config.mu_rule {
                MuRule::Explicit(m) => MuSpec::Explicit(m),
                MuRule::Log2OfN => MuSpec::default(),
            },
            algorithms: config
                .algorithms
                .iter()
                .map(|a| a.as_str().to_string())
                .collect(),
            graphs_per_cell: config.graphs_per_cell,
            pairs_per_graph: config.pairs_per_graph,
            base_seed: Some(config.base_seed),
            generator: Some(config.generator.as_str().to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{"format_version":1,"n_values":[64],"c_values":[1],"alpha_values":[2.5],
        "algorithms":["nbo","non"],"graphs_per_cell":2,"pairs_per_graph":3,"base_seed":9}"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = ConfigDocument::parse(GOOD).unwrap();
        let config = doc.to_config().unwrap();
        assert_eq!(config.mu_rule, MuRule::Log2OfN);
        assert_eq!(config.generator, GeneratorKind::Poisson);
        let back = ConfigDocument::from_config(&config).to_config().unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = GOOD.replace("\"graphs_per_cell\":2", "\"graphs_per_cell\":\"two\"");
        let err = ConfigDocument::parse(&bad).unwrap_err().to_string();
        assert!(err.contains("graphs_per_cell"), "{err}");
        let bad = GOOD.replace("\"non\"", "\"fast\"");
        let err = ConfigDocument::parse(&bad)
            .unwrap()
            .to_config()
            .unwrap_err()
            .to_string();
        assert!(err.contains("algorithms[1]"), "{err}");
        let bad = GOOD.replace("[\"nbo\",\"non\"]", "[]");
        let err = ConfigDocument::parse(&bad)
            .unwrap()
            .to_config()
            .unwrap_err()
            .to_string();
        assert!(err.contains("algorithm"), "{err}");
    }

    #[test]
    fn overrides_win() {
        let mut doc = ConfigDocument::parse(GOOD).unwrap();
        doc.apply(&ConfigOverrides {
            base_seed: Some(1),
            generator: Some("exact".into()),
            ..Default::default()
        });
        let config = doc.to_config().unwrap();
        assert_eq!(
            (config.base_seed, config.generator),
            (1, GeneratorKind::Exact)
        );
    }
}
