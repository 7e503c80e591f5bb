//! TOML model descriptions.
//!
//! ```toml
//! [model]
//! builtin = "Pd:2"
//! ```
//!
//! or a custom presentation:
//!
//! ```toml
//! [model]
//! name = "quadric"
//! dim = 2
//! ranks = [1, 2, 1]
//! integrate = ["1"]
//! c1l = ["1", "1"]
//! canonical = ["-2", "-2"]
//! todd = [["1"], ["1", "1"], ["1"]]
//! anticanonical_ample = true
//!
//! [[model.cup]]
//! left = 1
//! right = 1
//! table = [[["0"], ["1"]], [["1"], ["0"]]]
//! ```
//!
//! Rationals are exact: integers or `"p/q"` strings. `table[i][j]` lists the
//! product of basis `i` in codim `left` with basis `j` in codim `right` in the
//! codim `left + right` basis. Every pair `1 <= left <= right`,
//! `left + right <= dim` must be present; the mirrored order is implied.

use serde::Deserialize;

use super::builtin::builtin;
use super::model::{AmpleCone, CupTable, ModelKind, ModelParts, VarietyModel};
use super::ModelError;
use crate::exact_linalg::rational::{literals, RationalLiteral};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupEntry {
    pub left: usize,
    pub right: usize,
    pub table: Vec<Vec<Vec<RationalLiteral>>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub builtin: Option<String>,
    pub name: Option<String>,
    pub dim: Option<usize>,
    pub ranks: Option<Vec<usize>>,
    #[serde(default)]
    pub cup: Vec<CupEntry>,
    pub integrate: Option<Vec<RationalLiteral>>,
    pub c1l: Option<Vec<RationalLiteral>>,
    pub canonical: Option<Vec<RationalLiteral>>,
    pub todd: Option<Vec<Vec<RationalLiteral>>>,
    #[serde(default)]
    pub canonical_ample: bool,
    #[serde(default)]
    pub anticanonical_ample: bool,
}

impl ModelConfig {
    pub fn build(&self) -> Result<VarietyModel, ModelError> {
        if let Some(name) = &self.builtin {
            if self.dim.is_some() || self.ranks.is_some() || !self.cup.is_empty() {
                return Err(ModelError::Config(
                    "a built-in model cannot also carry custom tensors".into(),
                ));
            }
            return builtin(name);
        }
        let missing = |field: &str| ModelError::Config(format!("custom model is missing `{field}`"));
        let dim = self.dim.ok_or_else(|| missing("dim"))?;
        let ranks = self.ranks.clone().ok_or_else(|| missing("ranks"))?;
        let mut cup: Vec<Vec<Option<CupTable>>> = vec![vec![None; dim + 1]; dim + 1];
        for entry in &self.cup {
            let (l, r) = (entry.left, entry.right);
            if l == 0 || r == 0 || l + r > dim {
                return Err(ModelError::Config(format!(
                    "cup table ({l},{r}) is outside 1 <= left, right and left + right <= {dim}"
                )));
            }
            if cup[l][r].is_some() {
                return Err(ModelError::Config(format!("duplicate cup table ({l},{r})")));
            }
            let table = entry
                .table
                .iter()
                .map(|row| row.iter().map(|v| literals(v)).collect())
                .collect();
            cup[l][r] = Some(table);
        }
        VarietyModel::from_parts(ModelParts {
            name: self.name.clone().unwrap_or_else(|| "custom".into()),
            kind: ModelKind::Custom,
            dim,
            ranks,
            cup,
            integrate: literals(self.integrate.as_deref().ok_or_else(|| missing("integrate"))?),
            c1l: literals(self.c1l.as_deref().ok_or_else(|| missing("c1l"))?),
            canonical: literals(self.canonical.as_deref().ok_or_else(|| missing("canonical"))?),
            todd: self
                .todd
                .as_ref()
                .ok_or_else(|| missing("todd"))?
                .iter()
                .map(|p| literals(p))
                .collect(),
            canonical_ample: self.canonical_ample,
            anticanonical_ample: self.anticanonical_ample,
            ample_cone: AmpleCone::Surrogate,
        })
    }
}

#[derive(Deserialize)]
struct Wrapped {
    model: ModelConfig,
}

/// Loads a model from a built-in name (`"Pd:3"`, `"P1xP1"`, `"ExE-rank3"`) or
/// from TOML text, either a `[model]` table or a bare model table.
pub fn load_model(text: &str) -> Result<VarietyModel, ModelError> {
    let trimmed = text.trim();
    if !trimmed.contains('=') && !trimmed.contains('\n') {
        return builtin(trimmed);
    }
    let value: toml::Table = toml::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))?;
    let config: ModelConfig = if value.contains_key("model") {
        let wrapped: Wrapped = toml::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))?;
        wrapped.model
    } else {
        toml::from_str(text).map_err(|e| ModelError::Parse(e.to_string()))?
    };
    config.build()
}
