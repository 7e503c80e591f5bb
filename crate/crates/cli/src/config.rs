//! Job files: one model plus the sections a command needs.
//!
//! ```toml
//! [model]
//! builtin = "Pd:2"
//!
//! [action]                  # degrees, entropy; optional automorphism for autoeq
//! helper = "power_map"
//! k = 2
//!
//! [autoeq]                  # autoeq: F = Lf^*(- ⊗ O(twist))[shift]
//! twist = [2]
//! shift = 1
//!
//! [functor]                 # ht, on P^d only
//! kind = "shift"            # shift (m) | twist (c) | pullback (k) | standard (k, c, m)
//! m = 2
//!
//! [params]
//! tol = 1e-6
//! n_max = 48
//! t_grid = [0.0, 0.5]
//! out = "report.json"
//! ```

use std::sync::Arc;

use entrodyn_core::endo_actions::ActionConfig;
use entrodyn_core::entropy_lab::Functor;
use entrodyn_core::exact_linalg::rational::{literals, RationalLiteral};
use entrodyn_core::exact_linalg::BigRational;
use entrodyn_core::variety_models::{builtin, ModelConfig, ModelError, VarietyModel};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Name(String),
    Table(ModelConfig),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TwistSpec {
    Degree(RationalLiteral),
    Coordinates(Vec<RationalLiteral>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoeqConfig {
    #[serde(default = "no_twist")]
    pub twist: TwistSpec,
    #[serde(default)]
    pub shift: i64,
}

fn no_twist() -> TwistSpec {
    TwistSpec::Coordinates(Vec::new())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorConfig {
    pub kind: String,
    pub m: Option<i64>,
    pub c: Option<i64>,
    pub k: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub tol: Option<f64>,
    pub h_tol: Option<f64>,
    pub n_max: Option<u32>,
    pub t_grid: Option<Vec<f64>>,
    pub out: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub model: ModelSpec,
    pub action: Option<ActionConfig>,
    pub autoeq: Option<AutoeqConfig>,
    pub functor: Option<FunctorConfig>,
    #[serde(default)]
    pub params: ParamsConfig,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn build_model(&self) -> Result<Arc<VarietyModel>, ModelError> {
        let model = match &self.model {
            ModelSpec::Name(name) => builtin(name)?,
            ModelSpec::Table(table) => table.build()?,
        };
        Ok(Arc::new(model))
    }
}

impl AutoeqConfig {
    /// `L′` in the codim-1 basis of `model`; a bare degree needs Picard rank 1.
    pub fn twist(&self, model: &VarietyModel) -> Result<Vec<BigRational>, String> {
        let rank = model.ranks()[1];
        match &self.twist {
            TwistSpec::Degree(d) if rank == 1 => Ok(vec![d.0.clone()]),
            TwistSpec::Degree(_) => Err(format!("twist on {} needs {rank} coordinates", model.name())),
            TwistSpec::Coordinates(c) if c.is_empty() => Ok(vec![BigRational::from_integer(0.into()); rank]),
            TwistSpec::Coordinates(c) if c.len() == rank => Ok(literals(c)),
            TwistSpec::Coordinates(c) => Err(format!(
                "twist on {} needs {rank} coordinates, got {}",
                model.name(),
                c.len()
            )),
        }
    }
}

impl FunctorConfig {
    /// `Err` carries the reason the functor is unsupported.
    pub fn functor(&self) -> Result<Functor, String> {
        let need = |v: Option<i64>, name: &str| v.ok_or_else(|| format!("functor kind {:?} needs `{name}`", self.kind));
        match self.kind.as_str() {
            "shift" => Ok(Functor::shift(need(self.m, "m")?)),
            "twist" => Ok(Functor::twist(need(self.c, "c")?)),
            "pullback" => Ok(Functor::pullback(self.k.ok_or("functor kind \"pullback\" needs `k`")?)),
            "standard" => Ok(Functor {
                pullback: self.k.unwrap_or(1),
                twist: self.c.unwrap_or(0),
                shift: self.m.unwrap_or(0),
            }),
            other => Err(format!("unknown functor kind {other:?}")),
        }
    }
}
