//! `[action]` section of a job file.
//!
//! ```toml
//! [action]
//! helper = "power_map"      # identity | power_map | product_power_map
//! k = 2                     # | abelian_matrix | coordinate_permutation
//!                           # | divisor_action
//! # ks = [2, 3]             product_power_map
//! # matrix = [[1, 1], [1, 0]]   abelian_matrix
//! # perm = [1, 0]           coordinate_permutation
//! # divisor_action = [["2", "0"], ["0", "3"]]
//! # pullback = [[["1"]], [["2"]]]   explicit matrices per codimension
//! # degree = 2
//! # iterate = 3             replace f by f^3
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;

use super::helpers::{
    abelian_matrix, coordinate_permutation, from_divisor_action, power_map, product_power_map,
};
use super::{ActionError, EndoAction};
use crate::exact_linalg::rational::{literals, RationalLiteral};
use crate::exact_linalg::RationalMatrix;
use crate::variety_models::VarietyModel;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionConfig {
    pub helper: Option<String>,
    pub k: Option<u64>,
    pub ks: Option<Vec<u64>>,
    pub matrix: Option<[[i64; 2]; 2]>,
    pub perm: Option<Vec<usize>>,
    pub divisor_action: Option<Vec<Vec<RationalLiteral>>>,
    pub pullback: Option<Vec<Vec<Vec<RationalLiteral>>>>,
    pub degree: Option<i64>,
    pub iterate: Option<u32>,
}

fn matrix(rows: &[Vec<RationalLiteral>]) -> Result<RationalMatrix, ActionError> {
    Ok(RationalMatrix::from_rows(rows.iter().map(|r| literals(r)).collect())?)
}

fn missing(helper: &str, field: &str) -> ActionError {
    ActionError::Config(format!("helper {helper:?} needs `{field}`"))
}

impl ActionConfig {
    pub fn build(&self, model: Arc<VarietyModel>) -> Result<EndoAction, ActionError> {
        let action = match (&self.helper, &self.pullback) {
            (Some(_), Some(_)) => {
                return Err(ActionError::Config("give either `helper` or `pullback`, not both".into()))
            }
            (None, Some(pullback)) => {
                let degree = self.degree.ok_or_else(|| missing("pullback", "degree"))?;
                let mats = pullback.iter().map(|m| matrix(m)).collect::<Result<_, _>>()?;
                EndoAction::validated(model, mats, BigInt::from(degree))?
            }
            (None, None) => EndoAction::identity(model),
            (Some(helper), None) => match helper.as_str() {
                "identity" => EndoAction::identity(model),
                "power_map" => power_map(model, self.k.ok_or_else(|| missing(helper, "k"))?)?,
                "product_power_map" => {
                    product_power_map(model, self.ks.as_deref().ok_or_else(|| missing(helper, "ks"))?)?
                }
                "abelian_matrix" => abelian_matrix(model, self.matrix.ok_or_else(|| missing(helper, "matrix"))?)?,
                "coordinate_permutation" => {
                    coordinate_permutation(model, self.perm.as_deref().ok_or_else(|| missing(helper, "perm"))?)?
                }
                "divisor_action" => {
                    let rows = self.divisor_action.as_deref().ok_or_else(|| missing(helper, "divisor_action"))?;
                    from_divisor_action(model, &matrix(rows)?)?
                }
                other => return Err(ActionError::Config(format!("unknown helper {other:?}"))),
            },
        };
        if let (Some(degree), Some(_)) = (self.degree, &self.helper) {
            if BigInt::from(degree) != *action.degree() {
                return Err(ActionError::Config(format!(
                    "declared degree {degree} disagrees with the helper's degree {}",
                    action.degree()
                )));
            }
        }
        match self.iterate {
            Some(0) => Err(ActionError::Config("iterate must be >= 1".into())),
            Some(n) => action.iterate(n),
            None => Ok(action),
        }
    }
}
