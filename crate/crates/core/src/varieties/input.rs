//! JSON description of a variety, shared by input files and reports.

use serde::{Deserialize, Serialize};

use crate::algebra::{parse, PolynomialRing};
use crate::error::{Error, Result};
use crate::groebner::Budget;

use super::{CoordinatePresentation, EmbeddedVariety, LatticePolytope};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    #[default]
    SegreVeronese,
    Toric,
    Presented,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilation: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    /// One row per grading component, one column per variable. Defaults to
    /// the standard grading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle_degree: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_order: Option<Vec<String>>,
}

fn required<T: Clone>(field: &Option<T>, name: &str) -> Result<T> {
    field
        .clone()
        .ok_or_else(|| Error::InvalidInput(format!("missing field `{name}`")))
}

impl VarietySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("variety file: {e}")))
    }

    pub fn build(&self) -> Result<EmbeddedVariety> {
        self.build_with_budget(&Budget::default())
    }

    /// Builds the variety; `budget` bounds the Groebner basis of the
    /// relations of a presented ring.
    pub fn build_with_budget(&self, budget: &Budget) -> Result<EmbeddedVariety> {
        let v = match self.kind {
            KindTag::SegreVeronese => {
                EmbeddedVariety::segre_veronese(&required(&self.dims, "dims")?, &required(&self.multidegree, "multidegree")?)?
            }
            KindTag::Toric => {
                let polytope = LatticePolytope::new(required(&self.points, "points")?)?;
                EmbeddedVariety::toric_variety(&polytope, required(&self.dilation, "dilation")?)?
            }
            KindTag::Presented => {
                let names = required(&self.variables, "variables")?;
                let grading = self.grading.clone().unwrap_or_else(|| vec![vec![1; names.len()]]);
                let cox = PolynomialRing::new(names, grading)?;
                let relations = self
                    .relations
                    .iter()
                    .flatten()
                    .map(|r| parse(&cox, r))
                    .collect::<Result<Vec<_>>>()?;
                let presentation = CoordinatePresentation::new(&cox, relations, budget)?;
                EmbeddedVariety::presented_variety(presentation, &required(&self.bundle_degree, "bundle_degree")?)?
            }
        };
        let mut v = match &self.section_order {
            Some(order) => {
                let cox = v.cox_ring().clone();
                let sections = order.iter().map(|s| parse(&cox, s)).collect::<Result<Vec<_>>>()?;
                v.with_section_order(sections)?
            }
            None => v,
        };
        v.spec.name = self.name.clone();
        Ok(v)
    }
}
