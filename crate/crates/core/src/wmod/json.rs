use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GradedWeightModule, ModuleShape, Slice};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::pbw::Generator;
use crate::scalars::{parse_scalar, Weight};

/// Serialized form of a module. Action slices are lists of
/// `[row, column, "scalar"]` triples, `null` where not materialized.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(rename = "topWeight")]
    pub top_weight: String,
    #[serde(rename = "centralCharge")]
    pub central_charge: String,
    pub depth: usize,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub finite: bool,
    pub actions: BTreeMap<String, Vec<Option<Vec<(usize, usize, String)>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
}

impl GradedWeightModule {
    pub fn to_json(&self) -> ModuleJson {
        let actions = Generator::ALL
            .iter()
            .map(|&g| {
                let slices = self.actions()[g.index()]
                    .iter()
                    .map(|s| {
                        s.as_ref().map(|cols| {
                            cols.iter()
                                .enumerate()
                                .flat_map(|(c, col)| {
                                    col.iter().map(move |(r, x)| (r, c, x.to_string()))
                                })
                                .collect()
                        })
                    })
                    .collect();
                (g.name().to_string(), slices)
            })
            .collect();
        ModuleJson {
            top_weight: self.top_weight().value().to_string(),
            central_charge: self.central_charge().to_string(),
            depth: self.depth(),
            dims: self.dims().to_vec(),
            finite: self.is_finite(),
            actions,
            labels: self.labels().cloned(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let v = serde_json::to_value(self.to_json()).expect("module serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn from_json(j: &ModuleJson) -> Result<GradedWeightModule> {
        if j.dims.len() != j.depth + 1 {
            return Err(Error::InvalidModule(format!(
                "dims has {} entries, depth is {}",
                j.dims.len(),
                j.depth
            )));
        }
        let shape = ModuleShape {
            top_weight: Weight::new(parse_scalar(&j.top_weight)?)?,
            central_charge: parse_scalar(&j.central_charge)?,
            dims: j.dims.clone(),
            finite: j.finite,
        };
        let mut actions: Vec<Vec<Slice>> = Vec::new();
        for g in Generator::ALL {
            let slices = j
                .actions
                .get(g.name())
                .ok_or_else(|| Error::InvalidModule(format!("missing action for {g}")))?;
            let mut out = Vec::with_capacity(slices.len());
            for (n, s) in slices.iter().enumerate() {
                let Some(triples) = s else {
                    out.push(None);
                    continue;
                };
                let ncols = *j
                    .dims
                    .get(n)
                    .ok_or_else(|| Error::InvalidModule(format!("{g}: too many slices")))?;
                let mut cols = vec![SparseVec::new(); ncols];
                for (r, c, x) in triples {
                    let col = cols.get_mut(*c).ok_or_else(|| {
                        Error::InvalidModule(format!("{g}: column {c} out of range"))
                    })?;
                    col.add_at(*r, &parse_scalar(x)?);
                }
                out.push(Some(cols));
            }
            actions.push(out);
        }
        let m = GradedWeightModule::from_parts(shape, actions)?;
        Ok(match &j.labels {
            Some(l)
                if l.len() == j.dims.len() && l.iter().zip(&j.dims).all(|(x, &d)| x.len() == d) =>
            {
                m.with_labels(l.clone())
            }
            Some(_) => return Err(Error::InvalidModule("labels do not match dims".into())),
            None => m,
        })
    }

    pub fn from_json_str(text: &str) -> Result<GradedWeightModule> {
        let j: ModuleJson = serde_json::from_str(text)?;
        GradedWeightModule::from_json(&j)
    }
}
