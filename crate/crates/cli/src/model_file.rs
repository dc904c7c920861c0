//! JSON model files.
//!
//! ```json
//! {"schema": 1, "L": 4,
//!  "modules": [{"from": 1, "to": 2, "status": "param"}],
//!  "noise": {"p": 1, "columns": [[{"row": 1, "status": "param"}]]},
//!  "excited": [1], "strictly_proper": true}
//! ```
//!
//! Noise columns are listed one column at a time. `noise`, `excited`,
//! `strictly_proper` and `feedthrough_edges` are optional.

use std::collections::BTreeSet;

use netexcite::{Edge, EntryStatus, ModelError, ModelSet, VertexId};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Param,
    Known,
}

impl From<Status> for EntryStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Param => EntryStatus::Parameterized,
            Status::Known => EntryStatus::Known,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Module {
    pub from: u32,
    pub to: u32,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseEntry {
    pub row: u32,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Noise {
    pub p: usize,
    pub columns: Vec<Vec<NoiseEntry>>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(rename = "L")]
    pub size: usize,
    pub modules: Vec<Module>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<Noise>,
    #[serde(default)]
    pub excited: Vec<u32>,
    #[serde(default = "default_true")]
    pub strictly_proper: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feedthrough_edges: Option<Vec<[u32; 2]>>,
}

#[derive(Debug)]
pub enum LoadError {
    /// Not JSON, wrong types, unknown keys or an unsupported schema.
    Parse(String),
    /// Well-formed but not a consistent model.
    Invalid(Vec<String>),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Parse(msg) => write!(f, "parse error: {msg}"),
            LoadError::Invalid(problems) => write!(f, "invalid model: {}", problems.join("; ")),
        }
    }
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
        if file.schema != SCHEMA_VERSION {
            return Err(LoadError::Parse(format!(
                "unsupported schema version {}",
                file.schema
            )));
        }
        Ok(file)
    }

    /// Converts to a model set. Range and duplicate problems are collected
    /// and reported together; structural rules are left to validation.
    pub fn to_model_set(&self) -> Result<ModelSet, LoadError> {
        let l = self.size;
        let in_range = |v: u32| (1..=l as u32).contains(&v);
        let mut problems = Vec::new();

        let p = self.noise.as_ref().map_or(0, |n| n.p);
        if let Some(noise) = &self.noise {
            if noise.columns.len() != noise.p {
                problems.push(format!(
                    "noise.p is {} but {} columns are listed",
                    noise.p,
                    noise.columns.len()
                ));
            }
        }
        let mut m = ModelSet::new(l, p);

        let mut seen = BTreeSet::new();
        for module in &self.modules {
            let e = Edge::new(module.from, module.to);
            if !in_range(module.from) || !in_range(module.to) {
                problems.push(format!("module {e} has an endpoint outside 1..={l}"));
            } else if !seen.insert(e) {
                problems.push(format!("module {e} is listed twice"));
            } else {
                m.set_module(e, module.status.into())
                    .map_err(model_problem)?;
            }
        }

        if let Some(noise) = &self.noise {
            for (c, column) in noise.columns.iter().enumerate().take(p) {
                let mut rows = BTreeSet::new();
                for entry in column {
                    if !in_range(entry.row) {
                        problems.push(format!(
                            "noise column {} has row {} outside 1..={l}",
                            c + 1,
                            entry.row
                        ));
                    } else if !rows.insert(entry.row) {
                        problems.push(format!(
                            "noise column {} lists row {} twice",
                            c + 1,
                            entry.row
                        ));
                    } else {
                        m.set_noise(VertexId(entry.row), c, entry.status.into())
                            .map_err(model_problem)?;
                    }
                }
            }
        }

        m.set_excited(self.excited.iter().map(|&v| VertexId(v)).collect());
        m.set_strictly_proper(self.strictly_proper);
        m.set_feedthrough(
            self.feedthrough_edges
                .as_ref()
                .map(|es| es.iter().map(|&[a, b]| Edge::new(a, b)).collect()),
        );

        if problems.is_empty() {
            Ok(m)
        } else {
            Err(LoadError::Invalid(problems))
        }
    }

    pub fn from_model_set(m: &ModelSet) -> Self {
        let status = |s: EntryStatus| match s {
            EntryStatus::Known => Status::Known,
            _ => Status::Param,
        };
        let modules = m
            .modules()
            .into_iter()
            .map(|(e, s)| Module {
                from: e.tail.get(),
                to: e.head.get(),
                status: status(s),
            })
            .collect();
        let noise = (m.noise_columns() > 0).then(|| Noise {
            p: m.noise_columns(),
            columns: (0..m.noise_columns())
                .map(|c| {
                    m.noise_column(c)
                        .into_iter()
                        .map(|(row, s)| NoiseEntry {
                            row: row.get(),
                            status: status(s),
                        })
                        .collect()
                })
                .collect(),
        });
        ModelFile {
            schema: SCHEMA_VERSION,
            size: m.size(),
            modules,
            noise,
            excited: m.excited().iter().map(|v| v.get()).collect(),
            strictly_proper: m.strictly_proper(),
            feedthrough_edges: m
                .feedthrough()
                .map(|es| es.iter().map(|e| [e.tail.get(), e.head.get()]).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files always serialize")
    }
}

fn model_problem(e: ModelError) -> LoadError {
    LoadError::Invalid(vec![e.to_string()])
}
