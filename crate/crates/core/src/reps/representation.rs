use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::validate::validate_rep;
use crate::algebra::{GeneratorId, Realization};
use crate::error::{Error, Result};
use crate::numerics::{ExactMatrix, ExactScalar, HalfInt};
use crate::spinor::SpinorLabel;

/// One entry of a representation's amendment manifest: a displayed value
/// that had to be changed for the brackets to close.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amendment {
    pub target: String,
    pub original: String,
    pub amended: String,
    pub reason: String,
}

/// A finite-dimensional matrix realization of the extended Lorentz subalgebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub lambda: Option<HalfInt>,
    pub source: String,
    pub basis: Vec<SpinorLabel>,
    pub mats: Realization,
    /// Diagonal of the metric `g`.
    pub metric: Vec<ExactScalar>,
    pub manifest: Vec<Amendment>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.mats.dim()
    }

    pub fn mat(&self, g: GeneratorId) -> ExactMatrix {
        self.mats.mat(g)
    }

    pub fn metric_matrix(&self) -> ExactMatrix {
        ExactMatrix::diagonal(&self.metric)
    }

    pub fn to_file(&self) -> RepresentationFile {
        RepresentationFile {
            dim: self.dim(),
            lambda: self.lambda,
            source: self.source.clone(),
            basis: self.basis.clone(),
            generators: self.mats.generators().map(|(g, m)| (g.name().to_string(), m.clone())).collect(),
            metric: self.metric.clone(),
            manifest: self.manifest.clone(),
            validation: serde_json::to_value(validate_rep(self)).ok(),
        }
    }

    pub fn from_file(f: RepresentationFile) -> Result<Self> {
        let mut mats = BTreeMap::new();
        for (name, m) in f.generators {
            let g: GeneratorId = name.parse()?;
            if !g.is_lorentz() {
                return Err(Error::Parse(format!("generator {g} is not part of the Lorentz sector")));
            }
            mats.insert(g, m);
        }
        let mats = Realization::new(f.dim, mats)?;
        if f.metric.len() != f.dim {
            return Err(Error::DimensionMismatch(format!("metric has {} entries for dim {}", f.metric.len(), f.dim)));
        }
        if !f.basis.is_empty() && f.basis.len() != f.dim {
            return Err(Error::DimensionMismatch(format!("basis has {} labels for dim {}", f.basis.len(), f.dim)));
        }
        for l in &f.basis {
            l.validate()?;
        }
        Ok(Self { lambda: f.lambda, source: f.source, basis: f.basis, mats, metric: f.metric, manifest: f.manifest })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&sorted(&self.to_file())?)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Re-serializes through `serde_json::Value`, whose maps keep keys sorted.
fn sorted<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(v)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub dim: usize,
    #[serde(default)]
    pub lambda: Option<HalfInt>,
    #[serde(default)]
    pub source: String,
    #[serde(default)]
    pub basis: Vec<SpinorLabel>,
    pub generators: BTreeMap<String, ExactMatrix>,
    pub metric: Vec<ExactScalar>,
    #[serde(default)]
    pub manifest: Vec<Amendment>,
    /// Written for the reader's benefit; ignored and recomputed on load.
    #[serde(default)]
    pub validation: Option<serde_json::Value>,
}
