//! Parameter grids for catalog-wide certificate checks.

use std::collections::BTreeMap;

use dopkit_core::algdop::check_a1;
use dopkit_core::catalog::{instantiate, Params};
use dopkit_core::rational::parse_rational;
use dopkit_core::Rational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::Rat;

/// The grid shipped with the tool.
pub const DEFAULT_MANIFEST: &str = include_str!("../data/manifest.toml");

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    instance: Vec<RawInstance>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    id: String,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub id: String,
    pub params: Params,
}

pub fn parse_manifest(text: &str) -> Result<Vec<Instance>, String> {
    let raw: RawManifest = toml::from_str(text).map_err(|e| e.to_string())?;
    raw.instance
        .into_iter()
        .map(|r| {
            let mut params = Params::new();
            for (k, v) in r.params {
                let q = match &v {
                    toml::Value::Integer(n) => Rational::from_integer((*n).into()),
                    toml::Value::String(s) => {
                        parse_rational(s).ok_or_else(|| format!("{}: parameter {k}: invalid rational {s:?}", r.id))?
                    }
                    other => return Err(format!("{}: parameter {k}: unsupported value {other}", r.id)),
                };
                params.insert(k, q);
            }
            Ok(Instance { id: r.id, params })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub id: String,
    pub params: BTreeMap<String, Rat>,
    pub weights: Option<[u32; 2]>,
    /// `S1, S2` multiply back to `g ∇Γ`.
    pub certificate: bool,
    /// `deg_w S^i ≤ w_i`.
    pub degree_bounds: bool,
    pub a1: bool,
    pub error: Option<String>,
}

impl InstanceResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.certificate && self.degree_bounds && self.a1
    }
}

pub fn check_instance(inst: &Instance) -> InstanceResult {
    let params = inst.params.iter().map(|(k, v)| (k.clone(), Rat(v.clone()))).collect();
    match instantiate(&inst.id, &inst.params) {
        Ok(b) => InstanceResult {
            id: inst.id.clone(),
            params,
            weights: Some([b.weights.w1(), b.weights.w2()]),
            certificate: b.certificate.verify(&b.metric, b.boundary.product()),
            degree_bounds: b.certificate.within_degree_bounds(b.weights),
            a1: check_a1(&b.metric, b.weights),
            error: None,
        },
        Err(e) => InstanceResult {
            id: inst.id.clone(),
            params,
            weights: None,
            certificate: false,
            degree_bounds: false,
            a1: false,
            error: Some(e.to_string()),
        },
    }
}

/// Checks every instance in parallel; results keep manifest order.
pub fn check_all(instances: &[Instance]) -> Vec<InstanceResult> {
    instances.par_iter().map(check_instance).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let grid = parse_manifest(DEFAULT_MANIFEST).unwrap();
        assert!(grid.len() >= 60);
        for inst in &grid {
            for key in ["m", "n"] {
                if let Some(v) = inst.params.get(key) {
                    assert!(*v <= Rational::from_integer(4.into()), "{} {key}", inst.id);
                }
            }
        }
    }

    #[test]
    fn bad_manifests() {
        assert!(parse_manifest("[[instance]]\nid = \"B3\"\nparams = { beta = \"x\" }\n").is_err());
        assert!(parse_manifest("[[instance]]\nname = \"B3\"\n").is_err());
        let r = check_instance(&parse_manifest("[[instance]]\nid = \"NOPE\"\n").unwrap()[0]);
        assert!(!r.passed() && r.error.is_some());
    }
}
