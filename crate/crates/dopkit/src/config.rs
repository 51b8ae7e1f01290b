//! Run configuration: flags merged over an optional TOML file.

use std::collections::BTreeMap;

use dopkit_core::catalog::Params;
use dopkit_core::rational::parse_rational;
use dopkit_core::{Rational, Weights};
use serde::Deserialize;

use crate::cli::{CatalogAction, Cli, Command};
use crate::{read_input, CliError};

pub const DEFAULT_DEGREE: u64 = 6;
pub const DEFAULT_ORDER: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub symmetry: f64,
    pub gram: f64,
    pub imag: f64,
    pub convergence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            symmetry: 1e-8,
            gram: 1e-8,
            imag: 1e-9,
            convergence: 1e-10,
        }
    }
}

/// Contents of a `--config` file. Every key mirrors a flag.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub weights: Option<String>,
    pub output: Option<String>,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub params: Option<BTreeMap<String, toml::Value>>,
    pub degree: Option<u64>,
    pub order: Option<usize>,
    pub symmetry_tol: Option<f64>,
    pub gram_tol: Option<f64>,
    pub imag_tol: Option<f64>,
    pub convergence_tol: Option<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub weights: Option<Weights>,
    /// Parameter assignments from `--params` (over the config file's).
    pub params: Params,
    pub output: String,
    pub threads: Option<usize>,
    pub seed: u64,
    pub degree: u64,
    pub order: usize,
    pub tol: Tolerances,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let file = match &cli.global.config {
            Some(path) => {
                let text = read_input(path)?;
                ConfigFile::parse(&text).map_err(|e| CliError::format(path, e))?
            }
            None => ConfigFile::default(),
        };
        let g = cli.global;
        let weights = match g.weights.as_deref().or(file.weights.as_deref()) {
            Some(s) => Some(parse_weights(s)?),
            None => None,
        };
        let mut params = Params::new();
        if let Some(table) = &file.params {
            for (k, v) in table {
                let r = match v {
                    toml::Value::Integer(n) => Rational::from_integer((*n).into()),
                    toml::Value::String(s) => parse_rational(s)
                        .ok_or_else(|| CliError::Usage(format!("config parameter {k}: invalid rational {s:?}")))?,
                    other => {
                        return Err(CliError::Usage(format!(
                            "config parameter {k}: expected integer or string, got {other}"
                        )))
                    }
                };
                params.insert(k.clone(), r);
            }
        }
        let flag_params = match &cli.command {
            Command::Density { params, .. }
            | Command::Curvature { params, .. }
            | Command::Catalog {
                action: CatalogAction::Instantiate { params, .. },
            } => params.clone(),
            _ => None,
        };
        if let Some(s) = flag_params {
            params.extend(parse_assignments(&s)?);
        }
        let mut tol = Tolerances::default();
        let (mut degree, mut order) = (file.degree, file.order);
        let pick = |flag: Option<f64>, file: Option<f64>, slot: &mut f64| {
            if let Some(v) = flag.or(file) {
                *slot = v;
            }
        };
        if let Command::Spectral(a) = &cli.command {
            degree = a.degree.or(degree);
            order = a.order.or(order);
            pick(a.symmetry_tol, file.symmetry_tol, &mut tol.symmetry);
            pick(a.gram_tol, file.gram_tol, &mut tol.gram);
            pick(a.imag_tol, file.imag_tol, &mut tol.imag);
            pick(a.convergence_tol, file.convergence_tol, &mut tol.convergence);
        } else {
            pick(None, file.symmetry_tol, &mut tol.symmetry);
            pick(None, file.gram_tol, &mut tol.gram);
            pick(None, file.imag_tol, &mut tol.imag);
            pick(None, file.convergence_tol, &mut tol.convergence);
        }
        let order = order.unwrap_or(DEFAULT_ORDER);
        if order == 0 {
            return Err(CliError::Usage("quadrature order must be positive".into()));
        }
        if g.threads == Some(0) || (g.threads.is_none() && file.threads == Some(0)) {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        Ok(RunConfig {
            command: cli.command,
            weights,
            params,
            output: g.output.or(file.output).unwrap_or_else(|| "-".into()),
            threads: g.threads.or(file.threads),
            seed: g.seed.or(file.seed).unwrap_or(0),
            degree: degree.unwrap_or(DEFAULT_DEGREE),
            order,
            tol,
        })
    }
}

/// `"1,2"` or `"1/2,3/2"`.
pub fn parse_weights(s: &str) -> Result<Weights, CliError> {
    let bad = || CliError::Usage(format!("weights must be two positive rationals W1,W2, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let (a, b) = (parse_rational(a).ok_or_else(bad)?, parse_rational(b).ok_or_else(bad)?);
    Weights::from_rationals(&a, &b).map_err(|_| bad())
}

/// `"m=1,n=2,c02=-1/2"`.
pub fn parse_assignments(s: &str) -> Result<Params, CliError> {
    let mut out = Params::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value, got {part:?}")))?;
        let r = parse_rational(v).ok_or_else(|| CliError::Usage(format!("{k}: invalid rational {v:?}")))?;
        if out.insert(k.trim().to_string(), r).is_some() {
            return Err(CliError::Usage(format!("parameter {k} given twice")));
        }
    }
    Ok(out)
}

/// `"x,y"` as exact rationals.
pub fn parse_point(s: &str) -> Result<(Rational, Rational), CliError> {
    let bad = || CliError::Usage(format!("expected a point X,Y with rational coordinates, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((parse_rational(a).ok_or_else(bad)?, parse_rational(b).ok_or_else(bad)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;
    use dopkit_core::rational::{frac, int};

    fn cfg(args: &[&str]) -> Result<RunConfig, CliError> {
        RunConfig::from_cli(Cli::try_parse_from(args).unwrap())
    }

    #[test]
    fn assignments_and_weights() {
        let p = parse_assignments("m=1, n=2,c02=-1/2").unwrap();
        assert_eq!(p["c02"], frac(-1, 2));
        assert_eq!(p["n"], int(2));
        assert!(parse_assignments("m=1,m=2").is_err());
        assert!(parse_assignments("m").is_err());
        let w = parse_weights("1/2,1").unwrap();
        assert_eq!((w.w1(), w.w2()), (1, 2));
        assert!(parse_weights("0,1").is_err());
        assert!(parse_weights("1").is_err());
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "order = 32\ndegree = 4\nseed = 5\nsymmetry_tol = 1e-6\n").unwrap();
        let p = path.to_str().unwrap();
        let c = cfg(&[
            "dopkit", "--config", p, "spectral", "--bundle", "b.json", "--order", "64",
        ])
        .unwrap();
        assert_eq!((c.order, c.degree, c.seed), (64, 4, 5));
        assert_eq!(c.tol.symmetry, 1e-6);
        assert_eq!(c.tol.gram, 1e-8);
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "ordr = 32\n").unwrap();
        let err = cfg(&["dopkit", "--config", path.to_str().unwrap(), "catalog", "list"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("ordr"), "{err}");
    }
}
