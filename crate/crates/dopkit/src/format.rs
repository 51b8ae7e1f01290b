//! JSON file formats.
//!
//! Polynomials are lists of `[i, j, "num/den"]` triples (a polynomial text
//! string is accepted on input as well); rationals are `"num/den"` strings;
//! series are lists of `[exponent, "num/den"]`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use dopkit_core::algdop::{BoundarySpec, CofactorCertificate, Cometric};
use dopkit_core::catalog::{BBox, Bundle, DomainSpec, Sign};
use dopkit_core::density::DensitySpec;
use dopkit_core::rational::{format_rational, parse_rational};
use dopkit_core::{RatPoly2, Rational, Weights};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    Invalid(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "invalid JSON input: {e}"),
            FormatError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

/// Exact rational serialized as `"num/den"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        rat_from_value(&Value::deserialize(d)?)
            .map(Rat)
            .map_err(D::Error::custom)
    }
}

fn rat_from_value(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| Rational::from_integer(n.into()))
            .ok_or_else(|| format!("rational {n} must be an integer or a \"num/den\" string")),
        Value::String(s) => parse_rational(s).ok_or_else(|| format!("invalid rational {s:?}")),
        other => Err(format!("expected a rational, got {other}")),
    }
}

/// Polynomial serialized as a list of `[i, j, "num/den"]` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub RatPoly2);

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(u32, u32, String)> = self.0.terms().map(|((i, j), c)| (i, j, format_rational(c))).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        poly_from_value(&Value::deserialize(d)?)
            .map(Poly)
            .map_err(D::Error::custom)
    }
}

fn poly_from_value(v: &Value) -> Result<RatPoly2, String> {
    match v {
        Value::String(s) => s.parse::<RatPoly2>().map_err(|e| e.to_string()),
        Value::Array(terms) => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::with_capacity(terms.len());
            for (k, t) in terms.iter().enumerate() {
                let bad = || format!("term {k}: expected [i, j, \"num/den\"], got {t}");
                let Some([i, j, c]) = t.as_array().map(Vec::as_slice) else {
                    return Err(bad());
                };
                let exp = |e: &Value| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(bad);
                let (i, j) = (exp(i)?, exp(j)?);
                if !seen.insert((i, j)) {
                    return Err(format!("term {k}: repeated monomial x^{i} y^{j}"));
                }
                out.push((i, j, rat_from_value(c).map_err(|e| format!("term {k}: {e}"))?));
            }
            Ok(RatPoly2::from_terms(out))
        }
        other => Err(format!("expected a polynomial (term list or text), got {other}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl MetricFile {
    pub fn from_metric(g: &Cometric) -> Self {
        MetricFile {
            a: Poly(g.a().clone()),
            b: Poly(g.b().clone()),
            c: Poly(g.c().clone()),
        }
    }

    pub fn to_metric(&self) -> Cometric {
        Cometric::new(self.a.0.clone(), self.b.0.clone(), self.c.0.clone())
    }
}

/// Either `{"factors": [...]}` or a single polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum BoundaryFile {
    Factors { factors: Vec<Poly> },
    Single(Poly),
}

impl<'de> Deserialize<'de> for BoundaryFile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let Value::Object(map) = &v else {
            return poly_from_value(&v)
                .map(|p| BoundaryFile::Single(Poly(p)))
                .map_err(D::Error::custom);
        };
        if let Some(k) = map.keys().find(|k| *k != "factors") {
            return Err(D::Error::custom(format!(
                "unknown field `{k}` in boundary, expected `factors`"
            )));
        }
        let Some(Value::Array(fs)) = map.get("factors") else {
            return Err(D::Error::custom("boundary object needs a `factors` list"));
        };
        fs.iter()
            .enumerate()
            .map(|(k, f)| poly_from_value(f).map(Poly).map_err(|e| format!("factor {k}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(|factors| BoundaryFile::Factors { factors })
            .map_err(D::Error::custom)
    }
}

impl BoundaryFile {
    pub fn from_spec(b: &BoundarySpec) -> Self {
        BoundaryFile::Factors {
            factors: b.factors().iter().cloned().map(Poly).collect(),
        }
    }

    pub fn factors(&self) -> Vec<RatPoly2> {
        match self {
            BoundaryFile::Factors { factors } => factors.iter().map(|p| p.0.clone()).collect(),
            BoundaryFile::Single(p) => vec![p.0.clone()],
        }
    }

    pub fn to_spec(&self) -> Result<BoundarySpec, FormatError> {
        BoundarySpec::new(self.factors()).map_err(|e| FormatError::Invalid(format!("boundary: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub s1: Poly,
    pub s2: Poly,
}

impl CertificateFile {
    pub fn from_certificate(c: &CofactorCertificate) -> Self {
        CertificateFile {
            s1: Poly(c.s1.clone()),
            s2: Poly(c.s2.clone()),
        }
    }
}

/// Truncated germ `(ξ(t), η(t))`; `trunc_order` defaults to 64 and
/// `exact: true` declares both series to be exact Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermFile {
    pub xi: Vec<(i64, Rat)>,
    pub eta: Vec<(i64, Rat)>,
    #[serde(default = "default_trunc")]
    pub trunc_order: i64,
    #[serde(default)]
    pub exact: bool,
}

fn default_trunc() -> i64 {
    64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityFactor {
    pub poly: Poly,
    /// The actual power (a family written `Γ^{p−1}` stores `p − 1`).
    pub exponent: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityFile {
    pub factors: Vec<DensityFactor>,
    #[serde(rename = "Q")]
    pub q: Poly,
}

impl DensityFile {
    pub fn from_spec(d: &DensitySpec) -> Self {
        DensityFile {
            factors: d
                .factors
                .iter()
                .map(|(p, e)| DensityFactor {
                    poly: Poly(p.clone()),
                    exponent: Rat(e.clone()),
                })
                .collect(),
            q: Poly(d.q.clone()),
        }
    }

    pub fn to_spec(&self) -> DensitySpec {
        DensitySpec::new(
            self.factors
                .iter()
                .map(|f| (f.poly.0.clone(), f.exponent.0.clone()))
                .collect(),
            self.q.0.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignCondition {
    pub poly: Poly,
    /// `"+"` or `"-"`.
    pub sign: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub signs: Vec<SignCondition>,
    /// `[x0, x1, y0, y1]` for bounded domains.
    #[serde(rename = "box")]
    pub bbox: Option<[Rat; 4]>,
    #[serde(default)]
    pub breakpoints: Vec<Rat>,
}

impl DomainFile {
    pub fn from_spec(d: &DomainSpec) -> Self {
        DomainFile {
            signs: d
                .signs
                .iter()
                .map(|(p, s)| SignCondition {
                    poly: Poly(p.clone()),
                    sign: match s {
                        Sign::Positive => "+".into(),
                        Sign::Negative => "-".into(),
                    },
                })
                .collect(),
            bbox: d.bbox.as_ref().map(|b| {
                [
                    Rat(b.x0.clone()),
                    Rat(b.x1.clone()),
                    Rat(b.y0.clone()),
                    Rat(b.y1.clone()),
                ]
            }),
            breakpoints: d.breakpoints.iter().cloned().map(Rat).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<DomainSpec, FormatError> {
        let signs = self
            .signs
            .iter()
            .map(|s| {
                let sign = match s.sign.as_str() {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    other => {
                        return Err(FormatError::Invalid(format!(
                            "sign must be \"+\" or \"-\", got {other:?}"
                        )))
                    }
                };
                Ok((s.poly.0.clone(), sign))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bbox = self
            .bbox
            .as_ref()
            .map(|[a, b, c, d]| BBox::new(a.0.clone(), b.0.clone(), c.0.clone(), d.0.clone()));
        Ok(DomainSpec::new(
            signs,
            bbox,
            self.breakpoints.iter().map(|r| r.0.clone()).collect(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularPointFile {
    pub x: Rat,
    pub y: Rat,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetFactorizationFile {
    pub constant: Rat,
    pub factors: Vec<(Poly, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintFile {
    pub text: String,
    pub holds: bool,
}

/// A catalog instance with everything needed to re-verify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub id: String,
    pub summary: String,
    pub params: BTreeMap<String, Rat>,
    pub weights: [u32; 2],
    pub metric: MetricFile,
    pub boundary: BoundaryFile,
    pub certificate: CertificateFile,
    pub domain: Option<DomainFile>,
    pub density: Option<DensityFile>,
    #[serde(default)]
    pub integrability: Option<Vec<ConstraintFile>>,
    #[serde(default)]
    pub det_factorization: Option<DetFactorizationFile>,
    #[serde(default)]
    pub singular_points: Option<Vec<SingularPointFile>>,
    #[serde(default)]
    pub reducible: bool,
}

impl BundleFile {
    pub fn from_bundle(b: &Bundle) -> Self {
        BundleFile {
            id: b.id.clone(),
            summary: b.summary.clone(),
            params: b.params.iter().map(|(k, v)| (k.clone(), Rat(v.clone()))).collect(),
            weights: [b.weights.w1(), b.weights.w2()],
            metric: MetricFile::from_metric(&b.metric),
            boundary: BoundaryFile::from_spec(&b.boundary),
            certificate: CertificateFile::from_certificate(&b.certificate),
            domain: b.domain.as_ref().map(DomainFile::from_spec),
            density: b.density.as_ref().map(DensityFile::from_spec),
            integrability: b.integrability.as_ref().map(|r| {
                r.constraints
                    .iter()
                    .map(|c| ConstraintFile {
                        text: c.text.clone(),
                        holds: c.holds,
                    })
                    .collect()
            }),
            det_factorization: b.det_factorization.as_ref().map(|d| DetFactorizationFile {
                constant: Rat(d.constant.clone()),
                factors: d.factors.iter().map(|(p, e)| (Poly(p.clone()), *e)).collect(),
            }),
            singular_points: b.singular_points.as_ref().map(|pts| {
                pts.iter()
                    .map(|p| SingularPointFile {
                        x: Rat(p.x.clone()),
                        y: Rat(p.y.clone()),
                        label: p.label.into(),
                    })
                    .collect()
            }),
            reducible: b.reducible,
        }
    }

    pub fn weights(&self) -> Result<Weights, FormatError> {
        Weights::new(self.weights[0], self.weights[1]).map_err(|e| FormatError::Invalid(format!("weights: {e}")))
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, FormatError> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dopkit_core::catalog::{instantiate, params};
    use dopkit_core::rational::{frac, int};

    #[test]
    fn polynomial_json_form() {
        let p: RatPoly2 = "y^2 - 1/3*x^3 + 2".parse().unwrap();
        let json = serde_json::to_string(&Poly(p.clone())).unwrap();
        let back: Poly = serde_json::from_str(&json).unwrap();
        assert_eq!(back.0, p);
        let text: Poly = serde_json::from_str("\"y^2 - 1/3*x^3 + 2\"").unwrap();
        assert_eq!(text.0, p);
        let ints: Poly = serde_json::from_str("[[0, 2, 1], [3, 0, \"-1/3\"], [0, 0, \"2\"]]").unwrap();
        assert_eq!(ints.0, p);
        assert_eq!(json, r#"[[0,0,"2"],[0,2,"1"],[3,0,"-1/3"]]"#);
    }

    #[test]
    fn bad_polynomials_are_rejected() {
        assert!(from_json::<Poly>("[[0, 0, \"1/0\"]]").is_err());
        assert!(from_json::<Poly>("[[1, 0, \"1\"], [1, 0, \"2\"]]").is_err());
        let err = from_json::<Poly>("\"x^2 + * y\"").unwrap_err().to_string();
        assert!(err.contains("position"), "{err}");
    }

    #[test]
    fn bundle_round_trip() {
        let b = instantiate("B4", &params(&[("m", int(1)), ("n", int(2)), ("c02", frac(-1, 2))])).unwrap();
        let file = BundleFile::from_bundle(&b);
        let text = to_json(&file);
        let back: BundleFile = from_json(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(to_json(&back), text);
        assert_eq!(back.metric.to_metric(), b.metric);
        assert_eq!(back.domain.unwrap().to_spec().unwrap(), b.domain.unwrap());
        assert_eq!(back.density.unwrap().to_spec(), b.density.unwrap());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(from_json::<MetricFile>("{\"a\": \"1\", \"b\": \"0\", \"c\": \"1\", \"d\": \"0\"}").is_err());
    }
}
