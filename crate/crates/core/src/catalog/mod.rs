//! The classified solution families: parameter schemas, validation and
//! construction of complete bundles `(w, g, Γ, Ω, ρ)` with side data.

mod domain;
mod realize;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::algdop::{check_a1, check_a2_a3, AlgError, BoundarySpec, CofactorCertificate, Cometric};
use crate::curvature::CurvatureError;
use crate::density::{integrability_constraints, DensitySpec, IntegrabilityReport};
use crate::poly::{RatPoly2, Weights};
use crate::rational::{frac, int, Rational};

pub use domain::{BBox, DomainSpec, Sign};
pub use realize::{catalog_curvature, realization_map, sphere_points, CurvatureReport, Realization};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    UnknownEntry(String),
    UnknownParameter {
        entry: String,
        name: String,
    },
    NotAnInteger {
        entry: String,
        name: String,
    },
    /// A hypothesis of the family does not hold; `predicate` is the
    /// condition that was required.
    Violated {
        entry: String,
        predicate: String,
    },
    /// The constructed instance fails the algebraic checks.
    Algebra {
        entry: String,
        error: AlgError,
    },
    /// No weight `(1, W)` with `W ≤ 64` satisfies the degree conditions.
    NoWeight(String),
    /// Stored factorization of `det g` does not multiply out.
    DetMismatch(String),
    NoSingularityData(String),
    NoDomain(String),
    OutsideDomain,
    Curvature(CurvatureError),
    OffSphere,
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownEntry(id) => write!(f, "unknown catalog entry {id}"),
            CatalogError::UnknownParameter { entry, name } => {
                write!(f, "entry {entry} has no parameter {name}")
            }
            CatalogError::NotAnInteger { entry, name } => {
                write!(f, "entry {entry}: parameter {name} must be an integer")
            }
            CatalogError::Violated { entry, predicate } => {
                write!(f, "entry {entry}: requires {predicate}")
            }
            CatalogError::Algebra { entry, error } => write!(f, "entry {entry}: {error}"),
            CatalogError::NoWeight(id) => write!(f, "entry {id}: no admissible weight found"),
            CatalogError::DetMismatch(id) => {
                write!(f, "entry {id}: stored factorization of det g is wrong")
            }
            CatalogError::NoSingularityData(id) => write!(f, "entry {id} carries no singularity data"),
            CatalogError::NoDomain(id) => write!(f, "entry {id} has no domain"),
            CatalogError::OutsideDomain => f.write_str("point is not in the domain"),
            CatalogError::Curvature(e) => write!(f, "{e}"),
            CatalogError::OffSphere => f.write_str("point is not on the unit sphere"),
        }
    }
}

impl From<CurvatureError> for CatalogError {
    fn from(e: CurvatureError) -> Self {
        CatalogError::Curvature(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Integer,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamRole {
    Geometry,
    Density,
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub role: ParamRole,
    /// `(numerator, denominator)`; `None` makes the parameter mandatory.
    pub default: Option<(i64, i64)>,
}

const fn geo(name: &'static str, kind: ParamKind, default: Option<(i64, i64)>) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        role: ParamRole::Geometry,
        default,
    }
}

const fn dens(name: &'static str, default: (i64, i64)) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Rational,
        role: ParamRole::Density,
        default: Some(default),
    }
}

use ParamKind::{Integer as I, Rational as R};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightRule {
    Fixed(u32, u32),
    /// `(1, W)` with the least `W ≥ 3` passing the degree conditions.
    OneInfinity,
}

#[derive(Clone, Copy, Debug)]
pub struct EntryInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub weights: WeightRule,
    pub params: &'static [ParamSpec],
}

const ONE: Option<(i64, i64)> = Some((1, 1));
const ZERO: Option<(i64, i64)> = Some((0, 1));

pub static ENTRIES: &[EntryInfo] = &[
    EntryInfo {
        id: "P43.i",
        summary: "Γ = (1-x)^m (1+x)^n - y^2, a = 1 - x^2",
        weights: WeightRule::OneInfinity,
        params: &[geo("m", I, None), geo("n", I, None), geo("c02", R, ZERO)],
    },
    EntryInfo {
        id: "P43.ii",
        summary: "Γ = x^n - y^2, a = x",
        weights: WeightRule::OneInfinity,
        params: &[geo("n", I, None), geo("c02", R, ZERO)],
    },
    EntryInfo {
        id: "P43.iii",
        summary: "Γ = x^k ((x0 - x)^n - y^2), a = x (x0 - x)",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("n", I, None),
            geo("k", I, ZERO),
            geo("x0", I, ONE),
            geo("c02", R, ZERO),
        ],
    },
    EntryInfo {
        id: "P43.iv",
        summary: "Γ = x^k (1 - y^2), diagonal metric",
        weights: WeightRule::OneInfinity,
        params: &[geo("k", I, ZERO), geo("c02", R, Some((-1, 1)))],
    },
    EntryInfo {
        id: "P43.v",
        summary: "Γ = (1 - x^2)(1 - y^2), diagonal metric",
        weights: WeightRule::OneInfinity,
        params: &[geo("c02", R, Some((-1, 1)))],
    },
    EntryInfo {
        id: "P44.i",
        summary: "Γ = x^k (x^n y - 1), c0 = c00 + c01 x",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("n", I, None),
            geo("k", I, ZERO),
            geo("c00", R, ONE),
            geo("c01", R, ZERO),
        ],
    },
    EntryInfo {
        id: "P44.ii",
        summary: "Γ = xy - 1, b = b11 Γ - 1, c0 = c00 + c01 x",
        weights: WeightRule::OneInfinity,
        params: &[geo("b11", R, ZERO), geo("c00", R, ONE), geo("c01", R, ZERO)],
    },
    EntryInfo {
        id: "P44.iii",
        summary: "Γ = y, a = a0(x), b = b1(x) y, c = c02 y^2 + c1(x) y",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("a00", R, ONE),
            geo("a01", R, ZERO),
            geo("a02", R, ZERO),
            geo("b10", R, ZERO),
            geo("b11", R, ZERO),
            geo("c02", R, ONE),
            geo("c10", R, ZERO),
            geo("c11", R, ZERO),
        ],
    },
    EntryInfo {
        id: "P44.iv",
        summary: "Γ = xy, a = a10 x + a20 x^2, b = b11 xy",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("a10", R, ONE),
            geo("a20", R, ZERO),
            geo("b11", R, ZERO),
            geo("c02", R, ONE),
            geo("c10", R, ZERO),
            geo("c11", R, ZERO),
        ],
    },
    EntryInfo {
        id: "P44.v",
        summary: "Γ = (1 - x^2) y, a = 1 - x^2, b = 0",
        weights: WeightRule::OneInfinity,
        params: &[geo("c02", R, ONE), geo("c10", R, ZERO), geo("c11", R, ZERO)],
    },
    EntryInfo {
        id: "P44.vi",
        summary: "Γ = 1 - xy, a = 0, b = Γ, c = c0 Γ",
        weights: WeightRule::OneInfinity,
        params: &[geo("c00", R, ONE), geo("c01", R, ZERO)],
    },
    EntryInfo {
        id: "P53",
        summary: "irreducible quintic with a node, a cusp and an A4 point",
        weights: WeightRule::Fixed(1, 2),
        params: &[],
    },
    EntryInfo {
        id: "P55.i",
        summary: "Γ = y^2 - x^3, three-parameter pencil",
        weights: WeightRule::Fixed(1, 2),
        params: &[geo("alpha", R, ZERO), geo("beta", R, ZERO), geo("mu", R, ZERO)],
    },
    EntryInfo {
        id: "P55.ii",
        summary: "Γ = y (y - x^2)",
        weights: WeightRule::Fixed(1, 2),
        params: &[geo("alpha", R, ONE), geo("beta", R, ZERO), geo("mu", R, ZERO)],
    },
    EntryInfo {
        id: "P55.iii",
        summary: "Γ = y (y - x^2 + 1)",
        weights: WeightRule::Fixed(1, 2),
        params: &[geo("alpha", R, Some((-1, 1))), geo("beta", R, ZERO)],
    },
    EntryInfo {
        id: "P57",
        summary: "cuspidal cubic with a cubically tangent parabola",
        weights: WeightRule::Fixed(1, 2),
        params: &[],
    },
    EntryInfo {
        id: "B1",
        summary: "bounded component of the quintic (dodecahedral quotient)",
        weights: WeightRule::Fixed(1, 2),
        params: &[dens("p", (1, 1))],
    },
    EntryInfo {
        id: "B2",
        summary: "bounded domain between the cuspidal cubic and the parabola",
        weights: WeightRule::Fixed(1, 2),
        params: &[dens("p", (1, 1)), dens("q", (1, 1))],
    },
    EntryInfo {
        id: "B3",
        summary: "parabolic biangle x^2 - 1 < y < 0",
        weights: WeightRule::Fixed(1, 2),
        params: &[
            geo("alpha", R, Some((-1, 1))),
            geo("beta", R, ZERO),
            dens("p", (1, 1)),
            dens("q", (1, 1)),
        ],
    },
    EntryInfo {
        id: "B4",
        summary: "biangle {Γ > 0, x^2 < 1} with Γ = (1-x)^m (1+x)^n - y^2",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("m", I, None),
            geo("n", I, None),
            geo("c02", R, Some((-1, 1))),
            dens("p", (1, 1)),
            ParamSpec {
                name: "q",
                kind: R,
                role: ParamRole::Density,
                default: None,
            },
        ],
    },
    EntryInfo {
        id: "B5",
        summary: "triangle {x Γ2 > 0, 0 < x < 1} with Γ2 = (1-x)^n - y^2",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("n", I, None),
            geo("c02", R, Some((-1, 1))),
            dens("p", (1, 1)),
            ParamSpec {
                name: "q",
                kind: R,
                role: ParamRole::Density,
                default: None,
            },
            dens("r", (1, 1)),
        ],
    },
    EntryInfo {
        id: "U1",
        summary: "unbounded {x > 0, x^n > y^2} with exponential weight",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("n", I, None),
            geo("c02", R, ZERO),
            dens("p", (1, 1)),
            ParamSpec {
                name: "q",
                kind: R,
                role: ParamRole::Density,
                default: None,
            },
            dens("lambda", (1, 1)),
        ],
    },
    EntryInfo {
        id: "U2",
        summary: "product of one-dimensional solutions (kind 0 Hermite, 1 Laguerre, 2 Jacobi)",
        weights: WeightRule::OneInfinity,
        params: &[
            geo("kx", I, Some((2, 1))),
            geo("ky", I, Some((2, 1))),
            geo("alpha", R, ONE),
            geo("beta", R, ONE),
            dens("ax", (1, 1)),
            dens("px", (1, 1)),
            dens("qx", (1, 1)),
            dens("ay", (1, 1)),
            dens("py", (1, 1)),
            dens("qy", (1, 1)),
        ],
    },
    EntryInfo {
        id: "RECT",
        summary: "square [-1, 1]^2 with diag(alpha (1 - x^2), beta (1 - y^2))",
        weights: WeightRule::Fixed(1, 1),
        params: &[
            geo("alpha", R, ONE),
            geo("beta", R, ONE),
            dens("p1", (1, 1)),
            dens("q1", (1, 1)),
            dens("p2", (1, 1)),
            dens("q2", (1, 1)),
        ],
    },
    EntryInfo {
        id: "DIM1.hermite",
        summary: "one-dimensional Hermite operator in x (Hermite factor in y)",
        weights: WeightRule::Fixed(1, 1),
        params: &[],
    },
    EntryInfo {
        id: "DIM1.laguerre",
        summary: "one-dimensional Laguerre operator in x (Hermite factor in y)",
        weights: WeightRule::Fixed(1, 1),
        params: &[dens("a", (1, 1))],
    },
    EntryInfo {
        id: "DIM1.jacobi",
        summary: "one-dimensional Jacobi operator in x (Hermite factor in y)",
        weights: WeightRule::Fixed(1, 1),
        params: &[dens("p", (1, 1)), dens("q", (1, 1))],
    },
];

pub fn entry(id: &str) -> Result<&'static EntryInfo, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CatalogError::UnknownEntry(id.into()))
}

/// A singular point of `Γ = 0` with its stored type label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub x: Rational,
    pub y: Rational,
    pub label: &'static str,
}

/// `det g = constant · ∏ factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetFactorization {
    pub constant: Rational,
    pub factors: Vec<(RatPoly2, u32)>,
}

impl DetFactorization {
    fn new(constant: Rational, factors: Vec<(RatPoly2, u32)>) -> Self {
        let mut c = constant;
        let mut fs = Vec::new();
        for (f, e) in factors {
            if f.is_constant() {
                c *= num_traits::pow(f.constant_value().unwrap_or_else(Rational::zero), e as usize);
            } else {
                fs.push((f, e));
            }
        }
        DetFactorization {
            constant: c,
            factors: fs,
        }
    }

    pub fn expand(&self) -> RatPoly2 {
        self.factors
            .iter()
            .fold(RatPoly2::constant(self.constant.clone()), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }
}

/// A fully instantiated catalog solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub id: String,
    pub params: BTreeMap<String, Rational>,
    pub weights: Weights,
    pub metric: Cometric,
    pub boundary: BoundarySpec,
    pub certificate: CofactorCertificate,
    pub domain: Option<DomainSpec>,
    pub density: Option<DensitySpec>,
    pub integrability: Option<IntegrabilityReport>,
    pub det_factorization: Option<DetFactorization>,
    /// Reduces to a `(1,1)` solution by an admissible change.
    pub reducible: bool,
    pub singular_points: Option<Vec<SingularPoint>>,
    pub summary: String,
}

pub type Params = BTreeMap<String, Rational>;

struct Raw {
    g: Cometric,
    boundary: Vec<RatPoly2>,
    domain: Option<DomainSpec>,
    density: Option<DensitySpec>,
    det: Option<DetFactorization>,
    reducible: bool,
    singular: Option<Vec<SingularPoint>>,
}

impl Raw {
    fn new(g: Cometric, boundary: Vec<RatPoly2>) -> Self {
        Raw {
            g,
            boundary,
            domain: None,
            density: None,
            det: None,
            reducible: false,
            singular: None,
        }
    }
}

fn pp(s: &str) -> RatPoly2 {
    s.parse().expect("catalog literal")
}

fn k(r: &Rational) -> RatPoly2 {
    RatPoly2::constant(r.clone())
}

struct Ctx<'a> {
    id: &'a str,
    p: &'a Params,
}

impl Ctx<'_> {
    fn r(&self, name: &str) -> Rational {
        self.p.get(name).cloned().expect("schema filled")
    }

    fn opt(&self, name: &str) -> Option<Rational> {
        self.p.get(name).cloned()
    }

    fn i(&self, name: &str) -> i64 {
        let v = self.r(name);
        i64::try_from(v.to_integer()).unwrap_or(i64::MAX)
    }

    fn require(&self, cond: bool, predicate: &str) -> Result<(), CatalogError> {
        if cond {
            Ok(())
        } else {
            Err(CatalogError::Violated {
                entry: self.id.into(),
                predicate: predicate.into(),
            })
        }
    }

    fn flag(&self, name: &str) -> Result<i64, CatalogError> {
        let v = self.i(name);
        self.require(v == 0 || v == 1, &format!("{name} in {{0, 1}}"))?;
        Ok(v)
    }

    fn small(&self, name: &str, lo: i64) -> Result<u32, CatalogError> {
        let v = self.i(name);
        self.require(v >= lo, &format!("{name} >= {lo}"))?;
        self.require(v <= 64, &format!("{name} <= 64"))?;
        Ok(v as u32)
    }
}

fn is_even(n: u32) -> bool {
    n.is_multiple_of(2)
}

fn exp(p: &Rational) -> Rational {
    p - Rational::one()
}

// metric and Γ of the family with a = 1 - x^2
fn p43_i(m: u32, n: u32, c02: &Rational) -> (Cometric, RatPoly2, RatPoly2) {
    let gamma = &(&pp("1 - x").pow(m) * &pp("1 + x").pow(n)) - &pp("y^2");
    let (mi, ni) = (int(i64::from(m)), int(i64::from(n)));
    let l = &k(&(&ni - &mi)) - &(&pp("x") * &k(&(&ni + &mi)));
    let a = pp("1 - x^2");
    let b = (&l * &pp("y")).scale(&frac(1, 2));
    let c = &(&(&l * &l) * &(&pp("1 - x").pow(m - 1) * &pp("1 + x").pow(n - 1))).scale(&frac(1, 4)) - &gamma.scale(c02);
    let gamma0 = &(&l * &l).scale(&frac(1, 4)) - &pp("1 - x^2").scale(c02);
    (Cometric::new(a, b, c), gamma, gamma0)
}

fn p43_ii(n: u32, c02: &Rational) -> (Cometric, RatPoly2) {
    let gamma = &pp("x").pow(n) - &pp("y^2");
    let ni = int(i64::from(n));
    let a = pp("x");
    let b = pp("y").scale(&(&ni / int(2)));
    let c = &pp("x").pow(n - 1).scale(&(&ni * &ni / int(4))) - &gamma.scale(c02);
    (Cometric::new(a, b, c), gamma)
}

fn p43_iii(n: u32, x0: i64, c02: &Rational) -> (Cometric, RatPoly2) {
    let base = &k(&int(x0)) - &pp("x");
    let gamma2 = &base.pow(n) - &pp("y^2");
    let ni = int(i64::from(n));
    let a = &pp("x") * &base;
    let b = pp("x*y").scale(&(-&ni / int(2)));
    let lead = if n == 0 {
        RatPoly2::zero()
    } else {
        (&pp("x") * &base.pow(n - 1)).scale(&(&ni * &ni / int(4)))
    };
    let c = &lead - &gamma2.scale(c02);
    (Cometric::new(a, b, c), gamma2)
}

/// `g_(α,β)` of the parabolic biangle family.
fn g_parabola_strip(alpha: &Rational, beta: &Rational) -> Cometric {
    let g1 = pp("y - x^2 + 1");
    Cometric::new(
        &g1 + &pp("x^2 - 1").scale(beta),
        pp("2*x*y").scale(beta),
        &(&g1 * &pp("y")).scale(alpha) + &pp("4*x^2*y").scale(beta),
    )
}

/// The three-parameter pencil on the cuspidal cubic.
fn g_cusp(alpha: &Rational, beta: &Rational, mu: &Rational) -> Cometric {
    let gamma = pp("y^2 - x^3");
    let s = &pp("x").scale(beta) + &k(mu);
    Cometric::new(
        &pp("4*y") + &(&s * &pp("4*x")),
        &pp("6*x^2") + &(&s * &pp("6*y")),
        &(&pp("9*x*y") + &gamma.scale(alpha)) + &(&s * &pp("9*x^2")),
    )
}

pub fn gamma25() -> RatPoly2 {
    pp("y^3 - 20*x*y^2 + 16*y^2 + 45*x^3*y - 40*x^2*y - 27*x^5 + 25*x^4")
}

pub fn g28() -> Cometric {
    Cometric::new(
        pp("y + 8*x - 9*x^2"),
        pp("5*(4*y - 3*x*y - x^2)"),
        pp("-25*(y^2 - 4*x*y + 3*x^3)"),
    )
}

fn quintic_singularities() -> Vec<SingularPoint> {
    vec![
        SingularPoint {
            x: frac(32, 27),
            y: frac(256, 81),
            label: "A2",
        },
        SingularPoint {
            x: int(0),
            y: int(0),
            label: "A4",
        },
        SingularPoint {
            x: int(1),
            y: int(1),
            label: "A1",
        },
    ]
}

fn cubic_parabola_singularities() -> Vec<SingularPoint> {
    vec![
        SingularPoint {
            x: frac(1, 9),
            y: frac(-1, 27),
            label: "A1",
        },
        SingularPoint {
            x: int(0),
            y: int(0),
            label: "A2",
        },
        SingularPoint {
            x: int(1),
            y: int(1),
            label: "A5",
        },
    ]
}

fn pos(p: RatPoly2) -> (RatPoly2, Sign) {
    (p, Sign::Positive)
}

/// One-dimensional factor of kind 0 (Hermite), 1 (Laguerre), 2 (Jacobi)
/// in the variable `v`: `(g, boundary factors, domain signs, density
/// factors, Q, bounded interval)`.
struct OneDim {
    g: RatPoly2,
    factors: Vec<RatPoly2>,
    density: Vec<(RatPoly2, Rational)>,
    q: RatPoly2,
    interval: Option<(Rational, Rational)>,
}

fn one_dim(kind: i64, v: &str, a: &Rational, p: &Rational, q: &Rational) -> OneDim {
    let var = pp(v);
    match kind {
        0 => OneDim {
            g: RatPoly2::one(),
            factors: vec![],
            density: vec![],
            q: (&var * &var).scale(&frac(-1, 2)),
            interval: None,
        },
        1 => OneDim {
            g: var.clone(),
            factors: vec![var.clone()],
            density: vec![(var.clone(), exp(a))],
            q: -&var,
            interval: None,
        },
        _ => {
            let lo = &RatPoly2::one() - &var;
            let hi = &RatPoly2::one() + &var;
            OneDim {
                g: &lo * &hi,
                factors: vec![lo.clone(), hi.clone()],
                density: vec![(lo, exp(p)), (hi, exp(q))],
                q: RatPoly2::zero(),
                interval: Some((int(-1), int(1))),
            }
        }
    }
}

fn build(c: &Ctx<'_>) -> Result<Raw, CatalogError> {
    let id = c.id;
    Ok(match id {
        "P43.i" | "B4" => {
            let (m, n) = (c.small("m", 1)?, c.small("n", 1)?);
            let c02 = c.r("c02");
            if id == "B4" {
                c.require(c02.is_negative(), "c02 < 0")?;
            }
            let (g, gamma, gamma0) = p43_i(m, n, &c02);
            let even = is_even(m) && is_even(n);
            let mut raw = if id == "B4" && even {
                let u = &pp("1 - x").pow(m / 2) * &pp("1 + x").pow(n / 2);
                let (f1, f2) = (&u + &pp("y"), &u - &pp("y"));
                let mut raw = Raw::new(g, vec![f1.clone(), f2.clone()]);
                let pexp = c.r("p");
                let qexp = c.opt("q").unwrap_or_else(|| pexp.clone());
                raw.density = Some(DensitySpec::new(
                    vec![(f1.clone(), exp(&pexp)), (f2.clone(), exp(&qexp))],
                    RatPoly2::zero(),
                ));
                raw.domain = Some(DomainSpec::new(
                    vec![pos(f1), pos(f2), pos(pp("1 - x^2"))],
                    None,
                    vec![int(-1), int(1)],
                ));
                raw
            } else {
                let mut raw = Raw::new(g, vec![gamma.clone()]);
                if id == "B4" {
                    raw.density = Some(DensitySpec::new(
                        vec![(gamma.clone(), exp(&c.r("p")))],
                        RatPoly2::zero(),
                    ));
                    raw.domain = Some(DomainSpec::new(
                        vec![pos(gamma.clone()), pos(pp("1 - x^2"))],
                        None,
                        vec![int(-1), int(1)],
                    ));
                }
                raw
            };
            if let Some(d) = raw.domain.as_mut() {
                // (1-x)^m (1+x)^n ≤ 2^(m+n) on [-1, 1]
                let ymax = int(1i64 << (m + n).div_ceil(2));
                d.bbox = Some(BBox::new(int(-1), int(1), -ymax.clone(), ymax));
            }
            raw.det = Some(DetFactorization::new(Rational::one(), vec![(gamma0, 1), (gamma, 1)]));
            raw
        }
        "P43.ii" | "U1" => {
            let n = c.small("n", 1)?;
            let c02 = c.r("c02");
            if id == "U1" {
                c.require(!c02.is_positive(), "c02 <= 0")?;
            }
            let (g, gamma) = p43_ii(n, &c02);
            let ni = int(i64::from(n));
            let gamma0 = &k(&(&ni * &ni / int(4))) - &pp("x").scale(&c02);
            let mut raw = if id == "U1" && is_even(n) {
                let u = pp("x").pow(n / 2);
                let (f1, f2) = (&u + &pp("y"), &u - &pp("y"));
                let mut raw = Raw::new(g, vec![f1.clone(), f2.clone()]);
                let pexp = c.r("p");
                let qexp = c.opt("q").unwrap_or_else(|| pexp.clone());
                raw.density = Some(DensitySpec::new(
                    vec![(f1.clone(), exp(&pexp)), (f2.clone(), exp(&qexp))],
                    pp("x").scale(&-c.r("lambda")),
                ));
                raw.domain = Some(DomainSpec::new(vec![pos(f1), pos(f2), pos(pp("x"))], None, vec![]));
                raw
            } else {
                let mut raw = Raw::new(g, vec![gamma.clone()]);
                if id == "U1" {
                    raw.density = Some(DensitySpec::new(
                        vec![(gamma.clone(), exp(&c.r("p")))],
                        pp("x").scale(&-c.r("lambda")),
                    ));
                    raw.domain = Some(DomainSpec::new(vec![pos(gamma.clone()), pos(pp("x"))], None, vec![]));
                }
                raw
            };
            raw.det = Some(DetFactorization::new(Rational::one(), vec![(gamma0, 1), (gamma, 1)]));
            raw
        }
        "P43.iii" | "B5" => {
            let n = c.small("n", if id == "B5" { 1 } else { 0 })?;
            let c02 = c.r("c02");
            let (kk, x0) = if id == "B5" {
                c.require(!c02.is_positive(), "c02 <= 0")?;
                (1, 1)
            } else {
                let (kk, x0) = (c.flag("k")?, c.flag("x0")?);
                c.require(n != 0 || !c02.is_zero(), "(n, c02) != (0, 0)")?;
                (kk, x0)
            };
            let (g, gamma2) = p43_iii(n, x0, &c02);
            let ni = int(i64::from(n));
            let gamma0 = &pp("x").scale(&(&ni * &ni / int(4))) - &(&k(&int(x0)) - &pp("x")).scale(&c02);
            let mut factors = Vec::new();
            if kk == 1 {
                factors.push(pp("x"));
            }
            let mut raw = if id == "B5" && is_even(n) {
                let u = pp("1 - x").pow(n / 2);
                let (f1, f2) = (&u + &pp("y"), &u - &pp("y"));
                factors.extend([f1.clone(), f2.clone()]);
                let mut raw = Raw::new(g, factors);
                let pexp = c.r("p");
                let qexp = c.opt("q").unwrap_or_else(|| pexp.clone());
                raw.density = Some(DensitySpec::new(
                    vec![
                        (pp("x"), exp(&c.r("r"))),
                        (f1.clone(), exp(&pexp)),
                        (f2.clone(), exp(&qexp)),
                    ],
                    RatPoly2::zero(),
                ));
                raw.domain = Some(DomainSpec::new(
                    vec![pos(pp("x")), pos(pp("1 - x")), pos(f1), pos(f2)],
                    None,
                    vec![int(0), int(1)],
                ));
                raw
            } else {
                factors.push(gamma2.clone());
                let mut raw = Raw::new(g, factors);
                if id == "B5" {
                    raw.density = Some(DensitySpec::new(
                        vec![(pp("x"), exp(&c.r("r"))), (gamma2.clone(), exp(&c.r("p")))],
                        RatPoly2::zero(),
                    ));
                    raw.domain = Some(DomainSpec::new(
                        vec![pos(pp("x")), pos(pp("1 - x")), pos(gamma2.clone())],
                        None,
                        vec![int(0), int(1)],
                    ));
                }
                raw
            };
            if let Some(d) = raw.domain.as_mut() {
                d.bbox = Some(BBox::new(int(0), int(1), int(-1), int(1)));
            }
            raw.det = Some(DetFactorization::new(
                Rational::one(),
                vec![(pp("x"), 1), (gamma2, 1), (gamma0, 1)],
            ));
            raw
        }
        "P43.iv" => {
            let kk = c.flag("k")?;
            let c02 = c.r("c02");
            c.require(!c02.is_zero(), "c02 != 0")?;
            let xk = pp("x").pow(kk as u32);
            let g = Cometric::diag(xk.clone(), pp("1 - y^2").scale(&-&c02));
            let mut factors = vec![pp("1 - y^2")];
            if kk == 1 {
                factors.insert(0, pp("x"));
            }
            let mut raw = Raw::new(g, factors);
            raw.det = Some(DetFactorization::new(-c02, vec![(xk, 1), (pp("1 - y^2"), 1)]));
            raw
        }
        "P43.v" => {
            let c02 = c.r("c02");
            c.require(!c02.is_zero(), "c02 != 0")?;
            let g = Cometric::diag(pp("1 - x^2"), pp("1 - y^2").scale(&-&c02));
            let mut raw = Raw::new(g, vec![pp("1 - x^2"), pp("1 - y^2")]);
            raw.det = Some(DetFactorization::new(
                -c02,
                vec![(pp("1 - x^2"), 1), (pp("1 - y^2"), 1)],
            ));
            raw
        }
        "P44.i" => {
            let n = c.small("n", 1)?;
            let kk = c.flag("k")?;
            let c0 = &k(&c.r("c00")) + &pp("x").scale(&c.r("c01"));
            c.require(!c0.is_zero(), "c0 != 0")?;
            let gamma1 = &pp("x").pow(n) * &pp("y") - pp("1");
            let ni = int(i64::from(n));
            let g = Cometric::new(
                pp("x^2"),
                pp("x*y").scale(&-&ni),
                &pp("y^2").scale(&(&ni * &ni)) - &(&c0 * &gamma1),
            );
            let mut factors = vec![gamma1.clone()];
            if kk == 1 {
                factors.insert(0, pp("x"));
            }
            let mut raw = Raw::new(g, factors);
            raw.det = Some(DetFactorization::new(int(-1), vec![(pp("x"), 2), (c0, 1), (gamma1, 1)]));
            raw
        }
        "P44.ii" => {
            let b11 = c.r("b11");
            let c0 = &k(&c.r("c00")) + &pp("x").scale(&c.r("c01"));
            let gamma = pp("x*y - 1");
            let g = Cometric::new(
                pp("x^2"),
                &gamma.scale(&b11) - &RatPoly2::one(),
                &pp("y^2") - &(&c0 * &gamma),
            );
            let cof = &(&(&pp("x*y + 1") - &(&pp("x^2") * &c0)) - &gamma.scale(&(&b11 * &b11))) + &k(&(int(2) * &b11));
            c.require(!cof.is_zero(), "det g != 0")?;
            let mut raw = Raw::new(g, vec![gamma.clone()]);
            raw.det = Some(DetFactorization::new(Rational::one(), vec![(cof, 1), (gamma, 1)]));
            raw
        }
        "P44.iii" => {
            let a0 = &(&k(&c.r("a00")) + &pp("x").scale(&c.r("a01"))) + &pp("x^2").scale(&c.r("a02"));
            let b1 = &k(&c.r("b10")) + &pp("x").scale(&c.r("b11"));
            let c1 = &k(&c.r("c10")) + &pp("x").scale(&c.r("c11"));
            let g = Cometric::new(a0, &b1 * &pp("y"), &pp("y^2").scale(&c.r("c02")) + &(&c1 * &pp("y")));
            Raw::new(g, vec![pp("y")])
        }
        "P44.iv" => {
            let a = &pp("x").scale(&c.r("a10")) + &pp("x^2").scale(&c.r("a20"));
            let c1 = &k(&c.r("c10")) + &pp("x").scale(&c.r("c11"));
            let g = Cometric::new(
                a,
                pp("x*y").scale(&c.r("b11")),
                &pp("y^2").scale(&c.r("c02")) + &(&c1 * &pp("y")),
            );
            Raw::new(g, vec![pp("x"), pp("y")])
        }
        "P44.v" => {
            let c1 = &k(&c.r("c10")) + &pp("x").scale(&c.r("c11"));
            let g = Cometric::diag(pp("1 - x^2"), &pp("y^2").scale(&c.r("c02")) + &(&c1 * &pp("y")));
            Raw::new(g, vec![pp("1 - x^2"), pp("y")])
        }
        "P44.vi" => {
            let c0 = &k(&c.r("c00")) + &pp("x").scale(&c.r("c01"));
            let gamma = pp("1 - x*y");
            let g = Cometric::new(RatPoly2::zero(), gamma.clone(), &c0 * &gamma);
            let mut raw = Raw::new(g, vec![gamma.clone()]);
            raw.det = Some(DetFactorization::new(int(-1), vec![(gamma, 2)]));
            raw
        }
        "P53" | "B1" => {
            let mut raw = Raw::new(g28(), vec![gamma25()]);
            raw.det = Some(DetFactorization::new(int(-25), vec![(gamma25(), 1)]));
            raw.singular = Some(quintic_singularities());
            if id == "B1" {
                let neg = -&gamma25();
                raw.density = Some(DensitySpec::new(vec![(neg, exp(&c.r("p")))], RatPoly2::zero()));
                raw.domain = Some(DomainSpec::new(
                    vec![(gamma25(), Sign::Negative), pos(pp("y - x^2"))],
                    Some(BBox::new(int(0), frac(32, 27), int(0), frac(256, 81))),
                    vec![int(0), int(1), frac(32, 27)],
                ));
            }
            raw
        }
        "P55.i" => {
            let (alpha, beta, mu) = (c.r("alpha"), c.r("beta"), c.r("mu"));
            let mut raw = Raw::new(g_cusp(&alpha, &beta, &mu), vec![pp("y^2 - x^3")]);
            raw.singular = Some(vec![SingularPoint {
                x: int(0),
                y: int(0),
                label: "A2",
            }]);
            raw
        }
        "P55.ii" => {
            let (alpha, beta, mu) = (c.r("alpha"), c.r("beta"), c.r("mu"));
            c.require(mu.is_zero() || mu.is_one(), "mu in {0, 1}")?;
            let bb = &beta - &beta * &beta;
            c.require(
                !(alpha.is_zero() && bb.is_zero() && mu.is_zero()),
                "(alpha, beta - beta^2, mu) != (0, 0, 0)",
            )?;
            let g1 = pp("y - x^2");
            let s = &pp("x").scale(&beta) + &k(&mu);
            let g = Cometric::new(
                &g1 + &(&s * &pp("x")),
                &s * &pp("2*y"),
                &(&g1 * &pp("y")).scale(&alpha) + &(&s * &pp("4*x*y")),
            );
            Raw::new(g, vec![pp("y"), g1])
        }
        "P55.iii" | "B3" => {
            let (alpha, beta) = (c.r("alpha"), c.r("beta"));
            if id == "B3" {
                c.require(alpha.is_negative(), "alpha < 0")?;
                c.require(!beta.is_positive(), "beta <= 0")?;
            }
            let bb = &beta - &beta * &beta;
            c.require(!(alpha.is_zero() && bb.is_zero()), "(alpha, beta - beta^2) != (0, 0)")?;
            let g1 = pp("y - x^2 + 1");
            let one = Rational::one();
            let gamma0 = &(&pp("y").scale(&alpha) + &pp("x^2").scale(&((int(4) * &beta - &alpha) * (&one - &beta))))
                + &k(&(&alpha * (&one - &beta)));
            let mut raw = Raw::new(g_parabola_strip(&alpha, &beta), vec![pp("y"), g1.clone()]);
            raw.det = Some(DetFactorization::new(
                Rational::one(),
                vec![(pp("y"), 1), (gamma0, 1), (g1.clone(), 1)],
            ));
            raw.reducible = alpha == int(4) * &beta || alpha == int(4) * &beta - int(4);
            if id == "B3" {
                raw.density = Some(DensitySpec::new(
                    vec![(pp("-y"), exp(&c.r("p"))), (g1.clone(), exp(&c.r("q")))],
                    RatPoly2::zero(),
                ));
                raw.domain = Some(DomainSpec::new(
                    vec![pos(pp("-y")), pos(g1)],
                    Some(BBox::new(int(-1), int(1), int(-1), int(0))),
                    vec![int(-1), int(1)],
                ));
            }
            raw
        }
        "P57" | "B2" => {
            // twice the pencil member at (-18, -3/2, 1/2)
            let g = g_cusp(&int(-18), &frac(-3, 2), &frac(1, 2)).scale(&int(2));
            let (g1, g2) = (pp("8*y - 3*x^2 - 6*x + 1"), pp("x^3 - y^2"));
            let mut raw = Raw::new(g, vec![g1.clone(), g2.clone()]);
            raw.det = Some(DetFactorization::new(int(36), vec![(g1.clone(), 1), (g2.clone(), 1)]));
            raw.singular = Some(cubic_parabola_singularities());
            if id == "B2" {
                raw.density = Some(DensitySpec::new(
                    vec![(g1.clone(), exp(&c.r("p"))), (g2.clone(), exp(&c.r("q")))],
                    RatPoly2::zero(),
                ));
                raw.domain = Some(DomainSpec::new(
                    vec![pos(g1), pos(g2)],
                    Some(BBox::new(int(0), int(1), frac(-1, 27), int(1))),
                    vec![int(0), frac(1, 9), int(1)],
                ));
            }
            raw
        }
        "U2" => {
            let (kx, ky) = (c.i("kx"), c.i("ky"));
            c.require((0..=2).contains(&kx), "kx in {0, 1, 2}")?;
            c.require((0..=2).contains(&ky), "ky in {0, 1, 2}")?;
            let (alpha, beta) = (c.r("alpha"), c.r("beta"));
            c.require(!alpha.is_zero() && !beta.is_zero(), "alpha != 0 and beta != 0")?;
            let fx = one_dim(kx, "x", &c.r("ax"), &c.r("px"), &c.r("qx"));
            let fy = one_dim(ky, "y", &c.r("ay"), &c.r("py"), &c.r("qy"));
            product_raw(fx, fy, &alpha, &beta)
        }
        "RECT" => {
            let (alpha, beta) = (c.r("alpha"), c.r("beta"));
            c.require(alpha.is_positive(), "alpha > 0")?;
            c.require(beta.is_positive(), "beta > 0")?;
            let fx = one_dim(2, "x", &Rational::zero(), &c.r("p1"), &c.r("q1"));
            let fy = one_dim(2, "y", &Rational::zero(), &c.r("p2"), &c.r("q2"));
            let mut raw = product_raw(fx, fy, &alpha, &beta);
            raw.singular = Some(vec![]);
            raw
        }
        "DIM1.hermite" | "DIM1.laguerre" | "DIM1.jacobi" => {
            let kind = match id {
                "DIM1.hermite" => 0,
                "DIM1.laguerre" => 1,
                _ => 2,
            };
            let get = |n: &str| c.opt(n).unwrap_or_else(Rational::one);
            let fx = one_dim(kind, "x", &get("a"), &get("p"), &get("q"));
            let fy = one_dim(0, "y", &Rational::zero(), &Rational::zero(), &Rational::zero());
            product_raw(fx, fy, &Rational::one(), &Rational::one())
        }
        other => return Err(CatalogError::UnknownEntry(other.into())),
    })
}

fn product_raw(fx: OneDim, fy: OneDim, alpha: &Rational, beta: &Rational) -> Raw {
    let g = Cometric::diag(fx.g.scale(alpha), fy.g.scale(beta));
    let factors: Vec<RatPoly2> = fx.factors.iter().chain(&fy.factors).cloned().collect();
    let signs = factors.iter().cloned().map(pos).collect();
    let bbox = match (&fx.interval, &fy.interval) {
        (Some((x0, x1)), Some((y0, y1))) => Some(BBox::new(x0.clone(), x1.clone(), y0.clone(), y1.clone())),
        _ => None,
    };
    let breaks = fx
        .interval
        .as_ref()
        .map(|(a, b)| vec![a.clone(), b.clone()])
        .unwrap_or_default();
    let density = DensitySpec::new(fx.density.into_iter().chain(fy.density).collect(), &fx.q + &fy.q);
    let det = DetFactorization::new(alpha * beta, vec![(fx.g, 1), (fy.g, 1)]);
    let mut raw = Raw::new(g, factors);
    raw.domain = Some(DomainSpec::new(signs, bbox, breaks));
    raw.density = Some(density);
    raw.det = Some(det);
    raw
}

/// Checks names, integrality and fills defaults.
pub fn resolve_params(info: &EntryInfo, given: &Params) -> Result<Params, CatalogError> {
    for name in given.keys() {
        if !info.params.iter().any(|p| p.name == name) {
            return Err(CatalogError::UnknownParameter {
                entry: info.id.into(),
                name: name.clone(),
            });
        }
    }
    let mut out = Params::new();
    for spec in info.params {
        let v = match (given.get(spec.name), spec.default) {
            (Some(v), _) => v.clone(),
            (None, Some((n, d))) => frac(n, d),
            // q of the symmetric pairs defaults to p
            (None, None) if spec.role == ParamRole::Density => continue,
            (None, None) => {
                return Err(CatalogError::Violated {
                    entry: info.id.into(),
                    predicate: format!("parameter {} given", spec.name),
                })
            }
        };
        if spec.kind == ParamKind::Integer && !v.is_integer() {
            return Err(CatalogError::NotAnInteger {
                entry: info.id.into(),
                name: spec.name.into(),
            });
        }
        out.insert(spec.name.into(), v);
    }
    Ok(out)
}

fn pick_weights(rule: WeightRule, g: &Cometric, cert: &CofactorCertificate) -> Option<Weights> {
    match rule {
        WeightRule::Fixed(a, b) => Weights::new(a, b).ok(),
        WeightRule::OneInfinity => (3..=64)
            .filter_map(|w| Weights::new(1, w).ok())
            .find(|w| check_a1(g, *w) && cert.within_degree_bounds(*w)),
    }
}

/// Builds and verifies one catalog instance.
pub fn instantiate(id: &str, given: &Params) -> Result<Bundle, CatalogError> {
    let info = entry(id)?;
    let params = resolve_params(info, given)?;
    let raw = build(&Ctx { id, p: &params })?;
    if raw.g.det().is_zero() {
        return Err(CatalogError::Violated {
            entry: id.into(),
            predicate: "det g != 0".into(),
        });
    }
    let boundary = BoundarySpec::new(raw.boundary).map_err(|error| CatalogError::Algebra {
        entry: id.into(),
        error,
    })?;
    let certificate = check_a2_a3(&raw.g, &boundary).map_err(|error| CatalogError::Algebra {
        entry: id.into(),
        error,
    })?;
    let weights = pick_weights(info.weights, &raw.g, &certificate).ok_or_else(|| CatalogError::NoWeight(id.into()))?;
    if !check_a1(&raw.g, weights) || !certificate.within_degree_bounds(weights) {
        return Err(CatalogError::NoWeight(id.into()));
    }
    if let Some(det) = &raw.det {
        if &det.expand() != raw.g.det() {
            return Err(CatalogError::DetMismatch(id.into()));
        }
    }
    if let Some(points) = &raw.singular {
        let gamma = boundary.product();
        let (gx, gy) = (gamma.partial_x(), gamma.partial_y());
        for s in points {
            if !(gamma.eval(&s.x, &s.y).is_zero() && gx.eval(&s.x, &s.y).is_zero() && gy.eval(&s.x, &s.y).is_zero()) {
                return Err(CatalogError::Violated {
                    entry: id.into(),
                    predicate: format!("singular point ({}, {}) on Γ", s.x, s.y),
                });
            }
        }
    }
    let integrability = integrability_constraints(id, &params).ok();
    Ok(Bundle {
        id: id.into(),
        params,
        weights,
        metric: raw.g,
        boundary,
        certificate,
        domain: raw.domain,
        density: raw.density,
        integrability,
        det_factorization: raw.det,
        reducible: raw.reducible,
        singular_points: raw.singular,
        summary: info.summary.to_string(),
    })
}

pub fn singular_points(id: &str, params: &Params) -> Result<Vec<SingularPoint>, CatalogError> {
    instantiate(id, params)?
        .singular_points
        .ok_or_else(|| CatalogError::NoSingularityData(id.into()))
}

/// `name=value` pairs as a parameter map.
pub fn params(pairs: &[(&str, Rational)]) -> Params {
    pairs.iter().map(|(k, v)| (String::from(*k), v.clone())).collect()
}

#[cfg(test)]
mod tests;
