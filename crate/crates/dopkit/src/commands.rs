//! One function per subcommand. Each returns the JSON artifact, a one-line
//! human summary and whether the mathematical check passed.

use std::collections::BTreeMap;

use dopkit_core::algdop::{check_a1, solve_metric, tangency_cofactors, AlgError, BoundarySpec, Cometric};
use dopkit_core::branches::{check_condition_11, check_eq_12, valuation, BranchGerm, Valuation, Verdict};
use dopkit_core::catalog::{
    self, catalog_curvature, instantiate, realization_map, sphere_points, CatalogError, DomainSpec, EntryInfo,
    ParamKind, ParamRole, Params, WeightRule, ENTRIES,
};
use dopkit_core::curvature::gaussian_curvature;
use dopkit_core::density::{density_family, integrability_constraints, DensityFamily, DensitySpec};
use dopkit_core::rational::{format_rational, frac, to_f64};
use dopkit_core::spectral::{analyze, build_quadrature, monomial_name, FiltrationBasis, SpectralError, SpectralReport};
use dopkit_core::{RatPoly2, Rational, Weights};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cli::{CatalogAction, Command, SpectralArgs};
use crate::config::{RunConfig, Tolerances};
use crate::format::{
    from_json, to_json, BoundaryFile, BundleFile, CertificateFile, ConstraintFile, DensityFile, GermFile, MetricFile,
    Poly, Rat,
};
use crate::manifest::{check_all, parse_manifest, InstanceResult, DEFAULT_MANIFEST};
use crate::{read_input, CliError};

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    /// Pretty-printed JSON, newline terminated.
    pub json: String,
    pub summary: String,
    pub passed: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, passed: bool, summary: String) -> Self {
        Outcome {
            json: to_json(value),
            summary,
            passed,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Verify { metric, boundary } => verify(cfg, metric, boundary),
        Command::SolveMetric { boundary } => solve(cfg, boundary),
        Command::Density {
            metric,
            boundary,
            extra,
            at,
            entry,
            ..
        } => density(cfg, metric, boundary, extra, at.as_deref(), entry.as_deref()),
        Command::BranchCheck { germ, metric, boundary } => branch_check(germ, metric, boundary.as_deref()),
        Command::Catalog { action } => match action {
            CatalogAction::List => Ok(catalog_list()),
            CatalogAction::Show { id } => catalog_show(cfg, id),
            CatalogAction::Instantiate { id, .. } => catalog_instantiate(cfg, id),
            CatalogAction::Check { manifest } => catalog_check(manifest.as_deref()),
        },
        Command::Spectral(args) => spectral(cfg, args),
        Command::Curvature { entry, metric, at, .. } => curvature(cfg, entry.as_deref(), metric.as_deref(), at),
        Command::Realize { m, n, count } => realize(cfg, *m, *n, *count),
    }
}

fn load<T: for<'de> serde::Deserialize<'de>>(path: &str) -> Result<T, CliError> {
    let text = read_input(path)?;
    from_json(&text).map_err(|e| CliError::format(path, e))
}

fn load_metric(path: &str) -> Result<Cometric, CliError> {
    Ok(load::<MetricFile>(path)?.to_metric())
}

fn load_boundary(path: &str) -> Result<BoundarySpec, CliError> {
    load::<BoundaryFile>(path)?
        .to_spec()
        .map_err(|e| CliError::format(path, e))
}

fn require_weights(cfg: &RunConfig) -> Result<Weights, CliError> {
    cfg.weights
        .ok_or_else(|| CliError::Usage("this command needs --weights W1,W2".into()))
}

fn rat(r: &Rational) -> Rat {
    Rat(r.clone())
}

fn catalog_error(e: CatalogError) -> CliError {
    match e {
        CatalogError::UnknownEntry(_)
        | CatalogError::UnknownParameter { .. }
        | CatalogError::NotAnInteger { .. }
        | CatalogError::Violated { .. }
        | CatalogError::OutsideDomain
        | CatalogError::NoDomain(_)
        | CatalogError::NoSingularityData(_) => CliError::Usage(e.to_string()),
        _ => CliError::Math(e.to_string()),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    weights: [u32; 2],
    a1: bool,
    a2: bool,
    a3: bool,
    degree_bounds: bool,
    certificate: Option<CertificateFile>,
    reason: Option<String>,
}

fn verify(cfg: &RunConfig, metric: &str, boundary: &str) -> Result<Outcome, CliError> {
    let g = load_metric(metric)?;
    let b = load_boundary(boundary)?;
    let w = require_weights(cfg)?;
    let gamma = b.product();
    let a1 = check_a1(&g, w);
    let a2 = !g.det().is_zero() && matches!(RatPoly2::divides(gamma, g.det()), Ok(Some(_)));
    let tangent = tangency_cofactors(&g, gamma);
    let reason = match (&tangent, a2) {
        (_, false) if g.det().is_zero() => Some(AlgError::DegenerateMetric.to_string()),
        (_, false) => Some(AlgError::BoundaryNotInDeterminant.to_string()),
        (Err(e), true) => Some(e.to_string()),
        _ => None,
    };
    let cert = tangent.ok();
    let degree_bounds = cert.as_ref().is_some_and(|c| c.within_degree_bounds(w));
    let report = VerifyReport {
        weights: [w.w1(), w.w2()],
        a1,
        a2,
        a3: cert.is_some(),
        degree_bounds,
        certificate: cert.as_ref().map(CertificateFile::from_certificate),
        reason,
    };
    let passed = a1 && a2 && report.a3 && degree_bounds;
    let summary = format!(
        "A1 {}, A2 {}, A3 {}, cofactor degrees {}",
        ok(a1),
        ok(a2),
        ok(report.a3),
        ok(degree_bounds)
    );
    Ok(Outcome::new(&report, passed, summary))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

#[derive(Serialize)]
struct SolutionFile {
    metric: MetricFile,
    certificate: CertificateFile,
}

#[derive(Serialize)]
struct SolveReport {
    weights: [u32; 2],
    dimension: usize,
    basis: Vec<SolutionFile>,
}

fn solve(cfg: &RunConfig, boundary: &str) -> Result<Outcome, CliError> {
    let b = load_boundary(boundary)?;
    let w = require_weights(cfg)?;
    let basis: Vec<SolutionFile> = solve_metric(&b, w)
        .iter()
        .map(|s| SolutionFile {
            metric: MetricFile::from_metric(&s.metric),
            certificate: CertificateFile::from_certificate(&s.certificate),
        })
        .collect();
    let report = SolveReport {
        weights: [w.w1(), w.w2()],
        dimension: basis.len(),
        basis,
    };
    let summary = format!("solution space of dimension {} at weights {w}", report.dimension);
    Ok(Outcome::new(&report, report.dimension > 0, summary))
}

/// `p, q, r, s, u, v, p7, p8, ...`.
pub fn factor_name(k: usize) -> String {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "u", "v"];
    NAMES.get(k).map_or_else(|| format!("p{}", k + 1), |s| s.to_string())
}

/// Member of the family whose power of factor `k` is `p_k − 1`; `c1, c2, …`
/// weight the generators without a factor part. Missing names default to
/// `p_k = 1` and `c_j = 0`.
pub fn family_member(family: &DensityFamily, at: &Params) -> Result<DensitySpec, CliError> {
    let nf = family.factors.len();
    let mut target = vec![Rational::from_integer(0.into()); nf];
    let mut consumed = 0;
    for (k, slot) in target.iter_mut().enumerate() {
        if let Some(p) = at.get(&factor_name(k)) {
            *slot = p - Rational::from_integer(1.into());
            consumed += 1;
        }
    }
    let mut t = Vec::with_capacity(family.generators.len());
    let mut q_only = 0;
    for gen in &family.generators {
        match gen
            .factors
            .iter()
            .position(|(_, e)| *e != Rational::from_integer(0.into()))
        {
            Some(k) => t.push(&target[k] / &gen.factors[k].1),
            None => {
                q_only += 1;
                match at.get(&format!("c{q_only}")) {
                    Some(c) => {
                        consumed += 1;
                        t.push(c.clone());
                    }
                    None => t.push(Rational::from_integer(0.into())),
                }
            }
        }
    }
    if consumed != at.len() {
        let known: Vec<String> = (0..nf)
            .map(factor_name)
            .chain((1..=q_only).map(|j| format!("c{j}")))
            .collect();
        let unknown: Vec<&String> = at.keys().filter(|k| !known.contains(k)).collect();
        return Err(CliError::Usage(format!(
            "unknown density parameter(s) {unknown:?}; this family takes {known:?}"
        )));
    }
    let member = family.member(&t);
    if member.factors.iter().map(|(_, e)| e).ne(target.iter()) {
        return Err(CliError::Math(
            "no member of the density family has the requested exponents".into(),
        ));
    }
    Ok(member)
}

#[derive(Serialize)]
struct DensityReport {
    weights: [u32; 2],
    factors: Vec<Poly>,
    dimension: usize,
    generators: Vec<DensityFile>,
    member: Option<DensityFile>,
    /// Every `p_k > 0`, the generic condition for local integrability.
    exponents_admissible: Option<bool>,
    integrability: Option<Vec<ConstraintFile>>,
}

fn density(
    cfg: &RunConfig,
    metric: &str,
    boundary: &str,
    extra: &[String],
    at: Option<&str>,
    entry: Option<&str>,
) -> Result<Outcome, CliError> {
    let g = load_metric(metric)?;
    let b = load_boundary(boundary)?;
    let extra = extra
        .iter()
        .map(|p| load::<Poly>(p).map(|p| p.0))
        .collect::<Result<Vec<_>, _>>()?;
    let w = require_weights(cfg)?;
    let family = density_family(&g, &b, &extra, w).map_err(|e| CliError::Math(e.to_string()))?;
    let at = at.map(crate::config::parse_assignments).transpose()?;
    let member = at.as_ref().map(|a| family_member(&family, a)).transpose()?;
    let admissible = member
        .as_ref()
        .map(|m| m.factors.iter().all(|(_, e)| *e > Rational::from_integer((-1).into())));
    let integrability = match entry {
        Some(id) => {
            let mut params = cfg.params.clone();
            if let Some(a) = &at {
                params.extend(a.clone());
            }
            let report = integrability_constraints(id, &params).map_err(|e| CliError::Usage(e.to_string()))?;
            Some(report)
        }
        None => None,
    };
    let passed =
        family.dimension() > 0 && admissible.unwrap_or(true) && integrability.as_ref().is_none_or(|r| r.holds());
    let report = DensityReport {
        weights: [w.w1(), w.w2()],
        factors: family.factors.iter().cloned().map(Poly).collect(),
        dimension: family.dimension(),
        generators: family.generators.iter().map(DensityFile::from_spec).collect(),
        member: member.as_ref().map(DensityFile::from_spec),
        exponents_admissible: admissible,
        integrability: integrability.as_ref().map(|r| {
            r.constraints
                .iter()
                .map(|c| ConstraintFile {
                    text: c.text.clone(),
                    holds: c.holds,
                })
                .collect()
        }),
    };
    let mut summary = format!("density family of dimension {}", family.dimension());
    if let Some(r) = &integrability {
        summary += &format!(", integrability {}", ok(r.holds()));
    }
    if let Some(a) = admissible {
        summary += &format!(", exponents {}", ok(a));
    }
    Ok(Outcome::new(&report, passed, summary))
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::False => "false",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum ValuationOut {
    Finite(i64),
    Word(&'static str),
}

fn valuation_out(v: Valuation) -> ValuationOut {
    match v {
        Valuation::Finite(n) => ValuationOut::Finite(n),
        Valuation::Infinite => ValuationOut::Word("infinite"),
        Valuation::Inconclusive => ValuationOut::Word("inconclusive"),
    }
}

#[derive(Serialize)]
struct BranchReport {
    trunc_order: i64,
    condition_11: &'static str,
    eq_12: Option<&'static str>,
    eq_12_error: Option<String>,
    valuations: BTreeMap<&'static str, ValuationOut>,
}

pub fn germ_from_file(f: &GermFile) -> Result<BranchGerm, String> {
    let xi = f.xi.iter().map(|(e, c)| (*e, c.0.clone())).collect();
    let eta = f.eta.iter().map(|(e, c)| (*e, c.0.clone())).collect();
    let germ = if f.exact {
        BranchGerm::exact(xi, eta)
    } else {
        BranchGerm::new(xi, eta, f.trunc_order)
    };
    germ.map_err(|e| e.to_string())
}

fn branch_check(germ: &str, metric: &str, boundary: Option<&str>) -> Result<Outcome, CliError> {
    let germ_path = germ;
    let germ = germ_from_file(&load::<GermFile>(germ_path)?).map_err(|e| CliError::format(germ_path, e))?;
    let g = load_metric(metric)?;
    let c11 = check_condition_11(&germ, &g);
    let (eq_12, eq_12_error) = match check_eq_12(&germ, &g) {
        Ok(v) => (Some(verdict(v)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut valuations = BTreeMap::new();
    valuations.insert("a", valuation_out(valuation(&germ, g.a())));
    valuations.insert("b", valuation_out(valuation(&germ, g.b())));
    valuations.insert("c", valuation_out(valuation(&germ, g.c())));
    if let Some(p) = boundary {
        let b = load_boundary(p)?;
        valuations.insert("boundary", valuation_out(valuation(&germ, b.product())));
    }
    let report = BranchReport {
        trunc_order: germ.trunc_order(),
        condition_11: verdict(c11),
        eq_12,
        eq_12_error,
        valuations,
    };
    let summary = format!(
        "condition (11): {}, valuation identities: {}",
        report.condition_11,
        report.eq_12.unwrap_or("n/a")
    );
    Ok(Outcome::new(&report, c11 == Verdict::True, summary))
}

#[derive(Serialize)]
struct ParamOut {
    name: &'static str,
    kind: &'static str,
    role: &'static str,
    default: Option<Rat>,
}

#[derive(Serialize)]
struct EntryOut {
    id: &'static str,
    summary: &'static str,
    weights: String,
    params: Vec<ParamOut>,
}

fn entry_out(e: &EntryInfo) -> EntryOut {
    EntryOut {
        id: e.id,
        summary: e.summary,
        weights: match e.weights {
            WeightRule::Fixed(a, b) => format!("{a},{b}"),
            WeightRule::OneInfinity => "1,W".into(),
        },
        params: e
            .params
            .iter()
            .map(|p| ParamOut {
                name: p.name,
                kind: match p.kind {
                    ParamKind::Integer => "integer",
                    ParamKind::Rational => "rational",
                },
                role: match p.role {
                    ParamRole::Geometry => "geometry",
                    ParamRole::Density => "density",
                },
                default: p.default.map(|(n, d)| Rat(frac(n, d))),
            })
            .collect(),
    }
}

fn catalog_list() -> Outcome {
    let entries: Vec<EntryOut> = ENTRIES.iter().map(entry_out).collect();
    let summary = format!("{} catalog entries", entries.len());
    Outcome::new(&entries, true, summary)
}

#[derive(Serialize)]
struct ShowOut {
    entry: EntryOut,
    bundle: Option<BundleFile>,
    bundle_error: Option<String>,
}

fn catalog_show(cfg: &RunConfig, id: &str) -> Result<Outcome, CliError> {
    let info = catalog::entry(id).map_err(catalog_error)?;
    let (bundle, bundle_error) = match instantiate(id, &cfg.params) {
        Ok(b) => (Some(BundleFile::from_bundle(&b)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let summary = format!("{}: {}", info.id, info.summary);
    Ok(Outcome::new(
        &ShowOut {
            entry: entry_out(info),
            bundle,
            bundle_error,
        },
        true,
        summary,
    ))
}

fn catalog_instantiate(cfg: &RunConfig, id: &str) -> Result<Outcome, CliError> {
    let b = instantiate(id, &cfg.params).map_err(catalog_error)?;
    let file = BundleFile::from_bundle(&b);
    let summary = format!("{} at weights {}: certificate verified", b.id, b.weights);
    Ok(Outcome::new(&file, true, summary))
}

#[derive(Serialize)]
struct CheckOut {
    instances: usize,
    passed: usize,
    results: Vec<InstanceResult>,
}

fn catalog_check(manifest: Option<&str>) -> Result<Outcome, CliError> {
    let (path, text) = match manifest {
        Some(p) => (p, read_input(p)?),
        None => ("<built-in manifest>", DEFAULT_MANIFEST.to_string()),
    };
    let grid = parse_manifest(&text).map_err(|e| CliError::format(path, e))?;
    let results = check_all(&grid);
    let passed = results.iter().filter(|r| r.passed()).count();
    let out = CheckOut {
        instances: results.len(),
        passed,
        results,
    };
    let summary = format!("{passed}/{} instances certified", out.instances);
    Ok(Outcome::new(&out, passed == out.instances, summary))
}

#[derive(Serialize)]
struct EigenOut {
    degree: u64,
    re: f64,
    im: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct SpectralOut {
    id: String,
    weights: [u32; 2],
    degree: u64,
    order: usize,
    invariance: bool,
    witness: Option<String>,
    symmetry_defect: f64,
    gram_residual: f64,
    mass: f64,
    mass_convergence: f64,
    all_real: bool,
    max_imag: f64,
    max_real: f64,
    defective_degrees: Vec<u64>,
    eigenvalues: Vec<EigenOut>,
    tolerances: TolOut,
    passed: bool,
}

#[derive(Serialize)]
struct TolOut {
    symmetry: f64,
    gram: f64,
    imag: f64,
    convergence: f64,
}

/// Everything the spectral command needs from a bundle file.
pub struct SpectralInput {
    pub metric: Cometric,
    pub density: DensitySpec,
    pub domain: DomainSpec,
    pub weights: Weights,
}

pub fn spectral_input(file: &BundleFile, weights: Option<Weights>) -> Result<SpectralInput, String> {
    let density = file.density.as_ref().ok_or("bundle has no density")?.to_spec();
    let domain = file
        .domain
        .as_ref()
        .ok_or("bundle has no domain")?
        .to_spec()
        .map_err(|e| e.to_string())?;
    let weights = match weights {
        Some(w) => w,
        None => file.weights().map_err(|e| e.to_string())?,
    };
    Ok(SpectralInput {
        metric: file.metric.to_metric(),
        density,
        domain,
        weights,
    })
}

/// `|m(order) − m(3 order / 2)| / m(order)` for the total mass.
pub fn mass_convergence(domain: &DomainSpec, rho: &DensitySpec, order: usize) -> Result<f64, SpectralError> {
    let coarse = build_quadrature(domain, rho, order)?.mass();
    let fine = build_quadrature(domain, rho, order + order.div_ceil(2))?.mass();
    Ok((coarse - fine).abs() / coarse.abs())
}

/// Pass/fail of a report against the tolerances.
pub fn spectral_passes(r: &SpectralReport, convergence: f64, tol: &Tolerances) -> bool {
    r.invariance
        && r.symmetry_defect <= tol.symmetry
        && r.gram_residual <= tol.gram
        && r.max_imag() <= tol.imag
        && r.max_real() <= tol.imag
        && convergence <= tol.convergence
}

fn spectral(cfg: &RunConfig, args: &SpectralArgs) -> Result<Outcome, CliError> {
    let file: BundleFile = load(&args.bundle)?;
    let input = spectral_input(&file, cfg.weights).map_err(|e| CliError::format(&args.bundle, e))?;
    let math = |e: SpectralError| CliError::Math(e.to_string());
    let report = analyze(
        &input.metric,
        &input.density,
        &input.domain,
        input.weights,
        cfg.degree,
        cfg.order,
    )
    .map_err(math)?;
    let convergence = mass_convergence(&input.domain, &input.density, cfg.order).map_err(math)?;
    if let Some(path) = &args.nodes_csv {
        let rule = build_quadrature(&input.domain, &input.density, cfg.order).map_err(math)?;
        let mut w = csv_writer(path)?;
        w.write_record(["x", "y", "weight"]).map_err(|e| csv_err(path, e))?;
        for n in rule.nodes() {
            w.serialize((n[0], n[1], n[2])).map_err(|e| csv_err(path, e))?;
        }
        w.flush().map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    if let Some(path) = &args.eigen_csv {
        let basis = FiltrationBasis::new(input.weights, cfg.degree);
        let mut w = csv_writer(path)?;
        let header: Vec<String> = ["degree".to_string(), "eigenvalue".to_string()]
            .into_iter()
            .chain(basis.monomials().iter().map(|&e| monomial_name(e)))
            .collect();
        w.write_record(&header).map_err(|e| csv_err(path, e))?;
        for block in &report.blocks {
            for pair in &block.eigenpairs {
                let row: Vec<String> = [block.degree.to_string(), pair.value.to_string()]
                    .into_iter()
                    .chain(pair.coeffs.iter().map(f64::to_string))
                    .collect();
                w.write_record(&row).map_err(|e| csv_err(path, e))?;
            }
        }
        w.flush().map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    let passed = spectral_passes(&report, convergence, &cfg.tol);
    let out = SpectralOut {
        id: file.id.clone(),
        weights: [input.weights.w1(), input.weights.w2()],
        degree: cfg.degree,
        order: cfg.order,
        invariance: report.invariance,
        witness: report.witness.map(monomial_name),
        symmetry_defect: report.symmetry_defect,
        gram_residual: report.gram_residual,
        mass: report.mass,
        mass_convergence: convergence,
        all_real: report.blocks.iter().all(|b| b.all_real),
        max_imag: report.max_imag(),
        max_real: report.max_real(),
        defective_degrees: report.defective_blocks(),
        eigenvalues: report
            .blocks
            .iter()
            .flat_map(|b| {
                b.eigenvalues.iter().map(|e| EigenOut {
                    degree: b.degree,
                    re: e.re,
                    im: e.im,
                    multiplicity: e.multiplicity,
                })
            })
            .collect(),
        tolerances: TolOut {
            symmetry: cfg.tol.symmetry,
            gram: cfg.tol.gram,
            imag: cfg.tol.imag,
            convergence: cfg.tol.convergence,
        },
        passed,
    };
    let summary = format!(
        "{}: invariance {}, symmetry defect {:.2e}, Gram residual {:.2e}, max Re λ {:.2e}, max |Im λ| {:.1e}",
        out.id,
        ok(out.invariance),
        out.symmetry_defect,
        out.gram_residual,
        out.max_real,
        out.max_imag
    );
    Ok(Outcome::new(&out, passed, summary))
}

fn csv_writer(path: &str) -> Result<csv::Writer<Box<dyn std::io::Write>>, CliError> {
    let sink: Box<dyn std::io::Write> = if path == "-" {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::fs::File::create(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            source: e,
        })?)
    };
    Ok(csv::Writer::from_writer(sink))
}

fn csv_err(path: &str, e: csv::Error) -> CliError {
    CliError::Io {
        path: path.to_string(),
        source: e.into(),
    }
}

#[derive(Serialize)]
struct CurvatureOut {
    x: Rat,
    y: Rat,
    /// Curvature in the catalog normalization (twice that of `g⁻¹`).
    value: Rat,
    /// Curvature of the Riemannian metric `g⁻¹`.
    inverse_metric: Rat,
    value_f64: f64,
}

fn curvature(cfg: &RunConfig, entry: Option<&str>, metric: Option<&str>, at: &str) -> Result<Outcome, CliError> {
    let (x, y) = crate::config::parse_point(at)?;
    let k = match (entry, metric) {
        (Some(id), _) => {
            catalog_curvature(id, &cfg.params, &x, &y)
                .map_err(catalog_error)?
                .inverse_metric
        }
        (None, Some(path)) => {
            let g = load_metric(path)?;
            gaussian_curvature(&g, &x, &y).map_err(|e| CliError::Math(e.to_string()))?
        }
        (None, None) => return Err(CliError::Usage("curvature needs --entry or --metric".into())),
    };
    let value = &k * Rational::from_integer(2.into());
    let summary = format!(
        "curvature at ({}, {}): {} (g^-1 normalization {})",
        format_rational(&x),
        format_rational(&y),
        format_rational(&value),
        format_rational(&k)
    );
    let out = CurvatureOut {
        x: rat(&x),
        y: rat(&y),
        value_f64: to_f64(&value),
        value: Rat(value),
        inverse_metric: Rat(k),
    };
    Ok(Outcome::new(&out, true, summary))
}

#[derive(Serialize)]
struct RealizeOut {
    m: u32,
    n: u32,
    count: usize,
    seed: u64,
    shift: [f64; 3],
    /// Smallest `(1 − X)^m Xⁿ − Y²` over the images.
    min_boundary_value: f64,
    inside: bool,
    touches_boundary: bool,
}

/// Lower bound on the boundary polynomial tolerated as rounding.
pub const REALIZE_INSIDE_TOL: f64 = 1e-12;
/// Distance that counts as reaching the boundary.
pub const REALIZE_BOUNDARY_TOL: f64 = 1e-6;

/// Cranley–Patterson shift drawn from the seed.
pub fn sphere_shift(seed: u64) -> [f64; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    [rng.gen(), rng.gen(), rng.gen()]
}

/// Minimum of the boundary polynomial over the realized sample.
pub fn realize_min(m: u32, n: u32, points: &[(Complex64, Complex64)]) -> Result<f64, CatalogError> {
    let mut min = f64::INFINITY;
    for &(z1, z2) in points {
        min = min.min(realization_map(m, n, z1, z2)?.boundary_value);
    }
    Ok(min)
}

fn realize(cfg: &RunConfig, m: u32, n: u32, count: usize) -> Result<Outcome, CliError> {
    if m == 0 || n == 0 || count == 0 {
        return Err(CliError::Usage("m, n and count must be positive".into()));
    }
    let shift = sphere_shift(cfg.seed);
    let pts = sphere_points(count, shift);
    let min = realize_min(m, n, &pts).map_err(|e| CliError::Math(e.to_string()))?;
    let out = RealizeOut {
        m,
        n,
        count,
        seed: cfg.seed,
        shift,
        min_boundary_value: min,
        inside: min >= -REALIZE_INSIDE_TOL,
        touches_boundary: min <= REALIZE_BOUNDARY_TOL,
    };
    let summary = format!("{count} sphere points, (m, n) = ({m}, {n}): min boundary value {min:.3e}");
    Ok(Outcome::new(&out, out.inside && out.touches_boundary, summary))
}
