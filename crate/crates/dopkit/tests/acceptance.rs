//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use dopkit::commands::{realize_min, sphere_shift, REALIZE_BOUNDARY_TOL, REALIZE_INSIDE_TOL};
use dopkit::manifest::{check_all, parse_manifest, DEFAULT_MANIFEST};
use dopkit_core::algdop::{solve_metric, BoundarySpec, Cometric};
use dopkit_core::branches::{check_condition_11, on_curve, BranchGerm, Verdict, WProjParam};
use dopkit_core::catalog::{catalog_curvature, g28, gamma25, instantiate, params, sphere_points, Bundle, Params};
use dopkit_core::density::{density_family, integrability_constraints, DensitySpec};
use dopkit_core::rational::{frac, int};
use dopkit_core::spectral::analyze;
use dopkit_core::upoly::UniPoly;
use dopkit_core::{RatPoly2, Rational};
use num_traits::Zero;

const SPECTRAL_SYMMETRY_TOL: f64 = 1e-8;
const SPECTRAL_GRAM_TOL: f64 = 1e-8;
const SPECTRAL_IMAG_TOL: f64 = 1e-9;
const CURVATURE_GAP: f64 = 1e-3;
const SPHERE_SAMPLES: usize = 1000;
const GRID_MIN_INSTANCES: usize = 60;
const BRANCH_TRUNCATION: i64 = 64;

type Check = Result<String, String>;

fn p(s: &str) -> RatPoly2 {
    s.parse().expect("polynomial literal")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bundle(id: &str, ps: &[(&str, Rational)]) -> Result<Bundle, String> {
    instantiate(id, &params(ps)).map_err(|e| e.to_string())
}

/// `a = λ b` entrywise with one common `λ`.
fn same_up_to_scalar(a: &Cometric, b: &Cometric) -> Option<Rational> {
    let pairs = [(a.a(), b.a()), (a.b(), b.b()), (a.c(), b.c())];
    let mut lambda: Option<Rational> = None;
    for (x, y) in pairs {
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let l = x.proportional_to(y)?;
        if lambda.as_ref().is_some_and(|m| *m != l) {
            return None;
        }
        lambda = Some(l);
    }
    lambda
}

fn c1_solver_uniqueness() -> Check {
    let boundary = BoundarySpec::single(gamma25()).map_err(|e| e.to_string())?;
    let sols = solve_metric(&boundary, dopkit_core::Weights::new(1, 2).unwrap());
    ensure(sols.len() == 1, || {
        format!("solution space has dimension {}", sols.len())
    })?;
    let l = same_up_to_scalar(&sols[0].metric, &g28()).ok_or("generator is not proportional to g28")?;
    Ok(format!("dimension 1, generator = {l} * g28"))
}

fn c2_determinant_identities() -> Check {
    let lhs = &gamma25().scale(&int(25)) + g28().det();
    ensure(lhs.is_zero(), || format!("25*Gamma + det g28 = {lhs}"))?;
    let g = bundle("P57", &[])?.metric;
    let rhs = (p("8*y - 3*x^2 - 6*x + 1") * p("x^3 - y^2")).scale(&int(36));
    ensure(*g.det() == rhs, || format!("det g = {}", g.det()))?;
    Ok("25*Gamma25 + det g28 = 0; det g = 36*Gamma1*Gamma2".into())
}

fn c3_catalog_grid() -> Check {
    let grid = parse_manifest(DEFAULT_MANIFEST)?;
    ensure(grid.len() >= GRID_MIN_INSTANCES, || {
        format!("only {} instances", grid.len())
    })?;
    for inst in &grid {
        for key in ["m", "n"] {
            if let Some(v) = inst.params.get(key) {
                ensure(*v <= int(4), || format!("{} has {key} = {v}", inst.id))?;
            }
        }
    }
    let results = check_all(&grid);
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} {:?}: {}", r.id, r.params, r.error.clone().unwrap_or_default()))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let entries: std::collections::BTreeSet<&str> = grid.iter().map(|i| i.id.as_str()).collect();
    Ok(format!(
        "{} instances over {} entries certified",
        results.len(),
        entries.len()
    ))
}

fn c4_parametrization() -> Check {
    let t = |c: &[i64]| UniPoly::from_ints(c);
    let x = t(&[32, 32]);
    let y = &(&t(&[3, 5]) * &t(&[3, 1])).scale(&int(256));
    let z = t(&[3, 1]).pow(3);
    let phi = WProjParam::new(x, y.clone(), z).map_err(|e| e.to_string())?;
    ensure(on_curve(&phi, &gamma25()).map_err(|e| e.to_string())?, || {
        "does not vanish identically".into()
    })?;
    Ok("weighted homogenization vanishes identically in t".into())
}

fn c5_singular_points() -> Check {
    let gamma = p("8*y - 3*x^2 - 6*x + 1") * p("x^3 - y^2");
    let (gx, gy) = (gamma.partial_x(), gamma.partial_y());
    for (x, y) in [(frac(1, 9), frac(-1, 27)), (int(0), int(0)), (int(1), int(1))] {
        for f in [&gamma, &gx, &gy] {
            ensure(f.eval(&x, &y).is_zero(), || {
                format!("{f} does not vanish at ({x}, {y})")
            })?;
        }
    }
    let stored = bundle("P57", &[])?;
    ensure(*stored.boundary.product() == gamma, || {
        "catalog boundary differs".into()
    })?;
    Ok("Gamma1*Gamma2 and both partials vanish at (1/9, -1/27), (0, 0), (1, 1)".into())
}

fn c6_density_recovery() -> Check {
    let b3 = bundle("B3", &[("beta", int(0))])?;
    let fam = density_family(&b3.metric, &b3.boundary, &[], b3.weights).map_err(|e| e.to_string())?;
    ensure(fam.dimension() == 2, || {
        format!("B3 family has dimension {}", fam.dimension())
    })?;
    let expected = [p("-y"), p("y - x^2 + 1")];
    for (f, e) in fam.factors.iter().zip(&expected) {
        ensure(f.proportional_to(e).is_some(), || format!("B3 factor {f}"))?;
    }
    ensure(fam.generators.iter().all(|g| g.q.is_zero()), || {
        "B3 family has Q != 0".into()
    })?;
    for k in 0..2 {
        let mut exps = vec![(fam.factors[0].clone(), int(0)), (fam.factors[1].clone(), int(0))];
        exps[k].1 = int(1);
        ensure(fam.contains(&DensitySpec::new(exps, RatPoly2::zero())), || {
            format!("B3 misses factor {k}")
        })?;
    }
    for n in [1, 3] {
        let u1 = bundle("U1", &[("n", int(n))])?;
        let fam = density_family(&u1.metric, &u1.boundary, &[], u1.weights).map_err(|e| e.to_string())?;
        ensure(fam.dimension() == 2, || {
            format!("U1 n={n}: dimension {}", fam.dimension())
        })?;
        let gamma = p(&format!("x^{n} - y^2"));
        ensure(
            fam.factors.len() == 1 && fam.factors[0].proportional_to(&gamma).is_some(),
            || format!("U1 n={n}: factors {:?}", fam.factors),
        )?;
        for g in &fam.generators {
            ensure(
                g.q.degree_x().unwrap_or(0) <= 1 && g.q.degree_y().unwrap_or(0) == 0,
                || format!("U1 n={n}: Q = {}", g.q),
            )?;
        }
        let f = fam.factors[0].clone();
        ensure(
            fam.contains(&DensitySpec::new(vec![(f.clone(), int(1))], RatPoly2::zero())),
            || "U1 power".into(),
        )?;
        ensure(fam.contains(&DensitySpec::new(vec![(f, int(0))], p("-x"))), || {
            "U1 exponential".into()
        })?;
    }
    Ok("B3: Gamma1^(p-1) Gamma2^(q-1), Q = 0; U1 (n = 1, 3): (x^n - y^2)^(p-1) exp(-lambda x)".into())
}

fn table(id: &str, ps: &[(&str, Rational)]) -> Result<bool, String> {
    let mut all: Params = params(ps);
    if id == "B4" {
        all.extend(params(&[("m", int(2)), ("n", int(2))]));
    }
    integrability_constraints(id, &all)
        .map(|r| r.holds())
        .map_err(|e| e.to_string())
}

type IntegrabilityCase = (&'static str, Vec<(&'static str, Rational)>, bool);

fn c7_integrability() -> Check {
    let cases: [IntegrabilityCase; 6] = [
        ("B1", vec![("p", frac(3, 10))], false),
        ("B1", vec![("p", frac(1, 2))], true),
        ("B2", vec![("p", frac(1, 2)), ("q", frac(1, 2))], true),
        ("B2", vec![("p", frac(1, 2)), ("q", frac(1, 6))], false),
        ("B4", vec![("p", int(0))], false),
        ("B4", vec![("p", frac(1, 10))], true),
    ];
    for (id, ps, want) in &cases {
        let got = table(id, ps)?;
        ensure(got == *want, || format!("{id} {ps:?}: accepted = {got}"))?;
    }
    Ok("B1, B2, B4 tables accept and reject as required".into())
}

fn spectral_check(b: &Bundle, order: usize) -> Check {
    let rho = b.density.as_ref().ok_or("no density")?;
    let dom = b.domain.as_ref().ok_or("no domain")?;
    let r = analyze(&b.metric, rho, dom, b.weights, 6, order).map_err(|e| e.to_string())?;
    ensure(r.invariance, || format!("filtration broken at {:?}", r.witness))?;
    ensure(r.symmetry_defect <= SPECTRAL_SYMMETRY_TOL, || {
        format!("symmetry defect {:e}", r.symmetry_defect)
    })?;
    ensure(r.gram_residual <= SPECTRAL_GRAM_TOL, || {
        format!("Gram residual {:e}", r.gram_residual)
    })?;
    ensure(r.max_imag() <= SPECTRAL_IMAG_TOL, || {
        format!("max |Im| {:e}", r.max_imag())
    })?;
    ensure(r.max_real() <= 0.0, || format!("max Re {:e}", r.max_real()))?;
    Ok(format!(
        "defect {:.1e}, Gram residual {:.1e}, {} eigenvalues real and <= 0",
        r.symmetry_defect,
        r.gram_residual,
        r.eigenvalues().count()
    ))
}

fn c8_spectral_b3() -> Check {
    let b = bundle(
        "B3",
        &[("alpha", int(-1)), ("beta", int(0)), ("p", int(1)), ("q", int(1))],
    )?;
    spectral_check(&b, 48)
}

fn c9_spectral_b1() -> Check {
    let b = bundle("B1", &[("p", int(1))])?;
    spectral_check(&b, 64)
}

fn c10_curvature() -> Check {
    let ps = params(&[("n", int(2)), ("c02", int(-1))]);
    let pts = [
        (frac(1, 2), int(0)),
        (frac(1, 3), frac(1, 5)),
        (frac(1, 4), frac(-1, 3)),
        (frac(2, 3), frac(1, 10)),
        (frac(1, 10), frac(-1, 2)),
    ];
    for (x, y) in &pts {
        let k = catalog_curvature("B5", &ps, x, y).map_err(|e| e.to_string())?.value;
        ensure(k == frac(1, 2), || format!("B5 curvature {k} at ({x}, {y})"))?;
    }
    let ps = params(&[("m", int(1)), ("n", int(2)), ("c02", int(-1))]);
    let k0 = catalog_curvature("B4", &ps, &int(0), &int(0))
        .map_err(|e| e.to_string())?
        .value;
    let k1 = catalog_curvature("B4", &ps, &frac(1, 2), &int(0))
        .map_err(|e| e.to_string())?
        .value;
    let gap = dopkit_core::rational::to_f64(&(&k0 - &k1)).abs();
    ensure(gap >= CURVATURE_GAP, || format!("B4 curvature gap {gap:e}"))?;
    Ok(format!("B5 K = 1/2 at 5 points; B4 K(0,0) = {k0}, K(1/2,0) = {k1}"))
}

fn c11_realization() -> Check {
    let pts = sphere_points(SPHERE_SAMPLES, sphere_shift(0));
    let mut detail = Vec::new();
    for (m, n) in [(1, 1), (1, 2), (2, 3)] {
        let min = realize_min(m, n, &pts).map_err(|e| e.to_string())?;
        ensure(min >= -REALIZE_INSIDE_TOL, || {
            format!("({m}, {n}): boundary value {min:e}")
        })?;
        ensure(min <= REALIZE_BOUNDARY_TOL, || format!("({m}, {n}): closest {min:e}"))?;
        detail.push(format!("({m},{n}) min {min:.1e}"));
    }
    Ok(detail.join(", "))
}

fn c12_branches() -> Check {
    let mut seen = 0;
    for n in 1..=3 {
        let b = bundle("P43.ii", &[("n", int(n))])?;
        let germ =
            BranchGerm::new(vec![(2, int(1))], vec![(n, int(1))], BRANCH_TRUNCATION).map_err(|e| e.to_string())?;
        let v = check_condition_11(&germ, &b.metric);
        ensure(v == Verdict::True, || format!("P43.ii n={n}: {v:?}"))?;
        seen += 1;
    }
    let p55: [&[(&str, Rational)]; 3] = [
        &[],
        &[("alpha", int(2)), ("beta", frac(1, 2)), ("mu", int(1))],
        &[("alpha", frac(-1, 3))],
    ];
    for ps in p55 {
        let b = bundle("P55.ii", ps)?;
        let germ =
            BranchGerm::new(vec![(1, int(1))], vec![(2, int(1))], BRANCH_TRUNCATION).map_err(|e| e.to_string())?;
        let v = check_condition_11(&germ, &b.metric);
        ensure(v == Verdict::True, || format!("P55.ii {ps:?}: {v:?}"))?;
        seen += 1;
    }
    Ok(format!("{seen} instances certified at truncation {BRANCH_TRUNCATION}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "solver uniqueness",
            budget: secs(5),
            run: c1_solver_uniqueness,
        },
        Criterion {
            id: 2,
            name: "determinant identities",
            budget: None,
            run: c2_determinant_identities,
        },
        Criterion {
            id: 3,
            name: "catalog-wide certificates",
            budget: secs(60),
            run: c3_catalog_grid,
        },
        Criterion {
            id: 4,
            name: "parametrization identity",
            budget: None,
            run: c4_parametrization,
        },
        Criterion {
            id: 5,
            name: "singular points",
            budget: None,
            run: c5_singular_points,
        },
        Criterion {
            id: 6,
            name: "density recovery",
            budget: None,
            run: c6_density_recovery,
        },
        Criterion {
            id: 7,
            name: "integrability tables",
            budget: None,
            run: c7_integrability,
        },
        Criterion {
            id: 8,
            name: "spectral desk test B3",
            budget: secs(30),
            run: c8_spectral_b3,
        },
        Criterion {
            id: 9,
            name: "spectral desk test B1",
            budget: secs(120),
            run: c9_spectral_b1,
        },
        Criterion {
            id: 10,
            name: "curvature",
            budget: None,
            run: c10_curvature,
        },
        Criterion {
            id: 11,
            name: "realization map",
            budget: secs(5),
            run: c11_realization,
        },
        Criterion {
            id: 12,
            name: "branch conditions",
            budget: None,
            run: c12_branches,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut result = (c.run)();
        let took = start.elapsed();
        if let (Ok(_), Some(b)) = (&result, c.budget) {
            if took > b {
                result = Err(format!("took {took:.2?}, budget {b:?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS  {:>2}  {:<28} {:>9.2?}  {detail}", c.id, c.name, took),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {:<28} {:>9.2?}  {why}", c.id, c.name, took);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
