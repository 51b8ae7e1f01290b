use super::realize::sphere_points;
use super::*;
use crate::algdop::BoundarySpec;
use crate::density::density_family;
use crate::rational::to_f64;
use num_complex::Complex64;

fn inst(id: &str, ps: &[(&str, Rational)]) -> Bundle {
    match instantiate(id, &params(ps)) {
        Ok(b) => b,
        Err(e) => panic!("{id} {ps:?}: {e}"),
    }
}

fn required(id: &str) -> Vec<(&'static str, Rational)> {
    match id {
        "P43.i" | "B4" => vec![("m", int(1)), ("n", int(2))],
        "P43.ii" | "P43.iii" | "P44.i" | "B5" | "U1" => vec![("n", int(3))],
        _ => vec![],
    }
}

#[test]
fn every_entry_instantiates_with_defaults() {
    for e in ENTRIES {
        let b = inst(e.id, &required(e.id));
        assert!(b.certificate.verify(&b.metric, b.boundary.product()), "{}", e.id);
        assert!(check_a1(&b.metric, b.weights), "{}", e.id);
    }
}

#[test]
fn one_infinity_grid() {
    let c02s = [frac(-1, 1), frac(-1, 3), int(0), frac(5, 2)];
    for m in 1..=4 {
        for n in 1..=4 {
            for c02 in &c02s {
                inst("P43.i", &[("m", int(m)), ("n", int(n)), ("c02", c02.clone())]);
            }
        }
    }
    for n in 0..=4 {
        for kk in 0..=1 {
            for x0 in 0..=1 {
                for c02 in &c02s {
                    // x0 = 0 with c02 = -n^2/4 makes det g vanish
                    if (n == 0 && c02.is_zero()) || (x0 == 0 && *c02 == frac(-n * n, 4)) {
                        continue;
                    }
                    let ps = [("n", int(n)), ("k", int(kk)), ("x0", int(x0)), ("c02", c02.clone())];
                    inst("P43.iii", &ps);
                }
            }
        }
    }
    for n in 1..=4 {
        inst("P44.i", &[("n", int(n)), ("k", int(1)), ("c01", frac(2, 3))]);
        inst("U1", &[("n", int(n)), ("c02", frac(-1, 2))]);
        inst("B5", &[("n", int(n)), ("c02", frac(-1, 2))]);
    }
    inst("P44.ii", &[("b11", frac(1, 2)), ("c01", int(3))]);
    inst(
        "P44.iii",
        &[("a01", int(0)), ("a02", int(-1)), ("b11", int(2)), ("c11", frac(1, 3))],
    );
    inst("P44.iv", &[("a20", int(1)), ("b11", int(-1)), ("c10", int(2))]);
    inst("P44.v", &[("c10", int(1))]);
    inst("P44.vi", &[("c01", int(1))]);
}

#[test]
fn determinant_identities() {
    let b1 = inst("B1", &[]);
    assert!((&(gamma25().scale(&int(25))) + b1.metric.det()).is_zero());
    let b2 = inst("B2", &[]);
    let expect = &(&pp("8*y - 3*x^2 - 6*x + 1") * &pp("x^3 - y^2")).scale(&int(36));
    assert_eq!(b2.metric.det(), expect);
    assert_eq!(
        b2.metric,
        Cometric::new(
            pp("4*(2*y - 3*x^2 + x)"),
            pp("6*(y - 3*x*y + 2*x^2)"),
            pp("9*(x^2 + x^3 + 2*x*y - 4*y^2)"),
        )
    );
    // double factor of the biangle with beta = 0
    let b3 = inst("B3", &[("alpha", int(-1)), ("beta", int(0))]);
    assert_eq!(b3.metric.det(), &(&pp("-y") * &pp("y - x^2 + 1").pow(2)));
}

#[test]
fn predicates_are_named() {
    let err = instantiate("B4", &params(&[("m", int(1)), ("n", int(2)), ("c02", int(1))])).unwrap_err();
    assert_eq!(
        err,
        CatalogError::Violated {
            entry: "B4".into(),
            predicate: "c02 < 0".into()
        }
    );
    let err = instantiate("P55.iii", &params(&[("alpha", int(0)), ("beta", int(0))])).unwrap_err();
    assert!(err.to_string().contains("(alpha, beta - beta^2) != (0, 0)"));
    assert!(instantiate("P55.iii", &params(&[("alpha", int(0)), ("beta", int(1))])).is_err());
    assert!(instantiate(
        "P55.ii",
        &params(&[("alpha", int(0)), ("beta", int(0)), ("mu", int(0))])
    )
    .is_err());
    assert!(instantiate("P55.ii", &params(&[("mu", frac(1, 2))])).is_err());
    assert!(instantiate("P43.iii", &params(&[("n", int(0)), ("c02", int(0))])).is_err());
    let err = instantiate("P43.iii", &params(&[("n", int(2)), ("x0", int(0)), ("c02", int(-1))])).unwrap_err();
    assert!(err.to_string().contains("det g != 0"));
    assert!(matches!(
        instantiate("B4", &params(&[("m", frac(1, 2)), ("n", int(2))])),
        Err(CatalogError::NotAnInteger { .. })
    ));
    assert!(matches!(
        instantiate("B1", &params(&[("zeta", int(1))])),
        Err(CatalogError::UnknownParameter { .. })
    ));
    assert!(matches!(
        instantiate("Z9", &Params::new()),
        Err(CatalogError::UnknownEntry(_))
    ));
    let err = instantiate("B3", &params(&[("alpha", int(-1)), ("beta", int(1))])).unwrap_err();
    assert!(err.to_string().contains("beta <= 0"));
}

#[test]
fn singular_point_data() {
    let pts = singular_points("P57", &Params::new()).unwrap();
    let as_tuples: Vec<_> = pts.iter().map(|s| (s.x.clone(), s.y.clone(), s.label)).collect();
    assert_eq!(
        as_tuples,
        vec![
            (frac(1, 9), frac(-1, 27), "A1"),
            (int(0), int(0), "A2"),
            (int(1), int(1), "A5"),
        ]
    );
    assert_eq!(singular_points("B1", &Params::new()).unwrap().len(), 3);
    assert!(singular_points("RECT", &Params::new()).unwrap().is_empty());
    assert_eq!(
        singular_points("P43.ii", &params(&[("n", int(3))])),
        Err(CatalogError::NoSingularityData("P43.ii".into()))
    );
}

#[test]
fn reducibility_flags() {
    let flag = |a: Rational, b: Rational| inst("P55.iii", &[("alpha", a), ("beta", b)]).reducible;
    assert!(flag(int(-4), int(-1)));
    assert!(flag(int(-8), int(-1)));
    assert!(!flag(int(-1), int(0)));
    assert!(flag(int(-4), int(0)));
}

// van der Corput in bases 2 and 3
fn halton(i: u64, base: u64) -> Rational {
    let (mut f, mut r, mut k) = (Rational::one(), Rational::zero(), i);
    while k > 0 {
        f /= int(base as i64);
        r += &f * int((k % base) as i64);
        k /= base;
    }
    r
}

fn interior_points(b: &Bundle, count: usize) -> Vec<(Rational, Rational)> {
    let d = b.domain.as_ref().unwrap();
    let bb = d.bbox.as_ref().unwrap();
    let mut out = Vec::new();
    let mut i = 1;
    while out.len() < count && i < 200_000 {
        let x = &bb.x0 + &(&bb.x1 - &bb.x0) * halton(i, 2);
        let y = &bb.y0 + &(&bb.y1 - &bb.y0) * halton(i, 3);
        if d.contains(&x, &y) {
            out.push((x, y));
        }
        i += 1;
    }
    assert_eq!(out.len(), count, "{}", b.id);
    out
}

#[test]
fn bounded_entries_are_positive_definite() {
    let cases: Vec<(&str, Vec<(&str, Rational)>)> = vec![
        ("B1", vec![]),
        ("B2", vec![]),
        ("B3", vec![("alpha", int(-1)), ("beta", int(0))]),
        ("B3", vec![("alpha", frac(-5, 2)), ("beta", frac(-1, 3))]),
        ("B4", vec![("m", int(1)), ("n", int(2)), ("c02", int(-1))]),
        ("B4", vec![("m", int(2)), ("n", int(2)), ("c02", frac(-1, 2))]),
        ("B4", vec![("m", int(3)), ("n", int(1)), ("c02", int(-4))]),
        ("B5", vec![("n", int(2)), ("c02", int(-1))]),
        ("B5", vec![("n", int(3)), ("c02", int(0))]),
        ("RECT", vec![("alpha", int(2)), ("beta", frac(1, 3))]),
    ];
    for (id, ps) in cases {
        let b = inst(id, &ps);
        for (x, y) in interior_points(&b, 100) {
            assert!(b.metric.is_positive_definite_at(&x, &y), "{id} at ({x}, {y})");
        }
    }
}

#[test]
fn bundle_densities_solve_the_density_problem() {
    let cases: Vec<(&str, Vec<(&str, Rational)>)> = vec![
        ("B1", vec![("p", frac(1, 2))]),
        ("B2", vec![("p", frac(2, 3)), ("q", frac(1, 2))]),
        (
            "B3",
            vec![
                ("alpha", int(-2)),
                ("beta", frac(-1, 2)),
                ("p", int(2)),
                ("q", frac(1, 3)),
            ],
        ),
        (
            "B4",
            vec![("m", int(1)), ("n", int(3)), ("c02", int(-1)), ("p", int(2))],
        ),
        (
            "B4",
            vec![
                ("m", int(2)),
                ("n", int(4)),
                ("c02", int(-1)),
                ("p", int(2)),
                ("q", int(3)),
            ],
        ),
        (
            "B5",
            vec![
                ("n", int(2)),
                ("c02", int(-1)),
                ("p", int(2)),
                ("q", int(3)),
                ("r", int(5)),
            ],
        ),
        ("U1", vec![("n", int(3)), ("c02", int(-1)), ("lambda", int(2))]),
        (
            "U1",
            vec![("n", int(2)), ("p", int(2)), ("q", int(3)), ("lambda", frac(1, 2))],
        ),
        ("RECT", vec![("p1", int(2)), ("q2", int(3))]),
        ("U2", vec![("kx", int(0)), ("ky", int(1)), ("ay", int(3))]),
        ("DIM1.jacobi", vec![("p", int(2)), ("q", int(3))]),
    ];
    for (id, ps) in cases {
        let b = inst(id, &ps);
        let spec = b.density.clone().unwrap();
        let factors: Vec<RatPoly2> = spec.factors.iter().map(|(f, _)| f.clone()).collect();
        let fam = density_family(&b.metric, &BoundarySpec::new(factors).unwrap(), &[], b.weights).unwrap();
        assert!(fam.contains(&spec), "{id}: {spec:?} not in {fam:?}");
        assert!(b.integrability.as_ref().is_none_or(|r| r.holds()), "{id}");
    }
}

#[test]
fn curvature_closed_form() {
    // B5, n = 2, c02 = -1: constant 1/2
    let ps = params(&[("n", int(2)), ("c02", int(-1))]);
    for (x, y) in [
        (frac(1, 2), int(0)),
        (frac(1, 3), frac(1, 4)),
        (frac(1, 5), frac(-1, 2)),
        (frac(3, 4), frac(1, 8)),
        (frac(1, 10), frac(4, 5)),
    ] {
        let r = catalog_curvature("B5", &ps, &x, &y).unwrap();
        assert_eq!(r.value, frac(1, 2));
        assert_eq!(r.inverse_metric, frac(1, 4));
    }
    // closed form across (n, c02) on the symmetry axis
    for n in 1..=3u32 {
        for c02 in [frac(-1, 4), int(-1), frac(-7, 3)] {
            for x in [frac(1, 2), frac(1, 3)] {
                let b5 = catalog_curvature(
                    "B5",
                    &params(&[("n", int(n.into())), ("c02", c02.clone())]),
                    &x,
                    &int(0),
                )
                .unwrap();
                let cf = crate::curvature::closed_form(1, &frac(1, 2), &(int(4) * &c02), n, &x);
                assert_eq!(b5.value, cf);
                let b4 = catalog_curvature(
                    "B4",
                    &params(&[("m", int(n.into())), ("n", int(n.into())), ("c02", c02.clone())]),
                    &x,
                    &int(0),
                )
                .unwrap();
                assert_eq!(b4.value, crate::curvature::closed_form(2, &int(2), &c02, n, &x));
            }
        }
    }
    let b4 = params(&[("m", int(2)), ("n", int(2)), ("c02", int(-4))]);
    let k1 = catalog_curvature("B4", &b4, &int(0), &int(0)).unwrap();
    let k2 = catalog_curvature("B4", &b4, &frac(1, 3), &frac(1, 5)).unwrap();
    assert_eq!(k1, k2);
    let nodal = params(&[("m", int(1)), ("n", int(2)), ("c02", int(-1))]);
    let a = catalog_curvature("B4", &nodal, &int(0), &int(0)).unwrap();
    let b = catalog_curvature("B4", &nodal, &frac(1, 2), &int(0)).unwrap();
    assert!((to_f64(&a.value) - to_f64(&b.value)).abs() >= 1e-3);
    assert_eq!(
        catalog_curvature("B4", &nodal, &int(1), &int(0)),
        Err(CatalogError::OutsideDomain)
    );
}

#[test]
fn realization_examples() {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let r = realization_map(1, 1, Complex64::new(s, 0.0), Complex64::new(s, 0.0)).unwrap();
    assert!((r.big_x - 0.5).abs() < 1e-15 && (r.big_y - 0.5).abs() < 1e-15);
    assert!(r.boundary_value.abs() < 1e-15);
    let r = realization_map(2, 3, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
    assert_eq!((r.big_x, r.big_y), (1.0, 0.0));
    let r = realization_map(2, 3, Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)).unwrap();
    assert_eq!((r.big_x, r.big_y), (0.0, 0.0));
    assert_eq!(
        realization_map(1, 1, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
        Err(CatalogError::OffSphere)
    );
}

#[test]
fn sphere_samples_land_in_the_closed_domain() {
    let pts = sphere_points(1000, [0.0; 3]);
    for (m, n) in [(1, 1), (1, 2), (2, 3)] {
        let mut closest = f64::INFINITY;
        for &(z1, z2) in &pts {
            let r = realization_map(m, n, z1, z2).unwrap();
            assert!(r.boundary_value >= -1e-12);
            closest = closest.min(r.boundary_value);
        }
        assert!(closest <= 1e-6, "({m}, {n}): {closest}");
    }
}
