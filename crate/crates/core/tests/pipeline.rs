//! Boundary in, cometric, density and spectrum out, using only public API.

use dopkit_core::algdop::{check_a1, check_a2_a3, solve_metric, BoundarySpec};
use dopkit_core::catalog::{instantiate, params};
use dopkit_core::density::density_family;
use dopkit_core::rational::int;
use dopkit_core::spectral::analyze;
use dopkit_core::{RatPoly2, Weights};

fn p(s: &str) -> RatPoly2 {
    s.parse().unwrap()
}

#[test]
fn biangle_from_its_boundary() {
    let w = Weights::new(1, 2).unwrap();
    let boundary = BoundarySpec::new(vec![p("-y"), p("y - x^2 + 1")]).unwrap();
    let sols = solve_metric(&boundary, w);
    assert!(!sols.is_empty());
    // the catalog cometric is in the span and passes the checks on its own
    let b = instantiate("B3", &params(&[("beta", int(0))])).unwrap();
    assert!(check_a1(&b.metric, w));
    let cert = check_a2_a3(&b.metric, &b.boundary).unwrap();
    assert!(cert.within_degree_bounds(w));
    let fam = density_family(&b.metric, &b.boundary, &[], w).unwrap();
    assert_eq!(fam.dimension(), 2);
    assert!(fam.generators.iter().all(|g| g.q.is_zero()));
    let rho = b.density.as_ref().unwrap();
    assert!(fam.contains(rho));
    let report = analyze(&b.metric, rho, b.domain.as_ref().unwrap(), w, 4, 32).unwrap();
    assert!(report.invariance);
    assert!(report.symmetry_defect < 1e-10);
    assert!(report.max_real() <= 0.0);
}
