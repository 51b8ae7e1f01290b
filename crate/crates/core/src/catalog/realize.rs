//! Curvature of catalog metrics and the map from the three-sphere onto the
//! biangle domains.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{instantiate, CatalogError, Params};
use crate::curvature::MetricFunctions;
use crate::rational::{int, Rational};

/// `value` is the curvature in the normalization of the closed form
/// (metric `½ g⁻¹`); `inverse_metric` is the curvature of `g⁻¹` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureReport {
    pub value: Rational,
    pub inverse_metric: Rational,
}

pub fn catalog_curvature(
    id: &str,
    params: &Params,
    x: &Rational,
    y: &Rational,
) -> Result<CurvatureReport, CatalogError> {
    let bundle = instantiate(id, params)?;
    if let Some(d) = &bundle.domain {
        if !d.contains(x, y) {
            return Err(CatalogError::OutsideDomain);
        }
    }
    let k = MetricFunctions::new(&bundle.metric)?.curvature(x, y)?;
    Ok(CurvatureReport {
        value: &k * int(2),
        inverse_metric: k,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Realization {
    /// `(|z1|², Re(z1ⁿ z̄2ᵐ))`.
    pub big_x: f64,
    pub big_y: f64,
    /// `(2X − 1, 2^{(m+n)/2} Y)`.
    pub x: f64,
    pub y: f64,
    /// `(1 − X)^m Xⁿ − Y²`, nonnegative up to rounding.
    pub boundary_value: f64,
}

pub const SPHERE_TOLERANCE: f64 = 1e-12;

pub fn realization_map(m: u32, n: u32, z1: Complex64, z2: Complex64) -> Result<Realization, CatalogError> {
    if (z1.norm_sqr() + z2.norm_sqr() - 1.0).abs() > SPHERE_TOLERANCE {
        return Err(CatalogError::OffSphere);
    }
    let big_x = z1.norm_sqr();
    let big_y = (z1.powu(n) * z2.conj().powu(m)).re;
    let boundary_value = powi(1.0 - big_x, m) * powi(big_x, n) - big_y * big_y;
    Ok(Realization {
        big_x,
        big_y,
        x: 2.0 * big_x - 1.0,
        y: libm::pow(2.0, f64::from(m + n) / 2.0) * big_y,
        boundary_value,
    })
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let (mut f, mut r) = (1.0, 0.0);
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Quasi-random points of the unit three-sphere: Halton triples in bases
/// 2, 3, 5, shifted modulo 1 by `shift`, mapped by
/// `(u, v, w) ↦ (√u e^{2πiv}, √(1−u) e^{2πiw})`, which is uniform on S³.
pub fn sphere_points(count: usize, shift: [f64; 3]) -> Vec<(Complex64, Complex64)> {
    let tau = 2.0 * core::f64::consts::PI;
    let wrap = |v: f64| v - libm::floor(v);
    (1..=count as u64)
        .map(|i| {
            let u = wrap(radical_inverse(i, 2) + shift[0]);
            let v = wrap(radical_inverse(i, 3) + shift[1]);
            let w = wrap(radical_inverse(i, 5) + shift[2]);
            let (r1, r2) = (libm::sqrt(u), libm::sqrt(1.0 - u));
            (
                Complex64::new(r1 * libm::cos(tau * v), r1 * libm::sin(tau * v)),
                Complex64::new(r2 * libm::cos(tau * w), r2 * libm::sin(tau * w)),
            )
        })
        .collect()
}

fn powi(b: f64, e: u32) -> f64 {
    (0..e).fold(1.0, |acc, _| acc * b)
}
