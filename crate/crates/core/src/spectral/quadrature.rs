//! Iterated Gauss–Legendre quadrature over a domain cut out by sign
//! conditions.
//!
//! The outer variable runs over the bounding box split at the stored
//! breakpoints. At every outer node the inner interval endpoints are the
//! real roots of the sign polynomials, isolated exactly by Sturm sequences.
//! Both variables go through the substitution `t = φ(s)`,
//! `φ(s) = 35s⁴ − 84s⁵ + 70s⁶ − 20s⁷`, which flattens the square-root and
//! cusp behaviour of the inner length at slice ends.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::Zero;

use super::SpectralError;
use crate::catalog::DomainSpec;
use crate::density::DensitySpec;
use crate::rational::{self, frac, Rational};
use crate::upoly::UniPoly;

/// Nodes `(x, y, weight)` with the density folded into the weights.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<[f64; 3]>,
    slices: Vec<Range<usize>>,
    cuts: Vec<f64>,
    order: usize,
    dropped: usize,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[[f64; 3]] {
        &self.nodes
    }

    /// Node ranges of each outer slice, in slice order.
    pub fn slices(&self) -> &[Range<usize>] {
        &self.slices
    }

    /// Outer slice endpoints.
    pub fn cuts(&self) -> &[f64] {
        &self.cuts
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Nodes discarded because rounding put them on or outside the boundary.
    pub fn dropped(&self) -> usize {
        self.dropped
    }

    pub fn mass(&self) -> f64 {
        let parts: Vec<f64> = self
            .slices
            .iter()
            .map(|r| self.nodes[r.clone()].iter().map(|n| n[2]).sum())
            .collect();
        pairwise_sum(&parts)
    }

    /// `∫ f dμ`.
    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        let parts: Vec<f64> = self
            .slices
            .iter()
            .map(|r| self.nodes[r.clone()].iter().map(|n| n[2] * f(n[0], n[1])).sum())
            .collect();
        pairwise_sum(&parts)
    }
}

fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut t = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm = if n <= 1 { 1.0 } else { p0 };
            dp = n as f64 * (t * p - pm) / (t * t - 1.0);
            let step = p / dp;
            t -= step;
            if libm::fabs(step) < 1e-16 {
                break;
            }
        }
        out.push((t, 2.0 / ((1.0 - t * t) * dp * dp)));
    }
    out.reverse();
    out
}

fn phi(s: f64) -> f64 {
    s * s * s * s * (35.0 + s * (-84.0 + s * (70.0 - 20.0 * s)))
}

fn dphi(s: f64) -> f64 {
    let u = s * (1.0 - s);
    140.0 * u * u * u
}

/// Nodes and weights for `∫_a^b` after the smoothing substitution.
fn smoothed(gl: &[(f64, f64)], a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let h = b - a;
    gl.iter().map(move |&(t, w)| {
        let s = 0.5 * (t + 1.0);
        (a + h * phi(s), 0.5 * w * h * dphi(s))
    })
}

/// Maximal open subintervals of `[y0, y1]` on which all sign conditions hold
/// at the fixed abscissa `x`.
pub(crate) fn inner_intervals(
    domain: &DomainSpec,
    x: &Rational,
    y0: &Rational,
    y1: &Rational,
) -> Vec<(Rational, Rational)> {
    let tol = frac(1, 1 << 30) * frac(1, 1 << 25);
    let mut cuts = vec![y0.clone(), y1.clone()];
    for (p, _) in &domain.signs {
        let coeffs: Vec<Rational> = p.y_coefficients().iter().map(|c| c.eval(x)).collect();
        let u = UniPoly::new(coeffs);
        if u.is_zero() {
            continue;
        }
        for (lo, hi) in u.real_roots_in(y0, y1, &tol) {
            cuts.push((lo + hi) / rational::int(2));
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / rational::int(2);
        if !domain.contains(x, &mid) {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.1 == w[0] => last.1 = w[1].clone(),
            _ => out.push((w[0].clone(), w[1].clone())),
        }
    }
    out
}

/// `ρ(x, y)`, falling back to exact factor values when cancellation makes
/// a float factor nonpositive.
fn density_at(rho: &DensitySpec, x: f64, y: f64, xr: &Rational, yr: &Rational) -> f64 {
    let r = rho.eval_f64(x, y);
    if r.is_finite() && r > 0.0 {
        return r;
    }
    let mut h = rho.q.eval_f64(x, y);
    for (f, e) in &rho.factors {
        if !e.is_zero() {
            h += rational::to_f64(e) * libm::log(rational::to_f64(&f.eval(xr, yr)));
        }
    }
    libm::exp(h)
}

/// Iterated rule with `order` points per variable and interval.
pub fn build_quadrature(domain: &DomainSpec, rho: &DensitySpec, order: usize) -> Result<QuadratureRule, SpectralError> {
    let bbox = domain.bbox.as_ref().ok_or(SpectralError::Unbounded)?;
    if let Some(k) = rho.factors.iter().position(|(_, e)| *e < Rational::zero()) {
        return Err(SpectralError::SingularEdge(k));
    }
    let mut cuts = vec![bbox.x0.clone(), bbox.x1.clone()];
    cuts.extend(
        domain
            .breakpoints
            .iter()
            .filter(|b| **b > bbox.x0 && **b < bbox.x1)
            .cloned(),
    );
    cuts.sort();
    cuts.dedup();
    let cuts_f: Vec<f64> = cuts.iter().map(rational::to_f64).collect();

    let gl = gauss_legendre(order);
    let mut nodes = Vec::new();
    let mut slices = Vec::new();
    let mut dropped = 0;
    for w in cuts_f.windows(2) {
        let start = nodes.len();
        for (x, wx) in smoothed(&gl, w[0], w[1]) {
            let xr = rational::from_f64(x).expect("finite node");
            for (c, d) in inner_intervals(domain, &xr, &bbox.y0, &bbox.y1) {
                let (c, d) = (rational::to_f64(&c), rational::to_f64(&d));
                for (y, wy) in smoothed(&gl, c, d) {
                    let yr = rational::from_f64(y).expect("finite node");
                    if !domain.contains(&xr, &yr) {
                        dropped += 1;
                        continue;
                    }
                    let r = density_at(rho, x, y, &xr, &yr);
                    if !(r.is_finite() && r > 0.0) {
                        return Err(SpectralError::BadDensity { x, y });
                    }
                    nodes.push([x, y, wx * wy * r]);
                }
            }
        }
        slices.push(start..nodes.len());
    }
    Ok(QuadratureRule {
        nodes,
        slices,
        cuts: cuts_f,
        order,
        dropped,
    })
}
