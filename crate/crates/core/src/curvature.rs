//! Gaussian curvature of the Riemannian metric `g⁻¹` dual to a cometric,
//! by the Brioschi formula on exact derivatives.

use core::fmt;
use core::ops::{Add, Div, Mul, Sub};

use num_traits::Zero;

use crate::algdop::Cometric;
use crate::ratfunc::RatFunc;
use crate::rational::{frac, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvatureError {
    /// `det g` vanishes at the requested point.
    SingularPoint,
    DegenerateMetric,
}

impl fmt::Display for CurvatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureError::SingularPoint => f.write_str("det g vanishes at the point"),
            CurvatureError::DegenerateMetric => f.write_str("det g vanishes identically"),
        }
    }
}

/// Values of `E, F, G` and their partial derivatives up to order two at one
/// point. Index order for the second derivatives: `uu, uv, vv`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJet<T> {
    pub e: [T; 6],
    pub f: [T; 6],
    pub g: [T; 6],
}

// slots: value, u, v, uu, uv, vv
const V: usize = 0;
const U: usize = 1;
const W: usize = 2;
const UU: usize = 3;
const UV: usize = 4;
const VV: usize = 5;

fn det3<T>(m: [[T; 3]; 3]) -> T
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let [[a, b, c], [d, e, f], [g, h, i]] = m;
    a * (e.clone() * i.clone() - f.clone() * h.clone()) - b * (d.clone() * i - f * g.clone()) + c * (d * h - e * g)
}

/// The Brioschi formula applied to a jet.
pub fn brioschi<T>(j: &MetricJet<T>, half: T) -> T
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    let h = |t: &T| half.clone() * t.clone();
    let (e, f, g) = (&j.e, &j.f, &j.g);
    let m1 = [
        [f[UV].clone() - h(&e[VV]) - h(&g[UU]), h(&e[U]), f[U].clone() - h(&e[W])],
        [f[W].clone() - h(&g[U]), e[V].clone(), f[V].clone()],
        [h(&g[W]), f[V].clone(), g[V].clone()],
    ];
    let zero = e[V].clone() - e[V].clone();
    let m2 = [
        [zero, h(&e[W]), h(&g[U])],
        [h(&e[W]), e[V].clone(), f[V].clone()],
        [h(&g[U]), f[V].clone(), g[V].clone()],
    ];
    let area = e[V].clone() * g[V].clone() - f[V].clone() * f[V].clone();
    (det3(m1) - det3(m2)) / (area.clone() * area)
}

/// The metric coefficients `E = c/Δ`, `F = −b/Δ`, `G = a/Δ` with their
/// first and second partials as rational functions.
pub struct MetricFunctions {
    e: [RatFunc; 6],
    f: [RatFunc; 6],
    g: [RatFunc; 6],
    det: crate::poly::RatPoly2,
}

fn jet_functions(r: RatFunc) -> [RatFunc; 6] {
    let u = r.partial(0);
    let v = r.partial(1);
    let uu = u.partial(0);
    let uv = u.partial(1);
    let vv = v.partial(1);
    [r, u, v, uu, uv, vv]
}

impl MetricFunctions {
    pub fn new(g: &Cometric) -> Result<Self, CurvatureError> {
        let det = g.det().clone();
        if det.is_zero() {
            return Err(CurvatureError::DegenerateMetric);
        }
        let over = |p: &crate::poly::RatPoly2| RatFunc::new(p.clone(), det.clone());
        Ok(MetricFunctions {
            e: jet_functions(over(g.c())),
            f: jet_functions(over(&-g.b())),
            g: jet_functions(over(g.a())),
            det,
        })
    }

    pub fn jet(&self, x: &Rational, y: &Rational) -> Result<MetricJet<Rational>, CurvatureError> {
        if self.det.eval(x, y).is_zero() {
            return Err(CurvatureError::SingularPoint);
        }
        let ev = |fs: &[RatFunc; 6]| -> [Rational; 6] {
            core::array::from_fn(|k| fs[k].eval(x, y).expect("denominator is a power of det"))
        };
        Ok(MetricJet {
            e: ev(&self.e),
            f: ev(&self.f),
            g: ev(&self.g),
        })
    }

    pub fn jet_f64(&self, x: f64, y: f64) -> MetricJet<f64> {
        let ev = |fs: &[RatFunc; 6]| -> [f64; 6] { core::array::from_fn(|k| fs[k].eval_f64(x, y)) };
        MetricJet {
            e: ev(&self.e),
            f: ev(&self.f),
            g: ev(&self.g),
        }
    }

    pub fn curvature(&self, x: &Rational, y: &Rational) -> Result<Rational, CurvatureError> {
        Ok(brioschi(&self.jet(x, y)?, frac(1, 2)))
    }

    pub fn curvature_f64(&self, x: f64, y: f64) -> f64 {
        brioschi(&self.jet_f64(x, y), 0.5)
    }
}

/// Exact Gaussian curvature of `g⁻¹` at a rational point.
pub fn gaussian_curvature(g: &Cometric, x: &Rational, y: &Rational) -> Result<Rational, CurvatureError> {
    MetricFunctions::new(g)?.curvature(x, y)
}

/// The closed form `−λn²(2(n²+α)x^k + α) / ((n²+α)x^k − α)²`.
pub fn closed_form(k: u32, lambda: &Rational, alpha: &Rational, n: u32, x: &Rational) -> Rational {
    let n2 = crate::rational::int(i64::from(n) * i64::from(n));
    let xk = num_traits::pow(x.clone(), k as usize);
    let s = &n2 + alpha;
    let num = -(lambda * &n2) * (crate::rational::int(2) * &s * &xk + alpha);
    let den = &s * &xk - alpha;
    num / (&den * &den)
}
