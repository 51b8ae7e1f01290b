//! Local branches of curves: valuations, the tangency conditions along a
//! branch, chart transitions of the Hirzebruch surface and dual curves.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::algdop::Cometric;
use crate::poly::{RatPoly2, Weights};
use crate::rational::Rational;
use crate::series::Series;
use crate::upoly::UniPoly;

pub const DEFAULT_TRUNC_ORDER: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchError {
    ConstantGerm,
    ExponentOutOfRange(i64),
    ConstantCoordinate,
    ChartOutOfRange(usize),
    /// The point or series lies on the locus excluded by the chart.
    ExcludedLocus,
    DegenerateParametrization,
    ZeroDenominator,
}

impl fmt::Display for BranchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchError::ConstantGerm => f.write_str("both coordinates of the germ are constant"),
            BranchError::ExponentOutOfRange(e) => {
                write!(f, "exponent {e} outside the truncation window")
            }
            BranchError::ConstantCoordinate => f.write_str("a coordinate of the germ is constant"),
            BranchError::ChartOutOfRange(k) => write!(f, "chart {k} does not exist (0..=3)"),
            BranchError::ExcludedLocus => f.write_str("division by zero in chart transition"),
            BranchError::DegenerateParametrization => f.write_str("parametrization is constant or has a common root"),
            BranchError::ZeroDenominator => f.write_str("the Z coordinate vanishes identically"),
        }
    }
}

/// Three-valued answer for truncated computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
    Inconclusive,
}

/// A germ `t -> (ξ(t), η(t))` known through `t^trunc_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchGerm {
    xi: Series,
    eta: Series,
    trunc_order: i64,
}

impl BranchGerm {
    /// Truncated germ from `(exponent, coefficient)` lists; terms are known
    /// through `t^trunc_order`.
    pub fn new(xi: Vec<(i64, Rational)>, eta: Vec<(i64, Rational)>, trunc_order: i64) -> Result<Self, BranchError> {
        for &(e, _) in xi.iter().chain(&eta) {
            if e.abs() > trunc_order {
                return Err(BranchError::ExponentOutOfRange(e));
            }
        }
        let prec = Some(trunc_order + 1);
        Self::from_series(Series::from_terms(xi, prec), Series::from_terms(eta, prec), trunc_order)
    }

    /// Germ whose coordinates are exact Laurent polynomials.
    pub fn exact(xi: Vec<(i64, Rational)>, eta: Vec<(i64, Rational)>) -> Result<Self, BranchError> {
        Self::from_series(Series::exact(xi), Series::exact(eta), DEFAULT_TRUNC_ORDER)
    }

    pub fn from_series(xi: Series, eta: Series, trunc_order: i64) -> Result<Self, BranchError> {
        if !xi.is_nonconstant() && !eta.is_nonconstant() {
            return Err(BranchError::ConstantGerm);
        }
        Ok(BranchGerm { xi, eta, trunc_order })
    }

    pub fn xi(&self) -> &Series {
        &self.xi
    }

    pub fn eta(&self) -> &Series {
        &self.eta
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc_order
    }

    /// `p(ξ(t), η(t))`.
    pub fn compose(&self, p: &RatPoly2) -> Series {
        Series::eval_poly2(p, &self.xi, &self.eta)
    }

    /// Orders of `ξ` and `η` (as exponent pair), if both are nonzero.
    pub fn order(&self) -> Option<(i64, i64)> {
        Some((self.xi.order()?, self.eta.order()?))
    }

    /// A series known to vanish: exactly zero, or zero on a window longer
    /// than half the truncation order.
    fn certifies_zero(&self, s: &Series) -> bool {
        match s.prec() {
            None => s.is_zero_known(),
            Some(p) => s.is_zero_known() && 2 * p > self.trunc_order,
        }
    }

    fn classify(&self, s: &Series) -> Valuation {
        match s.order() {
            Some(o) => Valuation::Finite(o),
            None if self.certifies_zero(s) => Valuation::Infinite,
            None => Valuation::Inconclusive,
        }
    }
}

/// `ord_t p(ξ(t), η(t))`.
pub fn valuation(germ: &BranchGerm, p: &RatPoly2) -> Valuation {
    germ.classify(&germ.compose(p))
}

fn vanishes(germ: &BranchGerm, s: &Series) -> Verdict {
    if s.order().is_some() {
        Verdict::False
    } else if germ.certifies_zero(s) {
        Verdict::True
    } else {
        Verdict::Inconclusive
    }
}

/// `b ξ̇ = a η̇` and `c ξ̇ = b η̇` along the germ.
pub fn check_condition_11(germ: &BranchGerm, g: &Cometric) -> Verdict {
    let (dxi, deta) = (germ.xi.derivative(), germ.eta.derivative());
    let (a, b, c) = (germ.compose(g.a()), germ.compose(g.b()), germ.compose(g.c()));
    let first = vanishes(germ, &(&(&b * &dxi) - &(&a * &deta)));
    let second = vanishes(germ, &(&(&c * &dxi) - &(&b * &deta)));
    match (first, second) {
        (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
        (Verdict::True, Verdict::True) => Verdict::True,
        _ => Verdict::Inconclusive,
    }
}

/// `v(a) − v(b) = v(b) − v(c) = ord ξ̇ − ord η̇`.
pub fn check_eq_12(germ: &BranchGerm, g: &Cometric) -> Result<Verdict, BranchError> {
    if !germ.xi.is_nonconstant() || !germ.eta.is_nonconstant() {
        return Err(BranchError::ConstantCoordinate);
    }
    let v = |p: &RatPoly2| match valuation(germ, p) {
        Valuation::Finite(o) => Some(o),
        _ => None,
    };
    let (Some(va), Some(vb), Some(vc)) = (v(g.a()), v(g.b()), v(g.c())) else {
        return Ok(Verdict::Inconclusive);
    };
    let (Some(ox), Some(oy)) = (germ.xi.derivative().order(), germ.eta.derivative().order()) else {
        return Ok(Verdict::Inconclusive);
    };
    let ok = va - vb == vb - vc && vb - vc == ox - oy;
    Ok(if ok { Verdict::True } else { Verdict::False })
}

/// Values on which chart transitions operate: rational points and series.
pub trait ChartValue: Sized + Clone {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl ChartValue for Rational {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl ChartValue for Series {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        self.inverse(DEFAULT_TRUNC_ORDER)
    }
}

fn to_affine<T: ChartValue>(chart: usize, (u, v): (T, T)) -> Result<(T, T), BranchError> {
    let inv = |z: &T| z.inv().ok_or(BranchError::ExcludedLocus);
    match chart {
        0 => Ok((u, v)),
        // x = 1/x1, y = y1 / x1²
        1 => {
            let iu = inv(&u)?;
            let y = v.mul(&iu).mul(&iu);
            Ok((iu, y))
        }
        2 => Ok((u, inv(&v)?)),
        // x = 1/x3, y = 1/(x3² y3)
        3 => {
            let iu = inv(&u)?;
            let y = inv(&u.mul(&u).mul(&v))?;
            Ok((iu, y))
        }
        k => Err(BranchError::ChartOutOfRange(k)),
    }
}

fn from_affine<T: ChartValue>(chart: usize, (x, y): (T, T)) -> Result<(T, T), BranchError> {
    let inv = |z: &T| z.inv().ok_or(BranchError::ExcludedLocus);
    match chart {
        0 => Ok((x, y)),
        1 => {
            let ix = inv(&x)?;
            let y1 = y.mul(&ix).mul(&ix);
            Ok((ix, y1))
        }
        2 => Ok((x, inv(&y)?)),
        3 => {
            let ix = inv(&x)?;
            let y3 = x.mul(&x).mul(&inv(&y)?);
            Ok((ix, y3))
        }
        k => Err(BranchError::ChartOutOfRange(k)),
    }
}

/// Coordinates of the same point of the Hirzebruch surface in another chart.
pub fn chart_transform<T: ChartValue>(pt: (T, T), from: usize, to: usize) -> Result<(T, T), BranchError> {
    if from > 3 {
        return Err(BranchError::ChartOutOfRange(from));
    }
    if to > 3 {
        return Err(BranchError::ChartOutOfRange(to));
    }
    from_affine(to, to_affine(from, pt)?)
}

/// Polynomial parametrization `t -> (X, Y, Z)` of a curve in projective
/// coordinates (ordinary or weighted, depending on use).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WProjParam {
    pub x: UniPoly,
    pub y: UniPoly,
    pub z: UniPoly,
}

impl WProjParam {
    pub fn new(x: UniPoly, y: UniPoly, z: UniPoly) -> Result<Self, BranchError> {
        let g = x.gcd(&y).gcd(&z);
        if (x.is_constant() && y.is_constant() && z.is_constant()) || !g.is_constant() {
            return Err(BranchError::DegenerateParametrization);
        }
        Ok(WProjParam { x, y, z })
    }
}

/// Dual curve of a parametrized plane curve in ordinary projective
/// coordinates, with the common polynomial factor removed.
pub fn dual_param(phi: &WProjParam) -> Result<(UniPoly, UniPoly, UniPoly), BranchError> {
    let (xi, eta, zeta) = (&phi.x, &phi.y, &phi.z);
    let (dxi, deta, dzeta) = (xi.derivative(), eta.derivative(), zeta.derivative());
    let u = &(&deta * zeta) - &(&dzeta * eta);
    let v = &(&dzeta * xi) - &(&dxi * zeta);
    let w = &(&dxi * eta) - &(&deta * xi);
    if u.is_zero() && v.is_zero() && w.is_zero() {
        return Err(BranchError::DegenerateParametrization);
    }
    let g = u.gcd(&v).gcd(&w);
    let q = |p: &UniPoly| p.exact_div(&g).expect("gcd divides");
    Ok((q(&u), q(&v), q(&w)))
}

/// Whether the weighted triple lies on `Γ = 0` with `x = X/Z`, `y = Y/Z²`.
pub fn on_curve(phi: &WProjParam, gamma: &RatPoly2) -> Result<bool, BranchError> {
    if phi.z.is_zero() {
        return Err(BranchError::ZeroDenominator);
    }
    let w = Weights::new(1, 2).unwrap();
    let Some(d) = gamma.weighted_degree(w) else {
        return Ok(true);
    };
    let mut acc = UniPoly::zero();
    for ((i, j), c) in gamma.terms() {
        let zexp = d as u32 - i - 2 * j;
        let m = &(&phi.x.pow(i) * &phi.y.pow(j)) * &phi.z.pow(zexp);
        acc = &acc + &m.scale(c);
    }
    Ok(acc.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use alloc::vec;
    use num_traits::One;

    fn p(s: &str) -> RatPoly2 {
        s.parse().unwrap()
    }

    fn mono(e: i64) -> Vec<(i64, Rational)> {
        vec![(e, Rational::one())]
    }

    fn cusp() -> BranchGerm {
        BranchGerm::new(mono(2), mono(3), DEFAULT_TRUNC_ORDER).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&cusp(), &p("y^2 - x^3")), Valuation::Infinite);
        assert_eq!(valuation(&cusp(), &p("x")), Valuation::Finite(2));
        assert_eq!(valuation(&cusp(), &p("y - x")), Valuation::Finite(2));
    }

    #[test]
    fn short_truncation_is_inconclusive() {
        // cusp known through t^3: y² - x³ = O(t^6), a window past half the order
        let g = BranchGerm::new(mono(2), mono(3), 3).unwrap();
        assert_eq!(valuation(&g, &p("y^2 - x^3")), Valuation::Infinite);
        // y known only through t^1: the composite is O(t^2) and unknown
        let g = BranchGerm::new(mono(1), vec![], 8).unwrap();
        let s = Series::from_terms([(1, int(1))], Some(2));
        let g2 = BranchGerm::from_series(g.xi().clone(), s, 8).unwrap();
        assert_eq!(valuation(&g2, &p("y - x")), Valuation::Inconclusive);
        assert!(BranchGerm::new(mono(70), mono(1), 64).is_err());
        assert_eq!(BranchGerm::exact(mono(0), vec![]), Err(BranchError::ConstantGerm));
    }

    fn p43ii(n: i64, c02: Rational) -> Cometric {
        let gamma = &p("x").pow(n as u32) - &p("y^2");
        let c = &p("x").pow(n as u32 - 1).scale(&frac(n * n, 4)) - &gamma.scale(&c02);
        Cometric::new(p("x"), p("y").scale(&frac(n, 2)), c)
    }

    #[test]
    fn condition_11_examples() {
        let g = BranchGerm::new(mono(2), mono(3), DEFAULT_TRUNC_ORDER).unwrap();
        assert_eq!(check_condition_11(&g, &p43ii(3, int(-1))), Verdict::True);
        let diag = BranchGerm::exact(mono(1), mono(1)).unwrap();
        assert_eq!(
            check_condition_11(&diag, &Cometric::diag(p("1"), p("1"))),
            Verdict::False
        );
        let parab = BranchGerm::new(mono(1), mono(2), DEFAULT_TRUNC_ORDER).unwrap();
        let g55 = Cometric::new(
            &(&p("y - x^2") * &p("1")) + &(&p("x") * &p("x")),
            &p("x") * &p("2*y"),
            &(&p("y - x^2") * &p("y")) + &(&p("x") * &p("4*x*y")),
        );
        assert_eq!(check_condition_11(&parab, &g55), Verdict::True);
    }

    #[test]
    fn eq_12_examples() {
        let g29 = Cometric::new(p("4*y + 4*x"), p("6*x^2 + 6*y"), p("9*x*y + 9*x^2"));
        assert_eq!(check_eq_12(&cusp(), &g29), Ok(Verdict::True));
        for n in 2..5 {
            let g = BranchGerm::new(mono(2), mono(n), DEFAULT_TRUNC_ORDER).unwrap();
            assert_eq!(check_eq_12(&g, &p43ii(n, int(-1))), Ok(Verdict::True));
        }
        let zero_a = Cometric::new(p("y^2 - x^3"), p("x"), p("1"));
        assert_eq!(check_eq_12(&cusp(), &zero_a), Ok(Verdict::Inconclusive));
        let flat = BranchGerm::exact(mono(1), vec![(0, int(2))]).unwrap();
        assert_eq!(check_eq_12(&flat, &zero_a), Err(BranchError::ConstantCoordinate));
    }

    #[test]
    fn chart_examples() {
        let pt = (int(2), int(5));
        assert_eq!(chart_transform(pt.clone(), 0, 1).unwrap(), (frac(1, 2), frac(5, 4)));
        assert_eq!(chart_transform(pt.clone(), 0, 2).unwrap(), (int(2), frac(1, 5)));
        let back = chart_transform(chart_transform(pt.clone(), 0, 1).unwrap(), 1, 0).unwrap();
        assert_eq!(back, pt);
        let via = chart_transform(chart_transform(pt.clone(), 0, 1).unwrap(), 1, 3).unwrap();
        assert_eq!(via, chart_transform(pt.clone(), 0, 3).unwrap());
        assert_eq!(chart_transform(pt.clone(), 0, 3).unwrap(), (frac(1, 2), frac(4, 5)));
        assert_eq!(chart_transform((int(0), int(1)), 0, 1), Err(BranchError::ExcludedLocus));
        assert_eq!(chart_transform(pt, 0, 4), Err(BranchError::ChartOutOfRange(4)));
    }

    #[test]
    fn chart_on_series() {
        let germ = (Series::exact([(1, int(1))]), Series::exact([(2, int(3))]));
        let c1 = chart_transform(germ.clone(), 0, 1).unwrap();
        assert_eq!(c1.0, Series::exact([(-1, int(1))]));
        assert_eq!(c1.1, Series::exact([(0, int(3))]));
        assert_eq!(chart_transform(c1, 1, 0).unwrap(), germ);
    }

    fn wp(x: &[i64], y: &[i64], z: &[i64]) -> WProjParam {
        WProjParam::new(UniPoly::from_ints(x), UniPoly::from_ints(y), UniPoly::from_ints(z)).unwrap()
    }

    #[test]
    fn dual_examples() {
        let conic = wp(&[0, 1], &[0, 0, 1], &[1]);
        let d = dual_param(&conic).unwrap();
        assert_eq!(
            d,
            (
                UniPoly::from_ints(&[0, 2]),
                UniPoly::from_ints(&[-1]),
                UniPoly::from_ints(&[0, 0, -1])
            )
        );
        let (a, b) = (3, -2);
        let line = wp(&[0, 1], &[b, a], &[1]);
        let d = dual_param(&line).unwrap();
        assert_eq!(
            d,
            (
                UniPoly::from_ints(&[a]),
                UniPoly::from_ints(&[-1]),
                UniPoly::from_ints(&[b])
            )
        );
        // biduality: the double dual satisfies Y Z - X² = 0 at sample points
        let first = dual_param(&conic).unwrap();
        let second = dual_param(&WProjParam {
            x: first.0,
            y: first.1,
            z: first.2,
        })
        .unwrap();
        for t in -2..3 {
            let t = int(t);
            let (x, y, z) = (second.0.eval(&t), second.1.eval(&t), second.2.eval(&t));
            assert!((&y * &z - &x * &x).is_zero());
        }
    }

    #[test]
    fn on_curve_examples() {
        let phi = WProjParam::new(
            UniPoly::from_ints(&[32, 32]),
            &UniPoly::from_ints(&[3, 5]) * &UniPoly::from_ints(&[3, 1]).scale(&int(256)),
            UniPoly::from_ints(&[3, 1]).pow(3),
        )
        .unwrap();
        let g25 = p("y^3 - 20*x*y^2 + 16*y^2 + 45*x^3*y - 40*x^2*y - 27*x^5 + 25*x^4");
        assert_eq!(on_curve(&phi, &g25), Ok(true));
        assert_eq!(on_curve(&wp(&[0, 1], &[0, 0, 0, 1], &[1]), &p("y^2 - x^3")), Ok(false));
        assert_eq!(
            on_curve(&wp(&[0, 0, 1], &[0, 0, 0, 0, 0, 0, 1], &[1]), &p("y - x^3")),
            Ok(true)
        );
    }
}
