//! Truncated Laurent series in `t` with rational coefficients and tracked
//! precision.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::upoly::UniPoly;

/// `Σ coeffs[k] t^(order + k) + O(t^prec)`; `prec == None` means the sum is
/// exact. Coefficients at or beyond `prec` are never stored, and the first
/// stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    order: i64,
    coeffs: Vec<Rational>,
    prec: Option<i64>,
}

impl Series {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>, prec: Option<i64>) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Series::zero(prec);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Series {
            order: lo,
            coeffs,
            prec,
        }
        .normalized()
    }

    /// Exact Laurent polynomial.
    pub fn exact(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        Self::from_terms(terms, None)
    }

    pub fn from_poly(p: &UniPoly, prec: Option<i64>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (k as i64, c.clone())), prec)
    }

    pub fn zero(prec: Option<i64>) -> Self {
        Series {
            order: 0,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::exact([(0, c)])
    }

    pub fn t() -> Self {
        Self::exact([(1, Rational::one())])
    }

    fn normalized(mut self) -> Self {
        if let Some(p) = self.prec {
            let keep = (p - self.order).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.order += lead as i64;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.order = 0;
        }
        self
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// No nonzero coefficient is known.
    pub fn is_zero_known(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the first known nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.order)
    }

    /// Lower bound on the true order: the order if known, otherwise the
    /// precision (or `None` for exact zero).
    fn low(&self) -> Option<i64> {
        match self.order() {
            Some(o) => Some(o),
            None => self.prec,
        }
    }

    pub fn coeff(&self, e: i64) -> Rational {
        let k = e - self.order;
        if self.coeffs.is_empty() || k < 0 || k >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.order + k as i64, c))
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.order().map(|o| o + self.coeffs.len() as i64 - 1)
    }

    /// True if the series has a nonzero coefficient at a nonzero exponent.
    pub fn is_nonconstant(&self) -> bool {
        self.terms().any(|(e, _)| e != 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        }
        .normalized()
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c * rational::int(e))),
            self.prec.map(|p| p - 1),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::constant(Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse. An exact series that is not a monomial has an
    /// infinite inverse; it is cut to `rel_prec` terms past its order.
    pub fn inverse(&self, rel_prec: i64) -> Option<Self> {
        let v = self.order()?;
        let rel = match self.prec {
            Some(p) => p - v,
            None if self.coeffs.len() == 1 => {
                return Some(Series::exact([(-v, self.coeffs[0].recip())]));
            }
            None => rel_prec,
        };
        let n = rel.max(0) as usize;
        let a0inv = self.coeffs[0].recip();
        let mut inv = vec![Rational::zero(); n];
        for k in 0..n {
            let mut s = if k == 0 { Rational::one() } else { Rational::zero() };
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s -= &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = s * &a0inv;
        }
        Some(
            Series {
                order: -v,
                coeffs: inv,
                prec: Some(-v + rel),
            }
            .normalized(),
        )
    }

    /// `p(ξ, η)` as a series.
    pub fn eval_poly2(p: &crate::poly::RatPoly2, xi: &Series, eta: &Series) -> Series {
        let mut xp = vec![Series::constant(Rational::one())];
        let mut yp = vec![Series::constant(Rational::one())];
        let mut out = Series::zero(None);
        for ((i, j), c) in p.terms() {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap() * xi;
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp.last().unwrap() * eta;
                yp.push(next);
            }
            out = &out + &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        out
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let prec = min_prec(self.prec, rhs.prec);
        Series::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())), prec)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rational::one())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        // each factor's unknown tail is shifted by the other's lowest order
        let shift = |known: &Series, other: &Series| match (other.prec, known.low()) {
            (Some(p), Some(l)) => Some(p + l),
            (Some(_), None) => None,
            (None, _) => None,
        };
        let prec = min_prec(shift(self, rhs), shift(rhs, self));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Series::zero(prec);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if let Some(p) = prec {
                    if self.order + rhs.order + (i + j) as i64 >= p {
                        break;
                    }
                }
                coeffs[i + j] += a * b;
            }
        }
        Series {
            order: self.order + rhs.order,
            coeffs,
            prec,
        }
        .normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn s(terms: &[(i64, i64)], prec: Option<i64>) -> Series {
        Series::from_terms(terms.iter().map(|&(e, c)| (e, int(c))), prec)
    }

    #[test]
    fn precision_propagates() {
        let a = s(&[(2, 1)], Some(10));
        let b = s(&[(3, 1)], Some(10));
        let p = &a * &b;
        assert_eq!(p.prec(), Some(12));
        assert_eq!(p.order(), Some(5));
        let d = &(&b * &b) - &(&(&a * &a) * &a);
        assert!(d.is_zero_known());
        assert_eq!(d.prec(), Some(13));
        assert_eq!((&a + &s(&[(1, 1)], None)).prec(), Some(10));
    }

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = s(&[(-1, 2), (1, 3)], None);
        let b = &a * &a;
        assert!(b.is_exact());
        assert_eq!(b, s(&[(-2, 4), (0, 12), (2, 9)], None));
        assert_eq!(a.derivative(), s(&[(-2, -2), (0, 3)], None));
    }

    #[test]
    fn inverse_of_geometric() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let a = s(&[(0, 1), (1, -1)], None);
        let inv = a.inverse(8).unwrap();
        assert_eq!(inv.prec(), Some(8));
        assert!((0..8).all(|k| inv.coeff(k) == int(1)));
        let one = &a * &inv;
        assert_eq!(one.coeff(0), int(1));
        assert!((1..8).all(|k| one.coeff(k).is_zero()));
        let m = s(&[(2, 4)], None).inverse(8).unwrap();
        assert_eq!(m, Series::exact([(-2, frac(1, 4))]));
        assert!(Series::zero(None).inverse(4).is_none());
    }
}
