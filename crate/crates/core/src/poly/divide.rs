use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{Exponent, PolyError, RatPoly2};
use crate::linalg;
use crate::rational::Rational;

fn min_max(p: &RatPoly2, f: impl Fn(Exponent) -> u32) -> (u32, u32) {
    let mut it = p.support().map(f);
    let first = it.next().expect("nonzero polynomial");
    it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

impl RatPoly2 {
    /// Exact quotient `p / d` if `d` divides `p`.
    ///
    /// The quotient is sought among polynomials supported in the exponent box
    /// allowed by the extreme degrees of `p` and `d`; the candidate from the
    /// linear solve is confirmed by multiplying back.
    pub fn divides(d: &RatPoly2, p: &RatPoly2) -> Result<Option<RatPoly2>, PolyError> {
        if d.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if p.is_zero() {
            return Ok(Some(RatPoly2::zero()));
        }
        if let Some(c) = d.constant_value() {
            return Ok(Some(p.scale(&c.recip())));
        }
        let (pxl, pxh) = min_max(p, |e| e.0);
        let (pyl, pyh) = min_max(p, |e| e.1);
        let (dxl, dxh) = min_max(d, |e| e.0);
        let (dyl, dyh) = min_max(d, |e| e.1);
        if pxl < dxl || pyl < dyl || pxh < dxh || pyh < dyh {
            return Ok(None);
        }
        let (qxl, qxh) = (pxl - dxl, pxh - dxh);
        let (qyl, qyh) = (pyl - dyl, pyh - dyh);
        if qxl > qxh || qyl > qyh {
            return Ok(None);
        }
        let unknowns: Vec<Exponent> = (qyl..=qyh).flat_map(|j| (qxl..=qxh).map(move |i| (i, j))).collect();
        let n = unknowns.len();

        // one equation per monomial of q*d - p
        let mut rows: BTreeMap<Exponent, Vec<Rational>> = BTreeMap::new();
        for (k, &(qi, qj)) in unknowns.iter().enumerate() {
            for ((di, dj), c) in d.terms() {
                let row = rows
                    .entry((qi + di, qj + dj))
                    .or_insert_with(|| vec![Rational::zero(); n]);
                row[k] += c;
            }
        }
        for (e, _) in p.terms() {
            if !rows.contains_key(&e) {
                return Ok(None);
            }
        }
        let rhs: Vec<Rational> = rows.keys().map(|&(i, j)| p.coeff(i, j)).collect();
        let mat: Vec<Vec<Rational>> = rows.into_values().collect();
        let Some(sol) = linalg::solve(&mat, &rhs, n) else {
            return Ok(None);
        };
        let q = RatPoly2::from_terms(unknowns.iter().zip(sol).map(|(&(i, j), c)| (i, j, c)));
        Ok((&q * d == *p).then_some(q))
    }

    /// `self / d`, panicking unless the division is exact.
    pub fn exact_div(&self, d: &RatPoly2) -> RatPoly2 {
        RatPoly2::divides(d, self)
            .ok()
            .flatten()
            .expect("inexact polynomial division")
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::p;
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(RatPoly2::divides(&p("x"), &p("x^2 + x*y")).unwrap(), Some(p("x + y")));
        let d = p("y^2 - x^3");
        let q = p("8*y - 3*x^2 - 6*x + 1");
        assert_eq!(RatPoly2::divides(&d, &(&d * &q)).unwrap(), Some(q));
        assert_eq!(RatPoly2::divides(&p("x"), &p("x + 1")).unwrap(), None);
        assert_eq!(
            RatPoly2::divides(&RatPoly2::zero(), &p("x")),
            Err(PolyError::ZeroDivisor)
        );
    }

    #[test]
    fn non_monic_and_constants() {
        let d = p("2*x*y - 3");
        let q = p("1/2*x^2 - y + 7");
        assert_eq!(RatPoly2::divides(&d, &(&d * &q)).unwrap(), Some(q));
        assert_eq!(RatPoly2::divides(&p("4"), &p("x")).unwrap(), Some(p("1/4*x")));
        assert_eq!(RatPoly2::divides(&p("x-y"), &p("x^2+y^2")).unwrap(), None);
    }
}
