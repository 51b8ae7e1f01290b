//! Dense univariate polynomials over the rationals.
//!
//! Used as the coefficient ring for the subresultant gcd, for curve
//! parametrizations in `t`, and for exact characteristic polynomials.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    // coeffs[k] multiplies t^k; no trailing zeros
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + rational::to_f64(c))
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = &rem[idx] - &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient when `d` divides `self`, otherwise `None`.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Pseudo-remainder `prem(self, d)` = remainder of `lc(d)^(deg self - deg d + 1) * self`.
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let (Some(da), Some(dd)) = (self.degree(), d.degree()) else {
            return self.clone();
        };
        if da < dd {
            return self.clone();
        }
        let factor = num_traits::pow(d.leading(), da - dd + 1);
        self.scale(&factor).div_rem(d).1
    }

    /// Squarefree part (monic), `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's squarefree factorization: pairs `(factor, multiplicity)` with
    /// monic, pairwise coprime, squarefree factors.
    pub fn squarefree_factorization(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        loop {
            let g = b.gcd(&d);
            if !g.is_constant() {
                out.push((g.clone(), k));
            }
            b = b.exact_div(&g).expect("gcd divides");
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&g).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Sturm sequence of a squarefree polynomial.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    /// Number of distinct real roots of a squarefree polynomial (exact).
    pub fn count_real_roots(&self) -> usize {
        if self.is_constant() {
            return 0;
        }
        let seq = self.sturm_sequence();
        let at = |neg_inf: bool| {
            let signs: Vec<i8> = seq
                .iter()
                .filter(|p| !p.is_zero())
                .map(|p| {
                    let s: i8 = if p.leading().is_positive() { 1 } else { -1 };
                    let odd = p.degree().unwrap_or(0) % 2 == 1;
                    if neg_inf && odd {
                        -s
                    } else {
                        s
                    }
                })
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        at(true) - at(false)
    }

    /// Sign changes of a Sturm sequence at `t`, zeros skipped.
    fn sign_changes(seq: &[UniPoly], t: &Rational) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for p in seq {
            let v = p.eval(t);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                continue;
            };
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_in(&self, a: &Rational, b: &Rational) -> usize {
        if self.is_constant() {
            return 0;
        }
        let seq = self.squarefree_part().sturm_sequence();
        Self::sign_changes(&seq, a) - Self::sign_changes(&seq, b)
    }

    /// Isolating intervals `(lo, hi]` for the distinct real roots in
    /// `(a, b]`, each of width at most `tol` and in increasing order.
    /// A root hit exactly is returned as a degenerate interval.
    pub fn real_roots_in(&self, a: &Rational, b: &Rational, tol: &Rational) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        if self.is_constant() || a >= b {
            return out;
        }
        let p = self.squarefree_part();
        let seq = p.sturm_sequence();
        let two = rational::int(2);
        // stack of (lo, hi, roots in (lo, hi]) processed left to right
        let count = Self::sign_changes(&seq, a) - Self::sign_changes(&seq, b);
        let mut stack = vec![(a.clone(), b.clone(), count)];
        while let Some((lo, hi, n)) = stack.pop() {
            if n == 0 {
                continue;
            }
            if n == 1 && &hi - &lo <= *tol {
                out.push((lo, hi));
                continue;
            }
            if n == 1 {
                if let Some(r) = p.bisect(lo.clone(), hi.clone(), tol) {
                    out.push(r);
                    continue;
                }
            }
            let mid = (&lo + &hi) / &two;
            if n == 1 && p.eval(&mid).is_zero() {
                out.push((mid.clone(), mid));
                continue;
            }
            let left = Self::sign_changes(&seq, &lo) - Self::sign_changes(&seq, &mid);
            stack.push((mid.clone(), hi, n - left));
            stack.push((lo, mid, left));
        }
        out
    }

    /// Sign bisection for the single root in `(lo, hi]`; `None` when `lo`
    /// is itself a root and signs cannot separate.
    fn bisect(&self, mut lo: Rational, mut hi: Rational, tol: &Rational) -> Option<(Rational, Rational)> {
        let s_lo = self.eval(&lo).signum();
        if s_lo.is_zero() {
            return None;
        }
        let two = rational::int(2);
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / &two;
            let v = self.eval(&mid);
            if v.is_zero() {
                return Some((mid.clone(), mid));
            }
            if v.signum() == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some((lo, hi))
    }

    /// Distinct real roots, each located to within `tol`.
    pub fn real_roots(&self, tol: &Rational) -> Vec<(Rational, Rational)> {
        if self.is_constant() {
            return Vec::new();
        }
        let b = self.root_bound();
        self.real_roots_in(&-&b, &b, tol)
    }

    /// Cauchy bound on the absolute value of every complex root.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lc)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t+2) and (t-1)(t+5)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 1]).exact_div(&p(&[0, 1])).is_none());
    }

    #[test]
    fn yun_factorization() {
        // (t-1)^3 (t+1)
        let f = &p(&[-1, 1]).pow(3) * &p(&[1, 1]);
        let sf = f.squarefree_factorization();
        assert_eq!(sf, vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 3)]);
        assert_eq!(f.squarefree_part(), &p(&[-1, 1]) * &p(&[1, 1]));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p(&[-2, 0, 1]).count_real_roots(), 2);
        assert_eq!(p(&[1, 0, 1]).count_real_roots(), 0);
        // t^3 - t has three real roots
        assert_eq!(p(&[0, -1, 0, 1]).count_real_roots(), 3);
    }

    #[test]
    fn root_isolation() {
        // (t - 1/3)(t + 2)(t^2 - 2)
        let f = &(&UniPoly::new(vec![rational::frac(-1, 3), Rational::one()]) * &p(&[2, 1])) * &p(&[-2, 0, 1]);
        let tol = rational::frac(1, 1 << 30);
        let roots = f.real_roots(&tol);
        let mids: Vec<f64> = roots
            .iter()
            .map(|(a, b)| rational::to_f64(&((a + b) / rational::int(2))))
            .collect();
        let expect = [-2.0, -core::f64::consts::SQRT_2, 1.0 / 3.0, core::f64::consts::SQRT_2];
        assert_eq!(mids.len(), 4);
        for (m, e) in mids.iter().zip(expect) {
            assert!((m - e).abs() < 1e-9, "{m} vs {e}");
        }
        assert_eq!(f.count_roots_in(&rational::int(0), &rational::int(2)), 2);
        // a root sitting on the right endpoint is counted
        assert_eq!(f.count_roots_in(&rational::int(-3), &rational::int(-2)), 1);
        assert_eq!(p(&[1, 0, 1]).real_roots(&tol), vec![]);
    }

    #[test]
    fn composition() {
        let f = p(&[1, 0, 1]);
        let g = p(&[1, 1]);
        assert_eq!(f.compose(&g), p(&[2, 2, 1]));
    }
}
