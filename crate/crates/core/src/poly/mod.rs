//! Sparse bivariate polynomials with exact rational coefficients.

mod divide;
mod gcd;
mod newton;
mod parse;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::upoly::UniPoly;

pub use newton::NewtonPolygon;
pub use parse::ParseError;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    NegativeExponent(i64),
    ZeroPolynomial,
    ZeroDivisor,
    Parse(ParseError),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NegativeExponent(e) => write!(f, "negative exponent {e}"),
            PolyError::ZeroPolynomial => f.write_str("operation undefined for the zero polynomial"),
            PolyError::ZeroDivisor => f.write_str("division by the zero polynomial"),
            PolyError::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl From<ParseError> for PolyError {
    fn from(e: ParseError) -> Self {
        PolyError::Parse(e)
    }
}

/// Bivariate polynomial in `x`, `y` over the rationals, stored as a map from
/// exponent pairs to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly2 {
    terms: BTreeMap<Exponent, Rational>,
}

impl fmt::Debug for RatPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly2({self})")
    }
}

impl RatPoly2 {
    pub fn zero() -> Self {
        RatPoly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rational::int(c))
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        RatPoly2 { terms }
    }

    /// Builds a polynomial from `(i, j, c)` triples; repeated exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term((i, j), c);
        }
        p
    }

    /// Integer-coefficient shorthand, mostly for tests and catalog data.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rational::int(c))))
    }

    /// Univariate polynomial in `x` viewed as a bivariate one.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (k as u32, 0, c.clone())))
    }

    pub fn from_y_poly(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| (0, k as u32, c.clone())))
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exponent, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms.keys().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    /// Largest `w1*i + w2*j` over the support; `None` stands for minus infinity.
    pub fn weighted_degree(&self, w: Weights) -> Option<u64> {
        self.terms.keys().map(|&e| w.degree_of(e)).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly2 {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        RatPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 + i, e.1 + j), c.clone()))
                .collect(),
        }
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(e, c)| (e.0 - 1, e.1, c * rational::int(e.0 as i64))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(e, c)| (e.0, e.1 - 1, c * rational::int(e.1 as i64))),
        )
    }

    /// `∂/∂x` for `var == 0`, `∂/∂y` for `var == 1`.
    pub fn partial(&self, var: usize) -> Self {
        match var {
            0 => self.partial_x(),
            1 => self.partial_y(),
            _ => panic!("variable index {var} out of range"),
        }
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

    pub fn checked_pow(&self, e: i64) -> Result<Self, PolyError> {
        if e < 0 {
            return Err(PolyError::NegativeExponent(e));
        }
        Ok(self.pow(e as u32))
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in y over Horner-in-x coefficients
        self.y_coefficients()
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, cx| acc * y + cx.eval(x))
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rational::to_f64(c) * powi(x, e.0) * powi(y, e.1))
            .sum()
    }

    /// Substitutes `x -> xs`, `y -> ys`.
    pub fn compose(&self, xs: &RatPoly2, ys: &RatPoly2) -> RatPoly2 {
        let mut xp: Vec<RatPoly2> = vec![RatPoly2::one()];
        let mut yp: Vec<RatPoly2> = vec![RatPoly2::one()];
        let mut out = RatPoly2::zero();
        for (&(i, j), c) in &self.terms {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap() * xs;
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp.last().unwrap() * ys;
                yp.push(next);
            }
            out += &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        out
    }

    /// Substitutes univariate polynomials `x -> xs(t)`, `y -> ys(t)`.
    pub fn compose_univariate(&self, xs: &UniPoly, ys: &UniPoly) -> UniPoly {
        let mut xp: Vec<UniPoly> = vec![UniPoly::one()];
        let mut yp: Vec<UniPoly> = vec![UniPoly::one()];
        let mut out = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap() * xs;
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp.last().unwrap() * ys;
                yp.push(next);
            }
            out = &out + &(&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        out
    }

    /// Coefficients with respect to `y`: entry `j` is the polynomial in `x`
    /// multiplying `y^j`.
    pub fn y_coefficients(&self) -> Vec<UniPoly> {
        let Some(dy) = self.degree_y() else {
            return Vec::new();
        };
        let dx = self.degree_x().unwrap_or(0) as usize;
        let mut rows = vec![vec![Rational::zero(); dx + 1]; dy as usize + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coefficients(coeffs: &[UniPoly]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, c)| (i as u32, j as u32, c.clone()))
        }))
    }

    /// The polynomial as a univariate polynomial in `x`, if it does not involve `y`.
    pub fn as_x_poly(&self) -> Option<UniPoly> {
        if self.degree_y().unwrap_or(0) > 0 {
            return None;
        }
        Some(self.y_coefficients().pop().unwrap_or_else(UniPoly::zero))
    }

    /// Leading term under graded-lex order with `x > y`.
    pub fn leading_grlex(&self) -> Option<(Exponent, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0)))
            .map(|(e, c)| (*e, c))
    }

    /// Scales so that the graded-lex leading coefficient is one.
    pub fn monic_grlex(&self) -> Self {
        match self.leading_grlex() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Smallest positive rational multiple with integer coprime coefficients
    /// and positive graded-lex leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = rational::lcm_denominators(self.terms.values());
        let num = self
            .terms
            .values()
            .fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c.numer()));
        let mut s = Rational::new(den, num);
        if self.leading_grlex().unwrap().1 < &Rational::zero() {
            s = -s;
        }
        self.scale(&s)
    }

    /// `self = c * other` for some nonzero rational `c`.
    pub fn proportional_to(&self, other: &RatPoly2) -> Option<Rational> {
        let (e, c) = other.leading_grlex()?;
        let k = self.coeff(e.0, e.1) / c;
        (!k.is_zero() && self == &other.scale(&k)).then_some(k)
    }
}

fn powi(v: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= v;
    }
    acc
}

/// Normalized positive integer weights `(w1, w2)` with `gcd(w1, w2) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weights {
    w1: u32,
    w2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidWeights;

impl fmt::Display for InvalidWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("weights must be positive")
    }
}

impl Weights {
    /// Divides out the common factor.
    pub fn new(w1: u32, w2: u32) -> Result<Self, InvalidWeights> {
        if w1 == 0 || w2 == 0 {
            return Err(InvalidWeights);
        }
        let g = w1.gcd(&w2);
        Ok(Weights { w1: w1 / g, w2: w2 / g })
    }

    /// Clears denominators of a positive rational pair, then normalizes.
    pub fn from_rationals(w1: &Rational, w2: &Rational) -> Result<Self, InvalidWeights> {
        use num_traits::{Signed, ToPrimitive};
        if !w1.is_positive() || !w2.is_positive() {
            return Err(InvalidWeights);
        }
        let l = w1.denom().lcm(w2.denom());
        let a = (w1 * Rational::from_integer(l.clone())).to_integer();
        let b = (w2 * Rational::from_integer(l)).to_integer();
        let g = a.gcd(&b);
        let a = (a / &g).to_u32().ok_or(InvalidWeights)?;
        let b = (b / &g).to_u32().ok_or(InvalidWeights)?;
        Self::new(a, b)
    }

    pub fn w1(self) -> u32 {
        self.w1
    }

    pub fn w2(self) -> u32 {
        self.w2
    }

    /// Weight of variable `var` (0 for `x`, 1 for `y`).
    pub fn get(self, var: usize) -> u32 {
        match var {
            0 => self.w1,
            1 => self.w2,
            _ => panic!("variable index {var} out of range"),
        }
    }

    pub fn degree_of(self, (i, j): Exponent) -> u64 {
        self.w1 as u64 * i as u64 + self.w2 as u64 * j as u64
    }

    /// All exponents with weighted degree at most `bound`, sorted by
    /// (weighted degree, x-exponent).
    pub fn monomials_up_to(self, bound: u64) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut j = 0u32;
        while self.w2 as u64 * j as u64 <= bound {
            let rest = bound - self.w2 as u64 * j as u64;
            for i in 0..=(rest / self.w1 as u64) as u32 {
                out.push((i, j));
            }
            j += 1;
        }
        out.sort_by_key(|&e| (self.degree_of(e), e.0));
        out
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.w1, self.w2)
    }
}

impl Add for &RatPoly2 {
    type Output = RatPoly2;
    fn add(self, rhs: &RatPoly2) -> RatPoly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &RatPoly2 {
    type Output = RatPoly2;
    fn sub(self, rhs: &RatPoly2) -> RatPoly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&RatPoly2> for RatPoly2 {
    fn add_assign(&mut self, rhs: &RatPoly2) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&RatPoly2> for RatPoly2 {
    fn sub_assign(&mut self, rhs: &RatPoly2) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Neg for &RatPoly2 {
    type Output = RatPoly2;
    fn neg(self) -> RatPoly2 {
        RatPoly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &RatPoly2 {
    type Output = RatPoly2;
    fn mul(self, rhs: &RatPoly2) -> RatPoly2 {
        let mut out = RatPoly2::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly2 {
            type Output = RatPoly2;
            fn $m(self, rhs: RatPoly2) -> RatPoly2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatPoly2> for RatPoly2 {
            type Output = RatPoly2;
            fn $m(self, rhs: &RatPoly2) -> RatPoly2 {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatPoly2> for &RatPoly2 {
            type Output = RatPoly2;
            fn $m(self, rhs: RatPoly2) -> RatPoly2 {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatPoly2 {
    type Output = RatPoly2;
    fn neg(self) -> RatPoly2 {
        -&self
    }
}

impl Zero for RatPoly2 {
    fn zero() -> Self {
        RatPoly2::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RatPoly2 {
    fn one() -> Self {
        RatPoly2::one()
    }
}

impl core::iter::Sum for RatPoly2 {
    fn sum<I: Iterator<Item = RatPoly2>>(iter: I) -> Self {
        iter.fold(RatPoly2::zero(), |acc, p| acc + p)
    }
}

impl core::iter::Product for RatPoly2 {
    fn product<I: Iterator<Item = RatPoly2>>(iter: I) -> Self {
        iter.fold(RatPoly2::one(), |acc, p| acc * p)
    }
}
