//! Quotients of bivariate polynomials, enough for exact differentiation and
//! point evaluation of metric coefficients.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::RatPoly2;
use crate::rational::Rational;

/// `num / den` with `den ≠ 0`. No cancellation is attempted.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: RatPoly2,
    den: RatPoly2,
}

impl RatFunc {
    /// Panics on a zero denominator.
    pub fn new(num: RatPoly2, den: RatPoly2) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }
    }

    pub fn poly(p: RatPoly2) -> Self {
        RatFunc {
            num: p,
            den: RatPoly2::one(),
        }
    }

    pub fn num(&self) -> &RatPoly2 {
        &self.num
    }

    pub fn den(&self) -> &RatPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn partial(&self, var: usize) -> Self {
        let n = &(&self.num.partial(var) * &self.den) - &(&self.num * &self.den.partial(var));
        RatFunc {
            num: n,
            den: &self.den * &self.den,
        }
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x, y) / d)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.num.eval_f64(x, y) / self.den.eval_f64(x, y)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::new(-&self.num, self.den.clone())
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics when dividing by the zero function.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl From<RatPoly2> for RatFunc {
    fn from(p: RatPoly2) -> Self {
        RatFunc::poly(p)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::poly(RatPoly2::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::poly(RatPoly2::one())
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(s: &str) -> RatPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x / (1 + x^2)) = (1 - x^2) / (1 + x^2)^2
        let f = RatFunc::new(p("x"), p("1 + x^2"));
        let expected = RatFunc::new(p("1 - x^2"), p("(1 + x^2)^2"));
        assert_eq!(f.partial(0), expected);
        assert!(f.partial(1).is_zero());
        assert_eq!(f.eval(&int(1), &int(0)), Some(frac(1, 2)));
        assert_eq!(RatFunc::new(p("1"), p("x")).eval(&int(0), &int(3)), None);
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p("1"), p("x"));
        let b = RatFunc::new(p("1"), p("y"));
        assert_eq!(&a + &b, RatFunc::new(p("x + y"), p("x*y")));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(&a - &a, RatFunc::zero());
    }
}
