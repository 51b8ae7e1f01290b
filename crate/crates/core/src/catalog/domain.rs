//! Sign-condition descriptions of the domains `Ω`.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::poly::RatPoly2;
use crate::rational::{to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn holds(self, v: &Rational) -> bool {
        match self {
            Sign::Positive => v.is_positive(),
            Sign::Negative => v.is_negative(),
        }
    }

    pub fn holds_f64(self, v: f64) -> bool {
        match self {
            Sign::Positive => v > 0.0,
            Sign::Negative => v < 0.0,
        }
    }
}

/// Closed rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl BBox {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Self {
        BBox { x0, x1, y0, y1 }
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        &self.x0 <= x && x <= &self.x1 && &self.y0 <= y && y <= &self.y1
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [to_f64(&self.x0), to_f64(&self.x1), to_f64(&self.y0), to_f64(&self.y1)]
    }
}

/// `Ω = {p_k ⋚ 0 for all k}`; the box (if any) contains `Ω`, and the
/// breakpoints are abscissas where the vertical sections change shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainSpec {
    pub signs: Vec<(RatPoly2, Sign)>,
    pub bbox: Option<BBox>,
    pub breakpoints: Vec<Rational>,
}

impl DomainSpec {
    pub fn new(signs: Vec<(RatPoly2, Sign)>, bbox: Option<BBox>, breakpoints: Vec<Rational>) -> Self {
        DomainSpec {
            signs,
            bbox,
            breakpoints,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bbox.is_some()
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.signs.iter().all(|(p, s)| s.holds(&p.eval(x, y)))
    }

    pub fn contains_f64(&self, x: f64, y: f64) -> bool {
        self.signs.iter().all(|(p, s)| s.holds_f64(p.eval_f64(x, y)))
    }

    /// Whether `(x, y)` lies on the zero set of some sign polynomial.
    pub fn on_boundary(&self, x: &Rational, y: &Rational) -> bool {
        self.signs.iter().any(|(p, _)| p.eval(x, y).is_zero())
    }
}
