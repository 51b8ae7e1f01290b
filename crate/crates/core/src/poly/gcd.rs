//! Polynomial gcd via the subresultant remainder sequence in `y` over `Q[x]`.

use alloc::vec::Vec;

use super::{PolyError, RatPoly2};
use crate::upoly::UniPoly;

/// Polynomial in `y` with coefficients in `Q[x]`; index is the power of `y`.
type YPoly = Vec<UniPoly>;

fn trim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deg(p: &YPoly) -> usize {
    p.len() - 1
}

fn content(p: &YPoly) -> UniPoly {
    p.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn div_coeffs(p: &YPoly, d: &UniPoly) -> YPoly {
    p.iter()
        .map(|c| c.exact_div(d).expect("content divides every coefficient"))
        .collect()
}

fn primitive_part(p: &YPoly) -> YPoly {
    div_coeffs(p, &content(p))
}

/// Pseudo-remainder of `a` by `b` (both nonzero, `deg a >= deg b`).
fn pseudo_rem(a: &YPoly, b: &YPoly) -> YPoly {
    let lb = b.last().unwrap();
    let db = deg(b);
    let mut r = a.clone();
    let mut steps = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * bc);
        }
        r = trim(r);
        steps -= 1;
    }
    // complete the lc(b)^(deg a - deg b + 1) scaling
    let lb_pow = lb.pow(steps as u32);
    trim(r.into_iter().map(|c| &c * &lb_pow).collect())
}

/// Gcd of two primitive polynomials of positive degree in `y`.
fn subresultant_gcd(a: &YPoly, b: &YPoly) -> YPoly {
    let (mut a, mut b) = if deg(a) >= deg(b) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return primitive_part(&b);
        }
        if r.len() == 1 {
            return alloc::vec![UniPoly::one()];
        }
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = div_coeffs(&r, &divisor);
        g = a.last().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant division is exact")
        };
    }
}

impl RatPoly2 {
    /// Greatest common divisor, normalized to graded-lex leading coefficient 1.
    pub fn gcd(p: &RatPoly2, q: &RatPoly2) -> RatPoly2 {
        if p.is_zero() {
            return q.monic_grlex();
        }
        if q.is_zero() {
            return p.monic_grlex();
        }
        let pa = p.y_coefficients();
        let qa = q.y_coefficients();
        let cont = content(&pa).gcd(&content(&qa));
        let (pp, qp) = (primitive_part(&pa), primitive_part(&qa));
        let g = if pp.len() == 1 || qp.len() == 1 {
            alloc::vec![UniPoly::one()]
        } else {
            subresultant_gcd(&pp, &qp)
        };
        let out: YPoly = g.iter().map(|c| c * &cont).collect();
        RatPoly2::from_y_coefficients(&out).monic_grlex()
    }

    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = RatPoly2::gcd(&RatPoly2::gcd(self, &self.partial_x()), &self.partial_y());
        Ok(g.is_constant())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::p;
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(RatPoly2::gcd(&p("x^2 - y^2"), &p("x - y")), p("x - y"));
        assert_eq!(RatPoly2::gcd(&p("y^2 - x^3"), &p("2*y")), p("1"));
        assert_eq!(RatPoly2::gcd(&p("3*x*y + 6"), &RatPoly2::zero()), p("x*y + 2"));
    }

    #[test]
    fn squarefree_examples() {
        assert!(p("y^2 - x^3").is_squarefree().unwrap());
        assert!(!p("(y - x)^2").is_squarefree().unwrap());
        let b2 = &p("8*y - 3*x^2 - 6*x + 1") * &p("x^3 - y^2");
        assert!(b2.is_squarefree().unwrap());
        assert!(!(&b2 * &p("x^3 - y^2")).is_squarefree().unwrap());
        assert!(RatPoly2::zero().is_squarefree().is_err());
    }

    #[test]
    fn common_factor_recovered() {
        let r = p("x*y^2 - 3*x + y + 1");
        let a = &p("y^3 + x^2") * &r;
        let b = &p("x*y - 5") * &r;
        assert_eq!(RatPoly2::gcd(&a, &b), r.monic_grlex());
        // content in x shared
        let a = &p("x + 1") * &p("y^2 + x");
        let b = &p("(x + 1)^2") * &p("y");
        assert_eq!(RatPoly2::gcd(&a, &b), p("x + 1"));
    }
}
