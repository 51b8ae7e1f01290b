//! The algebraic boundary conditions on a cometric `g` and a boundary
//! polynomial `Γ`: degree boxes, `Γ | det g`, and the tangency identities
//! `a Γ_x + b Γ_y = S1 Γ`, `b Γ_x + c Γ_y = S2 Γ`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::poly::{Exponent, RatPoly2, Weights};
use crate::rational::Rational;
use crate::upoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgError {
    /// `det g` is the zero polynomial.
    DegenerateMetric,
    /// `Γ` is not a factor of `det g`.
    BoundaryNotInDeterminant,
    /// Row `i` of `g ∇Γ` is not divisible by `Γ`.
    NotTangent(usize),
    ConstantFactor(usize),
    FactorsNotCoprime(usize, usize),
    NotSquarefree,
    /// Supplied factors do not multiply back to `det g`.
    FactorizationMismatch,
    DegenerateChange,
}

impl fmt::Display for AlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgError::DegenerateMetric => f.write_str("det g vanishes identically"),
            AlgError::BoundaryNotInDeterminant => f.write_str("boundary polynomial does not divide det g"),
            AlgError::NotTangent(i) => {
                write!(f, "boundary polynomial does not divide row {} of g·∇Γ", i + 1)
            }
            AlgError::ConstantFactor(k) => write!(f, "boundary factor {k} is constant"),
            AlgError::FactorsNotCoprime(i, j) => {
                write!(f, "boundary factors {i} and {j} share a common factor")
            }
            AlgError::NotSquarefree => f.write_str("boundary polynomial is not square-free"),
            AlgError::FactorizationMismatch => {
                f.write_str("supplied factors do not multiply to det g up to a constant")
            }
            AlgError::DegenerateChange => f.write_str("scaling change with a zero factor"),
        }
    }
}

/// Symmetric polynomial matrix `[[a, b], [b, c]]` with its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cometric {
    a: RatPoly2,
    b: RatPoly2,
    c: RatPoly2,
    det: RatPoly2,
}

impl Cometric {
    pub fn new(a: RatPoly2, b: RatPoly2, c: RatPoly2) -> Self {
        let det = &(&a * &c) - &(&b * &b);
        Cometric { a, b, c, det }
    }

    pub fn diag(a: RatPoly2, c: RatPoly2) -> Self {
        Self::new(a, RatPoly2::zero(), c)
    }

    pub fn a(&self) -> &RatPoly2 {
        &self.a
    }

    pub fn b(&self) -> &RatPoly2 {
        &self.b
    }

    pub fn c(&self) -> &RatPoly2 {
        &self.c
    }

    /// `det g = ac - b²`.
    pub fn det(&self) -> &RatPoly2 {
        &self.det
    }

    /// Entry `g^{ij}` for `i, j ∈ {0, 1}`.
    pub fn entry(&self, i: usize, j: usize) -> &RatPoly2 {
        match (i, j) {
            (0, 0) => &self.a,
            (1, 1) => &self.c,
            _ => &self.b,
        }
    }

    /// Adjugate entry, so that `g_{ij} = adjugate(i, j) / det g`.
    pub fn adjugate(&self, i: usize, j: usize) -> RatPoly2 {
        match (i, j) {
            (0, 0) => self.c.clone(),
            (1, 1) => self.a.clone(),
            _ => -&self.b,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.a.scale(s), self.b.scale(s), self.c.scale(s))
    }

    /// Positive definiteness at a rational point by leading minors.
    pub fn is_positive_definite_at(&self, x: &Rational, y: &Rational) -> bool {
        self.a.eval(x, y).is_positive() && self.det.eval(x, y).is_positive()
    }

    /// Entrywise `f(x, y) -> f(xs, ys)`.
    pub fn compose(&self, xs: &RatPoly2, ys: &RatPoly2) -> Self {
        Self::new(self.a.compose(xs, ys), self.b.compose(xs, ys), self.c.compose(xs, ys))
    }
}

/// `Γ` as a list of pairwise coprime non-constant factors; the empty list
/// stands for `Γ = 1` (the whole plane).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySpec {
    factors: Vec<RatPoly2>,
    product: RatPoly2,
}

impl BoundarySpec {
    pub fn new(factors: Vec<RatPoly2>) -> Result<Self, AlgError> {
        for (k, f) in factors.iter().enumerate() {
            if f.is_constant() {
                return Err(AlgError::ConstantFactor(k));
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if !RatPoly2::gcd(&factors[i], &factors[j]).is_constant() {
                    return Err(AlgError::FactorsNotCoprime(i, j));
                }
            }
        }
        let product: RatPoly2 = factors.iter().cloned().product();
        if !product.is_constant() && !product.is_squarefree().unwrap_or(false) {
            return Err(AlgError::NotSquarefree);
        }
        Ok(BoundarySpec { factors, product })
    }

    pub fn single(gamma: RatPoly2) -> Result<Self, AlgError> {
        Self::new(vec![gamma])
    }

    pub fn whole_plane() -> Self {
        BoundarySpec {
            factors: Vec::new(),
            product: RatPoly2::one(),
        }
    }

    pub fn factors(&self) -> &[RatPoly2] {
        &self.factors
    }

    /// `Γ = ∏ Γ_k`.
    pub fn product(&self) -> &RatPoly2 {
        &self.product
    }

    pub fn map(&self, f: impl Fn(&RatPoly2) -> RatPoly2) -> Result<Self, AlgError> {
        Self::new(self.factors.iter().map(f).collect())
    }
}

/// Quotients `S1`, `S2` witnessing `Γ | g ∇Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorCertificate {
    pub s1: RatPoly2,
    pub s2: RatPoly2,
}

impl CofactorCertificate {
    pub fn s(&self, i: usize) -> &RatPoly2 {
        if i == 0 {
            &self.s1
        } else {
            &self.s2
        }
    }

    /// `deg_w S^i ≤ w_i` in the normalized weight scale.
    pub fn within_degree_bounds(&self, w: Weights) -> bool {
        (0..2).all(|i| self.s(i).weighted_degree(w).is_none_or(|d| d <= w.get(i) as u64))
    }

    /// Re-checks both identities by multiplication.
    pub fn verify(&self, g: &Cometric, gamma: &RatPoly2) -> bool {
        let (gx, gy) = (gamma.partial_x(), gamma.partial_y());
        &(g.a() * &gx) + &(g.b() * &gy) == &self.s1 * gamma && &(g.b() * &gx) + &(g.c() * &gy) == &self.s2 * gamma
    }
}

/// `deg_w a ≤ 2w1`, `deg_w b ≤ w1 + w2`, `deg_w c ≤ 2w2`.
pub fn check_a1(g: &Cometric, w: Weights) -> bool {
    let ok = |p: &RatPoly2, bound: u32| p.weighted_degree(w).is_none_or(|d| d <= bound as u64);
    ok(g.a(), 2 * w.w1()) && ok(g.b(), w.w1() + w.w2()) && ok(g.c(), 2 * w.w2())
}

/// Tangency of `g` to a single polynomial: the cofactors if `γ` divides both
/// rows of `g ∇γ`.
pub fn tangency_cofactors(g: &Cometric, gamma: &RatPoly2) -> Result<CofactorCertificate, AlgError> {
    let (gx, gy) = (gamma.partial_x(), gamma.partial_y());
    let row1 = &(g.a() * &gx) + &(g.b() * &gy);
    let row2 = &(g.b() * &gx) + &(g.c() * &gy);
    let s1 = RatPoly2::divides(gamma, &row1)
        .ok()
        .flatten()
        .ok_or(AlgError::NotTangent(0))?;
    let s2 = RatPoly2::divides(gamma, &row2)
        .ok()
        .flatten()
        .ok_or(AlgError::NotTangent(1))?;
    Ok(CofactorCertificate { s1, s2 })
}

/// Checks `det g ≢ 0`, `Γ | det g` and the tangency identities; the
/// certificate is verified by back-multiplication.
pub fn check_a2_a3(g: &Cometric, boundary: &BoundarySpec) -> Result<CofactorCertificate, AlgError> {
    if g.det().is_zero() {
        return Err(AlgError::DegenerateMetric);
    }
    let gamma = boundary.product();
    if RatPoly2::divides(gamma, g.det()).ok().flatten().is_none() {
        return Err(AlgError::BoundaryNotInDeterminant);
    }
    let cert = tangency_cofactors(g, gamma)?;
    debug_assert!(cert.verify(g, gamma));
    Ok(cert)
}

/// One element of a `solve_metric` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSolution {
    pub metric: Cometric,
    pub certificate: CofactorCertificate,
}

/// Column layout of the linear system: the unknown coefficients of
/// `a, b, c, S1, S2`, each over its degree box.
struct Layout {
    boxes: [Vec<Exponent>; 5],
}

impl Layout {
    fn new(w: Weights) -> Self {
        let (w1, w2) = (w.w1() as u64, w.w2() as u64);
        Layout {
            boxes: [
                w.monomials_up_to(2 * w1),
                w.monomials_up_to(w1 + w2),
                w.monomials_up_to(2 * w2),
                w.monomials_up_to(w1),
                w.monomials_up_to(w2),
            ],
        }
    }

    fn offset(&self, k: usize) -> usize {
        self.boxes[..k].iter().map(Vec::len).sum()
    }

    fn ncols(&self) -> usize {
        self.offset(5)
    }

    fn unpack(&self, v: &[Rational], k: usize) -> RatPoly2 {
        let off = self.offset(k);
        RatPoly2::from_terms(
            self.boxes[k]
                .iter()
                .enumerate()
                .map(|(n, &(i, j))| (i, j, v[off + n].clone())),
        )
    }
}

/// Basis of all `(a, b, c, S1, S2)` in the weighted degree boxes satisfying
/// the tangency identities for `Γ`. The determinant condition is not
/// imposed. Columns are ordered `a, b, c, S1, S2`, each by weighted degree
/// then `x`-exponent; basis vectors are primitive integer vectors.
pub fn solve_metric(boundary: &BoundarySpec, w: Weights) -> Vec<MetricSolution> {
    let gamma = boundary.product();
    let (gx, gy) = (gamma.partial_x(), gamma.partial_y());
    let layout = Layout::new(w);
    let n = layout.ncols();
    let mut rows: BTreeMap<(u8, Exponent), Vec<Rational>> = BTreeMap::new();
    let mut put = |row: u8, col: usize, p: &RatPoly2, sign: bool| {
        for (e, c) in p.terms() {
            let r = rows.entry((row, e)).or_insert_with(|| vec![Rational::zero(); n]);
            if sign {
                r[col] += c;
            } else {
                r[col] -= c;
            }
        }
    };
    // row 0: a Γx + b Γy - S1 Γ ; row 1: b Γx + c Γy - S2 Γ
    let terms: [(usize, u8, &RatPoly2, bool); 6] = [
        (0, 0, &gx, true),
        (1, 0, &gy, true),
        (3, 0, gamma, false),
        (1, 1, &gx, true),
        (2, 1, &gy, true),
        (4, 1, gamma, false),
    ];
    for (k, row, factor, sign) in terms {
        let off = layout.offset(k);
        for (idx, &(i, j)) in layout.boxes[k].iter().enumerate() {
            put(row, off + idx, &factor.mul_monomial(i, j), sign);
        }
    }
    let mat: Vec<Vec<Rational>> = rows.into_values().collect();
    linalg::nullspace(&mat, n)
        .into_iter()
        .map(|v| MetricSolution {
            metric: Cometric::new(layout.unpack(&v, 0), layout.unpack(&v, 1), layout.unpack(&v, 2)),
            certificate: CofactorCertificate {
                s1: layout.unpack(&v, 3),
                s2: layout.unpack(&v, 4),
            },
        })
        .collect()
}

/// Largest boundary for `g` built from a supplied factorization of
/// `det g`: the distinct non-constant factors that are individually tangent.
pub fn maximal_boundary(g: &Cometric, det_factors: &[RatPoly2]) -> Result<BoundarySpec, AlgError> {
    let product: RatPoly2 = det_factors.iter().cloned().product();
    if g.det().is_zero() || product.proportional_to(g.det()).is_none() {
        return Err(AlgError::FactorizationMismatch);
    }
    let mut distinct: Vec<RatPoly2> = Vec::new();
    for f in det_factors.iter().filter(|f| !f.is_constant()) {
        if distinct.iter().all(|d| f.proportional_to(d).is_none()) {
            distinct.push(f.clone());
        }
    }
    let keep = distinct
        .into_iter()
        .filter(|f| tangency_cofactors(g, f).is_ok())
        .collect();
    BoundarySpec::new(keep)
}

/// Elementary admissible changes of variables `(x, y) -> (X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Change {
    /// `(x + β, y)`
    Translate(Rational),
    /// `(α x, γ y)`
    Scale(Rational, Rational),
    /// `(x, y + p(x))`
    Shear(UniPoly),
}

impl Change {
    /// Polynomials `(x(X, Y), y(X, Y))` of the inverse map.
    pub fn inverse(&self) -> (RatPoly2, RatPoly2) {
        match self {
            Change::Translate(beta) => (&RatPoly2::x() - &RatPoly2::constant(beta.clone()), RatPoly2::y()),
            Change::Scale(alpha, gamma) => (RatPoly2::x().scale(&alpha.recip()), RatPoly2::y().scale(&gamma.recip())),
            Change::Shear(p) => (RatPoly2::x(), &RatPoly2::y() - &RatPoly2::from_x_poly(p)),
        }
    }

    /// Polynomials `(X(x, y), Y(x, y))` of the forward map.
    pub fn forward(&self) -> (RatPoly2, RatPoly2) {
        match self {
            Change::Translate(beta) => (&RatPoly2::x() + &RatPoly2::constant(beta.clone()), RatPoly2::y()),
            Change::Scale(alpha, gamma) => (RatPoly2::x().scale(alpha), RatPoly2::y().scale(gamma)),
            Change::Shear(p) => (RatPoly2::x(), &RatPoly2::y() + &RatPoly2::from_x_poly(p)),
        }
    }

    fn validate(&self) -> Result<(), AlgError> {
        match self {
            Change::Scale(a, g) if a.is_zero() || g.is_zero() => Err(AlgError::DegenerateChange),
            _ => Ok(()),
        }
    }

    /// Square of the Jacobian determinant (constant for these maps).
    pub fn jacobian_squared(&self) -> Rational {
        match self {
            Change::Scale(a, g) => (a * g) * (a * g),
            _ => Rational::one(),
        }
    }

    /// `f ∘ Φ⁻¹`.
    pub fn push_poly(&self, f: &RatPoly2) -> RatPoly2 {
        let (xs, ys) = self.inverse();
        f.compose(&xs, &ys)
    }

    pub fn push_boundary(&self, b: &BoundarySpec) -> Result<BoundarySpec, AlgError> {
        b.map(|f| self.push_poly(f))
    }
}

/// Pushforward `Φ_* g`: `J g Jᵀ` composed with the inverse map.
pub fn apply_change(g: &Cometric, change: &Change) -> Result<Cometric, AlgError> {
    change.validate()?;
    let (a, b, c) = (g.a(), g.b(), g.c());
    let moved = match change {
        Change::Translate(_) => g.clone(),
        Change::Scale(alpha, gamma) => Cometric::new(
            a.scale(&(alpha * alpha)),
            b.scale(&(alpha * gamma)),
            c.scale(&(gamma * gamma)),
        ),
        Change::Shear(p) => {
            let dp = RatPoly2::from_x_poly(&p.derivative());
            let pa = &dp * a;
            let b2 = &pa + b;
            let c2 = &(&(&dp * &pa) + &(&dp * b).scale(&crate::rational::int(2))) + c;
            Cometric::new(a.clone(), b2, c2)
        }
    };
    let (xs, ys) = change.inverse();
    Ok(moved.compose(&xs, &ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(s: &str) -> RatPoly2 {
        s.parse().unwrap()
    }

    fn w12() -> Weights {
        Weights::new(1, 2).unwrap()
    }

    fn g28() -> Cometric {
        Cometric::new(
            p("y + 8*x - 9*x^2"),
            p("5*(4*y - 3*x*y - x^2)"),
            p("-25*(y^2 - 4*x*y + 3*x^3)"),
        )
    }

    fn gamma25() -> RatPoly2 {
        p("y^3 - 20*x*y^2 + 16*y^2 + 45*x^3*y - 40*x^2*y - 27*x^5 + 25*x^4")
    }

    #[test]
    fn a1_examples() {
        assert!(check_a1(&g28(), w12()));
        assert!(!check_a1(&Cometric::diag(p("1"), p("x^5")), w12()));
        for w2 in 1..6 {
            let w = Weights::new(1, w2).unwrap();
            assert!(check_a1(&Cometric::diag(p("1 - x^2"), p("3*(1 - y^2)")), w));
        }
    }

    #[test]
    fn a2_a3_examples() {
        let b1 = BoundarySpec::single(gamma25()).unwrap();
        let cert = check_a2_a3(&g28(), &b1).unwrap();
        assert!(cert.within_degree_bounds(w12()));
        assert!(cert.verify(&g28(), &gamma25()));

        let n = 3;
        let gamma = p("x^3 - y^2");
        let g = Cometric::new(p("x"), p("3/2*y"), &p("9/4*x^2") + &gamma);
        let cert = check_a2_a3(&g, &BoundarySpec::single(gamma).unwrap()).unwrap();
        assert_eq!(cert.s1, RatPoly2::from_int(n));

        let id = Cometric::diag(p("1"), p("1"));
        assert_eq!(
            check_a2_a3(&id, &BoundarySpec::single(p("x")).unwrap()),
            Err(AlgError::BoundaryNotInDeterminant)
        );
        let g = Cometric::diag(p("1"), p("x"));
        assert_eq!(
            check_a2_a3(&g, &BoundarySpec::single(p("x")).unwrap()),
            Err(AlgError::NotTangent(0))
        );
        let flat = Cometric::new(p("x"), p("x"), p("x"));
        assert_eq!(
            check_a2_a3(&flat, &BoundarySpec::whole_plane()),
            Err(AlgError::DegenerateMetric)
        );
    }

    #[test]
    fn boundary_validation() {
        assert_eq!(BoundarySpec::new(vec![p("3")]), Err(AlgError::ConstantFactor(0)));
        assert_eq!(
            BoundarySpec::new(vec![p("x*y"), p("x + x^2")]),
            Err(AlgError::FactorsNotCoprime(0, 1))
        );
        assert_eq!(BoundarySpec::new(vec![p("(x - y)^2")]), Err(AlgError::NotSquarefree));
        assert_eq!(BoundarySpec::whole_plane().product(), &RatPoly2::one());
    }

    #[test]
    fn solver_recovers_dodecahedral_metric() {
        let sols = solve_metric(&BoundarySpec::single(gamma25()).unwrap(), w12());
        assert_eq!(sols.len(), 1);
        let g = &sols[0].metric;
        let k = g.a().proportional_to(g28().a()).unwrap();
        assert_eq!(g, &g28().scale(&k));
    }

    #[test]
    fn solver_dimensions_for_small_boundaries() {
        let cusp = solve_metric(&BoundarySpec::single(p("y^2 - x^3")).unwrap(), w12());
        assert_eq!(cusp.len(), 4);
        let line = solve_metric(&BoundarySpec::single(p("y")).unwrap(), w12());
        assert_eq!(line.len(), 10);
        for s in cusp.iter().chain(&line) {
            assert!(check_a1(&s.metric, w12()));
            assert!(s.certificate.within_degree_bounds(w12()));
        }
    }

    #[test]
    fn maximal_boundary_examples() {
        let b = maximal_boundary(
            &g28(),
            &[
                RatPoly2::from_int(5),
                RatPoly2::from_int(5),
                RatPoly2::from_int(-1),
                gamma25(),
            ],
        )
        .unwrap();
        assert_eq!(b.product(), &gamma25());
        let id = Cometric::diag(p("1"), p("1"));
        assert_eq!(maximal_boundary(&id, &[]).unwrap().product(), &RatPoly2::one());
        assert_eq!(maximal_boundary(&id, &[p("x")]), Err(AlgError::FactorizationMismatch));
    }

    #[test]
    fn change_examples() {
        let id = Cometric::diag(p("1"), p("1"));
        let s = apply_change(&id, &Change::Shear(UniPoly::from_ints(&[0, 0, 1]))).unwrap();
        assert_eq!(s, Cometric::new(p("1"), p("2*x"), p("4*x^2 + 1")));

        let g = g28();
        let h = apply_change(&g, &Change::Scale(int(1), int(-1))).unwrap();
        let flip = (RatPoly2::x(), -RatPoly2::y());
        assert_eq!(h.a(), &g.a().compose(&flip.0, &flip.1));
        assert_eq!(h.b(), &-g.b().compose(&flip.0, &flip.1));

        let k = Cometric::new(p("2"), p("-1/3"), p("5"));
        assert_eq!(apply_change(&k, &Change::Translate(frac(7, 2))).unwrap(), k);
        assert_eq!(
            apply_change(&k, &Change::Scale(int(0), int(1))),
            Err(AlgError::DegenerateChange)
        );
    }

    #[test]
    fn certificates_survive_changes() {
        let b1 = BoundarySpec::single(gamma25()).unwrap();
        let changes = [
            Change::Translate(frac(-2, 3)),
            Change::Scale(int(2), frac(-1, 5)),
            Change::Shear(UniPoly::from_ints(&[1, -3, 2])),
        ];
        for ch in &changes {
            let g = apply_change(&g28(), ch).unwrap();
            let b = ch.push_boundary(&b1).unwrap();
            let cert = check_a2_a3(&g, &b).unwrap();
            assert!(cert.within_degree_bounds(w12()));
            assert_eq!(
                g.det(),
                &g28()
                    .det()
                    .compose(&ch.inverse().0, &ch.inverse().1)
                    .scale(&ch.jacobian_squared())
            );
        }
    }
}
