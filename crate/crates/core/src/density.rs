//! Measure densities `ρ = ∏ Γ_k^{e_k} · exp(Q)` compatible with a cometric:
//! drift polynomials, their integration, the degree bound on `Q`, and the
//! integrability inequalities of the classified families.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algdop::{tangency_cofactors, BoundarySpec, Cometric};
use crate::linalg;
use crate::poly::{Exponent, RatPoly2, Weights};
use crate::rational::{frac, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityError {
    DegenerateMetric,
    /// The drift is not a combination of the supplied logarithmic factors
    /// and a polynomial gradient.
    NotIntegrable,
    /// A density factor is not tangent to the cometric.
    FactorNotTangent(usize),
    UnknownEntry(String),
    MissingParameter(&'static str),
}

impl fmt::Display for DensityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityError::DegenerateMetric => f.write_str("det g vanishes identically"),
            DensityError::NotIntegrable => f.write_str("drift does not integrate over the supplied factors"),
            DensityError::FactorNotTangent(k) => {
                write!(f, "density factor {k} does not satisfy the tangency identities")
            }
            DensityError::UnknownEntry(id) => write!(f, "no integrability table for entry {id}"),
            DensityError::MissingParameter(p) => write!(f, "missing parameter {p}"),
        }
    }
}

/// First-order data `L^i = b^i − Σ_j ∂_j g^{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DriftPair {
    pub l1: RatPoly2,
    pub l2: RatPoly2,
}

impl DriftPair {
    pub fn get(&self, i: usize) -> &RatPoly2 {
        if i == 0 {
            &self.l1
        } else {
            &self.l2
        }
    }
}

/// `ρ = ∏ factors[k].0 ^ factors[k].1 · exp(q)`, unnormalized. The stored
/// exponents are the actual powers (a family written `Γ^{p−1}` stores `p − 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensitySpec {
    pub factors: Vec<(RatPoly2, Rational)>,
    pub q: RatPoly2,
}

impl DensitySpec {
    pub fn new(factors: Vec<(RatPoly2, Rational)>, q: RatPoly2) -> Self {
        DensitySpec { factors, q }
    }

    pub fn uniform() -> Self {
        DensitySpec {
            factors: Vec::new(),
            q: RatPoly2::zero(),
        }
    }

    /// `log ρ` evaluated in floating point (factors assumed positive).
    pub fn log_eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut h = self.q.eval_f64(x, y);
        for (f, e) in &self.factors {
            if !e.is_zero() {
                h += crate::rational::to_f64(e) * libm::log(f.eval_f64(x, y));
            }
        }
        h
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        libm::exp(self.log_eval_f64(x, y))
    }

    /// The drift `L^i = Σ_k e_k S^i_k + Σ_j g^{ij} ∂_j Q` implied by `ρ`.
    pub fn drift(&self, g: &Cometric) -> Result<DriftPair, DensityError> {
        let (qx, qy) = (self.q.partial_x(), self.q.partial_y());
        let mut l1 = &(g.a() * &qx) + &(g.b() * &qy);
        let mut l2 = &(g.b() * &qx) + &(g.c() * &qy);
        for (k, (f, e)) in self.factors.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let cert = tangency_cofactors(g, f).map_err(|_| DensityError::FactorNotTangent(k))?;
            l1 += &cert.s1.scale(e);
            l2 += &cert.s2.scale(e);
        }
        Ok(DriftPair { l1, l2 })
    }
}

/// Left side minus right side of the cleared compatibility identity for a
/// single drift: `A_y Δ − A Δ_y − (B_x Δ − B Δ_x)` with `A = c L1 − b L2`,
/// `B = a L2 − b L1`.
fn compatibility_defect(g: &Cometric, d: &DriftPair) -> RatPoly2 {
    let det = g.det();
    let a_ = &(g.c() * &d.l1) - &(g.b() * &d.l2);
    let b_ = &(g.a() * &d.l2) - &(g.b() * &d.l1);
    let lhs = &(&a_.partial_y() * det) - &(&a_ * &det.partial_y());
    let rhs = &(&b_.partial_x() * det) - &(&b_ * &det.partial_x());
    &lhs - &rhs
}

pub fn is_compatible(g: &Cometric, d: &DriftPair) -> bool {
    compatibility_defect(g, d).is_zero()
}

fn equations_to_rows(eqs: BTreeMap<Exponent, Vec<Rational>>) -> Vec<Vec<Rational>> {
    eqs.into_values().collect()
}

fn accumulate(eqs: &mut BTreeMap<Exponent, Vec<Rational>>, n: usize, col: usize, p: &RatPoly2) {
    for (e, c) in p.terms() {
        eqs.entry(e).or_insert_with(|| vec![Rational::zero(); n])[col] += c;
    }
}

/// Basis of drift pairs in the boxes `deg_w L^i ≤ w_i` satisfying the
/// compatibility identity.
pub fn solve_drift(g: &Cometric, w: Weights) -> Result<Vec<DriftPair>, DensityError> {
    if g.det().is_zero() {
        return Err(DensityError::DegenerateMetric);
    }
    let box1 = w.monomials_up_to(w.w1() as u64);
    let box2 = w.monomials_up_to(w.w2() as u64);
    let n = box1.len() + box2.len();
    let unit = |k: usize| -> DriftPair {
        if k < box1.len() {
            let (i, j) = box1[k];
            DriftPair {
                l1: RatPoly2::monomial(Rational::one(), i, j),
                l2: RatPoly2::zero(),
            }
        } else {
            let (i, j) = box2[k - box1.len()];
            DriftPair {
                l1: RatPoly2::zero(),
                l2: RatPoly2::monomial(Rational::one(), i, j),
            }
        }
    };
    let mut eqs = BTreeMap::new();
    for k in 0..n {
        accumulate(&mut eqs, n, k, &compatibility_defect(g, &unit(k)));
    }
    let basis = linalg::nullspace(&equations_to_rows(eqs), n);
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut l1 = RatPoly2::zero();
            let mut l2 = RatPoly2::zero();
            for (k, c) in v.iter().enumerate() {
                let u = unit(k);
                l1 += &u.l1.scale(c);
                l2 += &u.l2.scale(c);
            }
            DriftPair { l1, l2 }
        })
        .collect())
}

/// Exponent box for `Q`: the degree bound with `Δ` dropped, and no constant
/// term (it only rescales ρ).
fn q_box(w: Weights) -> Vec<Exponent> {
    let total = 2 * (w.w1() + w.w2());
    let (mx, my) = (total / w.w1(), total / w.w2());
    (0..=my)
        .flat_map(|j| (0..=mx).map(move |i| (i, j)))
        .filter(|&e| e != (0, 0))
        .collect()
}

/// Linear system whose null vectors `(τ, e, Q)` satisfy
/// `Σ τ_m drift_m = Σ_k e_k S_k + g ∇Q` with the drift given through
/// the cleared gradient identity `∂h = g^{-1} L`.
struct Integration {
    rows: Vec<Vec<Rational>>,
    ndrift: usize,
    nfac: usize,
    qbox: Vec<Exponent>,
}

impl Integration {
    fn build(g: &Cometric, drifts: &[DriftPair], factors: &[RatPoly2], w: Weights) -> Self {
        let det = g.det();
        let prod: RatPoly2 = factors.iter().cloned().product();
        let qbox = q_box(w);
        let (ndrift, nfac) = (drifts.len(), factors.len());
        let n = ndrift + nfac + qbox.len();
        let mut eqs: [BTreeMap<Exponent, Vec<Rational>>; 2] = [BTreeMap::new(), BTreeMap::new()];
        // drift side: (ĝ L)_j · ∏Γ
        for (m, d) in drifts.iter().enumerate() {
            let a_ = &(g.c() * &d.l1) - &(g.b() * &d.l2);
            let b_ = &(g.a() * &d.l2) - &(g.b() * &d.l1);
            accumulate(&mut eqs[0], n, m, &(&a_ * &prod));
            accumulate(&mut eqs[1], n, m, &(&b_ * &prod));
        }
        // logarithmic side: −Δ e_k ∂_jΓ_k ∏_{l≠k} Γ_l
        for (k, f) in factors.iter().enumerate() {
            let others: RatPoly2 = factors
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != k)
                .map(|(_, p)| p.clone())
                .product();
            let base = &(det * &others) * &RatPoly2::from_int(-1);
            accumulate(&mut eqs[0], n, ndrift + k, &(&base * &f.partial_x()));
            accumulate(&mut eqs[1], n, ndrift + k, &(&base * &f.partial_y()));
        }
        // polynomial side: −Δ ∏Γ ∂_j Q
        let dp = &(det * &prod) * &RatPoly2::from_int(-1);
        for (s, &(i, j)) in qbox.iter().enumerate() {
            let m = RatPoly2::monomial(Rational::one(), i, j);
            accumulate(&mut eqs[0], n, ndrift + nfac + s, &(&dp * &m.partial_x()));
            accumulate(&mut eqs[1], n, ndrift + nfac + s, &(&dp * &m.partial_y()));
        }
        let [e0, e1] = eqs;
        let mut rows = equations_to_rows(e0);
        rows.extend(equations_to_rows(e1));
        Integration {
            rows,
            ndrift,
            nfac,
            qbox,
        }
    }

    fn ncols(&self) -> usize {
        self.ndrift + self.nfac + self.qbox.len()
    }

    fn density(&self, v: &[Rational], factors: &[RatPoly2]) -> DensitySpec {
        let off = self.ndrift;
        DensitySpec {
            factors: factors
                .iter()
                .cloned()
                .zip(v[off..off + self.nfac].iter().cloned())
                .collect(),
            q: RatPoly2::from_terms(
                self.qbox
                    .iter()
                    .zip(&v[off + self.nfac..])
                    .map(|(&(i, j), c)| (i, j, c.clone())),
            ),
        }
    }
}

/// Integrates a compatible drift into `∏ Γ_k^{e_k} exp(Q)` over the boundary
/// factors plus any `extra` factors of `Δ`.
pub fn integrate_drift(
    g: &Cometric,
    d: &DriftPair,
    boundary: &BoundarySpec,
    extra: &[RatPoly2],
    w: Weights,
) -> Result<DensitySpec, DensityError> {
    if g.det().is_zero() {
        return Err(DensityError::DegenerateMetric);
    }
    let factors: Vec<RatPoly2> = boundary.factors().iter().chain(extra).cloned().collect();
    let sys = Integration::build(g, core::slice::from_ref(d), &factors, w);
    // fix τ = 1 by moving the drift column to the right-hand side
    let n = sys.ncols();
    let rhs: Vec<Rational> = sys.rows.iter().map(|r| -r[0].clone()).collect();
    let a: Vec<Vec<Rational>> = sys.rows.iter().map(|r| r[1..].to_vec()).collect();
    let sol = linalg::solve(&a, &rhs, n - 1).ok_or(DensityError::NotIntegrable)?;
    let mut v = vec![Rational::one()];
    v.extend(sol);
    Ok(sys.density(&v, &factors))
}

/// Every density `∏ Γ_k^{e_k} exp(Q)` whose drift is compatible and lies in
/// the degree boxes, as a basis of the exponent/`Q` vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityFamily {
    pub factors: Vec<RatPoly2>,
    pub generators: Vec<DensitySpec>,
}

impl DensityFamily {
    /// The member `Σ t_m generator_m`.
    pub fn member(&self, t: &[Rational]) -> DensitySpec {
        let mut exps = vec![Rational::zero(); self.factors.len()];
        let mut q = RatPoly2::zero();
        for (gen, tm) in self.generators.iter().zip(t) {
            for (k, (_, e)) in gen.factors.iter().enumerate() {
                exps[k] += e * tm;
            }
            q += &gen.q.scale(tm);
        }
        DensitySpec {
            factors: self.factors.iter().cloned().zip(exps).collect(),
            q,
        }
    }

    /// Whether `spec` (over the same factor list) belongs to the family.
    pub fn contains(&self, spec: &DensitySpec) -> bool {
        let gens: Vec<Vec<Rational>> = self.generators.iter().map(|g| self.vectorize(g)).collect();
        let target = self.vectorize(spec);
        let r0 = linalg::rank(&gens, target.len());
        let mut with = gens.clone();
        with.push(target.clone());
        linalg::rank(&with, target.len()) == r0
    }

    fn q_support(&self) -> Vec<Exponent> {
        let mut s: Vec<Exponent> = self
            .generators
            .iter()
            .flat_map(|g| g.q.support().collect::<Vec<_>>())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    fn vectorize(&self, spec: &DensitySpec) -> Vec<Rational> {
        let mut v: Vec<Rational> = spec.factors.iter().map(|(_, e)| e.clone()).collect();
        let support = self.q_support();
        for &(i, j) in &support {
            v.push(spec.q.coeff(i, j));
        }
        // terms of spec.q outside the family support make it a non-member
        let outside = spec
            .q
            .terms()
            .filter(|((i, j), _)| !support.contains(&(*i, *j)) && (*i, *j) != (0, 0))
            .count();
        v.push(int(outside as i64));
        v
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }
}

/// All densities compatible with `g` over the given factors: solves the
/// drift system and its integrability jointly.
pub fn density_family(
    g: &Cometric,
    boundary: &BoundarySpec,
    extra: &[RatPoly2],
    w: Weights,
) -> Result<DensityFamily, DensityError> {
    let drifts = solve_drift(g, w)?;
    let factors: Vec<RatPoly2> = boundary.factors().iter().chain(extra).cloned().collect();
    let sys = Integration::build(g, &drifts, &factors, w);
    let null = linalg::nullspace(&sys.rows, sys.ncols());
    // keep only the (e, Q) part; a null vector with zero drift part would be
    // a nonzero density with zero drift, impossible for distinct factors
    let mut gens: Vec<Vec<Rational>> = null.into_iter().map(|v| v[sys.ndrift..].to_vec()).collect();
    gens.retain(|v| v.iter().any(|c| !c.is_zero()));
    let width = sys.nfac + sys.qbox.len();
    let generators = row_basis(&gens, width)
        .into_iter()
        .map(|v| {
            let mut full = vec![Rational::zero(); sys.ndrift];
            full.extend(v);
            sys.density(&full, &factors)
        })
        .collect();
    Ok(DensityFamily { factors, generators })
}

/// Reduced row echelon basis of the row space, rows made primitive.
fn row_basis(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for c in m[r].iter_mut() {
            *c *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..width {
                    let sub = &f * &m[r][c];
                    m[i][c] -= sub;
                }
            }
        }
        r += 1;
    }
    m.into_iter().take(r).map(|row| linalg::primitive(&row)).collect()
}

/// `w_j deg_{x_j}(Q Δ) ≤ 2 (w1 + w2)` for both variables.
pub fn check_degree_bound_9(det: &RatPoly2, q: &RatPoly2, w: Weights) -> bool {
    let prod = det * q;
    let total = 2 * (w.w1() + w.w2()) as u64;
    let dx = prod.degree_x().unwrap_or(0) as u64;
    let dy = prod.degree_y().unwrap_or(0) as u64;
    w.w1() as u64 * dx <= total && w.w2() as u64 * dy <= total
}

/// One inequality of an integrability table and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub text: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub constraints: Vec<Constraint>,
}

impl IntegrabilityReport {
    pub fn holds(&self) -> bool {
        self.constraints.iter().all(|c| c.holds)
    }
}

fn max(a: Rational, b: Rational) -> Rational {
    if a >= b {
        a
    } else {
        b
    }
}

/// Integrability inequalities for the density families of the bounded and
/// unbounded catalog entries, evaluated at `params`. Parameter names:
/// `p`, `q`, `r`, `lambda`, `m`, `n`, `a`, and `p1, q1, p2, q2` for the
/// rectangle. A missing `q` in the even cases defaults to `p`.
pub fn integrability_constraints(
    id: &str,
    params: &BTreeMap<String, Rational>,
) -> Result<IntegrabilityReport, DensityError> {
    let get = |k: &'static str| params.get(k).cloned().ok_or(DensityError::MissingParameter(k));
    let get_or = |k: &'static str, d: &Rational| params.get(k).cloned().unwrap_or_else(|| d.clone());
    let gt = |text: String, lhs: &Rational, rhs: &Rational| Constraint { text, holds: lhs > rhs };
    let zero = Rational::zero();
    let half = frac(1, 2);
    let is_odd = |v: &Rational| v.is_integer() && v.to_integer() % 2 != num_bigint::BigInt::zero();
    let mut cs = Vec::new();
    match id {
        "B1" => {
            let p = get("p")?;
            cs.push(gt(format!("p > 3/10 (p = {p})"), &p, &frac(3, 10)));
        }
        "B2" => {
            let (p, q) = (get("p")?, get("q")?);
            cs.push(gt(format!("p > 0 (p = {p})"), &p, &zero));
            cs.push(gt(format!("q > 1/6 (q = {q})"), &q, &frac(1, 6)));
            cs.push(gt(
                format!("p + q > 2/3 (p + q = {})", &p + &q),
                &(&p + &q),
                &frac(2, 3),
            ));
        }
        "B3" => {
            let (p, q) = (get("p")?, get("q")?);
            cs.push(gt(format!("p > 0 (p = {p})"), &p, &zero));
            cs.push(gt(format!("q > 0 (q = {q})"), &q, &zero));
        }
        "B4" => {
            let (m, n, p) = (get("m")?, get("n")?, get("p")?);
            if is_odd(&m) || is_odd(&n) {
                let bound = max(&half - n.recip(), &half - m.recip());
                cs.push(gt(
                    format!("p > max(1/2 - 1/n, 1/2 - 1/m) = {bound} (p = {p})"),
                    &p,
                    &bound,
                ));
            } else {
                let q = get_or("q", &p);
                let one = Rational::one();
                let bound = max(&one - int(2) / &n, &one - int(2) / &m);
                cs.push(gt(format!("p > 0 (p = {p})"), &p, &zero));
                cs.push(gt(format!("q > 0 (q = {q})"), &q, &zero));
                cs.push(gt(
                    format!("p + q > max(1 - 2/n, 1 - 2/m) = {bound} (p + q = {})", &p + &q),
                    &(&p + &q),
                    &bound,
                ));
            }
        }
        "B5" => {
            let (n, p, r) = (get("n")?, get("p")?, get("r")?);
            cs.push(gt(format!("r > 0 (r = {r})"), &r, &zero));
            if is_odd(&n) {
                let bound = max(zero.clone(), &half - n.recip());
                cs.push(gt(format!("p > max(0, 1/2 - 1/n) = {bound} (p = {p})"), &p, &bound));
            } else {
                let q = get_or("q", &p);
                let bound = Rational::one() - int(2) / &n;
                cs.push(gt(format!("p > 0 (p = {p})"), &p, &zero));
                cs.push(gt(format!("q > 0 (q = {q})"), &q, &zero));
                cs.push(gt(
                    format!("p + q > 1 - 2/n = {bound} (p + q = {})", &p + &q),
                    &(&p + &q),
                    &bound,
                ));
            }
        }
        "U1" => {
            let (n, p, lambda) = (get("n")?, get("p")?, get("lambda")?);
            cs.push(gt(format!("lambda > 0 (lambda = {lambda})"), &lambda, &zero));
            if is_odd(&n) {
                let bound = max(zero.clone(), &half - n.recip());
                cs.push(gt(format!("p > max(0, 1/2 - 1/n) = {bound} (p = {p})"), &p, &bound));
            } else {
                let q = get_or("q", &p);
                let bound = Rational::one() - int(2) / &n;
                cs.push(gt(
                    format!("p + q > 1 - 2/n = {bound} (p + q = {})", &p + &q),
                    &(&p + &q),
                    &bound,
                ));
            }
        }
        "RECT" => {
            for k in ["p1", "q1", "p2", "q2"] {
                let v = get(k)?;
                cs.push(gt(format!("{k} > 0 ({k} = {v})"), &v, &zero));
            }
        }
        "DIM1.hermite" => {}
        "DIM1.laguerre" => {
            let a = get("a")?;
            cs.push(gt(format!("a > 0 (a = {a})"), &a, &zero));
        }
        "DIM1.jacobi" => {
            let (p, q) = (get("p")?, get("q")?);
            cs.push(gt(format!("p > 0 (p = {p})"), &p, &zero));
            cs.push(gt(format!("q > 0 (q = {q})"), &q, &zero));
        }
        other => return Err(DensityError::UnknownEntry(other.into())),
    }
    Ok(IntegrabilityReport { constraints: cs })
}

/// Helper for callers holding `(name, value)` pairs.
pub fn params_from(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (String::from(*k), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly2 {
        s.parse().unwrap()
    }

    fn w(a: u32, b: u32) -> Weights {
        Weights::new(a, b).unwrap()
    }

    #[test]
    fn identity_metric_drifts() {
        let g = Cometric::diag(p("1"), p("1"));
        let drifts = solve_drift(&g, w(1, 1)).unwrap();
        // L1, L2 affine with ∂_y L1 = ∂_x L2: 6 unknowns, 1 constraint
        assert_eq!(drifts.len(), 5);
        let gauss = DriftPair {
            l1: p("-x"),
            l2: p("-y"),
        };
        assert!(is_compatible(&g, &gauss));
        let spec = integrate_drift(&g, &gauss, &BoundarySpec::whole_plane(), &[], w(1, 1)).unwrap();
        assert!(spec.factors.is_empty());
        assert_eq!(spec.q, p("-1/2*x^2 - 1/2*y^2"));
        assert_eq!(spec.drift(&g).unwrap(), gauss);
        let bad = DriftPair { l1: p("y"), l2: p("0") };
        assert!(!is_compatible(&g, &bad));
    }

    #[test]
    fn product_metric_separates() {
        let g = Cometric::diag(p("1 - x^2"), p("3*(1 - y^2)"));
        let b = BoundarySpec::new(vec![p("1 - x"), p("1 + x"), p("1 - y"), p("1 + y")]).unwrap();
        let fam = density_family(&g, &b, &[], w(1, 1)).unwrap();
        assert_eq!(fam.dimension(), 4);
        for gen in &fam.generators {
            assert!(gen.q.is_zero());
        }
        for d in solve_drift(&g, w(1, 1)).unwrap() {
            assert_eq!(d.l1.degree_y().unwrap_or(0), 0);
            assert_eq!(d.l2.degree_x().unwrap_or(0), 0);
        }
    }

    #[test]
    fn non_integrable_drift_is_reported() {
        let g = Cometric::diag(p("x"), p("1"));
        let d = DriftPair {
            l1: p("1/2"),
            l2: p("0"),
        };
        assert!(is_compatible(&g, &d));
        // h_x = 1/(2x) needs the factor x
        assert_eq!(
            integrate_drift(&g, &d, &BoundarySpec::whole_plane(), &[], w(1, 1)),
            Err(DensityError::NotIntegrable)
        );
        let spec = integrate_drift(&g, &d, &BoundarySpec::single(p("x")).unwrap(), &[], w(1, 1)).unwrap();
        assert_eq!(spec.factors, vec![(p("x"), frac(1, 2))]);
    }

    #[test]
    fn degree_bound_examples() {
        let w12 = w(1, 2);
        let det = p("-25*(y^3 - 20*x*y^2 + 16*y^2 + 45*x^3*y - 40*x^2*y - 27*x^5 + 25*x^4)");
        assert!(check_degree_bound_9(&det, &p("7"), w12));
        assert!(!check_degree_bound_9(&det, &p("y^3"), w12));
        // U1 shape, n = 3, weights (1, 3)
        let n = 3u32;
        let gamma = &p("x").pow(n) - &p("y^2");
        let det_u1 = &p("9/4 + x") * &gamma;
        assert!(check_degree_bound_9(&det_u1, &p("-2*x"), w(1, n)));
    }

    #[test]
    fn integrability_examples() {
        let r = |id: &str, ps: &[(&str, Rational)]| integrability_constraints(id, &params_from(ps)).unwrap().holds();
        assert!(r("B1", &[("p", int(1))]));
        assert!(!r("B1", &[("p", frac(3, 10))]));
        assert!(r("B1", &[("p", frac(1, 2))]));
        assert!(r("B2", &[("p", frac(1, 2)), ("q", frac(1, 2))]));
        assert!(!r("B2", &[("p", frac(1, 2)), ("q", frac(1, 6))]));
        assert!(!r("B4", &[("m", int(2)), ("n", int(2)), ("p", int(0))]));
        assert!(r("B4", &[("m", int(2)), ("n", int(2)), ("p", frac(1, 10))]));
        assert!(!r("B4", &[("m", int(1)), ("n", int(3)), ("p", frac(1, 6))]));
        assert!(r("B4", &[("m", int(1)), ("n", int(3)), ("p", frac(1, 5))]));
        assert!(r("U1", &[("n", int(3)), ("p", int(1)), ("lambda", int(1))]));
        assert!(!r("U1", &[("n", int(3)), ("p", int(1)), ("lambda", int(0))]));
        assert!(integrability_constraints("P53", &BTreeMap::new()).is_err());
        assert_eq!(
            integrability_constraints("B1", &BTreeMap::new()),
            Err(DensityError::MissingParameter("p"))
        );
    }

    fn exps(spec: &DensitySpec) -> Vec<Rational> {
        spec.factors.iter().map(|(_, e)| e.clone()).collect()
    }

    #[test]
    fn cusp_quintic_family_is_one_power() {
        let g = Cometric::new(
            p("y + 8*x - 9*x^2"),
            p("5*(4*y - 3*x*y - x^2)"),
            p("-25*(y^2 - 4*x*y + 3*x^3)"),
        );
        let gamma = p("y^3 - 20*x*y^2 + 16*y^2 + 45*x^3*y - 40*x^2*y - 27*x^5 + 25*x^4");
        let b = BoundarySpec::single(gamma).unwrap();
        let fam = density_family(&g, &b, &[], w(1, 2)).unwrap();
        assert_eq!(fam.dimension(), 1);
        assert_eq!(exps(&fam.generators[0]), vec![int(1)]);
        assert!(fam.generators[0].q.is_zero());
    }

    #[test]
    fn parabola_strip_with_double_factor() {
        // (y - x^2 + 1) diag(1, alpha y), alpha = -1: det has Γ1 squared
        let g = Cometric::diag(p("y - x^2 + 1"), p("-y*(y - x^2 + 1)"));
        assert_eq!(g.det(), &p("-y*(y - x^2 + 1)^2"));
        let b = BoundarySpec::new(vec![p("-y"), p("y - x^2 + 1")]).unwrap();
        let fam = density_family(&g, &b, &[], w(1, 2)).unwrap();
        assert_eq!(fam.dimension(), 2);
        assert_eq!(exps(&fam.generators[0]), vec![int(1), int(0)]);
        assert_eq!(exps(&fam.generators[1]), vec![int(0), int(1)]);
        assert!(fam.generators.iter().all(|s| s.q.is_zero()));
        let member = fam.member(&[frac(-1, 2), frac(3, 2)]);
        assert!(fam.contains(&member));
        assert!(!fam.contains(&DensitySpec::new(member.factors.clone(), p("x"))));
    }

    #[test]
    fn half_cusp_unbounded_has_exponential_factor() {
        // a = x, b = 3/2 y, c = 9/4 x^2 + (x^3 - y^2)
        let g = Cometric::new(p("x"), p("3/2*y"), p("9/4*x^2 + x^3 - y^2"));
        let b = BoundarySpec::single(p("x^3 - y^2")).unwrap();
        let fam = density_family(&g, &b, &[], w(1, 3)).unwrap();
        assert_eq!(fam.dimension(), 2);
        let q: Vec<_> = fam.generators.iter().map(|s| s.q.clone()).collect();
        assert!(q.iter().any(|q| q.is_zero()));
        let lin = q.iter().find(|q| !q.is_zero()).unwrap();
        assert_eq!(lin.degree_x(), Some(1));
        assert_eq!(lin.degree_y(), Some(0));
        assert!(check_degree_bound_9(g.det(), lin, w(1, 3)));
    }
}
