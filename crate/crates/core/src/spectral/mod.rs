//! Numeric checks of the diffusion-orthogonal-polynomial property: the
//! operator on polynomials, invariance of the weighted-degree filtration,
//! quadrature over the domain, orthonormalization, symmetry and spectra.
//!
//! The operator and its matrix are exact. Only inner products are floats.

mod eigen;
mod quadrature;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_traits::Zero;

use crate::algdop::Cometric;
use crate::density::{DensityError, DensitySpec};
use crate::poly::{Exponent, RatPoly2, Weights};
use crate::rational::{self, Rational};

pub use eigen::{char_poly, eigenstructure, EigenBlock, Eigenpair, Eigenvalue};
pub use quadrature::{build_quadrature, gauss_legendre, QuadratureRule};

#[derive(Clone, Debug, PartialEq)]
pub enum SpectralError {
    /// Quadrature needs a bounded domain with a bounding box.
    Unbounded,
    /// Density factor `k` has a negative exponent (singular edge).
    SingularEdge(usize),
    /// The density is not finite and positive at a quadrature node.
    BadDensity {
        x: f64,
        y: f64,
    },
    Density(DensityError),
    /// The filtration is not preserved; the monomial is a witness.
    NotInvariant(Exponent),
    /// Gram–Schmidt broke down at basis index `index`.
    SingularGram {
        index: usize,
        ratio: f64,
    },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::Unbounded => f.write_str("quadrature requires a bounded domain with a bounding box"),
            SpectralError::SingularEdge(k) => {
                write!(f, "density factor {k} has a negative exponent; quadrature needs p >= 1")
            }
            SpectralError::BadDensity { x, y } => {
                write!(f, "density is not finite and positive at ({x}, {y})")
            }
            SpectralError::Density(e) => write!(f, "density: {e}"),
            SpectralError::NotInvariant((i, j)) => {
                write!(f, "operator raises the weighted degree of x^{i} y^{j}")
            }
            SpectralError::SingularGram { index, ratio } => write!(
                f,
                "Gram matrix numerically singular at basis element {index} (norm ratio {ratio:e})"
            ),
        }
    }
}

impl From<DensityError> for SpectralError {
    fn from(e: DensityError) -> Self {
        SpectralError::Density(e)
    }
}

/// Monomials `x^i y^j` with `deg_w <= cutoff`, ordered by weighted degree
/// and then by ascending `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationBasis {
    weights: Weights,
    cutoff: u64,
    monomials: Vec<Exponent>,
}

impl FiltrationBasis {
    pub fn new(weights: Weights, cutoff: u64) -> Self {
        FiltrationBasis {
            weights,
            cutoff,
            monomials: weights.monomials_up_to(cutoff),
        }
    }

    pub fn weights(&self) -> Weights {
        self.weights
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self, k: usize) -> u64 {
        self.weights.degree_of(self.monomials[k])
    }

    pub fn index_of(&self, e: Exponent) -> Option<usize> {
        self.monomials.iter().position(|&m| m == e)
    }

    /// Index ranges of the monomials of each occurring weighted degree.
    pub fn blocks(&self) -> Vec<(u64, Range<usize>)> {
        let mut out: Vec<(u64, Range<usize>)> = Vec::new();
        for k in 0..self.len() {
            let d = self.degree(k);
            match out.last_mut() {
                Some((last, r)) if *last == d => r.end = k + 1,
                _ => out.push((d, k..k + 1)),
            }
        }
        out
    }

    /// Coefficient vector of `p` in this basis; `None` if `p` has a monomial
    /// outside it.
    pub fn coordinates(&self, p: &RatPoly2) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (e, c) in p.terms() {
            v[self.index_of(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> Vec<f64> {
        self.monomials
            .iter()
            .map(|&(i, j)| libm::pow(x, i as f64) * libm::pow(y, j as f64))
            .collect()
    }
}

/// `L f = Σ g^{ij} ∂_i ∂_j f + Σ b^i ∂_i f` with
/// `b^i = Σ_j ∂_j g^{ij} + L^i` and `L^i` the drift of the density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub metric: Cometric,
    pub b1: RatPoly2,
    pub b2: RatPoly2,
}

impl Operator {
    pub fn new(g: &Cometric, rho: &DensitySpec) -> Result<Self, SpectralError> {
        let drift = rho.drift(g)?;
        let b1 = &(&g.a().partial_x() + &g.b().partial_y()) + &drift.l1;
        let b2 = &(&g.b().partial_x() + &g.c().partial_y()) + &drift.l2;
        Ok(Operator {
            metric: g.clone(),
            b1,
            b2,
        })
    }

    pub fn apply(&self, f: &RatPoly2) -> RatPoly2 {
        let g = &self.metric;
        let (fx, fy) = (f.partial_x(), f.partial_y());
        let two = RatPoly2::from_int(2);
        let mut out = g.a() * &fx.partial_x();
        out += &(&(&two * g.b()) * &fx.partial_y());
        out += &(g.c() * &fy.partial_y());
        out += &(&self.b1 * &fx);
        out += &(&self.b2 * &fy);
        out
    }
}

pub fn apply_l(g: &Cometric, rho: &DensitySpec, f: &RatPoly2) -> Result<RatPoly2, SpectralError> {
    Ok(Operator::new(g, rho)?.apply(f))
}

/// Exact matrix of the operator in a filtration basis: column `c` holds the
/// coordinates of `L` applied to monomial `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariance {
    pub holds: bool,
    /// First monomial whose image has larger weighted degree.
    pub witness: Option<Exponent>,
    pub basis: FiltrationBasis,
    pub matrix: Vec<Vec<Rational>>,
}

impl Invariance {
    pub fn matrix_f64(&self) -> Vec<Vec<f64>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(rational::to_f64).collect())
            .collect()
    }

    /// True when every entry mapping a degree to a larger one is zero.
    pub fn is_block_triangular(&self) -> bool {
        let n = self.basis.len();
        (0..n).all(|r| (0..n).all(|c| self.basis.degree(r) <= self.basis.degree(c) || self.matrix[r][c].is_zero()))
    }
}

pub fn filtration_invariance(op: &Operator, w: Weights, n: u64) -> Invariance {
    let basis = FiltrationBasis::new(w, n);
    let size = basis.len();
    let mut matrix = vec![vec![Rational::zero(); size]; size];
    let mut witness = None;
    for (c, &(i, j)) in basis.monomials().iter().enumerate() {
        let image = op.apply(&RatPoly2::monomial(Rational::from_integer(1.into()), i, j));
        let deg = w.degree_of((i, j));
        if witness.is_none() && image.weighted_degree(w).is_some_and(|d| d > deg) {
            witness = Some((i, j));
        }
        for (e, coeff) in image.terms() {
            if let Some(r) = basis.index_of(e) {
                matrix[r][c] = coeff.clone();
            }
        }
    }
    Invariance {
        holds: witness.is_none(),
        witness,
        basis,
        matrix,
    }
}

/// `G[a][b] = ∫ m_a m_b dμ` under a quadrature rule.
pub fn gram_matrix(rule: &QuadratureRule, basis: &FiltrationBasis) -> Vec<Vec<f64>> {
    gram_with(rule, basis.len(), |x, y| basis.eval_f64(x, y))
}

fn gram_with(rule: &QuadratureRule, n: usize, eval: impl Fn(f64, f64) -> Vec<f64>) -> Vec<Vec<f64>> {
    let mut partial: Vec<Vec<Vec<f64>>> = Vec::new();
    for slice in rule.slices() {
        let mut g = vec![vec![0.0; n]; n];
        for node in &rule.nodes()[slice.clone()] {
            let v = eval(node[0], node[1]);
            for a in 0..n {
                let wa = node[2] * v[a];
                for b in a..n {
                    g[a][b] += wa * v[b];
                }
            }
        }
        partial.push(g);
    }
    let mut g = pairwise(partial, n);
    for a in 0..n {
        for b in 0..a {
            g[a][b] = g[b][a];
        }
    }
    g
}

// fixed pairwise reduction keyed by slice index
fn pairwise(mut parts: Vec<Vec<Vec<f64>>>, n: usize) -> Vec<Vec<f64>> {
    if parts.is_empty() {
        return vec![vec![0.0; n]; n];
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                for (ra, rb) in a.iter_mut().zip(&b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
            }
            next.push(a);
        }
        parts = next;
    }
    parts.pop().unwrap()
}

/// Legendre polynomials `P_0..=P_n` at `t`.
fn legendre_values(n: usize, t: f64) -> Vec<f64> {
    let mut p = vec![1.0; n + 1];
    if n >= 1 {
        p[1] = t;
    }
    for k in 1..n {
        let kf = k as f64;
        p[k + 1] = ((2.0 * kf + 1.0) * t * p[k] - kf * p[k - 1]) / (kf + 1.0);
    }
    p
}

/// Coefficients of `P_k(t)` in powers of `t`.
fn legendre_coeffs(k: usize) -> Vec<f64> {
    let (mut prev, mut cur) = (vec![1.0], vec![0.0, 1.0]);
    if k == 0 {
        return prev;
    }
    for m in 1..k {
        let mf = m as f64;
        let mut next = vec![0.0; m + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += (2.0 * mf + 1.0) * c / (mf + 1.0);
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= mf * c / (mf + 1.0);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients in powers of `x` of `P_k((x − c) / h)`.
fn shifted_legendre(k: usize, c: f64, h: f64) -> Vec<f64> {
    let lc = legendre_coeffs(k);
    let mut out = vec![0.0; k + 1];
    for (a, coef) in lc.iter().enumerate() {
        // coef * (x - c)^a / h^a
        let scale = coef / libm::pow(h, a as f64);
        let mut binom = 1.0;
        for b in 0..=a {
            out[b] += scale * binom * libm::pow(-c, (a - b) as f64);
            binom = binom * (a - b) as f64 / (b + 1) as f64;
        }
    }
    out
}

/// Orthonormal polynomials as columns of an upper-triangular coefficient
/// matrix over the products `P_i(u) P_j(v)` of Legendre polynomials in the
/// scaled coordinates `u = (x − cx)/hx`, `v = (y − cy)/hy`, one for each
/// basis monomial `(i, j)` in basis order. This basis spans the same
/// filtration as the monomials and is far better conditioned.
#[derive(Clone, Debug, PartialEq)]
pub struct Orthonormal {
    /// `[cx, hx, cy, hy]`.
    pub frame: [f64; 4],
    pub coeffs: Vec<Vec<f64>>,
    /// `max |G − I|` for the Gramian of the output polynomials, each
    /// evaluated at the nodes.
    pub residual: f64,
}

impl Orthonormal {
    fn legendre_basis(basis: &FiltrationBasis, frame: [f64; 4]) -> impl Fn(f64, f64) -> Vec<f64> + '_ {
        let n = basis
            .monomials()
            .iter()
            .map(|&(i, j)| i.max(j) as usize)
            .max()
            .unwrap_or(0);
        move |x, y| {
            let px = legendre_values(n, (x - frame[0]) / frame[1]);
            let py = legendre_values(n, (y - frame[2]) / frame[3]);
            basis
                .monomials()
                .iter()
                .map(|&(i, j)| px[i as usize] * py[j as usize])
                .collect()
        }
    }

    /// Values of every orthonormal polynomial at `(x, y)`.
    pub fn eval(&self, basis: &FiltrationBasis, x: f64, y: f64) -> Vec<f64> {
        let v = Self::legendre_basis(basis, self.frame)(x, y);
        let n = v.len();
        (0..n)
            .map(|k| (0..=k).map(|l| self.coeffs[l][k] * v[l]).sum())
            .collect()
    }

    /// The same polynomials as columns over the plain monomial basis.
    pub fn monomial_coeffs(&self, basis: &FiltrationBasis) -> Vec<Vec<f64>> {
        let n = basis.len();
        let [cx, hx, cy, hy] = self.frame;
        // expansion of each Legendre product in monomials
        let expansions: Vec<Vec<f64>> = basis
            .monomials()
            .iter()
            .map(|&(i, j)| {
                let (ex, ey) = (
                    shifted_legendre(i as usize, cx, hx),
                    shifted_legendre(j as usize, cy, hy),
                );
                let mut v = vec![0.0; n];
                for (a, ca) in ex.iter().enumerate() {
                    for (b, cb) in ey.iter().enumerate() {
                        let idx = basis
                            .index_of((a as u32, b as u32))
                            .expect("lower monomials lie in the basis");
                        v[idx] += ca * cb;
                    }
                }
                v
            })
            .collect();
        let mut out = vec![vec![0.0; n]; n];
        for k in 0..n {
            for (l, e) in expansions.iter().enumerate().take(k + 1) {
                for r in 0..n {
                    out[r][k] += self.coeffs[l][k] * e[r];
                }
            }
        }
        out
    }
}

/// Modified Gram–Schmidt on the sampled Legendre products with one
/// reorthogonalization pass.
pub fn gram_schmidt(rule: &QuadratureRule, basis: &FiltrationBasis) -> Result<Orthonormal, SpectralError> {
    let n = basis.len();
    let bounds = rule.nodes().iter().fold(
        [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY],
        |b, nd| [b[0].min(nd[0]), b[1].max(nd[0]), b[2].min(nd[1]), b[3].max(nd[1])],
    );
    let half = |lo: f64, hi: f64| if hi > lo { 0.5 * (hi - lo) } else { 1.0 };
    let frame = [
        0.5 * (bounds[0] + bounds[1]),
        half(bounds[0], bounds[1]),
        0.5 * (bounds[2] + bounds[3]),
        half(bounds[2], bounds[3]),
    ];
    let eval = Orthonormal::legendre_basis(basis, frame);
    let cols: Vec<Vec<f64>> = {
        let rows: Vec<Vec<f64>> = rule
            .nodes()
            .iter()
            .map(|nd| {
                let s = libm::sqrt(nd[2]);
                eval(nd[0], nd[1]).into_iter().map(|v| v * s).collect()
            })
            .collect();
        (0..n).map(|k| rows.iter().map(|r| r[k]).collect()).collect()
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut coeffs = vec![vec![0.0; n]; n];
    for k in 0..n {
        let mut v = cols[k].clone();
        let mut c = vec![0.0; n];
        c[k] = 1.0;
        let start = libm::sqrt(dot(&v, &v));
        for _ in 0..2 {
            for l in 0..k {
                let r = dot(&q[l], &v);
                for (vi, qi) in v.iter_mut().zip(&q[l]) {
                    *vi -= r * qi;
                }
                for row in 0..=l {
                    c[row] -= r * coeffs[row][l];
                }
            }
        }
        let norm = libm::sqrt(dot(&v, &v));
        if norm.is_nan() || norm <= 1e-13 * start {
            return Err(SpectralError::SingularGram {
                index: k,
                ratio: norm / start,
            });
        }
        v.iter_mut().for_each(|x| *x /= norm);
        for row in 0..=k {
            coeffs[row][k] = c[row] / norm;
        }
        q.push(v);
    }
    let mut out = Orthonormal {
        frame,
        coeffs,
        residual: 0.0,
    };
    let g = gram_with(rule, n, |x, y| out.eval(basis, x, y));
    out.residual = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| libm::fabs(g[a][b] - if a == b { 1.0 } else { 0.0 }))
        .fold(0.0, f64::max);
    Ok(out)
}

/// `max_{a,b} |⟨m_a, L m_b⟩ − ⟨m_b, L m_a⟩| / max(1, |⟨m_a, L m_b⟩|)`
/// with `⟨m_a, L m_b⟩ = (G M)[a][b]`.
pub fn symmetry_defect(gram: &[Vec<f64>], l: &[Vec<f64>]) -> f64 {
    let n = gram.len();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| gram[i][k] * l[k][j]).sum()).collect())
        .collect();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = libm::fabs(a[i][j] - a[j][i]) / libm::fabs(a[i][j]).max(1.0);
            worst = worst.max(d);
        }
    }
    worst
}

/// Everything the desk tests report for one (metric, density, domain).
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub invariance: bool,
    pub witness: Option<Exponent>,
    pub symmetry_defect: f64,
    pub gram_residual: f64,
    pub mass: f64,
    pub blocks: Vec<EigenBlock>,
}

impl SpectralReport {
    pub fn eigenvalues(&self) -> impl Iterator<Item = &Eigenvalue> + '_ {
        self.blocks.iter().flat_map(|b| b.eigenvalues.iter())
    }

    pub fn max_imag(&self) -> f64 {
        self.eigenvalues().map(|e| libm::fabs(e.im)).fold(0.0, f64::max)
    }

    pub fn max_real(&self) -> f64 {
        self.eigenvalues().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn defective_blocks(&self) -> Vec<u64> {
        self.blocks.iter().filter(|b| b.defective).map(|b| b.degree).collect()
    }
}

/// Runs invariance, quadrature, Gram–Schmidt, symmetry and eigenstructure.
pub fn analyze(
    g: &Cometric,
    rho: &DensitySpec,
    domain: &crate::catalog::DomainSpec,
    w: Weights,
    n: u64,
    order: usize,
) -> Result<SpectralReport, SpectralError> {
    let op = Operator::new(g, rho)?;
    let inv = filtration_invariance(&op, w, n);
    let rule = build_quadrature(domain, rho, order)?;
    let gram = gram_matrix(&rule, &inv.basis);
    let on = gram_schmidt(&rule, &inv.basis)?;
    let defect = symmetry_defect(&gram, &inv.matrix_f64());
    let blocks = if inv.holds {
        eigenstructure(&inv, Some(&gram))?
    } else {
        Vec::new()
    };
    Ok(SpectralReport {
        invariance: inv.holds,
        witness: inv.witness,
        symmetry_defect: defect,
        gram_residual: on.residual,
        mass: rule.mass(),
        blocks,
    })
}

/// Human-readable monomial, `x^i*y^j`.
pub fn monomial_name((i, j): Exponent) -> String {
    RatPoly2::monomial(Rational::from_integer(1.into()), i, j).to_string()
}
