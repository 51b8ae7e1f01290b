//! Spectra of the diagonal blocks of the operator matrix.
//!
//! Characteristic polynomials are exact, so realness is certified by Sturm
//! counts. Eigenpolynomials come from a floating-point nullspace of the
//! matrix truncated at the block's degree.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{Invariance, SpectralError};
use crate::rational::{self, frac, int, Rational};
use crate::upoly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Coefficients over the whole filtration basis (zero above the block).
    pub coeffs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenBlock {
    pub degree: u64,
    pub range: Range<usize>,
    pub char_poly: UniPoly,
    /// Certified: every root of the characteristic polynomial is real.
    pub all_real: bool,
    pub eigenvalues: Vec<Eigenvalue>,
    pub eigenpairs: Vec<Eigenpair>,
    /// Fewer independent eigenpolynomials than the algebraic multiplicity.
    pub defective: bool,
}

/// Monic characteristic polynomial `det(t I − A)` by Faddeev–LeVerrier.
pub fn char_poly(a: &[Vec<Rational>]) -> UniPoly {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() && !m[l][i].is_zero() {
                    tr += &a[i][l] * &m[l][i];
                }
            }
        }
        coeffs[n - k] = -tr / int(k as i64);
    }
    UniPoly::new(coeffs)
}

/// Durand–Kerner on a monic float polynomial.
fn complex_roots(p: &UniPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p.monic().coeffs().iter().map(rational::to_f64).collect();
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let scale = 1.0 + c[..n].iter().map(|v| libm::fabs(*v)).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let mut s = Complex64::new(scale, 0.0);
            for _ in 0..k {
                s *= seed;
            }
            s
        })
        .collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(libm::hypot(step.re, step.im));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn block_spectrum(p: &UniPoly) -> (bool, Vec<Eigenvalue>) {
    let deg = p.degree().unwrap_or(0);
    let factors = p.squarefree_factorization();
    let real: usize = factors.iter().map(|(f, m)| m * f.count_real_roots()).sum();
    if real == deg {
        let tol = frac(1, 1 << 30) * frac(1, 1 << 20);
        let mut out = Vec::new();
        for (f, m) in &factors {
            for (lo, hi) in f.real_roots(&tol) {
                let v = rational::to_f64(&((lo + hi) / int(2)));
                out.push(Eigenvalue {
                    re: v,
                    im: 0.0,
                    multiplicity: *m,
                });
            }
        }
        out.sort_by(|a, b| a.re.total_cmp(&b.re));
        (true, out)
    } else {
        let mut out: Vec<Eigenvalue> = Vec::new();
        for (f, m) in &factors {
            for z in complex_roots(f) {
                out.push(Eigenvalue {
                    re: z.re,
                    im: z.im,
                    multiplicity: *m,
                });
            }
        }
        out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        (false, out)
    }
}

/// Basis of the numerical nullspace by Gaussian elimination with partial
/// pivoting; pivots below `tol` count as zero.
fn nullspace_f64(mut a: Vec<Vec<f64>>, tol: f64) -> Vec<Vec<f64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows)
            .max_by(|&i, &j| libm::fabs(a[i][c]).total_cmp(&libm::fabs(a[j][c])))
            .unwrap();
        if libm::fabs(a[p][c]) <= tol {
            for row in a.iter_mut().skip(r) {
                row[c] = 0.0;
            }
            continue;
        }
        a.swap(r, p);
        let inv = 1.0 / a[r][c];
        for v in a[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0.0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] -= f * a[r][j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0.0; cols];
            v[f] = 1.0;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f];
            }
            v
        })
        .collect()
}

fn inner(g: Option<&[Vec<f64>]>, u: &[f64], v: &[f64]) -> f64 {
    match g {
        Some(g) => (0..u.len())
            .map(|i| u[i] * (0..v.len()).map(|j| g[i][j] * v[j]).sum::<f64>())
            .sum(),
        None => u.iter().zip(v).map(|(a, b)| a * b).sum(),
    }
}

/// Eigenpolynomials for `λ` in the block occupying `range`: vectors in the
/// kernel of `M − λ` restricted to degrees up to the block, with linearly
/// independent components in the block.
fn eigenvectors(m: &[Vec<f64>], range: &Range<usize>, lambda: f64, gram: Option<&[Vec<f64>]>) -> Vec<Vec<f64>> {
    let e = range.end;
    let a: Vec<Vec<f64>> = (0..e)
        .map(|i| (0..e).map(|j| m[i][j] - if i == j { lambda } else { 0.0 }).collect())
        .collect();
    let norm = a
        .iter()
        .map(|r| r.iter().map(|v| libm::fabs(*v)).sum::<f64>())
        .fold(1.0, f64::max);
    let kernel = nullspace_f64(a, 1e-7 * norm);
    let mut accepted: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for v in kernel {
        let (mut top, mut full) = (v[range.clone()].to_vec(), v);
        for (t, f) in &accepted {
            let r: f64 = t.iter().zip(&top).map(|(a, b)| a * b).sum();
            top.iter_mut().zip(t).for_each(|(x, y)| *x -= r * y);
            full.iter_mut().zip(f).for_each(|(x, y)| *x -= r * y);
        }
        let n = libm::sqrt(top.iter().map(|x| x * x).sum());
        if n > 1e-8 {
            top.iter_mut().for_each(|x| *x /= n);
            full.iter_mut().for_each(|x| *x /= n);
            accepted.push((top, full));
        }
    }
    let mut out: Vec<Vec<f64>> = Vec::new();
    for (_, mut v) in accepted {
        if let Some(g) = gram {
            for u in &out {
                let r = inner(Some(g), u, &v);
                v.iter_mut().zip(u).for_each(|(x, y)| *x -= r * y);
            }
            let n = libm::sqrt(inner(Some(g), &v, &v));
            v.iter_mut().for_each(|x| *x /= n);
        } else {
            let top = v[range.clone()].iter().map(|x| libm::fabs(*x)).fold(0.0, f64::max);
            v.iter_mut().for_each(|x| *x /= top);
        }
        out.push(v);
    }
    let len = m.len();
    out.into_iter()
        .map(|mut v| {
            v.resize(len, 0.0);
            v
        })
        .collect()
}

/// Eigenvalues and eigenpolynomials per weighted degree. With a Gram matrix
/// the eigenpolynomials of a repeated eigenvalue are orthonormalized.
pub fn eigenstructure(inv: &Invariance, gram: Option<&Vec<Vec<f64>>>) -> Result<Vec<EigenBlock>, SpectralError> {
    if let Some(w) = inv.witness {
        return Err(SpectralError::NotInvariant(w));
    }
    let m = inv.matrix_f64();
    let gram = gram.map(|g| g.as_slice());
    let mut out = Vec::new();
    for (degree, range) in inv.basis.blocks() {
        let block: Vec<Vec<Rational>> = range.clone().map(|i| inv.matrix[i][range.clone()].to_vec()).collect();
        let cp = char_poly(&block);
        let (all_real, eigenvalues) = block_spectrum(&cp);
        let mut eigenpairs = Vec::new();
        let mut defective = !all_real;
        if all_real {
            for ev in &eigenvalues {
                let vs = eigenvectors(&m, &range, ev.re, gram);
                if vs.len() < ev.multiplicity {
                    defective = true;
                }
                eigenpairs.extend(vs.into_iter().map(|coeffs| Eigenpair { value: ev.re, coeffs }));
            }
        }
        out.push(EigenBlock {
            degree,
            range,
            char_poly: cp,
            all_real,
            eigenvalues,
            eigenpairs,
            defective,
        });
    }
    Ok(out)
}
