//! Dense complex linear algebra: the small fixed toolkit the simulation needs.
//!
//! Dimensions stay at desk scale (≤ 250), so everything is dense row-major
//! storage with straightforward O(n³) algorithms. Eigendecomposition of
//! Hermitian matrices uses a cyclic complex Jacobi iteration, which is
//! deterministic and accurate to near machine precision at these sizes.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // no_std builds resolve float math through this trait
use num_traits::Float;

/// Complex double — the only scalar type used by the simulation.
pub type C64 = num_complex::Complex<f64>;

/// Shorthand constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Complex zero/one as plain consts (usable in const contexts).
pub const CZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const CONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub n_rows: usize,
    pub n_cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        CMat { n_rows, n_cols, data: vec![CZERO; n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CONE;
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    /// Borrow one row as a contiguous slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [C64] {
        &mut self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    /// Raw storage, row-major.
    #[inline]
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        CMat::from_fn(self.n_cols, self.n_rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> CMat {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v *= s;
        }
        out
    }

    /// Copy `other`'s contents into self without reallocating.
    pub fn assign(&mut self, other: &CMat) {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        self.data.copy_from_slice(&other.data);
    }

    /// self += s · other (shapes must match).
    pub fn add_scaled(&mut self, s: C64, other: &CMat) {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += s * *b;
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        let mut out = self.clone();
        out.add_scaled(-CONE, other);
        out
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.n_cols, other.n_rows, "matrix product shape mismatch");
        let mut out = CMat::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                if a == CZERO {
                    continue;
                }
                let src = other.row(k);
                let dst = out.row_mut(i);
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d += a * *s;
                }
            }
        }
        out
    }

    /// out = self · v for a column vector v.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.n_cols, v.len());
        let mut out = vec![CZERO; self.n_rows];
        for i in 0..self.n_rows {
            let mut acc = CZERO;
            for (a, x) in self.row(i).iter().zip(v.iter()) {
                acc += *a * *x;
            }
            out[i] = acc;
        }
        out
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.n_rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude (max-entry norm).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// max |self − self†|.
    pub fn hermiticity_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.n_rows {
            for j in 0..=i {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// In-place (M + M†)/2.
    pub fn hermitize(&mut self) {
        assert!(self.is_square());
        for i in 0..self.n_rows {
            for j in 0..i {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                self[(i, j)] = avg;
                self[(j, i)] = avg.conj();
            }
            let d = self[(i, i)];
            self[(i, i)] = c64(d.re, 0.0);
        }
    }

    /// AB − BA.
    pub fn commutator(&self, other: &CMat) -> CMat {
        self.mul(other).sub(&other.mul(self))
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n_cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n_cols + j]
    }
}

// ---------------------------------------------------------------------------
// vector helpers
// ---------------------------------------------------------------------------

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// ⟨a|b⟩ with the left argument conjugated.
pub fn vec_inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * *y).sum()
}

pub fn vec_add_scaled(dst: &mut [C64], s: C64, src: &[C64]) {
    for (d, x) in dst.iter_mut().zip(src.iter()) {
        *d += s * *x;
    }
}

pub fn vec_dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic complex Jacobi)
// ---------------------------------------------------------------------------

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues ascending and the
/// k-th column of the returned matrix the corresponding unit eigenvector.
/// Deterministic: the cyclic sweep order is fixed, so repeated calls on the
/// same input give bit-identical output.
///
/// Panics if the input is not square; the caller is responsible for passing a
/// (numerically) Hermitian matrix — only the lower triangle's Hermitian
/// completion is consulted.
pub fn hermitian_eigen(a: &CMat) -> (Vec<f64>, CMat) {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.n_rows;
    let mut m = a.clone();
    m.hermitize();
    let mut v = CMat::identity(n);

    let scale = m.max_abs().max(1e-300);
    let tol = 1e-14 * scale;
    // Quadratic convergence: a handful of sweeps suffice at these sizes.
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= tol * 1e-2 {
                    continue;
                }
                let phase = apq / mag; // e^{iφ}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;
                let sp = phase * sth; // s·e^{iφ}
                let spc = sp.conj();

                // A ← J† A J with J[p,p]=c, J[q,q]=c, J[p,q]=s·e^{iφ}, J[q,p]=−s·e^{−iφ}
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * cth - akq * spc;
                    m[(k, q)] = akp * sp + akq * cth;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * cth - aqk * sp;
                    m[(q, k)] = apk * spc + aqk * cth;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cth - vkq * spc;
                    v[(k, q)] = vkp * sp + vkq * cth;
                }
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (m[(i, i)].re, i)).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let evals: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let evecs = CMat::from_fn(n, n, |i, k| v[(i, pairs[k].1)]);
    (evals, evecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn product_and_dagger() {
        let a = CMat::from_fn(2, 2, |i, j| c64((i + j) as f64, i as f64 - j as f64));
        let id = CMat::identity(2);
        assert_eq!(a.mul(&id), a);
        let d = a.dagger();
        assert_eq!(d[(0, 1)], a[(1, 0)].conj());
    }

    #[test]
    fn commutator_of_self_vanishes() {
        let a = CMat::from_fn(3, 3, |i, j| c64(i as f64 * 0.3, j as f64 * 0.7));
        assert!(a.commutator(&a).max_abs() < 1e-14);
    }

    #[test]
    fn jacobi_diagonalizes_pauli_like_matrix() {
        // [[1, i],[−i, −1]] has eigenvalues ±√2
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = c64(1.0, 0.0);
        m[(0, 1)] = c64(0.0, 1.0);
        m[(1, 0)] = c64(0.0, -1.0);
        m[(1, 1)] = c64(-1.0, 0.0);
        let (e, v) = hermitian_eigen(&m);
        assert_close(e[0], -(2.0f64).sqrt(), 1e-12);
        assert_close(e[1], (2.0f64).sqrt(), 1e-12);
        // eigenvector residual ‖Mv − λv‖
        for k in 0..2 {
            let col: Vec<C64> = (0..2).map(|i| v[(i, k)]).collect();
            let mv = m.apply(&col);
            let res: f64 = mv
                .iter()
                .zip(col.iter())
                .map(|(a, b)| (*a - *b * e[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-12);
        }
    }

    #[test]
    fn jacobi_handles_degenerate_zero_space() {
        // 3-chain coupling: zero mode (1,0,−1)/√2, bright ±√2
        let mut m = CMat::zeros(3, 3);
        m[(0, 1)] = CONE;
        m[(1, 0)] = CONE;
        m[(1, 2)] = CONE;
        m[(2, 1)] = CONE;
        let (e, _) = hermitian_eigen(&m);
        assert_close(e[0], -(2.0f64).sqrt(), 1e-12);
        assert_close(e[1], 0.0, 1e-12);
        assert_close(e[2], (2.0f64).sqrt(), 1e-12);
    }

    #[test]
    fn hermitize_enforces_symmetry() {
        let mut m = CMat::from_fn(3, 3, |i, j| c64(i as f64, j as f64));
        m.hermitize();
        assert!(m.hermiticity_defect() < 1e-15);
    }
}
