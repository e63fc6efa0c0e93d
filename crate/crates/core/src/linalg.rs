//! Dense complex helpers: sorted SVD, spans, null spaces, spectral norms
//! and Hermitian eigenvalues. Matrices are nalgebra's; the decompositions
//! run through faer.

use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::spaces::C64;

pub type CMatrix = DMatrix<C64>;

fn to_faer(m: &CMatrix) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular values in non-increasing order (padded with zeros to the
/// column count) together with the *full* set of right singular vectors.
pub(crate) struct SortedSvd {
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

pub(crate) fn svd_full_right(m: &CMatrix) -> SortedSvd {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return SortedSvd { sigma: vec![0.0; c], v: CMatrix::identity(c, c) };
    }
    let svd = to_faer(m).svd().expect("SVD did not converge");
    let s = svd.S().column_vector();
    let mut sigma: Vec<f64> = (0..r.min(c)).map(|i| s[i].re).collect();
    sigma.resize(c, 0.0);
    let v = svd.V();
    SortedSvd { sigma, v: CMatrix::from_fn(c, c, |i, j| v[(i, j)]) }
}

pub(crate) fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    to_faer(m).singular_values().expect("SVD did not converge")
}

/// Largest singular value; zero for empty matrices.
pub fn operator_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of the column span. Singular values at or below
/// `rel_tol · σ_max` count as zero.
pub(crate) fn orth(m: &CMatrix, rel_tol: f64) -> CMatrix {
    span_above(m, |smax| rel_tol * smax)
}

/// Orthonormal basis of the column span, dropping singular values at or
/// below `abs_tol`. Use this when the columns have a known scale (images
/// of an orthonormal basis), so pure rounding noise is never promoted to a
/// direction.
pub(crate) fn orth_abs(m: &CMatrix, abs_tol: f64) -> CMatrix {
    span_above(m, |_| abs_tol)
}

fn span_above(m: &CMatrix, cutoff: impl Fn(f64) -> f64) -> CMatrix {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return CMatrix::zeros(n, 0);
    }
    let svd = to_faer(m).thin_svd().expect("SVD did not converge");
    let s = svd.S().column_vector();
    let smax = s[0].re;
    if smax == 0.0 {
        return CMatrix::zeros(n, 0);
    }
    let cut = cutoff(smax);
    let keep = (0..s.nrows()).take_while(|&i| s[i].re > cut).count();
    let u = svd.U();
    CMatrix::from_fn(n, keep, |i, j| u[(i, j)])
}

/// Orthonormal basis of `{x : m x = 0}`; singular values at or below
/// `abs_tol` count as zero.
pub(crate) fn null_space(m: &CMatrix, abs_tol: f64) -> CMatrix {
    let c = m.ncols();
    let svd = svd_full_right(m);
    let cols: Vec<usize> = (0..c).filter(|&j| svd.sigma.get(j).copied().unwrap_or(0.0) <= abs_tol).collect();
    CMatrix::from_fn(c, cols.len(), |i, j| svd.v[(i, cols[j])])
}

pub(crate) fn rank(m: &CMatrix, abs_tol: f64) -> usize {
    singular_values(m).iter().filter(|&&s| s > abs_tol).count()
}

/// Smallest eigenvalue of the Hermitian part of `h`.
pub fn hermitian_min_eigenvalue(h: &CMatrix) -> f64 {
    hermitian_eigenvalues(h).first().copied().unwrap_or(0.0)
}

/// Eigenvalues of the Hermitian part of `h`, ascending.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    if h.nrows() == 0 {
        return Vec::new();
    }
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    to_faer(&sym).self_adjoint_eigenvalues(Side::Lower).expect("eigensolver did not converge")
}

/// Submatrix on the given rows and columns.
pub(crate) fn select(m: &CMatrix, rows: &[usize], cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Columns `e_p` of the identity for the given positions.
pub(crate) fn coordinate_embedding(size: usize, positions: &[usize]) -> CMatrix {
    let mut e = CMatrix::zeros(size, positions.len());
    for (j, &p) in positions.iter().enumerate() {
        e[(p, j)] = C64::new(1.0, 0.0);
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(r: usize, c: usize, data: &[f64]) -> CMatrix {
        CMatrix::from_row_iterator(r, c, data.iter().map(|&x| C64::new(x, 0.0)))
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let m = real(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&m, 1e-12);
        assert_eq!(ns.ncols(), 2);
        assert!((&m * &ns).norm() < 1e-14);
        let gram = ns.adjoint() * &ns;
        assert!((gram - CMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn null_space_edge_shapes() {
        assert_eq!(null_space(&CMatrix::zeros(0, 4), 1e-12).ncols(), 4);
        assert_eq!(null_space(&CMatrix::zeros(3, 0), 1e-12).ncols(), 0);
        assert_eq!(null_space(&CMatrix::identity(3, 3), 1e-12).ncols(), 0);
    }

    #[test]
    fn orth_drops_dependent_columns() {
        let m = real(3, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(orth(&m, 1e-10).ncols(), 2);
        assert_eq!(orth(&CMatrix::zeros(3, 2), 1e-10).ncols(), 0);
        let noise = real(2, 1, &[1e-17, 0.0]);
        assert_eq!(orth(&noise, 1e-10).ncols(), 1);
        assert_eq!(orth_abs(&noise, 1e-10).ncols(), 0);
    }

    #[test]
    fn rank_deficient_span_reproduces_columns() {
        // tall, rank 3, with repeated singular values
        let x = CMatrix::from_fn(36, 3, |i, j| C64::new((i as f64 / 36.0).powi(j as i32), (j as f64) * 0.5));
        let y = CMatrix::from_fn(3, 8, |i, j| if j % 3 == i { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
        let a = &x * &y;
        let q = orth(&a, 1e-10);
        assert_eq!(q.ncols(), 3);
        assert!((&a - &q * (q.adjoint() * &a)).norm() < 1e-10 * a.norm());
        let ns = null_space(&a, 1e-9 * a.norm());
        assert_eq!(ns.ncols(), 5);
        assert!((&a * &ns).norm() < 1e-10 * a.norm());
    }

    #[test]
    fn min_eigenvalue_and_norm() {
        let h = real(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        assert!((hermitian_min_eigenvalue(&h) - 1.0).abs() < 1e-14);
        assert!((operator_norm(&h) - 3.0).abs() < 1e-14);
        assert_eq!(operator_norm(&CMatrix::zeros(0, 0)), 0.0);
    }
}
