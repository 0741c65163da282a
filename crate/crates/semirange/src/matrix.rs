//! Dense complex matrix helpers shared by the whole crate.
//!
//! Everything is built on `nalgebra` dynamic matrices over `Complex<f64>`;
//! the sizes involved are desk scale, so no structured formats are used.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::{Error, Result};

/// Dense square complex matrix; houses `A`, `T` and every derived operator.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;

/// Checks that a matrix is square with finite entries.
pub fn validate_square_finite(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    for e in m.iter() {
        if !e.re.is_finite() || !e.im.is_finite() {
            return Err(Error::NegativeEigenvalue { value: f64::NAN });
        }
    }
    Ok(())
}

/// Frobenius norm.
pub fn fro_norm(m: &CMatrix) -> f64 {
    m.norm()
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Frobenius deviation from being Hermitian, `|M - M*|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

/// Relative equality `|X - Y| <= tol * max(1, |X|, |Y|)` in Frobenius norm.
pub fn rel_eq(x: &CMatrix, y: &CMatrix, tol: f64) -> bool {
    (x - y).norm() <= tol * x.norm().max(y.norm()).max(1.0)
}

/// Hermitian eigendecomposition with eigenvalues sorted descending.
///
/// The input is symmetrized first; ties keep the solver's original order so
/// repeated runs produce identical bases. Returns `(eigenvalues, eigenvectors)`
/// with eigenvectors as columns matching the sorted order.
pub fn hermitian_eigen_desc(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Eigenvalues of a general complex matrix, via the Schur form.
pub fn general_eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    if m.is_empty() {
        return Vec::new();
    }
    if m.nrows() == 1 {
        return vec![m[(0, 0)]];
    }
    if let Some(v) = m.clone().eigenvalues() {
        return v.iter().copied().collect();
    }
    // Schur iteration rarely stalls at the default budget; retry harder.
    let schur = nalgebra::Schur::try_new(m.clone(), 1.0e-14, 100_000)
        .expect("eigenvalue iteration failed to converge");
    schur
        .eigenvalues()
        .expect("complex Schur form always yields eigenvalues")
        .iter()
        .copied()
        .collect()
}

/// `m^k` by repeated multiplication (`k = 0` gives the identity).
pub fn matrix_power(m: &CMatrix, k: usize) -> CMatrix {
    let n = m.nrows();
    let mut acc = CMatrix::identity(n, n);
    for _ in 0..k {
        acc = &acc * m;
    }
    acc
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic sub-generator for (master seed, stream tag, item index).
///
/// Every randomized routine in the crate derives its generators through this,
/// so results are identical for identical seeds regardless of execution order.
pub fn derive_rng(master: u64, tag: u64, index: u64) -> ChaCha12Rng {
    let mixed = splitmix64(master ^ splitmix64(tag ^ splitmix64(index)));
    ChaCha12Rng::seed_from_u64(mixed)
}

/// One standard complex Gaussian sample (real and imaginary parts `N(0,1)`).
pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    let r = (-2.0 * (1.0 - u1).max(f64::MIN_POSITIVE).ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    Complex64::new(r * t.cos(), r * t.sin())
}

/// Gaussian complex vector of length `n`.
pub fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| complex_gaussian(rng))
}

/// Uniform point on the unit sphere of `C^n`.
pub fn random_unit_vector<R: Rng>(rng: &mut R, n: usize) -> CVector {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.norm();
        if norm > 1.0e-6 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

/// Haar-distributed unitary, QR of a Ginibre matrix with phase fixing.
pub fn haar_unitary<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_eigen_sorts_descending() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let (vals, vecs) = hermitian_eigen_desc(&m);
        assert!((vals[0] - 3.0).abs() < 1.0e-12);
        assert!((vals[1] - 1.0).abs() < 1.0e-12);
        // reconstruct
        let lam = CMatrix::from_diagonal(&CVector::from_iterator(
            2,
            vals.iter().map(|&v| c(v, 0.0)),
        ));
        let rec = &vecs * lam * vecs.adjoint();
        assert!(rel_eq(&rec, &m, 1.0e-12));
    }

    #[test]
    fn general_eigenvalues_of_complex_matrix() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, -1.0)],
        );
        let mut eigs = general_eigenvalues(&m);
        eigs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((eigs[0] - c(0.0, 1.0)).norm() < 1.0e-10);
        assert!((eigs[1] - c(2.0, -1.0)).norm() < 1.0e-10);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = derive_rng(7, 0, 0);
        let u = haar_unitary(&mut rng, 4);
        let id = CMatrix::identity(4, 4);
        assert!(rel_eq(&(&u * u.adjoint()), &id, 1.0e-10));
    }

    #[test]
    fn derive_rng_is_reproducible() {
        let a: Vec<u64> = {
            let mut r = derive_rng(1, 2, 3);
            (0..4).map(|_| r.random()).collect()
        };
        let b: Vec<u64> = {
            let mut r = derive_rng(1, 2, 3);
            (0..4).map(|_| r.random()).collect()
        };
        assert_eq!(a, b);
        let c: Vec<u64> = {
            let mut r = derive_rng(1, 2, 4);
            (0..4).map(|_| r.random()).collect()
        };
        assert_ne!(a, c);
    }

    #[test]
    fn spectral_norm_of_jordan_cell() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((spectral_norm(&m) - 1.0).abs() < 1.0e-12);
    }
}
