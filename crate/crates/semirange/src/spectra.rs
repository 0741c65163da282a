//! `A`-point spectrum, `A`-spectrum and `A`-spectral radius.
//!
//! The point spectrum comes from the compressed eigenproblem
//! `P_{R(A)} T x = lambda x` solved in range coordinates, while the full
//! spectrum is read off the reduced operator. In finite dimension with
//! `R(A)` closed the two coincide and the approximate point spectrum
//! collapses onto them; the crate reports the collapsed set and verifies the
//! coincidence numerically instead of assuming it silently.

use num_complex::Complex64;

use crate::matrix::{general_eigenvalues, matrix_power, CMatrix};
use crate::reduction::build_tilde;
use crate::semihilbert::PsdContext;
use crate::Result;

/// Spectral data of `T` relative to the context.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Eigenvalues of the compression of `T` to `R(A)`, with multiplicity.
    pub point: Vec<Complex64>,
    /// Eigenvalues of the reduced operator, with multiplicity.
    pub full: Vec<Complex64>,
    /// Approximate point spectrum; equals `point` in finite dimension.
    pub approx: Vec<Complex64>,
    /// `max |lambda|` over `full`.
    pub radius_exact: f64,
    /// Gelfand-style estimates `(n, |T^n|_A^{1/n})`.
    pub radius_limit_estimates: Vec<(usize, f64)>,
}

/// Eigenvalues of the compression `U_r* T U_r` of `T` to `R(A)`.
///
/// This is the defining-formula route; it must agree with the eigenvalues of
/// the reduced operator, which is a similar matrix.
pub fn a_point_spectrum(ctx: &PsdContext, t: &CMatrix) -> Result<Vec<Complex64>> {
    ctx.require_a_bounded(t)?;
    let ur = ctx.range_basis();
    let compression = ur.adjoint() * t * &ur;
    Ok(general_eigenvalues(&compression))
}

/// Eigenvalues of the reduced operator; in finite dimension with `R(A)`
/// closed these are exactly the points where `T - lambda I` fails to be
/// `A`-invertible.
pub fn a_spectrum(ctx: &PsdContext, t: &CMatrix) -> Result<Vec<Complex64>> {
    let tilde = build_tilde(ctx, t)?;
    Ok(general_eigenvalues(tilde.matrix()))
}

/// Spectral radius via the reduced operator plus the Gelfand limit
/// `|T^n|_A^{1/n}` for `n = 1..=n_max`, each norm evaluated on the explicit
/// power `T^n`.
pub fn a_spectral_radius(ctx: &PsdContext, t: &CMatrix, n_max: usize) -> Result<SpectrumReport> {
    let point = a_point_spectrum(ctx, t)?;
    let full = a_spectrum(ctx, t)?;
    let radius_exact = full.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let mut radius_limit_estimates = Vec::with_capacity(n_max);
    for n in 1..=n_max.max(1) {
        let power = matrix_power(t, n);
        let norm = ctx.a_operator_norm(&power)?;
        radius_limit_estimates.push((n, norm.powf(1.0 / n as f64)));
    }
    Ok(SpectrumReport {
        approx: point.clone(),
        point,
        full,
        radius_exact,
        radius_limit_estimates,
    })
}

/// Collapses a multiset of eigenvalues into tolerance-clustered
/// representatives; `cluster_radius` should scale like `eq_tol * (1 + |T~|)`.
pub fn cluster_eigenvalues(values: &[Complex64], cluster_radius: f64) -> Vec<Complex64> {
    let mut reps: Vec<Complex64> = Vec::new();
    let mut sorted: Vec<Complex64> = values.to_vec();
    sorted.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for v in sorted {
        if !reps.iter().any(|r| (r - v).norm() <= cluster_radius) {
            reps.push(v);
        }
    }
    reps
}

/// Max over one multiset of the distance to the nearest point of the other,
/// symmetrized; the set-level equality metric for spectra.
pub fn spectrum_set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_sided = |from: &[Complex64], to: &[Complex64]| -> f64 {
        from.iter()
            .map(|x| {
                to.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    one_sided(a, b).max(one_sided(b, a))
}
