//! The reduced operator on the Hilbert space `R(A^{1/2})`.
//!
//! For `T` leaving `N(A)` invariant there is a unique operator `T~` on
//! `R(A^{1/2})` intertwined with `T` by `Z_A x = A x`. In the eigenbasis of
//! `A` with retained eigenvalue block `Lambda_r` and eigenvector block `U_r`
//! its coordinate matrix is `Lambda_r^{1/2} (U_r* T U_r) Lambda_r^{-1/2}`.
//! The coordinate map turns the semi-Hilbertian geometry into the standard
//! one on `C^r`, which is what the spectra and range engines lean on.

use crate::matrix::{derive_rng, gaussian_vector, spectral_norm, CMatrix, CVector};
use crate::semihilbert::PsdContext;
use crate::Result;

const TAG_TILDE: u64 = 0x54_49;

/// Coordinate representation of `T~` together with the embedding maps.
#[derive(Debug, Clone)]
pub struct TildeOperator {
    r: usize,
    matrix: CMatrix,
    embed: CMatrix,
    pullback: CMatrix,
}

impl TildeOperator {
    /// Dimension of `R(A^{1/2})`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// The `r x r` coordinate matrix of `T~`.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Coordinates of `Z_A x = A x`; maps the unit `A`-sphere onto the unit
    /// sphere of `C^r`.
    pub fn embed(&self, x: &CVector) -> CVector {
        &self.embed * x
    }

    /// A representative in `H` for a coordinate vector, a right inverse of
    /// [`Self::embed`].
    pub fn pullback(&self, coords: &CVector) -> CVector {
        &self.pullback * coords
    }

    /// Largest singular value of the coordinate matrix.
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.matrix)
    }
}

/// Builds `T~` for an operator in `B_{A^{1/2}}`.
pub fn build_tilde(ctx: &PsdContext, t: &CMatrix) -> Result<TildeOperator> {
    ctx.require_a_bounded(t)?;
    let r = ctx.rank();
    let embed = ctx.embed_matrix();
    let pullback = ctx.pullback_matrix();
    let matrix = &embed * t * &pullback;
    Ok(TildeOperator {
        r,
        matrix,
        embed,
        pullback,
    })
}

/// Max intertwining residual `|coords(A T x) - T~ coords(A x)|` over random
/// `x`, normalized against `|A| |T| |x|`. Must sit below the equality
/// tolerance for members of `B_{A^{1/2}}`.
pub fn tilde_consistency_check(
    ctx: &PsdContext,
    t: &CMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    let tilde = build_tilde(ctx, t)?;
    let scale = ctx.a_norm_op().max(1.0) * spectral_norm(t).max(1.0);
    let mut worst = 0.0f64;
    for i in 0..n_samples {
        let mut rng = derive_rng(seed, TAG_TILDE, i as u64);
        let x = gaussian_vector(&mut rng, ctx.dim());
        let lhs = tilde.embed(&(t * &x));
        let rhs = tilde.matrix() * tilde.embed(&x);
        let residual = (lhs - rhs).norm() / (scale * x.norm().max(1.0e-300));
        worst = worst.max(residual);
    }
    Ok(worst)
}
