//! Seeded random instance generators for property suites and verification.
//!
//! Operators are assembled in the eigenbasis of `A`, where membership in
//! `B_{A^{1/2}}` (equivalently `B_A` in finite dimension) means the block
//! coupling `N(A)` into `R(A)` vanishes. Structure classes (self-adjoint,
//! square-zero) are imposed on the reduced block and pulled back, optionally
//! with nontrivial action on the null space.

use num_complex::Complex64;

use crate::matrix::{complex_gaussian, derive_rng, haar_unitary, CMatrix, CVector};
use crate::semihilbert::{PsdContext, ToleranceConfig};

const TAG_INSTANCE: u64 = 0x49_01;

fn gaussian_matrix(rng: &mut rand_chacha::ChaCha12Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng) * 0.5)
}

/// Random PSD matrix of size `n` and rank `r`, eigenvalues in `[0.4, 2.4]`.
pub fn random_psd(seed: u64, n: usize, r: usize) -> CMatrix {
    let mut rng = derive_rng(seed, TAG_INSTANCE, 0);
    let v = haar_unitary(&mut rng, n);
    let eigs = CVector::from_fn(n, |i, _| {
        if i < r {
            Complex64::new(0.4 + 2.0 * rand::Rng::random::<f64>(&mut rng), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    &v * CMatrix::from_diagonal(&eigs) * v.adjoint()
}

/// Context over [`random_psd`] with the given tolerances.
pub fn random_context(seed: u64, n: usize, r: usize, tol: ToleranceConfig) -> PsdContext {
    PsdContext::build(random_psd(seed, n, r), tol).expect("random PSD context")
}

/// Assembles `T` from reduced-basis blocks: `range_block` acts on the
/// coordinates of `R(A^{1/2})`, and when `with_null_action` is set the null
/// space receives random internal action plus coupling from the range side
/// (never into it, so membership in `B_{A^{1/2}}` is preserved).
fn assemble_from_reduced(
    ctx: &PsdContext,
    range_block: &CMatrix,
    with_null_action: bool,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> CMatrix {
    let n = ctx.dim();
    let r = ctx.rank();
    let k = n - r;
    // T11 in the A-eigenbasis conjugates the reduced block back.
    let lam_sqrt = CMatrix::from_diagonal(&CVector::from_iterator(
        r,
        ctx.eigenvalues()[..r]
            .iter()
            .map(|&l| Complex64::new(l.sqrt(), 0.0)),
    ));
    let lam_sqrt_inv = CMatrix::from_diagonal(&CVector::from_iterator(
        r,
        ctx.eigenvalues()[..r]
            .iter()
            .map(|&l| Complex64::new(1.0 / l.sqrt(), 0.0)),
    ));
    let t11 = &lam_sqrt_inv * range_block * &lam_sqrt;
    let mut blocks = CMatrix::zeros(n, n);
    blocks.view_mut((0, 0), (r, r)).copy_from(&t11);
    if with_null_action && k > 0 {
        blocks
            .view_mut((r, 0), (k, r))
            .copy_from(&gaussian_matrix(rng, k, r));
        blocks
            .view_mut((r, r), (k, k))
            .copy_from(&gaussian_matrix(rng, k, k));
    }
    let u = ctx.eigenvectors();
    u * blocks * u.adjoint()
}

/// Random member of `B_{A^{1/2}}` (equivalently `B_A` here).
pub fn random_a_bounded(ctx: &PsdContext, seed: u64, with_null_action: bool) -> CMatrix {
    let mut rng = derive_rng(seed, TAG_INSTANCE, 1);
    let reduced = gaussian_matrix(&mut rng, ctx.rank(), ctx.rank());
    assemble_from_reduced(ctx, &reduced, with_null_action, &mut rng)
}

/// Random `A`-self-adjoint operator: the reduced block is Hermitian.
pub fn random_a_selfadjoint(ctx: &PsdContext, seed: u64, with_null_action: bool) -> CMatrix {
    let mut rng = derive_rng(seed, TAG_INSTANCE, 2);
    let g = gaussian_matrix(&mut rng, ctx.rank(), ctx.rank());
    let herm = (&g + g.adjoint()).scale(0.5);
    assemble_from_reduced(ctx, &herm, with_null_action, &mut rng)
}

/// Random `A`-nilpotent operator of index 2: the reduced block is a rank-one
/// square-zero matrix `u v*` with `v* u = 0`. Needs `rank(A) >= 2`.
pub fn random_a_nilpotent2(ctx: &PsdContext, seed: u64, with_null_action: bool) -> CMatrix {
    let r = ctx.rank();
    assert!(r >= 2, "index-2 square-zero block needs rank >= 2");
    let mut rng = derive_rng(seed, TAG_INSTANCE, 3);
    let u = {
        let g = CVector::from_fn(r, |_, _| complex_gaussian(&mut rng));
        g.clone().unscale(g.norm())
    };
    let v = loop {
        let g = CVector::from_fn(r, |_, _| complex_gaussian(&mut rng));
        let overlap = u.dotc(&g);
        let ortho = &g - &u * overlap;
        let n = ortho.norm();
        if n > 1.0e-8 {
            break ortho.unscale(n);
        }
    };
    let scale = Complex64::new(0.5 + rand::Rng::random::<f64>(&mut rng), 0.0);
    let square_zero = &u * scale * v.adjoint();
    assemble_from_reduced(ctx, &square_zero, with_null_action, &mut rng)
}

/// Random `q` in the closed unit disk with modulus at most `max_modulus`.
pub fn random_q(seed: u64, max_modulus: f64) -> crate::qrange::QValue {
    let mut rng = derive_rng(seed, TAG_INSTANCE, 4);
    let modulus = max_modulus * rand::Rng::random::<f64>(&mut rng);
    let phase = 2.0 * std::f64::consts::PI * rand::Rng::random::<f64>(&mut rng);
    crate::qrange::QValue::new(Complex64::from_polar(modulus, phase)).expect("inside disk")
}

/// `[[0, S], [0, 0]]` acting on `H + H`.
pub fn square_zero_block(s: &CMatrix) -> CMatrix {
    let n = s.nrows();
    let mut t = CMatrix::zeros(2 * n, 2 * n);
    t.view_mut((0, n), (n, n)).copy_from(s);
    t
}

/// `[[0, S1, 0], [0, 0, S2], [0, 0, 0]]` acting on `H + H + H`.
pub fn index3_block(s1: &CMatrix, s2: &CMatrix) -> CMatrix {
    let n = s1.nrows();
    assert_eq!(n, s2.nrows(), "blocks must share the summand dimension");
    let mut t = CMatrix::zeros(3 * n, 3 * n);
    t.view_mut((0, n), (n, n)).copy_from(s1);
    t.view_mut((n, 2 * n), (n, n)).copy_from(s2);
    t
}

/// `diag(A, A, A)` matching [`index3_block`].
pub fn block_diag3(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::zeros(3 * n, 3 * n);
    for k in 0..3 {
        out.view_mut((k * n, k * n), (n, n)).copy_from(a);
    }
    out
}
