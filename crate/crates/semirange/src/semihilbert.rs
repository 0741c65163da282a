//! The semi-Hilbertian context induced by a positive semidefinite operator.
//!
//! [`PsdContext`] carries the spectral factorization of `A`, its rank, the
//! Moore-Penrose pseudo-inverses and the orthogonal projector onto `R(A)`.
//! On top of it live the semi-inner product `<x, y>_A = <Ax, y>`, the
//! `A`-adjoint `T^# = A^dag T* A`, the `A`-operator seminorm, the
//! classification predicates and the seeded `A`-unitary generator.

use num_complex::Complex64;

use crate::matrix::{
    derive_rng, fro_norm, haar_unitary, hermitian_deviation, hermitian_eigen_desc,
    matrix_power, rel_eq, spectral_norm, validate_square_finite, CMatrix, CVector,
};
use crate::{Error, Result};

const TAG_UNITARY: u64 = 0x41_55;

/// Tolerances used throughout the crate.
///
/// `eq_tol` scales with operand norms in every equality predicate, `rank_tol`
/// is relative to the largest eigenvalue of `A`, `opt_tol` stops the radius
/// optimizer, and `geo_tol` budgets scale-relative set comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub rank_tol: f64,
    pub eq_tol: f64,
    pub opt_tol: f64,
    pub geo_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1.0e-10,
            eq_tol: 1.0e-9,
            opt_tol: 1.0e-8,
            geo_tol: 5.0e-2,
        }
    }
}

impl ToleranceConfig {
    fn validate(&self) -> Result<()> {
        if self.rank_tol > 0.0 && self.eq_tol > 0.0 && self.opt_tol > 0.0 && self.geo_tol > 0.0 {
            Ok(())
        } else {
            Err(Error::NegativeEigenvalue { value: -1.0 })
        }
    }
}

/// Classification of an operator relative to the context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    /// `T` maps the null space of `A` into itself.
    pub is_a_bounded: bool,
    /// `R(T* A)` is contained in `R(A)`.
    pub is_in_b_a: bool,
    /// `A T = T* A`.
    pub is_a_selfadjoint: bool,
    /// `A T` is positive semidefinite.
    pub is_a_positive: bool,
    /// `T T^# = T^# T`.
    pub is_a_normal: bool,
    /// Both `U` and `U^#` are `A`-isometries.
    pub is_a_unitary: bool,
    /// Least `k` with `A T^k = 0` while `A T^{k-1} != 0`.
    pub a_nilpotent_index: Option<usize>,
    /// Least `k` with `T^k = 0` while `T^{k-1} != 0`.
    pub nilpotent_index: Option<usize>,
}

impl std::fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn opt(v: Option<usize>) -> String {
            v.map_or_else(|| "absent".to_string(), |k| k.to_string())
        }
        writeln!(f, "A-bounded (T N(A) <= N(A)):  {}", self.is_a_bounded)?;
        writeln!(f, "admits A-adjoint (B_A):      {}", self.is_in_b_a)?;
        writeln!(f, "A-self-adjoint:              {}", self.is_a_selfadjoint)?;
        writeln!(f, "A-positive:                  {}", self.is_a_positive)?;
        writeln!(f, "A-normal:                    {}", self.is_a_normal)?;
        writeln!(f, "A-unitary:                   {}", self.is_a_unitary)?;
        writeln!(f, "A-nilpotent index:           {}", opt(self.a_nilpotent_index))?;
        write!(f, "nilpotent index:             {}", opt(self.nilpotent_index))
    }
}

/// The semi-Hilbertian geometry of a positive semidefinite `A`.
///
/// Immutable after construction and safe to share across threads.
#[derive(Debug, Clone)]
pub struct PsdContext {
    a: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
    rank: usize,
    tol: ToleranceConfig,
    a_half: CMatrix,
    a_pinv: CMatrix,
    a_half_pinv: CMatrix,
    projector: CMatrix,
}

impl PsdContext {
    /// Builds the context from `A`, validating Hermitianness and positivity.
    ///
    /// Eigenvalues at or below `rank_tol * lambda_max` are clamped to exactly
    /// zero; a significantly negative eigenvalue is rejected.
    pub fn build(a: CMatrix, tol: ToleranceConfig) -> Result<Self> {
        tol.validate()?;
        validate_square_finite(&a)?;
        let dev = hermitian_deviation(&a);
        let herm_budget = tol.eq_tol * fro_norm(&a).max(1.0);
        if dev > herm_budget {
            return Err(Error::NotHermitian {
                deviation: dev,
                tol: herm_budget,
            });
        }
        let (raw, vectors) = hermitian_eigen_desc(&a);
        let lambda_max = raw.first().copied().unwrap_or(0.0).max(0.0);
        let cutoff = tol.rank_tol * lambda_max;
        for &l in &raw {
            if l < -cutoff {
                return Err(Error::NegativeEigenvalue { value: l });
            }
        }
        let eigenvalues: Vec<f64> = raw
            .iter()
            .map(|&l| if l <= cutoff { 0.0 } else { l })
            .collect();
        let rank = eigenvalues.iter().filter(|&&l| l > 0.0).count();
        let n = a.nrows();

        let diag = |f: fn(f64) -> f64| {
            CMatrix::from_diagonal(&CVector::from_iterator(
                n,
                eigenvalues.iter().map(|&l| Complex64::new(f(l), 0.0)),
            ))
        };
        let a_half = &vectors * diag(f64::sqrt) * vectors.adjoint();
        let a_pinv = &vectors * diag(|l| if l > 0.0 { 1.0 / l } else { 0.0 }) * vectors.adjoint();
        let a_half_pinv =
            &vectors * diag(|l| if l > 0.0 { 1.0 / l.sqrt() } else { 0.0 }) * vectors.adjoint();
        let projector = &vectors * diag(|l| if l > 0.0 { 1.0 } else { 0.0 }) * vectors.adjoint();

        Ok(Self {
            a,
            eigenvalues,
            eigenvectors: vectors,
            rank,
            tol,
            a_half,
            a_pinv,
            a_half_pinv,
            projector,
        })
    }

    /// Builds the identity context of dimension `n`.
    pub fn identity(n: usize, tol: ToleranceConfig) -> Self {
        Self::build(CMatrix::identity(n, n), tol).expect("identity context")
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tolerances(&self) -> &ToleranceConfig {
        &self.tol
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn a_half(&self) -> &CMatrix {
        &self.a_half
    }

    pub fn a_pinv(&self) -> &CMatrix {
        &self.a_pinv
    }

    pub fn a_half_pinv(&self) -> &CMatrix {
        &self.a_half_pinv
    }

    pub fn projector(&self) -> &CMatrix {
        &self.projector
    }

    /// Eigenvalues of `A` in descending order, clamped at the rank cutoff.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary eigenvector basis matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// Largest eigenvalue of `A` (its operator norm).
    pub fn a_norm_op(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// Columns spanning `R(A)`.
    pub fn range_basis(&self) -> CMatrix {
        self.eigenvectors.columns(0, self.rank).into_owned()
    }

    /// Columns spanning `N(A)`.
    pub fn null_basis(&self) -> CMatrix {
        self.eigenvectors
            .columns(self.rank, self.dim() - self.rank)
            .into_owned()
    }

    /// Coordinate map of `R(A^{1/2})`: rows give `Lambda_r^{1/2} U_r^*`.
    ///
    /// Sends `x` to the coordinates of `A x` in the reduced space; it maps the
    /// unit `A`-sphere onto the unit sphere of `C^r`.
    pub fn embed_matrix(&self) -> CMatrix {
        let ur = self.range_basis();
        let lam = CMatrix::from_diagonal(&CVector::from_iterator(
            self.rank,
            self.eigenvalues[..self.rank]
                .iter()
                .map(|&l| Complex64::new(l.sqrt(), 0.0)),
        ));
        lam * ur.adjoint()
    }

    /// Right inverse of [`Self::embed_matrix`]: `U_r Lambda_r^{-1/2}`.
    pub fn pullback_matrix(&self) -> CMatrix {
        let ur = self.range_basis();
        let lam = CMatrix::from_diagonal(&CVector::from_iterator(
            self.rank,
            self.eigenvalues[..self.rank]
                .iter()
                .map(|&l| Complex64::new(1.0 / l.sqrt(), 0.0)),
        ));
        ur * lam
    }

    /// `<x, y>_A = <Ax, y>`, conjugate-linear in `y`.
    pub fn semi_inner(&self, x: &CVector, y: &CVector) -> Result<Complex64> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        if y.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: y.len(),
            });
        }
        Ok(y.dotc(&(&self.a * x)))
    }

    /// `A`-seminorm of a vector.
    pub fn a_norm(&self, x: &CVector) -> Result<f64> {
        Ok(self.semi_inner(x, x)?.re.max(0.0).sqrt())
    }

    /// `T^# = A^dag T* A`, the reduced Douglas solution of `A X = T* A`.
    pub fn sharp_adjoint(&self, t: &CMatrix) -> Result<CMatrix> {
        self.check_dim(t)?;
        Ok(&self.a_pinv * t.adjoint() * &self.a)
    }

    fn check_dim(&self, t: &CMatrix) -> Result<()> {
        validate_square_finite(t)?;
        if t.nrows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: t.nrows(),
            });
        }
        Ok(())
    }

    /// Largest residual of `|A T v|` over an orthonormal basis `v` of `N(A)`.
    pub fn null_invariance_residual(&self, t: &CMatrix) -> f64 {
        let nb = self.null_basis();
        let at = &self.a * t;
        let mut worst = 0.0f64;
        for j in 0..nb.ncols() {
            let v = nb.column(j).into_owned();
            worst = worst.max((&at * v).norm());
        }
        worst
    }

    fn membership_budget(&self, t: &CMatrix) -> f64 {
        self.tol.eq_tol * self.a_norm_op().max(1.0) * spectral_norm(t).max(1.0)
    }

    /// `T` maps `N(A)` into `N(A)`, the membership test for `B_{A^{1/2}}`.
    pub fn is_a_bounded(&self, t: &CMatrix) -> bool {
        self.null_invariance_residual(t) <= self.membership_budget(t)
    }

    /// Errors with [`Error::NotABounded`] when `T` moves `N(A)`.
    pub fn require_a_bounded(&self, t: &CMatrix) -> Result<()> {
        self.check_dim(t)?;
        let residual = self.null_invariance_residual(t);
        let tol = self.membership_budget(t);
        if residual <= tol {
            Ok(())
        } else {
            Err(Error::NotABounded { residual, tol })
        }
    }

    /// Membership in `B_A`: `R(T* A)` contained in `R(A)`.
    pub fn is_in_b_a(&self, t: &CMatrix) -> bool {
        let n = self.dim();
        let off_range = (CMatrix::identity(n, n) - &self.projector) * t.adjoint() * &self.a;
        fro_norm(&off_range) <= self.membership_budget(t)
    }

    /// `A`-operator seminorm, the largest singular value of
    /// `A^{1/2} T (A^{1/2})^dag`.
    pub fn a_operator_norm(&self, t: &CMatrix) -> Result<f64> {
        self.require_a_bounded(t)?;
        Ok(spectral_norm(&(&self.a_half * t * &self.a_half_pinv)))
    }

    /// Whether `A T = T* A` within the norm-scaled tolerance.
    pub fn is_a_selfadjoint(&self, t: &CMatrix) -> bool {
        let at = &self.a * t;
        let ta = t.adjoint() * &self.a;
        rel_eq(&at, &ta, self.tol.eq_tol)
    }

    /// Full classification of `T`; the nilpotency scans go up to `max_index`.
    pub fn classify(&self, t: &CMatrix, max_index: usize) -> Result<ClassificationReport> {
        self.check_dim(t)?;
        let max_index = max_index.max(1);
        let is_a_bounded = self.is_a_bounded(t);
        let is_in_b_a = self.is_in_b_a(t);
        let is_a_selfadjoint = self.is_a_selfadjoint(t);

        let at = &self.a * t;
        let herm = (&at + at.adjoint()).scale(0.5);
        let (evals, _) = hermitian_eigen_desc(&herm);
        let min_eval = evals.last().copied().unwrap_or(0.0);
        let is_a_positive = hermitian_deviation(&at) <= self.tol.eq_tol * fro_norm(&at).max(1.0)
            && min_eval >= -self.tol.eq_tol * fro_norm(&at).max(1.0);

        let sharp = self.sharp_adjoint(t)?;
        let is_a_normal = is_in_b_a && rel_eq(&(t * &sharp), &(&sharp * t), self.tol.eq_tol);

        let u_iso = rel_eq(&(t.adjoint() * &self.a * t), &self.a, self.tol.eq_tol);
        let sharp_iso = rel_eq(&(sharp.adjoint() * &self.a * &sharp), &self.a, self.tol.eq_tol);
        let is_a_unitary = is_in_b_a && u_iso && sharp_iso;

        Ok(ClassificationReport {
            is_a_bounded,
            is_in_b_a,
            is_a_selfadjoint,
            is_a_positive,
            is_a_normal,
            is_a_unitary,
            a_nilpotent_index: self.a_nilpotent_index(t, max_index),
            nilpotent_index: nilpotent_index(t, max_index),
        })
    }

    /// Least `k <= max_index` with `|A T^k|` below the scaled tolerance while
    /// `|A T^{k-1}|` stays above it. Evaluates the definition literally, so it
    /// does not require `T` to be in `B_{A^{1/2}}`.
    pub fn a_nilpotent_index(&self, t: &CMatrix, max_index: usize) -> Option<usize> {
        let norm_a = self.a_norm_op();
        let norm_t = spectral_norm(t);
        let mut prev_above = norm_a > 0.0;
        let mut power = CMatrix::identity(self.dim(), self.dim());
        for k in 1..=max_index {
            power = &power * t;
            let residual = spectral_norm(&(&self.a * &power));
            let budget = self.tol.eq_tol * norm_a.max(1.0) * norm_t.powi(k as i32).max(1.0);
            if residual <= budget {
                return prev_above.then_some(k);
            }
            prev_above = true;
        }
        None
    }

    /// Seeded `A`-unitary: a Haar unitary on the coordinate space of
    /// `R(A^{1/2})` conjugated back to `H`, extended by the identity on `N(A)`.
    ///
    /// Satisfies `U* A U = A` and `U N(A) <= N(A)` by construction.
    pub fn a_unitary(&self, seed: u64) -> CMatrix {
        let n = self.dim();
        let r = self.rank;
        if r == 0 {
            return CMatrix::identity(n, n);
        }
        let mut rng = derive_rng(seed, TAG_UNITARY, 0);
        let q = haar_unitary(&mut rng, r);
        let nb = self.null_basis();
        self.pullback_matrix() * q * self.embed_matrix() + &nb * nb.adjoint()
    }
}

/// Least `k <= max_index` with `T^k = 0` in the scaled sense.
pub fn nilpotent_index(t: &CMatrix, max_index: usize) -> Option<usize> {
    let norm_t = spectral_norm(t);
    let eq_tol = ToleranceConfig::default().eq_tol;
    let mut prev_above = true;
    for k in 1..=max_index {
        let residual = spectral_norm(&matrix_power(t, k));
        let budget = eq_tol * norm_t.powi(k as i32).max(1.0);
        if residual <= budget {
            return prev_above.then_some(k);
        }
        prev_above = true;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn re(v: f64) -> Complex64 {
        c(v, 0.0)
    }

    fn diag(entries: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_iterator(
            entries.len(),
            entries.iter().map(|&x| re(x)),
        ))
    }

    fn ctx(a: CMatrix) -> PsdContext {
        PsdContext::build(a, ToleranceConfig::default()).unwrap()
    }

    #[test]
    fn identity_context() {
        let ctx = ctx(CMatrix::identity(3, 3));
        assert_eq!(ctx.rank(), 3);
        assert!(rel_eq(ctx.projector(), &CMatrix::identity(3, 3), 1.0e-12));
        assert!(rel_eq(ctx.a_pinv(), &CMatrix::identity(3, 3), 1.0e-12));
    }

    #[test]
    fn rank_one_diagonal_context() {
        let a = diag(&[1.0, 0.0, 0.0]);
        let ctx = ctx(a.clone());
        assert_eq!(ctx.rank(), 1);
        assert!(rel_eq(ctx.projector(), &a, 1.0e-12));
        assert!(rel_eq(ctx.a_pinv(), &a, 1.0e-12));
    }

    #[test]
    fn two_by_two_context_matches_hand_eigendecomposition() {
        // A = [[2,1],[1,2]]: eigenvalues 3 and 1, inverse (1/3)[[2,-1],[-1,2]].
        let a = CMatrix::from_row_slice(2, 2, &[re(2.0), re(1.0), re(1.0), re(2.0)]);
        let ctx = ctx(a);
        assert_eq!(ctx.rank(), 2);
        assert!((ctx.eigenvalues()[0] - 3.0).abs() < 1.0e-12);
        assert!((ctx.eigenvalues()[1] - 1.0).abs() < 1.0e-12);
        let inv = CMatrix::from_row_slice(
            2,
            2,
            &[
                re(2.0 / 3.0),
                re(-1.0 / 3.0),
                re(-1.0 / 3.0),
                re(2.0 / 3.0),
            ],
        );
        assert!(rel_eq(ctx.a_pinv(), &inv, 1.0e-12));
    }

    #[test]
    fn pseudo_inverse_identities_hold() {
        let a = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(2.0),
                c(0.0, 1.0),
                re(0.0),
                c(0.0, -1.0),
                re(2.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
            ],
        );
        let ctx = ctx(a.clone());
        let p = ctx.projector();
        assert!(rel_eq(&(ctx.a_pinv() * &a), p, 1.0e-10));
        assert!(rel_eq(&(ctx.a_half_pinv() * ctx.a_half()), p, 1.0e-10));
        assert!(rel_eq(&(&a * p), &a, 1.0e-10));
        assert!(rel_eq(&(ctx.a_half() * p), ctx.a_half(), 1.0e-10));
        assert!(rel_eq(&(p * ctx.a_half()), ctx.a_half(), 1.0e-10));
        assert!(rel_eq(&(p * p), p, 1.0e-10));
        assert!(rel_eq(&p.adjoint(), p, 1.0e-10));
    }

    #[test]
    fn rejects_non_hermitian_and_indefinite() {
        let m = CMatrix::from_row_slice(2, 2, &[re(1.0), re(1.0), re(0.0), re(1.0)]);
        assert!(matches!(
            PsdContext::build(m, ToleranceConfig::default()),
            Err(Error::NotHermitian { .. })
        ));
        let m = diag(&[1.0, -0.5]);
        assert!(matches!(
            PsdContext::build(m, ToleranceConfig::default()),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn semi_inner_examples() {
        let ctx3 = ctx(CMatrix::identity(3, 3));
        let e1 = CVector::from_fn(3, |i, _| if i == 0 { re(1.0) } else { re(0.0) });
        assert!((ctx3.semi_inner(&e1, &e1).unwrap() - re(1.0)).norm() < 1.0e-12);

        // A = diag(1,0,0), x = (i, 1, 0): |x|_A = 1.
        let ctx_r1 = ctx(diag(&[1.0, 0.0, 0.0]));
        let x = CVector::from_vec(vec![c(0.0, 1.0), re(1.0), re(0.0)]);
        assert!((ctx_r1.semi_inner(&x, &x).unwrap() - re(1.0)).norm() < 1.0e-12);
        assert!((ctx_r1.a_norm(&x).unwrap() - 1.0).abs() < 1.0e-12);

        let a = CMatrix::from_row_slice(2, 2, &[re(2.0), re(1.0), re(1.0), re(2.0)]);
        let ctx2 = ctx(a);
        let e1 = CVector::from_vec(vec![re(1.0), re(0.0)]);
        let e2 = CVector::from_vec(vec![re(0.0), re(1.0)]);
        assert!((ctx2.semi_inner(&e1, &e2).unwrap() - re(1.0)).norm() < 1.0e-12);

        let bad = CVector::from_vec(vec![re(1.0)]);
        assert!(matches!(
            ctx2.semi_inner(&bad, &e2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sharp_adjoint_examples() {
        let ctx3 = ctx(CMatrix::identity(3, 3));
        let t = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(1.0),
                c(2.0, 1.0),
                re(0.0),
                re(0.0),
                re(3.0),
                c(0.0, -1.0),
                re(4.0),
                re(0.0),
                re(5.0),
            ],
        );
        assert!(rel_eq(&ctx3.sharp_adjoint(&t).unwrap(), &t.adjoint(), 1.0e-12));

        let ctx_r1 = ctx(diag(&[1.0, 0.0, 0.0]));
        let t = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(0.0),
                re(1.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(2.0),
            ],
        );
        assert!(ctx_r1.sharp_adjoint(&t).unwrap().norm() < 1.0e-12);

        let ctx_r2 = ctx(diag(&[1.0, 1.0, 0.0]));
        let t = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(0.0),
                re(1.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
            ],
        );
        let expected = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(0.0),
                re(0.0),
                re(0.0),
                re(1.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
            ],
        );
        assert!(rel_eq(&ctx_r2.sharp_adjoint(&t).unwrap(), &expected, 1.0e-12));
    }

    #[test]
    fn a_operator_norm_examples() {
        let jordan = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
        let ctx2 = ctx(CMatrix::identity(2, 2));
        assert!((ctx2.a_operator_norm(&jordan).unwrap() - 1.0).abs() < 1.0e-12);

        let ctx_r2 = ctx(diag(&[1.0, 1.0, 0.0]));
        let t = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(0.0),
                re(1.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
            ],
        );
        assert!((ctx_r2.a_operator_norm(&t).unwrap() - 1.0).abs() < 1.0e-12);

        let ctx_w = ctx(diag(&[4.0, 1.0]));
        assert!((ctx_w.a_operator_norm(&jordan).unwrap() - 2.0).abs() < 1.0e-12);
    }

    #[test]
    fn a_operator_norm_rejects_unbounded() {
        // T sends e2 in N(A) onto e1 outside N(A).
        let ctx_r1 = ctx(diag(&[1.0, 0.0, 0.0]));
        let t = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(0.0),
                re(1.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(2.0),
            ],
        );
        assert!(matches!(
            ctx_r1.a_operator_norm(&t),
            Err(Error::NotABounded { .. })
        ));
    }

    #[test]
    fn classify_a_nilpotent_but_not_nilpotent() {
        let ctx_r1 = ctx(diag(&[1.0, 0.0, 0.0]));
        let t = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(0.0),
                re(1.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(2.0),
            ],
        );
        let report = ctx_r1.classify(&t, 6).unwrap();
        assert_eq!(report.a_nilpotent_index, Some(2));
        assert_eq!(report.nilpotent_index, None);
        assert!(!report.is_a_bounded);
    }

    #[test]
    fn classify_nilpotent_with_smaller_a_index() {
        let ctx_m = ctx(diag(&[0.0, 2.0]));
        let t = CMatrix::from_row_slice(2, 2, &[re(0.0), re(3.0), re(0.0), re(0.0)]);
        let report = ctx_m.classify(&t, 4).unwrap();
        assert_eq!(report.nilpotent_index, Some(2));
        assert_eq!(report.a_nilpotent_index, Some(1));
    }

    #[test]
    fn classify_selfadjoint_diagonal() {
        let ctx2 = ctx(CMatrix::identity(2, 2));
        let t = diag(&[1.0, -1.0]);
        let report = ctx2.classify(&t, 4).unwrap();
        assert!(report.is_a_selfadjoint);
        assert!(report.is_a_normal);
        assert!(!report.is_a_positive);
        assert_eq!(report.a_nilpotent_index, None);
    }

    #[test]
    fn a_unitary_preserves_a_metric() {
        let a = diag(&[3.0, 1.0, 0.0]);
        let ctx_r2 = ctx(a.clone());
        for seed in [1u64, 2, 3] {
            let u = ctx_r2.a_unitary(seed);
            assert!(rel_eq(&(u.adjoint() * &a * &u), &a, 1.0e-9));
            let sharp = ctx_r2.sharp_adjoint(&u).unwrap();
            assert!(rel_eq(&(&sharp * &u), ctx_r2.projector(), 1.0e-9));
            assert!(ctx_r2.is_a_bounded(&u));
            let report = ctx_r2.classify(&u, 3).unwrap();
            assert!(report.is_a_unitary);
        }
        let ctx_i = ctx(CMatrix::identity(3, 3));
        let u = ctx_i.a_unitary(9);
        assert!(rel_eq(&(u.adjoint() * &u), &CMatrix::identity(3, 3), 1.0e-10));
    }

    #[test]
    fn a_unitary_norms_random_vectors() {
        let ctx_r2 = ctx(diag(&[1.0, 1.0, 0.0]));
        let u = ctx_r2.a_unitary(11);
        let mut rng = derive_rng(11, 99, 0);
        for _ in 0..100 {
            let x = matrix::gaussian_vector(&mut rng, 3);
            let lhs = ctx_r2.a_norm(&(&u * &x)).unwrap();
            let rhs = ctx_r2.a_norm(&x).unwrap();
            assert!((lhs - rhs).abs() <= 1.0e-9 * rhs.max(1.0));
        }
    }
}
