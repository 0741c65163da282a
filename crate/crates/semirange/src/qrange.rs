//! The `A`-`q`-numerical range engine.
//!
//! `W_{q,A}(T)` is the set of `<Tx, y>_A` over pairs with unit `A`-seminorm
//! and `<x, y>_A = q`. For `dim R(A) >= 3` it equals the union over unit
//! `x` of closed disks centered at `q <Tx, x>_A` with radius
//! `sqrt(1 - |q|^2) alpha(x)`, `alpha(x)^2 = |Tx|_A^2 - |<Tx, x>_A|^2`.
//! The engine samples the unit `A`-sphere through the coordinate space of
//! `R(A^{1/2})`, evaluates all disk data with the semi-inner product itself,
//! and sharpens the support function by a per-angle directional ascent. For
//! `|q| = 1` the range collapses to `q W_A(T)`; for `dim R(A) = 2` the disk
//! formula is not available and the engine falls back to direct pair
//! sampling; for `dim R(A) = 1` and `|q| < 1` the range is empty.
//!
//! The radius `w_{q,A}(T)` is maximized as
//! `|q| |<Tx, x>_A| + sqrt(1 - |q|^2) alpha(x)` (the supremum over the
//! admissible second vectors is closed form) by seeded multi-start
//! coordinate-wise trigonometric line search on the coordinate sphere.
//!
//! Sampling, disk evaluation and optimizer restarts parallelize over
//! per-index seeds; reductions are max/union, so results are identical for
//! identical `(seed, n_x, n_starts)` regardless of execution order.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::geometry::{
    angle_grid, convex_hull, envelope_boundary, hausdorff_distance, point_hull_distance,
    support_function, support_touch_points, Disk,
};
use crate::matrix::{derive_rng, random_unit_vector, CMatrix, CVector};
use crate::reduction::build_tilde;
use crate::report::CheckRecord;
use crate::semihilbert::PsdContext;
use crate::{Error, Result};

const TAG_SPHERE: u64 = 0x51_01;
const TAG_ORACLE: u64 = 0x51_02;
const TAG_ENRICH: u64 = 0x51_03;
const TAG_RADIUS_SCAN: u64 = 0x51_04;
const TAG_RADIUS_START: u64 = 0x51_05;
const TAG_PAIR: u64 = 0x51_06;

const UNIT_MODULUS_TOL: f64 = 1.0e-12;
const ENRICH_PRESCAN: usize = 256;
const ENRICH_PASSES: usize = 3;
const PAIR_PHASE_GRID: usize = 32;
const RADIUS_PRESCAN: usize = 1024;
const HERMITIAN_START_ANGLES: usize = 8;

/// Complex parameter of the range, constrained to the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QValue(Complex64);

impl QValue {
    pub fn new(q: Complex64) -> Result<Self> {
        let modulus = q.norm();
        if modulus > 1.0 + UNIT_MODULUS_TOL {
            return Err(Error::QOutOfDisk { modulus });
        }
        Ok(Self(q))
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm().min(1.0)
    }

    /// `sqrt(1 - |q|^2)`, clamped against round-off.
    pub fn beta(&self) -> f64 {
        (1.0 - self.modulus().powi(2)).max(0.0).sqrt()
    }

    /// Whether `|q| = 1` up to round-off, the collapse regime.
    pub fn is_unit_modulus(&self) -> bool {
        (self.0.norm() - 1.0).abs() <= UNIT_MODULUS_TOL
    }
}

/// Sampling and optimizer budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    /// Base vectors drawn on the unit sphere of the coordinate space.
    pub n_x: usize,
    /// Size of the uniform support-function angle grid.
    pub n_angles: usize,
    /// Optimizer restarts for the radius.
    pub n_starts: usize,
    /// Max ascent passes per restart.
    pub max_iter: usize,
    /// Master seed; every derived generator is a pure function of it.
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            n_x: 2048,
            n_angles: 720,
            n_starts: 32,
            max_iter: 500,
            seed: 0,
        }
    }
}

/// How a [`RangeEstimate`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeMethod {
    /// Union of disks over sampled unit vectors (`dim R(A) >= 3`).
    DiskUnion,
    /// Direct pair sampling, the `dim R(A) = 2` fallback.
    PairSampling,
    /// `|q| = 1`: the range is `q W_A(T)` with all radii zero.
    QCollapse,
    /// Empty range (`dim R(A) = 1` with `|q| < 1`), when materialized.
    Empty,
}

impl std::fmt::Display for RangeMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RangeMethod::DiskUnion => "disk_union",
            RangeMethod::PairSampling => "pair_sampling",
            RangeMethod::QCollapse => "q_collapse",
            RangeMethod::Empty => "empty",
        };
        f.write_str(s)
    }
}

/// Sampled representation of `W_{q,A}(T)`.
#[derive(Debug, Clone)]
pub struct RangeEstimate {
    pub disks: Vec<Disk>,
    /// `(theta, h(theta))` on the uniform grid; the pointwise max over disks.
    pub support: Vec<(f64, f64)>,
    /// Envelope of consecutive support lines, a closed outer polyline.
    pub boundary: Vec<Complex64>,
    /// Convex hull of the support-achieving points, an inner polygon.
    pub hull: Vec<Complex64>,
    /// `max(|center| + radius)` over the disks.
    pub radius_est: f64,
    pub method: RangeMethod,
}

impl RangeEstimate {
    /// Support values without the angles.
    pub fn support_values(&self) -> Vec<f64> {
        self.support.iter().map(|&(_, h)| h).collect()
    }

    fn from_disks(disks: Vec<Disk>, n_angles: usize, method: RangeMethod) -> Self {
        let angles = angle_grid(n_angles);
        let support = support_function(&disks, &angles);
        let boundary = envelope_boundary(&angles, &support);
        let hull = convex_hull(&support_touch_points(&disks, &angles));
        let radius_est = disks.iter().map(Disk::outer_radius).fold(0.0, f64::max);
        RangeEstimate {
            disks,
            support: angles.into_iter().zip(support).collect(),
            boundary,
            hull,
            radius_est,
            method,
        }
    }

    /// An explicitly empty estimate (`dim R(A) = 1`, `|q| < 1`).
    pub fn empty(n_angles: usize) -> Self {
        RangeEstimate {
            disks: Vec::new(),
            support: angle_grid(n_angles)
                .into_iter()
                .map(|t| (t, f64::NEG_INFINITY))
                .collect(),
            boundary: Vec::new(),
            hull: Vec::new(),
            radius_est: 0.0,
            method: RangeMethod::Empty,
        }
    }
}

/// One admissible pair with its range value.
#[derive(Debug, Clone)]
pub struct PairSample {
    pub x: CVector,
    pub z: CVector,
    pub phase: f64,
    pub value: Complex64,
}

/// Evaluates disk data `(center, radius)` with the semi-inner product itself;
/// coordinates only parametrize the unit `A`-sphere.
struct RangeKernel {
    a: CMatrix,
    t: CMatrix,
    pullback: CMatrix,
    q: Complex64,
    beta: f64,
}

impl RangeKernel {
    fn new(ctx: &PsdContext, t: &CMatrix, q: QValue) -> Self {
        Self {
            a: ctx.a().clone(),
            t: t.clone(),
            pullback: ctx.pullback_matrix(),
            q: q.value(),
            beta: q.beta(),
        }
    }

    fn r(&self) -> usize {
        self.pullback.ncols()
    }

    fn lift(&self, coords: &CVector) -> CVector {
        &self.pullback * coords
    }

    /// `(x, Tx, <Tx,x>_A, alpha(x))` for the unit vector with the given
    /// coordinates.
    fn evaluate(&self, coords: &CVector) -> (CVector, CVector, Complex64, f64) {
        let x = self.lift(coords);
        let tx = &self.t * &x;
        let atx = &self.a * &tx;
        let m = x.dotc(&atx);
        let norm_sq = tx.dotc(&atx).re.max(0.0);
        let alpha = (norm_sq - m.norm_sqr()).max(0.0).sqrt();
        (x, tx, m, alpha)
    }

    fn disk(&self, coords: &CVector) -> Disk {
        let (_, _, m, alpha) = self.evaluate(coords);
        Disk::new(self.q * m, self.beta * alpha)
    }

    /// Radius objective `|q| |<Tx,x>_A| + beta alpha(x)`.
    fn radius_objective(&self, coords: &CVector) -> f64 {
        let (_, _, m, alpha) = self.evaluate(coords);
        self.q.norm() * m.norm() + self.beta * alpha
    }

    /// Directional support objective `Re(e^{-i theta} q <Tx,x>_A) + beta alpha`.
    fn support_objective(&self, theta: f64, coords: &CVector) -> f64 {
        let (_, _, m, alpha) = self.evaluate(coords);
        (Complex64::from_polar(1.0, -theta) * self.q * m).re + self.beta * alpha
    }
}

/// Golden-section refinement of a maximum inside `[a, b]`.
fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let ratio = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Coordinate-wise trigonometric line search on the unit sphere of `C^r`.
///
/// Walks great circles spanned by the current point and each coordinate
/// direction (real and imaginary), one gridded golden-section line search per
/// direction, until a full pass improves by less than `tol`.
fn sphere_ascent(
    objective: &dyn Fn(&CVector) -> f64,
    start: &CVector,
    max_passes: usize,
    tol: f64,
) -> (CVector, f64) {
    const GRID: usize = 17;
    let r = start.len();
    let mut xi = start.clone();
    let norm = xi.norm();
    if norm > 0.0 {
        xi = xi.unscale(norm);
    }
    let mut best = objective(&xi);
    for _ in 0..max_passes.max(1) {
        let before = best;
        for j in 0..r {
            for imaginary in [false, true] {
                let unit = if imaginary {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(1.0, 0.0)
                };
                let mut u = CVector::zeros(r);
                u[j] = unit;
                let overlap = xi.dotc(&u);
                let d = &u - &xi * overlap;
                let dn = d.norm();
                if dn < 1.0e-9 {
                    continue;
                }
                let d = d.unscale(dn);
                let point_at = |t: f64| xi.scale(t.cos()) + d.scale(t.sin());
                let g = |t: f64| objective(&point_at(t));
                let half = std::f64::consts::FRAC_PI_2;
                let mut best_t = 0.0;
                let mut best_g = best;
                for k in 0..GRID {
                    let t = -half + (2.0 * half) * k as f64 / (GRID - 1) as f64;
                    let v = g(t);
                    if v > best_g {
                        best_g = v;
                        best_t = t;
                    }
                }
                let window = 2.0 * half / (GRID - 1) as f64;
                let t_star = golden_max(&g, best_t - window, best_t + window, 32);
                let (t_star, v_star) = if g(t_star) >= best_g {
                    (t_star, g(t_star))
                } else {
                    (best_t, best_g)
                };
                if v_star > best {
                    best = v_star;
                    xi = point_at(t_star);
                    let n = xi.norm();
                    if n > 0.0 {
                        xi = xi.unscale(n);
                    }
                }
            }
        }
        if best - before < tol {
            break;
        }
    }
    (xi, best)
}

fn unit_coords(seed: u64, tag: u64, index: u64, r: usize) -> CVector {
    let mut rng = derive_rng(seed, tag, index);
    random_unit_vector(&mut rng, r)
}

fn require_unit_a_norm(ctx: &PsdContext, x: &CVector) -> Result<()> {
    let norm = ctx.a_norm(x)?;
    if (norm - 1.0).abs() > 1.0e-6 {
        return Err(Error::NotUnitANorm { norm });
    }
    Ok(())
}

/// Completes a unit vector `x` to a pair: returns `(y, z)` with
/// `<x, z>_A = 0`, `|z|_A = 1` and `y = conj(q) x + sqrt(1 - |q|^2) z`, so
/// that `|y|_A = 1` and `<x, y>_A = q`. Needs `rank(A) >= 2`; for rank one
/// no such `z` exists.
pub fn complete_pair(
    ctx: &PsdContext,
    x: &CVector,
    q: QValue,
    seed: u64,
) -> Result<(CVector, CVector)> {
    require_unit_a_norm(ctx, x)?;
    let r = ctx.rank();
    if r < 2 {
        return Err(Error::RankTooSmall { rank: r, required: 2 });
    }
    let embed = ctx.embed_matrix();
    let pullback = ctx.pullback_matrix();
    let xi = &embed * x;
    let xi_norm_sq = xi.norm_squared();
    let mut index = 0u64;
    let zeta = loop {
        let cand = unit_coords(seed, TAG_PAIR, index, r);
        let overlap = xi.dotc(&cand) / Complex64::new(xi_norm_sq, 0.0);
        let ortho = &cand - &xi * overlap;
        let n = ortho.norm();
        if n > 1.0e-8 {
            break ortho.unscale(n);
        }
        index += 1;
    };
    let z = &pullback * zeta;
    let y = x * q.value().conj() + z.scale(q.beta());
    Ok((y, z))
}

/// `alpha(x) = sqrt(max(0, |Tx|_A^2 - |<Tx, x>_A|^2))` for unit `x`.
pub fn alpha(ctx: &PsdContext, t: &CMatrix, x: &CVector) -> Result<f64> {
    require_unit_a_norm(ctx, x)?;
    let tx = t * x;
    let m = ctx.semi_inner(&tx, x)?;
    let norm = ctx.a_norm(&tx)?;
    Ok((norm * norm - m.norm_sqr()).max(0.0).sqrt())
}

/// Per-angle directional sharpening: ascends the support objective from the
/// best of a fixed prescan (warm-started from the previous angle) and emits
/// the resulting disk. Independent of `n_x`, so growing the base sample can
/// only grow the union.
fn enrichment_disks(kernel: &RangeKernel, cfg: &SampleConfig, opt_tol: f64) -> Vec<Disk> {
    let r = kernel.r();
    if r < 2 {
        return Vec::new();
    }
    let prescan: Vec<(CVector, Complex64, f64)> = (0..ENRICH_PRESCAN)
        .into_par_iter()
        .map(|i| {
            let coords = unit_coords(cfg.seed, TAG_ENRICH, i as u64, r);
            let (_, _, m, alpha) = kernel.evaluate(&coords);
            (coords, m, alpha)
        })
        .collect();
    let angles = angle_grid(cfg.n_angles);
    let mut disks = Vec::with_capacity(angles.len());
    let mut warm: Option<(CVector, Complex64, f64)> = None;
    for &theta in &angles {
        let dir = Complex64::from_polar(1.0, -theta) * kernel.q;
        let score = |m: Complex64, alpha: f64| (dir * m).re + kernel.beta * alpha;
        let mut start = &prescan[0].0;
        let mut start_val = score(prescan[0].1, prescan[0].2);
        for (coords, m, alpha) in prescan.iter().skip(1) {
            let v = score(*m, *alpha);
            if v > start_val {
                start_val = v;
                start = coords;
            }
        }
        let mut start = start.clone();
        if let Some((w, wm, wa)) = &warm {
            if score(*wm, *wa) > start_val {
                start = w.clone();
            }
        }
        let objective = |coords: &CVector| kernel.support_objective(theta, coords);
        let (xi, _) = sphere_ascent(&objective, &start, ENRICH_PASSES, opt_tol);
        let (_, _, m, alpha) = kernel.evaluate(&xi);
        disks.push(Disk::new(kernel.q * m, kernel.beta * alpha));
        warm = Some((xi, m, alpha));
    }
    disks
}

/// Computes the range estimate, dispatching on `rank(A)` and `|q|`.
pub fn range_disk_union(
    ctx: &PsdContext,
    t: &CMatrix,
    q: QValue,
    cfg: &SampleConfig,
) -> Result<RangeEstimate> {
    ctx.require_a_bounded(t)?;
    let r = ctx.rank();
    if r == 0 {
        return Err(Error::RankTooSmall { rank: 0, required: 1 });
    }
    let kernel = RangeKernel::new(ctx, t, q);
    let opt_tol = ctx.tolerances().opt_tol;

    if q.is_unit_modulus() {
        // |q| = 1: the range is q W_A(T), sampled with zero radii.
        let mut disks: Vec<Disk> = (0..cfg.n_x)
            .into_par_iter()
            .map(|i| {
                let coords = unit_coords(cfg.seed, TAG_SPHERE, i as u64, r);
                kernel.disk(&coords)
            })
            .collect();
        disks.extend(enrichment_disks(&kernel, cfg, opt_tol));
        return Ok(RangeEstimate::from_disks(
            disks,
            cfg.n_angles,
            RangeMethod::QCollapse,
        ));
    }
    if r == 1 {
        return Err(Error::EmptyRange);
    }
    if r == 2 {
        // The disk formula needs dim R(A) >= 3; sample pairs directly. For
        // rank two the admissible z for a given x is unique up to phase, so
        // the reachable values per x form the full circle around q<Tx,x>_A.
        let phases = angle_grid(PAIR_PHASE_GRID);
        let mut disks: Vec<Disk> = (0..cfg.n_x)
            .into_par_iter()
            .flat_map_iter(|i| {
                let coords = unit_coords(cfg.seed, TAG_SPHERE, i as u64, r);
                let (_, _, m, alpha) = kernel.evaluate(&coords);
                let center = kernel.q * m;
                let radius = kernel.beta * alpha;
                phases
                    .iter()
                    .map(|&phi| Disk::point(center + Complex64::from_polar(radius, phi)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let n_angles = cfg.n_angles;
        for (k, d) in enrichment_disks(&kernel, cfg, opt_tol).into_iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n_angles as f64;
            disks.push(Disk::point(d.touch_point(theta)));
        }
        return Ok(RangeEstimate::from_disks(
            disks,
            cfg.n_angles,
            RangeMethod::PairSampling,
        ));
    }

    let mut disks: Vec<Disk> = (0..cfg.n_x)
        .into_par_iter()
        .map(|i| {
            let coords = unit_coords(cfg.seed, TAG_SPHERE, i as u64, r);
            kernel.disk(&coords)
        })
        .collect();
    disks.extend(enrichment_disks(&kernel, cfg, opt_tol));
    Ok(RangeEstimate::from_disks(
        disks,
        cfg.n_angles,
        RangeMethod::DiskUnion,
    ))
}

/// `w_{q,A}(T)` by multi-start derivative-free ascent of
/// `|q| |<Tx,x>_A| + sqrt(1 - |q|^2) alpha(x)` on the unit `A`-sphere.
///
/// Starts combine the best of a seeded prescan, eigenvectors of Hermitian
/// parts of rotated reduced matrices, and fresh random points. The returned
/// value is attained at a sampled point, hence a certified lower witness of
/// the supremum and at most `|T|_A` up to round-off.
pub fn q_radius(ctx: &PsdContext, t: &CMatrix, q: QValue, cfg: &SampleConfig) -> Result<f64> {
    ctx.require_a_bounded(t)?;
    let r = ctx.rank();
    if r == 0 || (r < 2 && !q.is_unit_modulus()) {
        return Err(Error::RankTooSmall {
            rank: r,
            required: if q.is_unit_modulus() { 1 } else { 2 },
        });
    }
    let kernel = RangeKernel::new(ctx, t, q);
    let opt_tol = ctx.tolerances().opt_tol;
    let objective = |coords: &CVector| kernel.radius_objective(coords);

    // Seeded prescan; the best samples double as ascent starts.
    let prescan: Vec<(f64, CVector)> = (0..RADIUS_PRESCAN)
        .into_par_iter()
        .map(|i| {
            let coords = unit_coords(cfg.seed, TAG_RADIUS_SCAN, i as u64, r);
            (objective(&coords), coords)
        })
        .collect();
    let mut ranked: Vec<&(f64, CVector)> = prescan.iter().collect();
    ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let sampled_floor = ranked.first().map(|p| p.0).unwrap_or(0.0);

    let n_starts = cfg.n_starts.max(1);
    let mut starts: Vec<CVector> = ranked
        .iter()
        .take(n_starts / 2)
        .map(|p| p.1.clone())
        .collect();
    // Eigenvector starts: maximizers of Re(e^{-i phi} <T~ xi, xi>).
    let tilde = build_tilde(ctx, t)?;
    for k in 0..HERMITIAN_START_ANGLES {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / HERMITIAN_START_ANGLES as f64;
        let rotated = tilde.matrix() * Complex64::from_polar(1.0, -phi);
        let herm = (&rotated + rotated.adjoint()).scale(0.5);
        let (_, vectors) = crate::matrix::hermitian_eigen_desc(&herm);
        starts.push(vectors.column(0).into_owned());
    }
    let mut extra = 0u64;
    while starts.len() < n_starts {
        starts.push(unit_coords(cfg.seed, TAG_RADIUS_START, extra, r));
        extra += 1;
    }

    let best = starts
        .par_iter()
        .map(|s| sphere_ascent(&objective, s, cfg.max_iter, opt_tol).1)
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(best.max(sampled_floor))
}

/// Brute-force samples of `q <Tx,x>_A + sqrt(1-|q|^2) e^{i phase} <Tx,z>_A`
/// over seeded `A`-orthonormal pairs with uniform phases.
///
/// Half of the draws take `z` uniformly in the `A`-orthogonal complement of
/// `x`; the other half align `z` with `Tx - <Tx,x>_A x`, the direction
/// attaining the inner supremum, so the sample cloud reaches the boundary of
/// each per-`x` value set.
pub fn oracle_pair_samples(
    ctx: &PsdContext,
    t: &CMatrix,
    q: QValue,
    n: usize,
    seed: u64,
) -> Result<Vec<PairSample>> {
    ctx.require_a_bounded(t)?;
    let r = ctx.rank();
    if r < 2 {
        return Err(Error::RankTooSmall { rank: r, required: 2 });
    }
    let kernel = RangeKernel::new(ctx, t, q);
    let embed = ctx.embed_matrix();
    let samples: Vec<PairSample> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = derive_rng(seed, TAG_ORACLE, i as u64);
            let coords = random_unit_vector(&mut rng, r);
            let (x, tx, m, alpha) = kernel.evaluate(&coords);
            let aligned = i % 2 == 0 && alpha > 1.0e-12;
            let z = if aligned {
                let z0 = &tx - &x * m;
                let zn = (&embed * &z0).norm();
                z0.unscale(zn)
            } else {
                loop {
                    let cand = random_unit_vector(&mut rng, r);
                    let overlap = coords.dotc(&cand);
                    let ortho = &cand - &coords * overlap;
                    let n = ortho.norm();
                    if n > 1.0e-8 {
                        break kernel.lift(&ortho.unscale(n));
                    }
                }
            };
            let phase: f64 = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
            // <Tx, z>_A = z* A Tx, with A applied once
            let inner = (&kernel.a * &z).dotc(&tx);
            let value = kernel.q * m + Complex64::from_polar(kernel.beta, phase) * inner;
            PairSample { x, z, phase, value }
        })
        .collect();
    Ok(samples)
}

/// Spectral and reduction inclusion checks for one `(A, T, q)` triple.
///
/// (a) `q eig(T~)` lies in the hull; (b) the scaled `W_A(T)` hull lies in the
/// hull; (c) the hull matches the range of the reduced matrix computed with
/// the identity-weight machinery, Hausdorff-close at the geometric budget.
pub fn verify_inclusions(
    ctx: &PsdContext,
    t: &CMatrix,
    q: QValue,
    cfg: &SampleConfig,
) -> Result<Vec<CheckRecord>> {
    let est = range_disk_union(ctx, t, q, cfg)?;
    let tilde = build_tilde(ctx, t)?;
    let norm = ctx.a_operator_norm(t)?;
    let budget = ctx.tolerances().geo_tol * norm + 1.0e-12;
    let mut records = Vec::new();

    let eigs = crate::matrix::general_eigenvalues(tilde.matrix());
    let worst_eig = eigs
        .iter()
        .map(|&l| point_hull_distance(q.value() * l, &est.hull))
        .fold(0.0, f64::max);
    records.push(CheckRecord::measured(
        "spectral_inclusion_point",
        "q-scaled reduced eigenvalues lie in the range hull",
        worst_eig,
        budget,
    ));

    let w_a = range_disk_union(ctx, t, QValue::real(1.0)?, cfg)?;
    let worst_wa = w_a
        .hull
        .iter()
        .map(|&p| point_hull_distance(q.value() * p, &est.hull))
        .fold(0.0, f64::max);
    records.push(CheckRecord::measured(
        "scaled_range_inclusion",
        "q-scaled A-numerical range lies in the range hull",
        worst_wa,
        budget,
    ));

    let ctx_reduced = PsdContext::identity(tilde.r(), *ctx.tolerances());
    let est_reduced = range_disk_union(&ctx_reduced, tilde.matrix(), q, cfg)?;
    let hd = hausdorff_distance(&est.hull, &est_reduced.hull);
    records.push(CheckRecord::measured(
        "reduction_range_equality",
        "range hull equals the reduced-operator range hull",
        hd,
        budget,
    ));
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semihilbert::ToleranceConfig;

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
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

    fn test_cfg() -> SampleConfig {
        SampleConfig {
            n_x: 256,
            n_angles: 180,
            n_starts: 12,
            max_iter: 200,
            seed: 1,
        }
    }

    fn e(n: usize, k: usize) -> CVector {
        CVector::from_fn(n, |i, _| if i == k { re(1.0) } else { re(0.0) })
    }

    #[test]
    fn complete_pair_orthonormal_relations() {
        let ctx_i = ctx(CMatrix::identity(3, 3));
        let x = e(3, 0);
        let q = QValue::real(0.0).unwrap();
        let (y, z) = complete_pair(&ctx_i, &x, q, 5).unwrap();
        assert!(ctx_i.semi_inner(&x, &y).unwrap().norm() < 1.0e-10);
        assert!((ctx_i.a_norm(&z).unwrap() - 1.0).abs() < 1.0e-10);
        assert!((ctx_i.a_norm(&y).unwrap() - 1.0).abs() < 1.0e-10);

        let ctx_r2 = ctx(diag(&[1.0, 1.0, 0.0]));
        let q = QValue::real(0.6).unwrap();
        let (y, z) = complete_pair(&ctx_r2, &x, q, 5).unwrap();
        assert!((ctx_r2.semi_inner(&x, &y).unwrap() - re(0.6)).norm() < 1.0e-10);
        assert!((ctx_r2.a_norm(&y).unwrap() - 1.0).abs() < 1.0e-10);
        assert!(ctx_r2.semi_inner(&x, &z).unwrap().norm() < 1.0e-10);
        // y = conj(q) x + sqrt(1-q^2) z with the returned z
        let rebuilt = &x * re(0.6) + z.scale(0.8);
        assert!((y - rebuilt).norm() < 1.0e-10);
    }

    #[test]
    fn complete_pair_explicit_coefficients() {
        // x = e1, z = e2 under A = diag(1,1,0), q = 0.6: y = (0.6, 0.8, 0).
        let q = QValue::real(0.6).unwrap();
        let x = e(3, 0);
        let z = e(3, 1);
        let y = &x * q.value().conj() + z.scale(q.beta());
        let expected = CVector::from_vec(vec![re(0.6), re(0.8), re(0.0)]);
        assert!((y - expected).norm() < 1.0e-12);
    }

    #[test]
    fn complete_pair_rank_one_fails() {
        let ctx_r1 = ctx(diag(&[1.0, 0.0, 0.0]));
        let x = CVector::from_vec(vec![Complex64::new(0.0, 1.0), re(1.0), re(0.0)]);
        assert!((ctx_r1.a_norm(&x).unwrap() - 1.0).abs() < 1.0e-12);
        let q = QValue::real(0.5).unwrap();
        assert!(matches!(
            complete_pair(&ctx_r1, &x, q, 1),
            Err(Error::RankTooSmall { .. })
        ));
    }

    #[test]
    fn alpha_examples() {
        let ctx_i = ctx(CMatrix::identity(2, 2));
        let x = e(2, 0);
        assert!(alpha(&ctx_i, &CMatrix::identity(2, 2), &x).unwrap() < 1.0e-12);

        let jordan = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
        assert!((alpha(&ctx_i, &jordan, &e(2, 1)).unwrap() - 1.0).abs() < 1.0e-12);

        let t = diag(&[1.0, -1.0]);
        let x = CVector::from_vec(vec![re(1.0 / 2f64.sqrt()), re(1.0 / 2f64.sqrt())]);
        assert!((alpha(&ctx_i, &t, &x).unwrap() - 1.0).abs() < 1.0e-12);

        let bad = CVector::from_vec(vec![re(2.0), re(0.0)]);
        assert!(matches!(
            alpha(&ctx_i, &t, &bad),
            Err(Error::NotUnitANorm { .. })
        ));
    }

    #[test]
    fn identity_operator_collapses_to_a_point() {
        let ctx_i = ctx(CMatrix::identity(3, 3));
        let q = QValue::real(0.5).unwrap();
        let est = range_disk_union(&ctx_i, &CMatrix::identity(3, 3), q, &test_cfg()).unwrap();
        assert_eq!(est.method, RangeMethod::DiskUnion);
        assert!((est.radius_est - 0.5).abs() < 1.0e-9);
        for p in &est.hull {
            assert!((p - re(0.5)).norm() < 1.0e-9);
        }
    }

    #[test]
    fn rank_two_selfadjoint_gives_elliptic_hull() {
        let ctx_i = ctx(CMatrix::identity(2, 2));
        let q = QValue::real(0.5).unwrap();
        let est = range_disk_union(&ctx_i, &diag(&[1.0, -1.0]), q, &test_cfg()).unwrap();
        assert_eq!(est.method, RangeMethod::PairSampling);
        let h: Vec<f64> = est.support_values();
        // semi-axes 1 and sqrt(0.75)
        assert!((h[0] - 1.0).abs() < 2.0e-2);
        let quarter = est.support.len() / 4;
        assert!((h[quarter] - 0.75f64.sqrt()).abs() < 2.0e-2);
    }

    #[test]
    fn a_nilpotent_range_is_a_centered_disk() {
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
        let q = QValue::real(0.6).unwrap();
        let est = range_disk_union(&ctx_r2, &t, q, &test_cfg()).unwrap();
        let variation = crate::geometry::support_relative_variation(&est.support_values());
        assert!(variation < 5.0e-2, "variation {variation}");
        assert!(est.radius_est <= 0.9 + 1.0e-9);
    }

    #[test]
    fn rank_one_empty_range_and_collapse() {
        let ctx_r1 = ctx(diag(&[1.0, 0.0, 0.0]));
        let t = CMatrix::identity(3, 3);
        let q = QValue::real(0.3).unwrap();
        assert!(matches!(
            range_disk_union(&ctx_r1, &t, q, &test_cfg()),
            Err(Error::EmptyRange)
        ));
        let q1 = QValue::real(1.0).unwrap();
        let est = range_disk_union(&ctx_r1, &t, q1, &test_cfg()).unwrap();
        assert_eq!(est.method, RangeMethod::QCollapse);
        for p in &est.hull {
            assert!((p - re(1.0)).norm() < 1.0e-9);
        }
    }

    #[test]
    fn q_radius_matches_square_zero_formula() {
        let ctx_i = ctx(CMatrix::identity(2, 2));
        let jordan = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
        let cfg = test_cfg();
        let w = q_radius(&ctx_i, &jordan, QValue::real(0.6).unwrap(), &cfg).unwrap();
        assert!((w - 0.9).abs() < 1.0e-3, "w = {w}");
        let w1 = q_radius(&ctx_i, &jordan, QValue::real(1.0).unwrap(), &cfg).unwrap();
        assert!((w1 - 0.5).abs() < 1.0e-3, "w1 = {w1}");
        let ctx_3 = ctx(CMatrix::identity(3, 3));
        let w_id = q_radius(&ctx_3, &CMatrix::identity(3, 3), QValue::real(0.5).unwrap(), &cfg)
            .unwrap();
        assert!((w_id - 0.5).abs() < 1.0e-6, "w_id = {w_id}");
    }

    #[test]
    fn oracle_values_for_identity_and_jordan() {
        let ctx_i = ctx(CMatrix::identity(3, 3));
        let q = QValue::real(0.4).unwrap();
        let samples = oracle_pair_samples(&ctx_i, &CMatrix::identity(3, 3), q, 200, 3).unwrap();
        for s in &samples {
            assert!((s.value - re(0.4)).norm() < 1.0e-9);
        }

        let ctx_2 = ctx(CMatrix::identity(2, 2));
        let jordan = CMatrix::from_row_slice(2, 2, &[re(0.0), re(1.0), re(0.0), re(0.0)]);
        let samples =
            oracle_pair_samples(&ctx_2, &jordan, QValue::real(0.6).unwrap(), 20_000, 3).unwrap();
        let max = samples.iter().map(|s| s.value.norm()).fold(0.0, f64::max);
        assert!(max <= 0.9 + 1.0e-9);
        assert!(max >= 0.9 - 1.0e-2, "max = {max}");
    }

    #[test]
    fn oracle_pairs_are_a_orthonormal() {
        let ctx_r3 = ctx(diag(&[2.0, 1.0, 0.5, 0.0]));
        let t = CMatrix::from_fn(4, 4, |i, j| {
            if i < 3 && j < 3 {
                re(((i * 3 + j) as f64 * 0.17).sin())
            } else {
                re(0.0)
            }
        });
        let q = QValue::new(Complex64::new(0.3, 0.2)).unwrap();
        let samples = oracle_pair_samples(&ctx_r3, &t, q, 64, 9).unwrap();
        for s in &samples {
            assert!((ctx_r3.a_norm(&s.x).unwrap() - 1.0).abs() < 1.0e-9);
            assert!((ctx_r3.a_norm(&s.z).unwrap() - 1.0).abs() < 1.0e-9);
            assert!(ctx_r3.semi_inner(&s.x, &s.z).unwrap().norm() < 1.0e-9);
            let tx = &t * &s.x;
            let rebuilt = q.value() * ctx_r3.semi_inner(&tx, &s.x).unwrap()
                + Complex64::from_polar(q.beta(), s.phase) * ctx_r3.semi_inner(&tx, &s.z).unwrap();
            assert!((s.value - rebuilt).norm() < 1.0e-9);
        }
    }

    #[test]
    fn inclusion_checks_pass_for_identity_weight() {
        let ctx_i = ctx(CMatrix::identity(3, 3));
        let t = CMatrix::from_row_slice(
            3,
            3,
            &[
                re(0.4),
                re(0.3),
                re(0.0),
                re(0.0),
                re(-0.2),
                re(0.1),
                re(0.0),
                re(0.0),
                re(0.25),
            ],
        );
        let q = QValue::real(0.5).unwrap();
        let records = verify_inclusions(&ctx_i, &t, q, &test_cfg()).unwrap();
        assert_eq!(records.len(), 3);
        for rec in &records {
            assert!(rec.passed(), "{rec}");
        }
        // identity weight: the reduced comparison is a self-comparison
        assert!(records[2].measured < 1.0e-12);
    }

    #[test]
    fn constant_diagonal_hull_is_a_point() {
        let ctx_r3 = ctx(diag(&[2.0, 1.0, 0.5, 0.0]));
        let c = Complex64::new(0.3, -0.4);
        let t = CMatrix::from_diagonal(&CVector::from_element(4, c));
        let q = QValue::real(0.7).unwrap();
        let est = range_disk_union(&ctx_r3, &t, q, &test_cfg()).unwrap();
        for p in &est.hull {
            assert!((p - c * 0.7).norm() < 1.0e-8);
        }
    }

    #[test]
    fn growing_the_sample_grows_the_support() {
        let ctx_r3 = ctx(diag(&[2.0, 1.0, 0.5, 0.0]));
        let t = CMatrix::from_fn(4, 4, |i, j| {
            if i < 3 && j < 3 {
                Complex64::new(((i + 2 * j) as f64).sin(), ((i * j) as f64).cos())
            } else {
                re(0.0)
            }
        });
        let q = QValue::real(0.4).unwrap();
        let small = SampleConfig { n_x: 64, ..test_cfg() };
        let large = SampleConfig { n_x: 256, ..test_cfg() };
        let est_small = range_disk_union(&ctx_r3, &t, q, &small).unwrap();
        let est_large = range_disk_union(&ctx_r3, &t, q, &large).unwrap();
        for (s, l) in est_small.support.iter().zip(est_large.support.iter()) {
            assert!(s.1 <= l.1 + 1.0e-12);
        }
    }

    #[test]
    fn q_value_rejects_outside_disk() {
        assert!(QValue::real(1.2).is_err());
        assert!(QValue::new(Complex64::new(0.9, 0.5)).is_err());
        assert!(QValue::real(1.0).unwrap().is_unit_modulus());
        assert!((QValue::real(0.6).unwrap().beta() - 0.8).abs() < 1.0e-12);
    }
}
