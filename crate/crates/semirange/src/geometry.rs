//! Planar support-function machinery for unions of disks.
//!
//! A union of closed disks is determined by its support function
//! `h(theta) = max_j Re(e^{-i theta} c_j) + rho_j`. The boundary polyline is
//! reconstructed as the envelope of consecutive support lines (an outer
//! approximation), and the convex hull is the monotone chain over the
//! support-achieving points (an inner approximation). Hausdorff distances
//! between convex regions are evaluated on hull vertices, where the convex
//! distance function attains its maximum.

use num_complex::Complex64;

/// Closed disk `{ z : |z - center| <= radius }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Self {
            center,
            radius: radius.max(0.0),
        }
    }

    pub fn point(center: Complex64) -> Self {
        Self::new(center, 0.0)
    }

    /// Support value in direction `theta`.
    pub fn support(&self, theta: f64) -> f64 {
        self.center.re * theta.cos() + self.center.im * theta.sin() + self.radius
    }

    /// The boundary point extreme in direction `theta`.
    pub fn touch_point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// Farthest distance of the disk from the origin.
    pub fn outer_radius(&self) -> f64 {
        self.center.norm() + self.radius
    }
}

/// Uniform angle grid `theta_k = 2 pi k / m`.
pub fn angle_grid(m: usize) -> Vec<f64> {
    (0..m)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / m as f64)
        .collect()
}

/// Pointwise max of the disk supports on the grid.
pub fn support_function(disks: &[Disk], angles: &[f64]) -> Vec<f64> {
    angles
        .iter()
        .map(|&theta| {
            disks
                .iter()
                .map(|d| d.support(theta))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

/// Support-achieving boundary point per grid angle (first maximizer wins).
pub fn support_touch_points(disks: &[Disk], angles: &[f64]) -> Vec<Complex64> {
    angles
        .iter()
        .map(|&theta| {
            let mut best = f64::NEG_INFINITY;
            let mut point = Complex64::new(0.0, 0.0);
            for d in disks {
                let s = d.support(theta);
                if s > best {
                    best = s;
                    point = d.touch_point(theta);
                }
            }
            point
        })
        .collect()
}

/// Envelope of consecutive support lines: vertex `k` is the intersection of
/// the support lines at `theta_k` and `theta_{k+1}`. Circumscribes the set.
pub fn envelope_boundary(angles: &[f64], support: &[f64]) -> Vec<Complex64> {
    let m = angles.len();
    (0..m)
        .map(|k| {
            let j = (k + 1) % m;
            let (tk, tj) = (angles[k], angles[j]);
            let (hk, hj) = (support[k], support[j]);
            let det = (tj - tk).sin();
            Complex64::new(
                (hk * tj.sin() - hj * tk.sin()) / det,
                (hj * tk.cos() - hk * tj.cos()) / det,
            )
        })
        .collect()
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Monotone-chain convex hull, counter-clockwise without the closing point.
///
/// Degenerate inputs give a single point or a two-point segment.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points
        .iter()
        .copied()
        .filter(|p| p.re.is_finite() && p.im.is_finite())
        .collect();
    pts.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.is_empty() {
        // all points collinear-degenerate after pops; fall back to extremes
        return vec![pts[0], pts[pts.len() - 1]];
    }
    lower
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * ab.re + (p - a).im * ab.im) / len2).clamp(0.0, 1.0);
    (p - (a + ab.scale(t))).norm()
}

/// Distance from a point to the convex region spanned by `hull` (zero inside).
pub fn point_hull_distance(p: Complex64, hull: &[Complex64]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (p - hull[0]).norm(),
        2 => point_segment_distance(p, hull[0], hull[1]),
        n => {
            let inside = (0..n).all(|k| cross(hull[k], hull[(k + 1) % n], p) >= -1.0e-12);
            if inside {
                0.0
            } else {
                (0..n)
                    .map(|k| point_segment_distance(p, hull[k], hull[(k + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Hausdorff distance between two convex regions given by hull vertices.
pub fn hausdorff_distance(hull_a: &[Complex64], hull_b: &[Complex64]) -> f64 {
    let directed = |from: &[Complex64], to: &[Complex64]| -> f64 {
        from.iter()
            .map(|&p| point_hull_distance(p, to))
            .fold(0.0, f64::max)
    };
    directed(hull_a, hull_b).max(directed(hull_b, hull_a))
}

/// Relative variation `(max - min) / max(|max|, floor)` of a support profile;
/// small values certify a disk centered at the origin.
pub fn support_relative_variation(support: &[f64]) -> f64 {
    let hi = support.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = support.iter().copied().fold(f64::INFINITY, f64::min);
    (hi - lo) / hi.abs().max(1.0e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hull_of_square_with_interior_noise() {
        let pts = vec![
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 1.0),
            c(0.0, 1.0),
            c(0.5, 0.5),
            c(0.25, 0.75),
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        for corner in [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)] {
            assert!(hull.iter().any(|&p| (p - corner).norm() < 1.0e-14));
        }
        assert_eq!(point_hull_distance(c(0.5, 0.5), &hull), 0.0);
        assert!((point_hull_distance(c(2.0, 0.5), &hull) - 1.0).abs() < 1.0e-14);
    }

    #[test]
    fn hull_degenerate_cases() {
        let hull = convex_hull(&[c(1.0, 2.0), c(1.0, 2.0)]);
        assert_eq!(hull.len(), 1);
        let hull = convex_hull(&[c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(hull.len(), 2);
        assert!((point_hull_distance(c(1.0, 1.0), &hull) - 1.0).abs() < 1.0e-14);
    }

    #[test]
    fn single_disk_support_and_envelope() {
        let disks = vec![Disk::new(c(0.3, -0.2), 0.5)];
        let angles = angle_grid(360);
        let support = support_function(&disks, &angles);
        for (k, &theta) in angles.iter().enumerate() {
            let expected = 0.3 * theta.cos() - 0.2 * theta.sin() + 0.5;
            assert!((support[k] - expected).abs() < 1.0e-12);
        }
        let boundary = envelope_boundary(&angles, &support);
        for p in &boundary {
            // envelope circumscribes: radius in [rho, rho / cos(pi/m)]
            let r = (p - c(0.3, -0.2)).norm();
            assert!(r >= 0.5 - 1.0e-12 && r <= 0.5 / (std::f64::consts::PI / 360.0).cos() + 1.0e-9);
        }
    }

    #[test]
    fn point_set_envelope_collapses_to_the_point() {
        let disks = vec![Disk::point(c(0.5, 0.0))];
        let angles = angle_grid(64);
        let support = support_function(&disks, &angles);
        let boundary = envelope_boundary(&angles, &support);
        for p in boundary {
            assert!((p - c(0.5, 0.0)).norm() < 1.0e-10);
        }
    }

    #[test]
    fn hausdorff_of_shifted_hulls() {
        let a = convex_hull(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]);
        let b: Vec<Complex64> = a.iter().map(|&p| p + c(0.25, 0.0)).collect();
        assert!((hausdorff_distance(&a, &b) - 0.25).abs() < 1.0e-14);
        assert_eq!(hausdorff_distance(&a, &a), 0.0);
    }

    #[test]
    fn support_variation_detects_centering() {
        let angles = angle_grid(128);
        let centered = support_function(&[Disk::new(c(0.0, 0.0), 1.0)], &angles);
        assert!(support_relative_variation(&centered) < 1.0e-12);
        let offset = support_function(&[Disk::new(c(0.5, 0.0), 1.0)], &angles);
        assert!(support_relative_variation(&offset) > 0.3);
    }
}
