//! Point-cloud geometry: spread (polar moment), best-fit plane projection,
//! and 2D convex hull area.

use nalgebra::{Matrix3, Vector3};

/// Coordinate tolerance for collinearity / zero-loading decisions.
const GEOM_EPSILON: f64 = 1e-12;

/// Euclidean distance between two 3D points.
pub fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Mean squared distance of the points from their centroid.
///
/// Returns 0 for an empty set and for a single point.
pub fn polar_moment(points: &[[f64; 3]]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let n = points.len() as f64;
    let mut centroid = [0.0f64; 3];
    for p in points {
        for axis in 0..3 {
            centroid[axis] += p[axis];
        }
    }
    for c in &mut centroid {
        *c /= n;
    }
    let mut sum = 0.0;
    for p in points {
        let dx = p[0] - centroid[0];
        let dy = p[1] - centroid[1];
        let dz = p[2] - centroid[2];
        sum += dx * dx + dy * dy + dz * dz;
    }
    sum / n
}

/// Projects the points onto their two dominant principal axes.
///
/// The points are centered, the 3x3 covariance is eigen-decomposed, and the
/// two eigenvectors of largest eigenvalue become the plane basis. Axes are
/// ordered by descending eigenvalue; each axis's sign is fixed so its first
/// nonzero loading is positive, and exact eigenvalue ties fall back to
/// lexicographic order of the sign-fixed loadings. Exactly coplanar inputs
/// therefore project isometrically and deterministically.
pub fn pca_plane_projection(points: &[[f64; 3]]) -> Vec<[f64; 2]> {
    assert!(!points.is_empty(), "projection needs at least one point");
    let n = points.len() as f64;
    let mut centroid = Vector3::zeros();
    for p in points {
        centroid += Vector3::new(p[0], p[1], p[2]);
    }
    centroid /= n;

    let mut cov = Matrix3::zeros();
    for p in points {
        let d = Vector3::new(p[0], p[1], p[2]) - centroid;
        cov += d * d.transpose();
    }
    cov /= n;

    let eigen = cov.symmetric_eigen();
    let mut axes: Vec<(f64, Vector3<f64>)> = (0..3)
        .map(|k| (eigen.eigenvalues[k], fix_sign(eigen.eigenvectors.column(k).into_owned())))
        .collect();
    axes.sort_by(|(va, ea), (vb, eb)| {
        vb.total_cmp(va).then_with(|| {
            for axis in 0..3 {
                let ord = ea[axis].total_cmp(&eb[axis]);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let (u, v) = (axes[0].1, axes[1].1);

    points
        .iter()
        .map(|p| {
            let d = Vector3::new(p[0], p[1], p[2]) - centroid;
            [u.dot(&d), v.dot(&d)]
        })
        .collect()
}

fn fix_sign(mut v: Vector3<f64>) -> Vector3<f64> {
    for axis in 0..3 {
        if v[axis].abs() > GEOM_EPSILON {
            if v[axis] < 0.0 {
                v = -v;
            }
            break;
        }
    }
    v
}

/// Area of the 2D convex hull of the points.
///
/// Monotone-chain hull with strict-turn filtering (collinear points dropped
/// at tolerance 1e-12), then shoelace area. Fewer than three non-collinear
/// points give 0.
pub fn convex_hull_area(points2d: &[[f64; 2]]) -> f64 {
    let hull = convex_hull(points2d);
    if hull.len() < 3 {
        return 0.0;
    }
    let mut twice_area = 0.0;
    for i in 0..hull.len() {
        let [x1, y1] = hull[i];
        let [x2, y2] = hull[(i + 1) % hull.len()];
        twice_area += x1 * y2 - x2 * y1;
    }
    twice_area.abs() / 2.0
}

/// Convex hull vertices in counterclockwise order (monotone chain).
pub fn convex_hull(points2d: &[[f64; 2]]) -> Vec<[f64; 2]> {
    // Negative zeros are normalized so total_cmp matches numeric order and
    // coincident points deduplicate regardless of zero sign.
    let mut pts: Vec<[f64; 2]> = points2d.iter().map(|p| [p[0] + 0.0, p[1] + 0.0]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }

    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| -> f64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };

    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= GEOM_EPSILON
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= GEOM_EPSILON
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
