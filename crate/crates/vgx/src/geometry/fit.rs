//! Piecewise cubic Bézier fitting of digitized points, after the Graphics
//! Gems algorithm: chord-length parametrization, least-squares tangent
//! magnitudes, Newton-Raphson reparametrization, and recursive splitting at
//! the worst point when the error stays too large.

use super::{CubicBezier, GeomError, Point};

const MAX_NEWTON_ITERATIONS: usize = 4;

/// Fit a piecewise cubic to `points` so that the maximum squared distance
/// from any input point to the fit stays within `max_error`. Endpoints are
/// interpolated exactly.
pub fn fit_cubics_schneider(points: &[Point], max_error: f64) -> Result<Vec<CubicBezier>, GeomError> {
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    if !(max_error > 0.0) {
        return Err(GeomError::Domain {
            name: "max_error",
            value: max_error,
            domain: "(0, inf)",
        });
    }
    let points = dedup_consecutive(points);
    if points.len() < 2 {
        // All input points coincide; emit a degenerate stub.
        return Ok(vec![CubicBezier::from_line(points[0], points[0])]);
    }
    let tan1 = (points[1] - points[0]).normalize().unwrap();
    let n = points.len();
    let tan2 = (points[n - 2] - points[n - 1]).normalize().unwrap();
    let mut out = Vec::new();
    fit_cubic(&points, tan1, tan2, max_error, &mut out);
    Ok(out)
}

fn dedup_consecutive(points: &[Point]) -> Vec<Point> {
    let mut v: Vec<Point> = Vec::with_capacity(points.len());
    for &p in points {
        if v.last().map_or(true, |&q| q.dist(p) > 1e-12) {
            v.push(p);
        }
    }
    if v.is_empty() {
        v.push(points[0]);
    }
    v
}

fn fit_cubic(points: &[Point], tan1: Point, tan2: Point, max_error: f64, out: &mut Vec<CubicBezier>) {
    if points.len() == 2 {
        // Straight heuristic: controls a third of the way along the tangents.
        let dist = points[0].dist(points[1]) / 3.0;
        out.push(CubicBezier::new(
            points[0],
            points[0] + tan1.scale(dist),
            points[1] + tan2.scale(dist),
            points[1],
        ));
        return;
    }

    let mut u = chord_length_parametrize(points);
    let mut bez = generate_bezier(points, &u, tan1, tan2);
    let (mut err, mut split) = max_error_of(points, &bez, &u);
    if err < max_error {
        out.push(bez);
        return;
    }

    // Improve the parametrization before splitting; keep the best attempt.
    for _ in 0..MAX_NEWTON_ITERATIONS {
        u = reparametrize(points, &u, &bez);
        let refit = generate_bezier(points, &u, tan1, tan2);
        let (e, s) = max_error_of(points, &refit, &u);
        if e < err {
            err = e;
            split = s;
            bez = refit;
        }
        if err < max_error {
            out.push(bez);
            return;
        }
    }

    let center = center_tangent(points, split);
    fit_cubic(&points[..=split], tan1, center, max_error, out);
    fit_cubic(&points[split..], center.scale(-1.0), tan2, max_error, out);
}

fn center_tangent(points: &[Point], split: usize) -> Point {
    let v = points[split - 1] - points[split + 1];
    v.normalize().unwrap_or_else(|| {
        // Straddling points coincide; fall back to the perpendicular of the
        // incoming direction.
        let w = points[split - 1] - points[split];
        Point::raw(-w.y, w.x).normalize().unwrap_or(Point::raw(1.0, 0.0))
    })
}

fn chord_length_parametrize(points: &[Point]) -> Vec<f64> {
    let mut u = Vec::with_capacity(points.len());
    u.push(0.0);
    for i in 1..points.len() {
        u.push(u[i - 1] + points[i].dist(points[i - 1]));
    }
    let total = *u.last().unwrap();
    if total > 0.0 {
        for t in u.iter_mut() {
            *t /= total;
        }
    }
    u
}

fn b0(t: f64) -> f64 {
    (1.0 - t).powi(3)
}
fn b1(t: f64) -> f64 {
    3.0 * t * (1.0 - t).powi(2)
}
fn b2(t: f64) -> f64 {
    3.0 * t * t * (1.0 - t)
}
fn b3(t: f64) -> f64 {
    t.powi(3)
}

/// Least-squares solve for the two tangent magnitudes given fixed endpoints
/// and unit tangent directions.
fn generate_bezier(points: &[Point], u: &[f64], tan1: Point, tan2: Point) -> CubicBezier {
    let first = points[0];
    let last = *points.last().unwrap();
    let mut c = [[0.0f64; 2]; 2];
    let mut x = [0.0f64; 2];

    for (p, &t) in points.iter().zip(u) {
        let a0 = tan1.scale(b1(t));
        let a1 = tan2.scale(b2(t));
        c[0][0] += a0.dot(a0);
        c[0][1] += a0.dot(a1);
        c[1][1] += a1.dot(a1);
        let tmp = *p
            - (first.scale(b0(t) + b1(t)) + last.scale(b2(t) + b3(t)));
        x[0] += a0.dot(tmp);
        x[1] += a1.dot(tmp);
    }
    c[1][0] = c[0][1];

    let det_c = c[0][0] * c[1][1] - c[1][0] * c[0][1];
    let (mut alpha_l, mut alpha_r) = if det_c.abs() > 1e-12 {
        (
            (x[0] * c[1][1] - x[1] * c[0][1]) / det_c,
            (c[0][0] * x[1] - c[1][0] * x[0]) / det_c,
        )
    } else {
        // Underdetermined; fall back to the Wu/Barsky heuristic below.
        (0.0, 0.0)
    };

    let seg_length = first.dist(last);
    let epsilon = 1e-6 * seg_length;
    if alpha_l < epsilon || alpha_r < epsilon {
        let alpha = seg_length / 3.0;
        alpha_l = alpha;
        alpha_r = alpha;
    }

    CubicBezier::new(
        first,
        first + tan1.scale(alpha_l),
        last + tan2.scale(alpha_r),
        last,
    )
}

/// One Newton-Raphson step per point, improving each parameter value.
fn reparametrize(points: &[Point], u: &[f64], bez: &CubicBezier) -> Vec<f64> {
    points
        .iter()
        .zip(u)
        .map(|(&p, &t)| newton_raphson_root(bez, p, t))
        .collect()
}

fn newton_raphson_root(bez: &CubicBezier, p: Point, t: f64) -> f64 {
    let q = bez.eval_unchecked(t.clamp(0.0, 1.0));
    let q1 = bez.derivative(t);
    let q2 = bez.second_derivative(t);
    let numerator = (q - p).dot(q1);
    let denominator = q1.dot(q1) + (q - p).dot(q2);
    if denominator.abs() < 1e-12 {
        return t;
    }
    (t - numerator / denominator).clamp(0.0, 1.0)
}

/// Maximum squared distance from the points to the curve and the index of
/// the worst offender (used as the split point).
fn max_error_of(points: &[Point], bez: &CubicBezier, u: &[f64]) -> (f64, usize) {
    let mut worst = 0.0;
    let mut split = points.len() / 2;
    for (i, (&p, &t)) in points.iter().zip(u).enumerate().skip(1) {
        if i + 1 == points.len() {
            break;
        }
        let d = bez.eval_unchecked(t.clamp(0.0, 1.0)) - p;
        let dist2 = d.dot(d);
        if dist2 >= worst {
            worst = dist2;
            split = i;
        }
    }
    (worst, split)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_cubic(c: &CubicBezier, n: usize) -> Vec<Point> {
        (0..n)
            .map(|k| c.eval_unchecked(k as f64 / (n - 1) as f64))
            .collect()
    }

    /// Squared distance from a point to a curve, by dense parameter search.
    fn dist2_to_curves(p: Point, curves: &[CubicBezier]) -> f64 {
        let mut best = f64::INFINITY;
        for c in curves {
            for k in 0..=200 {
                let q = c.eval_unchecked(k as f64 / 200.0);
                best = best.min((q - p).dot(q - p));
            }
        }
        best
    }

    #[test]
    fn recovers_single_cubic() {
        let c = CubicBezier::new(
            Point::raw(0.0, 0.0),
            Point::raw(10.0, 20.0),
            Point::raw(30.0, 20.0),
            Point::raw(40.0, 0.0),
        );
        let points = sample_cubic(&c, 20);
        let fit = fit_cubics_schneider(&points, 1.0).unwrap();
        assert_eq!(fit.len(), 1);
        for p in &points {
            assert!(dist2_to_curves(*p, &fit) <= 1.0 + 1e-9);
        }
        assert_eq!(fit[0].p1, points[0]);
        assert_eq!(fit[0].p2, *points.last().unwrap());
    }

    #[test]
    fn two_points_straight_fit() {
        let fit =
            fit_cubics_schneider(&[Point::raw(0.0, 0.0), Point::raw(3.0, 0.0)], 1.0).unwrap();
        assert_eq!(fit.len(), 1);
        let c = fit[0];
        assert_eq!(c.q1, Point::raw(1.0, 0.0));
        assert_eq!(c.q2, Point::raw(2.0, 0.0));
    }

    #[test]
    fn corner_forces_split() {
        // An L-shaped corner cannot be captured by one cubic at a tight
        // tolerance.
        let mut points: Vec<Point> = (0..10).map(|i| Point::raw(i as f64, 0.0)).collect();
        points.extend((1..10).map(|i| Point::raw(9.0, i as f64)));
        let fit = fit_cubics_schneider(&points, 0.01).unwrap();
        assert!(fit.len() >= 2, "expected a split, got {} curve(s)", fit.len());
        for p in &points {
            assert!(dist2_to_curves(*p, &fit) <= 0.5);
        }
    }

    #[test]
    fn too_few_points_rejected() {
        assert!(fit_cubics_schneider(&[Point::raw(0.0, 0.0)], 1.0).is_err());
    }
}
