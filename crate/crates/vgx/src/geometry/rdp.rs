//! Ramer-Douglas-Peucker polyline simplification.

use super::{segment_distance, GeomError, Point};

/// Simplify a polyline, keeping both endpoints and every point whose removal
/// would leave the simplified line more than `epsilon` away from it.
///
/// Distances are measured to the chord as a closed segment, so the deviation
/// bound holds against the output polyline itself even for points that
/// project beyond the chord ends.
pub fn rdp_simplify(points: &[Point], epsilon: f64) -> Result<Vec<Point>, GeomError> {
    if !(epsilon > 0.0) {
        return Err(GeomError::Domain {
            name: "epsilon",
            value: epsilon,
            domain: "(0, inf)",
        });
    }
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    let mut keep = vec![false; points.len()];
    keep[0] = true;
    keep[points.len() - 1] = true;
    mark(points, 0, points.len() - 1, epsilon, &mut keep);
    Ok(points
        .iter()
        .zip(&keep)
        .filter_map(|(p, &k)| k.then_some(*p))
        .collect())
}

fn mark(points: &[Point], first: usize, last: usize, epsilon: f64, keep: &mut [bool]) {
    if last <= first + 1 {
        return;
    }
    let mut worst = 0.0;
    let mut index = first;
    for i in first + 1..last {
        let d = segment_distance(points[i], points[first], points[last]);
        if d > worst {
            worst = d;
            index = i;
        }
    }
    if worst > epsilon {
        keep[index] = true;
        mark(points, first, index, epsilon, keep);
        mark(points, index, last, epsilon, keep);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::raw(x, y)).collect()
    }

    #[test]
    fn collinear_interior_removed() {
        let out = rdp_simplify(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]), 0.01).unwrap();
        assert_eq!(out, pts(&[(0.0, 0.0), (2.0, 0.0)]));
    }

    #[test]
    fn significant_point_kept() {
        // (1,1) is distance 1 from the chord, above epsilon = 0.5.
        let input = pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        let out = rdp_simplify(&input, 0.5).unwrap();
        assert_eq!(out, input);
    }

    #[test]
    fn two_points_unchanged() {
        let input = pts(&[(0.0, 0.0), (5.0, 5.0)]);
        assert_eq!(rdp_simplify(&input, 1.0).unwrap(), input);
    }

    #[test]
    fn bad_epsilon_rejected() {
        assert!(rdp_simplify(&pts(&[(0.0, 0.0), (1.0, 0.0)]), 0.0).is_err());
        assert!(rdp_simplify(&pts(&[(0.0, 0.0), (1.0, 0.0)]), -1.0).is_err());
    }

    /// Brute-force check that a removed point is within eps of the kept line.
    fn deviation_ok(original: &[Point], simplified: &[Point], eps: f64) -> bool {
        original.iter().all(|p| {
            simplified
                .windows(2)
                .map(|w| segment_distance(*p, w[0], w[1]))
                .fold(f64::INFINITY, f64::min)
                <= eps + 1e-9
        })
    }

    proptest! {
        #[test]
        fn idempotent_and_bounded(
            raw in proptest::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2..40),
            eps in 0.05f64..5.0,
        ) {
            let points = pts(&raw);
            let once = rdp_simplify(&points, eps).unwrap();
            let twice = rdp_simplify(&once, eps).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert!(deviation_ok(&points, &once, eps));
            prop_assert_eq!(once.first(), points.first());
            prop_assert_eq!(once.last(), points.last());
        }
    }
}
