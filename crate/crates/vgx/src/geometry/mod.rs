//! Pure 2D geometry: points, cubic Béziers, elliptical arcs, polyline
//! simplification, curve fitting and arc-length sampling.
//!
//! Everything here is stateless and side-effect free. All math is `f64`;
//! quantization happens only in [`crate::tensor_repr`].

mod arc;
mod bezier;
mod fit;
mod rdp;
mod sample;

pub use arc::{arc_endpoint_to_center, arc_to_cubics, ArcCenterForm, EllipticalArc};
pub use bezier::CubicBezier;
pub use fit::fit_cubics_schneider;
pub use rdp::rdp_simplify;
pub use sample::{sample_path_points, sample_points_of_segments, segments_of_path, Segment};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("parameter {name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("degenerate arc: start and end coincide at ({0}, {1})")]
    DegenerateArc(f64, f64),
    #[error("non-finite coordinate ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("zero-length tangent vector")]
    ZeroTangent,
    #[error("path has no drawable geometry")]
    EmptyGeometry,
}

/// A point in viewbox units. Constructors reject NaN/Inf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(GeomError::NonFinite(x, y))
        }
    }

    /// Infallible constructor for coordinates already known finite.
    pub const fn raw(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// 2D cross product (z-component of the 3D cross).
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn scale(self, s: f64) -> Point {
        Point {
            x: self.x * s,
            y: self.y * s,
        }
    }

    pub fn normalize(self) -> Option<Point> {
        let n = self.norm();
        if n > 0.0 {
            Some(self.scale(1.0 / n))
        } else {
            None
        }
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point {
            x: self.x + (other.x - self.x) * t,
            y: self.y + (other.y - self.y) * t,
        }
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

/// Perpendicular distance from `p` to the infinite line through `a` and `b`.
/// Falls back to point distance when the chord is degenerate.
pub fn perpendicular_distance(p: Point, a: Point, b: Point) -> f64 {
    let chord = b - a;
    let len = chord.norm();
    if len <= f64::EPSILON {
        return p.dist(a);
    }
    (chord.cross(p - a)).abs() / len
}

/// Distance from `p` to the closed segment [`a`, `b`].
pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

/// Unsigned angle between two direction vectors, in degrees within [0, 180].
pub fn angle_between_degrees(u: Point, v: Point) -> Result<f64, GeomError> {
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(GeomError::ZeroTangent);
    }
    Ok(u.cross(v).atan2(u.dot(v)).abs().to_degrees())
}

/// Vertex angle between an incoming and outgoing travel direction, in
/// degrees within [0, 180].
///
/// A straight continuation measures 180 and a hairpin reversal measures 0,
/// so "split when the angle is below a threshold" keeps smooth joins intact.
pub fn tangent_angle_between(in_tangent: Point, out_tangent: Point) -> Result<f64, GeomError> {
    Ok(180.0 - angle_between_degrees(in_tangent, out_tangent)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn point_rejects_non_finite() {
        assert!(Point::new(f64::NAN, 0.0).is_err());
        assert!(Point::new(0.0, f64::INFINITY).is_err());
        assert!(Point::new(1.0, -2.0).is_ok());
    }

    #[test]
    fn tangent_angle_straight_is_180() {
        let a = tangent_angle_between(Point::raw(1.0, 0.0), Point::raw(1.0, 0.0)).unwrap();
        assert_relative_eq!(a, 180.0, epsilon = 1e-12);
    }

    #[test]
    fn tangent_angle_perpendicular_is_90() {
        let a = tangent_angle_between(Point::raw(1.0, 0.0), Point::raw(0.0, 1.0)).unwrap();
        assert_relative_eq!(a, 90.0, epsilon = 1e-12);
    }

    #[test]
    fn tangent_angle_hairpin_is_0() {
        let a = tangent_angle_between(Point::raw(1.0, 0.0), Point::raw(-1.0, 0.0)).unwrap();
        assert_relative_eq!(a, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn tangent_angle_near_reversal() {
        // Directions (1,0) then (-1,0.36) turn by ~160.2 degrees, so the
        // vertex angle is ~19.8 degrees: nearly a hairpin, well below any
        // sensible split threshold.
        let a = tangent_angle_between(Point::raw(1.0, 0.0), Point::raw(-1.0, 0.36)).unwrap();
        let turn = (0.36f64).atan2(-1.0).to_degrees();
        assert_relative_eq!(a, 180.0 - turn, epsilon = 1e-9);
        assert!(a < 25.0);
    }

    #[test]
    fn tangent_angle_zero_vector_errors() {
        assert!(tangent_angle_between(Point::raw(0.0, 0.0), Point::raw(1.0, 0.0)).is_err());
    }

    #[test]
    fn perpendicular_distance_basic() {
        let d = perpendicular_distance(Point::raw(1.0, 1.0), Point::raw(0.0, 0.0), Point::raw(2.0, 0.0));
        assert_relative_eq!(d, 1.0, epsilon = 1e-12);
    }
}
