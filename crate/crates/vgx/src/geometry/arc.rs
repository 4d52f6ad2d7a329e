//! Elliptical arcs: endpoint-to-center conversion and cubic approximation.

use super::{CubicBezier, GeomError, Point};
use std::f64::consts::PI;

/// An elliptical arc in SVG endpoint parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticalArc {
    pub start: Point,
    pub rx: f64,
    pub ry: f64,
    /// Rotation of the ellipse x-axis, radians.
    pub phi: f64,
    pub large_arc: bool,
    pub sweep: bool,
    pub end: Point,
}

impl EllipticalArc {
    pub fn new(
        start: Point,
        rx: f64,
        ry: f64,
        phi: f64,
        large_arc: bool,
        sweep: bool,
        end: Point,
    ) -> Result<Self, GeomError> {
        if !(rx > 0.0) {
            return Err(GeomError::Domain {
                name: "rx",
                value: rx,
                domain: "(0, inf)",
            });
        }
        if !(ry > 0.0) {
            return Err(GeomError::Domain {
                name: "ry",
                value: ry,
                domain: "(0, inf)",
            });
        }
        if start == end {
            return Err(GeomError::DegenerateArc(start.x, start.y));
        }
        Ok(EllipticalArc {
            start,
            rx,
            ry,
            phi,
            large_arc,
            sweep,
            end,
        })
    }
}

/// Center parametrization: ellipse center, radii, rotation, start angle and
/// signed angle range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcCenterForm {
    pub center: Point,
    pub rx: f64,
    pub ry: f64,
    pub phi: f64,
    pub theta1: f64,
    pub delta_theta: f64,
}

impl ArcCenterForm {
    /// Point on the arc at ellipse angle `theta`.
    pub fn eval(&self, theta: f64) -> Point {
        let (sin_phi, cos_phi) = self.phi.sin_cos();
        let (sin_t, cos_t) = theta.sin_cos();
        Point {
            x: self.center.x + self.rx * cos_phi * cos_t - self.ry * sin_phi * sin_t,
            y: self.center.y + self.rx * sin_phi * cos_t + self.ry * cos_phi * sin_t,
        }
    }

    /// Derivative of [`Self::eval`] with respect to `theta`.
    pub fn eval_derivative(&self, theta: f64) -> Point {
        let (sin_phi, cos_phi) = self.phi.sin_cos();
        let (sin_t, cos_t) = theta.sin_cos();
        Point {
            x: -self.rx * cos_phi * sin_t - self.ry * sin_phi * cos_t,
            y: -self.rx * sin_phi * sin_t + self.ry * cos_phi * cos_t,
        }
    }
}

/// Signed angle from `u` to `v` in (-pi, pi].
fn vector_angle(u: Point, v: Point) -> f64 {
    u.cross(v).atan2(u.dot(v))
}

/// Convert the SVG endpoint parametrization to center form.
///
/// When the radii are too small to span the chord they are scaled up by the
/// minimal factor that admits a solution. The square-root sign and the
/// wrap-around of the angle range follow the flag semantics of the SVG
/// specification.
pub fn arc_endpoint_to_center(a: &EllipticalArc) -> Result<ArcCenterForm, GeomError> {
    if a.start == a.end {
        return Err(GeomError::DegenerateArc(a.start.x, a.start.y));
    }
    if !(a.rx > 0.0) || !(a.ry > 0.0) {
        return Err(GeomError::Domain {
            name: "radius",
            value: a.rx.min(a.ry),
            domain: "(0, inf)",
        });
    }
    let (sin_phi, cos_phi) = a.phi.sin_cos();
    let half = (a.start - a.end).scale(0.5);
    let x1p = cos_phi * half.x + sin_phi * half.y;
    let y1p = -sin_phi * half.x + cos_phi * half.y;

    // Scale radii up when the endpoints cannot lie on one ellipse.
    let mut rx = a.rx;
    let mut ry = a.ry;
    let lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
    if lambda > 1.0 {
        let s = lambda.sqrt();
        rx *= s;
        ry *= s;
    }

    let rx2 = rx * rx;
    let ry2 = ry * ry;
    let num = rx2 * ry2 - rx2 * y1p * y1p - ry2 * x1p * x1p;
    let den = rx2 * y1p * y1p + ry2 * x1p * x1p;
    let mut coef = (num.max(0.0) / den).sqrt();
    if a.large_arc == a.sweep {
        coef = -coef;
    }
    let cxp = coef * rx * y1p / ry;
    let cyp = -coef * ry * x1p / rx;

    let mid = Point {
        x: (a.start.x + a.end.x) * 0.5,
        y: (a.start.y + a.end.y) * 0.5,
    };
    let center = Point {
        x: cos_phi * cxp - sin_phi * cyp + mid.x,
        y: sin_phi * cxp + cos_phi * cyp + mid.y,
    };

    let u = Point {
        x: (x1p - cxp) / rx,
        y: (y1p - cyp) / ry,
    };
    let v = Point {
        x: (-x1p - cxp) / rx,
        y: (-y1p - cyp) / ry,
    };
    let theta1 = vector_angle(Point::raw(1.0, 0.0), u);
    let mut delta = vector_angle(u, v);
    if !a.sweep && delta > 0.0 {
        delta -= 2.0 * PI;
    } else if a.sweep && delta < 0.0 {
        delta += 2.0 * PI;
    }

    Ok(ArcCenterForm {
        center,
        rx,
        ry,
        phi: a.phi,
        theta1,
        delta_theta: delta,
    })
}

/// Approximate one arc by cubic Béziers, splitting the sweep into equal
/// sections of at most pi/2 so the tangent-scale formula stays accurate.
pub fn arc_to_cubics(a: &EllipticalArc) -> Result<Vec<CubicBezier>, GeomError> {
    let center = arc_endpoint_to_center(a)?;
    let n = ((center.delta_theta.abs() / (PI / 2.0)).ceil() as usize).max(1);
    let step = center.delta_theta / n as f64;
    let mut curves = Vec::with_capacity(n);
    for k in 0..n {
        let t1 = center.theta1 + step * k as f64;
        let t2 = t1 + step;
        curves.push(arc_section_to_cubic(&center, t1, t2));
    }
    // Pin the chain to the exact command endpoints.
    if let Some(first) = curves.first_mut() {
        first.p1 = a.start;
    }
    if let Some(last) = curves.last_mut() {
        last.p2 = a.end;
    }
    Ok(curves)
}

/// Cubic approximation of the arc section between angles `theta1`, `theta2`:
/// endpoints on the ellipse, control points along the tangents with scale
/// alpha = sin(d) * (sqrt(4 + 3 tan^2(d/2)) - 1) / 3 for d = theta2 - theta1.
fn arc_section_to_cubic(c: &ArcCenterForm, theta1: f64, theta2: f64) -> CubicBezier {
    let d = theta2 - theta1;
    let alpha = d.sin() * ((4.0 + 3.0 * (d / 2.0).tan().powi(2)).sqrt() - 1.0) / 3.0;
    let p1 = c.eval(theta1);
    let p2 = c.eval(theta2);
    let q1 = p1 + c.eval_derivative(theta1).scale(alpha);
    let q2 = p2 - c.eval_derivative(theta2).scale(alpha);
    CubicBezier::new(p1, q1, q2, p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn semicircle() -> EllipticalArc {
        EllipticalArc::new(
            Point::raw(1.0, 0.0),
            1.0,
            1.0,
            0.0,
            false,
            true,
            Point::raw(-1.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn semicircle_center_form() {
        let c = arc_endpoint_to_center(&semicircle()).unwrap();
        assert_relative_eq!(c.center.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.center.y, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.theta1, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.delta_theta, std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn sweep_flip_reflects_center() {
        // Flipping the sweep on this symmetric chord keeps the center at the
        // origin while the angle range reverses.
        let mut a = semicircle();
        a.sweep = false;
        let c = arc_endpoint_to_center(&a).unwrap();
        assert_relative_eq!(c.center.x, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.delta_theta, -std::f64::consts::PI, epsilon = 1e-12);

        // An off-axis chord: flipping the sweep reflects the center across
        // the chord.
        let b = EllipticalArc::new(
            Point::raw(2.0, 0.0),
            2.0,
            2.0,
            0.0,
            false,
            true,
            Point::raw(0.0, 2.0),
        )
        .unwrap();
        let cb = arc_endpoint_to_center(&b).unwrap();
        let mut b2 = b;
        b2.sweep = false;
        let cb2 = arc_endpoint_to_center(&b2).unwrap();
        // Chord midpoint (1,1); centers must be mirror images through it.
        assert_relative_eq!(cb.center.x + cb2.center.x, 2.0, epsilon = 1e-9);
        assert_relative_eq!(cb.center.y + cb2.center.y, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_arc_rejected() {
        let r = EllipticalArc::new(
            Point::raw(1.0, 0.0),
            1.0,
            1.0,
            0.0,
            false,
            true,
            Point::raw(1.0, 0.0),
        );
        assert!(matches!(r, Err(GeomError::DegenerateArc(_, _))));
    }

    #[test]
    fn small_radii_scaled_up() {
        // Chord of length 4 with rx=ry=1 has no solution; radii scale to 2.
        let a = EllipticalArc::new(
            Point::raw(0.0, 0.0),
            1.0,
            1.0,
            0.0,
            false,
            true,
            Point::raw(4.0, 0.0),
        )
        .unwrap();
        let c = arc_endpoint_to_center(&a).unwrap();
        assert_relative_eq!(c.rx, 2.0, epsilon = 1e-12);
        assert_relative_eq!(c.ry, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn quarter_circle_single_cubic_alpha() {
        let a = EllipticalArc::new(
            Point::raw(1.0, 0.0),
            1.0,
            1.0,
            0.0,
            false,
            true,
            Point::raw(0.0, 1.0),
        )
        .unwrap();
        let curves = arc_to_cubics(&a).unwrap();
        assert_eq!(curves.len(), 1);
        // alpha at a quarter sweep is (sqrt(7) - 1) / 3.
        let alpha = (7.0f64.sqrt() - 1.0) / 3.0;
        assert_relative_eq!(alpha, 0.5486, epsilon = 1e-4);
        // First control point sits at start + alpha * tangent = (1, alpha).
        assert_relative_eq!(curves[0].q1.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(curves[0].q1.y, alpha, epsilon = 1e-12);
    }

    #[test]
    fn semicircle_splits_into_two() {
        let curves = arc_to_cubics(&semicircle()).unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].p1, Point::raw(1.0, 0.0));
        assert_eq!(curves[1].p2, Point::raw(-1.0, 0.0));
        // C0 continuity at the joint.
        assert_relative_eq!(curves[0].p2.x, curves[1].p1.x, epsilon = 1e-12);
        assert_relative_eq!(curves[0].p2.y, curves[1].p1.y, epsilon = 1e-12);
    }

    #[test]
    fn sixth_turn_radial_error_small() {
        // A pi/3 sweep of the unit circle: every Bézier sample must stay
        // within 1e-3 of radius 1.
        let a = EllipticalArc::new(
            Point::raw(1.0, 0.0),
            1.0,
            1.0,
            0.0,
            false,
            true,
            Point::raw(0.5, 3.0f64.sqrt() / 2.0),
        )
        .unwrap();
        let curves = arc_to_cubics(&a).unwrap();
        assert_eq!(curves.len(), 1);
        let mut worst = 0.0f64;
        for k in 0..=100 {
            let p = curves[0].eval_unchecked(k as f64 / 100.0);
            worst = worst.max((p.norm() - 1.0).abs());
        }
        assert!(worst < 1e-3, "radial error {worst}");
    }
}
