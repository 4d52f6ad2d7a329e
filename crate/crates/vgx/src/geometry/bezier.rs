//! Cubic Bézier curves: evaluation, derivatives, splitting and arc length.

use super::{GeomError, Point};

/// A cubic Bézier segment from `p1` to `p2` with control points `q1`, `q2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicBezier {
    pub p1: Point,
    pub q1: Point,
    pub q2: Point,
    pub p2: Point,
}

impl CubicBezier {
    pub fn new(p1: Point, q1: Point, q2: Point, p2: Point) -> Self {
        CubicBezier { p1, q1, q2, p2 }
    }

    /// A cubic that traces the straight segment from `a` to `b`, with
    /// control points at the third points.
    pub fn from_line(a: Point, b: Point) -> Self {
        CubicBezier {
            p1: a,
            q1: a.lerp(b, 1.0 / 3.0),
            q2: a.lerp(b, 2.0 / 3.0),
            p2: b,
        }
    }

    /// Evaluate the Bernstein form at `t` in [0, 1]; exact at the endpoints.
    pub fn eval(&self, t: f64) -> Result<Point, GeomError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(GeomError::Domain {
                name: "t",
                value: t,
                domain: "[0, 1]",
            });
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> Point {
        if t == 0.0 {
            return self.p1;
        }
        if t == 1.0 {
            return self.p2;
        }
        let u = 1.0 - t;
        let b0 = u * u * u;
        let b1 = 3.0 * u * u * t;
        let b2 = 3.0 * u * t * t;
        let b3 = t * t * t;
        Point {
            x: b0 * self.p1.x + b1 * self.q1.x + b2 * self.q2.x + b3 * self.p2.x,
            y: b0 * self.p1.y + b1 * self.q1.y + b2 * self.q2.y + b3 * self.p2.y,
        }
    }

    /// First derivative at `t`.
    pub fn derivative(&self, t: f64) -> Point {
        let u = 1.0 - t;
        let d0 = (self.q1 - self.p1).scale(3.0 * u * u);
        let d1 = (self.q2 - self.q1).scale(6.0 * u * t);
        let d2 = (self.p2 - self.q2).scale(3.0 * t * t);
        d0 + d1 + d2
    }

    /// Second derivative at `t`.
    pub fn second_derivative(&self, t: f64) -> Point {
        let u = 1.0 - t;
        let a = (self.q2 - self.q1.scale(2.0) + self.p1).scale(6.0 * u);
        let b = (self.p2 - self.q2.scale(2.0) + self.q1).scale(6.0 * t);
        a + b
    }

    /// Tangent direction leaving `p1` (first non-degenerate difference).
    pub fn out_tangent(&self) -> Point {
        for v in [self.q1 - self.p1, self.q2 - self.p1, self.p2 - self.p1] {
            if v.norm() > 0.0 {
                return v;
            }
        }
        Point::raw(0.0, 0.0)
    }

    /// Tangent direction arriving at `p2`.
    pub fn in_tangent(&self) -> Point {
        for v in [self.p2 - self.q2, self.p2 - self.q1, self.p2 - self.p1] {
            if v.norm() > 0.0 {
                return v;
            }
        }
        Point::raw(0.0, 0.0)
    }

    /// De Casteljau split at `t`, returning the [0, t] and [t, 1] halves.
    pub fn split(&self, t: f64) -> (CubicBezier, CubicBezier) {
        let ab = self.p1.lerp(self.q1, t);
        let bc = self.q1.lerp(self.q2, t);
        let cd = self.q2.lerp(self.p2, t);
        let abc = ab.lerp(bc, t);
        let bcd = bc.lerp(cd, t);
        let mid = abc.lerp(bcd, t);
        (
            CubicBezier::new(self.p1, ab, abc, mid),
            CubicBezier::new(mid, bcd, cd, self.p2),
        )
    }

    /// The sub-curve on [t0, t1].
    pub fn subsegment(&self, t0: f64, t1: f64) -> CubicBezier {
        let (_, tail) = self.split(t0);
        if t0 >= 1.0 {
            return CubicBezier::new(self.p2, self.p2, self.p2, self.p2);
        }
        let local = (t1 - t0) / (1.0 - t0);
        tail.split(local).0
    }

    /// Arc length estimated by summing `n` chord lengths.
    pub fn arc_length(&self, n: usize) -> f64 {
        let mut len = 0.0;
        let mut prev = self.p1;
        for k in 1..=n {
            let p = self.eval_unchecked(k as f64 / n as f64);
            len += prev.dist(p);
            prev = p;
        }
        len
    }

    /// The reversed curve (same trace, opposite direction).
    pub fn reversed(&self) -> CubicBezier {
        CubicBezier::new(self.p2, self.q2, self.q1, self.p1)
    }
}
