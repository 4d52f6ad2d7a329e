//! Approximately arc-length-uniform point sampling along a path's drawable
//! segments, used by the Chamfer distance and by simplification fidelity
//! checks.

use super::{CubicBezier, GeomError, Point};
use crate::svg_io::{CmdKind, SvgPath};

/// One drawable piece of a path, in traversal order.
#[derive(Debug, Clone, Copy)]
pub enum Segment {
    Line(Point, Point),
    Cubic(CubicBezier),
}

impl Segment {
    pub fn start(&self) -> Point {
        match self {
            Segment::Line(a, _) => *a,
            Segment::Cubic(c) => c.p1,
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Segment::Line(_, b) => *b,
            Segment::Cubic(c) => c.p2,
        }
    }

    pub fn eval(&self, t: f64) -> Point {
        match self {
            Segment::Line(a, b) => a.lerp(*b, t),
            Segment::Cubic(c) => c.eval_unchecked(t),
        }
    }

    /// Chord-sum arc length over 64 subdivisions.
    pub fn arc_length(&self) -> f64 {
        match self {
            Segment::Line(a, b) => a.dist(*b),
            Segment::Cubic(c) => c.arc_length(64),
        }
    }

    pub fn chord_length(&self) -> f64 {
        self.start().dist(self.end())
    }
}

/// Flatten a path's commands into drawable segments. `Z` contributes its
/// closing line when it actually spans a distance.
pub fn segments_of_path(path: &SvgPath) -> Vec<Segment> {
    let mut segments = Vec::new();
    let mut cursor = Point::raw(0.0, 0.0);
    let mut subpath_start = cursor;
    for cmd in &path.commands {
        match cmd.kind {
            CmdKind::Move => {
                cursor = cmd.end_point();
                subpath_start = cursor;
            }
            CmdKind::Line => {
                let p = cmd.end_point();
                if p.dist(cursor) > 0.0 {
                    segments.push(Segment::Line(cursor, p));
                }
                cursor = p;
            }
            CmdKind::Cubic => {
                let c = CubicBezier::new(cursor, cmd.ctrl1_point(), cmd.ctrl2_point(), cmd.end_point());
                segments.push(Segment::Cubic(c));
                cursor = c.p2;
            }
            CmdKind::Close => {
                if cursor.dist(subpath_start) > 1e-9 {
                    segments.push(Segment::Line(cursor, subpath_start));
                }
                cursor = subpath_start;
            }
            CmdKind::Sos | CmdKind::Eos => {}
        }
    }
    segments
}

/// `n` points spread approximately uniformly in arc length over the path.
///
/// Open paths include both endpoints; closed paths (last point returning to
/// the first) distribute `n` points around the loop without duplicating the
/// seam.
pub fn sample_path_points(path: &SvgPath, n: usize) -> Result<Vec<Point>, GeomError> {
    if n < 2 {
        return Err(GeomError::Domain {
            name: "n",
            value: n as f64,
            domain: "[2, inf)",
        });
    }
    let segments = segments_of_path(path);
    sample_points_of_segments(&segments, n)
}

/// Sampling core shared with callers that already hold segments.
pub fn sample_points_of_segments(segments: &[Segment], n: usize) -> Result<Vec<Point>, GeomError> {
    if segments.is_empty() {
        return Err(GeomError::EmptyGeometry);
    }
    // Per-segment arc-length tables with 64 subdivisions each.
    const SUBDIV: usize = 64;
    let mut cumulative = vec![0.0f64];
    let mut table: Vec<(usize, f64)> = Vec::new(); // (segment, t at row end)
    for (si, seg) in segments.iter().enumerate() {
        let mut prev = seg.start();
        for k in 1..=SUBDIV {
            let t = k as f64 / SUBDIV as f64;
            let p = seg.eval(t);
            cumulative.push(cumulative.last().unwrap() + prev.dist(p));
            table.push((si, t));
            prev = p;
        }
    }
    let total = *cumulative.last().unwrap();
    if total <= 0.0 {
        // Segments exist but trace no length; return copies of the origin.
        return Ok(vec![segments[0].start(); n]);
    }

    let closed = segments[0]
        .start()
        .dist(segments.last().unwrap().end())
        < 1e-9;
    let denom = if closed { n as f64 } else { (n - 1) as f64 };

    let mut out = Vec::with_capacity(n);
    let mut row = 0usize;
    for k in 0..n {
        let target = total * k as f64 / denom;
        while row + 1 < cumulative.len() - 1 && cumulative[row + 1] < target {
            row += 1;
        }
        // Interpolate inside table row `row` (between cumulative[row] and
        // cumulative[row + 1]).
        let lo = cumulative[row];
        let hi = cumulative[row + 1];
        let (si, t_hi) = table[row];
        let t_lo = if row == 0 || table[row - 1].0 != si {
            0.0
        } else {
            table[row - 1].1
        };
        let frac = if hi > lo { (target - lo) / (hi - lo) } else { 0.0 };
        let t = t_lo + (t_hi - t_lo) * frac.clamp(0.0, 1.0);
        out.push(segments[si].eval(t));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::svg_io::{DrawCommand, Fill, SvgPath};
    use approx::assert_relative_eq;

    fn open_segment_path() -> SvgPath {
        SvgPath {
            commands: vec![
                DrawCommand::move_to(Point::raw(0.0, 0.0)),
                DrawCommand::line_to(Point::raw(1.0, 0.0)),
            ],
            fill: Fill::Outline,
            visible: true,
        }
    }

    fn unit_square() -> SvgPath {
        SvgPath {
            commands: vec![
                DrawCommand::move_to(Point::raw(0.0, 0.0)),
                DrawCommand::line_to(Point::raw(1.0, 0.0)),
                DrawCommand::line_to(Point::raw(1.0, 1.0)),
                DrawCommand::line_to(Point::raw(0.0, 1.0)),
                DrawCommand::line_to(Point::raw(0.0, 0.0)),
                DrawCommand::close(),
            ],
            fill: Fill::Outline,
            visible: true,
        }
    }

    #[test]
    fn unit_segment_three_points() {
        let pts = sample_path_points(&open_segment_path(), 3).unwrap();
        assert_eq!(pts.len(), 3);
        assert_relative_eq!(pts[0].x, 0.0, epsilon = 1e-9);
        assert_relative_eq!(pts[1].x, 0.5, epsilon = 1e-9);
        assert_relative_eq!(pts[2].x, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn two_points_are_endpoints() {
        let pts = sample_path_points(&open_segment_path(), 2).unwrap();
        assert_eq!(pts[0], Point::raw(0.0, 0.0));
        assert_eq!(pts[1], Point::raw(1.0, 0.0));
    }

    #[test]
    fn closed_square_eight_points() {
        // Perimeter 4 split by n=8 gives spacing 0.5: one point per half-edge.
        let pts = sample_path_points(&unit_square(), 8).unwrap();
        assert_eq!(pts.len(), 8);
        for w in pts.windows(2) {
            assert_relative_eq!(w[0].dist(w[1]), 0.5, epsilon = 1e-6);
        }
        // Seam not duplicated.
        assert!(pts[0].dist(*pts.last().unwrap()) > 0.4);
    }

    #[test]
    fn move_only_path_errors() {
        let p = SvgPath {
            commands: vec![DrawCommand::move_to(Point::raw(1.0, 1.0))],
            fill: Fill::Outline,
            visible: true,
        };
        assert!(matches!(
            sample_path_points(&p, 4),
            Err(GeomError::EmptyGeometry)
        ));
    }

    #[test]
    fn smooth_path_spacing_is_even() {
        // An arch sampled at 32 points: consecutive gaps differ below 20%.
        let c = CubicBezier::new(
            Point::raw(0.0, 0.0),
            Point::raw(2.0, 4.0),
            Point::raw(6.0, 4.0),
            Point::raw(8.0, 0.0),
        );
        let path = SvgPath {
            commands: vec![
                DrawCommand::move_to(c.p1),
                DrawCommand::cubic_to(c.q1, c.q2, c.p2),
            ],
            fill: Fill::Outline,
            visible: true,
        };
        let pts = sample_path_points(&path, 32).unwrap();
        let gaps: Vec<f64> = pts.windows(2).map(|w| w[0].dist(w[1])).collect();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        for g in gaps {
            assert!((g - mean).abs() / mean < 0.2, "gap {g} vs mean {mean}");
        }
    }
}
