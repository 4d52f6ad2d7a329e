//! The SVG path-data (`d` attribute) grammar: tokenizer, absolute-coordinate
//! conversion, and expansion of every command letter down to the
//! move/line/cubic/close alphabet.

use super::{CmdKind, DrawCommand, SvgError};
use crate::geometry::{arc_to_cubics, EllipticalArc, Point};

/// A path command with absolute coordinates, before shorthand expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RawCommand {
    Move(Point),
    Line(Point),
    /// Horizontal line to the given x (keeps current y).
    Horizontal(f64),
    /// Vertical line to the given y (keeps current x).
    Vertical(f64),
    Cubic(Point, Point, Point),
    /// Smooth cubic: second control point and endpoint; the first control
    /// point reflects the previous one.
    SmoothCubic(Point, Point),
    Quadratic(Point, Point),
    SmoothQuadratic(Point),
    Arc {
        rx: f64,
        ry: f64,
        rotation_deg: f64,
        large_arc: bool,
        sweep: bool,
        end: Point,
    },
    Close,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\n' | b'\r' | b',' => self.pos += 1,
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_separators();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, len: usize) -> SvgError {
        let end = (self.pos + len.max(1)).min(self.bytes.len());
        SvgError::PathData {
            token: String::from_utf8_lossy(&self.bytes[self.pos..end]).into_owned(),
            position: self.pos,
        }
    }

    fn number(&mut self) -> Result<f64, SvgError> {
        self.skip_separators();
        let start = self.pos;
        let b = self.bytes;
        let mut i = self.pos;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let int_digits = Self::eat_digits(b, &mut i);
        let mut frac_digits = 0;
        if i < b.len() && b[i] == b'.' {
            i += 1;
            frac_digits = Self::eat_digits(b, &mut i);
        }
        if int_digits == 0 && frac_digits == 0 {
            return Err(self.error(1));
        }
        if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
            let mut j = i + 1;
            if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                j += 1;
            }
            if Self::eat_digits(b, &mut j) > 0 {
                i = j;
            }
        }
        let text = std::str::from_utf8(&b[start..i]).expect("ascii slice");
        let value: f64 = text.parse().map_err(|_| self.error(i - start))?;
        self.pos = i;
        Ok(value)
    }

    fn eat_digits(b: &[u8], i: &mut usize) -> usize {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - start
    }

    /// Arc flags are single `0`/`1` characters, possibly run together with
    /// the next number.
    fn flag(&mut self) -> Result<bool, SvgError> {
        self.skip_separators();
        match self.bytes.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(false)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(true)
            }
            _ => Err(self.error(1)),
        }
    }

    fn starts_number(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.' || c == b'+' || c == b'-')
    }
}

/// Parse a `d` attribute into absolute [`RawCommand`]s.
pub fn parse_path_data(d: &str) -> Result<Vec<RawCommand>, SvgError> {
    let mut lex = Lexer::new(d);
    let mut out = Vec::new();
    let mut cursor = Point::raw(0.0, 0.0);
    let mut subpath_start = cursor;
    let mut prev_letter: Option<u8> = None;

    loop {
        let letter = match lex.peek() {
            None => break,
            Some(c) if c.is_ascii_alphabetic() => {
                lex.pos += 1;
                prev_letter = Some(c);
                c
            }
            Some(_) if lex.starts_number() => {
                // Implicit repetition of the previous command letter; an
                // implicit repeat of M/m is L/l.
                match prev_letter {
                    Some(b'M') => b'L',
                    Some(b'm') => b'l',
                    // A close-path consumes no arguments, so a bare number
                    // after it is malformed.
                    Some(b'Z') | Some(b'z') | None => return Err(lex.error(1)),
                    Some(c) => c,
                }
            }
            Some(_) => return Err(lex.error(1)),
        };
        if letter != b'M' && letter != b'm' {
            prev_letter = Some(letter);
        }
        let relative = letter.is_ascii_lowercase();
        let base = if relative { cursor } else { Point::raw(0.0, 0.0) };

        match letter.to_ascii_uppercase() {
            b'M' => {
                let p = base + lex.point()?;
                out.push(RawCommand::Move(p));
                cursor = p;
                subpath_start = p;
            }
            b'L' => {
                let p = base + lex.point()?;
                out.push(RawCommand::Line(p));
                cursor = p;
            }
            b'H' => {
                let x = lex.number()? + if relative { cursor.x } else { 0.0 };
                out.push(RawCommand::Horizontal(x));
                cursor.x = x;
            }
            b'V' => {
                let y = lex.number()? + if relative { cursor.y } else { 0.0 };
                out.push(RawCommand::Vertical(y));
                cursor.y = y;
            }
            b'C' => {
                let q1 = base + lex.point()?;
                let q2 = base + lex.point()?;
                let p = base + lex.point()?;
                out.push(RawCommand::Cubic(q1, q2, p));
                cursor = p;
            }
            b'S' => {
                let q2 = base + lex.point()?;
                let p = base + lex.point()?;
                out.push(RawCommand::SmoothCubic(q2, p));
                cursor = p;
            }
            b'Q' => {
                let q = base + lex.point()?;
                let p = base + lex.point()?;
                out.push(RawCommand::Quadratic(q, p));
                cursor = p;
            }
            b'T' => {
                let p = base + lex.point()?;
                out.push(RawCommand::SmoothQuadratic(p));
                cursor = p;
            }
            b'A' => {
                let rx = lex.number()?;
                let ry = lex.number()?;
                let rotation_deg = lex.number()?;
                let large_arc = lex.flag()?;
                let sweep = lex.flag()?;
                let end = base + lex.point()?;
                out.push(RawCommand::Arc {
                    rx,
                    ry,
                    rotation_deg,
                    large_arc,
                    sweep,
                    end,
                });
                cursor = end;
            }
            b'Z' => {
                out.push(RawCommand::Close);
                cursor = subpath_start;
            }
            _ => return Err(lex.error(1)),
        }
    }
    Ok(out)
}

impl Lexer<'_> {
    fn point(&mut self) -> Result<Point, SvgError> {
        let x = self.number()?;
        let y = self.number()?;
        Ok(Point::raw(x, y))
    }
}

/// Expand absolute raw commands down to the move/line/cubic/close alphabet.
///
/// Horizontal/vertical lines become plain lines, quadratics are elevated to
/// cubics, smooth variants reflect the previous control point (or collapse
/// onto the current point when no usable predecessor exists), and elliptical
/// arcs become chains of cubics. Zero-radius arcs degrade to lines per the
/// SVG specification, and zero-length arcs vanish.
pub fn expand_shorthand(commands: &[RawCommand]) -> Result<Vec<DrawCommand>, SvgError> {
    let mut out: Vec<DrawCommand> = Vec::with_capacity(commands.len());
    let mut cursor = Point::raw(0.0, 0.0);
    let mut subpath_start = cursor;
    let mut prev_cubic_ctrl: Option<Point> = None;
    let mut prev_quad_ctrl: Option<Point> = None;

    for cmd in commands {
        let mut next_cubic_ctrl = None;
        let mut next_quad_ctrl = None;
        match *cmd {
            RawCommand::Move(p) => {
                out.push(DrawCommand::move_to(p));
                cursor = p;
                subpath_start = p;
            }
            RawCommand::Line(p) => {
                out.push(DrawCommand::line_to(p));
                cursor = p;
            }
            RawCommand::Horizontal(x) => {
                let p = Point::raw(x, cursor.y);
                out.push(DrawCommand::line_to(p));
                cursor = p;
            }
            RawCommand::Vertical(y) => {
                let p = Point::raw(cursor.x, y);
                out.push(DrawCommand::line_to(p));
                cursor = p;
            }
            RawCommand::Cubic(q1, q2, p) => {
                out.push(DrawCommand::cubic_to(q1, q2, p));
                next_cubic_ctrl = Some(q2);
                cursor = p;
            }
            RawCommand::SmoothCubic(q2, p) => {
                let q1 = match prev_cubic_ctrl {
                    Some(prev) => Point::raw(2.0 * cursor.x - prev.x, 2.0 * cursor.y - prev.y),
                    None => cursor,
                };
                out.push(DrawCommand::cubic_to(q1, q2, p));
                next_cubic_ctrl = Some(q2);
                cursor = p;
            }
            RawCommand::Quadratic(q, p) => {
                push_elevated_quadratic(&mut out, cursor, q, p);
                next_quad_ctrl = Some(q);
                cursor = p;
            }
            RawCommand::SmoothQuadratic(p) => {
                let q = match prev_quad_ctrl {
                    Some(prev) => Point::raw(2.0 * cursor.x - prev.x, 2.0 * cursor.y - prev.y),
                    None => cursor,
                };
                push_elevated_quadratic(&mut out, cursor, q, p);
                next_quad_ctrl = Some(q);
                cursor = p;
            }
            RawCommand::Arc {
                rx,
                ry,
                rotation_deg,
                large_arc,
                sweep,
                end,
            } => {
                if cursor.dist(end) < 1e-12 {
                    // Zero-length arc: nothing to draw.
                } else if rx.abs() < 1e-12 || ry.abs() < 1e-12 {
                    out.push(DrawCommand::line_to(end));
                } else {
                    let arc = EllipticalArc::new(
                        cursor,
                        rx.abs(),
                        ry.abs(),
                        rotation_deg.to_radians(),
                        large_arc,
                        sweep,
                        end,
                    )?;
                    for c in arc_to_cubics(&arc)? {
                        out.push(DrawCommand::cubic_to(c.q1, c.q2, c.p2));
                    }
                }
                cursor = end;
            }
            RawCommand::Close => {
                out.push(DrawCommand::close());
                cursor = subpath_start;
            }
        }
        prev_cubic_ctrl = next_cubic_ctrl;
        prev_quad_ctrl = next_quad_ctrl;
    }
    debug_assert!(out
        .iter()
        .all(|c| matches!(c.kind, CmdKind::Move | CmdKind::Line | CmdKind::Cubic | CmdKind::Close)));
    Ok(out)
}

/// Degree elevation: a quadratic with control `q` equals the cubic with
/// controls at start + 2/3 (q - start) and end + 2/3 (q - end).
fn push_elevated_quadratic(out: &mut Vec<DrawCommand>, start: Point, q: Point, end: Point) {
    let c1 = start + (q - start).scale(2.0 / 3.0);
    let c2 = end + (q - end).scale(2.0 / 3.0);
    out.push(DrawCommand::cubic_to(c1, c2, end));
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn expand(d: &str) -> Vec<DrawCommand> {
        expand_shorthand(&parse_path_data(d).unwrap()).unwrap()
    }

    #[test]
    fn relative_to_absolute() {
        let cmds = expand("M1,1 l1,0");
        assert_eq!(cmds.len(), 2);
        assert_eq!(cmds[1].kind, CmdKind::Line);
        assert_eq!(cmds[1].end_point(), Point::raw(2.0, 1.0));
    }

    #[test]
    fn horizontal_after_move() {
        let cmds = expand("M1,1 H5");
        assert_eq!(cmds[1].kind, CmdKind::Line);
        assert_eq!(cmds[1].end_point(), Point::raw(5.0, 1.0));
    }

    #[test]
    fn quadratic_degree_elevation() {
        let cmds = expand("M0,0 Q3,0 3,3");
        assert_eq!(cmds[1].kind, CmdKind::Cubic);
        assert_eq!(cmds[1].ctrl1_point(), Point::raw(2.0, 0.0));
        assert_eq!(cmds[1].ctrl2_point(), Point::raw(3.0, 1.0));
        assert_eq!(cmds[1].end_point(), Point::raw(3.0, 3.0));
    }

    #[test]
    fn smooth_cubic_reflects_control() {
        let cmds = expand("M0,0 C1,1 2,2 3,3 S5,5 6,6");
        let s = cmds[2];
        assert_eq!(s.kind, CmdKind::Cubic);
        assert_eq!(s.ctrl1_point(), Point::raw(4.0, 4.0));
    }

    #[test]
    fn smooth_without_predecessor_uses_cursor() {
        let cmds = expand("M1,2 S5,5 6,6");
        assert_eq!(cmds[1].ctrl1_point(), Point::raw(1.0, 2.0));
    }

    #[test]
    fn elevated_quadratic_matches_original() {
        // The elevated cubic must trace the same curve as the quadratic.
        let start = Point::raw(0.0, 0.0);
        let q = Point::raw(3.0, 0.0);
        let end = Point::raw(3.0, 3.0);
        let cmds = expand("M0,0 Q3,0 3,3");
        let cubic = crate::geometry::CubicBezier::new(
            start,
            cmds[1].ctrl1_point(),
            cmds[1].ctrl2_point(),
            cmds[1].end_point(),
        );
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let u = 1.0 - t;
            let quad = Point::raw(
                u * u * start.x + 2.0 * u * t * q.x + t * t * end.x,
                u * u * start.y + 2.0 * u * t * q.y + t * t * end.y,
            );
            let cub = cubic.eval_unchecked(t);
            assert_relative_eq!(quad.x, cub.x, epsilon = 1e-9);
            assert_relative_eq!(quad.y, cub.y, epsilon = 1e-9);
        }
    }

    #[test]
    fn compressed_syntax() {
        // Missing separators before '.' and '-' are legal.
        let cmds = expand("M.5.5L1-2");
        assert_eq!(cmds[0].end_point(), Point::raw(0.5, 0.5));
        assert_eq!(cmds[1].end_point(), Point::raw(1.0, -2.0));
    }

    #[test]
    fn implicit_lineto_after_move() {
        let cmds = expand("M0,0 1,0 1,1");
        assert_eq!(cmds.len(), 3);
        assert_eq!(cmds[1].kind, CmdKind::Line);
        assert_eq!(cmds[2].kind, CmdKind::Line);
        assert_eq!(cmds[2].end_point(), Point::raw(1.0, 1.0));
    }

    #[test]
    fn arc_flags_run_together() {
        let cmds = expand("M1,0 A1,1 0 011,2");
        assert!(cmds.len() >= 2);
        assert_eq!(cmds.last().unwrap().end_point(), Point::raw(1.0, 2.0));
        assert!(cmds[1..].iter().all(|c| c.kind == CmdKind::Cubic));
    }

    #[test]
    fn bad_token_reported() {
        let err = parse_path_data("M0,0 L x").unwrap_err();
        match err {
            SvgError::PathData { token, .. } => assert_eq!(token, "x"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn scientific_notation() {
        let cmds = expand("M1e1,2E-1 L3.5e2,0");
        assert_eq!(cmds[0].end_point(), Point::raw(10.0, 0.2));
        assert_eq!(cmds[1].end_point(), Point::raw(350.0, 0.0));
    }

    #[test]
    fn relative_move_starts_from_cursor() {
        let cmds = expand("M1,1 l1,0 m2,2 l0,1");
        // After l1,0 the cursor is (2,1); m2,2 moves to (4,3).
        assert_eq!(cmds[2].end_point(), Point::raw(4.0, 3.0));
        assert_eq!(cmds[3].end_point(), Point::raw(4.0, 4.0));
    }
}
