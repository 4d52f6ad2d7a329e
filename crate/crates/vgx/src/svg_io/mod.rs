//! SVG input/output: the six-command geometric IR, a parser for a practical
//! SVG 1.1 subset, and serialization back to SVG text including the
//! orientation-based fill/erase export.

mod parse;
mod path_data;
mod serialize;

pub use parse::{parse_svg, parse_svg_with, ParseOptions, ParseReport};
pub use path_data::{expand_shorthand, parse_path_data, RawCommand};
pub use serialize::{export_with_fill, serialize_svg};

use crate::geometry::Point;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("XML error at line {line}, column {column}: {message}")]
    Xml {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unparseable path data near '{token}' (byte {position})")]
    PathData { token: String, position: usize },
    #[error("unsupported element <{0}>")]
    UnsupportedElement(String),
    #[error("unsupported transform '{0}'")]
    UnsupportedTransform(String),
    #[error("missing or invalid viewBox")]
    MissingViewbox,
    #[error("invalid attribute {name}='{value}'")]
    Attribute { name: String, value: String },
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeomError),
}

/// Command kinds of the six-letter alphabet. `Sos`/`Eos` frame sequences in
/// tensor form and never appear in parsed documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmdKind {
    Sos = 0,
    Move = 1,
    Line = 2,
    Cubic = 3,
    Close = 4,
    Eos = 5,
}

impl CmdKind {
    pub fn from_index(i: usize) -> Option<CmdKind> {
        match i {
            0 => Some(CmdKind::Sos),
            1 => Some(CmdKind::Move),
            2 => Some(CmdKind::Line),
            3 => Some(CmdKind::Cubic),
            4 => Some(CmdKind::Close),
            5 => Some(CmdKind::Eos),
            _ => None,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            CmdKind::Sos => "<SOS>",
            CmdKind::Move => "m",
            CmdKind::Line => "l",
            CmdKind::Cubic => "c",
            CmdKind::Close => "z",
            CmdKind::Eos => "<EOS>",
        }
    }

    /// Which of the six argument slots (qx1, qy1, qx2, qy2, x2, y2) the
    /// command uses.
    pub fn arg_mask(self) -> [bool; 6] {
        match self {
            CmdKind::Move | CmdKind::Line => [false, false, false, false, true, true],
            CmdKind::Cubic => [true; 6],
            CmdKind::Sos | CmdKind::Close | CmdKind::Eos => [false; 6],
        }
    }
}

/// Unused argument slots hold this sentinel.
pub const UNUSED_ARG: f64 = -1.0;

/// One draw command with the fixed six-slot argument list
/// (qx1, qy1, qx2, qy2, x2, y2); unused slots hold [`UNUSED_ARG`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrawCommand {
    pub kind: CmdKind,
    pub args: [f64; 6],
}

impl DrawCommand {
    pub fn move_to(p: Point) -> Self {
        DrawCommand {
            kind: CmdKind::Move,
            args: [UNUSED_ARG, UNUSED_ARG, UNUSED_ARG, UNUSED_ARG, p.x, p.y],
        }
    }

    pub fn line_to(p: Point) -> Self {
        DrawCommand {
            kind: CmdKind::Line,
            args: [UNUSED_ARG, UNUSED_ARG, UNUSED_ARG, UNUSED_ARG, p.x, p.y],
        }
    }

    pub fn cubic_to(q1: Point, q2: Point, p: Point) -> Self {
        DrawCommand {
            kind: CmdKind::Cubic,
            args: [q1.x, q1.y, q2.x, q2.y, p.x, p.y],
        }
    }

    pub fn close() -> Self {
        DrawCommand {
            kind: CmdKind::Close,
            args: [UNUSED_ARG; 6],
        }
    }

    pub fn ctrl1_point(&self) -> Point {
        Point::raw(self.args[0], self.args[1])
    }

    pub fn ctrl2_point(&self) -> Point {
        Point::raw(self.args[2], self.args[3])
    }

    pub fn end_point(&self) -> Point {
        Point::raw(self.args[4], self.args[5])
    }

    pub fn is_drawing(&self) -> bool {
        matches!(self.kind, CmdKind::Line | CmdKind::Cubic | CmdKind::Close)
    }

    /// Apply `f` to every used coordinate pair.
    pub fn map_points(&self, mut f: impl FnMut(Point) -> Point) -> DrawCommand {
        let mut out = *self;
        let mask = self.kind.arg_mask();
        for k in (0..6).step_by(2) {
            if mask[k] {
                let p = f(Point::raw(self.args[k], self.args[k + 1]));
                out.args[k] = p.x;
                out.args[k + 1] = p.y;
            }
        }
        out
    }
}

/// Per-path fill attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Fill {
    #[default]
    Outline = 0,
    Filled = 1,
    Erase = 2,
}

impl Fill {
    pub fn from_index(i: usize) -> Option<Fill> {
        match i {
            0 => Some(Fill::Outline),
            1 => Some(Fill::Filled),
            2 => Some(Fill::Erase),
            _ => None,
        }
    }
}

/// A single path: an ordered command sequence plus fill and visibility.
#[derive(Debug, Clone, PartialEq)]
pub struct SvgPath {
    pub commands: Vec<DrawCommand>,
    pub fill: Fill,
    pub visible: bool,
}

impl SvgPath {
    pub fn new(commands: Vec<DrawCommand>, fill: Fill) -> Self {
        SvgPath {
            commands,
            fill,
            visible: true,
        }
    }

    /// Start position: target of the leading move command.
    pub fn start_point(&self) -> Option<Point> {
        self.commands
            .iter()
            .find(|c| c.kind == CmdKind::Move)
            .map(|c| c.end_point())
    }

    /// End position of the last drawing command.
    pub fn end_point(&self) -> Option<Point> {
        let mut cursor = None;
        let mut subpath_start = None;
        for c in &self.commands {
            match c.kind {
                CmdKind::Move => {
                    cursor = Some(c.end_point());
                    subpath_start = cursor;
                }
                CmdKind::Line | CmdKind::Cubic => cursor = Some(c.end_point()),
                CmdKind::Close => cursor = subpath_start,
                _ => {}
            }
        }
        cursor
    }

    pub fn has_drawing_commands(&self) -> bool {
        self.commands.iter().any(|c| c.is_drawing())
    }

    /// Whether the path forms a loop: explicit `z` or coincident endpoints.
    pub fn is_closed(&self) -> bool {
        if self.commands.iter().any(|c| c.kind == CmdKind::Close) {
            return true;
        }
        match (self.start_point(), self.end_point()) {
            (Some(a), Some(b)) => a.dist(b) < 1e-6,
            _ => false,
        }
    }

    /// Apply `f` to every coordinate of every command.
    pub fn map_points(&self, mut f: impl FnMut(Point) -> Point) -> SvgPath {
        SvgPath {
            commands: self.commands.iter().map(|c| c.map_points(&mut f)).collect(),
            fill: self.fill,
            visible: self.visible,
        }
    }

    /// Reverse traversal direction. Control points of cubic segments swap;
    /// a trailing `z` is preserved.
    pub fn reversed(&self) -> SvgPath {
        let had_close = self.commands.iter().any(|c| c.kind == CmdKind::Close);
        // Collect (segment, start, cmd) triples in forward order.
        let mut cursor = Point::raw(0.0, 0.0);
        let mut subpath_start = cursor;
        let mut segs: Vec<(Point, DrawCommand)> = Vec::new();
        for c in &self.commands {
            match c.kind {
                CmdKind::Move => {
                    cursor = c.end_point();
                    subpath_start = cursor;
                }
                CmdKind::Line | CmdKind::Cubic => {
                    segs.push((cursor, *c));
                    cursor = c.end_point();
                }
                CmdKind::Close => {
                    if cursor.dist(subpath_start) > 1e-9 {
                        segs.push((cursor, DrawCommand::line_to(subpath_start)));
                    }
                    cursor = subpath_start;
                }
                _ => {}
            }
        }
        let mut commands = Vec::with_capacity(segs.len() + 2);
        let new_start = segs.last().map(|(_, c)| c.end_point()).unwrap_or(cursor);
        commands.push(DrawCommand::move_to(new_start));
        for (start, cmd) in segs.iter().rev() {
            match cmd.kind {
                CmdKind::Line => commands.push(DrawCommand::line_to(*start)),
                CmdKind::Cubic => commands.push(DrawCommand::cubic_to(
                    cmd.ctrl2_point(),
                    cmd.ctrl1_point(),
                    *start,
                )),
                _ => unreachable!(),
            }
        }
        if had_close {
            commands.push(DrawCommand::close());
        }
        SvgPath {
            commands,
            fill: self.fill,
            visible: self.visible,
        }
    }

    /// Signed area of the traced outline (shoelace over a fine polyline).
    /// Positive means counterclockwise under the y-down convention used here.
    pub fn signed_area(&self) -> f64 {
        let segments = crate::geometry::segments_of_path(self);
        let mut area = 0.0;
        for seg in &segments {
            let steps = match seg {
                crate::geometry::Segment::Line(..) => 1,
                crate::geometry::Segment::Cubic(_) => 16,
            };
            let mut prev = seg.start();
            for k in 1..=steps {
                let p = seg.eval(k as f64 / steps as f64);
                area += prev.cross(p);
                prev = p;
            }
        }
        // Close the polygon if the path is open.
        if let (Some(first), Some(last)) = (self.start_point(), self.end_point()) {
            if first.dist(last) > 1e-9 {
                area += last.cross(first);
            }
        }
        area * 0.5
    }
}

/// A document: a set of paths and the viewbox dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct SvgDocument {
    pub paths: Vec<SvgPath>,
    pub viewbox: (f64, f64),
}

impl SvgDocument {
    pub fn new(viewbox: (f64, f64)) -> Self {
        SvgDocument {
            paths: Vec::new(),
            viewbox,
        }
    }

    /// Apply `f` to every coordinate in the document.
    pub fn map_points(&self, mut f: impl FnMut(Point) -> Point) -> SvgDocument {
        SvgDocument {
            paths: self.paths.iter().map(|p| p.map_points(&mut f)).collect(),
            viewbox: self.viewbox,
        }
    }
}
