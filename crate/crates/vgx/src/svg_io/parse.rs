//! XML-level SVG parsing: element walk, basic-shape conversion, transform
//! folding and fill inference. Output documents contain only
//! move/line/cubic/close commands with absolute coordinates, one path per
//! subpath.

use super::path_data::{expand_shorthand, parse_path_data, RawCommand};
use super::{CmdKind, DrawCommand, Fill, SvgDocument, SvgError, SvgPath};
use crate::geometry::Point;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// In strict mode unsupported elements and transforms are errors; in
    /// lenient mode they are skipped and counted in the report.
    pub strict: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ParseReport {
    pub warnings: Vec<String>,
    pub skipped_elements: usize,
}

/// Affine map restricted to axis-aligned scale and translation:
/// p -> (sx * x + tx, sy * y + ty).
#[derive(Debug, Clone, Copy)]
struct ScaleTranslate {
    sx: f64,
    sy: f64,
    tx: f64,
    ty: f64,
}

impl ScaleTranslate {
    const IDENTITY: ScaleTranslate = ScaleTranslate {
        sx: 1.0,
        sy: 1.0,
        tx: 0.0,
        ty: 0.0,
    };

    fn apply(&self, p: Point) -> Point {
        Point::raw(self.sx * p.x + self.tx, self.sy * p.y + self.ty)
    }

    /// self after child: apply child first, then self.
    fn then(&self, child: ScaleTranslate) -> ScaleTranslate {
        ScaleTranslate {
            sx: self.sx * child.sx,
            sy: self.sy * child.sy,
            tx: self.sx * child.tx + self.tx,
            ty: self.sy * child.ty + self.ty,
        }
    }
}

/// Inherited presentation state while walking groups.
#[derive(Debug, Clone, Copy)]
struct Inherited {
    transform: ScaleTranslate,
    fill: Fill,
    fill_set: bool,
}

/// Parse SVG text in lenient mode, discarding the report.
pub fn parse_svg(text: &str) -> Result<SvgDocument, SvgError> {
    parse_svg_with(text, ParseOptions::default()).map(|(doc, _)| doc)
}

/// Parse SVG text, returning the document and a report of skipped content.
pub fn parse_svg_with(
    text: &str,
    options: ParseOptions,
) -> Result<(SvgDocument, ParseReport), SvgError> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);

    let mut report = ParseReport::default();
    let mut doc = SvgDocument::new((0.0, 0.0));
    let mut saw_svg = false;
    let mut stack: Vec<Inherited> = vec![Inherited {
        transform: ScaleTranslate::IDENTITY,
        fill: Fill::Outline,
        fill_set: false,
    }];
    // Depth of an element subtree we are skipping entirely (defs, style...).
    let mut skip_depth = 0usize;
    let mut depth = 0usize;

    loop {
        let event = reader.read_event().map_err(|e| xml_error(text, &reader, e))?;
        match event {
            Event::Start(e) => {
                depth += 1;
                let name = local_name(&e);
                if skip_depth > 0 || is_skipped_container(&name) {
                    if skip_depth == 0 {
                        note_skip(&mut report, &options, &name)?;
                    }
                    skip_depth += 1;
                    continue;
                }
                match name.as_str() {
                    "svg" => {
                        saw_svg = true;
                        let (viewbox, shift) = read_viewbox(&e, &options, &mut report)?;
                        doc.viewbox = viewbox;
                        let top = *stack.last().unwrap();
                        stack.push(Inherited {
                            transform: top.transform.then(shift),
                            ..top
                        });
                    }
                    "g" => {
                        let top = *stack.last().unwrap();
                        let child = read_group_state(&e, top, &options, &mut report)?;
                        match child {
                            Some(state) => stack.push(state),
                            None => {
                                // Unsupported transform in lenient mode:
                                // drop the whole subtree.
                                skip_depth += 1;
                            }
                        }
                    }
                    other => {
                        // A drawable element opened as a container; handle its
                        // own geometry then ignore children.
                        let top = *stack.last().unwrap();
                        handle_element(other, &e, top, &mut doc, &options, &mut report)?;
                        stack.push(top);
                    }
                }
            }
            Event::Empty(e) => {
                let name = local_name(&e);
                if skip_depth > 0 {
                    continue;
                }
                let top = *stack.last().unwrap();
                handle_element(&name, &e, top, &mut doc, &options, &mut report)?;
            }
            Event::End(_) => {
                depth = depth.saturating_sub(1);
                if skip_depth > 0 {
                    skip_depth -= 1;
                } else if stack.len() > 1 {
                    stack.pop();
                }
            }
            Event::Eof => {
                if depth != 0 {
                    return Err(xml_error(
                        text,
                        &reader,
                        quick_xml::Error::IllFormed(quick_xml::errors::IllFormedError::MissingEndTag(
                            String::new(),
                        )),
                    ));
                }
                break;
            }
            _ => {}
        }
    }

    if !saw_svg {
        return Err(SvgError::MissingViewbox);
    }
    Ok((doc, report))
}

fn xml_error(text: &str, reader: &Reader<&[u8]>, e: quick_xml::Error) -> SvgError {
    let pos = reader.buffer_position() as usize;
    let before = &text.as_bytes()[..pos.min(text.len())];
    let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
    let column = before.len() - before.iter().rposition(|&c| c == b'\n').map_or(0, |i| i + 1) + 1;
    SvgError::Xml {
        line,
        column,
        message: e.to_string(),
    }
}

fn local_name(e: &BytesStart) -> String {
    let name = e.name();
    let local = name.local_name();
    String::from_utf8_lossy(local.as_ref()).into_owned()
}

fn is_skipped_container(name: &str) -> bool {
    matches!(
        name,
        "defs" | "style" | "title" | "desc" | "metadata" | "symbol" | "clipPath" | "mask" | "marker"
    )
}

fn note_skip(report: &mut ParseReport, options: &ParseOptions, name: &str) -> Result<(), SvgError> {
    if options.strict && !matches!(name, "title" | "desc" | "metadata") {
        return Err(SvgError::UnsupportedElement(name.to_string()));
    }
    report.skipped_elements += 1;
    report.warnings.push(format!("skipped element <{name}>"));
    Ok(())
}

fn attr(e: &BytesStart, name: &str) -> Option<String> {
    e.attributes().flatten().find_map(|a| {
        let key = a.key.local_name();
        (key.as_ref() == name.as_bytes())
            .then(|| String::from_utf8_lossy(&a.value).into_owned())
    })
}

fn number_attr(e: &BytesStart, name: &str) -> Result<Option<f64>, SvgError> {
    match attr(e, name) {
        None => Ok(None),
        Some(v) => {
            let trimmed = v.trim().trim_end_matches("px");
            trimmed
                .parse::<f64>()
                .map(Some)
                .map_err(|_| SvgError::Attribute {
                    name: name.to_string(),
                    value: v,
                })
        }
    }
}

fn number_attr_or(e: &BytesStart, name: &str, default: f64) -> Result<f64, SvgError> {
    Ok(number_attr(e, name)?.unwrap_or(default))
}

/// Root viewbox: `viewBox` wins, else width/height, else a lenient default.
/// A nonzero min corner becomes a translation folded into the content.
fn read_viewbox(
    e: &BytesStart,
    options: &ParseOptions,
    report: &mut ParseReport,
) -> Result<((f64, f64), ScaleTranslate), SvgError> {
    if let Some(vb) = attr(e, "viewBox") {
        let parts: Vec<f64> = vb
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| SvgError::MissingViewbox)?;
        if parts.len() != 4 || parts[2] <= 0.0 || parts[3] <= 0.0 {
            return Err(SvgError::MissingViewbox);
        }
        let shift = ScaleTranslate {
            sx: 1.0,
            sy: 1.0,
            tx: -parts[0],
            ty: -parts[1],
        };
        return Ok(((parts[2], parts[3]), shift));
    }
    let w = number_attr(e, "width")?;
    let h = number_attr(e, "height")?;
    if let (Some(w), Some(h)) = (w, h) {
        if w > 0.0 && h > 0.0 {
            return Ok(((w, h), ScaleTranslate::IDENTITY));
        }
    }
    if options.strict {
        return Err(SvgError::MissingViewbox);
    }
    report
        .warnings
        .push("missing viewBox; assuming 100 x 100".into());
    Ok(((100.0, 100.0), ScaleTranslate::IDENTITY))
}

fn read_group_state(
    e: &BytesStart,
    parent: Inherited,
    options: &ParseOptions,
    report: &mut ParseReport,
) -> Result<Option<Inherited>, SvgError> {
    let transform = match read_transform(e, options)? {
        Some(t) => parent.transform.then(t),
        None => {
            report
                .warnings
                .push("skipped subtree with unsupported transform".into());
            report.skipped_elements += 1;
            return Ok(None);
        }
    };
    let (fill, fill_set) = match read_fill(e) {
        Some(f) => (f, true),
        None => (parent.fill, parent.fill_set),
    };
    Ok(Some(Inherited {
        transform,
        fill,
        fill_set,
    }))
}

/// Parse a transform list, folding translate/scale (and axis-aligned
/// matrices) into a [`ScaleTranslate`]. Returns `None` in lenient mode when
/// the transform cannot be represented.
fn read_transform(e: &BytesStart, options: &ParseOptions) -> Result<Option<ScaleTranslate>, SvgError> {
    let Some(text) = attr(e, "transform") else {
        return Ok(Some(ScaleTranslate::IDENTITY));
    };
    let mut total = ScaleTranslate::IDENTITY;
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(open) = rest.find('(') else {
            return unsupported(&text, options);
        };
        let name = rest[..open].trim().to_string();
        let Some(close) = rest.find(')') else {
            return unsupported(&text, options);
        };
        let args: Vec<f64> = rest[open + 1..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .filter_map(|s| s.parse().ok())
            .collect();
        let step = match (name.as_str(), args.as_slice()) {
            ("translate", [tx]) => ScaleTranslate {
                sx: 1.0,
                sy: 1.0,
                tx: *tx,
                ty: 0.0,
            },
            ("translate", [tx, ty]) => ScaleTranslate {
                sx: 1.0,
                sy: 1.0,
                tx: *tx,
                ty: *ty,
            },
            ("scale", [s]) => ScaleTranslate {
                sx: *s,
                sy: *s,
                tx: 0.0,
                ty: 0.0,
            },
            ("scale", [sx, sy]) => ScaleTranslate {
                sx: *sx,
                sy: *sy,
                tx: 0.0,
                ty: 0.0,
            },
            ("matrix", [a, b, c, d, e_, f]) if *b == 0.0 && *c == 0.0 => ScaleTranslate {
                sx: *a,
                sy: *d,
                tx: *e_,
                ty: *f,
            },
            _ => return unsupported(&text, options),
        };
        total = total.then(step);
        rest = rest[close + 1..].trim_start();
    }
    Ok(Some(total))
}

fn unsupported(text: &str, options: &ParseOptions) -> Result<Option<ScaleTranslate>, SvgError> {
    if options.strict {
        Err(SvgError::UnsupportedTransform(text.to_string()))
    } else {
        Ok(None)
    }
}

/// Fill inference from presentation attributes: `fill="none"` (or a
/// stroke-only style) maps to outline, anything painted maps to filled.
/// Erase is never inferred from plain SVG input.
fn read_fill(e: &BytesStart) -> Option<Fill> {
    let fill = attr(e, "fill");
    let stroke = attr(e, "stroke");
    let style = attr(e, "style").unwrap_or_default();
    let style_fill_none = style.replace(' ', "").contains("fill:none");
    match fill.as_deref() {
        Some("none") => Some(Fill::Outline),
        Some(_) => Some(Fill::Filled),
        None if style_fill_none => Some(Fill::Outline),
        None if stroke.is_some() => Some(Fill::Outline),
        None => None,
    }
}

fn handle_element(
    name: &str,
    e: &BytesStart,
    inherited: Inherited,
    doc: &mut SvgDocument,
    options: &ParseOptions,
    report: &mut ParseReport,
) -> Result<(), SvgError> {
    let raw = match element_to_raw_commands(name, e)? {
        Some(raw) => raw,
        None => {
            if !matches!(name, "svg" | "g") {
                note_skip(report, options, name)?;
            }
            return Ok(());
        }
    };
    let transform = match read_transform(e, options)? {
        Some(t) => inherited.transform.then(t),
        None => {
            report
                .warnings
                .push(format!("skipped <{name}> with unsupported transform"));
            report.skipped_elements += 1;
            return Ok(());
        }
    };
    let fill = match read_fill(e) {
        Some(f) => f,
        None if inherited.fill_set => inherited.fill,
        // SVG paints elements black when no fill is given anywhere.
        None => Fill::Filled,
    };
    let commands = expand_shorthand(&raw)?;
    let transformed: Vec<DrawCommand> = commands
        .iter()
        .map(|c| c.map_points(|p| transform.apply(p)))
        .collect();
    for subpath in split_subpaths(&transformed) {
        doc.paths.push(SvgPath::new(subpath, fill));
    }
    Ok(())
}

/// Split a command list at move boundaries; each subpath becomes its own
/// path. Subpaths with no drawing commands are dropped.
fn split_subpaths(commands: &[DrawCommand]) -> Vec<Vec<DrawCommand>> {
    let mut out: Vec<Vec<DrawCommand>> = Vec::new();
    let mut current: Vec<DrawCommand> = Vec::new();
    let mut cursor: Option<Point> = None;
    for cmd in commands {
        if cmd.kind == CmdKind::Move {
            if current.iter().any(|c| c.is_drawing()) {
                out.push(std::mem::take(&mut current));
            } else {
                current.clear();
            }
            current.push(*cmd);
            cursor = Some(cmd.end_point());
        } else {
            if current.is_empty() {
                // Drawing before any move: anchor at the current position.
                current.push(DrawCommand::move_to(cursor.unwrap_or(Point::raw(0.0, 0.0))));
            }
            current.push(*cmd);
            if cmd.kind != CmdKind::Close {
                cursor = Some(cmd.end_point());
            }
        }
    }
    if current.iter().any(|c| c.is_drawing()) {
        out.push(current);
    }
    out
}

/// Convert one element into raw commands, per the basic-shape table:
/// rectangles and polygons become line sequences, circles and ellipses
/// become four elliptical arcs.
fn element_to_raw_commands(name: &str, e: &BytesStart) -> Result<Option<Vec<RawCommand>>, SvgError> {
    let raw = match name {
        "path" => {
            let Some(d) = attr(e, "d") else {
                return Ok(Some(Vec::new()));
            };
            parse_path_data(&d)?
        }
        "rect" => {
            let x = number_attr_or(e, "x", 0.0)?;
            let y = number_attr_or(e, "y", 0.0)?;
            let w = number_attr_or(e, "width", 0.0)?;
            let h = number_attr_or(e, "height", 0.0)?;
            if w <= 0.0 || h <= 0.0 {
                return Ok(Some(Vec::new()));
            }
            vec![
                RawCommand::Move(Point::raw(x, y)),
                RawCommand::Line(Point::raw(x + w, y)),
                RawCommand::Line(Point::raw(x + w, y + h)),
                RawCommand::Line(Point::raw(x, y + h)),
                RawCommand::Line(Point::raw(x, y)),
                RawCommand::Close,
            ]
        }
        "circle" => {
            let cx = number_attr_or(e, "cx", 0.0)?;
            let cy = number_attr_or(e, "cy", 0.0)?;
            let r = number_attr_or(e, "r", 0.0)?;
            if r <= 0.0 {
                return Ok(Some(Vec::new()));
            }
            ellipse_commands(cx, cy, r, r)
        }
        "ellipse" => {
            let cx = number_attr_or(e, "cx", 0.0)?;
            let cy = number_attr_or(e, "cy", 0.0)?;
            let rx = number_attr_or(e, "rx", 0.0)?;
            let ry = number_attr_or(e, "ry", 0.0)?;
            if rx <= 0.0 || ry <= 0.0 {
                return Ok(Some(Vec::new()));
            }
            ellipse_commands(cx, cy, rx, ry)
        }
        "line" => {
            let x1 = number_attr_or(e, "x1", 0.0)?;
            let y1 = number_attr_or(e, "y1", 0.0)?;
            let x2 = number_attr_or(e, "x2", 0.0)?;
            let y2 = number_attr_or(e, "y2", 0.0)?;
            vec![
                RawCommand::Move(Point::raw(x1, y1)),
                RawCommand::Line(Point::raw(x2, y2)),
            ]
        }
        "polyline" | "polygon" => {
            let Some(points) = attr(e, "points") else {
                return Ok(Some(Vec::new()));
            };
            let nums: Vec<f64> = points
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| SvgError::Attribute {
                    name: "points".into(),
                    value: points.clone(),
                })?;
            let mut cmds = Vec::new();
            for (i, pair) in nums.chunks_exact(2).enumerate() {
                let p = Point::raw(pair[0], pair[1]);
                cmds.push(if i == 0 {
                    RawCommand::Move(p)
                } else {
                    RawCommand::Line(p)
                });
            }
            if name == "polygon" && cmds.len() > 1 {
                cmds.push(RawCommand::Close);
            }
            cmds
        }
        _ => return Ok(None),
    };
    Ok(Some(raw))
}

/// Circle/ellipse as four quarter arcs starting at the topmost point,
/// sweeping clockwise on screen.
fn ellipse_commands(cx: f64, cy: f64, rx: f64, ry: f64) -> Vec<RawCommand> {
    let arc = |end: Point| RawCommand::Arc {
        rx,
        ry,
        rotation_deg: 0.0,
        large_arc: false,
        sweep: true,
        end,
    };
    vec![
        RawCommand::Move(Point::raw(cx, cy - ry)),
        arc(Point::raw(cx + rx, cy)),
        arc(Point::raw(cx, cy + ry)),
        arc(Point::raw(cx - rx, cy)),
        arc(Point::raw(cx, cy - ry)),
        RawCommand::Close,
    ]
}
