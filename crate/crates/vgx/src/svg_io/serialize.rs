//! SVG text output. Plain serialization preserves commands exactly;
//! fill-aware export groups filled and erasing rings into one path element
//! with clockwise/counterclockwise orientation under the non-zero fill rule.

use super::{CmdKind, DrawCommand, Fill, SvgDocument, SvgPath};

/// Serialize a document to SVG 1.1 text.
///
/// Documents without erase paths round-trip through [`super::parse_svg`]
/// with identical command kinds and coordinates within the 3-decimal output
/// format. Documents carrying erase paths cannot be expressed per-element in
/// plain SVG, so they are delegated to [`export_with_fill`].
pub fn serialize_svg(doc: &SvgDocument) -> String {
    if doc.paths.iter().any(|p| p.fill == Fill::Erase) {
        return export_with_fill(doc);
    }
    let mut out = header(doc);
    for path in &doc.paths {
        let d = path_data(&path.commands);
        match path.fill {
            Fill::Outline => push_outline(&mut out, &d),
            _ => push_filled(&mut out, &d),
        }
    }
    out.push_str("</svg>");
    out
}

/// Serialize with the fill attribute realized through ring orientation:
/// filled rings are written clockwise (negative shoelace area under y-down)
/// and erase rings counterclockwise, all merged into a single path element
/// so the non-zero fill rule carves the erased regions out. Outline paths
/// stay as individual stroked elements.
pub fn export_with_fill(doc: &SvgDocument) -> String {
    let mut out = header(doc);
    let mut grouped = String::new();
    for path in &doc.paths {
        match path.fill {
            Fill::Outline => {
                let d = path_data(&path.commands);
                push_outline(&mut out, &d);
            }
            Fill::Filled => {
                let oriented = orient(path, true);
                if !grouped.is_empty() {
                    grouped.push(' ');
                }
                grouped.push_str(&path_data(&oriented.commands));
            }
            Fill::Erase => {
                let oriented = orient(path, false);
                if !grouped.is_empty() {
                    grouped.push(' ');
                }
                grouped.push_str(&path_data(&oriented.commands));
            }
        }
    }
    if !grouped.is_empty() {
        push_filled(&mut out, &grouped);
    }
    out.push_str("</svg>");
    out
}

/// Clockwise (negative area) for fills, counterclockwise for erases.
fn orient(path: &SvgPath, clockwise: bool) -> SvgPath {
    let area = path.signed_area();
    let needs_flip = if clockwise { area > 0.0 } else { area < 0.0 };
    if needs_flip {
        path.reversed()
    } else {
        path.clone()
    }
}

fn header(doc: &SvgDocument) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">",
        trim_float(doc.viewbox.0),
        trim_float(doc.viewbox.1)
    )
}

fn push_outline(out: &mut String, d: &str) {
    out.push_str(&format!(
        "<path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
    ));
}

fn push_filled(out: &mut String, d: &str) {
    out.push_str(&format!("<path d=\"{d}\" fill=\"black\" fill-rule=\"nonzero\"/>"));
}

fn trim_float(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x}")
    }
}

fn coord(x: f64) -> String {
    format!("{x:.3}")
}

/// Emit path data with absolute letters and fixed 3-decimal coordinates.
pub(crate) fn path_data(commands: &[DrawCommand]) -> String {
    let mut d = String::new();
    for (i, c) in commands.iter().enumerate() {
        if i > 0 {
            d.push(' ');
        }
        match c.kind {
            CmdKind::Move => {
                d.push_str(&format!("M{},{}", coord(c.args[4]), coord(c.args[5])));
            }
            CmdKind::Line => {
                d.push_str(&format!("L{},{}", coord(c.args[4]), coord(c.args[5])));
            }
            CmdKind::Cubic => {
                d.push_str(&format!(
                    "C{},{} {},{} {},{}",
                    coord(c.args[0]),
                    coord(c.args[1]),
                    coord(c.args[2]),
                    coord(c.args[3]),
                    coord(c.args[4]),
                    coord(c.args[5])
                ));
            }
            CmdKind::Close => d.push('z'),
            CmdKind::Sos | CmdKind::Eos => {}
        }
    }
    d
}
