//! Grid pictures of a canon: one row per entry, one column per residue.

use std::fmt::Write as _;

use crate::document::CanonDocument;

const CELL: usize = 12;

fn glyph(m: u32) -> char {
    match m {
        0 => '.',
        1 => '#',
        2..=9 => char::from_digit(m, 10).unwrap(),
        _ => '+',
    }
}

/// Multiplicity of each residue in the row of entry `b`.
fn row_counts(doc: &CanonDocument, b: usize) -> Vec<u32> {
    let mut row = vec![0u32; doc.n];
    for a in doc.tile.iter() {
        row[(a + b) % doc.n] += 1;
    }
    row
}

fn totals(doc: &CanonDocument) -> Vec<u32> {
    let mut total = vec![0u32; doc.n];
    for b in doc.entries.iter() {
        for (t, c) in row_counts(doc, b).into_iter().enumerate() {
            total[t] += c;
        }
    }
    total
}

/// Text grid. The first entry is the bottom row; when some residue is hit
/// more than once a total row follows under a rule.
pub fn text(doc: &CanonDocument) -> String {
    let mut out = String::new();
    for b in doc.entries.iter().collect::<Vec<_>>().into_iter().rev() {
        out.extend(row_counts(doc, b).into_iter().map(glyph));
        out.push('\n');
    }
    let total = totals(doc);
    if total.iter().any(|&m| m > 1) {
        out.push_str(&"-".repeat(doc.n));
        out.push('\n');
        out.extend(total.into_iter().map(glyph));
        out.push('\n');
    }
    out
}

/// SVG grid with the origin at the bottom left.
pub fn svg(doc: &CanonDocument) -> String {
    let rows: Vec<usize> = doc.entries.iter().collect();
    let total = totals(doc);
    let with_total = total.iter().any(|&m| m > 1);
    let height_cells = rows.len() + if with_total { 2 } else { 0 };
    let (w, h) = (doc.n * CELL, height_cells * CELL);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);
    let top_of = |row: usize| h - (row + 1) * CELL;
    let cell = |s: &mut String, x: usize, y: usize, m: u32, shade: &str| {
        let _ =
            writeln!(s, r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{shade}" stroke="#cccccc"/>"##);
        if m > 1 {
            let _ = writeln!(
                s,
                r##"<text x="{}" y="{}" font-size="9" text-anchor="middle" fill="#ffffff">{}</text>"##,
                x + CELL / 2,
                y + CELL - 3,
                glyph(m)
            );
        }
    };
    let offset = if with_total { 2 } else { 0 };
    for (i, &b) in rows.iter().enumerate() {
        let y = top_of(i + offset);
        for (t, m) in row_counts(doc, b).into_iter().enumerate() {
            let shade = if m == 0 { "#ffffff" } else { "#000000" };
            cell(&mut s, t * CELL, y, m, shade);
        }
    }
    if with_total {
        for (t, &m) in total.iter().enumerate() {
            let shade = match m {
                0 => "#ffffff",
                1 => "#000000",
                _ => "#b22222",
            };
            cell(&mut s, t * CELL, top_of(0), m, shade);
        }
    }
    s.push_str("</svg>\n");
    s
}
