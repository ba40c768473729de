//! Static SVG plot of a barcode: one horizontal segment per bar, grouped by
//! degree. Infinite ends run to the plot border and end in an arrow.

use std::fmt::Write;

use crate::barcode::Barcode;
use crate::interval::ExtValue;

const WIDTH: f64 = 640.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const ROW: f64 = 12.0;
const GAP: f64 = 18.0;
const TOP: f64 = 20.0;

pub fn barcode_svg(b: &Barcode) -> String {
    let finite: Vec<f64> = b
        .iter()
        .flat_map(|(_, i, _)| [&i.lower, &i.upper])
        .filter(|x| x.is_finite())
        .map(ExtValue::to_f64)
        .collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if finite.is_empty() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 1.0, hi + 1.0)
    } else {
        let pad = (hi - lo) * 0.05;
        (lo - pad, hi + pad)
    };
    let x = |v: &ExtValue| match v {
        ExtValue::NegInf => LEFT,
        ExtValue::PosInf => WIDTH - RIGHT,
        _ => LEFT + (v.to_f64() - lo) / (hi - lo) * (WIDTH - LEFT - RIGHT),
    };

    let mut body = String::new();
    let mut y = TOP;
    for d in b.degrees() {
        y += GAP;
        writeln!(body, r#"<text x="8" y="{:.1}" font-size="12">H{d}</text>"#, y - 4.0).unwrap();
        for (_, iv, m) in b.iter().filter(|(deg, _, _)| *deg == d) {
            for _ in 0..m {
                y += ROW;
                let (x0, x1) = (x(&iv.lower), x(&iv.upper));
                writeln!(
                    body,
                    r#"<line x1="{x0:.1}" y1="{y:.1}" x2="{x1:.1}" y2="{y:.1}" stroke="black" stroke-width="3"/>"#
                )
                .unwrap();
                if !iv.lower.is_finite() {
                    writeln!(body, r#"<path d="M{:.1},{:.1} l6,-4 v8 z"/>"#, x0, y).unwrap();
                }
                if !iv.upper.is_finite() {
                    writeln!(body, r#"<path d="M{:.1},{:.1} l-6,-4 v8 z"/>"#, x1, y).unwrap();
                }
            }
        }
    }
    let height = y + 2.0 * GAP;
    let axis = height - GAP;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height:.0}" viewBox="0 0 {WIDTH} {height:.0}">"#
    )
    .unwrap();
    out.push_str(&body);
    writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{axis:.1}" x2="{:.1}" y2="{axis:.1}" stroke="gray"/>"#,
        WIDTH - RIGHT
    )
    .unwrap();
    for (v, anchor) in [(lo, "start"), (hi, "end")] {
        let px = LEFT + (v - lo) / (hi - lo) * (WIDTH - LEFT - RIGHT);
        writeln!(
            out,
            r#"<text x="{px:.1}" y="{:.1}" font-size="10" text-anchor="{anchor}">{v:.3}</text>"#,
            axis + 12.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
