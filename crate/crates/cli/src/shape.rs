use std::fmt::Write as _;

use fatgin::{
    build_staircase, generator_table, limiting_shape, newton_polytope, polytope_area,
    scaled_polytope, Configuration,
};
use num_traits::ToPrimitive;

use crate::report::{point_label, points, Overlay, Point, Rational, ShapeReport, SCHEMA_VERSION};

/// Pixels per unit.
const SCALE: f64 = 120.0;
const MARGIN: f64 = 70.0;

pub fn run(l: u32, overlay_m: Option<u64>) -> fatgin::Result<ShapeReport> {
    let shape = limiting_shape(l)?;
    let overlay = match overlay_m {
        Some(m) => {
            let table = generator_table(&Configuration::new(l)?, m)?;
            let scaled = scaled_polytope(&newton_polytope(&build_staircase(&table)?), m)?;
            Some(Overlay {
                m,
                vertices: points(&scaled),
                coincides: scaled == shape,
            })
        }
        None => None,
    };
    Ok(ShapeReport {
        schema_version: SCHEMA_VERSION,
        l,
        vertices: points(&shape),
        area: Rational(polytope_area(&shape)),
        overlay,
    })
}

fn to_f64(r: &Rational) -> f64 {
    r.0.to_f64().unwrap_or(f64::NAN)
}

struct Frame {
    y_max: f64,
}

impl Frame {
    fn px(&self, p: &Point) -> (f64, f64) {
        (
            MARGIN + to_f64(&p.x) * SCALE,
            MARGIN + (self.y_max - to_f64(&p.y)) * SCALE,
        )
    }
}

fn path(frame: &Frame, ps: &[Point]) -> String {
    ps.iter()
        .map(|p| {
            let (x, y) = frame.px(p);
            format!("{x:.2},{y:.2}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// SVG 1.1 drawing of the limiting shape. The canvas depends only on `l`:
/// the shape fits in `[0, 2] x [0, l]`.
pub fn to_svg(r: &ShapeReport) -> String {
    let frame = Frame {
        y_max: f64::from(r.l),
    };
    let width = 2.0 * SCALE + 2.0 * MARGIN;
    let height = frame.y_max * SCALE + 2.0 * MARGIN;
    let origin = Point {
        x: Rational(num_rational::BigRational::from_integer(0.into())),
        y: Rational(num_rational::BigRational::from_integer(0.into())),
    };
    let (ox, oy) = frame.px(&origin);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, "  <title>Limiting shape for l = {}</title>", r.l);
    let _ = writeln!(
        s,
        r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##
    );

    let mut region = vec![origin.clone()];
    region.extend(r.vertices.iter().cloned());
    let _ = writeln!(
        s,
        r##"  <polygon id="limiting-shape" points="{}" fill="#cfe2f3" stroke="#1f4e79" stroke-width="2"/>"##,
        path(&frame, &region)
    );
    if let Some(o) = &r.overlay {
        let _ = writeln!(
            s,
            r##"  <polyline id="overlay-m{}" points="{}" fill="none" stroke="#c0392b" stroke-width="2" stroke-dasharray="6 4"/>"##,
            o.m,
            path(&frame, &o.vertices)
        );
    }

    let _ = writeln!(
        s,
        r##"  <line x1="{ox:.2}" y1="{oy:.2}" x2="{:.2}" y2="{oy:.2}" stroke="#000000"/>"##,
        width - MARGIN / 2.0
    );
    let _ = writeln!(
        s,
        r##"  <line x1="{ox:.2}" y1="{oy:.2}" x2="{ox:.2}" y2="{:.2}" stroke="#000000"/>"##,
        MARGIN / 2.0
    );
    let _ = writeln!(
        s,
        r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">x</text>"#,
        width - MARGIN / 2.0 + 4.0,
        oy + 5.0
    );
    let _ = writeln!(
        s,
        r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">y</text>"#,
        ox - 4.0,
        MARGIN / 2.0 - 6.0
    );

    for p in &r.vertices {
        let (x, y) = frame.px(p);
        let _ = writeln!(
            s,
            r##"  <circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="#1f4e79"/>"##
        );
        let _ = writeln!(
            s,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13">{}</text>"#,
            x + 6.0,
            y - 6.0,
            point_label(p)
        );
    }
    let _ = writeln!(
        s,
        r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">area = (l+1)/2 = {}</text>"#,
        MARGIN,
        height - MARGIN / 3.0,
        r.area.0
    );
    if let Some(o) = &r.overlay {
        let verdict = if o.coincides { "coincides" } else { "differs" };
        let _ = writeln!(
            s,
            r##"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" fill="#c0392b">scaled Newton polytope, m = {}: {verdict}</text>"##,
            MARGIN,
            height - MARGIN / 3.0 - 20.0,
            o.m
        );
    }
    let _ = writeln!(s, "</svg>");
    s
}

pub fn to_table(r: &ShapeReport) -> String {
    let mut out = String::new();
    let labels: Vec<String> = r.vertices.iter().map(point_label).collect();
    let _ = writeln!(
        out,
        "limiting shape for l = {}: {}",
        r.l,
        labels.join(" -- ")
    );
    let _ = writeln!(out, "area = {}", r.area.0);
    if let Some(o) = &r.overlay {
        let labels: Vec<String> = o.vertices.iter().map(point_label).collect();
        let verdict = if o.coincides { "coincides" } else { "differs" };
        let _ = writeln!(
            out,
            "scaled Newton polytope, m = {}: {} ({verdict})",
            o.m,
            labels.join(" -- ")
        );
    }
    out
}

pub fn to_csv(r: &ShapeReport) -> String {
    let mut out = String::from("x,y\n");
    for p in &r.vertices {
        let _ = writeln!(out, "{},{}", p.x.0, p.y.0);
    }
    out
}
