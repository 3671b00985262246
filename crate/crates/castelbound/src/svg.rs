//! Wall diagrams in the (b, a) half-plane. Geometry arrives exact and is only
//! converted to floats here.

use std::fmt::Write as _;

use crate::numerics::Surd;
use crate::tiltwalls::{ChernH, WallGeometry};

pub struct LabeledWall {
    pub label: String,
    pub wall: WallGeometry,
}

pub struct Diagram<'a> {
    pub class: &'a ChernH,
    pub walls: &'a [LabeledWall],
    /// Shades `[b_d, 0]` and marks `b_d` when present.
    pub b_d: Option<Surd>,
}

const W: f64 = 800.0;
const H: f64 = 450.0;
const PAD: f64 = 40.0;

struct Frame {
    b_min: f64,
    b_max: f64,
    a_max: f64,
}

impl Frame {
    fn x(&self, b: f64) -> f64 {
        PAD + (b - self.b_min) / (self.b_max - self.b_min) * (W - 2.0 * PAD)
    }

    fn y(&self, a: f64) -> f64 {
        H - PAD - a / self.a_max * (H - 2.0 * PAD)
    }

    fn sx(&self, db: f64) -> f64 {
        db / (self.b_max - self.b_min) * (W - 2.0 * PAD)
    }

    fn sy(&self, da: f64) -> f64 {
        da / self.a_max * (H - 2.0 * PAD)
    }
}

fn frame(d: &Diagram) -> Frame {
    let mut b_min: f64 = -1.0;
    let mut b_max: f64 = 0.5;
    let mut a_max: f64 = 1.0;
    for w in d.walls {
        match &w.wall {
            WallGeometry::Semicircle { center, radius_sq } => {
                let (c, r) = (center.to_f64(), radius_sq.to_f64().sqrt());
                b_min = b_min.min(c - r);
                b_max = b_max.max(c + r);
                a_max = a_max.max(r);
            }
            WallGeometry::Vertical { b } => {
                b_min = b_min.min(b.to_f64());
                b_max = b_max.max(b.to_f64());
            }
        }
    }
    if let Some(bd) = &d.b_d {
        b_min = b_min.min(bd.to_f64());
    }
    let span = b_max - b_min;
    Frame { b_min: b_min - 0.05 * span, b_max: b_max + 0.05 * span, a_max: a_max * 1.1 }
}

/// Renders the diagram as a standalone SVG document.
pub fn render(d: &Diagram) -> String {
    let f = frame(d);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    if let Some(bd) = &d.b_d {
        let (x0, x1) = (f.x(bd.to_f64()), f.x(0.0));
        let _ = writeln!(
            s,
            r##"<rect class="neutral" x="{x0:.2}" y="{PAD}" width="{:.2}" height="{:.2}" fill="#dde8f5"/>"##,
            x1 - x0,
            H - 2.0 * PAD
        );
        let _ = writeln!(
            s,
            r##"<line class="b_d" x1="{x0:.2}" y1="{PAD}" x2="{x0:.2}" y2="{:.2}" stroke="#1f5fa8" stroke-dasharray="4 3"/><text x="{x0:.2}" y="{:.2}" font-size="12">b_d = {}</text>"##,
            H - PAD,
            PAD - 6.0,
            bd
        );
    }
    // axes
    let _ = writeln!(s, r#"<line x1="{PAD}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black"/>"#, f.y(0.0), W - PAD, f.y(0.0));
    let _ = writeln!(s, r#"<line x1="{:.2}" y1="{PAD}" x2="{:.2}" y2="{:.2}" stroke="gray"/>"#, f.x(0.0), f.x(0.0), H - PAD);
    // ν = 0 locus: c0·a² = c0·b² - 2b·c1 + 2c2
    let c = d.class;
    if !c.c0.is_zero() {
        let (c0, c1, c2) = (c.c0.to_f64(), c.c1.to_f64(), c.c2.to_f64());
        let mut pts = Vec::new();
        let steps = 400;
        for i in 0..=steps {
            let b = f.b_min + (f.b_max - f.b_min) * i as f64 / steps as f64;
            let a2 = b * b - 2.0 * b * c1 / c0 + 2.0 * c2 / c0;
            if a2 > 0.0 && a2.sqrt() <= f.a_max {
                pts.push(format!("{:.2},{:.2}", f.x(b), f.y(a2.sqrt())));
            } else if !pts.is_empty() {
                let _ = writeln!(s, r##"<polyline class="hyperbola" points="{}" fill="none" stroke="#999" stroke-dasharray="2 2"/>"##, pts.join(" "));
                pts.clear();
            }
        }
        if !pts.is_empty() {
            let _ = writeln!(s, r##"<polyline class="hyperbola" points="{}" fill="none" stroke="#999" stroke-dasharray="2 2"/>"##, pts.join(" "));
        }
    }
    for w in d.walls {
        match &w.wall {
            WallGeometry::Semicircle { center, radius_sq } => {
                let (cb, r) = (center.to_f64(), radius_sq.to_f64().sqrt());
                let _ = writeln!(
                    s,
                    r##"<path class="wall" d="M {:.2} {:.2} A {:.2} {:.2} 0 0 1 {:.2} {:.2}" fill="none" stroke="#b23b3b"><title>{}</title></path>"##,
                    f.x(cb - r),
                    f.y(0.0),
                    f.sx(r),
                    f.sy(r),
                    f.x(cb + r),
                    f.y(0.0),
                    w.label
                );
            }
            WallGeometry::Vertical { b } => {
                let x = f.x(b.to_f64());
                let _ = writeln!(
                    s,
                    r##"<line class="wall" x1="{x:.2}" y1="{PAD}" x2="{x:.2}" y2="{:.2}" stroke="#b23b3b"><title>{}</title></line>"##,
                    f.y(0.0),
                    w.label
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}
