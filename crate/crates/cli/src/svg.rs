//! Deterministic SVG figures in a y-up frame.

use std::fmt::Write;

use minkplane::Point2;

#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub points: Vec<Point2>,
    pub closed: bool,
    pub color: &'static str,
    pub dashed: bool,
    pub label: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Figure {
    pub caption: String,
    pub paths: Vec<Path>,
    pub dots: Vec<(Point2, &'static str)>,
}

pub const PALETTE: [&str; 6] = ["#1f4e79", "#c0392b", "#27ae60", "#8e44ad", "#d68910", "#5d6d7e"];

impl Figure {
    pub fn new(caption: impl Into<String>) -> Self {
        Self { caption: caption.into(), ..Self::default() }
    }

    pub fn polygon(&mut self, points: &[Point2], color: &'static str, label: &str) -> &mut Self {
        self.paths.push(Path { points: points.to_vec(), closed: true, color, dashed: false, label: Some(label.into()) });
        self
    }

    pub fn polyline(&mut self, points: &[Point2], color: &'static str, dashed: bool) -> &mut Self {
        self.paths.push(Path { points: points.to_vec(), closed: false, color, dashed, label: None });
        self
    }

    pub fn dot(&mut self, p: Point2, color: &'static str) -> &mut Self {
        self.dots.push((p, color));
        self
    }

    fn bounds(&self) -> Option<(Point2, Point2)> {
        let all = self.paths.iter().flat_map(|p| p.points.iter().copied()).chain(self.dots.iter().map(|d| d.0));
        let mut it = all.peekable();
        it.peek()?;
        let (lo, hi) = it.fold(
            (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
            |(lo, hi), p| (Point2::new(lo.x1.min(p.x1), lo.x2.min(p.x2)), Point2::new(hi.x1.max(p.x1), hi.x2.max(p.x2))),
        );
        Some((lo, hi))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let caption = escape(&self.caption);
        let Some((lo, hi)) = self.bounds() else {
            writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
            writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 100 20">"#).unwrap();
            writeln!(out, r#"<title>{caption}</title>"#).unwrap();
            writeln!(out, r#"<text x="50" y="12" font-size="6" text-anchor="middle">{caption}</text>"#).unwrap();
            out.push_str("</svg>\n");
            return out;
        };
        let diam = (hi.x1 - lo.x1).max(hi.x2 - lo.x2).max(1e-9);
        let margin = 0.05 * diam;
        let (x0, x1) = (lo.x1 - margin, hi.x1 + margin);
        let (y0, y1) = (lo.x2 - margin, hi.x2 + margin);
        let caption_h = 0.08 * diam;
        let stroke = 0.004 * diam;
        // y-up: draw at (x, -y)
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
            num(x0),
            num(-y1),
            num(x1 - x0),
            num(y1 - y0 + caption_h)
        )
        .unwrap();
        writeln!(out, r#"<title>{caption}</title>"#).unwrap();
        writeln!(out, r#"<g fill="none" stroke-width="{}" stroke-linejoin="round">"#, num(stroke)).unwrap();
        for p in &self.paths {
            if p.points.is_empty() {
                continue;
            }
            let mut d = String::new();
            for (i, q) in p.points.iter().enumerate() {
                write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(q.x1), num(-q.x2)).unwrap();
            }
            if p.closed {
                d.push('Z');
            }
            let dash = if p.dashed { format!(r#" stroke-dasharray="{} {}""#, num(3.0 * stroke), num(2.0 * stroke)) } else { String::new() };
            match &p.label {
                Some(l) => writeln!(out, r#"<path d="{}" stroke="{}"{dash}><title>{}</title></path>"#, d.trim_end(), p.color, escape(l)).unwrap(),
                None => writeln!(out, r#"<path d="{}" stroke="{}"{dash}/>"#, d.trim_end(), p.color).unwrap(),
            }
        }
        out.push_str("</g>\n");
        for (q, color) in &self.dots {
            writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#, num(q.x1), num(-q.x2), num(2.5 * stroke)).unwrap();
        }
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" text-anchor="middle">{caption}</text>"#,
            num(0.5 * (x0 + x1)),
            num(-y0 + 0.6 * caption_h),
            num(0.45 * caption_h)
        )
        .unwrap();
        out.push_str("</svg>\n");
        out
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
