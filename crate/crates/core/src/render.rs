//! Sampling and deterministic SVG rendering of projected curve families.
//!
//! An *x-curve* is u ↦ Φ(u, y₀) with y₀ fixed; a *y-curve* is v ↦ Φ(x₀, v).
//! Curves are sampled on a rectangular domain box, polylines are collected
//! per family, and the drawing is emitted as a minimal SVG 1.1 document with
//! fixed-precision coordinates so that identical inputs produce
//! byte-identical output.

use serde::Serialize;
use std::fmt::Write as _;

use crate::linalg::Vec2;
use crate::projection::{projection_value, ViewDirection};
use crate::surface::Surface;

/// Which family a polyline belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    XCurve,
    YCurve,
}

impl FamilyTag {
    fn stroke(self) -> &'static str {
        match self {
            FamilyTag::XCurve => "#d62728",
            FamilyTag::YCurve => "#1f77b4",
        }
    }

    fn label(self) -> &'static str {
        match self {
            FamilyTag::XCurve => "x-curves",
            FamilyTag::YCurve => "y-curves",
        }
    }
}

/// Family selection for sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySelect {
    X,
    Y,
    Both,
}

impl FamilySelect {
    fn includes(self, tag: FamilyTag) -> bool {
        matches!(
            (self, tag),
            (FamilySelect::Both, _)
                | (FamilySelect::X, FamilyTag::XCurve)
                | (FamilySelect::Y, FamilyTag::YCurve)
        )
    }
}

/// Rectangular sampling domain in the (x, y) parameter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl DomainBox {
    /// The default domain [−1, 1]².
    pub const UNIT: DomainBox = DomainBox { x_min: -1.0, x_max: 1.0, y_min: -1.0, y_max: 1.0 };

    fn validate(&self) -> Result<(), RenderError> {
        let ok = self.x_min.is_finite()
            && self.x_max.is_finite()
            && self.y_min.is_finite()
            && self.y_max.is_finite()
            && self.x_min < self.x_max
            && self.y_min < self.y_max;
        if ok {
            Ok(())
        } else {
            Err(RenderError::DegenerateBox(*self))
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("need at least 1 curve per family, got {0}")]
    TooFewCurves(usize),
    #[error("need at least 2 points per curve, got {0}")]
    TooFewPoints(usize),
    #[error("domain box must be finite with x_min < x_max and y_min < y_max, got {0:?}")]
    DegenerateBox(DomainBox),
}

/// A single sampled curve in projected coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub family: FamilyTag,
    pub points: Vec<Vec2>,
}

/// A set of sampled curves with their joint bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFamilyDrawing {
    pub polylines: Vec<Polyline>,
    pub min: Vec2,
    pub max: Vec2,
}

impl CurveFamilyDrawing {
    pub fn from_polylines(polylines: Vec<Polyline>) -> CurveFamilyDrawing {
        let mut min = [f64::INFINITY, f64::INFINITY];
        let mut max = [f64::NEG_INFINITY, f64::NEG_INFINITY];
        for pl in &polylines {
            for p in &pl.points {
                min[0] = min[0].min(p[0]);
                min[1] = min[1].min(p[1]);
                max[0] = max[0].max(p[0]);
                max[1] = max[1].max(p[1]);
            }
        }
        if min[0] > max[0] {
            min = [0.0, 0.0];
            max = [0.0, 0.0];
        }
        CurveFamilyDrawing { polylines, min, max }
    }

    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }
}

/// Evenly spaced sample positions across [a, b]; a single sample sits at the
/// midpoint.
fn positions(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        vec![0.5 * (a + b)]
    } else {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }
}

/// Samples the selected curve families of the projected surface.
///
/// Points where the surface cannot be evaluated (or projects to a non-finite
/// value) split the affected curve; fragments shorter than two points are
/// dropped. A surface undefined on the whole box therefore yields an empty
/// drawing, not an error.
pub fn sample_family(
    s: &Surface,
    view: &ViewDirection,
    domain: &DomainBox,
    curves_per_family: usize,
    points_per_curve: usize,
    select: FamilySelect,
) -> Result<CurveFamilyDrawing, RenderError> {
    domain.validate()?;
    if curves_per_family < 1 {
        return Err(RenderError::TooFewCurves(curves_per_family));
    }
    if points_per_curve < 2 {
        return Err(RenderError::TooFewPoints(points_per_curve));
    }

    let mut polylines = Vec::new();
    let mut trace = |family: FamilyTag, fixed: f64| {
        let (pa, pb) = match family {
            FamilyTag::XCurve => (domain.x_min, domain.x_max),
            FamilyTag::YCurve => (domain.y_min, domain.y_max),
        };
        let mut segment: Vec<Vec2> = Vec::with_capacity(points_per_curve);
        let mut flush = |segment: &mut Vec<Vec2>| {
            if segment.len() >= 2 {
                polylines.push(Polyline { family, points: std::mem::take(segment) });
            } else {
                segment.clear();
            }
        };
        for t in positions(pa, pb, points_per_curve) {
            let (x, y) = match family {
                FamilyTag::XCurve => (t, fixed),
                FamilyTag::YCurve => (fixed, t),
            };
            match projection_value(s, view, x, y) {
                Ok(p) if p[0].is_finite() && p[1].is_finite() => segment.push(p),
                _ => flush(&mut segment),
            }
        }
        flush(&mut segment);
    };

    if select.includes(FamilyTag::XCurve) {
        for fixed in positions(domain.y_min, domain.y_max, curves_per_family) {
            trace(FamilyTag::XCurve, fixed);
        }
    }
    if select.includes(FamilyTag::YCurve) {
        for fixed in positions(domain.x_min, domain.x_max, curves_per_family) {
            trace(FamilyTag::YCurve, fixed);
        }
    }

    Ok(CurveFamilyDrawing::from_polylines(polylines))
}

/// Renders the drawing as an SVG document of the given pixel size.
///
/// The drawing is fitted with a uniform scale and a margin of 5% of the
/// smaller image dimension, the vertical axis points up (SVG's y axis is
/// flipped), and every coordinate is written with six decimal places, so
/// output bytes depend only on the drawing and the size.
pub fn render_svg(drawing: &CurveFamilyDrawing, width: u32, height: u32) -> String {
    let w = width.max(1) as f64;
    let h = height.max(1) as f64;
    let margin = 0.05 * w.min(h);
    let bw = drawing.max[0] - drawing.min[0];
    let bh = drawing.max[1] - drawing.min[1];

    let avail_w = (w - 2.0 * margin).max(1.0);
    let avail_h = (h - 2.0 * margin).max(1.0);
    let mut scale = f64::INFINITY;
    if bw > 0.0 {
        scale = scale.min(avail_w / bw);
    }
    if bh > 0.0 {
        scale = scale.min(avail_h / bh);
    }
    if !scale.is_finite() {
        scale = 1.0; // drawing is empty or a single point
    }

    let ox = (w - bw * scale) / 2.0 - drawing.min[0] * scale;
    let oy = (h + bh * scale) / 2.0 + drawing.min[1] * scale;
    let map = |p: &Vec2| -> (f64, f64) { (p[0] * scale + ox, oy - p[1] * scale) };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##);
    for family in [FamilyTag::XCurve, FamilyTag::YCurve] {
        let members: Vec<&Polyline> =
            drawing.polylines.iter().filter(|pl| pl.family == family).collect();
        if members.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<g id="{}" fill="none" stroke="{}" stroke-width="1.5">"#,
            family.label(),
            family.stroke()
        );
        for pl in members {
            let mut d = String::new();
            for (i, p) in pl.points.iter().enumerate() {
                let (px, py) = map(p);
                let _ = write!(d, "{}{px:.6},{py:.6}", if i == 0 { "M " } else { " L " });
            }
            let _ = writeln!(out, r#"<path d="{d}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}
