//! Static SVG pictures of a trial: the cells touching the first path,
//! colored as in the first coloring, then the first path, then the second.

use std::fmt::Write;

use crate::experiment::TrialRecord;
use crate::geometry::Point2;
use crate::lattice::{Color, Domain};

/// Pixels per unit length (the domain is 2 units tall).
const PX: f64 = 400.0;
const MARGIN: f64 = 0.04;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layers {
    pub hexagons: bool,
    pub first_path: bool,
    pub second_path: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Self {
            hexagons: true,
            first_path: true,
            second_path: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RenderSpec {
    pub layers: Layers,
    /// Vertical window `(y_min, y_max)` in domain units.
    pub clip: Option<(f64, f64)>,
}

fn px(v: f64) -> String {
    let s = format!("{:.2}", v * PX);
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn point(p: Point2<f64>) -> String {
    format!("{},{}", px(p.x), px(-p.y))
}

pub fn render_svg(domain: &Domain, trial: &TrialRecord, spec: &RenderSpec) -> String {
    let edge: f64 = domain.edge_length();
    let half_width = (1.0 + edge) / 3f64.sqrt() + edge;
    let (y_lo, y_hi) = spec.clip.unwrap_or((-1.0 - MARGIN, 1.0 + MARGIN));
    let (x0, x1) = (-half_width - MARGIN, half_width + MARGIN);
    let (w, h) = (x1 - x0, y_hi - y_lo);
    let stroke = (edge * 0.35).min(0.006);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        px(w),
        px(h),
        px(x0),
        px(-y_hi),
        px(w),
        px(h)
    );
    let r = &trial.result;
    let _ = writeln!(
        svg,
        "<title>n={} k={} trial={} distance={}</title>",
        r.n,
        r.k,
        r.trial,
        super::table::format_sig(r.distance, 6)
    );

    if spec.layers.hexagons {
        let _ = writeln!(
            svg,
            "<g id=\"hexagons\" stroke=\"#808080\" stroke-width=\"{}\">",
            px(stroke / 2.0)
        );
        for cell in trial.first_path.relevant_cells() {
            let corners = domain
                .hex_corners::<f64>(cell)
                .expect("path cells are in the domain");
            let fill = match trial.first.get(domain, cell) {
                Color::White => "#ffffff",
                Color::Black => "#000000",
            };
            let pts: Vec<String> = corners.iter().map(|&p| point(p)).collect();
            let _ = writeln!(
                svg,
                "<polygon points=\"{}\" fill=\"{}\"/>",
                pts.join(" "),
                fill
            );
        }
        svg.push_str("</g>\n");
    }

    let mut path = |id: &str,
                    color: &str,
                    dash: Option<f64>,
                    exploration: &crate::explorer::Exploration| {
        let pts: Vec<String> = exploration
            .polyline::<f64>(domain)
            .points()
            .iter()
            .map(|&p| point(p))
            .collect();
        let dash = dash
            .map(|d| format!(" stroke-dasharray=\"{} {}\"", px(d), px(d)))
            .unwrap_or_default();
        let _ = writeln!(
            svg,
            "<polyline id=\"{id}\" points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\" stroke-linejoin=\"round\"{dash}/>",
            pts.join(" "),
            px(stroke)
        );
    };
    if spec.layers.first_path {
        path("path1", "#1f4e9e", None, &trial.first_path);
    }
    if spec.layers.second_path {
        path(
            "path2",
            "#c0392b",
            Some(edge.max(stroke * 2.0)),
            &trial.second_path,
        );
    }
    svg.push_str("</svg>\n");
    svg
}
