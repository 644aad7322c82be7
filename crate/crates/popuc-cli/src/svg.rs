//! Static SVG diagrams of circular point sets: unit circle, one marker style
//! per set, double rings on common points, hollow markers for padding.
//! Output is a pure function of the input — identical input, identical bytes.

use popuc_core::{CirclePoint, CircularPointSet};

const SIZE: f64 = 480.0;
const CENTER: f64 = 240.0;
const BASE_RADIUS: f64 = 190.0;
const RADIUS_STEP: f64 = 18.0;
const COLORS: [&str; 4] = ["#1f6fb2", "#c23b22", "#2e8540", "#7d3cb5"];
const MARKER: f64 = 5.0;

#[derive(Debug, Clone, Default)]
pub struct Annotations {
    /// Drawn with a double ring at the outer radius.
    pub common: Vec<CirclePoint>,
    /// Drawn hollow at the outer radius.
    pub padding: Vec<CirclePoint>,
}

fn xy(angle: f64, radius: f64) -> (f64, f64) {
    (
        CENTER + radius * angle.cos(),
        CENTER - radius * angle.sin(),
    )
}

pub fn render_svg(sets: &[&CircularPointSet], annotations: &Annotations) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n",
        s = SIZE
    ));
    out.push_str(&format!(
        "  <circle cx=\"{CENTER}\" cy=\"{CENTER}\" r=\"{BASE_RADIUS}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n"
    ));

    for (k, set) in sets.iter().enumerate() {
        let radius = BASE_RADIUS - RADIUS_STEP * k as f64;
        let color = COLORS[k % COLORS.len()];
        for p in set.points() {
            let (x, y) = xy(p.angle(), radius);
            out.push_str(&marker(k, x, y, color));
        }
        // Legend row.
        let ly = 18.0 + 16.0 * k as f64;
        out.push_str(&marker(k, 14.0, ly - 4.0, color));
        out.push_str(&format!(
            "  <text x=\"26\" y=\"{ly:.4}\" font-family=\"monospace\" font-size=\"12\" fill=\"#222222\">{} ({})</text>\n",
            escape(set.label()),
            set.len()
        ));
    }

    for p in &annotations.common {
        let (x, y) = xy(p.angle(), BASE_RADIUS);
        out.push_str(&format!(
            "  <circle class=\"common-ring\" cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"{r1:.4}\" fill=\"none\" stroke=\"#111111\" stroke-width=\"1\"/>\n  <circle class=\"common-ring-outer\" cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"{r2:.4}\" fill=\"none\" stroke=\"#111111\" stroke-width=\"1\"/>\n",
            r1 = MARKER + 3.0,
            r2 = MARKER + 6.0,
        ));
    }
    for p in &annotations.padding {
        let (x, y) = xy(p.angle(), BASE_RADIUS);
        out.push_str(&format!(
            "  <circle class=\"padding-marker\" cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"{MARKER:.4}\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1.5\"/>\n"
        ));
    }

    out.push_str("</svg>\n");
    out
}

fn marker(set_index: usize, x: f64, y: f64, color: &str) -> String {
    let fill = color;
    let class = format!("set{set_index}-marker");
    match set_index % 4 {
        0 => format!(
            "  <circle class=\"{class}\" cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"{MARKER:.4}\" fill=\"{fill}\" stroke=\"{color}\"/>\n"
        ),
        1 => format!(
            "  <rect class=\"{class}\" x=\"{:.4}\" y=\"{:.4}\" width=\"{w:.4}\" height=\"{w:.4}\" fill=\"{fill}\" stroke=\"{color}\"/>\n",
            x - MARKER,
            y - MARKER,
            w = 2.0 * MARKER,
        ),
        2 => format!(
            "  <polygon class=\"{class}\" points=\"{:.4},{:.4} {:.4},{:.4} {:.4},{:.4}\" fill=\"{fill}\" stroke=\"{color}\"/>\n",
            x,
            y - MARKER,
            x - MARKER,
            y + MARKER,
            x + MARKER,
            y + MARKER,
        ),
        _ => format!(
            "  <polygon class=\"{class}\" points=\"{:.4},{:.4} {:.4},{:.4} {:.4},{:.4} {:.4},{:.4}\" fill=\"{fill}\" stroke=\"{color}\"/>\n",
            x,
            y - MARKER,
            x + MARKER,
            y,
            x,
            y + MARKER,
            x - MARKER,
            y,
        ),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
