use std::fmt::Write;

use super::{Fill, PanelModel};

const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 16.0;
const BAR_LEFT: f64 = 12.0;
const BAR_MAX_WIDTH: f64 = 64.0;
const RETAINED: &str = "#bdbdbd";

/// Height of the bar area for a document `height` pixels tall.
pub(super) fn bar_height(height: u32) -> f64 {
    (height as f64 - MARGIN_TOP - MARGIN_BOTTOM).max(1.0)
}

fn fill(f: Fill) -> &'static str {
    match f {
        Fill::Retained => RETAINED,
        Fill::Informative => "url(#hatch-vertical)",
        Fill::Misinformative => "url(#hatch-diagonal)",
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

pub(super) fn render(panels: &[PanelModel], width: u32, height: u32) -> String {
    let mut s = String::new();
    let panel_width = width as f64 / panels.len().max(1) as f64;
    let bar_width = (panel_width * 0.35).min(BAR_MAX_WIDTH);
    let bar_h = bar_height(height);
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    s.push_str("  <defs>\n");
    s.push_str("    <pattern id=\"hatch-vertical\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\">\n");
    s.push_str("      <rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>\n");
    s.push_str("      <path d=\"M3,0 L3,6\" stroke=\"#000000\" stroke-width=\"1\"/>\n");
    s.push_str("    </pattern>\n");
    s.push_str("    <pattern id=\"hatch-diagonal\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\">\n");
    s.push_str("      <rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>\n");
    s.push_str("      <path d=\"M0,6 L6,0 M-1,1 L1,-1 M5,7 L7,5\" stroke=\"#000000\" stroke-width=\"1\"/>\n");
    s.push_str("    </pattern>\n");
    s.push_str("  </defs>\n");
    let _ = writeln!(s, "  <rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>");
    for (i, panel) in panels.iter().enumerate() {
        let _ = writeln!(
            s,
            "  <g id=\"panel-{}\" transform=\"translate({:.3},0)\">",
            i + 1,
            i as f64 * panel_width
        );
        let _ = writeln!(
            s,
            "    <text x=\"{BAR_LEFT:.3}\" y=\"20.000\" font-family=\"monospace\" font-size=\"12\">{}</text>",
            escape(&panel.title)
        );
        let total: f64 = panel.blocks.iter().map(|b| b.mass).sum();
        let mut above = 0.0;
        for block in &panel.blocks {
            let label = escape(&block.label);
            if block.mass <= 0.0 {
                let _ = writeln!(s, "    <!-- {label}: zero mass -->");
                continue;
            }
            let top = MARGIN_TOP + above / total * bar_h;
            let h = block.mass / total * bar_h;
            above += block.mass;
            let _ = writeln!(
                s,
                "    <rect data-block=\"{label}\" x=\"{BAR_LEFT:.3}\" y=\"{top:.3}\" width=\"{bar_width:.3}\" height=\"{h:.3}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"0.5\"/>",
                fill(block.fill)
            );
            let _ = writeln!(
                s,
                "    <text x=\"{:.3}\" y=\"{:.3}\" font-family=\"monospace\" font-size=\"10\">{label} {:.3}</text>",
                BAR_LEFT + bar_width + 6.0,
                top + h / 2.0 + 3.5,
                block.mass
            );
        }
        s.push_str("  </g>\n");
    }
    s.push_str("</svg>\n");
    s
}
