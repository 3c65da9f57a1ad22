use super::{apportion, PanelModel};

/// Rows per 1/8 of mass, so a full bar is 16 rows.
pub const DEFAULT_UNIT_HEIGHT: usize = 2;

const BAR_WIDTH: usize = 8;
const GAP: &str = "   ";

/// Panels side by side. Each column is a title, a rule, the bar with a
/// `label mass` tag on the first row of every block, and a closing rule.
pub(super) fn render(panels: &[PanelModel], unit_height: usize) -> String {
    let rows = 8 * unit_height;
    let columns: Vec<Vec<String>> = panels.iter().map(|p| column(p, rows)).collect();
    let widths: Vec<usize> = columns
        .iter()
        .map(|c| c.iter().map(|l| l.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in 0..rows + 3 {
        let mut text = String::new();
        for (i, (col, width)) in columns.iter().zip(&widths).enumerate() {
            if i > 0 {
                text.push_str(GAP);
            }
            let cell = &col[line];
            text.push_str(cell);
            text.extend(std::iter::repeat_n(' ', width - cell.chars().count()));
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

fn column(panel: &PanelModel, rows: usize) -> Vec<String> {
    let masses: Vec<f64> = panel.blocks.iter().map(|b| b.mass).collect();
    let heights = apportion(&masses, rows);
    let rule = "-".repeat(BAR_WIDTH);
    let mut lines = vec![panel.title.clone(), rule.clone()];
    for (block, height) in panel.blocks.iter().zip(heights) {
        let bar: String = std::iter::repeat_n(block.fill.ascii(), BAR_WIDTH).collect();
        for row in 0..height {
            if row == 0 {
                lines.push(format!("{bar} {} {:.3}", block.label, block.mass));
            } else {
                lines.push(bar.clone());
            }
        }
    }
    lines.resize(rows + 2, String::new());
    lines.push(rule);
    lines
}
