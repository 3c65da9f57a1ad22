use proptest::prelude::*;

use super::*;
use crate::distribution::ExclusionKind;
use crate::mass::{ratio, Rational};
use crate::sample::{random_joint2, random_joint3};

fn grid(rows: &[&[(i64, i64)]]) -> Joint2<Rational> {
    Joint2::from_grid(
        rows.iter()
            .map(|r| r.iter().map(|&(n, d)| ratio(n, d)).collect())
            .collect(),
    )
    .unwrap()
}

fn worked() -> Joint2<Rational> {
    grid(&[&[(1, 4), (1, 4)], &[(1, 8), (3, 8)]])
}

fn uniform() -> Joint2<Rational> {
    grid(&[&[(1, 4), (1, 4)], &[(1, 4), (1, 4)]])
}

/// Rows of each fill character in the bar of every panel, in panel order.
fn ascii_counts(text: &str, panels: usize) -> Vec<[usize; 3]> {
    // every column opens with a rule, so its start is where a run of dashes begins
    let rule = text.lines().nth(1).unwrap().as_bytes();
    let starts: Vec<usize> = (0..rule.len())
        .filter(|&i| rule[i] == b'-' && (i == 0 || rule[i - 1] == b' '))
        .collect();
    assert_eq!(starts.len(), panels);
    let mut counts = vec![[0; 3]; panels];
    for line in text.lines().skip(2) {
        for (count, &start) in counts.iter_mut().zip(&starts) {
            match line.as_bytes().get(start) {
                Some(b'#') => count[0] += 1,
                Some(b'|') => count[1] += 1,
                Some(b'/') => count[2] += 1,
                _ => {}
            }
        }
    }
    counts
}

fn svg_panels(text: &str) -> Vec<Vec<(String, f64, String)>> {
    let mut panels = Vec::new();
    for line in text.lines() {
        if line.contains("<g id=\"panel-") {
            panels.push(Vec::new());
        }
        if line.trim_start().starts_with("<rect data-block=") {
            let attr = |name: &str| {
                let key = format!(" {name}=\"");
                let start = line.find(&key).unwrap() + key.len();
                line[start..start + line[start..].find('"').unwrap()].to_string()
            };
            panels.last_mut().unwrap().push((
                attr("data-block"),
                attr("height").parse().unwrap(),
                attr("fill"),
            ));
        }
    }
    panels
}

#[test]
fn uniform_prior_has_equal_blocks() {
    let spec = DiagramSpec::new(uniform(), "x1", "y1").with_panels(vec![Panel::Prior]);
    let text = render_ascii(&spec).unwrap();
    assert_eq!(text.lines().count(), 16 + 3);
    let starts: Vec<usize> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| l.contains("0.250"))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(starts, [2, 6, 10, 14]);
    let svg = render_svg(&spec).unwrap();
    let panels = svg_panels(&svg);
    assert_eq!(panels[0].len(), 4);
    let heights: Vec<f64> = panels[0].iter().map(|b| b.1).collect();
    assert!(heights.iter().all(|h| (h - heights[0]).abs() < 1e-3));
    assert!((heights[0] - svg::bar_height(spec.height_px) / 4.0).abs() < 1e-3);
}

#[test]
fn exclusion_panel_regions_match_split() {
    let spec = DiagramSpec::new(worked(), "x1", "y1").with_panels(vec![Panel::Exclusion]);
    let text = render_ascii(&spec).unwrap();
    let counts = ascii_counts(&text, 1);
    // 16 rows: retained 3/8, informative 3/8, misinformative 1/4
    assert_eq!(counts[0], [6, 6, 4]);
    let split = worked().exclusion_split("x1", "y1").unwrap();
    assert_eq!(split.kind, ExclusionKind::Mixed);
    assert_eq!(split.informative, ratio(3, 8));
    assert_eq!(split.misinformative, ratio(1, 4));
}

#[test]
fn posterior_panel_splits_two_to_one() {
    let spec = DiagramSpec::new(worked(), "x1", "y1").with_panels(vec![Panel::Posterior]);
    let text = render_ascii(&spec).unwrap();
    assert_eq!(ascii_counts(&text, 1)[0], [16, 0, 0]);
    let first = text.lines().position(|l| l.contains("x1 0.667")).unwrap();
    let second = text.lines().position(|l| l.contains("x2 0.333")).unwrap();
    assert_eq!(second - first, 11);
    let panels = svg_panels(&render_svg(&spec).unwrap());
    let ratio_of_heights = panels[0][0].1 / panels[0][1].1;
    assert!((ratio_of_heights - 2.0).abs() < 1e-3);
}

#[test]
fn hatching_follows_target_membership() {
    let j = random_joint2::<Rational>(11, 3, 3);
    let spec = DiagramSpec::new(j.clone(), "x2", "y3").with_panels(vec![Panel::Exclusion]);
    let models = spec.panels().unwrap();
    for ((xi, yi, _), block) in j.cells().zip(&models[0].blocks) {
        let expected = match (yi == 2, xi == 1) {
            (true, _) => Fill::Retained,
            (false, true) => Fill::Misinformative,
            (false, false) => Fill::Informative,
        };
        assert_eq!(block.fill, expected, "{}", block.label);
    }
    let panels = svg_panels(&render_svg(&spec).unwrap());
    for (block, (_, _, fill)) in models[0].blocks.iter().zip(&panels[0]) {
        let want = match block.fill {
            Fill::Retained => "#bdbdbd",
            Fill::Informative => "url(#hatch-vertical)",
            Fill::Misinformative => "url(#hatch-diagonal)",
        };
        assert_eq!(fill, want);
    }
}

#[test]
fn zero_mass_cells_leave_a_marker() {
    let j = grid(&[&[(1, 2), (0, 1)], &[(1, 4), (1, 4)]]);
    let svg = render_svg(&DiagramSpec::new(j, "x1", "y1")).unwrap();
    assert!(svg.contains("<!-- x1,y2: zero mass -->"));
    assert_eq!(svg_panels(&svg)[0].len(), 3);
}

#[test]
fn spec_errors() {
    let zero_column = grid(&[&[(1, 2), (0, 1)], &[(1, 2), (0, 1)]]);
    let spec = DiagramSpec::new(zero_column.clone(), "x1", "y2");
    assert!(matches!(render_ascii(&spec), Err(Error::ZeroConditioningEvent(_))));
    let prior_only = DiagramSpec::new(zero_column, "x1", "y2").with_panels(vec![Panel::Prior]);
    assert!(render_svg(&prior_only).is_ok());
    assert!(matches!(
        render_ascii(&DiagramSpec::new(worked(), "x1", "y9")),
        Err(Error::UnknownLabel { .. })
    ));
    assert!(matches!(
        render_ascii(&DiagramSpec::new(worked(), "x1", "y1").with_panels(vec![])),
        Err(Error::InvalidDiagram(_))
    ));
    let big = random_joint2::<f64>(1, 4, 4);
    assert!(matches!(
        render_svg(&DiagramSpec::new(big, "x1", "y1")),
        Err(Error::TooManyBlocks { count: 16, limit: 12 })
    ));
    let mut flat = DiagramSpec::new(worked(), "x1", "y1");
    flat.height_px = 0;
    assert!(matches!(render_svg(&flat), Err(Error::InvalidDiagram(_))));
    assert!("sideways".parse::<Panel>().is_err());
}

#[test]
fn panels_render_in_requested_order() {
    let spec = DiagramSpec::new(worked(), "x1", "y1")
        .with_panels(vec![Panel::Posterior, Panel::Prior]);
    let text = render_ascii(&spec).unwrap();
    let title = text.lines().next().unwrap();
    assert!(title.starts_with("P(X|y1)"));
    assert!(title.trim_end().ends_with("P(X,Y)"));
    let svg = render_svg(&spec).unwrap();
    assert!(svg.find(">P(X|y1)<").unwrap() < svg.find(">P(X,Y)<").unwrap());
}

#[test]
fn rendering_is_pure() {
    let spec = DiagramSpec::new(worked(), "x1", "y1");
    assert_eq!(render_svg(&spec).unwrap(), render_svg(&spec).unwrap());
    assert_eq!(render_ascii(&spec).unwrap(), render_ascii(&spec).unwrap());
}

#[test]
fn labels_are_escaped() {
    let j = Joint2::new(
        vec!["a<b".into(), "c".into()],
        vec!["d&e".into()],
        vec![vec![ratio(1, 2)], vec![ratio(1, 2)]],
    )
    .unwrap();
    let svg = render_svg(&DiagramSpec::new(j, "a<b", "d&e")).unwrap();
    assert!(svg.contains("a&lt;b,d&amp;e"));
    assert!(!svg.contains("a<b"));
}

fn copy3() -> Joint3<Rational> {
    let z = ratio(0, 1);
    let h = ratio(1, 2);
    Joint3::from_grid(vec![
        vec![vec![h.clone(), z.clone()], vec![z.clone(), z.clone()]],
        vec![vec![z.clone(), z.clone()], vec![z, h]],
    ])
    .unwrap()
}

const ORDERINGS: [ChainOrdering; 3] =
    [ChainOrdering::OneShot, ChainOrdering::YThenZ, ChainOrdering::ZThenY];

#[test]
fn chain_on_copy_distribution() {
    for ordering in ORDERINGS {
        let spec = ChainSpec::new(copy3(), "x1", "y1", "z1", ordering);
        let panels = spec.panels().unwrap();
        let last = panels.last().unwrap();
        assert_eq!(last.blocks[0].mass, 1.0);
        assert_eq!(last.blocks[1].mass, 0.0);
        let svg = render_chain(&spec).unwrap();
        let rects = svg_panels(&svg);
        assert_eq!(rects.last().unwrap().len(), 1);
        assert!((rects.last().unwrap()[0].1 - svg::bar_height(spec.height_px)).abs() < 1e-3);
    }
    let seq = ChainSpec::new(copy3(), "x1", "y1", "z1", ChainOrdering::YThenZ);
    assert_eq!(seq.panels().unwrap().len(), 5);
    assert_eq!(seq.panels().unwrap()[2].title, "P(X,Z|y1)");
}

#[test]
fn chain_on_independent_bits_stays_uniform() {
    let e = ratio(1, 8);
    let j = Joint3::from_grid(vec![vec![vec![e.clone(); 2]; 2]; 2]).unwrap();
    let spec = ChainSpec::new(j, "x1", "y1", "z1", ChainOrdering::ZThenY);
    let panels = spec.panels().unwrap();
    assert!(panels[2].blocks.iter().all(|b| b.mass == 0.25));
    assert!(panels[4].blocks.iter().all(|b| b.mass == 0.5));
}

#[test]
fn chain_final_panels_agree() {
    for seed in 0..20 {
        let j = random_joint3::<Rational>(seed, 3, 2, 2);
        let finals: Vec<Vec<f64>> = ORDERINGS
            .iter()
            .map(|&o| {
                let spec = ChainSpec::new(j.clone(), "x2", "y1", "z2", o);
                spec.panels().unwrap().pop().unwrap().blocks.iter().map(|b| b.mass).collect()
            })
            .collect();
        assert_eq!(finals[0], finals[1]);
        assert_eq!(finals[0], finals[2]);
        let svgs: Vec<_> = ORDERINGS
            .iter()
            .map(|&o| svg_panels(&render_chain(&ChainSpec::new(j.clone(), "x2", "y1", "z2", o)).unwrap()))
            .collect();
        assert_eq!(svgs[0].last(), svgs[1].last());
        assert_eq!(svgs[0].last(), svgs[2].last());
    }
}

#[test]
fn chain_hatching_in_one_shot() {
    let j = random_joint3::<Rational>(4, 2, 2, 2);
    let spec = ChainSpec::new(j, "x1", "y2", "z1", ChainOrdering::OneShot);
    let panels = spec.panels().unwrap();
    let fills: Vec<char> = panels[1].blocks.iter().map(|b| b.fill.ascii()).collect();
    // cells in x, y, z order; only (y2, z1) survives
    assert_eq!(fills, ['/', '/', '#', '/', '|', '|', '#', '|']);
    assert!(render_chain_ascii(&spec).unwrap().lines().count() > 16);
}

#[test]
fn apportion_examples() {
    assert_eq!(apportion(&[1.0 / 3.0; 3], 16), [6, 5, 5]);
    assert_eq!(apportion(&[0.25, 0.25, 0.125, 0.375], 16), [4, 4, 2, 6]);
    assert_eq!(apportion(&[0.0, 1.0], 16), [0, 16]);
    assert_eq!(apportion(&[0.0, 0.0], 16), [0, 0]);
}

proptest! {
    #[test]
    fn apportion_preserves_total(masses in prop::collection::vec(0.0f64..1.0, 1..12), total in 1usize..64) {
        prop_assume!(masses.iter().sum::<f64>() > 0.0);
        let parts = apportion(&masses, total);
        prop_assert_eq!(parts.iter().sum::<usize>(), total);
        let sum: f64 = masses.iter().sum();
        for (m, p) in masses.iter().zip(&parts) {
            prop_assert!((*p as f64 - m / sum * total as f64).abs() < 1.0 + 1e-9);
        }
    }

    #[test]
    fn svg_panels_conserve_mass(seed in any::<u64>(), nx in 1usize..4, ny in 1usize..4) {
        let j = random_joint2::<f64>(seed, nx, ny);
        let spec = DiagramSpec::new(j, "x1", "y1");
        match render_svg(&spec) {
            Ok(svg) => {
                for panel in svg_panels(&svg) {
                    let total: f64 = panel.iter().map(|b| b.1).sum();
                    prop_assert!((total - svg::bar_height(spec.height_px)).abs() <= 0.5);
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::ZeroConditioningEvent(_))),
        }
    }

    #[test]
    fn ascii_columns_have_full_height(seed in any::<u64>(), unit in 1usize..4) {
        let j = random_joint2::<f64>(seed, 2, 3);
        let mut spec = DiagramSpec::new(j, "x2", "y2");
        spec.unit_height = unit;
        let text = render_ascii(&spec).unwrap();
        let counts = ascii_counts(&text, 3);
        for c in counts {
            prop_assert_eq!(c.iter().sum::<usize>(), 8 * unit);
        }
    }
}
