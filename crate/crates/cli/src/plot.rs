//! Static figure of the singular-value set: marching-squares extraction of
//! the identifier zero level inside a source window, mapped through the
//! germ, written as an SVG plus a plain-text polyline file.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use corank2::classify::{classify_germ, HessIndex, Identifier, Verdict};
use corank2::cusp::{branch_curves, branch_image_cusps};
use corank2::jets::{Jet2, MapJet2};
use corank2::num::{Coeff, Scalar, F64};

use crate::document::InputDocument;
use crate::error::CliError;
use crate::report::scalar_germ_of_document;

pub struct PlotConfig {
    pub window: f64,
    pub resolution: usize,
    pub order: usize,
}

pub struct PlotSummary {
    pub verdict: Verdict,
    pub polylines: usize,
    pub points: usize,
}

fn eval_poly(jet: &Jet2<F64>, x: f64, y: f64) -> f64 {
    let mut acc = 0.0;
    for (i, j, c) in jet.terms() {
        if c.0 != 0.0 {
            acc += c.0 * x.powi(i as i32) * y.powi(j as i32);
        }
    }
    acc
}

type EdgeKey = (usize, usize, u8); // cell x, cell y, 0 = horizontal, 1 = vertical

/// Zero-level segments of a grid of samples, as pairs of edge keys with
/// interpolated crossing points.
fn marching_squares(
    values: &[Vec<f64>],
    window: f64,
    n: usize,
) -> Vec<((EdgeKey, [f64; 2]), (EdgeKey, [f64; 2]))> {
    let step = 2.0 * window / n as f64;
    let coord = |k: usize| -> f64 { -window + k as f64 * step };
    let cross = |va: f64, vb: f64| -> f64 {
        // position of the zero in [0,1] between the two samples
        if (va - vb).abs() < f64::MIN_POSITIVE {
            0.5
        } else {
            (va / (va - vb)).clamp(0.0, 1.0)
        }
    };
    let mut segments = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v00 = values[i][j];
            let v10 = values[i + 1][j];
            let v11 = values[i + 1][j + 1];
            let v01 = values[i][j + 1];
            // exact zeros count as positive so a level set touching a grid
            // node does not spawn a degenerate one-node contour
            let sign = |v: f64| v >= 0.0;
            let code = (sign(v00) as u8)
                | ((sign(v10) as u8) << 1)
                | ((sign(v11) as u8) << 2)
                | ((sign(v01) as u8) << 3);
            if code == 0 || code == 15 {
                continue;
            }
            // crossing points on the four cell edges
            let bottom = || {
                let t = cross(v00, v10);
                ((i, j, 0u8), [coord(i) + t * step, coord(j)])
            };
            let top = || {
                let t = cross(v01, v11);
                ((i, j + 1, 0u8), [coord(i) + t * step, coord(j + 1)])
            };
            let left = || {
                let t = cross(v00, v01);
                ((i, j, 1u8), [coord(i), coord(j) + t * step])
            };
            let right = || {
                let t = cross(v10, v11);
                ((i + 1, j, 1u8), [coord(i + 1), coord(j) + t * step])
            };
            match code {
                1 | 14 => segments.push((bottom(), left())),
                2 | 13 => segments.push((bottom(), right())),
                4 | 11 => segments.push((top(), right())),
                8 | 7 => segments.push((top(), left())),
                3 | 12 => segments.push((left(), right())),
                6 | 9 => segments.push((bottom(), top())),
                5 | 10 => {
                    // saddle: resolve with the center mean
                    let center = (v00 + v10 + v11 + v01) / 4.0;
                    let flip = (center > 0.0) == (code == 5);
                    if flip {
                        segments.push((bottom(), right()));
                        segments.push((top(), left()));
                    } else {
                        segments.push((bottom(), left()));
                        segments.push((top(), right()));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    segments
}

/// Chains edge-keyed segments into polylines.
fn chain_polylines(
    segments: Vec<((EdgeKey, [f64; 2]), (EdgeKey, [f64; 2]))>,
) -> Vec<Vec<[f64; 2]>> {
    let mut adjacency: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (idx, ((k1, _), (k2, _))) in segments.iter().enumerate() {
        adjacency.entry(*k1).or_default().push(idx);
        adjacency.entry(*k2).or_default().push(idx);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let ((k1, p1), (k2, p2)) = segments[start].clone();
        let mut line = vec![p1, p2];
        let mut keys = (k1, k2);
        // extend forward from the tail, then backward from the head
        for dir in 0..2 {
            loop {
                let tail = if dir == 0 { keys.1 } else { keys.0 };
                let next = adjacency
                    .get(&tail)
                    .and_then(|ids| ids.iter().find(|&&i| !used[i]).copied());
                let Some(idx) = next else { break };
                used[idx] = true;
                let ((a, pa), (b, pb)) = segments[idx].clone();
                let (new_key, new_pt) = if a == tail { (b, pb) } else { (a, pa) };
                if dir == 0 {
                    line.push(new_pt);
                    keys.1 = new_key;
                } else {
                    line.insert(0, new_pt);
                    keys.0 = new_key;
                }
            }
        }
        polylines.push(line);
    }
    polylines
}

pub fn plot_singular_image(
    doc: &InputDocument,
    cfg: &PlotConfig,
    svg_path: &Path,
    txt_path: &Path,
) -> Result<PlotSummary, CliError> {
    if cfg.window <= 0.0 || cfg.resolution == 0 {
        return Err(CliError::Precondition(
            "window and resolution must be positive".to_string(),
        ));
    }
    let order = cfg.order.max(4);
    let f_exact = scalar_germ_of_document(doc, order)?;
    let verdict = classify_germ(&f_exact)
        .map_err(|e| CliError::Precondition(e.to_string()))?
        .verdict;
    let f = f_exact.map(|s| F64(s.to_f64().unwrap_or(0.0)));
    let lambda = Identifier::jacobian(&f);

    let n = cfg.resolution;
    let step = 2.0 * cfg.window / n as f64;
    let mut values = vec![vec![0.0f64; n + 1]; n + 1];
    for (i, row) in values.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let x = -cfg.window + i as f64 * step;
            let y = -cfg.window + j as f64 * step;
            *v = eval_poly(lambda.jet(), x, y);
        }
    }
    let segments = marching_squares(&values, cfg.window, n);
    let source_lines = chain_polylines(segments);
    let image_lines: Vec<Vec<[f64; 2]>> = source_lines
        .iter()
        .map(|line| {
            line.iter()
                .map(|&[x, y]| [eval_poly(f.x(), x, y), eval_poly(f.y(), x, y)])
                .collect()
        })
        .collect();

    // cuspidal directions at the origin image, when the branch analysis
    // applies
    let cusp_dirs = cusp_directions(&f_exact);

    write_svg(svg_path, &image_lines, verdict, &cusp_dirs)?;
    write_polylines(txt_path, &image_lines)?;
    Ok(PlotSummary {
        verdict,
        polylines: image_lines.len(),
        points: image_lines.iter().map(|l| l.len()).sum(),
    })
}

fn cusp_directions(f: &MapJet2<Scalar>) -> Vec<[f64; 2]> {
    if f.order() < 4 {
        return Vec::new();
    }
    let id = Identifier::jacobian(f);
    let Ok(h) = corank2::classify::hessian_at_origin(&id) else {
        return Vec::new();
    };
    if h.index != HessIndex::IndexOne {
        return Vec::new();
    }
    let Ok(roots) = corank2::classify::hesse_quadric_roots(&h) else {
        return Vec::new();
    };
    let Ok(branches) = branch_curves(&id, &roots) else {
        return Vec::new();
    };
    let Ok((c1, c2)) = branch_image_cusps(f, &branches) else {
        return Vec::new();
    };
    [c1, c2]
        .iter()
        .filter(|c| c.is_cusp)
        .filter_map(|c| {
            let x = c.c2[0].to_f64()?;
            let y = c.c2[1].to_f64()?;
            let norm = x.hypot(y);
            if norm > 0.0 {
                Some([x / norm, y / norm])
            } else {
                None
            }
        })
        .collect()
}

fn write_svg(
    path: &Path,
    lines: &[Vec<[f64; 2]>],
    verdict: Verdict,
    cusp_dirs: &[[f64; 2]],
) -> Result<(), CliError> {
    // bounding box of the image with a margin
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for line in lines {
        for p in line {
            for k in 0..2 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
    }
    if lines.is_empty() {
        min = [-1.0, -1.0];
        max = [1.0, 1.0];
    }
    for k in 0..2 {
        min[k] = min[k].min(-1e-3);
        max[k] = max[k].max(1e-3);
    }
    let span = ((max[0] - min[0]).max(max[1] - min[1])).max(1e-12);
    let margin = 0.1 * span;
    let view = [
        min[0] - margin,
        min[1] - margin,
        (max[0] - min[0]) + 2.0 * margin,
        (max[1] - min[1]) + 2.0 * margin,
    ];
    let stroke = span / 200.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        view[0], view[1], view[2], view[3]
    );
    // flip y so the figure is in the usual orientation
    let _ = writeln!(
        svg,
        "<g transform=\"translate(0,{}) scale(1,-1)\">",
        view[1] * 2.0 + view[3]
    );
    for line in lines {
        let pts: Vec<String> = line.iter().map(|p| format!("{},{}", p[0], p[1])).collect();
        let _ = writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
            pts.join(" "),
            stroke
        );
    }
    // origin marker
    let _ = writeln!(
        svg,
        "<circle cx=\"0\" cy=\"0\" r=\"{}\" fill=\"{}\"/>",
        stroke * 2.5,
        if lines.is_empty() { "red" } else { "blue" }
    );
    for d in cusp_dirs {
        let len = span * 0.12;
        let _ = writeln!(
            svg,
            "<line x1=\"0\" y1=\"0\" x2=\"{}\" y2=\"{}\" stroke=\"red\" stroke-width=\"{}\" stroke-dasharray=\"{},{}\"/>",
            d[0] * len,
            d[1] * len,
            stroke,
            stroke * 3.0,
            stroke * 2.0
        );
    }
    let _ = writeln!(svg, "</g>");
    let note = match verdict {
        Verdict::Deltoid => "deltoid: singular value set is the origin at jet level",
        Verdict::Sharksfin => "sharksfin: two cusped arcs meet at the origin",
        _ => "",
    };
    if !note.is_empty() {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\">{}</text>",
            view[0] + margin * 0.5,
            view[1] + margin,
            span / 25.0,
            note
        );
    }
    let _ = writeln!(svg, "</svg>");
    std::fs::write(path, svg)?;
    Ok(())
}

fn write_polylines(path: &Path, lines: &[Vec<[f64; 2]>]) -> Result<(), CliError> {
    let mut out = String::from("# singular value set polylines: x y per line, blank line separates arcs\n");
    for (k, line) in lines.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        for p in line {
            let _ = writeln!(out, "{} {}", p[0], p[1]);
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_document;

    #[test]
    fn sharksfin_image_has_arcs_through_origin() {
        let doc = parse_document(
            "corank2 input 1\nmode germ\nterm 1 1 1 1\nterm 2 2 0 1\nterm 2 0 2 1\nterm 2 3 0 1\n",
        )
        .unwrap();
        let dir = std::env::temp_dir().join("corank2-plot-test");
        std::fs::create_dir_all(&dir).unwrap();
        let svg = dir.join("shark.svg");
        let txt = dir.join("shark.txt");
        let cfg = PlotConfig {
            window: 0.5,
            resolution: 80,
            order: 4,
        };
        let summary = plot_singular_image(&doc, &cfg, &svg, &txt).unwrap();
        assert_eq!(summary.verdict, Verdict::Sharksfin);
        assert!(summary.polylines >= 1);
        let svg_text = std::fs::read_to_string(&svg).unwrap();
        assert!(svg_text.contains("<polyline"));
        let txt_text = std::fs::read_to_string(&txt).unwrap();
        assert!(txt_text.lines().count() > 10);
    }

    #[test]
    fn deltoid_image_is_isolated_point() {
        let doc = parse_document(
            "corank2 input 1\nmode germ\nterm 1 1 1 1\nterm 2 2 0 -1\nterm 2 0 2 1\nterm 2 3 0 1\n",
        )
        .unwrap();
        let dir = std::env::temp_dir().join("corank2-plot-test");
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = PlotConfig {
            window: 0.5,
            resolution: 60,
            order: 4,
        };
        let summary =
            plot_singular_image(&doc, &cfg, &dir.join("d.svg"), &dir.join("d.txt")).unwrap();
        assert_eq!(summary.verdict, Verdict::Deltoid);
        assert_eq!(summary.polylines, 0);
        let svg_text = std::fs::read_to_string(dir.join("d.svg")).unwrap();
        assert!(svg_text.contains("origin at jet level"));
    }

    #[test]
    fn fold_line_gives_single_regular_curve() {
        // (u, v²): singular set is the u-axis, image a single curve.
        let doc = parse_document(
            "corank2 input 1\nmode germ\nterm 1 1 0 1\nterm 2 0 2 1\n",
        )
        .unwrap();
        let dir = std::env::temp_dir().join("corank2-plot-test");
        std::fs::create_dir_all(&dir).unwrap();
        let cfg = PlotConfig {
            window: 0.5,
            resolution: 60,
            order: 4,
        };
        let summary =
            plot_singular_image(&doc, &cfg, &dir.join("f.svg"), &dir.join("f.txt")).unwrap();
        assert_eq!(summary.verdict, Verdict::NotRankZero);
        assert_eq!(summary.polylines, 1);
    }

    #[test]
    fn bad_window_is_rejected() {
        let doc = parse_document(
            "corank2 input 1\nmode germ\nterm 1 1 1 1\nterm 2 2 0 1\nterm 2 0 2 1\n",
        )
        .unwrap();
        let cfg = PlotConfig {
            window: -1.0,
            resolution: 10,
            order: 4,
        };
        let dir = std::env::temp_dir();
        assert!(plot_singular_image(&doc, &cfg, &dir.join("x.svg"), &dir.join("x.txt")).is_err());
    }
}
