//! Minimal static SVG rendering of sweep output. Convenience only; the CSV
//! is the normative record.

use std::fmt::Write as _;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

pub enum Plot {
    Lines {
        x_label: String,
        series: Vec<(String, Vec<(f64, f64)>)>,
    },
    Heat {
        x_label: String,
        y_label: String,
        x: Vec<f64>,
        y: Vec<f64>,
        values: Vec<Vec<f64>>,
    },
}

fn finite_bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn axis_ticks(lo: f64, hi: f64) -> Vec<f64> {
    (0..=5).map(|i| lo + (hi - lo) * i as f64 / 5.0).collect()
}

fn heat_color(t: f64) -> String {
    // Dark blue -> yellow.
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 * t) as u8;
    let g = (220.0 * t.powf(0.7)) as u8;
    let b = (140.0 * (1.0 - t) + 40.0) as u8;
    format!("#{r:02x}{g:02x}{b:02x}")
}

pub fn render(title: &str, plot: &Plot) -> String {
    let mut svg = String::new();
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        MARGIN_LEFT + plot_w / 2.0,
        title
    );

    match plot {
        Plot::Lines { x_label, series } => {
            let (x_lo, x_hi) =
                finite_bounds(series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.0)));
            let (y_lo, y_hi) =
                finite_bounds(series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1)));
            let map_x = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
            let map_y = |y: f64| MARGIN_TOP + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;

            for tick in axis_ticks(x_lo, x_hi) {
                let x = map_x(tick);
                let _ = writeln!(
                    svg,
                    "<line x1=\"{x:.1}\" y1=\"{}\" x2=\"{x:.1}\" y2=\"{}\" stroke=\"#ddd\"/>\n\
                     <text x=\"{x:.1}\" y=\"{}\" text-anchor=\"middle\">{tick:.3}</text>",
                    MARGIN_TOP,
                    MARGIN_TOP + plot_h,
                    MARGIN_TOP + plot_h + 18.0
                );
            }
            for tick in axis_ticks(y_lo, y_hi) {
                let y = map_y(tick);
                let _ = writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>\n\
                     <text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{tick:.3}</text>",
                    MARGIN_LEFT,
                    MARGIN_LEFT + plot_w,
                    MARGIN_LEFT - 6.0,
                    y + 4.0
                );
            }

            for (index, (name, points)) in series.iter().enumerate() {
                let color = PALETTE[index % PALETTE.len()];
                let path: String = points
                    .iter()
                    .filter(|p| p.0.is_finite() && p.1.is_finite())
                    .map(|p| format!("{:.2},{:.2}", map_x(p.0), map_y(p.1)))
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(
                    svg,
                    "<polyline points=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>"
                );
                let legend_y = MARGIN_TOP + 16.0 * index as f64;
                let _ = writeln!(
                    svg,
                    "<rect x=\"{}\" y=\"{:.1}\" width=\"12\" height=\"4\" fill=\"{color}\"/>\n\
                     <text x=\"{}\" y=\"{:.1}\">{name}</text>",
                    MARGIN_LEFT + plot_w + 12.0,
                    legend_y,
                    MARGIN_LEFT + plot_w + 30.0,
                    legend_y + 6.0
                );
            }
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>",
                MARGIN_LEFT + plot_w / 2.0,
                HEIGHT - 12.0
            );
        }
        Plot::Heat {
            x_label,
            y_label,
            x,
            y,
            values,
        } => {
            let (v_lo, v_hi) = finite_bounds(values.iter().flatten().cloned());
            let cell_w = plot_w / x.len() as f64;
            let cell_h = plot_h / y.len() as f64;
            for (i, row) in values.iter().enumerate() {
                for (j, &value) in row.iter().enumerate() {
                    if !value.is_finite() {
                        continue;
                    }
                    let t = (value - v_lo) / (v_hi - v_lo).max(f64::MIN_POSITIVE);
                    let _ = writeln!(
                        svg,
                        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
                        MARGIN_LEFT + i as f64 * cell_w,
                        MARGIN_TOP + plot_h - (j as f64 + 1.0) * cell_h,
                        cell_w + 0.5,
                        cell_h + 0.5,
                        heat_color(t)
                    );
                }
            }
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label} \
                 (range {:.3}..{:.3}); color: {y_label}</text>",
                MARGIN_LEFT + plot_w / 2.0,
                HEIGHT - 12.0,
                x.first().copied().unwrap_or(0.0),
                x.last().copied().unwrap_or(0.0)
            );
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">low {v_lo:.4} .. high {v_hi:.4}</text>",
                MARGIN_LEFT + plot_w / 2.0,
                MARGIN_TOP - 8.0
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_chart_renders_every_series() {
        let plot = Plot::Lines {
            x_label: "z".into(),
            series: vec![
                ("a".into(), vec![(0.0, 0.0), (1.0, 1.0)]),
                ("b".into(), vec![(0.0, 1.0), (1.0, 0.0)]),
            ],
        };
        let svg = render("test", &plot);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn heat_chart_renders_cells() {
        let plot = Plot::Heat {
            x_label: "z".into(),
            y_label: "total".into(),
            x: vec![0.0, 1.0],
            y: vec![0.0, 1.0],
            values: vec![vec![1.0, 2.0], vec![3.0, 4.0]],
        };
        let svg = render("test", &plot);
        assert_eq!(svg.matches("<rect").count(), 5); // 4 cells + background
    }
}
