//! Minimal line plots of a spectral series as standalone SVG.

use std::fmt::Write;

use super::format::fmt_num;
use crate::observables::SpectralPoint;
use crate::sweep::SpectralSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Panel {
    /// Real and imaginary parts of the susceptibility proxy.
    Chi,
    /// The four level populations.
    Populations,
}

/// (label, colour, accessor)
type Curve = (&'static str, &'static str, fn(&SpectralPoint) -> f64);

impl Panel {
    fn curves(self) -> &'static [Curve] {
        match self {
            Panel::Chi => &[
                ("Re chi", "#1f77b4", |p| p.chi_re),
                ("Im chi", "#d62728", |p| p.chi_im),
            ],
            Panel::Populations => &[
                ("rho_ee", "#2ca02c", |p| p.rho_ee),
                ("rho_11", "#1f77b4", |p| p.rho_11),
                ("rho_00", "#9467bd", |p| p.rho_00),
                ("rho_-1-1", "#ff7f0e", |p| p.rho_m1m1),
            ],
        }
    }

    fn title(self) -> &'static str {
        match self {
            Panel::Chi => "probe response",
            Panel::Populations => "populations",
        }
    }
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

/// Data extent padded by 5% on each side; a zero-width extent is widened.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let (lo, hi) = if hi > lo {
        (lo, hi)
    } else {
        let half = 0.5 * lo.abs().max(1.0);
        (lo - half, hi + half)
    };
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

pub fn render_svg(series: &SpectralSeries, panel: Panel) -> String {
    let curves = panel.curves();
    let xs = &series.grid;
    let (x_lo, x_hi) = padded(
        xs.first().copied().unwrap_or(0.0),
        xs.last().copied().unwrap_or(0.0),
    );
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in series.solved() {
        for (_, _, get) in curves {
            let y = get(p);
            y_lo = y_lo.min(y);
            y_hi = y_hi.max(y);
        }
    }
    if !y_lo.is_finite() {
        (y_lo, y_hi) = (0.0, 0.0);
    }
    let (y_lo, y_hi) = padded(y_lo, y_hi);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let p = &series.params;
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" font-family="sans-serif" font-size="15" text-anchor="middle">{} (Vc = {}, Vp = {}, omega_1m1 = {})</text>"#,
        LEFT + 0.5 * plot_w,
        panel.title(),
        fmt_num(p.vc.norm()),
        fmt_num(p.vp.norm()),
        fmt_num(p.omega_1m1),
    );

    // frame and ticks
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let xv = x_lo + f * (x_hi - x_lo);
        let yv = y_lo + f * (y_hi - y_lo);
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 18.0,
            fmt_num(round_tick(xv)),
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            fmt_num(round_tick(yv)),
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">delta / gamma</text>"#,
        LEFT + 0.5 * plot_w,
        HEIGHT - 15.0
    );

    for (k, (label, color, get)) in curves.iter().enumerate() {
        // a gap ends the current polyline
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, s: &mut String| {
            if !seg.is_empty() {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                    seg.join(" ")
                );
                seg.clear();
            }
        };
        for (x, pt) in xs.iter().zip(&series.points) {
            match pt {
                Some(pt) => segment.push(format!("{:.2},{:.2}", sx(*x), sy(get(pt)))),
                None => flush(&mut segment, &mut s),
            }
        }
        flush(&mut segment, &mut s);

        let ly = TOP + 15.0 + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}" font-family="sans-serif" font-size="12">{label}</text>"#,
            lx + 25.0,
            lx + 32.0,
            ly + 4.0,
        );
    }
    s.push_str("</svg>\n");
    s
}

fn round_tick(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SystemParams;
    use crate::sweep::Provenance;

    fn flat_series(n: usize) -> SpectralSeries {
        let grid: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let points = grid
            .iter()
            .map(|&delta| {
                Some(SpectralPoint {
                    delta,
                    chi_re: 0.25,
                    chi_im: 0.25,
                    rho_ee: 0.0,
                    rho_11: 0.5,
                    rho_00: 0.0,
                    rho_m1m1: 0.5,
                })
            })
            .collect();
        SpectralSeries {
            params: SystemParams::default(),
            grid,
            points,
            provenance: Provenance::Fourier,
        }
    }

    fn polylines(svg: &str) -> Vec<Vec<(f64, f64)>> {
        svg.lines()
            .filter_map(|l| l.split("points=\"").nth(1))
            .map(|rest| {
                rest.split('"')
                    .next()
                    .unwrap()
                    .split(' ')
                    .map(|xy| {
                        let (x, y) = xy.split_once(',').unwrap();
                        (x.parse().unwrap(), y.parse().unwrap())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn constant_series_draws_flat_lines() {
        let svg = render_svg(&flat_series(7), Panel::Chi);
        let lines = polylines(&svg);
        assert_eq!(lines.len(), 2);
        for line in lines {
            assert_eq!(line.len(), 7);
            assert!(line.iter().all(|&(_, y)| y == line[0].1));
        }
        assert!(svg.contains("Re chi") && svg.contains("Im chi"));
    }

    #[test]
    fn populations_panel_has_four_curves() {
        let svg = render_svg(&flat_series(5), Panel::Populations);
        assert_eq!(polylines(&svg).len(), 4);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn gap_splits_polyline() {
        let mut s = flat_series(6);
        s.points[3] = None;
        assert_eq!(polylines(&render_svg(&s, Panel::Chi)).len(), 4);
    }

    #[test]
    fn deterministic() {
        let s = flat_series(9);
        assert_eq!(render_svg(&s, Panel::Chi), render_svg(&s, Panel::Chi));
    }
}
