//! SVG rendering of failure-rate curves.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::table::Row;
use crate::CliError;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
    from: f64,
    to: f64,
}

impl Axis {
    fn new(lo: f64, hi: f64, log: bool, from: f64, to: f64) -> Self {
        let (mut lo, mut hi) = if log {
            (lo.log10(), hi.log10())
        } else {
            (lo, hi)
        };
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            let pad = if lo == 0.0 { 0.5 } else { lo.abs() * 0.1 };
            lo -= pad;
            hi += pad;
        }
        Axis {
            lo,
            hi,
            log,
            from,
            to,
        }
    }

    fn map(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        self.from + (v - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }

    fn ticks(&self) -> Vec<f64> {
        (0..TICKS)
            .map(|i| {
                let t = self.lo + (self.hi - self.lo) * i as f64 / (TICKS - 1) as f64;
                if self.log {
                    10f64.powf(t)
                } else {
                    t
                }
            })
            .collect()
    }
}

fn label(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e4) {
        format!("{v:.1e}")
    } else {
        format!("{v:.4}")
    }
}

/// Failure rate against `p`, one curve per size with 95% error bars.
pub fn render(rows: &[Row], log_y: bool) -> Result<String, CliError> {
    if rows.is_empty() {
        return Err(CliError::Input("no data rows to plot".into()));
    }
    let mut curves: BTreeMap<usize, Vec<&Row>> = BTreeMap::new();
    for r in rows {
        curves.entry(r.size).or_default().push(r);
    }
    for c in curves.values_mut() {
        c.sort_by(|a, b| a.p.total_cmp(&b.p));
    }

    let pmin = rows.iter().map(|r| r.p).fold(f64::INFINITY, f64::min);
    let pmax = rows.iter().map(|r| r.p).fold(f64::NEG_INFINITY, f64::max);
    let ymax = rows
        .iter()
        .map(|r| r.ci_high.max(r.failure_rate))
        .fold(0.0, f64::max);
    // Zero rates sit on the floor of a log axis.
    let floor = rows
        .iter()
        .flat_map(|r| [r.ci_low, r.failure_rate])
        .filter(|&v| v > 0.0)
        .fold(f64::INFINITY, f64::min);
    let floor = if floor.is_finite() { floor / 2.0 } else { 1e-4 };
    let clamp = |v: f64| if log_y { v.max(floor) } else { v };
    let x = Axis::new(pmin, pmax, false, LEFT, WIDTH - RIGHT);
    let y = if log_y {
        Axis::new(floor, ymax.max(floor * 10.0), true, HEIGHT - BOTTOM, TOP)
    } else {
        Axis::new(
            0.0,
            if ymax > 0.0 { ymax * 1.05 } else { 1.0 },
            false,
            HEIGHT - BOTTOM,
            TOP,
        )
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    );
    for t in x.ticks() {
        let px = x.map(t);
        let _ = writeln!(
            s,
            r#"<line class="tick" x1="{px:.2}" y1="{y0}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            s,
            r#"<text class="tick-label" x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 20.0,
            label(t)
        );
    }
    for t in y.ticks() {
        let py = y.map(t);
        let _ = writeln!(
            s,
            r#"<line class="tick" x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            s,
            r#"<text class="tick-label" x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            py + 4.0,
            label(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="{:.2}" y="{:.2}" text-anchor="middle">physical error rate p</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text class="axis-label" x="15" y="{:.2}" text-anchor="middle" transform="rotate(-90 15 {:.2})">logical failure rate</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (k, (size, pts)) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(s, r#"<g class="series" data-size="{size}">"#);
        if pts.len() > 1 {
            let coords: Vec<String> = pts
                .iter()
                .map(|r| format!("{:.2},{:.2}", x.map(r.p), y.map(clamp(r.failure_rate))))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline class="curve" points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                coords.join(" ")
            );
        }
        for r in pts {
            let px = x.map(r.p);
            let _ = writeln!(
                s,
                r#"<line class="errorbar" x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="{color}"/>"#,
                y.map(clamp(r.ci_low)),
                y.map(clamp(r.ci_high))
            );
            let _ = writeln!(
                s,
                r#"<circle class="marker" cx="{px:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                y.map(clamp(r.failure_rate))
            );
        }
        let ly = TOP + 10.0 + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 20.0;
        let _ = writeln!(
            s,
            r#"<line class="legend-swatch" x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="3"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            s,
            r#"<text class="legend" x="{}" y="{}">L = {size}</text>"#,
            lx + 26.0,
            ly + 4.0
        );
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    Ok(s)
}
