//! Self-contained SVG line plot of a photon-number series on log–log axes.

use std::fmt::Write as _;

use crate::model::{MethodTag, PhotonNumberSeries};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
/// Decades shown below the largest value.
const MAX_DECADES: f64 = 14.0;

fn color(tag: MethodTag) -> &'static str {
    match tag {
        MethodTag::Quadrature => "#1f77b4",
        MethodTag::QuadratureGeneral => "#17becf",
        MethodTag::ClosedWeak => "#2ca02c",
        MethodTag::ClosedGeneral => "#d62728",
        MethodTag::SeriesOracle => "#9467bd",
        MethodTag::Phenomenological => "#ff7f0e",
        MethodTag::OdeOracle => "#8c564b",
    }
}

fn dash(tag: MethodTag) -> &'static str {
    match tag {
        MethodTag::ClosedWeak | MethodTag::SeriesOracle => " stroke-dasharray=\"6 3\"",
        _ => "",
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl Axis {
    fn map(&self, v: f64) -> f64 {
        let s = (v.log10() - self.lo) / (self.hi - self.lo);
        self.from + s * (self.to - self.from)
    }
}

/// Renders every curve against `t/τ`. Non-positive values are skipped (they have
/// no place on a log axis). `asymptote` draws a dashed horizontal reference line;
/// `stamp` is embedded as a caption when given.
pub fn render_svg(series: &PhotonNumberSeries, asymptote: Option<f64>, stamp: Option<&str>) -> String {
    let x: Vec<f64> = series.times_over_tau().collect();
    let positive = |v: &f64| *v > 0.0 && v.is_finite();

    let xs: Vec<f64> = x.iter().copied().filter(positive).collect();
    let (mut x_lo, mut x_hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
    if !x_lo.is_finite() {
        (x_lo, x_hi) = (1e-3, 10.0);
    }
    let mut ys: Vec<f64> = series.curves().flat_map(|(_, v)| v.iter().copied()).filter(positive).collect();
    if let Some(a) = asymptote.filter(positive) {
        ys.push(a);
    }
    let y_hi = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let y_lo = ys.iter().copied().fold(f64::INFINITY, f64::min);
    let (y_hi, y_lo) = if y_hi.is_finite() { (y_hi, y_lo) } else { (1.0, 0.1) };

    let x_axis = Axis {
        lo: x_lo.log10().floor(),
        hi: x_hi.log10().ceil().max(x_lo.log10().floor() + 1.0),
        from: LEFT,
        to: WIDTH - RIGHT,
    };
    let top = y_hi.log10().ceil();
    let bottom = y_lo.log10().floor().max(top - MAX_DECADES).min(top - 1.0);
    let y_axis = Axis {
        lo: bottom,
        hi: top,
        from: HEIGHT - BOTTOM,
        to: TOP,
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (x0, x1, y0, y1) = (x_axis.from, x_axis.to, y_axis.from, y_axis.to);
    let _ = writeln!(
        s,
        r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );

    for d in (x_axis.lo as i32)..=(x_axis.hi as i32) {
        let px = x_axis.map(10f64.powi(d));
        let _ = writeln!(s, r##"<line x1="{px:.2}" y1="{y1:.2}" x2="{px:.2}" y2="{y0:.2}" stroke="#dddddd"/>"##);
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">1e{d}</text>"#,
            y0 + 18.0
        );
    }
    let step = ((y_axis.hi - y_axis.lo) / 8.0).ceil().max(1.0) as i32;
    let mut d = y_axis.lo as i32;
    while d <= y_axis.hi as i32 {
        let py = y_axis.map(10f64.powi(d));
        let _ = writeln!(s, r##"<line x1="{x0:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}" stroke="#dddddd"/>"##);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"#,
            x0 - 6.0,
            py + 4.0
        );
        d += step;
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t / tau</text>"#,
        0.5 * (x0 + x1),
        HEIGHT - 18.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">mean photon number</text>"#,
        0.5 * (y0 + y1),
        0.5 * (y0 + y1)
    );

    let floor = 10f64.powf(y_axis.lo);
    let _ = writeln!(s, r#"<g clip-path="none">"#);
    for (tag, values) in series.curves() {
        let mut path = String::new();
        for (xv, yv) in x.iter().zip(values) {
            if !positive(xv) || !positive(yv) || *yv < floor {
                continue;
            }
            let cmd = if path.is_empty() { 'M' } else { 'L' };
            let _ = write!(path, "{cmd}{:.2},{:.2} ", x_axis.map(*xv), y_axis.map(*yv));
        }
        if !path.is_empty() {
            let _ = writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{}" stroke-width="1.8"{}/>"#,
                path.trim_end(),
                color(tag),
                dash(tag)
            );
        }
    }
    if let Some(a) = asymptote.filter(positive) {
        let py = y_axis.map(a);
        let _ = writeln!(
            s,
            r#"<line x1="{x0:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}" stroke="black" stroke-dasharray="4 4"/>"#
        );
    }
    let _ = writeln!(s, "</g>");

    let lx = x1 + 16.0;
    let mut ly = y1 + 10.0;
    for (tag, _) in series.curves() {
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="1.8"{}/>"#,
            lx + 24.0,
            color(tag),
            dash(tag)
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 30.0, ly + 4.0, tag.as_str());
        ly += 20.0;
    }
    if asymptote.filter(positive).is_some() {
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="black" stroke-dasharray="4 4"/>"#,
            lx + 24.0
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">sinh^2(nu0/gamma)</text>"#, lx + 30.0, ly + 4.0);
    }
    if let Some(stamp) = stamp {
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" text-anchor="end" fill="#777777" font-size="10">{}</text>"##,
            WIDTH - 8.0,
            HEIGHT - 6.0,
            escape(stamp)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
