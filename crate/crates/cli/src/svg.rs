//! Static SVG rendering of superimposed map graphs.
//!
//! The graph of each map is one polyline whose vertices are exactly its
//! breakpoints, scaled to the requested pixel box (y grows upward). Every
//! polyline also carries its exact breakpoint list as `"p/q,r/s"` pairs in
//! a data attribute, so the rendering never loses the underlying rationals.
//! No timestamps or generator comments are emitted: identical inputs give
//! byte-identical output.

use num_traits::{Signed, ToPrimitive};
use ploi::rational::{format_rational, Rational};
use ploi::PLMap;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Scales a coordinate in `[0,1]` to pixels, exactly when the scaled value
/// has a terminating decimal expansion.
fn scaled(value: &Rational, extent: u32) -> String {
    let v = value * Rational::from_integer(extent.into());
    decimal_string(&v)
}

fn decimal_string(v: &Rational) -> String {
    use num_bigint::BigInt;
    let mut den = v.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let zero = BigInt::from(0);
    while &den % &two == zero {
        den /= &two;
        twos += 1;
    }
    while &den % &five == zero {
        den /= &five;
        fives += 1;
    }
    if den == BigInt::from(1) {
        let k = twos.max(fives);
        let digits = v.numer() * BigInt::from(10).pow(k) / v.denom();
        let mut s = digits.abs().to_string();
        if k > 0 {
            while s.len() <= k as usize {
                s.insert(0, '0');
            }
            s.insert(s.len() - k as usize, '.');
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        if digits < zero {
            s.insert(0, '-');
        }
        s
    } else {
        format!("{}", v.to_f64().unwrap_or(0.0))
    }
}

/// Renders one SVG with all given maps superimposed on the unit square.
pub fn render(maps: &[PLMap], width: u32, height: u32) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = width,
        h = height
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\" stroke=\"#cccccc\"/>\n",
        w = width,
        h = height
    ));
    // diagonal reference line for the identity
    out.push_str(&format!(
        "  <line x1=\"0\" y1=\"{h}\" x2=\"{w}\" y2=\"0\" stroke=\"#dddddd\" stroke-dasharray=\"4,4\"/>\n",
        w = width,
        h = height
    ));
    for (i, map) in maps.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = map
            .breakpoints()
            .iter()
            .map(|p| {
                let px = scaled(&p.x, width);
                let py_raw = &p.y * Rational::from_integer(height.into());
                let py = Rational::from_integer(height.into()) - py_raw;
                format!("{},{}", px, decimal_string(&py))
            })
            .collect();
        let exact: Vec<String> = map
            .breakpoints()
            .iter()
            .map(|p| format!("{},{}", format_rational(&p.x), format_rational(&p.y)))
            .collect();
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\" data-breakpoints=\"{}\"/>\n",
            color,
            points.join(" "),
            exact.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}
