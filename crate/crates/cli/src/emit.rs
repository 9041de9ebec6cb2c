//! CSV and SVG emission of signature step functions.

use knotsig::angle::Angle;
use knotsig::enclose::{angle_turns_enclosure, decimal_of_interval};
use knotsig::stepfn::StepFunction;

/// Exact turn fraction when the angle is a rational number of turns,
/// otherwise a `~`-flagged 30-significant-digit decimal.
pub fn turns_label(a: &Angle) -> String {
    match a.turns() {
        Some(q) => format!("{q}"),
        None => {
            let (lo, hi) = angle_turns_enclosure(a, 40);
            format!("~{}", decimal_of_interval(&lo, &hi, 30))
        }
    }
}

/// One row per breakpoint: the angle of the jump in turns and the value
/// on the open arc that follows. The arc before the first jump always
/// carries the value 0.
pub fn csv_of_step(sf: &StepFunction) -> String {
    let mut out = String::from("angle_turns,value\n");
    out.push_str("0,0\n");
    for (angle, value) in sf.jumps() {
        out.push_str(&format!("{},{}\n", turns_label(angle), value));
    }
    out
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 320.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 34.0;
const BOTTOM: f64 = 42.0;

/// Static step plot over half a turn (the function is determined by its
/// values for angles in [0, pi]). Solid horizontal arcs, dashed vertical
/// connectors at the jumps.
pub fn svg_of_step(sf: &StepFunction, title: &str) -> String {
    let jumps = sf.jumps();
    let mut lo = 0i64;
    let mut hi = 0i64;
    for (_, v) in jumps {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    if hi == lo {
        hi = lo + 1;
    }
    let span = (hi - lo) as f64;
    let x_of = |turns: f64| LEFT + (WIDTH - LEFT - RIGHT) * turns / 0.5;
    let y_of = |v: f64| TOP + (HEIGHT - TOP - BOTTOM) * (hi as f64 - v) / span;

    let mut breaks: Vec<(f64, i64)> = vec![(0.0, 0)];
    for (angle, value) in jumps {
        breaks.push((angle.to_f64() / (2.0 * std::f64::consts::PI), *value));
    }
    breaks.push((0.5, breaks.last().expect("nonempty").1));

    let mut arcs = String::new();
    let mut drops = String::new();
    for w in breaks.windows(2) {
        let (x0, v) = w[0];
        let (x1, v1) = w[1];
        arcs.push_str(&format!(
            "M {:.2} {:.2} H {:.2} ",
            x_of(x0),
            y_of(v as f64),
            x_of(x1)
        ));
        if v1 != v {
            drops.push_str(&format!(
                "M {:.2} {:.2} V {:.2} ",
                x_of(x1),
                y_of(v as f64),
                y_of(v1 as f64)
            ));
        }
    }

    let mut ticks = String::new();
    for (angle, _) in jumps {
        let x = x_of(angle.to_f64() / (2.0 * std::f64::consts::PI));
        ticks.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>\n",
            HEIGHT - BOTTOM,
            HEIGHT - BOTTOM + 5.0
        ));
        if jumps.len() <= 6 {
            ticks.push_str(&format!(
                "<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
                HEIGHT - BOTTOM + 16.0,
                turns_label(angle)
            ));
        }
    }

    let zero_y = y_of(0.0);
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx:.2}\" y=\"20\" font-size=\"13\" text-anchor=\"middle\">{title}</text>\n",
            "<line x1=\"{l}\" y1=\"{zy:.2}\" x2=\"{r:.2}\" y2=\"{zy:.2}\" stroke=\"#ccc\"/>\n",
            "<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
            "<line x1=\"{l}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
            "<text x=\"{l}\" y=\"{xb:.2}\" font-size=\"10\" text-anchor=\"middle\">0</text>\n",
            "<text x=\"{r:.2}\" y=\"{xb:.2}\" font-size=\"10\" text-anchor=\"middle\">1/2</text>\n",
            "<text x=\"{yl:.2}\" y=\"{ty:.2}\" font-size=\"10\" text-anchor=\"end\">{hi}</text>\n",
            "<text x=\"{yl:.2}\" y=\"{by:.2}\" font-size=\"10\" text-anchor=\"end\">{lo}</text>\n",
            "<text x=\"{yl:.2}\" y=\"{zt:.2}\" font-size=\"10\" text-anchor=\"end\">0</text>\n",
            "{ticks}",
            "<path d=\"{drops}\" fill=\"none\" stroke=\"#555\" stroke-dasharray=\"3 3\"/>\n",
            "<path d=\"{arcs}\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\"/>\n",
            "</svg>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = (LEFT + WIDTH - RIGHT) / 2.0,
        title = title,
        l = LEFT,
        r = WIDTH - RIGHT,
        t = TOP,
        b = HEIGHT - BOTTOM,
        zy = zero_y,
        xb = HEIGHT - BOTTOM + 28.0,
        yl = LEFT - 6.0,
        ty = TOP + 4.0,
        by = HEIGHT - BOTTOM + 4.0,
        zt = zero_y + 4.0,
        hi = hi,
        lo = lo,
        ticks = ticks,
        drops = drops,
        arcs = arcs,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use knotsig::knot::Knot;
    use knotsig::seifert::seifert_trefoil;

    #[test]
    fn trefoil_csv_rows() {
        let k = Knot::from_matrix("trefoil", seifert_trefoil());
        let csv = csv_of_step(k.signature_function().unwrap());
        assert_eq!(csv, "angle_turns,value\n0,0\n1/6,-2\n");
    }

    #[test]
    fn algebraic_jump_gets_decimal_label() {
        let k = knotsig::knot::horn_knot(2);
        let csv = csv_of_step(k.signature_function().unwrap());
        let row = csv.lines().nth(2).unwrap();
        assert!(row.starts_with('~'), "{row}");
        let digits: String = row
            .split(',')
            .next()
            .unwrap()
            .chars()
            .filter(|c| c.is_ascii_digit())
            .collect();
        assert!(digits.len() >= 30, "{row}");
    }

    #[test]
    fn svg_is_wellformed_and_deterministic() {
        let k = Knot::from_matrix("trefoil", seifert_trefoil());
        let a = svg_of_step(k.signature_function().unwrap(), "trefoil");
        let b = svg_of_step(k.signature_function().unwrap(), "trefoil");
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert!(a.contains("1/6"));
    }
}
