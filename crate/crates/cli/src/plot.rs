use std::fmt::Write;

use sdlab_core::numrange::BoundarySample;

pub fn boundary_csv(samples: &[BoundarySample]) -> String {
    let mut out = String::from("theta,support,re,im\n");
    for s in samples {
        writeln!(
            out,
            "{:.12},{:.12},{:.12},{:.12}",
            s.theta, s.support, s.point.re, s.point.im
        )
        .expect("writing to a String");
    }
    out
}

/// One closed polyline through the boundary points, viewBox fitted to the
/// data with a 5% margin. The y axis is flipped so Im points up.
pub fn boundary_svg(samples: &[BoundarySample]) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for s in samples {
        x0 = x0.min(s.point.re);
        x1 = x1.max(s.point.re);
        y0 = y0.min(-s.point.im);
        y1 = y1.max(-s.point.im);
    }
    if samples.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    // A degenerate range (a point or a real segment) still needs a box.
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let w = (x1 - x0).max(span * 0.02);
    let h = (y1 - y0).max(span * 0.02);
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let (w, h) = (w * 1.1, h * 1.1);
    let stroke = span * 0.005;

    let mut points = String::new();
    for (i, s) in samples.iter().chain(samples.first()).enumerate() {
        if i > 0 {
            points.push(' ');
        }
        write!(points, "{:.9},{:.9}", s.point.re, -s.point.im).expect("writing to a String");
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.9} {:.9} {:.9} {:.9}\">\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"{:.9}\" points=\"{points}\"/>\n\
         </svg>\n",
        cx - w / 2.0,
        cy - h / 2.0,
        w,
        h,
        stroke
    )
}
