//! SVG rendering of a polygon and its adjoint curve. This is the only place
//! that uses floating point, and nothing computed here flows back.

use std::fmt::Write;

use num_traits::ToPrimitive;
use wachspress::adjoint::adjoint_kernel_with;
use wachspress::exactalg::{MultiPoly, Rational};
use wachspress::polytope::Polytope;
use wachspress::residual::residual_arrangement;
use wachspress::Result;

const SIZE: f64 = 480.0;
const GRID: usize = 240;

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Float copy of a homogeneous ternary form, evaluated at `(1, x, y)`.
struct FloatPoly(Vec<(f64, [u32; 3])>);

impl FloatPoly {
    fn new(p: &MultiPoly) -> Self {
        FloatPoly(
            p.terms()
                .map(|(m, c)| {
                    let e = m.exponents();
                    (f(c), [e[0], e[1], e[2]])
                })
                .collect(),
        )
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.0.iter().map(|(c, e)| c * x.powi(e[1] as i32) * y.powi(e[2] as i32)).sum()
    }
}

struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) * self.scale, SIZE - (y - self.y0) * self.scale)
    }
}

/// Segment of the line `c0 + c1 x + c2 y = 0` inside the box.
fn clip_line(c: [f64; 3], lo: (f64, f64), hi: (f64, f64)) -> Option<[(f64, f64); 2]> {
    let mut pts = Vec::new();
    if c[2].abs() > 1e-12 {
        for x in [lo.0, hi.0] {
            let y = -(c[0] + c[1] * x) / c[2];
            if (lo.1..=hi.1).contains(&y) {
                pts.push((x, y));
            }
        }
    }
    if c[1].abs() > 1e-12 {
        for y in [lo.1, hi.1] {
            let x = -(c[0] + c[2] * y) / c[1];
            if (lo.0..=hi.0).contains(&x) {
                pts.push((x, y));
            }
        }
    }
    (pts.len() >= 2).then(|| [pts[0], pts[pts.len() - 1]])
}

/// Zero set by marching squares on the sign of `g`.
fn contour(g: &FloatPoly, lo: (f64, f64), hi: (f64, f64)) -> Vec<[(f64, f64); 2]> {
    let step = ((hi.0 - lo.0) / GRID as f64, (hi.1 - lo.1) / GRID as f64);
    let at = |i: usize, j: usize| (lo.0 + i as f64 * step.0, lo.1 + j as f64 * step.1);
    let values: Vec<Vec<f64>> = (0..=GRID)
        .map(|i| (0..=GRID).map(|j| {
            let (x, y) = at(i, j);
            g.eval(x, y)
        }).collect())
        .collect();
    let mut segs = Vec::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let mut cross = Vec::new();
            for k in 0..4 {
                let (a, b) = (corners[k], corners[(k + 1) % 4]);
                let (va, vb) = (values[a.0][a.1], values[b.0][b.1]);
                if (va < 0.0) != (vb < 0.0) {
                    let s = va / (va - vb);
                    let (pa, pb) = (at(a.0, a.1), at(b.0, b.1));
                    cross.push((pa.0 + s * (pb.0 - pa.0), pa.1 + s * (pb.1 - pa.1)));
                }
            }
            for pair in cross.chunks_exact(2) {
                segs.push([pair[0], pair[1]]);
            }
        }
    }
    segs
}

pub fn render(p: &Polytope) -> Result<String> {
    let r = residual_arrangement(p);
    let adjoint = adjoint_kernel_with(p, &r)?;
    let verts: Vec<(f64, f64)> = p.vertices().iter().map(|v| (f(&v[0]), f(&v[1]))).collect();
    let points: Vec<(f64, f64)> = r
        .components()
        .filter_map(|c| {
            let b = &c.param_basis[0];
            (!num_traits::Zero::is_zero(&b[0])).then(|| (f(&(&b[1] / &b[0])), f(&(&b[2] / &b[0]))))
        })
        .collect();
    let all: Vec<&(f64, f64)> = verts.iter().chain(&points).collect();
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    for &&(x, y) in &all {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let side = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9) * 1.2;
    let mid = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
    lo = (mid.0 - side / 2.0, mid.1 - side / 2.0);
    hi = (mid.0 + side / 2.0, mid.1 + side / 2.0);
    let frame = Frame {
        x0: lo.0,
        y0: lo.1,
        scale: SIZE / side,
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for form in p.facets() {
        if let Some([a, b]) = clip_line([f(&form[0]), f(&form[1]), f(&form[2])], lo, hi) {
            let (a, b) = (frame.px(a.0, a.1), frame.px(b.0, b.1));
            let _ = writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-width="0.8"/>"#, a.0, a.1, b.0, b.1);
        }
    }
    let poly: Vec<String> = polygon_order(p)
        .iter()
        .map(|&i| {
            let (x, y) = frame.px(verts[i].0, verts[i].1);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(s, r#"<polygon points="{}" fill="lightsteelblue" fill-opacity="0.5" stroke="black" stroke-width="1.5"/>"#, poly.join(" "));
    let curve = FloatPoly::new(&adjoint);
    for [a, b] in contour(&curve, lo, hi) {
        let (a, b) = (frame.px(a.0, a.1), frame.px(b.0, b.1));
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="crimson" stroke-width="1.2"/>"#, a.0, a.1, b.0, b.1);
    }
    for &(x, y) in &points {
        let (x, y) = frame.px(x, y);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Vertex indices in cyclic order around the polygon, following edges.
fn polygon_order(p: &Polytope) -> Vec<usize> {
    let n = p.vertex_count();
    let mut order = vec![0];
    while order.len() < n {
        let last = *order.last().unwrap();
        let next = (0..n).find(|&v| {
            !order.contains(&v) && (0..p.facet_count()).any(|f| p.incidence()[f][last] && p.incidence()[f][v])
        });
        match next {
            Some(v) => order.push(v),
            None => break,
        }
    }
    order
}
