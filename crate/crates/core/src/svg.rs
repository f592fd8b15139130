//! Plain SVG drawings of a polygon with a ray set, for the `tropical` command.

use std::fmt::Write;

use num_bigint::BigInt;

use crate::error::Result;
use crate::lattice::{lattice_points, LatticePolytope, RaySet};

/// Pixels per lattice unit unless overridden.
pub const DEFAULT_SCALE: u32 = 40;

struct Bounds {
    min_x: BigInt,
    max_x: BigInt,
    min_y: BigInt,
    max_y: BigInt,
}

impl Bounds {
    fn around_origin() -> Self {
        let z = BigInt::from(0);
        Bounds { min_x: z.clone(), max_x: z.clone(), min_y: z.clone(), max_y: z }
    }

    fn include(&mut self, x: &BigInt, y: &BigInt) {
        if x < &self.min_x {
            self.min_x = x.clone();
        }
        if x > &self.max_x {
            self.max_x = x.clone();
        }
        if y < &self.min_y {
            self.min_y = y.clone();
        }
        if y > &self.max_y {
            self.max_y = y.clone();
        }
    }
}

/// Draws `polytope` (filled), its lattice points, and each ray as the segment
/// from the origin to its primitive vector. Lattice `y` points up.
pub fn render(polytope: &LatticePolytope, rays: &RaySet, scale: u32) -> Result<String> {
    let s = BigInt::from(scale);
    let xy = |p: &crate::lattice::IntVector| -> (BigInt, BigInt) {
        let e = p.entries();
        let y = e.get(1).cloned().unwrap_or_default();
        (e[0].clone(), y)
    };
    // SVG coordinates: (x, -y) in pixels
    let px = |x: &BigInt, y: &BigInt| format!("{},{}", x * &s, -(y * &s));

    let mut b = Bounds::around_origin();
    for v in polytope.vertices() {
        let (x, y) = xy(v);
        b.include(&x, &y);
    }
    for r in rays.iter() {
        let (x, y) = xy(r);
        b.include(&x, &y);
    }
    let left: BigInt = (&b.min_x - BigInt::from(1)) * &s;
    let top: BigInt = -((&b.max_y + BigInt::from(1)) * &s);
    let width: BigInt = (&b.max_x - &b.min_x + BigInt::from(2)) * &s;
    let height: BigInt = (&b.max_y - &b.min_y + BigInt::from(2)) * &s;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{left} {top} {width} {height}\" width=\"{width}\" height=\"{height}\">").unwrap();
    let corners: Vec<String> = polytope.vertices().iter().map(|v| {
        let (x, y) = xy(v);
        px(&x, &y)
    }).collect();
    writeln!(out, "  <polygon class=\"polytope\" points=\"{}\" fill=\"#dde6f0\" stroke=\"#345\" stroke-width=\"2\"/>", corners.join(" ")).unwrap();
    for p in lattice_points(polytope)? {
        let (x, y) = xy(&p);
        writeln!(out, "  <circle class=\"lattice-point\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#345\"/>", x * &s, -(y * &s)).unwrap();
    }
    for r in rays.iter() {
        let (x, y) = xy(r);
        writeln!(out, "  <line class=\"ray\" x1=\"0\" y1=\"0\" x2=\"{}\" y2=\"{}\" stroke=\"#c33\" stroke-width=\"2\"/>", x * &s, -(y * &s)).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
