//! φ-adic Newton polygons: φ-expansions, lower hulls, side data, residual
//! polynomials and the φ-index.

use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{fp_factor, FpPoly, FqElem, FqPoly, ResidueField};
use crate::zx::{vp_poly, IntPoly, PAdicVal, Prime};

/// `F = sum a_i(x) phi(x)^i` with `deg a_i < deg phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiExpansion {
    base: IntPoly,
    terms: Vec<IntPoly>,
    p: Prime,
}

impl PhiExpansion {
    pub fn base(&self) -> &IntPoly {
        &self.base
    }

    pub fn terms(&self) -> &[IntPoly] {
        &self.terms
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `u_i = v_p(a_i)`.
    pub fn valuations(&self) -> Vec<PAdicVal> {
        self.terms.iter().map(|a| vp_poly(a, self.p)).collect()
    }

    /// `sum a_i phi^i`, by Horner's rule in `phi`.
    pub fn reconstruct(&self) -> IntPoly {
        self.terms
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, a| &(&acc * &self.base) + a)
    }

    pub fn newton_polygon(&self) -> NewtonPolygon {
        newton_polygon(self)
    }

    /// Residual polynomial of a principal side over the given residue field
    /// (which must be `F_p[x]/(phi mod p)`).
    pub fn residual(&self, side: &Side, field: &Arc<ResidueField>) -> Result<ResidualPoly> {
        let polygon = self.newton_polygon();
        if !polygon.principal_sides().contains(side) {
            return Err(Error::NotPrincipalSide(side.to_string()));
        }
        let vals = self.valuations();
        let (e, h, d) = (side.e(), side.h(), side.degree());
        let pb = self.p.to_bigint();
        let mut coeffs: Vec<FqElem> = Vec::with_capacity(d as usize + 1);
        for i in 0..=d {
            let x = (side.start.0 + i * e) as usize;
            let on_side = side.start.1 - i * h;
            let c = match vals[x] {
                PAdicVal::Finite(u) if u == on_side => {
                    let scaled = self.terms[x]
                        .div_exact_scalar(&pb.pow(u as u32))
                        .expect("valuation divides every coefficient");
                    field.reduce(&scaled)
                }
                _ => field.constant(0),
            };
            coeffs.push(c);
        }
        Ok(ResidualPoly {
            side: *side,
            poly: FqPoly::new(field, coeffs),
        })
    }
}

/// φ-adic expansion by repeated division by the monic `phi`.
pub fn phi_expand(f: &IntPoly, phi: &IntPoly, p: Prime) -> Result<PhiExpansion> {
    let df = f.degree().ok_or(Error::ZeroPolynomial)?;
    if !phi.is_monic() {
        return Err(Error::NotMonic(phi.to_string()));
    }
    let dphi = phi.degree().unwrap();
    if dphi == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if dphi > df {
        return Err(Error::PhiTooLarge { phi: dphi, f: df });
    }
    let mut terms = Vec::with_capacity(df / dphi + 1);
    let mut cur = f.clone();
    while !cur.is_zero() {
        let (q, r) = cur.div_rem_monic(phi);
        terms.push(r);
        cur = q;
    }
    Ok(PhiExpansion {
        base: phi.clone(),
        terms,
        p,
    })
}

/// A segment of the polygon between two lattice vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Side {
    pub start: (u64, u64),
    pub end: (u64, u64),
}

impl Side {
    pub fn new(start: (u64, u64), end: (u64, u64)) -> Self {
        assert!(end.0 > start.0, "side must have positive length");
        Side { start, end }
    }

    /// Projection onto the horizontal axis.
    pub fn length(&self) -> u64 {
        self.end.0 - self.start.0
    }

    /// `end.y - start.y`
    pub fn rise(&self) -> i64 {
        self.end.1 as i64 - self.start.1 as i64
    }

    /// Projection onto the vertical axis.
    pub fn height(&self) -> u64 {
        self.rise().unsigned_abs()
    }

    pub fn is_principal(&self) -> bool {
        self.end.1 < self.start.1
    }

    /// `gcd(length, height)`
    pub fn degree(&self) -> u64 {
        self.length().gcd(&self.height())
    }

    /// Denominator of the reduced slope.
    pub fn e(&self) -> u64 {
        self.length() / self.degree()
    }

    /// Absolute numerator of the reduced slope.
    pub fn h(&self) -> u64 {
        self.height() / self.degree()
    }

    /// Reduced slope as `"-h/e"` (or `"h/e"` for nonnegative slopes).
    pub fn slope_string(&self) -> String {
        let sign = if self.rise() < 0 { "-" } else { "" };
        format!("{sign}{}/{}", self.h(), self.e())
    }

    /// Height of the side over abscissa `x`, floored; `x` inside the side.
    pub fn floor_height_at(&self, x: u64) -> i64 {
        let l = self.length() as i128;
        let num = self.start.1 as i128 * l + self.rise() as i128 * (x - self.start.0) as i128;
        Integer::div_floor(&num, &l) as i64
    }

    /// Lattice points on the side, from the start.
    pub fn lattice_points(&self) -> Vec<(u64, u64)> {
        let (e, h) = (self.e(), self.h());
        (0..=self.degree())
            .map(|i| {
                let y = self.start.1 as i64 + self.rise().signum() * (i * h) as i64;
                (self.start.0 + i * e, y as u64)
            })
            .collect()
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{})-({},{})",
            self.start.0, self.start.1, self.end.0, self.end.1
        )
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Side", 6)?;
        st.serialize_field("start", &self.start)?;
        st.serialize_field("end", &self.end)?;
        st.serialize_field("slope", &self.slope_string())?;
        st.serialize_field("length", &self.length())?;
        st.serialize_field("height", &self.height())?;
        st.serialize_field("degree", &self.degree())?;
        st.end()
    }
}

/// Lower convex hull of `{(i, u_i)}` with its sides in increasing slope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    points: Vec<(u64, PAdicVal)>,
    vertices: Vec<(u64, u64)>,
    sides: Vec<Side>,
    principal: usize,
}

impl NewtonPolygon {
    /// Lower hull of the given points; infinite ordinates are ignored and
    /// collinear points are not kept as vertices.
    pub fn from_points(points: Vec<(u64, PAdicVal)>) -> Self {
        let mut finite: Vec<(u64, u64)> = points
            .iter()
            .filter_map(|&(x, v)| v.finite().map(|y| (x, y)))
            .collect();
        finite.sort_unstable();
        let mut hull: Vec<(u64, u64)> = Vec::new();
        for pt in finite {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if cross(o, a, pt) <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let sides: Vec<Side> = hull.windows(2).map(|w| Side::new(w[0], w[1])).collect();
        let principal = sides.iter().take_while(|s| s.is_principal()).count();
        NewtonPolygon {
            points,
            vertices: hull,
            sides,
            principal,
        }
    }

    pub fn points(&self) -> &[(u64, PAdicVal)] {
        &self.points
    }

    pub fn vertices(&self) -> &[(u64, u64)] {
        &self.vertices
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// The negative-slope sides.
    pub fn principal_sides(&self) -> &[Side] {
        &self.sides[..self.principal]
    }

    /// Vertices of the principal part.
    pub fn principal_vertices(&self) -> &[(u64, u64)] {
        if self.principal == 0 {
            &[]
        } else {
            &self.vertices[..=self.principal]
        }
    }

    /// Lattice points `(x, y)` with `x >= 1`, `y >= 1` on or under the
    /// principal part, column by column.
    pub fn lattice_points_under(&self) -> Vec<(u64, u64)> {
        let sides = self.principal_sides();
        let (Some(first), Some(last)) = (sides.first(), sides.last()) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for x in first.start.0.max(1)..=last.end.0 {
            let side = sides.iter().find(|s| x <= s.end.0).unwrap();
            for y in 1..=side.floor_height_at(x).max(0) as u64 {
                out.push((x, y));
            }
        }
        out
    }

    pub fn lattice_count(&self) -> u64 {
        self.lattice_points_under().len() as u64
    }
}

fn cross(o: (u64, u64), a: (u64, u64), b: (u64, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// The φ-Newton polygon of an expansion.
pub fn newton_polygon(exp: &PhiExpansion) -> NewtonPolygon {
    let pts = exp
        .valuations()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (i as u64, v))
        .collect();
    NewtonPolygon::from_points(pts)
}

/// The residual polynomial `R_lambda(F)(y)` attached to a principal side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualPoly {
    pub side: Side,
    pub poly: FqPoly,
}

impl ResidualPoly {
    pub fn degree(&self) -> u64 {
        self.side.degree()
    }
}

/// `F_p[x]/(phi mod p)`, failing when the reduction is not irreducible.
pub fn residue_field_of(phi: &IntPoly, p: Prime) -> Result<Arc<ResidueField>> {
    ResidueField::new(FpPoly::from_int_poly(phi, p)).map_err(|_| Error::PhiReducible {
        phi: phi.to_string(),
        p: p.get(),
    })
}

/// Residual polynomial of `F` for the principal side `side` of its φ-polygon.
pub fn residual_poly(f: &IntPoly, phi: &IntPoly, p: Prime, side: &Side) -> Result<ResidualPoly> {
    let exp = phi_expand(f, phi, p)?;
    let field = residue_field_of(phi, p)?;
    exp.residual(side, &field)
}

/// `deg(phi)` times the lattice count under the principal φ-polygon.
pub fn phi_index(f: &IntPoly, phi: &IntPoly, p: Prime) -> Result<u64> {
    residue_field_of(phi, p)?;
    let exp = phi_expand(f, phi, p)?;
    Ok(phi.degree().unwrap() as u64 * newton_polygon(&exp).lattice_count())
}

/// True when `F mod p` is a power of one irreducible `phi` and the principal
/// φ-polygon is one side of degree one (so `F` is irreducible over `Q_p`).
pub(crate) fn single_side_degree_one(f: &IntPoly, p: Prime) -> bool {
    let fb = FpPoly::from_int_poly(f, p);
    let Ok(fac) = fp_factor(&fb) else {
        return false;
    };
    if fac.len() != 1 {
        return false;
    }
    let (g, l) = &fac[0];
    if *l == 1 {
        return g.degree() == f.degree();
    }
    let phi = g.lift();
    let Ok(exp) = phi_expand(f, &phi, p) else {
        return false;
    };
    let poly = newton_polygon(&exp);
    let ps = poly.principal_sides();
    ps.len() == 1 && ps[0].degree() == 1 && ps[0].length() == *l as u64
}

/// SVG drawing of a polygon: the principal part as a polyline, the plotted
/// points, and the lattice points counted by the φ-index.
pub fn render_svg(poly: &NewtonPolygon) -> String {
    const CELL: i64 = 40;
    const PAD: i64 = 40;
    let max_x = poly.points.iter().map(|p| p.0).max().unwrap_or(1).max(1) as i64;
    let max_y = poly
        .points
        .iter()
        .filter_map(|p| p.1.finite())
        .max()
        .unwrap_or(1)
        .max(1) as i64;
    let w = max_x * CELL + 2 * PAD;
    let h = max_y * CELL + 2 * PAD;
    let px = |x: i64| PAD + x * CELL;
    let py = |y: i64| h - PAD - y * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        px(0),
        py(0),
        px(max_x),
        py(0)
    );
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        px(0),
        py(0),
        px(0),
        py(max_y)
    );
    let all: Vec<String> = poly
        .vertices
        .iter()
        .map(|&(x, y)| format!("{},{}", px(x as i64), py(y as i64)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="gray" stroke-dasharray="4 3"/>"#,
        all.join(" ")
    );
    let principal: Vec<String> = poly
        .principal_vertices()
        .iter()
        .map(|&(x, y)| format!("{},{}", px(x as i64), py(y as i64)))
        .collect();
    if !principal.is_empty() {
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            principal.join(" ")
        );
    }
    for (x, y) in poly.lattice_points_under() {
        let (cx, cy) = (px(x as i64), py(y as i64));
        let _ = writeln!(
            out,
            r#"<path d="M{} {} L{} {} M{} {} L{} {}" stroke="blue"/>"#,
            cx - 4,
            cy - 4,
            cx + 4,
            cy + 4,
            cx - 4,
            cy + 4,
            cx + 4,
            cy - 4
        );
    }
    for &(x, v) in &poly.points {
        if let Some(y) = v.finite() {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="3" fill="red"/>"#,
                px(x as i64),
                py(y as i64)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
