//! Two families of degree `p^r`: `x^(p^r) + p^v a x^m + p^u b`, whose fields
//! are generated by an explicit integer `theta` giving a power basis at `p`,
//! and `x^(p^r) + a x^m + b`, for which `p` is a common index divisor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ore::{factor_report, index_divisor_verdict, Divides};
use crate::polygon::{phi_expand, NewtonPolygon};
use crate::zx::{
    charpoly, discriminant, multiplication_matrix, p_free_part, vp, IntPoly, PAdicVal, Prime,
};

pub const FAMILY_SCHEMA: &str = "oreindex.family/1";
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// `F = x^(p^r) + p^v a x^m + p^u b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoFamilyInstance {
    pub p: Prime,
    pub r: u32,
    pub v: u32,
    pub u: u32,
    pub m: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub f: IntPoly,
    /// `(x, y)` with `x u - y p^r = 1` and `0 <= x < p^r`.
    pub bezout: (u64, u64),
    /// The `p`-free part of the discriminant.
    pub delta_p: BigInt,
}

impl MonoFamilyInstance {
    pub fn new(p: Prime, r: u32, v: u32, u: u32, m: u64, a: BigInt, b: BigInt) -> Result<Self> {
        let pb = p.to_bigint();
        let n = p
            .get()
            .checked_pow(r)
            .filter(|n| *n <= 4096)
            .ok_or_else(|| Error::Precondition(format!("p^r = {}^{r} is too large", p.get())))?;
        let mut bad = Vec::new();
        if r == 0 {
            bad.push("r must be positive".to_string());
        }
        if a.is_multiple_of(&pb) {
            bad.push(format!("p divides a = {a}"));
        }
        if b.is_multiple_of(&pb) {
            bad.push(format!("p divides b = {b}"));
        }
        if u64::from(u) % p.get() == 0 {
            bad.push(format!("p divides u = {u}"));
        }
        if !(2 <= u && u <= v) {
            bad.push(format!("need 2 <= u <= v, got u = {u}, v = {v}"));
        }
        if !(1 <= m && m < n) {
            bad.push(format!("need 1 <= m < p^r = {n}, got m = {m}"));
        }
        if !bad.is_empty() {
            return Err(Error::Precondition(bad.join("; ")));
        }
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[n as usize] = BigInt::one();
        coeffs[m as usize] = pb.pow(v) * &a;
        coeffs[0] = pb.pow(u) * &b;
        let f = IntPoly::new(coeffs);
        let x = BigInt::from(u)
            .extended_gcd(&BigInt::from(n))
            .x
            .mod_floor(&BigInt::from(n))
            .to_u64()
            .unwrap();
        let y = (x * u64::from(u) - 1) / n;
        let delta_p = p_free_part(&discriminant(&f)?, p)?;
        Ok(MonoFamilyInstance {
            p,
            r,
            v,
            u,
            m,
            a,
            b,
            f,
            bezout: (x, y),
            delta_p,
        })
    }

    pub fn degree(&self) -> u64 {
        self.f.degree().unwrap() as u64
    }
}

/// Result of trial-division squarefreeness testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Squarefree {
    Yes,
    No,
    Unknown,
}

impl Serialize for Squarefree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Squarefree::Yes => s.serialize_bool(true),
            Squarefree::No => s.serialize_bool(false),
            Squarefree::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// Squarefreeness of `n` by trial division up to `bound`; the cofactor left
/// over is prime when it is below `bound^2`.
pub fn squarefree_by_trial(n: &BigInt, bound: u64) -> Squarefree {
    let mut n = n.abs();
    if n.is_zero() {
        return Squarefree::No;
    }
    let mut q = 2u64;
    while q <= bound {
        let qb = BigInt::from(q);
        if &qb * &qb > n {
            return Squarefree::Yes;
        }
        if n.is_multiple_of(&qb) {
            n /= &qb;
            if n.is_multiple_of(&qb) {
                return Squarefree::No;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n.is_one() || n < BigInt::from(bound) * BigInt::from(bound) {
        Squarefree::Yes
    } else {
        Squarefree::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoFamilyReport {
    pub schema: &'static str,
    pub instance: MonoFamilyInstance,
    pub polygon: NewtonPolygon,
    pub single_side: bool,
    pub index: u64,
    pub poly_index_positive: bool,
    pub theta: String,
    pub theta_minpoly: IntPoly,
    pub eisenstein_at_p: bool,
    pub delta_p_squarefree: Squarefree,
}

/// `p`-Eisenstein: every non-leading coefficient divisible by `p`, the
/// constant term not by `p^2`.
pub fn is_eisenstein(g: &IntPoly, p: Prime) -> bool {
    let Some(n) = g.degree() else {
        return false;
    };
    let pb = p.to_bigint();
    g.is_monic()
        && n >= 1
        && g.coeffs()[..n].iter().all(|c| c.is_multiple_of(&pb))
        && vp(&g.coeff(0), p) == PAdicVal::Finite(1)
}

/// Check the family's certificates: the single side of the `x`-polygon, a
/// positive index, and the Eisenstein minimal polynomial of
/// `theta = alpha^x / p^y`.
pub fn mono_family_check(inst: &MonoFamilyInstance, trial_bound: u64) -> Result<MonoFamilyReport> {
    let n = inst.degree();
    let exp = phi_expand(&inst.f, &IntPoly::x(), inst.p)?;
    let polygon = exp.newton_polygon();
    let single_side = polygon.principal_vertices() == [(0, u64::from(inst.u)), (n, 0)];
    let index = polygon.lattice_count();
    let (x, y) = inst.bezout;
    let g = theta_minpoly(&inst.f, x, y, inst.p)?;
    Ok(MonoFamilyReport {
        schema: FAMILY_SCHEMA,
        instance: inst.clone(),
        single_side,
        index,
        poly_index_positive: index > 0,
        theta: format!("alpha^{x} / {}^{y}", inst.p.get()),
        eisenstein_at_p: is_eisenstein(&g, inst.p),
        theta_minpoly: g,
        delta_p_squarefree: squarefree_by_trial(&inst.delta_p, trial_bound),
        polygon,
    })
}

/// Minimal polynomial of `alpha^x_exp / p^y_pow` for a root `alpha` of the
/// monic irreducible `F`: the characteristic polynomial `h` of
/// multiplication by `alpha^x_exp`, rescaled to `p^(-n y) h(p^y z)`.
pub fn theta_minpoly(f: &IntPoly, x_exp: u64, y_pow: u64, p: Prime) -> Result<IntPoly> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let power = pow_mod(&IntPoly::x(), x_exp, f);
    let h = charpoly(&multiplication_matrix(f, &power));
    let pb = p.to_bigint();
    let mut coeffs = Vec::with_capacity(n + 1);
    for (i, c) in h.coeffs().iter().enumerate() {
        let d = pb.pow((y_pow * (n - i) as u64) as u32);
        let (q, r) = c.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!(
                "coefficient {c} of z^{i} is not divisible by {}^{}",
                p.get(),
                y_pow * (n - i) as u64
            )));
        }
        coeffs.push(q);
    }
    Ok(IntPoly::new(coeffs))
}

fn pow_mod(base: &IntPoly, mut k: u64, m: &IntPoly) -> IntPoly {
    let mut acc = IntPoly::one().rem_monic(m);
    let mut b = base.rem_monic(m);
    while k > 0 {
        if k & 1 == 1 {
            acc = (&acc * &b).rem_monic(m);
        }
        b = (&b * &b).rem_monic(m);
        k >>= 1;
    }
    acc
}

/// A predicted side of the `(x + b)`-polygon and whether it was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedSegment {
    pub j: u32,
    pub start: (u64, u64),
    pub end: (u64, u64),
    pub on_polygon: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DprReport {
    pub schema: &'static str,
    pub p: Prime,
    pub r: u32,
    pub m: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub conditions_ok: bool,
    pub polygon: NewtonPolygon,
    pub segments: Vec<PredictedSegment>,
    /// Number of principal sides of degree one.
    pub side_count_ge: u64,
    #[serde(rename = "P1")]
    pub p1: u64,
    #[serde(rename = "N1")]
    pub n1: u64,
    pub helper_identity: Vec<HelperIdentity>,
    pub common_index_divisor: bool,
    pub engine: Divides,
}

/// `v_p((-b)^(p^k) + b)` against `v_p(b^(p-1) - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HelperIdentity {
    pub k: u32,
    pub lhs: PAdicVal,
    pub rhs: PAdicVal,
}

impl HelperIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn helper_identity(p: Prime, b: &BigInt, k: u32) -> HelperIdentity {
    let q = p.get().pow(k) as u32;
    let lhs = vp(&((-b).pow(q) + b), p);
    let rhs = vp(&(b.pow(p.get() as u32 - 1) - 1), p);
    HelperIdentity { k, lhs, rhs }
}

/// Whether the lattice point `(x, y)` lies on the boundary of the principal
/// polygon.
fn on_polygon(poly: &NewtonPolygon, x: u64, y: u64) -> bool {
    poly.principal_sides().iter().any(|s| {
        s.start.0 <= x && x <= s.end.0 && {
            let l = s.length() as i128;
            let lhs = y as i128 * l;
            let rhs = s.start.1 as i128 * l - (x - s.start.0) as i128 * s.height() as i128;
            lhs == rhs
        }
    })
}

/// Check that `p` divides the common index of the field of
/// `x^(p^r) + a x^m + b` by exhibiting `p + 1` degree-one sides of the
/// `(x + b)`-polygon.
pub fn dpr_family_check(p: Prime, r: u32, m: u64, a: &BigInt, b: &BigInt) -> Result<DprReport> {
    let pp = p.get();
    let n = pp
        .checked_pow(r)
        .filter(|n| *n <= 4096)
        .ok_or_else(|| Error::Precondition(format!("p^r = {pp}^{r} is too large")))?;
    let pb = p.to_bigint();
    let modulus = pb.pow(pp as u32 + 1);
    let mut bad = Vec::new();
    if pp == 2 {
        bad.push("p must be odd".to_string());
    }
    if !a.is_multiple_of(&modulus) {
        bad.push(format!("a = {a} is not divisible by {pp}^{}", pp + 1));
    }
    if !(b.pow(pp as u32 - 1) - 1u32).is_multiple_of(&modulus) {
        bad.push(format!("b^{} is not 1 modulo {pp}^{}", pp - 1, pp + 1));
    }
    if u64::from(r) < pp {
        bad.push(format!("r = {r} is smaller than p = {pp}"));
    }
    if !(1 <= m && m < n) {
        bad.push(format!("need 1 <= m < p^r = {n}, got m = {m}"));
    }
    if !bad.is_empty() {
        return Err(Error::Precondition(bad.join("; ")));
    }

    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[n as usize] = BigInt::one();
    coeffs[m as usize] += a;
    coeffs[0] += b;
    let f = IntPoly::new(coeffs);
    let phi = IntPoly::linear(&-b);
    let report = factor_report(&f, &phi, n as u32, p)?;
    let polygon = report.polygon.clone();

    // the x-coordinate p^(r-j-1) must be an integer, so j < r
    let segments: Vec<PredictedSegment> = (0..=pp.min(u64::from(r) - 1) as u32)
        .map(|j| {
            let start = (pp.pow(r - j - 1), u64::from(j) + 1);
            let end = (pp.pow(r - j), u64::from(j));
            PredictedSegment {
                j,
                start,
                end,
                on_polygon: on_polygon(&polygon, start.0, start.1)
                    && on_polygon(&polygon, end.0, end.1),
            }
        })
        .collect();
    if let Some(s) = segments.iter().find(|s| !s.on_polygon) {
        return Err(Error::PolygonMismatch(format!(
            "predicted segment {:?}-{:?} is not on the (x + {b})-polygon with vertices {:?}",
            s.start,
            s.end,
            polygon.principal_vertices()
        )));
    }
    let side_count_ge = polygon
        .principal_sides()
        .iter()
        .filter(|s| s.degree() == 1)
        .count() as u64;
    let p1 = report.shapes.iter().filter(|s| s.f == 1).count() as u64;
    let helper_identity = (1..=r).map(|k| helper_identity(p, b, k)).collect();
    let engine = index_divisor_verdict(&f, p)?.divides;
    Ok(DprReport {
        schema: FAMILY_SCHEMA,
        p,
        r,
        m,
        a: a.clone(),
        b: b.clone(),
        conditions_ok: true,
        polygon,
        segments,
        side_count_ge,
        p1,
        n1: pp,
        helper_identity,
        common_index_divisor: p1 > pp,
        engine,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn desk_instance_of_degree_three() {
        let inst = MonoFamilyInstance::new(p(3), 1, 2, 2, 1, big(1), big(1)).unwrap();
        assert_eq!(inst.f.to_string(), "x^3 + 9*x + 9");
        assert_eq!(inst.bezout, (2, 1));
        let r = mono_family_check(&inst, DEFAULT_TRIAL_BOUND).unwrap();
        assert!(r.single_side);
        assert_eq!(r.index, 1);
        assert!(r.poly_index_positive);
        assert!(r.eisenstein_at_p);
        let g = &r.theta_minpoly;
        assert_eq!(g.degree(), Some(3));
        assert_eq!(vp(&g.coeff(0), p(3)), PAdicVal::Finite(1));
        println!("{g} {}", inst.delta_p);
    }

    #[test]
    fn theta_identity_transport() {
        let f = IntPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(theta_minpoly(&f, 1, 0, p(2)).unwrap(), f);
    }

    #[test]
    fn theta_non_integral() {
        let f = IntPoly::from_i64s(&[-2, 0, 1]);
        assert!(matches!(
            theta_minpoly(&f, 1, 1, p(2)),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn mono_preconditions() {
        let e = MonoFamilyInstance::new(p(3), 1, 2, 2, 1, big(3), big(1)).unwrap_err();
        assert!(matches!(e, Error::Precondition(ref m) if m.contains("divides a")));
        let e = MonoFamilyInstance::new(p(3), 1, 1, 3, 3, big(3), big(3)).unwrap_err();
        let Error::Precondition(m) = e else { panic!() };
        assert_eq!(m.split("; ").count(), 5);
    }

    #[test]
    fn squarefree_trial() {
        assert_eq!(squarefree_by_trial(&big(30), 10), Squarefree::Yes);
        assert_eq!(squarefree_by_trial(&big(-12), 10), Squarefree::No);
        assert_eq!(
            squarefree_by_trial(&big(101 * 103), 10),
            Squarefree::Unknown
        );
        assert_eq!(squarefree_by_trial(&big(97), 10), Squarefree::Yes);
    }

    #[test]
    fn degree_twenty_seven() {
        let r = dpr_family_check(p(3), 3, 1, &big(81), &big(80)).unwrap();
        println!("{:?} {}", r.polygon.principal_vertices(), r.p1);
        assert!(r.segments.iter().all(|s| s.on_polygon));
        assert!(r.side_count_ge >= 4);
        assert!(r.p1 >= 4);
        assert_eq!(r.n1, 3);
        assert!(r.common_index_divisor);
        assert_eq!(r.engine, Divides::Yes);
        assert!(r.helper_identity.iter().all(|h| h.holds()));
    }

    #[test]
    fn dpr_preconditions() {
        assert!(matches!(
            dpr_family_check(p(3), 2, 1, &big(81), &big(80)),
            Err(Error::Precondition(_))
        ));
    }
}
