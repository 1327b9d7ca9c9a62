//! Dedekind's criterion, Ore's theorem, regular elements and the common index
//! divisor test.
//!
//! Prime ideals above `p` are described by their shapes `(e, f)`. When `F` is
//! not `p`-regular the shapes are only partially known; the verdict logic then
//! works with counts that are certain plus upper bounds for the rest.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{
    count_monic_irreducibles, fp_factor_seeded, fq_factor_seeded, FpPoly, FqPoly, ResidueField,
    DEFAULT_SEED,
};
use crate::polygon::{phi_expand, residue_field_of, NewtonPolygon, PhiExpansion, Side};
use crate::zx::{discriminant, is_prime, vp, IntPoly, PAdicVal, Prime};

pub const ORE_SCHEMA: &str = "oreindex.ore/1";
pub const VERDICT_SCHEMA: &str = "oreindex.index-divisor/1";

/// Ramification index and residue degree of a prime ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IdealShape {
    pub e: u64,
    pub f: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualFactor {
    pub factor: String,
    pub degree: usize,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub side: Side,
    pub slope: String,
    pub residual: String,
    pub factors: Vec<ResidualFactor>,
    pub squarefree: bool,
}

/// Everything Ore's theorem says about one factor `phi` of `F mod p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub phi: IntPoly,
    pub multiplicity: u32,
    pub polygon: NewtonPolygon,
    pub sides: Vec<SideReport>,
    pub regular: bool,
    pub index: u64,
    /// Shapes of the prime ideals this factor certainly provides.
    pub shapes: Vec<IdealShape>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreReport {
    pub schema: &'static str,
    pub p: Prime,
    pub factors: Vec<FactorReport>,
    pub index_lower_bound: u64,
    pub p_regular: bool,
    pub shapes: Vec<IdealShape>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Divides {
    Yes,
    No,
    Undetermined,
}

impl std::fmt::Display for Divides {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Divides::Yes => "yes",
            Divides::No => "no",
            Divides::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexDivisorVerdict {
    pub schema: &'static str,
    pub p: Prime,
    pub divides: Divides,
    pub witness_f: Option<u64>,
    #[serde(rename = "P_f")]
    pub p_f: Option<u64>,
    #[serde(rename = "N_f")]
    pub n_f: Option<u64>,
    /// Prime ideal shapes that were established with certainty.
    pub shapes: Vec<IdealShape>,
    /// False when some prime ideals above `p` were only bounded.
    pub complete: bool,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regularization {
    pub s: BigInt,
    pub iterations: u32,
    pub report: FactorReport,
}

/// Monic irreducible factors of `F mod p`, lifted with coefficients in `[0, p)`.
pub fn lifted_factors(f: &IntPoly, p: Prime) -> Result<Vec<(IntPoly, u32)>> {
    lifted_factors_seeded(f, p, DEFAULT_SEED)
}

fn lifted_factors_seeded(f: &IntPoly, p: Prime, seed: u64) -> Result<Vec<(IntPoly, u32)>> {
    check_monic(f)?;
    let fbar = FpPoly::from_int_poly(f, p);
    Ok(fp_factor_seeded(&fbar, seed)?
        .into_iter()
        .map(|(g, l)| (g.lift(), l))
        .collect())
}

/// Dedekind's criterion: true iff `p` divides `(Z_K : Z[alpha])`.
pub fn dedekind_divides_index(f: &IntPoly, p: Prime) -> Result<bool> {
    let factors = lifted_factors(f, p)?;
    let prod = factors
        .iter()
        .fold(IntPoly::one(), |acc, (phi, l)| &acc * &phi.pow(*l));
    let m = (f - &prod)
        .div_exact_scalar(&p.to_bigint())
        .expect("F agrees with the product of its factors modulo p");
    let mbar = FpPoly::from_int_poly(&m, p);
    Ok(factors
        .iter()
        .any(|(phi, l)| *l >= 2 && mbar.rem(&FpPoly::from_int_poly(phi, p)).is_zero()))
}

/// Ore's theorem applied to every factor of `F mod p`.
pub fn ore_analysis(f: &IntPoly, p: Prime) -> Result<OreReport> {
    check_separable(f)?;
    let mut factors = Vec::new();
    for (phi, l) in lifted_factors(f, p)? {
        factors.push(factor_report(f, &phi, l, p)?);
    }
    let index_lower_bound = factors.iter().map(|r| r.index).sum();
    let p_regular = factors.iter().all(|r| r.regular);
    let mut shapes: Vec<IdealShape> = factors.iter().flat_map(|r| r.shapes.clone()).collect();
    shapes.sort();
    Ok(OreReport {
        schema: ORE_SCHEMA,
        p,
        factors,
        index_lower_bound,
        p_regular,
        shapes,
    })
}

/// Ore data of `F` for a single `phi`, where `phi mod p` divides `F mod p`
/// exactly `l` times.
pub fn factor_report(f: &IntPoly, phi: &IntPoly, l: u32, p: Prime) -> Result<FactorReport> {
    factor_report_seeded(f, phi, l, p, DEFAULT_SEED)
}

fn factor_report_seeded(
    f: &IntPoly,
    phi: &IntPoly,
    l: u32,
    p: Prime,
    seed: u64,
) -> Result<FactorReport> {
    let field = residue_field_of(phi, p)?;
    let exp = phi_expand(f, phi, p)?;
    let polygon = exp.newton_polygon();
    let dphi = phi.degree().unwrap() as u64;
    let mut sides = Vec::new();
    let mut shapes = Vec::new();
    if divides_exactly(&exp) {
        shapes.push(IdealShape { e: 1, f: dphi });
    }
    for side in polygon.principal_sides() {
        let r = exp.residual(side, &field)?;
        let fac = fq_factor_seeded(&r.poly, seed)?;
        for (psi, a) in &fac {
            if *a == 1 {
                shapes.push(IdealShape {
                    e: side.e(),
                    f: dphi * psi.degree().unwrap() as u64,
                });
            }
        }
        sides.push(side_report(side, &r.poly, &fac));
    }
    let regular = sides.iter().all(|s| s.squarefree);
    let index = dphi * polygon.lattice_count();
    Ok(FactorReport {
        phi: phi.clone(),
        multiplicity: l,
        polygon,
        sides,
        regular,
        index,
        shapes,
    })
}

/// `phi` divides `F` in `Z[x]`: the polygon has a side of infinite slope,
/// of length one since `F` is separable.
fn divides_exactly(exp: &PhiExpansion) -> bool {
    exp.valuations()[0].is_infinite()
}

fn side_report(side: &Side, residual: &FqPoly, fac: &[(FqPoly, u32)]) -> SideReport {
    SideReport {
        side: *side,
        slope: side.slope_string(),
        residual: residual.to_string(),
        factors: fac
            .iter()
            .map(|(g, a)| ResidualFactor {
                factor: g.to_string(),
                degree: g.degree().unwrap(),
                multiplicity: *a,
            })
            .collect(),
        squarefree: fac.iter().all(|(_, a)| *a == 1),
    }
}

fn check_monic(f: &IntPoly) -> Result<()> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        Some(_) if !f.is_monic() => Err(Error::NotMonic(f.to_string())),
        Some(_) => Ok(()),
    }
}

fn check_separable(f: &IntPoly) -> Result<BigInt> {
    check_monic(f)?;
    let d = discriminant(f)?;
    if d.is_zero() {
        return Err(Error::Inseparable(f.to_string()));
    }
    Ok(d)
}

fn multiplicity_of_root(f: &IntPoly, u: &BigInt, p: Prime) -> u32 {
    let lin = FpPoly::from_int_poly(&IntPoly::linear(u), p);
    let mut g = FpPoly::from_int_poly(f, p);
    let mut l = 0;
    loop {
        let (q, r) = g.div_rem(&lin);
        if !r.is_zero() || g.is_zero() {
            return l;
        }
        g = q;
        l += 1;
    }
}

/// Find `s = u mod p` such that `F` is `(x - s)`-regular, by recentering
/// `s <- s + t p^k` while one side of slope `-k` has a repeated linear
/// residual factor `y - t`.
pub fn regularize_linear(f: &IntPoly, p: Prime, u: &BigInt) -> Result<Regularization> {
    regularize_linear_seeded(f, p, u, DEFAULT_SEED)
}

pub fn regularize_linear_seeded(
    f: &IntPoly,
    p: Prime,
    u: &BigInt,
    seed: u64,
) -> Result<Regularization> {
    let disc = check_separable(f)?;
    let l = multiplicity_of_root(f, u, p);
    if l == 0 {
        let u = i64::try_from(u).unwrap_or(i64::MAX);
        return Err(Error::NotARoot { u, p: p.get() });
    }
    let limit = vp(&disc, p).finite().unwrap() / 2 + 2;
    let pb = p.to_bigint();
    let mut s = u.clone();
    let mut last_k = 0u64;
    let mut iterations = 0u32;
    loop {
        let report = factor_report_seeded(f, &IntPoly::linear(&s), l, p, seed)?;
        let bad: Vec<&SideReport> = report.sides.iter().filter(|s| !s.squarefree).collect();
        let side = match bad.as_slice() {
            [] => {
                return Ok(Regularization {
                    s,
                    iterations,
                    report,
                })
            }
            [one] => *one,
            _ => {
                return Err(Error::RegularizationFailed(format!(
                    "several irregular sides for x - {s}"
                )))
            }
        };
        if side.side.e() != 1 {
            return Err(Error::RegularizationFailed(format!(
                "side {} of slope {} is not of integer slope",
                side.side, side.slope
            )));
        }
        let repeated: Vec<&ResidualFactor> =
            side.factors.iter().filter(|r| r.multiplicity > 1).collect();
        if repeated.len() != 1 || repeated[0].degree != 1 {
            return Err(Error::RegularizationFailed(format!(
                "residual {} is not a power of one linear factor times a squarefree part",
                side.residual
            )));
        }
        let k = side.side.h();
        if k <= last_k || u64::from(iterations) >= limit {
            return Err(Error::RegularizationFailed(format!(
                "no progress at slope -{k} for x - {s}"
            )));
        }
        let t = linear_root(f, &s, p, &side.side, seed)?;
        s += t * pb.pow(k as u32);
        last_k = k;
        iterations += 1;
    }
}

/// The root of the repeated linear factor of the residual polynomial.
fn linear_root(f: &IntPoly, s: &BigInt, p: Prime, side: &Side, seed: u64) -> Result<BigInt> {
    let field = ResidueField::prime_field(p);
    let exp = phi_expand(f, &IntPoly::linear(s), p)?;
    let r = exp.residual(side, &field)?;
    let (psi, _) = fq_factor_seeded(&r.poly, seed)?
        .into_iter()
        .find(|(g, a)| *a > 1 && g.degree() == Some(1))
        .ok_or_else(|| Error::RegularizationFailed(r.poly.to_string()))?;
    Ok(BigInt::from(psi.coeff(0).neg().rep().coeff(0)))
}

/// Primes that can divide the index of some element: `p <= deg F` with
/// `p^2 | disc F`.
pub fn candidate_primes(f: &IntPoly) -> Result<Vec<Prime>> {
    let disc = check_separable(f)?;
    let n = f.degree().unwrap() as u64;
    Ok((2..=n)
        .filter(|&q| is_prime(q))
        .map(|q| Prime::new(q).unwrap())
        .filter(|&q| vp(&disc, q) >= PAdicVal::Finite(2))
        .collect())
}

/// Bounded group of prime ideals whose shapes are not fully resolved: their
/// residue degrees are multiples of `f0`, ramification multiples of `e0`, and
/// `sum e f = total`.
#[derive(Debug, Clone, Copy)]
struct Cluster {
    e0: u64,
    f0: u64,
    total: u64,
}

impl Cluster {
    fn max_primes_of_degree(&self, f: u64) -> u64 {
        if f.is_multiple_of(self.f0) {
            self.total / (self.e0 * f)
        } else {
            0
        }
    }
}

#[derive(Default)]
struct Tally {
    certain: Vec<IdealShape>,
    clusters: Vec<Cluster>,
    trace: Vec<String>,
}

const MAX_DEPTH: u32 = 64;

/// Decide whether `p` divides the common index `i(K)` of the field defined by
/// the monic irreducible `F`.
pub fn index_divisor_verdict(f: &IntPoly, p: Prime) -> Result<IndexDivisorVerdict> {
    index_divisor_verdict_seeded(f, p, DEFAULT_SEED)
}

/// As [`index_divisor_verdict`], with an explicit seed for the randomized
/// factorizations. The verdict does not depend on the seed.
pub fn index_divisor_verdict_seeded(
    f: &IntPoly,
    p: Prime,
    seed: u64,
) -> Result<IndexDivisorVerdict> {
    let disc = check_separable(f)?;
    let n = f.degree().unwrap() as u64;
    let n_f: Vec<BigUint> = (1..=n)
        .map(|k| count_monic_irreducibles(p, k as u32))
        .collect::<Result<_>>()?;

    if p.get() > n {
        let ok = (1..=n).all(|k| n_f[k as usize - 1] >= BigUint::from(n / k));
        if ok {
            return Ok(IndexDivisorVerdict {
                schema: VERDICT_SCHEMA,
                p,
                divides: Divides::No,
                witness_f: None,
                p_f: None,
                n_f: None,
                shapes: Vec::new(),
                complete: false,
                trace: vec![format!("p = {p} > deg F = {n}: N_f >= n/f for every f")],
            });
        }
    }

    let depth = vp(&disc, p).finite().unwrap() as u32 + 2;
    let mut tally = Tally::default();
    for (phi, l) in lifted_factors_seeded(f, p, seed)? {
        let dphi = phi.degree().unwrap() as u64;
        if l == 1 {
            tally.trace.push(format!(
                "phi = {phi}: simple factor -> prime (e=1, f={dphi})"
            ));
            tally.certain.push(IdealShape { e: 1, f: dphi });
        } else {
            explore(f, &phi, p, None, depth.min(MAX_DEPTH), seed, &mut tally)?;
        }
    }

    let mut count: BTreeMap<u64, u64> = BTreeMap::new();
    for s in &tally.certain {
        *count.entry(s.f).or_default() += 1;
    }
    let mut verdict = IndexDivisorVerdict {
        schema: VERDICT_SCHEMA,
        p,
        divides: Divides::Undetermined,
        witness_f: None,
        p_f: None,
        n_f: None,
        shapes: {
            let mut v = tally.certain.clone();
            v.sort();
            v
        },
        complete: tally.clusters.is_empty(),
        trace: tally.trace,
    };
    for k in 1..=n {
        let pk = count.get(&k).copied().unwrap_or(0);
        let nk = &n_f[k as usize - 1];
        if BigUint::from(pk) > *nk {
            verdict.divides = Divides::Yes;
            verdict.witness_f = Some(k);
            verdict.p_f = Some(pk);
            verdict.n_f = Some(u64::try_from(nk).unwrap());
            verdict.trace.push(format!("P_{k} = {pk} > N_{k} = {nk}"));
            return Ok(verdict);
        }
    }
    let bounded = (1..=n).all(|k| {
        let most = count.get(&k).copied().unwrap_or(0)
            + tally
                .clusters
                .iter()
                .map(|c| c.max_primes_of_degree(k))
                .sum::<u64>();
        BigUint::from(most) <= n_f[k as usize - 1]
    });
    if bounded {
        verdict.divides = Divides::No;
        verdict.trace.push(if verdict.complete {
            "P_f <= N_f for every f".to_string()
        } else {
            "P_f <= N_f for every f, even at the largest possible counts".to_string()
        });
    } else {
        verdict
            .trace
            .push("unresolved prime ideals could exceed N_f".to_string());
    }
    Ok(verdict)
}

/// Walk the principal sides of the `phi`-polygon, refining clusters of roots
/// attached to repeated linear residual factors by moving `phi`. With
/// `steeper_than = Some(h)` only sides of slope below `-h` are considered.
fn explore(
    f: &IntPoly,
    phi: &IntPoly,
    p: Prime,
    steeper_than: Option<(u64, u64)>,
    depth: u32,
    seed: u64,
    tally: &mut Tally,
) -> Result<()> {
    let field = residue_field_of(phi, p)?;
    let exp = phi_expand(f, phi, p)?;
    let polygon = exp.newton_polygon();
    let dphi = phi.degree().unwrap() as u64;
    let sides: Vec<Side> = match steeper_than {
        None => polygon.principal_sides().to_vec(),
        Some((h, _)) => polygon
            .principal_sides()
            .iter()
            .filter(|s| s.height() > h * s.length())
            .copied()
            .collect(),
    };
    let exact = divides_exactly(&exp);
    if let Some((h, expected)) = steeper_than {
        let len = sides.iter().map(|s| s.length()).sum::<u64>() + u64::from(exact);
        if len != expected {
            tally.trace.push(format!(
                "phi = {phi}: refined polygon beyond slope -{h} has length {len}, expected {expected}"
            ));
            tally.clusters.push(Cluster {
                e0: 1,
                f0: dphi,
                total: dphi * expected,
            });
            return Ok(());
        }
    }
    if exact {
        tally
            .trace
            .push(format!("phi = {phi} divides F -> prime (e=1, f={dphi})"));
        tally.certain.push(IdealShape { e: 1, f: dphi });
    }
    for side in sides {
        let r = exp.residual(&side, &field)?;
        let e = side.e();
        for (psi, a) in fq_factor_seeded(&r.poly, seed)? {
            let dpsi = psi.degree().unwrap() as u64;
            let shape = IdealShape { e, f: dphi * dpsi };
            let head = format!(
                "phi = {phi}: side {side} slope {}: residual {} has factor ({psi})^{a}",
                side.slope_string(),
                r.poly
            );
            if a == 1 {
                tally
                    .trace
                    .push(format!("{head} -> prime (e={}, f={})", shape.e, shape.f));
                tally.certain.push(shape);
            } else if e == 1 && dpsi == 1 && depth > 0 {
                let t = psi.coeff(0).neg();
                let h = side.h();
                let next = phi - &t.rep().lift().scale(&p.to_bigint().pow(h as u32));
                tally
                    .trace
                    .push(format!("{head} -> refine with phi = {next}"));
                explore(f, &next, p, Some((h, u64::from(a))), depth - 1, seed, tally)?;
            } else {
                tally.trace.push(format!(
                    "{head} -> unresolved: sum of e*f is {}",
                    dphi * e * dpsi * u64::from(a)
                ));
                tally.clusters.push(Cluster {
                    e0: e,
                    f0: dphi * dpsi,
                    total: dphi * e * dpsi * u64::from(a),
                });
            }
        }
    }
    Ok(())
}

impl OreReport {
    /// `sum e f` over the known shapes.
    pub fn shape_degree(&self) -> u64 {
        self.shapes.iter().map(|s| s.e * s.f).sum()
    }
}

impl IndexDivisorVerdict {
    pub fn is_yes(&self) -> bool {
        self.divides == Divides::Yes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn quintic(a: i64, b: i64) -> IntPoly {
        IntPoly::quintic_trinomial(&BigInt::from(a), &BigInt::from(b))
    }

    #[test]
    fn dedekind_examples() {
        assert!(!dedekind_divides_index(&quintic(0, -53), p(2)).unwrap());
        assert!(!dedekind_divides_index(&IntPoly::from_i64s(&[-3, 0, 1]), p(3)).unwrap());
        assert!(dedekind_divides_index(&quintic(3, 144), p(2)).unwrap());
        let r = ore_analysis(&quintic(3, 144), p(2)).unwrap();
        assert!(r.index_lower_bound >= 1);
    }

    #[test]
    fn squarefree_reduction_is_regular() {
        let r = ore_analysis(&quintic(0, -53), p(3)).unwrap();
        assert!(r.p_regular);
        assert_eq!(r.index_lower_bound, 0);
        assert_eq!(r.shape_degree(), 5);
    }

    #[test]
    fn inseparable_rejected() {
        let f = IntPoly::from_i64s(&[1, 2, 1]);
        assert!(matches!(ore_analysis(&f, p(2)), Err(Error::Inseparable(_))));
    }

    #[test]
    fn verdict_trinomial_at_two() {
        let v = index_divisor_verdict(&quintic(3, 144), p(2)).unwrap();
        assert_eq!(v.divides, Divides::Yes);
        let k = v.witness_f.unwrap();
        assert!(v.p_f.unwrap() > v.n_f.unwrap());
        println!("{k} {:?}", v.trace);
    }

    #[test]
    fn verdict_no_common_divisor() {
        for q in [2, 3, 5] {
            let v = index_divisor_verdict(&quintic(0, -53), p(q)).unwrap();
            assert_eq!(v.divides, Divides::No, "p = {q}");
        }
        let v = index_divisor_verdict(&quintic(3, 144), p(7)).unwrap();
        assert_eq!(v.divides, Divides::No);
    }

    #[test]
    fn verdict_at_three_for_seven_twenty_one() {
        // three primes of degree one above 3, which F_3 can accommodate
        let v = index_divisor_verdict(&quintic(7, 21), p(3)).unwrap();
        println!("{:#?}", v);
        assert_eq!(v.divides, Divides::No);
        assert!(v.complete);
        assert_eq!(
            v.shapes,
            vec![
                IdealShape { e: 1, f: 1 },
                IdealShape { e: 2, f: 1 },
                IdealShape { e: 2, f: 1 }
            ]
        );
    }

    #[test]
    fn regularize_already_regular() {
        let f = quintic(3, 144);
        let r = regularize_linear(&f, p(2), &BigInt::from(1)).unwrap();
        assert_eq!(r.iterations, 0);
        assert_eq!(r.s, BigInt::from(1));
    }

    #[test]
    fn regularize_recenters() {
        let (a, b) = (11, 69);
        let f = quintic(a, b);
        let r = regularize_linear(&f, p(3), &BigInt::from(-a)).unwrap();
        assert_eq!(r.iterations, 1);
        assert_eq!(r.s, BigInt::from(-a + 3));
        assert!(r.report.regular);
        // valuations of the (x + 8)-expansion are 4, 3, 1, 0
        assert_eq!(
            r.report.polygon.principal_vertices(),
            &[(0, 4), (2, 1), (3, 0)]
        );
        let start = factor_report(&f, &IntPoly::linear(&BigInt::from(-a)), 3, p(3)).unwrap();
        assert_eq!(
            start.polygon.principal_vertices(),
            &[(0, 7), (1, 2), (3, 0)]
        );
        assert_eq!(start.sides[1].residual, "y^2 + y + 1");
        assert!(!start.regular);
    }

    #[test]
    fn exact_factor_gives_a_prime() {
        // x (x^4 + 33): x itself, and an Eisenstein quartic
        let f = IntPoly::from_i64s(&[0, 33, 0, 0, 0, 1]);
        let want = vec![IdealShape { e: 1, f: 1 }, IdealShape { e: 4, f: 1 }];
        let v = index_divisor_verdict(&f, p(3)).unwrap();
        assert!(v.complete);
        assert_eq!(v.shapes, want);
        assert_eq!(ore_analysis(&f, p(3)).unwrap().shapes, want);
        let g = f.shift(&BigInt::from(3));
        assert_eq!(index_divisor_verdict(&g, p(3)).unwrap().shapes, want);
    }

    #[test]
    fn not_a_root() {
        let f = quintic(3, 144);
        assert!(matches!(
            regularize_linear(&f, p(3), &BigInt::from(1)),
            Err(Error::NotARoot { .. })
        ));
    }
}
