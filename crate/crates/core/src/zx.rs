//! Exact arithmetic over `Z[x]`: p-adic valuations, p-free parts,
//! resultants, discriminants and irreducibility over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational prime, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    /// Largest prime accepted; keeps residue products inside `u64`.
    pub const MAX: u64 = u32::MAX as u64;

    pub fn new(p: u64) -> Result<Self> {
        if p <= Self::MAX && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A p-adic valuation; `Infinity` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PAdicVal {
    Finite(u64),
    Infinity,
}

impl PAdicVal {
    pub fn finite(self) -> Option<u64> {
        match self {
            PAdicVal::Finite(v) => Some(v),
            PAdicVal::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == PAdicVal::Infinity
    }
}

impl fmt::Display for PAdicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicVal::Finite(v) => write!(f, "{v}"),
            PAdicVal::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for PAdicVal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PAdicVal::Finite(v) => s.serialize_u64(*v),
            PAdicVal::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Largest `k` with `p^k | n`.
pub fn vp(n: &BigInt, p: Prime) -> PAdicVal {
    if n.is_zero() {
        return PAdicVal::Infinity;
    }
    let pb = p.to_bigint();
    let mut m = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return PAdicVal::Finite(k);
        }
        m = q;
        k += 1;
    }
}

/// `n / p^vp(n)`, sign preserved.
pub fn p_free_part(n: &BigInt, p: Prime) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroPFreePart);
    }
    let pb = p.to_bigint();
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Ok(m);
        }
        m = q;
    }
}

/// Minimum valuation over the coefficients.
pub fn vp_poly(f: &IntPoly, p: Prime) -> PAdicVal {
    f.coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| vp(c, p))
        .min()
        .unwrap_or(PAdicVal::Infinity)
}

/// `x mod m` in `[0, m)`.
pub fn mod_floor_u64(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue fits in u64")
}

/// Dense polynomial with integer coefficients; `coeffs[i]` is the coefficient
/// of `x^i`. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - s`.
    pub fn linear(s: &BigInt) -> Self {
        Self::new(vec![-s.clone(), BigInt::one()])
    }

    /// `x^5 + a x^2 + b`.
    pub fn quintic_trinomial(a: &BigInt, b: &BigInt) -> Self {
        let mut c = vec![BigInt::zero(); 6];
        c[0] = b.clone();
        c[2] = a.clone();
        c[5] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `f(x + s)`.
    pub fn shift(&self, s: &BigInt) -> Self {
        let mut acc = IntPoly::zero();
        let lin = IntPoly::new(vec![s.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &IntPoly::constant(c.clone());
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division by a monic divisor.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = std::mem::take(&mut r[i]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (IntPoly::new(q), IntPoly::new(r))
    }

    pub fn rem_monic(&self, d: &IntPoly) -> IntPoly {
        self.div_rem_monic(d).1
    }

    /// Exact division of every coefficient by `k`, `None` if some coefficient
    /// is not divisible.
    pub fn div_exact_scalar(&self, k: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::new(out))
    }

    /// Content: gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|c| (c.sign(), c.abs())), "x")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Renders `sum c_i var^i` from the highest degree down.
pub(crate) fn write_poly<T: fmt::Display + IsOneZero>(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (Sign, T)> + ExactSizeIterator,
    var: &str,
) -> fmt::Result {
    let terms: Vec<(usize, Sign, T)> = terms
        .enumerate()
        .filter(|(_, (_, c))| !c.is_zero_val())
        .map(|(i, (s, c))| (i, s, c))
        .collect();
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (n, (i, sign, c)) in terms.iter().rev().enumerate() {
        let neg = *sign == Sign::Minus;
        match (n, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let unit = c.is_one_val();
        match (*i, unit) {
            (0, _) => write!(f, "{c}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{c}*{var}")?,
            (_, true) => write!(f, "{var}^{i}")?,
            (_, false) => write!(f, "{c}*{var}^{i}")?,
        }
    }
    Ok(())
}

pub(crate) trait IsOneZero {
    fn is_zero_val(&self) -> bool;
    fn is_one_val(&self) -> bool;
}

impl IsOneZero for BigInt {
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn is_one_val(&self) -> bool {
        self.is_one()
    }
}

impl IsOneZero for u64 {
    fn is_zero_val(&self) -> bool {
        *self == 0
    }
    fn is_one_val(&self) -> bool {
        *self == 1
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Characteristic polynomial `det(z I - M)` of a square integer matrix,
/// by Berkowitz's division-free algorithm. Returned monic, low degree first.
pub fn charpoly(m: &[Vec<BigInt>]) -> IntPoly {
    let n = m.len();
    // Berkowitz: build the coefficient vector of det(zI - M) from the
    // leading principal submatrices.
    let mut c: Vec<BigInt> = vec![BigInt::one()]; // charpoly of empty matrix, high degree first
    for r in 0..n {
        // Submatrix M[0..=r][0..=r]; split as [[A, S],[R, a]] with a = m[r][r].
        let a = &m[r][r];
        let s: Vec<&BigInt> = (0..r).map(|i| &m[i][r]).collect();
        let rr: Vec<&BigInt> = (0..r).map(|j| &m[r][j]).collect();
        // Toeplitz column entries: 1, -a, -R S, -R A S, -R A^2 S, ...
        let mut col = Vec::with_capacity(r + 2);
        col.push(BigInt::one());
        col.push(-a.clone());
        let mut v: Vec<BigInt> = s.iter().map(|x| (*x).clone()).collect();
        for _ in 0..r {
            let dot: BigInt = rr.iter().zip(&v).map(|(x, y)| *x * y).sum();
            col.push(-dot);
            v = (0..r)
                .map(|i| (0..r).map(|j| &m[i][j] * &v[j]).sum())
                .collect();
        }
        // new c = T * c, T lower-triangular Toeplitz (r+2) x (r+1)
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j {
                    *out += &col[i - j] * cj;
                }
            }
        }
        c = next;
    }
    c.reverse();
    IntPoly::new(c)
}

/// Matrix of multiplication by `g` on `Z[x]/(f)` in the power basis
/// (column `j` holds `g * x^j mod f`).
pub fn multiplication_matrix(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let n = f.degree().expect("nonzero modulus");
    let mut cols = Vec::with_capacity(n);
    let mut cur = g.rem_monic(f);
    for _ in 0..n {
        cols.push(cur.clone());
        cur = (&cur * &IntPoly::x()).rem_monic(f);
    }
    (0..n)
        .map(|i| (0..n).map(|j| cols[j].coeff(i)).collect())
        .collect()
}

/// `Res(f, g)` for monic `f`, as the norm `prod g(alpha)` over the roots of `f`.
pub fn resultant_monic(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let cp = charpoly(&multiplication_matrix(f, g));
    // det(M) = (-1)^n * charpoly(0)
    let c0 = cp.coeff(0);
    Ok(if n.is_multiple_of(2) { c0 } else { -c0 })
}

/// `(-1)^(n(n-1)/2) Res(f, f')` for monic `f` of degree `n >= 1`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant_monic(f, &f.derivative())?;
    Ok(if (n * (n - 1) / 2).is_multiple_of(2) {
        r
    } else {
        -r
    })
}

/// Three-valued irreducibility verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

/// Largest |n| whose divisors are enumerated by trial division.
const DIVISOR_LIMIT: u64 = 1 << 40;

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `|n|`, `None` when `n = 0` or `|n|` is too large.
pub fn positive_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let m = n.abs().to_u64()?;
    if m == 0 || m > DIVISOR_LIMIT {
        return None;
    }
    let mut divs = vec![1u64];
    for (q, k) in factor_u64(m) {
        let cur = divs.clone();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= q;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Some(divs)
}

fn signed_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let d = positive_divisors(n)?;
    Some(
        d.iter()
            .flat_map(|&x| [BigInt::from(x), -BigInt::from(x)])
            .collect(),
    )
}

fn has_integer_root(f: &IntPoly) -> Option<bool> {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Some(true);
    }
    let divs = signed_divisors(&c0)?;
    Some(divs.iter().any(|d| f.eval(d).is_zero()))
}

fn has_quadratic_factor(f: &IntPoly) -> Option<bool> {
    // q = x^2 + c x + d with d | f(0), q(1) | f(1), q(-1) | f(-1).
    let f0 = f.coeff(0);
    let f1 = f.eval(&BigInt::one());
    let fm1 = f.eval(&-BigInt::one());
    let d_cands = signed_divisors(&f0)?;
    let e_cands = signed_divisors(&f1)?;
    for d in &d_cands {
        for e in &e_cands {
            let c = e - BigInt::one() - d;
            let qm1 = BigInt::one() - &c + d;
            if qm1.is_zero() || !(&fm1 % &qm1).is_zero() {
                continue;
            }
            let q = IntPoly::new(vec![d.clone(), c, BigInt::one()]);
            if f.rem_monic(&q).is_zero() {
                return Some(true);
            }
        }
    }
    Some(false)
}

/// Irreducibility over `Q` of a monic nonconstant polynomial.
///
/// Exact up to degree 5 (integer roots, then monic quadratic factors); for
/// higher degree only sufficient criteria are tried and `Unknown` is returned
/// when none applies.
pub fn is_irreducible_q(f: &IntPoly) -> Result<Irreducibility> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    match has_integer_root(f) {
        Some(true) => return Ok(Irreducibility::Reducible),
        Some(false) if n <= 3 => return Ok(Irreducibility::Irreducible),
        Some(false) if n <= 5 => {
            // f(1), f(-1) are nonzero here, so their divisors are finite.
            return Ok(match has_quadratic_factor(f) {
                Some(true) => Irreducibility::Reducible,
                Some(false) => Irreducibility::Irreducible,
                None => sufficient_irreducibility(f),
            });
        }
        _ => {}
    }
    Ok(sufficient_irreducibility(f))
}

/// Sufficient tests only: Eisenstein, a single degree-one Newton side over a
/// repeated linear factor, and incompatible factor-degree patterns modulo
/// small primes.
fn sufficient_irreducibility(f: &IntPoly) -> Irreducibility {
    use crate::ffield::FpPoly;
    let n = f.degree().unwrap();
    let small: Vec<Prime> = (2..200u64).filter(|&q| is_prime(q)).map(Prime).collect();
    for &p in &small {
        if crate::polygon::single_side_degree_one(f, p) {
            return Irreducibility::Irreducible;
        }
    }
    // Degrees d (0 < d < n) that some factor over Z could have.
    let mut possible = vec![true; n + 1];
    let mut tried = 0;
    for &p in &small {
        let fb = FpPoly::from_int_poly(f, p);
        if !fb.is_squarefree() {
            continue;
        }
        let Ok(fac) = crate::ffield::fp_factor(&fb) else {
            continue;
        };
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (g, _) in &fac {
            let d = g.degree().unwrap();
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for d in 1..n {
            possible[d] &= sums[d];
        }
        if (1..n).all(|d| !possible[d]) {
            return Irreducibility::Irreducible;
        }
        tried += 1;
        if tried >= 12 {
            break;
        }
    }
    Irreducibility::Unknown
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
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&big(0), p(3)), PAdicVal::Infinity);
        assert_eq!(vp(&big(48), p(2)), PAdicVal::Finite(4));
        assert_eq!(vp(&big(24), p(2)), PAdicVal::Finite(3));
        assert_eq!(vp(&big(-81), p(3)), PAdicVal::Finite(4));
        assert!(PAdicVal::Finite(100) < PAdicVal::Infinity);
    }

    #[test]
    fn p_free_parts() {
        assert_eq!(p_free_part(&big(48), p(2)).unwrap(), big(3));
        assert_eq!(p_free_part(&big(-2), p(3)).unwrap(), big(-2));
        assert_eq!(p_free_part(&big(144), p(2)).unwrap(), big(9));
        assert_eq!(p_free_part(&big(0), p(2)), Err(Error::ZeroPFreePart));
    }

    #[test]
    fn poly_valuations() {
        assert_eq!(vp_poly(&IntPoly::zero(), p(2)), PAdicVal::Infinity);
        assert_eq!(
            vp_poly(&IntPoly::from_i64s(&[6, 4]), p(2)),
            PAdicVal::Finite(1)
        );
        assert_eq!(
            vp_poly(&IntPoly::from_i64s(&[27, 0, 9]), p(3)),
            PAdicVal::Finite(2)
        );
    }

    #[test]
    fn quadratic_discriminant() {
        // x^2 + b x + c -> b^2 - 4c
        for (b, c) in [(1, 1), (3, -7), (0, 5), (-4, 4)] {
            let f = IntPoly::from_i64s(&[c, b, 1]);
            assert_eq!(discriminant(&f).unwrap(), big(b * b - 4 * c));
        }
    }

    #[test]
    fn cubic_discriminant_classical() {
        // x^3 + p x + q -> -4p^3 - 27q^2
        let f = IntPoly::from_i64s(&[9, 9, 0, 1]);
        assert_eq!(discriminant(&f).unwrap(), big(-4 * 729 - 27 * 81));
    }

    #[test]
    fn discriminant_rejects_non_monic() {
        let f = IntPoly::from_i64s(&[1, 0, 2]);
        assert!(matches!(discriminant(&f), Err(Error::NotMonic(_))));
    }

    #[test]
    fn division_and_shift() {
        let f = IntPoly::from_i64s(&[144, 0, 3, 0, 0, 1]);
        let d = IntPoly::from_i64s(&[1, 1, 1]);
        let (q, r) = f.div_rem_monic(&d);
        assert_eq!(&(&q * &d) + &r, f);
        assert!(r.degree().unwrap() < 2);
        let s = big(-7);
        let g = f.shift(&s);
        for t in -3..4 {
            assert_eq!(g.eval(&big(t)), f.eval(&(big(t) + &s)));
        }
    }

    #[test]
    fn irreducibility_small() {
        let eis = IntPoly::from_i64s(&[-53, 0, 0, 0, 0, 1]);
        assert_eq!(is_irreducible_q(&eis).unwrap(), Irreducibility::Irreducible);
        let red = IntPoly::from_i64s(&[0, 0, 1, 0, 0, 1]);
        assert_eq!(is_irreducible_q(&red).unwrap(), Irreducibility::Reducible);
        let f = IntPoly::from_i64s(&[144, 0, 3, 0, 0, 1]);
        assert_eq!(is_irreducible_q(&f).unwrap(), Irreducibility::Irreducible);
        // (x^2 + x + 1)(x^3 - 2) has no integer root
        let q = &IntPoly::from_i64s(&[1, 1, 1]) * &IntPoly::from_i64s(&[-2, 0, 0, 1]);
        assert_eq!(is_irreducible_q(&q).unwrap(), Irreducibility::Reducible);
        // x^5 + 1 = (x + 1)(...)
        let r = IntPoly::from_i64s(&[1, 0, 0, 0, 0, 1]);
        assert_eq!(is_irreducible_q(&r).unwrap(), Irreducibility::Reducible);
    }

    #[test]
    fn irreducibility_high_degree() {
        // 3-Eisenstein degree 9
        let mut c = vec![0i64; 10];
        c[0] = 3;
        c[4] = 6;
        c[9] = 1;
        let f = IntPoly::from_i64s(&c);
        assert_eq!(is_irreducible_q(&f).unwrap(), Irreducibility::Irreducible);
        // product of two cubics
        let g = &IntPoly::from_i64s(&[1, 1, 0, 1]) * &IntPoly::from_i64s(&[3, 0, 1, 1]);
        let g = &g * &IntPoly::from_i64s(&[5, 0, 0, 1]);
        assert_ne!(is_irreducible_q(&g).unwrap(), Irreducibility::Irreducible);
    }

    #[test]
    fn divisors() {
        assert_eq!(
            positive_divisors(&big(-12)).unwrap(),
            vec![1, 2, 3, 4, 6, 12]
        );
        assert!(positive_divisors(&big(0)).is_none());
    }

    #[test]
    fn display() {
        let f = IntPoly::from_i64s(&[-53, 0, 1, 0, -2, 1]);
        assert_eq!(f.to_string(), "x^5 - 2*x^4 + x^2 - 53");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_i64s(&[0, -1]).to_string(), "-x");
    }
}
