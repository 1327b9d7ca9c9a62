//! Polynomials over `F_p` and over residue fields `F_p[t]/(m)`, with
//! factorization (squarefree, distinct-degree, equal-degree) and the count
//! of monic irreducibles of a given degree.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::zx::{mod_floor_u64, write_poly, IntPoly, Prime};

/// Seed used by the equal-degree splitting unless another is supplied.
pub const DEFAULT_SEED: u64 = 0x5eed_0f0e_u64;

/// Minimal field interface the polynomial routines are written against.
pub(crate) trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn elem(&self, n: u64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// `q = p^k`
    fn ext_degree(&self) -> u32;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    /// Ordering key used to sort factorizations canonically.
    fn key(&self, a: &Self::Elem) -> Vec<u64>;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.ext_degree())
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let e = BigUint::from(self.characteristic()).pow(self.ext_degree() - 1);
        self.pow(a, &e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PrimeField {
    p: u64,
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        let g = BigInt::from(*a).extended_gcd(&BigInt::from(self.p));
        mod_floor_u64(&g.x, self.p)
    }
    fn elem(&self, n: u64) -> u64 {
        n % self.p
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn ext_degree(&self) -> u32 {
        1
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn key(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// Generic dense polynomial routines; a polynomial is a coefficient vector,
/// low degree first, with no trailing zeros.
pub(crate) mod upoly {
    use super::*;

    pub type Poly<F> = Vec<<F as Field>::Elem>;

    pub fn trim<F: Field>(k: &F, mut a: Poly<F>) -> Poly<F> {
        while a.last().is_some_and(|c| k.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn deg<F: Field>(a: &Poly<F>) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn is_one<F: Field>(k: &F, a: &Poly<F>) -> bool {
        a.len() == 1 && a[0] == k.one()
    }

    pub fn x<F: Field>(k: &F) -> Poly<F> {
        vec![k.zero(), k.one()]
    }

    pub fn add<F: Field>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let n = a.len().max(b.len());
        let z = k.zero();
        trim(
            k,
            (0..n)
                .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub<F: Field>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let n = a.len().max(b.len());
        let z = k.zero();
        trim(
            k,
            (0..n)
                .map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul<F: Field>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![k.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        trim(k, out)
    }

    pub fn scale<F: Field>(k: &F, a: &Poly<F>, c: &F::Elem) -> Poly<F> {
        trim(k, a.iter().map(|x| k.mul(x, c)).collect())
    }

    pub fn div_rem<F: Field>(k: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let db = deg::<F>(b).expect("division by zero polynomial");
        let lc_inv = k.inv(&b[db]);
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![k.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            let c = k.mul(&r[i], &lc_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i - db + j] = k.sub(&r[i - db + j], &k.mul(&c, bj));
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (trim(k, q), trim(k, r))
    }

    pub fn rem<F: Field>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        div_rem(k, a, b).1
    }

    pub fn monic<F: Field>(k: &F, a: &Poly<F>) -> Poly<F> {
        match a.last() {
            None => Vec::new(),
            Some(lc) => scale(k, a, &k.inv(lc)),
        }
    }

    pub fn gcd<F: Field>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(k, &a, &b);
            a = b;
            b = r;
        }
        monic(k, &a)
    }

    pub fn derivative<F: Field>(k: &F, a: &Poly<F>) -> Poly<F> {
        trim(
            k,
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(c, &k.elem(i as u64)))
                .collect(),
        )
    }

    pub fn pow_mod<F: Field>(k: &F, base: &Poly<F>, e: &BigUint, m: &Poly<F>) -> Poly<F> {
        let mut acc = rem(k, &vec![k.one()], m);
        let b = rem(k, base, m);
        for i in (0..e.bits()).rev() {
            acc = rem(k, &mul(k, &acc, &acc), m);
            if e.bit(i) {
                acc = rem(k, &mul(k, &acc, &b), m);
            }
        }
        acc
    }

    pub fn eval<F: Field>(k: &F, a: &Poly<F>, x: &F::Elem) -> F::Elem {
        a.iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(s, m)` with
    /// `f = prod s^m`, each `s` squarefree and the `s` pairwise coprime.
    pub fn squarefree_decomposition<F: Field>(k: &F, f: &Poly<F>) -> Vec<(Poly<F>, u32)> {
        let mut out = Vec::new();
        if deg::<F>(f).unwrap_or(0) == 0 {
            return out;
        }
        let mut c = gcd(k, f, &derivative(k, f));
        let mut w = div_rem(k, f, &c).0;
        let mut i = 1u32;
        while !is_one(k, &w) {
            let y = gcd(k, &w, &c);
            let fac = div_rem(k, &w, &y).0;
            if !is_one(k, &fac) {
                out.push((fac, i));
            }
            c = div_rem(k, &c, &y).0;
            w = y;
            i += 1;
        }
        if !is_one(k, &c) {
            let p = k.characteristic() as usize;
            let root: Poly<F> = c.iter().step_by(p).map(|a| k.pth_root(a)).collect();
            for (g, m) in squarefree_decomposition(k, &root) {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree<F: Field>(k: &F, f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
        let q = k.order();
        let mut out = Vec::new();
        let mut g = f.clone();
        let mut h = rem(k, &x(k), &g);
        let mut d = 1usize;
        while deg::<F>(&g).unwrap_or(0) >= 2 * d {
            h = pow_mod(k, &h, &q, &g);
            let t = gcd(k, &g, &sub(k, &h, &x(k)));
            if !is_one(k, &t) {
                g = div_rem(k, &g, &t).0;
                h = rem(k, &h, &g);
                out.push((t, d));
            }
            d += 1;
        }
        if let Some(dg) = deg::<F>(&g) {
            if dg > 0 {
                out.push((g, dg));
            }
        }
        out
    }

    /// Cantor-Zassenhaus splitting of a monic squarefree product of
    /// irreducibles of degree `d`.
    pub fn equal_degree<F: Field>(
        k: &F,
        f: &Poly<F>,
        d: usize,
        rng: &mut ChaCha8Rng,
    ) -> Vec<Poly<F>> {
        let n = deg::<F>(f).unwrap();
        if n == d {
            return vec![f.clone()];
        }
        let p = k.characteristic();
        let qd = k.order().pow(d as u32);
        loop {
            let a: Poly<F> = trim(k, (0..n).map(|_| k.random(rng)).collect());
            if deg::<F>(&a).unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(kd - 1))
                let steps = k.ext_degree() as usize * d;
                let mut t = rem(k, &a, f);
                let mut cur = t.clone();
                for _ in 1..steps {
                    cur = rem(k, &mul(k, &cur, &cur), f);
                    t = add(k, &t, &cur);
                }
                t
            } else {
                let e = (&qd - 1u32) / 2u32;
                sub(k, &pow_mod(k, &a, &e, f), &vec![k.one()])
            };
            let g = gcd(k, f, &b);
            let dg = deg::<F>(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let h = div_rem(k, f, &g).0;
                let mut out = equal_degree(k, &g, d, rng);
                out.extend(equal_degree(k, &h, d, rng));
                return out;
            }
        }
    }

    pub fn cmp<F: Field>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b).rev() {
                let o = k.key(x).cmp(&k.key(y));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficients. The leading unit is dropped.
    pub fn factor<F: Field>(k: &F, f: &Poly<F>, seed: u64) -> Vec<(Poly<F>, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = monic(k, f);
        let mut out = Vec::new();
        for (s, m) in squarefree_decomposition(k, &f) {
            for (t, d) in distinct_degree(k, &s) {
                for g in equal_degree(k, &t, d, &mut rng) {
                    out.push((g, m));
                }
            }
        }
        out.sort_by(|a, b| cmp(k, &a.0, &b.0));
        out
    }
}

/// Polynomial over `F_p`, coefficients in `[0, p)`, low degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: Prime,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: Prime, coeffs: Vec<u64>) -> Self {
        let k = PrimeField { p: p.get() };
        let coeffs = upoly::trim(&k, coeffs.into_iter().map(|c| c % p.get()).collect());
        FpPoly { p, coeffs }
    }

    pub fn from_int_poly(f: &IntPoly, p: Prime) -> Self {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| mod_floor_u64(c, p.get()))
            .collect();
        Self::new(p, coeffs)
    }

    /// Coefficients taken from `[0, p)` as an integer polynomial.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub(crate) fn field(&self) -> PrimeField {
        PrimeField { p: self.p.get() }
    }

    fn wrap(&self, coeffs: Vec<u64>) -> Self {
        FpPoly { p: self.p, coeffs }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn monic(&self) -> Self {
        self.wrap(upoly::monic(&self.field(), &self.coeffs))
    }

    fn check(&self, other: &FpPoly) {
        assert_eq!(self.p, other.p, "mixing polynomials over different primes");
    }

    pub fn add(&self, other: &FpPoly) -> Self {
        self.check(other);
        self.wrap(upoly::add(&self.field(), &self.coeffs, &other.coeffs))
    }

    pub fn sub(&self, other: &FpPoly) -> Self {
        self.check(other);
        self.wrap(upoly::sub(&self.field(), &self.coeffs, &other.coeffs))
    }

    pub fn mul(&self, other: &FpPoly) -> Self {
        self.check(other);
        self.wrap(upoly::mul(&self.field(), &self.coeffs, &other.coeffs))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(FpPoly::new(self.p, vec![1]), |acc, _| acc.mul(self))
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, other: &FpPoly) -> (Self, Self) {
        self.check(other);
        let (q, r) = upoly::div_rem(&self.field(), &self.coeffs, &other.coeffs);
        (self.wrap(q), self.wrap(r))
    }

    pub fn rem(&self, other: &FpPoly) -> Self {
        self.div_rem(other).1
    }

    pub fn gcd(&self, other: &FpPoly) -> Self {
        self.check(other);
        self.wrap(upoly::gcd(&self.field(), &self.coeffs, &other.coeffs))
    }

    pub fn derivative(&self) -> Self {
        self.wrap(upoly::derivative(&self.field(), &self.coeffs))
    }

    pub fn eval(&self, x: u64) -> u64 {
        upoly::eval(&self.field(), &self.coeffs, &(x % self.p.get()))
    }

    /// `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let fac = upoly::factor(&self.field(), &self.coeffs, DEFAULT_SEED);
                fac.len() == 1 && fac[0].1 == 1
            }
        }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_balanced(f, self.p.get(), &self.coeffs, "x")
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[{}]({self})", self.p)
    }
}

/// Residues printed from `(-p/2, p/2]`.
fn fmt_balanced(f: &mut fmt::Formatter<'_>, p: u64, coeffs: &[u64], var: &str) -> fmt::Result {
    let terms: Vec<(Sign, u64)> = coeffs
        .iter()
        .map(|&c| {
            if c == 0 {
                (Sign::NoSign, 0)
            } else if p > 2 && c > p / 2 {
                (Sign::Minus, p - c)
            } else {
                (Sign::Plus, c)
            }
        })
        .collect();
    write_poly(f, terms.into_iter(), var)
}

/// Factor a nonzero polynomial over `F_p` into monic irreducibles.
pub fn fp_factor(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    fp_factor_seeded(f, DEFAULT_SEED)
}

pub fn fp_factor_seeded(f: &FpPoly, seed: u64) -> Result<Vec<(FpPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(upoly::factor(&f.field(), &f.coeffs, seed)
        .into_iter()
        .map(|(g, m)| (f.wrap(g), m))
        .collect())
}

/// The residue field `F_p[t]/(m)` for a monic irreducible `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueField {
    modulus: FpPoly,
}

impl ResidueField {
    pub fn new(modulus: FpPoly) -> Result<Arc<Self>> {
        let modulus = modulus.monic();
        if !modulus.is_irreducible() {
            return Err(Error::PhiReducible {
                phi: modulus.to_string(),
                p: modulus.p.get(),
            });
        }
        Ok(Arc::new(ResidueField { modulus }))
    }

    /// `F_p` itself, presented as `F_p[t]/(t)`.
    pub fn prime_field(p: Prime) -> Arc<Self> {
        Arc::new(ResidueField {
            modulus: FpPoly::new(p, vec![0, 1]),
        })
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn prime(&self) -> Prime {
        self.modulus.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn size(&self) -> BigUint {
        self.order()
    }

    /// Reduce an integer polynomial into the field.
    pub fn reduce(self: &Arc<Self>, a: &IntPoly) -> FqElem {
        let r = FpPoly::from_int_poly(a, self.prime()).rem(&self.modulus);
        FqElem {
            field: Arc::clone(self),
            rep: r,
        }
    }

    pub fn element(self: &Arc<Self>, rep: FpPoly) -> FqElem {
        FqElem {
            field: Arc::clone(self),
            rep: rep.rem(&self.modulus),
        }
    }

    pub fn constant(self: &Arc<Self>, n: u64) -> FqElem {
        self.element(FpPoly::new(self.prime(), vec![n]))
    }

    /// All elements, in lexicographic order of representatives.
    pub fn elements(self: &Arc<Self>) -> Vec<FqElem> {
        let p = self.prime().get();
        let k = self.degree();
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..p).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|v| self.element(FpPoly::new(self.prime(), v)))
            .collect()
    }
}

impl Field for ResidueField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }
    fn one(&self) -> Vec<u64> {
        vec![1]
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        upoly::add(&self.modulus.field(), a, b)
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        upoly::sub(&self.modulus.field(), a, b)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let k = self.modulus.field();
        let m = upoly::mul(&k, a, b);
        if m.len() <= self.degree() {
            m
        } else {
            upoly::rem(&k, &m, &self.modulus.coeffs)
        }
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        assert!(!a.is_empty(), "inverse of zero");
        // extended Euclid over F_p
        let k = self.modulus.field();
        let (mut r0, mut r1) = (self.modulus.coeffs.clone(), a.clone());
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = upoly::div_rem(&k, &r0, &r1);
            let s = upoly::sub(&k, &s0, &upoly::mul(&k, &q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant
        let c = k.inv(&r0[0]);
        upoly::rem(&k, &upoly::scale(&k, &s0, &c), &self.modulus.coeffs)
    }
    fn elem(&self, n: u64) -> Vec<u64> {
        upoly::trim(&self.modulus.field(), vec![n % self.prime().get()])
    }
    fn characteristic(&self) -> u64 {
        self.prime().get()
    }
    fn ext_degree(&self) -> u32 {
        self.degree() as u32
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        let p = self.prime().get();
        let v = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        upoly::trim(&self.modulus.field(), v)
    }
    fn key(&self, a: &Vec<u64>) -> Vec<u64> {
        let mut k = a.clone();
        k.resize(self.degree(), 0);
        k.reverse();
        k
    }
}

/// Element of a residue field; carries its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: Arc<ResidueField>,
    rep: FpPoly,
}

impl FqElem {
    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn rep(&self) -> &FpPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn check(&self, other: &FqElem) {
        assert!(
            self.field == other.field,
            "mixing elements of different residue fields"
        );
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        self.check(other);
        self.field.element(self.rep.add(&other.rep))
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        self.check(other);
        let v = Field::mul(&*self.field, &self.rep.coeffs, &other.rep.coeffs);
        self.field.element(FpPoly::new(self.field.prime(), v))
    }

    pub fn neg(&self) -> FqElem {
        let v = Field::neg(&*self.field, &self.rep.coeffs);
        self.field.element(FpPoly::new(self.field.prime(), v))
    }

    pub fn inv(&self) -> Option<FqElem> {
        if self.is_zero() {
            return None;
        }
        let v = Field::inv(&*self.field, &self.rep.coeffs);
        Some(self.field.element(FpPoly::new(self.field.prime(), v)))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_balanced(f, self.field.prime().get(), &self.rep.coeffs, "t")
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqElem({self})")
    }
}

/// Polynomial in `y` over a residue field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    field: Arc<ResidueField>,
    coeffs: Vec<Vec<u64>>,
}

impl FqPoly {
    pub fn new(field: &Arc<ResidueField>, coeffs: Vec<FqElem>) -> Self {
        let raw = coeffs
            .into_iter()
            .map(|c| {
                assert!(
                    c.field == *field,
                    "mixing elements of different residue fields"
                );
                c.rep.coeffs
            })
            .collect();
        Self::from_raw(field, raw)
    }

    /// Coefficients over `F_p` when the field is prime.
    pub fn from_u64s(field: &Arc<ResidueField>, coeffs: &[u64]) -> Self {
        let raw = coeffs
            .iter()
            .map(|&c| field.constant(c).rep.coeffs)
            .collect();
        Self::from_raw(field, raw)
    }

    fn from_raw(field: &Arc<ResidueField>, raw: Vec<Vec<u64>>) -> Self {
        FqPoly {
            field: Arc::clone(field),
            coeffs: upoly::trim(&**field, raw),
        }
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn degree(&self) -> Option<usize> {
        upoly::deg::<ResidueField>(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        let rep = self.coeffs.get(i).cloned().unwrap_or_default();
        self.field.element(FpPoly::new(self.field.prime(), rep))
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    fn check(&self, other: &FqPoly) {
        assert!(
            self.field == other.field,
            "mixing polynomials over different residue fields"
        );
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        self.check(other);
        Self::from_raw(
            &self.field,
            upoly::mul(&*self.field, &self.coeffs, &other.coeffs),
        )
    }

    pub fn pow(&self, k: u32) -> FqPoly {
        (0..k).fold(Self::from_raw(&self.field, vec![vec![1]]), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn div_rem(&self, other: &FqPoly) -> (FqPoly, FqPoly) {
        self.check(other);
        let (q, r) = upoly::div_rem(&*self.field, &self.coeffs, &other.coeffs);
        (
            Self::from_raw(&self.field, q),
            Self::from_raw(&self.field, r),
        )
    }

    pub fn monic(&self) -> FqPoly {
        Self::from_raw(&self.field, upoly::monic(&*self.field, &self.coeffs))
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        assert!(
            x.field == self.field,
            "mixing elements of different residue fields"
        );
        let v = upoly::eval(&*self.field, &self.coeffs, &x.rep.coeffs);
        self.field.element(FpPoly::new(self.field.prime(), v))
    }

    /// Roots in the residue field, by exhaustive evaluation.
    pub fn roots(&self) -> Vec<FqElem> {
        self.field
            .elements()
            .into_iter()
            .filter(|x| self.eval(x).is_zero())
            .collect()
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            let c: Vec<u64> = self
                .coeffs
                .iter()
                .map(|v| v.first().copied().unwrap_or(0))
                .collect();
            return fmt_balanced(f, self.field.prime().get(), &c, "y");
        }
        let terms: Vec<(Sign, Paren)> = self
            .coeffs
            .iter()
            .map(|v| {
                let e = self
                    .field
                    .element(FpPoly::new(self.field.prime(), v.clone()));
                (Sign::Plus, Paren(e))
            })
            .collect();
        write_poly(f, terms.into_iter(), "y")
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly({self})")
    }
}

struct Paren(FqElem);

impl fmt::Display for Paren {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl crate::zx::IsOneZero for Paren {
    fn is_zero_val(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one_val(&self) -> bool {
        self.0.rep.is_one()
    }
}

/// Factor a nonzero polynomial over a residue field into monic irreducibles.
pub fn fq_factor(g: &FqPoly) -> Result<Vec<(FqPoly, u32)>> {
    fq_factor_seeded(g, DEFAULT_SEED)
}

pub fn fq_factor_seeded(g: &FqPoly, seed: u64) -> Result<Vec<(FqPoly, u32)>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(upoly::factor(&*g.field, &g.coeffs, seed)
        .into_iter()
        .map(|(h, m)| (FqPoly::from_raw(&g.field, h), m))
        .collect())
}

/// `gcd(g, g')` is constant.
pub fn is_squarefree(g: &FqPoly) -> bool {
    if g.is_zero() {
        return false;
    }
    let k = &*g.field;
    let d = upoly::gcd(k, &g.coeffs, &upoly::derivative(k, &g.coeffs));
    upoly::deg::<ResidueField>(&d) == Some(0)
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `f` over `F_p`.
pub fn count_monic_irreducibles(p: Prime, f: u32) -> Result<BigUint> {
    if f == 0 {
        return Err(Error::ZeroDegree);
    }
    let pb = BigInt::from(p.get());
    let mut total = BigInt::zero();
    for d in 1..=f {
        if !f.is_multiple_of(d) {
            continue;
        }
        let term = pb.pow(f / d);
        match mobius(d as u64) {
            1 => total += term,
            -1 => total -= term,
            _ => {}
        }
    }
    let (q, r) = total.div_rem(&BigInt::from(f));
    debug_assert!(r.is_zero());
    Ok(q.to_biguint().expect("count is nonnegative"))
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| upoly::cmp(&self.field(), &self.coeffs, &other.coeffs))
    }
}
