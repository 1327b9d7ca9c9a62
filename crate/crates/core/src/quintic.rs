//! Closed-form conditions for `2` and `3` to divide the common index of the
//! field defined by `x^5 + a x^2 + b`, checked against the general engine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::ffield::DEFAULT_SEED;
use crate::ore::{
    index_divisor_verdict_seeded, regularize_linear_seeded, Divides, IndexDivisorVerdict,
};
use crate::zx::{is_irreducible_q, p_free_part, vp, IntPoly, Irreducibility, PAdicVal, Prime};

pub const QUINTIC_SCHEMA: &str = "oreindex.quintic/1";

/// Which closed-form condition matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Two(u8),
    Three(u8),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Two(i) => write!(f, "p2-{i}"),
            Condition::Three(i) => write!(f, "p3-{i}"),
        }
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Modulus used for the residue classes `{7, 20}` in the second condition at 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ResidueReading {
    #[default]
    Mod27,
    Mod9,
    Mod3,
}

impl ResidueReading {
    fn modulus(self) -> i64 {
        match self {
            ResidueReading::Mod27 => 27,
            ResidueReading::Mod9 => 9,
            ResidueReading::Mod3 => 3,
        }
    }
}

/// How to read a clause whose printed form disagrees with the argument that
/// derives it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    #[default]
    Printed,
    Proof,
}

/// Interpretation switches for the closed forms.
///
/// * `two_adic`: conditions 2 and 3 at 2 either as printed
///   (`b_2 + a_2 = 0 mod 8`, and `v_2(b) = 4` when `a = 4 mod 8`) or with the
///   `2^(5k)` term of the expansion at `x + 2^k` kept, which gives
///   `b_2 + a_2 + 2^(3k - v_2(a)) = 0 mod 8` for `v_2(b) = v_2(a) + 2k`.
/// * `residue`: modulus for the classes `{7, 20}` in condition 2 at 3.
/// * `congruence`: `b = a^3 - a^5 mod 81` as printed in conditions 2 and 3 at
///   3, or `b + a^3 - a^5 = 0 mod 81`, the constant term at `x + a`.
/// * `linear_term`: `-2as + 5s^4` as printed, or `F'(s) = 2as + 5s^4`, the
///   linear term at `x - s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
pub struct Readings {
    pub two_adic: Reading,
    pub residue: ResidueReading,
    pub congruence: Reading,
    pub linear_term: Reading,
}

impl Readings {
    /// Every clause read to agree with its derivation.
    pub fn proof() -> Readings {
        Readings {
            two_adic: Reading::Proof,
            residue: ResidueReading::Mod27,
            congruence: Reading::Proof,
            linear_term: Reading::Proof,
        }
    }
}

impl fmt::Display for Readings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |r: Reading| match r {
            Reading::Printed => "printed",
            Reading::Proof => "proof",
        };
        let m = match self.residue {
            ResidueReading::Mod27 => "mod27",
            ResidueReading::Mod9 => "mod9",
            ResidueReading::Mod3 => "mod3",
        };
        write!(
            f,
            "two-adic={},residue={m},congruence={},linear-term={}",
            w(self.two_adic),
            w(self.congruence),
            w(self.linear_term)
        )
    }
}

/// Outcome of a closed-form condition set at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub divides: Divides,
    pub matched_condition: Option<Condition>,
    pub note: Option<String>,
}

impl ClosedForm {
    fn matched(c: Condition) -> Self {
        ClosedForm {
            divides: Divides::Yes,
            matched_condition: Some(c),
            note: None,
        }
    }

    fn none() -> Self {
        ClosedForm {
            divides: Divides::No,
            matched_condition: None,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuinticVerdict {
    pub schema: &'static str,
    pub a: BigInt,
    pub b: BigInt,
    pub irreducible: bool,
    pub by_theorem: BTreeMap<u64, ClosedForm>,
    pub by_engine: BTreeMap<u64, IndexDivisorVerdict>,
    pub consistent: bool,
    pub notes: Vec<String>,
}

impl QuinticVerdict {
    /// Primes found to divide the common index, by the engine.
    pub fn common_index_divisors(&self) -> Vec<u64> {
        self.by_engine
            .iter()
            .filter(|(_, v)| v.divides == Divides::Yes)
            .map(|(p, _)| *p)
            .collect()
    }
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn v(n: &BigInt, p: u64) -> PAdicVal {
    vp(n, prime(p))
}

fn fin(n: &BigInt, p: u64) -> Option<u64> {
    v(n, p).finite()
}

/// `(n / p^v(n)) mod m`, for nonzero `n`.
fn free_mod(n: &BigInt, p: u64, m: i64) -> i64 {
    let r = p_free_part(n, prime(p))
        .unwrap()
        .mod_floor(&BigInt::from(m));
    i64::try_from(r).unwrap()
}

fn modi(n: &BigInt, m: i64) -> i64 {
    i64::try_from(n.mod_floor(&BigInt::from(m))).unwrap()
}

/// First matching condition for `2 | i(K)`, or none.
pub fn thm_p2_condition(a: &BigInt, b: &BigInt, reading: Reading) -> ClosedForm {
    let Some(vb) = fin(b, 2) else {
        return ClosedForm::none();
    };
    if a.is_odd() {
        if vb >= 2 && vb % 2 == 0 && (free_mod(b, 2, 4) + modi(a, 4)) % 4 == 0 {
            return ClosedForm::matched(Condition::Two(1));
        }
        return ClosedForm::none();
    }
    let Some(va) = fin(a, 2) else {
        return ClosedForm::none();
    };
    let sum8 = free_mod(b, 2, 8) + free_mod(a, 2, 8);
    match reading {
        Reading::Printed => {
            if va == 1 && vb >= 3 && vb % 2 == 1 && sum8 % 8 == 0 {
                return ClosedForm::matched(Condition::Two(2));
            }
            if va == 2 && vb == 4 && sum8 % 8 == 0 {
                return ClosedForm::matched(Condition::Two(3));
            }
        }
        Reading::Proof => {
            if (va == 1 || va == 2) && vb > va && (vb - va) % 2 == 0 {
                let k = (vb - va) / 2;
                let extra = if 3 * k - va >= 3 {
                    0
                } else {
                    1 << (3 * k - va)
                };
                if (sum8 + extra) % 8 == 0 {
                    return ClosedForm::matched(Condition::Two(va as u8 + 1));
                }
            }
        }
    }
    ClosedForm::none()
}

/// `2 v_3(d) - 1`, infinite when `d = 0`.
fn twice_minus_one(d: &BigInt) -> PAdicVal {
    match fin(d, 3) {
        Some(k) => PAdicVal::Finite((2 * k).saturating_sub(1)),
        None => PAdicVal::Infinity,
    }
}

/// `v(g) > 2 v(d) - 1`, or `v(g) < 2 v(d) - 1` with `g_3 = a mod 3`.
///
/// For `v(d) = 0` the threshold `-1` is below every valuation.
fn split_test(g: &BigInt, d: &BigInt, a: &BigInt) -> bool {
    let vg = v(g, 3);
    let vd = fin(d, 3);
    if vd == Some(0) {
        return true;
    }
    let t = twice_minus_one(d);
    vg > t || (vg < t && free_mod(g, 3, 3) == modi(a, 3))
}

/// First matching condition for `3 | i(K)`, or none. Conditions relying on a
/// regular element compute one with
/// [`crate::ore::regularize_linear`] starting at `-a`.
pub fn thm_p3_condition(a: &BigInt, b: &BigInt, readings: Readings) -> ClosedForm {
    thm_p3_condition_seeded(a, b, readings, DEFAULT_SEED)
}

fn thm_p3_condition_seeded(a: &BigInt, b: &BigInt, readings: Readings, seed: u64) -> ClosedForm {
    let Some(vb) = fin(b, 3) else {
        return ClosedForm::none();
    };
    let a9 = modi(a, 9);
    if vb >= 2 && vb % 2 == 0 && (a9 == 1 || a9 == 8) && (free_mod(b, 3, 3) * modi(a, 3)) % 3 == 2 {
        return ClosedForm::matched(Condition::Three(1));
    }
    let a2 = a * a;
    let a3 = &a2 * a;
    let a5 = &a3 * &a2;
    let root_c = b + &a3 - &a5;
    let c = match readings.congruence {
        Reading::Proof => root_c.clone(),
        Reading::Printed => b - &a3 + &a5,
    };
    let bcoef = BigInt::from(5) * &a2 * &a2 - BigInt::from(2) * &a2;
    let a27 = modi(a, 27);
    let in_class = |m: i64, set: &[i64]| set.iter().any(|r| modi(a, m) == r % m);
    let c81 = modi(&c, 81) == 0;

    if in_class(readings.residue.modulus(), &[7, 20])
        && c81
        && !root_c.is_zero()
        && split_test(&root_c, &bcoef, a)
    {
        return ClosedForm::matched(Condition::Three(2));
    }

    let at_regular = |cond: u8| -> ClosedForm {
        let f = IntPoly::quintic_trinomial(a, b);
        match regularize_linear_seeded(&f, prime(3), &(-a), seed) {
            Ok(r) => {
                let s = r.s;
                let s2 = &s * &s;
                let s4 = &s2 * &s2;
                let g = b + a * &s2 + &s4 * &s;
                let d = match readings.linear_term {
                    Reading::Proof => BigInt::from(2) * a * &s,
                    Reading::Printed => BigInt::from(-2) * a * &s,
                } + BigInt::from(5) * &s4;
                if split_test(&g, &d, a) {
                    ClosedForm::matched(Condition::Three(cond))
                } else {
                    ClosedForm::none()
                }
            }
            Err(e) => ClosedForm {
                divides: Divides::Undetermined,
                matched_condition: None,
                note: Some(format!("condition p3-{cond}: {e}")),
            },
        }
    };

    if (a27 == 7 || a27 == 20) && c81 && !root_c.is_zero() {
        let vc = v(&root_c, 3);
        let t = twice_minus_one(&bcoef);
        if vc == t
            && free_mod(&root_c, 3, 3) == modi(&-a, 3)
            && free_mod(&bcoef, 3, 3) == modi(&-a, 3)
        {
            let r = at_regular(3);
            if r.divides != Divides::No {
                return r;
            }
        }
    }
    if (a27 == 2 || a27 == 11) && modi(&(b + &a3 - &a5 + 27), 81) == 0 {
        let r = at_regular(4);
        if r.divides != Divides::No {
            return r;
        }
    }
    if (a27 == 16 || a27 == 25) && modi(&(b + &a3 - &a5 - 27), 81) == 0 {
        let r = at_regular(5);
        if r.divides != Divides::No {
            return r;
        }
    }
    ClosedForm::none()
}

/// Options for [`quintic_verdict_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuinticOptions {
    pub readings: Readings,
    /// Primes at which to run the engine, a subset of `{2, 3, 5}`.
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl Default for QuinticOptions {
    fn default() -> Self {
        QuinticOptions {
            readings: Readings::default(),
            primes: vec![2, 3, 5],
            seed: DEFAULT_SEED,
        }
    }
}

/// Closed form and engine verdicts for `x^5 + a x^2 + b` at 2, 3 and 5.
pub fn quintic_verdict(a: &BigInt, b: &BigInt) -> Result<QuinticVerdict> {
    quintic_verdict_with(a, b, &QuinticOptions::default())
}

pub fn quintic_verdict_with(
    a: &BigInt,
    b: &BigInt,
    opts: &QuinticOptions,
) -> Result<QuinticVerdict> {
    let f = IntPoly::quintic_trinomial(a, b);
    let irreducible = is_irreducible_q(&f)? == Irreducibility::Irreducible;
    let mut out = QuinticVerdict {
        schema: QUINTIC_SCHEMA,
        a: a.clone(),
        b: b.clone(),
        irreducible,
        by_theorem: BTreeMap::new(),
        by_engine: BTreeMap::new(),
        consistent: true,
        notes: Vec::new(),
    };
    if !irreducible {
        return Ok(out);
    }
    for &p in &opts.primes {
        let closed = match p {
            2 => thm_p2_condition(a, b, opts.readings.two_adic),
            3 => thm_p3_condition_seeded(a, b, opts.readings, opts.seed),
            _ => ClosedForm::none(),
        };
        out.by_theorem.insert(p, closed);
        out.by_engine
            .insert(p, index_divisor_verdict_seeded(&f, prime(p), opts.seed)?);
    }
    for (&p, t) in &out.by_theorem {
        let e = out.by_engine[&p].divides;
        if let Some(n) = &t.note {
            out.notes.push(n.clone());
        }
        if p >= 5 {
            if e != Divides::No {
                out.notes.push(format!("engine at {p}: {e}"));
            }
        } else if e == Divides::Undetermined {
            out.consistent = false;
            out.notes.push(format!("engine undetermined at {p}"));
        } else if t.divides != e {
            out.consistent = false;
            out.notes
                .push(format!("at {p}: closed form {} but engine {e}", t.divides));
        }
        if e == Divides::Yes && !(b % p).is_zero() {
            out.notes.push(format!("{p} divides i(K) but not b"));
        }
    }
    Ok(out)
}

/// Both sides of the trinomial discriminant identity.
pub fn discriminant_closed_form(a: &BigInt, b: &BigInt) -> BigInt {
    b * (BigInt::from(3125) * b.pow(3) + BigInt::from(108) * a.pow(5))
}
