//! The acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p oreindex --test acceptance -- --nocapture` to see
//! the report. Criteria listed in `KNOWN_FAILURES` are claims that do not
//! hold; the test requires them to keep failing so that a change in either
//! direction is noticed.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oreindex::families::{dpr_family_check, mono_family_check, MonoFamilyInstance};
use oreindex::ffield::{count_monic_irreducibles, FpPoly, FqPoly};
use oreindex::ore::{dedekind_divides_index, index_divisor_verdict, ore_analysis, Divides};
use oreindex::polygon::{phi_expand, residue_field_of, NewtonPolygon};
use oreindex::quintic::discriminant_closed_form;
use oreindex::scan::{ledger_to_json, rows_to_csv, rows_to_json, run_scan, ScanConfig};
use oreindex::zx::{discriminant, is_irreducible_q, vp, IntPoly, Irreducibility, PAdicVal, Prime};

const KNOWN_FAILURES: &[u32] = &[5];

type Criterion = (u32, &'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let el = t.elapsed();
    if el > limit {
        o.pass = false;
        o.detail += &format!("; took {el:?}, limit {limit:?}");
    } else {
        o.detail += &format!(" ({el:.2?})");
    }
    o
}

fn irreducible(f: &IntPoly) -> bool {
    is_irreducible_q(f).unwrap() == Irreducibility::Irreducible
}

fn c1_lattice_fixture() -> Outcome {
    let pts = [(0, 5), (1, 3), (5, 1), (9, 0)]
        .into_iter()
        .map(|(x, y)| (x, PAdicVal::Finite(y)))
        .collect();
    let poly = NewtonPolygon::from_points(pts);
    let ind = poly.lattice_count();
    let vertices_ok = poly.principal_vertices() == [(0, 5), (1, 3), (5, 1), (9, 0)];
    outcome(
        ind == 9 && vertices_ok,
        format!("ind_phi = {ind} for deg phi = 1"),
    )
}

fn c2_discriminant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sign = None;
    let mut bad = Vec::new();
    for _ in 0..500 {
        let (a, b) = (
            big(rng.gen_range(-10_000..=10_000)),
            big(rng.gen_range(-10_000..=10_000)),
        );
        let d = discriminant(&IntPoly::quintic_trinomial(&a, &b)).unwrap();
        let c = discriminant_closed_form(&a, &b);
        let s = if c.is_zero() {
            if !d.is_zero() {
                bad.push((a, b));
            }
            continue;
        } else if d == c {
            1
        } else if d == -&c {
            -1
        } else {
            bad.push((a, b));
            continue;
        };
        if *sign.get_or_insert(s) != s {
            bad.push((a, b));
        }
    }
    outcome(
        bad.is_empty(),
        format!("global sign {:?}, {} mismatches", sign, bad.len()),
    )
}

/// `yes <=> u = r mod m` over `x^5 + a x^2 + c u` for odd `u`, `3 !| u`,
/// `|u| <= 99`, irreducible members only.
fn family_check(a: i64, c: i64, m: i64, r: i64) -> (bool, String) {
    let mut n = 0;
    let mut bad = Vec::new();
    for u in -99i64..=99 {
        if u % 2 == 0 || u % 3 == 0 {
            continue;
        }
        let f = IntPoly::quintic_trinomial(&big(a), &big(c * u));
        if !irreducible(&f) {
            continue;
        }
        n += 1;
        let v = index_divisor_verdict(&f, prime(2)).unwrap();
        let want = u.mod_floor(&m) == r;
        if v.divides == Divides::Undetermined || v.is_yes() != want {
            bad.push(u);
        }
    }
    (
        bad.is_empty(),
        format!("x^5 + {a}x^2 + {c}u: {n} fields, mismatches at u = {bad:?}"),
    )
}

fn c3_example_one() -> Outcome {
    let (ok, d) = family_check(3, 48, 4, 3);
    outcome(ok, d)
}

fn c4_examples_two_three() -> Outcome {
    let (ok1, d1) = family_check(6, 24, 8, 3);
    let (ok2, d2) = family_check(60, 192, 8, 3);
    outcome(ok1 && ok2, format!("{d1}; {d2}"))
}

fn c5_seven_twenty_one() -> Outcome {
    let p = prime(3);
    let f = IntPoly::quintic_trinomial(&big(7), &big(21));
    let phi = IntPoly::from_i64s(&[7, 1]);
    let exp = phi_expand(&f, &phi, p).unwrap();
    let field = residue_field_of(&phi, p).unwrap();
    let np = exp.newton_polygon();
    let vertices_ok = np.principal_vertices() == [(0, 4), (2, 1), (3, 0)];
    // -(y - 1)(y + 1) = -y^2 + 1 over F_3
    let expected = FqPoly::from_u64s(&field, &[1, 0, 2]);
    let first = &np.principal_sides()[0];
    let residual = exp.residual(first, &field).unwrap().poly;
    let residual_ok = residual == expected;
    let verdict = index_divisor_verdict(&f, p).unwrap();
    outcome(
        vertices_ok && residual_ok && verdict.is_yes(),
        format!(
            "vertices {:?} ({}); side {:?}-{:?} has degree {} and residual {} (claimed {}); verdict {}",
            np.principal_vertices(),
            if vertices_ok { "as claimed" } else { "differ" },
            first.start,
            first.end,
            first.degree(),
            residual,
            expected,
            verdict.divides
        ),
    )
}

fn c6_pure_quintic() -> Outcome {
    let f = IntPoly::from_i64s(&[-53, 0, 0, 0, 0, 1]);
    let verdicts: Vec<_> = [2, 3, 5]
        .into_iter()
        .map(|p| (p, index_divisor_verdict(&f, prime(p)).unwrap().divides))
        .collect();
    let ok = verdicts.iter().all(|(_, d)| *d == Divides::No);
    outcome(ok, format!("x^5 - 53: {verdicts:?}"))
}

fn c7_grid() -> Outcome {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cfg = ScanConfig {
        a_range: (-100, 100),
        b_range: (-100, 100),
        primes: vec![2, 3],
        jobs,
        ..ScanConfig::default()
    };
    let out = run_scan(&cfg).unwrap();
    let s = &out.summary;
    let annotated = out.ledger.iter().all(|d| {
        d.reproduced
            && d.engine != "undetermined"
            && d.classification.starts_with("closed-form erratum")
            && d.readings.keys().any(|k| k.contains("printed"))
            && d.readings.keys().any(|k| k.contains("proof"))
    });
    let unresolved = out
        .ledger
        .iter()
        .filter(|d| d.agreeing_readings.is_empty())
        .count();
    let limit_ok = s.irreducible > 39_000;
    outcome(
        s.engine_undetermined == 0 && annotated && limit_ok,
        format!(
            "{} irreducible, engine undetermined {}, {} ledger entries (all reproduced and annotated: {annotated}), {} unresolved by any reading, {jobs} worker(s)",
            s.irreducible, s.engine_undetermined, s.discrepancies, unresolved
        ),
    )
}

fn c8_dedekind_ore() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut n, mut skipped) = (0, 0);
    let mut bad = Vec::new();
    while n < 1000 {
        let deg = if rng.gen_bool(0.5) { 5 } else { 7 };
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-50..=50)).collect();
        c.push(1);
        let f = IntPoly::from_i64s(&c);
        let p = prime([2, 3, 5, 7][rng.gen_range(0..4)]);
        let Ok(ore) = ore_analysis(&f, p) else {
            skipped += 1;
            continue;
        };
        n += 1;
        let ded = dedekind_divides_index(&f, p).unwrap();
        if ded != (ore.index_lower_bound > 0) {
            bad.push(format!("{f} at {}", p.get()));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{n} polynomials ({skipped} inseparable skipped), mismatches {bad:?}"),
    )
}

/// All monic polynomials of degree `f` over `F_p`.
fn monic_polys(p: u64, f: u32) -> impl Iterator<Item = FpPoly> {
    (0..p.pow(f)).map(move |mut k| {
        let mut c = Vec::with_capacity(f as usize + 1);
        for _ in 0..f {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        FpPoly::new(prime(p), c)
    })
}

fn c9_irreducible_count() -> Outcome {
    let mut bad = Vec::new();
    for p in [2u64, 3, 5] {
        for f in 1..=4u32 {
            let brute = monic_polys(p, f).filter(|g| g.is_irreducible()).count();
            let formula = count_monic_irreducibles(prime(p), f).unwrap();
            if formula != brute.into() {
                bad.push((p, f));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("p in {{2,3,5}}, f <= 4, mismatches {bad:?}"),
    )
}

fn c10_mono_desk() -> Outcome {
    let inst = MonoFamilyInstance::new(prime(3), 1, 2, 2, 1, big(1), big(1)).unwrap();
    let r = mono_family_check(&inst, 1000).unwrap();
    let c0 = r.theta_minpoly.coeff(0);
    let v0 = vp(&c0, prime(3));
    let ok = inst.f.to_string() == "x^3 + 9*x + 9"
        && r.poly_index_positive
        && r.eisenstein_at_p
        && v0 == PAdicVal::Finite(1);
    outcome(
        ok,
        format!(
            "F = {}, ind = {}, theta = {} with minimal polynomial {}, v_3({c0}) = {v0:?}",
            inst.f, r.index, r.theta, r.theta_minpoly
        ),
    )
}

fn c11_dpr_desk() -> Outcome {
    let r = match dpr_family_check(prime(3), 3, 1, &big(81), &big(80)) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let ok = r.side_count_ge >= 4
        && r.segments.iter().all(|s| s.on_polygon)
        && r.p1 >= 4
        && r.n1 == 3
        && r.common_index_divisor
        && r.engine == Divides::Yes;
    outcome(
        ok,
        format!(
            "vertices {:?}, {} degree-one sides, P_1 = {} > N_1 = {}, engine {}",
            r.polygon.principal_vertices(),
            r.side_count_ge,
            r.p1,
            r.n1,
            r.engine
        ),
    )
}

fn c12_determinism() -> Outcome {
    let run = |jobs: usize| {
        let cfg = ScanConfig {
            a_range: (-25, 25),
            b_range: (-25, 25),
            jobs,
            ..ScanConfig::default()
        };
        let out = run_scan(&cfg).unwrap();
        (
            rows_to_csv(&out.rows).unwrap(),
            rows_to_json(&out),
            ledger_to_json(&out.ledger),
        )
    };
    let one = run(1);
    let four = run(4);
    outcome(
        one == four,
        format!(
            "jobs 1 vs 4: csv {} bytes, identical {}",
            one.0.len(),
            one == four
        ),
    )
}

#[test]
fn acceptance() {
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "lattice-count fixture",
            Box::new(move || timed(ms(1), c1_lattice_fixture)),
        ),
        (
            2,
            "discriminant identity",
            Box::new(move || timed(s(1), c2_discriminant)),
        ),
        (
            3,
            "x^5 + 3x^2 + 48u at 2",
            Box::new(move || timed(s(10), c3_example_one)),
        ),
        (
            4,
            "x^5 + 6x^2 + 24u, x^5 + 60x^2 + 192u at 2",
            Box::new(move || timed(s(10), c4_examples_two_three)),
        ),
        (5, "(a, b) = (7, 21) at 3", Box::new(c5_seven_twenty_one)),
        (6, "x^5 - 53", Box::new(c6_pure_quintic)),
        (
            7,
            "grid |a|, |b| <= 100",
            Box::new(move || timed(s(600), c7_grid)),
        ),
        (8, "Dedekind vs Ore", Box::new(c8_dedekind_ore)),
        (
            9,
            "irreducible counts",
            Box::new(move || timed(s(1), c9_irreducible_count)),
        ),
        (10, "degree three power basis", Box::new(c10_mono_desk)),
        (
            11,
            "x^27 + 81x + 80 at 3",
            Box::new(move || timed(s(5), c11_dpr_desk)),
        ),
        (12, "scan determinism", Box::new(c12_determinism)),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in &criteria {
        let o = run();
        println!(
            "{} {n:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if o.pass == KNOWN_FAILURES.contains(n) {
            unexpected.push(*n);
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with unexpected outcome: {unexpected:?}"
    );
}

#[test]
fn discriminant_sign_is_positive() {
    // fixes the global sign reported by criterion 2
    let d = discriminant(&IntPoly::quintic_trinomial(&big(1), &big(1))).unwrap();
    assert!(d.is_positive());
    assert_eq!(d, discriminant_closed_form(&big(1), &big(1)));
}
