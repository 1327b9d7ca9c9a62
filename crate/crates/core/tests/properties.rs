use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use oreindex::families::{mono_family_check, theta_minpoly, MonoFamilyInstance};
use oreindex::ffield::{count_monic_irreducibles, fp_factor, FpPoly};
use oreindex::ore::{
    dedekind_divides_index, index_divisor_verdict, ore_analysis, regularize_linear, Divides,
};
use oreindex::polygon::phi_expand;
use oreindex::zx::{
    discriminant, is_irreducible_q, p_free_part, vp, IntPoly, Irreducibility, PAdicVal, Prime,
};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn small_prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(prime)
}

fn monic(deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, deg).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64s(&c)
    })
}

/// Determinant by fraction-free elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn sylvester(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
    let size = n + m;
    let mut rows = Vec::new();
    for (p, d, copies) in [(f, n, m), (g, m, n)] {
        for r in 0..copies {
            let mut row = vec![BigInt::zero(); size];
            for i in 0..=d {
                row[r + i] = p.coeff(d - i);
            }
            rows.push(row);
        }
    }
    rows
}

fn pow_mod(base: &IntPoly, k: usize, m: &IntPoly) -> IntPoly {
    (0..k).fold(IntPoly::one(), |acc, _| (&acc * base).rem_monic(m))
}

proptest! {
    #[test]
    fn valuation_splits_off_prime_power(n in -1_000_000i64..1_000_000, p in small_prime()) {
        let n = BigInt::from(n);
        match vp(&n, p) {
            PAdicVal::Infinity => prop_assert!(n.is_zero()),
            PAdicVal::Finite(v) => {
                let m = p_free_part(&n, p).unwrap();
                prop_assert!(!m.is_multiple_of(&p.to_bigint()));
                prop_assert_eq!(m * p.to_bigint().pow(v as u32), n);
            }
        }
    }

    #[test]
    fn discriminant_matches_sylvester(f in (2usize..7).prop_flat_map(|d| monic(d, 30))) {
        let n = f.degree().unwrap();
        let res = bareiss(sylvester(&f, &f.derivative()));
        let want = if (n * (n - 1) / 2) % 2 == 0 { res } else { -res };
        prop_assert_eq!(discriminant(&f).unwrap(), want);
    }

    #[test]
    fn products_are_reducible(g in (1usize..4).prop_flat_map(|d| monic(d, 9)),
                              h in (1usize..4).prop_flat_map(|d| monic(d, 9))) {
        let f = &g * &h;
        prop_assert_ne!(is_irreducible_q(&f).unwrap(), Irreducibility::Irreducible);
    }

    #[test]
    fn irreducible_mod_p_implies_irreducible(f in (2usize..7).prop_flat_map(|d| monic(d, 30)),
                                             p in small_prime()) {
        if FpPoly::from_int_poly(&f, p).is_irreducible() {
            prop_assert_eq!(is_irreducible_q(&f).unwrap(), Irreducibility::Irreducible);
        }
    }

    #[test]
    fn factors_reassemble(c in prop::collection::vec(0u64..7, 1..9), p in small_prime()) {
        let mut c = c;
        c.push(1);
        let f = FpPoly::new(p, c);
        let fac = fp_factor(&f).unwrap();
        let prod = fac.iter().fold(FpPoly::new(p, vec![1]), |acc, (g, e)| acc.mul(&g.pow(*e)));
        prop_assert_eq!(prod, f.monic());
        for (g, _) in &fac {
            prop_assert!(g.is_irreducible() && g.is_monic());
        }
    }

    #[test]
    fn irreducible_count_matches_enumeration(p in prop::sample::select(vec![2u64, 3]), f in 1u32..=3) {
        let brute = (0..p.pow(f))
            .filter(|&k| {
                let mut k = k;
                let mut c: Vec<u64> = (0..f).map(|_| { let d = k % p; k /= p; d }).collect();
                c.push(1);
                FpPoly::new(prime(p), c).is_irreducible()
            })
            .count();
        prop_assert_eq!(count_monic_irreducibles(prime(p), f).unwrap(), brute.into());
    }

    #[test]
    fn phi_expansion_reconstructs(f in (1usize..9).prop_flat_map(|d| monic(d, 100)),
                                  phi in (1usize..3).prop_flat_map(|d| monic(d, 5)),
                                  p in small_prime()) {
        if let Ok(exp) = phi_expand(&f, &phi, p) {
            prop_assert_eq!(exp.reconstruct(), f);
            for t in exp.terms() {
                prop_assert!(t.degree().unwrap_or(0) < phi.degree().unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn verdict_is_translation_invariant(f in monic(5, 40), k in -20i64..20, p in small_prime()) {
        prop_assume!(!discriminant(&f).unwrap().is_zero());
        let g = f.shift(&BigInt::from(k));
        let (a, b) = (index_divisor_verdict(&f, p).unwrap(), index_divisor_verdict(&g, p).unwrap());
        if a.divides != Divides::Undetermined && b.divides != Divides::Undetermined {
            prop_assert_eq!(a.divides, b.divides);
        }
        if a.complete && b.complete {
            prop_assert_eq!(a.shapes, b.shapes);
        }
    }

    #[test]
    fn exact_linear_factors_are_counted(g in monic(4, 30), j in -6i64..6, k in 1i64..20, p in small_prime()) {
        // x - c with c = j p^2 divides F exactly, and stays hidden after shifting by k
        let c = BigInt::from(j * (p.get() * p.get()) as i64);
        let f = &IntPoly::linear(&c) * &g;
        prop_assume!(!discriminant(&f).unwrap().is_zero());
        let shifted = f.shift(&BigInt::from(k));
        let (a, b) = (index_divisor_verdict(&f, p).unwrap(), index_divisor_verdict(&shifted, p).unwrap());
        if a.complete && b.complete {
            prop_assert_eq!(a.shapes, b.shapes);
        }
        if a.divides != Divides::Undetermined && b.divides != Divides::Undetermined {
            prop_assert_eq!(a.divides, b.divides);
        }
    }

    #[test]
    fn dedekind_agrees_with_ore(f in (prop::sample::select(vec![5usize, 7])).prop_flat_map(|d| monic(d, 50)),
                                p in small_prime()) {
        if let Ok(ore) = ore_analysis(&f, p) {
            prop_assert_eq!(dedekind_divides_index(&f, p).unwrap(), ore.index_lower_bound > 0);
        }
    }

    #[test]
    fn regularization_is_bounded(a in -300i64..300, b in -300i64..300, p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = IntPoly::quintic_trinomial(&BigInt::from(a), &BigInt::from(b));
        let d = discriminant(&f).unwrap();
        prop_assume!(!d.is_zero());
        let p = prime(p);
        let limit = vp(&d, p).finite().unwrap() / 2 + 2;
        for u in 0..p.get() as i64 {
            let u = BigInt::from(u);
            if !f.eval(&u).is_multiple_of(&p.to_bigint()) {
                continue;
            }
            if let Ok(r) = regularize_linear(&f, p, &u) {
                prop_assert!(r.report.regular);
                prop_assert!(u64::from(r.iterations) <= limit);
                prop_assert!((&r.s - &u).is_multiple_of(&p.to_bigint()));
            }
        }
    }

    #[test]
    fn theta_is_a_root_of_its_minimal_polynomial(
        p in prop::sample::select(vec![2u64, 3]),
        r in 1u32..=2,
        u in 2u32..=5,
        extra in 0u32..=2,
        m in 1u64..4,
        a in -20i64..20,
        b in -20i64..20,
    ) {
        let inst = MonoFamilyInstance::new(prime(p), r, u + extra, u, m, BigInt::from(a), BigInt::from(b));
        prop_assume!(inst.is_ok());
        let inst = inst.unwrap();
        let rep = mono_family_check(&inst, 1000).unwrap();
        let (x, y) = inst.bezout;
        let g = theta_minpoly(&inst.f, x, y, prime(p)).unwrap();
        prop_assert_eq!(&g, &rep.theta_minpoly);
        // p^(n y) g(alpha^x / p^y) = sum g_i p^(y (n - i)) alpha^(x i) = 0 mod F
        let n = inst.f.degree().unwrap();
        let alpha_x = pow_mod(&IntPoly::x(), x as usize, &inst.f);
        let mut acc = IntPoly::zero();
        let mut power = IntPoly::one();
        for i in 0..=n {
            let scale = BigInt::from(p).pow((y as usize * (n - i)) as u32);
            acc = &acc + &power.scale(&(g.coeff(i) * scale));
            power = (&power * &alpha_x).rem_monic(&inst.f);
        }
        prop_assert!(acc.rem_monic(&inst.f).is_zero());
        prop_assert!(rep.eisenstein_at_p);
        prop_assert!(g.coeff(0).abs() > BigInt::zero());
    }
}
