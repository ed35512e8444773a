//! Property suites shared by `properties.rs` and the acceptance run.
//!
//! Every suite drives its own `TestRunner` with a fixed seed, so a failure
//! reproduces exactly. Oracles (schoolbook products, brute-force Euler
//! products, coefficient filters) are written here independently of the
//! library code under test.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use phicong::eta::phi_series;
use phicong::hecke::u_p;
use phicong::phipoly::{decompose_with, p_contains, PSetSpec, PhiPowerTable, DEFAULT_GUARD};
use phicong::series::EXACT;
use phicong::{ExactInteger, IntPhiPoly, IntSeries};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

pub const CASES: u32 = 1000;
pub const SEED: u64 = 0x5eed_0f94;

pub fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    })
}

type Terms = BTreeMap<i64, BigInt>;

fn terms_of(s: &IntSeries) -> Terms {
    s.terms().map(|(e, c)| (e, c.clone())).collect()
}

/// Schoolbook product of two exact Laurent polynomials.
fn naive_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn coeff(t: &Terms, n: i64) -> BigInt {
    t.get(&n).cloned().unwrap_or_else(BigInt::zero)
}

/// Every coefficient of `s` below its precision equals the oracle's.
fn agrees_below_prec(s: &IntSeries, oracle: &Terms) -> bool {
    let lo = oracle
        .keys()
        .next()
        .copied()
        .unwrap_or(0)
        .min(s.valuation().unwrap_or(0));
    (lo..s.prec()).all(|n| s.coefficient(n).unwrap() == coeff(oracle, n))
}

fn exact_poly() -> impl Strategy<Value = IntSeries> {
    (-3i64..4, prop::collection::vec(-40i64..40, 0..10)).prop_map(|(start, cs)| {
        IntSeries::polynomial(
            cs.into_iter()
                .enumerate()
                .map(|(k, c)| (start + k as i64, BigInt::from(c))),
        )
    })
}

/// An exact polynomial together with a truncation precision.
fn truncated() -> impl Strategy<Value = (IntSeries, i64)> {
    (exact_poly(), -2i64..14)
}

fn eq_upto_common_prec(x: &IntSeries, y: &IntSeries) -> bool {
    let p = x.prec().min(y.prec());
    x.truncate(p) == y.truncate(p)
}

pub fn ring_axioms() -> Result<(), String> {
    let s = || prop_oneof![exact_poly(), truncated().prop_map(|(a, t)| a.truncate(t))];
    runner()
        .run(&(s(), s(), s()), |(a, b, c)| {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(eq_upto_common_prec(&a.add(&b).add(&c), &a.add(&b.add(&c))));
            prop_assert!(eq_upto_common_prec(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
            prop_assert!(eq_upto_common_prec(
                &a.mul(&b.add(&c)),
                &a.mul(&b).add(&a.mul(&c))
            ));
            let one = IntSeries::one(EXACT);
            prop_assert_eq!(a.mul(&one), a.clone());
            prop_assert!(a.sub(&a).is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Truncating inputs never changes a coefficient the result claims to know.
pub fn precision_soundness() -> Result<(), String> {
    runner()
        .run(
            &(
                truncated(),
                truncated(),
                0u32..4,
                prop::sample::select(vec![2u32, 3, 5, 7, 13]),
            ),
            |((a, ta), (b, tb), k, p)| {
                let (ea, eb) = (terms_of(&a), terms_of(&b));
                let (sa, sb) = (a.truncate(ta), b.truncate(tb));

                let sum = sa.add(&sb);
                prop_assert_eq!(sum.prec(), ta.min(tb));
                let mut oracle = ea.clone();
                for (e, c) in &eb {
                    *oracle.entry(*e).or_insert_with(BigInt::zero) += c;
                }
                prop_assert!(agrees_below_prec(&sum, &oracle));

                prop_assert!(agrees_below_prec(&sa.mul(&sb), &naive_mul(&ea, &eb)));

                let mut pw = Terms::from([(0, BigInt::one())]);
                for _ in 0..k {
                    pw = naive_mul(&pw, &ea);
                }
                prop_assert!(agrees_below_prec(&sa.pow(k), &pw));

                let u = u_p(&sa, p);
                for n in u.valuation().unwrap_or(0).min(0) - 2..u.prec() {
                    prop_assert_eq!(u.coefficient(n).unwrap(), coeff(&ea, p as i64 * n));
                }
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

/// `a · a⁻¹ = 1` below the product precision, for every exact completion.
pub fn invert_round_trip() -> Result<(), String> {
    let unit_lead = (
        -3i64..4,
        prop::bool::ANY,
        prop::collection::vec(-30i64..30, 0..8),
        0i64..16,
        -6i64..20,
    );
    runner()
        .run(&unit_lead, |(v, neg, rest, trunc, out)| {
            let lead = if neg { -1 } else { 1 };
            let exact = IntSeries::polynomial(
                std::iter::once((v, BigInt::from(lead))).chain(
                    rest.into_iter()
                        .enumerate()
                        .map(|(k, c)| (v + 1 + k as i64, BigInt::from(c))),
                ),
            );
            let a = exact.truncate(v + 1 + trunc);
            let inv = a.invert(out).unwrap();
            prop_assert_eq!(inv.prec(), out.min(a.prec() - 2 * v));
            let prod = naive_mul(&terms_of(&exact), &terms_of(&inv));
            let known = (a.prec() - v).min(inv.prec() + v);
            for n in -v - 4..known {
                let want = if n == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(coeff(&prod, n), want, "n = {}", n);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn euler_factor_brute_force() -> Result<(), String> {
    runner()
        .run(&(1u32..6, -2i64..70), |(stride, prec)| {
            let fast = IntSeries::euler_factor(stride, prec);
            prop_assert_eq!(fast.prec(), prec);
            let mut acc = Terms::from([(0, BigInt::one())]);
            let mut n = stride as i64;
            while n < prec {
                acc = naive_mul(
                    &acc,
                    &Terms::from([(0, BigInt::one()), (n, BigInt::from(-1))]),
                );
                acc.retain(|e, _| *e < prec);
                n += stride as i64;
            }
            prop_assert!(agrees_below_prec(&fast, &acc));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn u_p_linearity() -> Result<(), String> {
    let p = prop::sample::select(vec![2u32, 3, 5, 7, 13]);
    runner()
        .run(
            &(truncated(), truncated(), -9i64..10, -9i64..10, p),
            |((x, tx), (y, ty), c1, c2, p)| {
                let (x, y) = (x.truncate(tx), y.truncate(ty));
                let (c1, c2) = (BigInt::from(c1), BigInt::from(c2));
                let lhs = u_p(&x.scale(&c1).add(&y.scale(&c2)), p);
                let rhs = u_p(&x, p).scale(&c1).add(&u_p(&y, p).scale(&c2));
                prop_assert_eq!(lhs, rhs);
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn phi_poly(p: u32) -> impl Strategy<Value = IntPhiPoly> {
    prop::collection::vec((-2000i64..2000, 0u32..12), 1..9).prop_map(move |cs| {
        IntPhiPoly::from_terms(
            p,
            cs.into_iter()
                .enumerate()
                .map(|(j, (c, k))| (j as u32 + 1, BigInt::from(c) * BigInt::int_pow(p, k))),
        )
        .unwrap()
    })
}

pub fn decompose_evaluate_round_trip() -> Result<(), String> {
    let tables: BTreeMap<u32, PhiPowerTable<BigInt>> = [3u32, 5, 7]
        .into_iter()
        .map(|p| {
            (
                p,
                PhiPowerTable::build(p, 9 + DEFAULT_GUARD as i64 + 1).unwrap(),
            )
        })
        .collect();
    let strat = prop::sample::select(vec![3u32, 5, 7]).prop_flat_map(|p| (Just(p), phi_poly(p)));
    runner()
        .run(&strat, |(p, poly)| {
            let table = &tables[&p];
            let max_deg = poly.degree().unwrap_or(1);
            let out_prec = max_deg as i64 + DEFAULT_GUARD as i64 + 1;
            let s = poly.evaluate(out_prec, table).unwrap();
            // evaluation oracle: Σ d_j φ^j by repeated series products
            let phi = phi_series::<BigInt>(p, out_prec).unwrap();
            let mut oracle = IntSeries::zero(out_prec);
            for (j, d) in poly.terms() {
                oracle = oracle.add(&phi.pow(j).scale(d));
            }
            prop_assert_eq!(&s, &oracle.truncate(out_prec));
            let back = decompose_with(&s, p, max_deg, DEFAULT_GUARD, table).unwrap();
            prop_assert_eq!(back, poly);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// A random element of P(ℓ, a) whose coefficients sit at `extra` above the bound.
fn p_set_element(p: u32, spec: &PSetSpec, extra: &[(u32, i64)]) -> IntPhiPoly {
    let lo = spec.ell.max(1) as u32;
    IntPhiPoly::from_terms(
        p,
        extra.iter().enumerate().map(|(i, &(e, u))| {
            let k = lo + i as u32;
            let req = spec.required_valuation(k).unwrap() as u32 + e;
            // u ∈ [1, p−1] keeps the unit part prime to p
            let unit = BigInt::from(1 + u.rem_euclid(p as i64 - 1));
            (k, unit * BigInt::int_pow(p, req))
        }),
    )
    .unwrap()
}

pub fn p_contains_soundness() -> Result<(), String> {
    let strat = (
        prop::sample::select(vec![3u32, 5, 7]),
        (0u64..6, 0u64..10),
        (0u64..8, 0u64..24),
        prop::collection::vec((0u32..3, 0i64..100), 1..6),
    );
    runner()
        .run(&strat, |(p, outer, inner, extra)| {
            let inner_spec = PSetSpec::new(p, inner.0, inner.1).unwrap();
            let outer_spec = PSetSpec::new(p, outer.0, outer.1).unwrap();
            let f = p_set_element(p, &inner_spec, &extra);
            prop_assert!(f.in_p(&inner_spec).unwrap());
            if p_contains(p, outer, inner).unwrap() {
                prop_assert!(
                    f.in_p(&outer_spec).unwrap(),
                    "{:?} in P{:?} but not P{:?}",
                    f,
                    inner,
                    outer
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `r, s ∈ R  ⟹  p^δ r s ∈ R`.
pub fn r_product_lemma() -> Result<(), String> {
    let r_elem = || prop::collection::vec((0u32..3, -500i64..500), 1..7);
    let strat = (prop::sample::select(vec![3u32, 5, 7]), r_elem(), r_elem());
    runner()
        .run(&strat, |(p, a, b)| {
            let delta = if p == 3 { 4 } else { 1 };
            let build = |cs: &[(u32, i64)]| {
                IntPhiPoly::from_terms(
                    p,
                    cs.iter().enumerate().map(|(i, &(e, c))| {
                        let n = i as u32 + 1;
                        let c = if c == 0 { 1 } else { c };
                        (
                            n,
                            BigInt::from(c) * BigInt::int_pow(p, delta * n.saturating_sub(1) + e),
                        )
                    }),
                )
                .unwrap()
            };
            let (r, s) = (build(&a), build(&b));
            prop_assert!(r.in_r().unwrap() && s.in_r().unwrap());
            let prod = r.mul(&s).unwrap().scale(&BigInt::int_pow(p, delta));
            prop_assert!(prod.in_r().unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn json_round_trips() -> Result<(), String> {
    let strat = (
        truncated(),
        prop::bool::ANY,
        prop::sample::select(vec![3u32, 5, 7]).prop_flat_map(phi_poly),
    );
    runner()
        .run(&strat, |((a, t), exact, poly)| {
            let s = if exact { a } else { a.truncate(t) };
            let js = s.to_json();
            let back = IntSeries::from_json(&js).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.to_json(), js);
            let pj = poly.to_json();
            let pback = IntPhiPoly::from_json(&pj).unwrap();
            prop_assert_eq!(&pback, &poly);
            prop_assert_eq!(pback.to_json(), pj);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `(name, suite)` in a fixed order.
pub type Suite = fn() -> Result<(), String>;

pub fn all_suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("ring_axioms", ring_axioms),
        ("precision_soundness", precision_soundness),
        ("invert_round_trip", invert_round_trip),
        ("euler_factor_brute_force", euler_factor_brute_force),
        ("u_p_linearity", u_p_linearity),
        (
            "decompose_evaluate_round_trip",
            decompose_evaluate_round_trip,
        ),
        ("p_contains_soundness", p_contains_soundness),
        ("r_product_lemma", r_product_lemma),
        ("json_round_trips", json_round_trips),
    ]
}
