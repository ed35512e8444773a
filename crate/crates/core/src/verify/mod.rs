//! Claim-by-claim verification drivers.
//!
//! Each driver sweeps a parameter range, performs every hard assertion of
//! its claim exactly, and returns a [`VerificationReport`]. Work items are
//! independent and may run on the rayon pool; results are merged in sorted
//! key order, so reports do not depend on the number of threads.

mod report;

pub use report::{inputs, ClaimId, FailureRecord, Inputs, Observation, VerificationReport};

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::digits::{
    c_m, check_gamma_prime, delta, digit_residue_counts, f_iter, gamma, lehner_bound,
    lehner_bound_regrouped,
};
use crate::error::{Error, Result};
use crate::eta::{phi_series, tau, HauptmodulSpec, PhiPowers};
use crate::hecke::u_p_iter;
use crate::phipoly::{decompose, decompose_budget, top_degree, PSetSpec, PhiPoly, PhiPowerCache};
use crate::scalar::ExactInteger;

type Poly = PhiPoly<BigInt>;
type Cache = PhiPowerCache<BigInt>;

/// Decompositions of `U_p^α φ^m` keyed by `(m, α)`.
pub type Decompositions = BTreeMap<(u64, u32), Result<Poly>>;

/// Decomposes `U_p^α φ^m` for `1 <= m <= m_max`, `1 <= α <= alpha_max`.
///
/// φ^m is computed once per m at the largest budget of the sweep; each
/// `U_p^α φ^m` is cut back to exactly the precision its decomposition needs
/// before being handed to the (parallel) decomposition step.
pub fn u_power_decompositions(
    p: u32,
    m_max: u64,
    alpha_max: u32,
    guard: u32,
    cache: &Cache,
) -> Result<Decompositions> {
    HauptmodulSpec::new(p)?;
    if m_max == 0 || alpha_max == 0 {
        return Ok(BTreeMap::new());
    }
    let prec = decompose_budget(p, m_max, alpha_max, guard);
    let table_prec = top_degree(p, m_max, alpha_max) as i64 + guard as i64 + 1;
    cache.get(p, table_prec)?;

    let mut work = Vec::new();
    for (m, phi_m) in PhiPowers::<BigInt>::new(p, prec)?.take(m_max as usize) {
        let m = m as u64;
        for alpha in 1..=alpha_max {
            let needed = top_degree(p, m, alpha) as i64 + guard as i64 + 1;
            let u = u_p_iter(&phi_m, p, alpha);
            if u.prec() < needed {
                return Err(Error::InsufficientPrecision {
                    needed,
                    available: u.prec(),
                });
            }
            work.push((m, alpha, u.truncate(needed)));
        }
    }
    Ok(work
        .into_par_iter()
        .map(|(m, alpha, u)| {
            (
                (m, alpha),
                decompose(&u, p, top_degree(p, m, alpha), guard, cache),
            )
        })
        .collect())
}

fn ceil_div(m: u64, p: u32) -> u64 {
    m.div_ceil(p as u64)
}

fn big_pow(p: u32, k: u32) -> BigInt {
    BigInt::int_pow(p, k)
}

fn push_violations(
    rep: &mut VerificationReport,
    base: &Inputs,
    poly: &Poly,
    spec: &PSetSpec,
) -> Result<()> {
    for v in poly.p_set_violations(spec)? {
        let mut ins = base.clone();
        ins.insert("j".into(), v.degree as i64);
        let detail = match v.required {
            None => "nonzero coefficient below the lowest allowed degree",
            Some(_) => "coefficient valuation below the required bound",
        };
        rep.fail(
            ins,
            Some(v.observed as i64),
            v.required.map(|r| r as i64),
            detail,
        );
    }
    Ok(())
}

/// Every coefficient `a(m, n)` with `n = p^α n′`, `p ∤ n′`, `1 <= α <= alpha_max`
/// has `ν_p >= γ_p(m, α)`.
pub fn verify_theorem1(
    p: u32,
    m_max: u64,
    alpha_max: u32,
    n_max: u64,
) -> Result<VerificationReport> {
    check_gamma_prime(p)?;
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::Theorem1)
        .param("p", p)
        .param("m_max", m_max)
        .param("alpha_max", alpha_max)
        .param("n_max", n_max);
    let prec = n_max as i64 + 1;
    for (m, phi_m) in PhiPowers::<BigInt>::new(p, prec)?.take(m_max as usize) {
        let m = m as u64;
        if phi_m.prec() < prec {
            return Err(Error::InsufficientPrecision {
                needed: prec,
                available: phi_m.prec(),
            });
        }
        let required: Vec<u32> = (0..=alpha_max)
            .map(|a| gamma(p, m, a))
            .collect::<Result<_>>()?;
        for (n, c) in phi_m.terms() {
            let alpha = n.valuation(p).unwrap_or(0);
            if alpha == 0 || alpha > alpha_max {
                continue;
            }
            let need = required[alpha as usize];
            if need == 0 {
                continue;
            }
            rep.checks += 1;
            let v = c.valuation(p).expect("stored coefficients are nonzero");
            if v < need {
                rep.fail(
                    inputs([
                        ("p", p as i64),
                        ("m", m as i64),
                        ("n", n),
                        ("alpha", alpha as i64),
                    ]),
                    Some(v as i64),
                    Some(need as i64),
                    "coefficient not divisible by p^gamma",
                );
            }
        }
        // zero coefficients at n = p^α n′ satisfy every bound; count them too
        for n in (1..=n_max).filter(|n| {
            let a = (*n as i64).valuation(p).unwrap_or(0);
            a >= 1 && a <= alpha_max && required[a as usize] > 0
        }) {
            if phi_m.coeff_ref(n as i64).is_none() {
                rep.checks += 1;
            }
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

/// `U_p^α φ^m ∈ P^(p)(f^α(m), γ_p(m, α))`.
pub fn verify_theorem2(
    p: u32,
    m_max: u64,
    alpha_max: u32,
    guard: u32,
    cache: &Cache,
) -> Result<VerificationReport> {
    check_gamma_prime(p)?;
    if alpha_max == 0 {
        return Err(Error::InvalidArgument(
            "alpha_max must be at least 1".into(),
        ));
    }
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::Theorem2)
        .param("p", p)
        .param("m_max", m_max)
        .param("alpha_max", alpha_max)
        .param("guard", guard)
        .param("prec_budget", decompose_budget(p, m_max, alpha_max, guard));
    for ((m, alpha), res) in u_power_decompositions(p, m_max, alpha_max, guard, cache)? {
        rep.checks += 1;
        let base = inputs([("p", p as i64), ("m", m as i64), ("alpha", alpha as i64)]);
        match res {
            Err(e) => rep.fail(base, None, None, format!("decomposition failed: {e}")),
            Ok(poly) => {
                let spec = PSetSpec::new(p, f_iter(p, m, alpha), gamma(p, m, alpha)? as u64)?;
                push_violations(&mut rep, &base, &poly, &spec)?;
            }
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

/// `p^{δ_p(j − ⌈m/p⌉) + c_m} | d(m, j)` for every coefficient of `U_p φ^m`.
pub fn verify_alpha1(p: u32, m_max: u64, guard: u32, cache: &Cache) -> Result<VerificationReport> {
    check_gamma_prime(p)?;
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::Alpha1)
        .param("p", p)
        .param("m_max", m_max)
        .param("guard", guard);
    for ((m, _), res) in u_power_decompositions(p, m_max, 1, guard, cache)? {
        let base = inputs([("p", p as i64), ("m", m as i64)]);
        match res {
            Err(e) => {
                rep.checks += 1;
                rep.fail(base, None, None, format!("decomposition failed: {e}"));
            }
            Ok(poly) => {
                rep.checks += poly.terms().count() as u64;
                let spec = PSetSpec::new(p, ceil_div(m, p), c_m(p, m)? as u64)?;
                push_violations(&mut rep, &base, &poly, &spec)?;
            }
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

/// `U_p φ^m` is an integer polynomial in φ of degree exactly `pm` whose
/// lowest degree is at least `⌈m/p⌉`.
pub fn verify_lemma_poly(
    p: u32,
    m_max: u64,
    guard: u32,
    cache: &Cache,
) -> Result<VerificationReport> {
    HauptmodulSpec::new(p)?;
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::LemmaPoly)
        .param("p", p)
        .param("m_max", m_max)
        .param("guard", guard);
    for ((m, _), res) in u_power_decompositions(p, m_max, 1, guard, cache)? {
        let base = inputs([("p", p as i64), ("m", m as i64)]);
        rep.checks += 3;
        let poly = match res {
            Err(e) => {
                rep.fail(base, None, None, format!("nonzero residual: {e}"));
                continue;
            }
            Ok(poly) => poly,
        };
        let top = p as u64 * m;
        let ceiling = ceil_div(m, p);
        match poly.degree() {
            Some(d) if d as u64 == top => {}
            d => rep.fail(
                base.clone(),
                d.map(|d| d as i64),
                Some(top as i64),
                "top degree is not p*m",
            ),
        }
        match poly.lowest_degree() {
            Some(l) if l as u64 >= ceiling => {
                if l as u64 > ceiling {
                    rep.tally("lowest_degree_above_ceiling", 1);
                    rep.observe(
                        base,
                        format!("lowest degree {l} exceeds ceil(m/p) = {ceiling}"),
                    );
                }
            }
            l => rep.fail(
                base,
                l.map(|l| l as i64),
                Some(ceiling as i64),
                "lowest degree below ceil(m/p)",
            ),
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

/// Recovered base data for the power-sum recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonData {
    /// `b_1, …, b_p` with `U_p φ = p Σ b_j φ^j`.
    pub b: Vec<BigInt>,
    /// `g_1, …, g_p`.
    pub g: Vec<Poly>,
    /// `S_1, …, S_{m_max}` from the recursion.
    pub s: Vec<Poly>,
}

/// Runs the Newton recursion for the power sums `S_ℓ` of the p roots
/// `p^{12/(p−1)} φ((z + ℓ)/p)`, entirely in φ-polynomial arithmetic.
pub fn newton_power_sums(p: u32, m_max: u64, guard: u32, cache: &Cache) -> Result<NewtonData> {
    let spec = HauptmodulSpec::new(p)?;
    let u1 = decompose(
        &u_p_iter(
            &phi_series::<BigInt>(p, decompose_budget(p, 1, 1, guard))?,
            p,
            1,
        ),
        p,
        p,
        guard,
        cache,
    )?;
    let p_big = BigInt::from(p);
    let mut b = Vec::with_capacity(p as usize);
    for j in 1..=p {
        let d = u1.coeff(j).cloned().unwrap_or_else(BigInt::zero);
        let (q, r) = d.div_rem(&p_big);
        if !r.is_zero() {
            return Err(Error::Malformed(format!(
                "coefficient of φ^{j} in U_p φ is not divisible by p"
            )));
        }
        b.push(q);
    }
    let scale = big_pow(p, spec.fricke_exponent() + 2);
    let g: Vec<Poly> = (1..=p)
        .map(|j| {
            let sum = Poly::from_terms(p, (j..=p).map(|l| (l - j + 1, b[l as usize - 1].clone())))?;
            let signed = if j % 2 == 1 {
                scale.clone()
            } else {
                -scale.clone()
            };
            Ok(sum.scale(&signed))
        })
        .collect::<Result<_>>()?;

    let mut s: Vec<Poly> = Vec::with_capacity(m_max as usize);
    for l in 1..=m_max as usize {
        let mut acc = Poly::zero(p);
        for i in 1..=l.saturating_sub(1).min(p as usize) {
            let term = g[i - 1].mul(&s[l - i - 1])?;
            acc = if i % 2 == 1 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        if l <= p as usize {
            let mut term = g[l - 1].scale(&BigInt::from(l));
            if l % 2 == 0 {
                term = term.neg();
            }
            acc = acc.add(&term)?;
        }
        s.push(acc);
    }
    Ok(NewtonData { b, g, s })
}

/// Exponent `6m + 5 − 4⌈m/3⌉ + c_m` of the power of 3 dividing `S_m`.
pub fn s_m_exponent(m: u64) -> u32 {
    let c = c_m(3, m).expect("3 is a gamma prime");
    (6 * m + 5 - 4 * ceil_div(m, 3) + c as u64) as u32
}

/// `S_m = p^{1 + 12m/(p−1)} U_p φ^m` for all `m <= m_max`; for `p = 3` also
/// `S_m = 3^{6m + 5 − 4⌈m/3⌉ + c_m} r` with `r ∈ R^(3)`.
pub fn verify_newton(p: u32, m_max: u64, guard: u32, cache: &Cache) -> Result<VerificationReport> {
    check_gamma_prime(p)?;
    if m_max < p as u64 {
        return Err(Error::InvalidArgument(format!(
            "m_max must be at least p = {p}"
        )));
    }
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::Newton)
        .param("p", p)
        .param("m_max", m_max)
        .param("guard", guard);
    let data = newton_power_sums(p, m_max, guard, cache)?;
    let fricke = HauptmodulSpec::new(p)?.fricke_exponent();
    let decs = u_power_decompositions(p, m_max, 1, guard, cache)?;
    for m in 1..=m_max {
        let base = inputs([("p", p as i64), ("m", m as i64)]);
        let s_m = &data.s[m as usize - 1];
        rep.checks += 1;
        match &decs[&(m, 1)] {
            Err(e) => rep.fail(
                base.clone(),
                None,
                None,
                format!("decomposition failed: {e}"),
            ),
            Ok(d) => {
                let expected = d.scale(&big_pow(p, 1 + fricke * m as u32));
                if let Some(j) = first_difference(s_m, &expected) {
                    let mut ins = base.clone();
                    ins.insert("j".into(), j as i64);
                    rep.fail(ins, None, None, "recursion and direct U_p disagree");
                }
            }
        }
        if let Some(v) = s_m.content_valuation() {
            rep.observe(base.clone(), format!("content valuation of S_m: {v}"));
        }
        if p == 3 {
            rep.checks += 1;
            let k = s_m_exponent(m);
            match s_m.div_p_power(k) {
                None => rep.fail(
                    base,
                    s_m.content_valuation().map(|v| v as i64),
                    Some(k as i64),
                    "S_m not divisible by the required power of 3",
                ),
                Some(r) => {
                    if !r.in_r()? {
                        rep.fail(
                            base,
                            Some(k as i64),
                            Some(k as i64),
                            "cofactor of S_m not in R^(3)",
                        );
                    }
                }
            }
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

fn first_difference(a: &Poly, b: &Poly) -> Option<u32> {
    let degrees: BTreeSet<u32> = a.terms().chain(b.terms()).map(|(j, _)| j).collect();
    degrees.into_iter().find(|&j| a.coeff(j) != b.coeff(j))
}

/// Which reading of Lehner's bound to compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LehnerForm {
    /// `4(j − 1) + α(2 − 4(1 − m))`
    Printed,
    /// `4(j − 1) + 2α + 4(1 − m)`
    Regrouped,
}

impl LehnerForm {
    pub fn bound(&self, m: u64, j: u64, alpha: u32) -> i64 {
        match self {
            LehnerForm::Printed => lehner_bound(m, j, alpha),
            LehnerForm::Regrouped => lehner_bound_regrouped(m, j, alpha),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LehnerForm::Printed => "printed",
            LehnerForm::Regrouped => "regrouped",
        }
    }
}

/// Observed `ν_3(d(m, j, α))` against Lehner's bound (clamped at 0) and the
/// P-set bound `max(0, 4(j − f^α(m)) + γ_3(m, α))`.
pub fn compare_lehner(
    m_max: u64,
    alpha_max: u32,
    form: LehnerForm,
    guard: u32,
    cache: &Cache,
) -> Result<VerificationReport> {
    let p = 3;
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::LehnerCompare)
        .param("p", p)
        .param("m_max", m_max)
        .param("alpha_max", alpha_max)
        .param("lehner_form", form.name())
        .param("guard", guard);
    rep.tally("strict_improvements", 0);
    let d = delta(p)? as i64;
    for ((m, alpha), res) in u_power_decompositions(p, m_max, alpha_max, guard, cache)? {
        let base = inputs([("m", m as i64), ("alpha", alpha as i64)]);
        let poly = match res {
            Err(e) => {
                rep.checks += 1;
                rep.fail(base, None, None, format!("decomposition failed: {e}"));
                continue;
            }
            Ok(poly) => poly,
        };
        let lowest = f_iter(p, m, alpha) as i64;
        let g = gamma(p, m, alpha)? as i64;
        for (j, v) in poly.val_profile() {
            rep.checks += 1;
            let mut ins = base.clone();
            ins.insert("j".into(), j as i64);
            let v = v as i64;
            let lehner = form.bound(m, j as u64, alpha).max(0);
            if v < lehner {
                rep.fail(
                    ins.clone(),
                    Some(v),
                    Some(lehner),
                    "valuation below Lehner's bound",
                );
            }
            if (j as i64) < lowest {
                rep.fail(
                    ins,
                    Some(v),
                    None,
                    "coefficient below the lowest allowed degree",
                );
                continue;
            }
            let pset = (d * (j as i64 - lowest) + g).max(0);
            if v < pset {
                rep.fail(ins, Some(v), Some(pset), "valuation below the P-set bound");
            }
            if pset > lehner {
                rep.tally("strict_improvements", 1);
            }
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

/// Digit/residue count equalities (with their two exceptions) for every
/// `m <= m_max`, `1 <= α <= alpha_max` with `p^α ∤ m`.
pub fn verify_binarygamma(p: u32, m_max: u64, alpha_max: u32) -> Result<VerificationReport> {
    check_gamma_prime(p)?;
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::Binarygamma)
        .param("p", p)
        .param("m_max", m_max)
        .param("alpha_max", alpha_max);
    for m in 1..=m_max {
        for alpha in 1..=alpha_max {
            let Ok(r) = digit_residue_counts(p, m, alpha) else {
                rep.tally("skipped_divisible", 1);
                continue;
            };
            rep.checks += 1;
            match r.rightmost_digit {
                1 => rep.tally("exception_rightmost_1", 1),
                2 => rep.tally("exception_rightmost_2", 1),
                _ => rep.tally("generic_rightmost", 1),
            }
            if !r.lemma_holds() {
                rep.fail(
                    inputs([("p", p as i64), ("m", m as i64), ("alpha", alpha as i64)]),
                    Some(r.res1_in_list as i64),
                    Some(r.zeros_above as i64),
                    format!("{r:?}"),
                );
            }
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

pub(crate) fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n.max(2)];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            for k in (i * i..n).step_by(i) {
                sieve[k] = false;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// For each prime `ℓ < prime_max`: `13 | a^(13)(1, ℓ)` iff `13 | τ(ℓ)`.
pub fn explore_p13_tau(prime_max: u64) -> Result<VerificationReport> {
    if prime_max < 2 {
        return Err(Error::InvalidArgument(
            "prime_max must be at least 2".into(),
        ));
    }
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::P13Tau).param("prime_max", prime_max);
    let phi = phi_series::<BigInt>(13, prime_max as i64)?;
    let taus = tau::<BigInt>(prime_max as u32);
    let thirteen = BigInt::from(13);
    for l in primes_below(prime_max) {
        rep.checks += 1;
        let a = phi.coefficient(l as i64)?;
        let t = &taus[l as usize - 1];
        let a_div = a.is_multiple_of(&thirteen);
        let t_div = t.is_multiple_of(&thirteen);
        if a_div {
            rep.tally("phi_coefficient_divisible", 1);
        }
        if t_div {
            rep.tally("tau_divisible", 1);
        }
        if a_div != t_div {
            rep.fail(
                inputs([("prime", l as i64)]),
                Some(a_div as i64),
                Some(t_div as i64),
                format!(
                    "a(1,{l}) mod 13 = {}, tau({l}) mod 13 = {}",
                    a.mod_floor(&thirteen),
                    t.mod_floor(&thirteen)
                ),
            );
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

/// Residue data of the φ-coefficients of `U_13 φ^m`, `m <= m_max`.
///
/// Hard: for `m ≢ 5 (mod 13)` some coefficient is a 13-adic unit.
/// Report-only: for `m ≡ 5`, how many coefficients are exactly divisible by 13.
pub fn explore_p13_residues(m_max: u64, guard: u32, cache: &Cache) -> Result<VerificationReport> {
    let p = 13;
    let t0 = Instant::now();
    let mut rep = VerificationReport::new(ClaimId::P13Residue)
        .param("m_max", m_max)
        .param("guard", guard);
    for ((m, _), res) in u_power_decompositions(p, m_max, 1, guard, cache)? {
        let base = inputs([("m", m as i64)]);
        let poly = match res {
            Err(e) => {
                rep.checks += 1;
                rep.fail(base, None, None, format!("decomposition failed: {e}"));
                continue;
            }
            Ok(poly) => poly,
        };
        let profile = poly.val_profile();
        let units: Vec<u32> = profile
            .iter()
            .filter(|(_, v)| *v == 0)
            .map(|(j, _)| *j)
            .collect();
        let exact_once: Vec<u32> = profile
            .iter()
            .filter(|(_, v)| *v == 1)
            .map(|(j, _)| *j)
            .collect();
        let residues: Vec<String> = poly
            .terms()
            .map(|(j, c)| format!("{j}:{}", c.mod_floor(&BigInt::from(p))))
            .collect();
        rep.observe(
            base.clone(),
            format!("residues mod 13 by degree [{}]", residues.join(" ")),
        );
        if m % 13 == 5 {
            rep.observe(
                base,
                format!(
                    "m = 5 mod 13: {} unit coefficients; {} coefficients exactly divisible by 13 at degrees {:?}",
                    units.len(),
                    exact_once.len(),
                    exact_once
                ),
            );
            if exact_once.len() == 2 {
                rep.tally("m5_exactly_two", 1);
            } else {
                rep.tally("m5_other_count", 1);
            }
        } else {
            rep.checks += 1;
            if units.is_empty() {
                rep.fail(
                    base,
                    profile.iter().map(|(_, v)| *v as i64).min(),
                    Some(0),
                    "no coefficient prime to 13",
                );
            }
        }
    }
    Ok(rep.finish(t0.elapsed()))
}

/// Both p = 13 explorations: the τ correlation below `prime_max` and the
/// residue data for `m <= 26`.
pub fn explore_p13(prime_max: u64, guard: u32, cache: &Cache) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        explore_p13_tau(prime_max)?,
        explore_p13_residues(26, guard, cache)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phipoly::DEFAULT_GUARD;

    #[test]
    fn primes() {
        assert_eq!(primes_below(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_below(1000).len(), 168);
        assert!(primes_below(2).is_empty());
    }

    #[test]
    fn small_sweeps_pass() {
        let cache = Cache::new();
        assert!(verify_theorem1(3, 5, 4, 200).unwrap().passed());
        assert!(verify_theorem2(5, 3, 1, DEFAULT_GUARD, &cache)
            .unwrap()
            .passed());
        assert!(verify_alpha1(7, 4, DEFAULT_GUARD, &cache).unwrap().passed());
        assert!(verify_lemma_poly(3, 6, DEFAULT_GUARD, &cache)
            .unwrap()
            .passed());
        assert!(verify_binarygamma(5, 100, 4).unwrap().passed());
    }

    #[test]
    fn newton_base_data_p3() {
        let cache = Cache::new();
        let data = newton_power_sums(3, 3, DEFAULT_GUARD, &cache).unwrap();
        assert_eq!(
            data.b,
            vec![BigInt::from(30), BigInt::from(4 * 729), BigInt::from(59049)]
        );
        let r = verify_newton(3, 6, DEFAULT_GUARD, &cache).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn argument_checks() {
        let cache = Cache::new();
        assert!(verify_theorem1(13, 1, 1, 10).is_err());
        assert!(verify_theorem2(3, 1, 0, DEFAULT_GUARD, &cache).is_err());
        assert!(verify_newton(5, 4, DEFAULT_GUARD, &cache).is_err());
        assert!(explore_p13_tau(1).is_err());
    }

    #[test]
    fn s_m_exponents() {
        assert_eq!(s_m_exponent(1), 9);
        assert_eq!(s_m_exponent(2), 14);
        assert_eq!(s_m_exponent(3), 19);
    }
}
