//! Base-p digit combinatorics behind the congruence exponents.

use serde::Serialize;

use crate::error::{Error, Result};

/// Primes for which the congruence exponent γ_p is defined.
pub const GAMMA_PRIMES: [u32; 3] = [3, 5, 7];

pub fn check_gamma_prime(p: u32) -> Result<()> {
    if GAMMA_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::GammaUndefined(p))
    }
}

/// Valuation slope δ_p of the sets R^(p) and P^(p)(ℓ, a).
pub fn delta(p: u32) -> Result<u32> {
    match p {
        3 => Ok(4),
        5 | 7 => Ok(1),
        _ => Err(Error::GammaUndefined(p)),
    }
}

/// The lowest `alpha` base-p digits of `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitProfile {
    pub p: u32,
    pub m: u64,
    pub alpha: u32,
    /// `a_1, …, a_alpha`, least significant first, zero padded.
    pub digits: Vec<u32>,
    /// 1-based index of the rightmost nonzero digit, or −1 if all are zero.
    pub i_prime: i32,
}

impl DigitProfile {
    pub fn new(p: u32, m: u64, alpha: u32) -> Self {
        let mut digits = Vec::with_capacity(alpha as usize);
        let mut rest = m;
        for _ in 0..alpha {
            digits.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        let i_prime = digits
            .iter()
            .position(|&d| d != 0)
            .map_or(-1, |i| i as i32 + 1);
        DigitProfile {
            p,
            m,
            alpha,
            digits,
            i_prime,
        }
    }

    /// `a_i` for `1 <= i <= alpha`.
    pub fn digit(&self, i: u32) -> u32 {
        self.digits[i as usize - 1]
    }

    pub fn rightmost_nonzero(&self) -> Option<u32> {
        (self.i_prime > 0).then(|| self.digit(self.i_prime as u32))
    }

    /// Digits `a_i` with `i′ < i <= alpha`.
    pub fn digits_above(&self) -> &[u32] {
        if self.i_prime < 0 {
            &[]
        } else {
            &self.digits[self.i_prime as usize..]
        }
    }

    fn count_above(&self, pred: impl Fn(u32) -> bool) -> u32 {
        self.digits_above().iter().filter(|&&d| pred(d)).count() as u32
    }
}

/// The congruence exponent γ_p(m, α).
pub fn gamma(p: u32, m: u64, alpha: u32) -> Result<u32> {
    check_gamma_prime(p)?;
    let prof = DigitProfile::new(p, m, alpha);
    let Some(lead) = prof.rightmost_nonzero() else {
        return Ok(0);
    };
    Ok(if p == 3 {
        3 - lead + 2 * prof.count_above(|d| d == 0) + prof.count_above(|d| d == 1)
    } else {
        u32::from(lead == 1 || lead == 2) + prof.count_above(|d| d <= 1)
    })
}

/// `ℓ ↦ ⌈ℓ/p⌉` applied `alpha` times.
pub fn f_iter(p: u32, m: u64, alpha: u32) -> u64 {
    (0..alpha).fold(m, |l, _| l.div_ceil(p as u64))
}

/// Offsets c_m^(p) in the α = 1 divisibility bound.
pub fn c_m(p: u32, m: u64) -> Result<u32> {
    check_gamma_prime(p)?;
    let r = m % p as u64;
    Ok(match (p, r) {
        (3, 1) => 2,
        (3, 2) => 1,
        (3, _) => 0,
        (_, 1 | 2) => 1,
        _ => 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueCounts {
    /// digits equal to 0 strictly above the rightmost nonzero one
    pub zeros_above: u32,
    pub ones_above: u32,
    /// entries ≡ 1 (mod p) among m, f(m), …, f^{α−1}(m)
    pub res1_in_list: u32,
    pub res2_in_list: u32,
    pub rightmost_digit: u32,
}

impl ResidueCounts {
    /// The two equalities relating digits to residues, with their
    /// exceptions when the rightmost nonzero digit is 1 or 2.
    pub fn lemma_holds(&self) -> bool {
        let extra1 = u32::from(self.rightmost_digit == 1);
        let extra2 = u32::from(self.rightmost_digit == 2);
        self.res1_in_list == self.zeros_above + extra1
            && self.res2_in_list == self.ones_above + extra2
    }
}

pub fn digit_residue_counts(p: u32, m: u64, alpha: u32) -> Result<ResidueCounts> {
    let prof = DigitProfile::new(p, m, alpha);
    let rightmost_digit = prof
        .rightmost_nonzero()
        .ok_or(Error::LemmaPrecondition { alpha })?;
    let mut res1 = 0;
    let mut res2 = 0;
    let mut l = m;
    for _ in 0..alpha {
        match l % p as u64 {
            1 => res1 += 1,
            2 => res2 += 1,
            _ => {}
        }
        l = l.div_ceil(p as u64);
    }
    Ok(ResidueCounts {
        zeros_above: prof.count_above(|d| d == 0),
        ones_above: prof.count_above(|d| d == 1),
        res1_in_list: res1,
        res2_in_list: res2,
        rightmost_digit,
    })
}

/// Lehner's lower bound for ν_3 of the φ-coefficients of U_3^α φ^m, in the
/// printed form `4(j − 1) + α(2 − 4(1 − m))`. May be negative.
pub fn lehner_bound(m: u64, j: u64, alpha: u32) -> i64 {
    4 * (j as i64 - 1) + alpha as i64 * (2 - 4 * (1 - m as i64))
}

/// The same bound read as `4(j − 1) + 2α + 4(1 − m)`, i.e. U_3 gaining 3²
/// on R^(3) applied to `3^{4(m−1)} φ^m ∈ R^(3)`.
pub fn lehner_bound_regrouped(m: u64, j: u64, alpha: u32) -> i64 {
    4 * (j as i64 - 1) + 2 * alpha as i64 + 4 * (1 - m as i64)
}
