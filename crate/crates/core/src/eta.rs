//! The level-p Hauptmoduln φ^(p) = (η(pz)/η(z))^{24/(p−1)}, their inverses
//! ψ^(p), and Ramanujan's Δ.
//!
//! The q^{1/24} prefactors of η cancel into a single integer shift, so every
//! series here is assembled from `q^k · ∏(1 − q^{pn})^a / ∏(1 − q^n)^b`.
//! Multiplying or dividing by an Euler product touches only the pentagonal
//! exponents, so φ^m to precision N costs O(m · e · N^{3/2}) additions and
//! no big-integer products at all.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{div_euler_in_place, mul_euler_in_place, QSeries};

pub const SUPPORTED_PRIMES: [u32; 5] = [2, 3, 5, 7, 13];

/// A genus-zero prime together with the eta exponent `e = 24/(p − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HauptmodulSpec {
    p: u32,
    e: u32,
}

impl HauptmodulSpec {
    pub fn new(p: u32) -> Result<Self> {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(HauptmodulSpec { p, e: 24 / (p - 1) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// `12/(p − 1)`, the exponent in φ(−1/pz) = p^{−12/(p−1)} ψ(z).
    pub fn fricke_exponent(&self) -> u32 {
        12 / (self.p - 1)
    }
}

/// Dense window for `q^start · (∏(1 − q^{pn}) / ∏(1 − q^n))^{e·reps}`.
fn apply_eta_ratio<T: Scalar>(window: &mut [T], spec: HauptmodulSpec, reps: u32) {
    for _ in 0..spec.e * reps {
        mul_euler_in_place(window, spec.p as i64);
        div_euler_in_place(window, 1);
    }
}

/// φ^(p) + O(q^out_prec).
pub fn phi_series<T: Scalar>(p: u32, out_prec: i64) -> Result<QSeries<T>> {
    phi_power(p, 1, out_prec)
}

/// (φ^(p))^m + O(q^out_prec), built directly from the eta product.
pub fn phi_power<T: Scalar>(p: u32, m: u32, out_prec: i64) -> Result<QSeries<T>> {
    let spec = HauptmodulSpec::new(p)?;
    let start = m as i64;
    let len = (out_prec - start).max(0) as usize;
    let mut w = vec![T::zero(); len];
    if let Some(first) = w.first_mut() {
        *first = T::one();
    }
    apply_eta_ratio(&mut w, spec, m);
    Ok(QSeries::from_dense(start, w, out_prec))
}

/// ψ^(p) = 1/φ^(p) + O(q^out_prec).
pub fn psi_series<T: Scalar>(p: u32, out_prec: i64) -> Result<QSeries<T>> {
    phi_series::<T>(p, out_prec + 2)?.invert(out_prec)
}

/// Successive powers φ, φ², φ³, … all to the same precision.
///
/// Each step multiplies the previous power by φ through `e` Euler
/// multiplications and divisions, so the whole run costs what a single
/// from-scratch φ^m would.
pub struct PhiPowers<T> {
    spec: HauptmodulSpec,
    prec: i64,
    exponent: u32,
    current: Vec<T>,
}

impl<T: Scalar> PhiPowers<T> {
    pub fn new(p: u32, prec: i64) -> Result<Self> {
        Ok(PhiPowers {
            spec: HauptmodulSpec::new(p)?,
            prec,
            exponent: 0,
            current: Vec::new(),
        })
    }
}

impl<T: Scalar> Iterator for PhiPowers<T> {
    /// `(m, φ^m)`.
    type Item = (u32, QSeries<T>);

    fn next(&mut self) -> Option<Self::Item> {
        let m = self.exponent + 1;
        let len = (self.prec - m as i64).max(0) as usize;
        if self.exponent == 0 {
            self.current = vec![T::zero(); len];
            if let Some(first) = self.current.first_mut() {
                *first = T::one();
            }
        } else {
            // shift by q: the window now starts one exponent higher
            self.current.truncate(len);
        }
        apply_eta_ratio(&mut self.current, self.spec, 1);
        self.exponent = m;
        Some((
            m,
            QSeries::from_dense(m as i64, self.current.clone(), self.prec),
        ))
    }
}

/// Δ = q∏(1 − q^n)^24 + O(q^out_prec).
pub fn delta_series<T: Scalar>(out_prec: i64) -> QSeries<T> {
    let len = (out_prec - 1).max(0) as usize;
    let mut w = vec![T::zero(); len];
    if let Some(first) = w.first_mut() {
        *first = T::one();
    }
    for _ in 0..24 {
        mul_euler_in_place(&mut w, 1);
    }
    QSeries::from_dense(1, w, out_prec)
}

/// Ramanujan's τ(1), …, τ(n_max).
pub fn tau<T: Scalar>(n_max: u32) -> Vec<T> {
    let delta = delta_series::<T>(n_max as i64 + 1);
    (1..=n_max as i64)
        .map(|n| delta.coefficient(n).expect("within precision"))
        .collect()
}
