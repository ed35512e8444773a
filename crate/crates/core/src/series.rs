//! Truncated q-series with explicit precision.
//!
//! A [`QSeries`] stands for `Σ c(n) q^n + O(q^prec)`: only exponents below
//! `prec` are known. Every operation recomputes the precision of its result
//! from the precisions and valuations of its inputs and never extends it.
//! `prec == EXACT` marks a series known to all orders (a Laurent polynomial).
//!
//! Storage is a dense window `[start, start + len)` trimmed so that the first
//! and last stored coefficients are nonzero. The zero series stores nothing.

use std::cmp::min;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{ExactInteger, Scalar};

/// Precision of a series known exactly to all orders.
pub const EXACT: i64 = i64::MAX;

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<T> {
    prec: i64,
    start: i64,
    coeffs: Vec<T>,
}

/// Nonzero exponents of Euler's pentagonal expansion
/// `∏(1 − q^n) = 1 + Σ_{k≥1} (−1)^k (q^{k(3k−1)/2} + q^{k(3k+1)/2})`
/// below `limit`, ascending, paired with their sign.
pub fn pentagonal_exponents(limit: i64) -> Vec<(i64, bool)> {
    let mut out = Vec::new();
    let mut k = 1i64;
    loop {
        let negative = k % 2 == 1;
        let g1 = k * (3 * k - 1) / 2;
        if g1 >= limit {
            break;
        }
        out.push((g1, negative));
        let g2 = k * (3 * k + 1) / 2;
        if g2 < limit {
            out.push((g2, negative));
        }
        k += 1;
    }
    out
}

/// In place: `window *= ∏(1 − q^{stride·n})`, where `window[k]` is the
/// coefficient of `q^{start+k}` and the window ends at the precision.
pub(crate) fn mul_euler_in_place<T: Scalar>(window: &mut [T], stride: i64) {
    let len = window.len() as i64;
    if len == 0 {
        return;
    }
    let pent = pentagonal_exponents((len - 1) / stride + 1);
    for k in (1..window.len()).rev() {
        let (lo, hi) = window.split_at_mut(k);
        let target = &mut hi[0];
        for &(g, negative) in &pent {
            let off = (g * stride) as usize;
            if off > k {
                break;
            }
            if negative {
                *target -= &lo[k - off];
            } else {
                *target += &lo[k - off];
            }
        }
    }
}

/// In place: `window /= ∏(1 − q^{stride·n})`.
pub(crate) fn div_euler_in_place<T: Scalar>(window: &mut [T], stride: i64) {
    let len = window.len() as i64;
    if len == 0 {
        return;
    }
    let pent = pentagonal_exponents((len - 1) / stride + 1);
    for k in 1..window.len() {
        let (lo, hi) = window.split_at_mut(k);
        let target = &mut hi[0];
        for &(g, negative) in &pent {
            let off = (g * stride) as usize;
            if off > k {
                break;
            }
            if negative {
                *target += &lo[k - off];
            } else {
                *target -= &lo[k - off];
            }
        }
    }
}

/// `prec + k`, keeping exact series exact.
fn offset_prec(prec: i64, k: i64) -> i64 {
    if prec == EXACT {
        EXACT
    } else {
        prec.saturating_add(k)
    }
}

impl<T: Scalar> QSeries<T> {
    pub fn zero(prec: i64) -> Self {
        QSeries {
            prec,
            start: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(prec: i64) -> Self {
        Self::monomial(T::one(), 0, prec)
    }

    /// `c·q^exp + O(q^prec)`.
    pub fn monomial(c: T, exp: i64, prec: i64) -> Self {
        Self::from_dense(exp, vec![c], prec)
    }

    /// Builds a series from a dense run of coefficients starting at `q^start`.
    /// Coefficients at exponents `>= prec` are dropped.
    pub fn from_dense(start: i64, mut coeffs: Vec<T>, prec: i64) -> Self {
        let room = prec.saturating_sub(start).max(0);
        if (coeffs.len() as i64) > room {
            coeffs.truncate(room as usize);
        }
        let mut s = QSeries {
            prec,
            start,
            coeffs,
        };
        s.normalize();
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs in any order.
    /// Repeated exponents are summed; exponents `>= prec` are dropped.
    pub fn from_terms<I>(terms: I, prec: i64) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
    {
        let terms: Vec<(i64, T)> = terms.into_iter().filter(|(e, _)| *e < prec).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(prec);
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut dense = vec![T::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            dense[(e - lo) as usize] += &c;
        }
        Self::from_dense(lo, dense, prec)
    }

    /// An exactly known Laurent polynomial.
    pub fn polynomial<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
    {
        Self::from_terms(terms, EXACT)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.start = 0;
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.start += k as i64;
                }
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least exponent with a nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.start)
    }

    /// Valuation used by the precision rules: a zero series is only known to
    /// vanish below its precision.
    pub fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// One past the largest stored exponent (`start` for the zero series).
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn leading_coefficient(&self) -> Option<&T> {
        self.coeffs.first()
    }

    /// The coefficient of `q^n`, which must lie below the precision.
    pub fn coefficient(&self, n: i64) -> Result<T> {
        if n >= self.prec {
            return Err(Error::BeyondPrecision { n, prec: self.prec });
        }
        Ok(self.coeff_ref(n).cloned().unwrap_or_else(T::zero))
    }

    /// Stored coefficient of `q^n`, `None` when it is zero (or unknown).
    pub fn coeff_ref(&self, n: i64) -> Option<&T> {
        if n < self.start {
            return None;
        }
        self.coeffs
            .get((n - self.start) as usize)
            .filter(|c| !c.is_zero())
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.start + k as i64, c))
    }

    /// Drops everything at or above `prec`; never raises the precision.
    pub fn truncate(&self, prec: i64) -> Self {
        let prec = min(prec, self.prec);
        Self::from_dense(self.start, self.coeffs.clone(), prec)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            prec: if self.is_exact() {
                EXACT
            } else {
                self.prec + k
            },
            start: if self.is_zero() { 0 } else { self.start + k },
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.mul_ref(c)).collect();
        Self::from_dense(self.start, coeffs, self.prec)
    }

    /// Dense coefficients for exponents `[from, to)`, zero-filled.
    pub(crate) fn window(&self, from: i64, to: i64) -> Vec<T> {
        (from..to)
            .map(|n| self.coeff_ref(n).cloned().unwrap_or_else(T::zero))
            .collect()
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let prec = min(self.prec, other.prec);
        if self.is_zero() && other.is_zero() {
            return Self::zero(prec);
        }
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => min(a, b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!(),
        };
        let hi = min(self.end().max(other.end()), prec);
        if hi <= lo {
            return Self::zero(prec);
        }
        let mut out = self.window(lo, hi);
        for (n, c) in other.terms() {
            if n >= hi {
                break;
            }
            let slot = &mut out[(n - lo) as usize];
            if negate_other {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_dense(lo, out, prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        QSeries {
            prec: self.prec,
            start: self.start,
            coeffs: self.coeffs.iter().cloned().map(|c| -c).collect(),
        }
    }

    /// Precision of a product: the first exponent at which an unknown
    /// coefficient of either factor can contribute.
    pub fn product_precision(&self, other: &Self) -> i64 {
        min(
            offset_prec(self.prec, other.effective_valuation()),
            offset_prec(other.prec, self.effective_valuation()),
        )
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.product_precision(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let start = self.start + other.start;
        let full = (self.coeffs.len() + other.coeffs.len() - 1) as i64;
        let len = min(full, prec.saturating_sub(start)).max(0) as usize;
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            let room = min(other.coeffs.len(), len - i);
            for (slot, b) in out[i..i + room].iter_mut().zip(&other.coeffs[..room]) {
                slot.mul_add_assign(a, b);
            }
        }
        Self::from_dense(start, out, prec)
    }

    /// `self^e` by repeated squaring.
    ///
    /// Precision follows the product rule at every step, which works out to
    /// `prec + (e − 1)·v` with `v` the (effective) valuation. For `e = 0` the
    /// same formula gives `prec − v`: the result is `1 + O(q^{prec − v})`,
    /// which is exactly what multiplying back by `self` can vouch for.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let prec = if self.is_exact() {
                EXACT
            } else {
                self.prec - self.effective_valuation()
            };
            return Self::one(prec);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Multiplicative inverse, requested to precision `out_prec`.
    ///
    /// The result precision is `min(out_prec, prec − 2v)`: the coefficient of
    /// `q^{−v+k}` in the inverse needs coefficients of `self` up to `q^{v+k}`.
    pub fn invert(&self, out_prec: i64) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::ZeroSeries);
        };
        let lead_inv = self.coeffs[0].unit_inverse().ok_or(Error::NotInvertible)?;
        let prec = if self.is_exact() {
            out_prec
        } else {
            min(out_prec, self.prec - 2 * v)
        };
        if prec == EXACT {
            return Err(Error::InvalidArgument(
                "inverse of an exact series needs a finite precision".into(),
            ));
        }
        let len = (prec + v).max(0) as usize;
        let a = &self.coeffs;
        let mut b: Vec<T> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                b.push(lead_inv.clone());
                continue;
            }
            let mut acc = T::zero();
            for i in 1..=min(k, a.len() - 1) {
                acc.mul_add_assign(&a[i], &b[k - i]);
            }
            b.push(-acc.mul_ref(&lead_inv));
        }
        Ok(Self::from_dense(-v, b, prec))
    }

    /// `∏_{n≥1}(1 − q^{stride·n}) + O(q^out_prec)`.
    pub fn euler_factor(stride: u32, out_prec: i64) -> Self {
        assert!(stride >= 1, "stride must be positive");
        let stride = stride as i64;
        let mut terms = vec![(0, T::one())];
        let limit = if out_prec <= 0 {
            0
        } else {
            (out_prec - 1) / stride + 1
        };
        for (g, negative) in pentagonal_exponents(limit) {
            let c = if negative { -T::one() } else { T::one() };
            terms.push((g * stride, c));
        }
        Self::from_terms(terms, out_prec)
    }

    fn finite_window(&self) -> Result<(i64, Vec<T>)> {
        if self.is_exact() {
            return Err(Error::InvalidArgument(
                "Euler products of exact series need a finite precision".into(),
            ));
        }
        let start = self.effective_valuation();
        Ok((start, self.window(start, self.prec)))
    }

    /// `self · ∏(1 − q^{stride·n})`, same precision as `self`.
    pub fn mul_euler(&self, stride: u32) -> Result<Self> {
        let (start, mut w) = self.finite_window()?;
        mul_euler_in_place(&mut w, stride as i64);
        Ok(Self::from_dense(start, w, self.prec))
    }

    /// `self / ∏(1 − q^{stride·n})`, same precision as `self`.
    pub fn div_euler(&self, stride: u32) -> Result<Self> {
        let (start, mut w) = self.finite_window()?;
        div_euler_in_place(&mut w, stride as i64);
        Ok(Self::from_dense(start, w, self.prec))
    }

    /// Dense stored coefficients; index `k` is the exponent `start + k`.
    pub(crate) fn raw(&self) -> (i64, &[T]) {
        (self.start, &self.coeffs)
    }
}

impl<T: Scalar> std::ops::Add for &QSeries<T> {
    type Output = QSeries<T>;
    fn add(self, rhs: Self) -> QSeries<T> {
        QSeries::add(self, rhs)
    }
}

impl<T: Scalar> std::ops::Sub for &QSeries<T> {
    type Output = QSeries<T>;
    fn sub(self, rhs: Self) -> QSeries<T> {
        QSeries::sub(self, rhs)
    }
}

impl<T: Scalar> std::ops::Mul for &QSeries<T> {
    type Output = QSeries<T>;
    fn mul(self, rhs: Self) -> QSeries<T> {
        QSeries::mul(self, rhs)
    }
}

impl<T: Scalar> std::ops::Neg for &QSeries<T> {
    type Output = QSeries<T>;
    fn neg(self) -> QSeries<T> {
        QSeries::neg(self)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for QSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{n}")?,
            }
        }
        if self.is_exact() {
            if first {
                write!(f, "0")?;
            }
            Ok(())
        } else {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(q^{})", self.prec)
        }
    }
}

/// Wire form: `{"prec": int, "terms": [[exponent, "decimal"], …]}`.
#[derive(Serialize, Deserialize)]
struct SeriesJson {
    prec: i64,
    terms: Vec<(i64, String)>,
}

impl<T: ExactInteger> QSeries<T> {
    fn to_wire(&self) -> SeriesJson {
        SeriesJson {
            prec: self.prec,
            terms: self.terms().map(|(n, c)| (n, c.to_string())).collect(),
        }
    }

    fn from_wire(w: SeriesJson) -> Result<Self> {
        let mut last: Option<i64> = None;
        let mut terms = Vec::with_capacity(w.terms.len());
        for (n, s) in w.terms {
            if last.is_some_and(|l| n <= l) {
                return Err(Error::Malformed(format!(
                    "exponents must be strictly ascending (at {n})"
                )));
            }
            if n >= w.prec {
                return Err(Error::Malformed(format!(
                    "exponent {n} is not below prec {}",
                    w.prec
                )));
            }
            let c: T = s
                .parse()
                .map_err(|_| Error::Malformed(format!("bad integer {s:?}")))?;
            if c.is_zero() {
                return Err(Error::Malformed(format!("zero coefficient at {n}")));
            }
            last = Some(n);
            terms.push((n, c));
        }
        Ok(Self::from_terms(terms, w.prec))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("series serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let w: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_wire(w)
    }
}

impl<T: ExactInteger> Serialize for QSeries<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de, T: ExactInteger> Deserialize<'de> for QSeries<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SeriesJson::deserialize(d)?;
        Self::from_wire(w).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type S = QSeries<i64>;

    #[test]
    fn exact_laurent_products_stay_exact() {
        let inv_q = S::polynomial([(-1, 1)]);
        assert_eq!(inv_q.mul(&S::one(EXACT)), inv_q);
        assert!(inv_q.mul(&inv_q).is_exact());
        assert_eq!(S::one(5).mul(&S::zero(EXACT)), S::zero(EXACT));
    }

    fn s(terms: &[(i64, i64)], prec: i64) -> S {
        S::from_terms(terms.iter().copied(), prec)
    }

    #[test]
    fn add_cancels_and_takes_min_precision() {
        let a = s(&[(1, 1), (2, 12)], 3);
        let b = s(&[(1, -1)], 3);
        assert_eq!(a.add(&b), s(&[(2, 12)], 3));
        assert_eq!(a.add(&S::zero(10)), a);

        let c = s(&[(-1, 1), (0, -12)], 5);
        let d = s(&[(0, 12)], 2);
        let sum = c.add(&d);
        assert_eq!(sum, s(&[(-1, 1)], 2));
        assert_eq!(sum.prec(), 2);
    }

    #[test]
    fn sub_to_zero_is_canonical() {
        let a = s(&[(3, 5), (4, 1)], 9);
        let z = a.sub(&a);
        assert!(z.is_zero());
        assert_eq!(z, S::zero(9));
        assert_eq!(z.effective_valuation(), 9);
    }

    #[test]
    fn mul_precision_rule() {
        let q = s(&[(1, 1)], 10);
        let q2 = q.mul(&q);
        assert_eq!(q2, s(&[(2, 1)], 11));

        let one_minus_q = S::polynomial([(0, 1), (1, -1)]);
        let geometric = S::from_dense(0, vec![1; 12], 12);
        let prod = one_minus_q.mul(&geometric);
        assert_eq!(prod, S::one(12));
    }

    #[test]
    fn pow_by_hand() {
        let f = S::polynomial([(1, 1), (2, 12)]);
        assert_eq!(f.pow(2), S::polynomial([(2, 1), (3, 24), (4, 144)]));
        assert_eq!(f.pow(0), S::one(EXACT));

        let g = s(&[(1, 1), (2, 12)], 6);
        assert_eq!(g.pow(0), S::one(5));
        assert_eq!(g.pow(3).prec(), 8);
        assert_eq!(g.pow(3), g.mul(&g).mul(&g));
    }

    #[test]
    fn invert_geometric_and_errors() {
        let one_minus_q = s(&[(0, 1), (1, -1)], 8);
        let inv = one_minus_q.invert(8).unwrap();
        assert_eq!(inv, S::from_dense(0, vec![1; 8], 8));

        let bad = S::polynomial([(0, 2), (1, 1)]);
        assert_eq!(bad.invert(5), Err(Error::NotInvertible));
        assert_eq!(S::zero(4).invert(4), Err(Error::ZeroSeries));

        let shifted = s(&[(2, -1), (3, 4), (5, 1)], 20);
        let inv = shifted.invert(100).unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        assert_eq!(inv.prec(), 16);
        let back = shifted.mul(&inv);
        assert_eq!(back, S::one(back.prec()));
    }

    #[test]
    fn euler_factor_small_cases() {
        let e1 = S::euler_factor(1, 8);
        assert_eq!(e1, s(&[(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)], 8));
        let e3 = S::euler_factor(3, 4);
        assert_eq!(e3, s(&[(0, 1), (3, -1)], 4));
        for stride in 1..5 {
            assert_eq!(S::euler_factor(stride, 30).coefficient(0).unwrap(), 1);
        }
    }

    #[test]
    fn euler_mul_div_in_place_match_products() {
        let f = s(&[(2, 3), (3, -1), (7, 5)], 40);
        for stride in [1u32, 2, 3, 7] {
            let e = S::euler_factor(stride, 60);
            assert_eq!(f.mul_euler(stride).unwrap(), f.mul(&e));
            let back = f.mul_euler(stride).unwrap().div_euler(stride).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn coefficient_beyond_precision() {
        let f = s(&[(1, 1)], 3);
        assert_eq!(f.coefficient(2), Ok(0));
        assert_eq!(
            f.coefficient(3),
            Err(Error::BeyondPrecision { n: 3, prec: 3 })
        );
    }

    #[test]
    fn json_schema() {
        let f = QSeries::<BigInt>::from_terms(
            [
                (-1, BigInt::from(1)),
                (0, BigInt::from(-12)),
                (4, BigInt::from(10).pow(30)),
            ],
            7,
        );
        let js = f.to_json();
        assert_eq!(
            js,
            r#"{"prec":7,"terms":[[-1,"1"],[0,"-12"],[4,"1000000000000000000000000000000"]]}"#
        );
        assert_eq!(QSeries::<BigInt>::from_json(&js).unwrap(), f);
        assert!(QSeries::<BigInt>::from_json(r#"{"prec":3,"terms":[[1,"2"],[0,"1"]]}"#).is_err());
        assert!(QSeries::<BigInt>::from_json(r#"{"prec":3,"terms":[[3,"2"]]}"#).is_err());
        assert!(QSeries::<BigInt>::from_json(r#"{"prec":3,"terms":[[1,"x"]]}"#).is_err());
    }

    #[test]
    fn generic_over_fields() {
        let f = QSeries::<f64>::polynomial([(0, 2.0), (1, 1.0)]);
        let inv = f.invert(6).unwrap();
        let back = f.mul(&inv);
        assert!((back.coefficient(0).unwrap() - 1.0).abs() < 1e-12);
        for n in 1..6 {
            assert!(back.coefficient(n).unwrap().abs() < 1e-12);
        }
    }
}
