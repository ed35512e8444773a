//! Polynomials in φ^(p) without constant term, decomposition of q-series
//! into such polynomials, and the valuation-pattern sets R^(p), P^(p)(ℓ, a).

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digits::delta;
use crate::error::{Error, Result};
use crate::eta::{HauptmodulSpec, PhiPowers};
use crate::hecke::u_p_iter;
use crate::scalar::{ExactInteger, Scalar};
use crate::series::QSeries;

/// Extra exponents checked past the top degree before a residual counts as zero.
pub const DEFAULT_GUARD: u32 = 8;

/// `Σ_{j≥1} d_j (φ^(p))^j` with integer (or general ring) coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiPoly<T> {
    p: u32,
    coeffs: BTreeMap<u32, T>,
}

impl<T: Scalar> PhiPoly<T> {
    pub fn zero(p: u32) -> Self {
        PhiPoly {
            p,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums repeated degrees and drops zeros. A nonzero degree-0 term is
    /// rejected.
    pub fn from_terms<I>(p: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, T)>,
    {
        let mut out = Self::zero(p);
        for (j, c) in terms {
            out.add_term(j, &c);
        }
        if out.coeffs.contains_key(&0) {
            return Err(Error::ConstantTerm);
        }
        Ok(out)
    }

    pub fn monomial(p: u32, degree: u32, c: T) -> Result<Self> {
        Self::from_terms(p, [(degree, c)])
    }

    fn add_term(&mut self, j: u32, c: &T) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(j).or_insert_with(T::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&j);
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, j: u32) -> Option<&T> {
        self.coeffs.get(&j)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> + '_ {
        self.coeffs.iter().map(|(j, c)| (*j, c))
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let mut out = self.clone();
        for (j, c) in other.terms() {
            out.add_term(j, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PhiPoly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|(j, c)| (*j, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = Self::zero(self.p);
        for (j, c) in self.terms() {
            out.add_term(j, &c.mul_ref(k));
        }
        out
    }

    /// Product as polynomials in φ (degrees add).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let mut out = Self::zero(self.p);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                out.add_term(i + j, &a.mul_ref(b));
            }
        }
        Ok(out)
    }

    /// `Σ d_j φ^j + O(q^out_prec)`, reading powers from `table`.
    pub fn evaluate(&self, out_prec: i64, table: &PhiPowerTable<T>) -> Result<QSeries<T>> {
        if table.p != self.p {
            return Err(Error::PrimeMismatch(self.p, table.p));
        }
        if table.prec < out_prec {
            return Err(Error::InsufficientPrecision {
                needed: out_prec,
                available: table.prec,
            });
        }
        let len = (out_prec - 1).max(0) as usize;
        let mut acc = vec![T::zero(); len];
        for (j, d) in self.terms() {
            let Some(pw) = table.power(j) else {
                // φ^j = O(q^j) vanishes below the table precision
                continue;
            };
            let (start, cs) = pw.raw();
            for (k, c) in cs.iter().enumerate() {
                let idx = (start - 1) as usize + k;
                if idx >= len {
                    break;
                }
                acc[idx].mul_add_assign(d, c);
            }
        }
        Ok(QSeries::from_dense(1, acc, out_prec))
    }
}

impl<T: ExactInteger> PhiPoly<T> {
    /// `(degree, ν_p(d_degree))` for every stored degree, ascending.
    pub fn val_profile(&self) -> Vec<(u32, u32)> {
        self.terms()
            .map(|(j, c)| {
                (
                    j,
                    c.valuation(self.p)
                        .expect("stored coefficients are nonzero"),
                )
            })
            .collect()
    }

    /// Least ν_p over all coefficients; `None` for the zero polynomial.
    pub fn content_valuation(&self) -> Option<u32> {
        self.val_profile().into_iter().map(|(_, v)| v).min()
    }

    /// Exact quotient by `p^k`, if every coefficient is divisible.
    pub fn div_p_power(&self, k: u32) -> Option<Self> {
        let pk = T::int_pow(self.p, k);
        let mut coeffs = BTreeMap::new();
        for (j, c) in self.terms() {
            let (q, r) = c.div_rem(&pk);
            if !r.is_zero() {
                return None;
            }
            coeffs.insert(j, q);
        }
        Some(PhiPoly { p: self.p, coeffs })
    }

    /// Membership in R^(p): `ν_p(d_n) >= δ_p(n − 1)` for all `n >= 2`.
    pub fn in_r(&self) -> Result<bool> {
        let d = delta(self.p)?;
        Ok(self
            .val_profile()
            .into_iter()
            .all(|(n, v)| n < 2 || v as u64 >= d as u64 * (n as u64 - 1)))
    }

    /// Degrees violating membership in `spec`'s set.
    pub fn p_set_violations(&self, spec: &PSetSpec) -> Result<Vec<Violation>> {
        if spec.p != self.p {
            return Err(Error::PrimeMismatch(self.p, spec.p));
        }
        Ok(self
            .val_profile()
            .into_iter()
            .filter_map(|(k, v)| {
                let required = spec.required_valuation(k);
                match required {
                    None => Some(Violation {
                        degree: k,
                        observed: v,
                        required: None,
                    }),
                    Some(r) if (v as u64) < r => Some(Violation {
                        degree: k,
                        observed: v,
                        required: Some(r),
                    }),
                    Some(_) => None,
                }
            })
            .collect())
    }

    pub fn in_p(&self, spec: &PSetSpec) -> Result<bool> {
        Ok(self.p_set_violations(spec)?.is_empty())
    }
}

/// A coefficient that breaks membership in a P-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: u32,
    pub observed: u32,
    /// `None` when the degree lies below ℓ and the coefficient must vanish.
    pub required: Option<u64>,
}

/// The set P^(p)(ℓ, a): polynomials vanishing below degree ℓ whose degree-k
/// coefficient has `ν_p >= δ_p(k − ℓ) + a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PSetSpec {
    pub p: u32,
    pub ell: u64,
    pub a: u64,
    pub delta: u32,
}

impl PSetSpec {
    pub fn new(p: u32, ell: u64, a: u64) -> Result<Self> {
        Ok(PSetSpec {
            p,
            ell,
            a,
            delta: delta(p)?,
        })
    }

    /// Required valuation at degree `k`; `None` below ℓ (must be absent).
    pub fn required_valuation(&self, k: u32) -> Option<u64> {
        let k = k as u64;
        (k >= self.ell).then(|| self.delta as u64 * (k - self.ell) + self.a)
    }
}

/// Sufficient condition for `P(inner) ⊆ P(outer)`: `ℓ′ >= ℓ` and
/// `a′ >= a + δ_p(ℓ′ − ℓ)`.
pub fn p_contains(p: u32, outer: (u64, u64), inner: (u64, u64)) -> Result<bool> {
    let d = delta(p)? as u64;
    let (ell, a) = outer;
    let (ell_in, a_in) = inner;
    Ok(ell_in >= ell && a_in >= a + d * (ell_in - ell))
}

/// Precision of φ^m needed to decompose `U_p^α φ^m` with the given guard:
/// the result has degree `p^α m`, so `U_p^α φ^m` must be known through
/// `p^α m + guard`.
pub fn decompose_budget(p: u32, m: u64, alpha: u32, guard: u32) -> i64 {
    let pa = (p as i64).pow(alpha);
    pa * (pa * m as i64 + guard as i64 + 1)
}

pub fn top_degree(p: u32, m: u64, alpha: u32) -> u32 {
    ((p as u64).pow(alpha) * m) as u32
}

/// φ, φ², …, φ^{prec−1}, each to precision `prec`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiPowerTable<T> {
    p: u32,
    prec: i64,
    powers: Vec<QSeries<T>>,
}

impl<T: Scalar> PhiPowerTable<T> {
    pub fn build(p: u32, prec: i64) -> Result<Self> {
        let count = (prec - 1).max(0) as usize;
        let powers = PhiPowers::<T>::new(p, prec)?
            .take(count)
            .map(|(_, s)| s)
            .collect();
        Ok(PhiPowerTable { p, prec, powers })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// φ^j, or `None` when `j` is 0 or φ^j vanishes at this precision.
    pub fn power(&self, j: u32) -> Option<&QSeries<T>> {
        (j >= 1).then(|| self.powers.get(j as usize - 1)).flatten()
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson<S> {
    p: u32,
    prec: i64,
    powers: Vec<S>,
}

type TableMap<T> = BTreeMap<(u32, i64), Arc<PhiPowerTable<T>>>;

/// Shared φ-power tables keyed by `(p, prec)`.
///
/// A lookup is served by the smallest cached table for `p` whose precision
/// is at least the requested one; coefficients below the smaller precision
/// agree. Readers run concurrently, insertion takes the write lock.
/// With a persistence directory, tables are also read from and written to
/// `phi-powers-p{p}-prec{prec}.json` there.
#[derive(Debug)]
pub struct PhiPowerCache<T> {
    tables: RwLock<TableMap<T>>,
    persist_dir: Option<PathBuf>,
}

impl<T: ExactInteger> Default for PhiPowerCache<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: ExactInteger> PhiPowerCache<T> {
    pub fn new() -> Self {
        PhiPowerCache {
            tables: RwLock::new(BTreeMap::new()),
            persist_dir: None,
        }
    }

    pub fn with_persist_dir(dir: impl Into<PathBuf>) -> Self {
        PhiPowerCache {
            tables: RwLock::new(BTreeMap::new()),
            persist_dir: Some(dir.into()),
        }
    }

    fn lookup(&self, p: u32, prec: i64) -> Option<Arc<PhiPowerTable<T>>> {
        let tables = self.tables.read().expect("cache lock poisoned");
        tables
            .range((p, prec)..=(p, i64::MAX))
            .next()
            .map(|(_, t)| Arc::clone(t))
    }

    pub fn get(&self, p: u32, prec: i64) -> Result<Arc<PhiPowerTable<T>>> {
        HauptmodulSpec::new(p)?;
        if let Some(t) = self.lookup(p, prec) {
            return Ok(t);
        }
        let table = match self.load(p, prec) {
            Some(t) => t,
            None => {
                let t = PhiPowerTable::build(p, prec)?;
                self.store(&t);
                t
            }
        };
        let mut tables = self.tables.write().expect("cache lock poisoned");
        let entry = tables.entry((p, prec)).or_insert_with(|| Arc::new(table));
        Ok(Arc::clone(entry))
    }

    fn file_for(&self, p: u32, prec: i64) -> Option<PathBuf> {
        self.persist_dir
            .as_ref()
            .map(|d| d.join(format!("phi-powers-p{p}-prec{prec}.json")))
    }

    fn load(&self, p: u32, prec: i64) -> Option<PhiPowerTable<T>> {
        let text = fs::read_to_string(self.file_for(p, prec)?).ok()?;
        let parsed: TableJson<QSeries<T>> = serde_json::from_str(&text).ok()?;
        let ok =
            parsed.p == p
                && parsed.prec == prec
                && parsed.powers.len() == (prec - 1).max(0) as usize
                && parsed.powers.iter().enumerate().all(|(i, s)| {
                    s.prec() == prec && s.valuation().is_none_or(|v| v == i as i64 + 1)
                });
        ok.then_some(PhiPowerTable {
            p,
            prec,
            powers: parsed.powers,
        })
    }

    fn store(&self, table: &PhiPowerTable<T>) {
        let Some(path) = self.file_for(table.p, table.prec) else {
            return;
        };
        let json = TableJson {
            p: table.p,
            prec: table.prec,
            powers: table.powers.iter().collect::<Vec<_>>(),
        };
        // persistence is best effort; a failed write only costs a rebuild
        if let Ok(text) = serde_json::to_string(&json) {
            let _ = fs::create_dir_all(path.parent().unwrap_or(&path));
            let tmp = path.with_extension("json.tmp");
            if fs::write(&tmp, text).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
    }
}

/// Writes `s` as a φ-polynomial by greedy elimination from the lowest
/// exponent, checking that the residual vanishes through `max_deg + guard`.
pub fn decompose_with<T: Scalar>(
    s: &QSeries<T>,
    p: u32,
    max_deg: u32,
    guard: u32,
    table: &PhiPowerTable<T>,
) -> Result<PhiPoly<T>> {
    if table.p != p {
        return Err(Error::PrimeMismatch(p, table.p));
    }
    let last = max_deg as i64 + guard as i64;
    if s.prec() < last + 1 {
        return Err(Error::InsufficientPrecision {
            needed: last + 1,
            available: s.prec(),
        });
    }
    if table.prec < last + 1 {
        return Err(Error::InsufficientPrecision {
            needed: last + 1,
            available: table.prec,
        });
    }
    if let Some(v) = s.valuation() {
        if v < 1 {
            return Err(Error::NonPositiveValuation(v));
        }
    }
    let mut residual = s.window(0, last + 1);
    let mut out = PhiPoly::zero(p);
    for v in 1..=last as usize {
        if residual[v].is_zero() {
            continue;
        }
        if v > max_deg as usize {
            return Err(Error::NotPhiPolynomial {
                exponent: v as i64,
                max_deg,
            });
        }
        let d = residual[v].clone();
        let pw = table.power(v as u32).expect("table covers the window");
        let (start, cs) = pw.raw();
        let offset = start as usize;
        for (k, c) in cs.iter().enumerate() {
            let idx = offset + k;
            if idx > last as usize {
                break;
            }
            residual[idx].mul_sub_assign(&d, c);
        }
        out.coeffs.insert(v as u32, d);
    }
    Ok(out)
}

pub fn decompose<T: ExactInteger>(
    s: &QSeries<T>,
    p: u32,
    max_deg: u32,
    guard: u32,
    cache: &PhiPowerCache<T>,
) -> Result<PhiPoly<T>> {
    let needed = max_deg as i64 + guard as i64 + 1;
    if s.prec() < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            available: s.prec(),
        });
    }
    let table = cache.get(p, needed)?;
    decompose_with(s, p, max_deg, guard, &table)
}

/// `U_p^α φ^m` as a φ-polynomial, computing φ^m at the published budget.
pub fn u_power_polynomial<T: ExactInteger>(
    p: u32,
    m: u64,
    alpha: u32,
    guard: u32,
    cache: &PhiPowerCache<T>,
) -> Result<PhiPoly<T>> {
    let prec = decompose_budget(p, m, alpha, guard);
    let phi_m = crate::eta::phi_power::<T>(p, m as u32, prec)?;
    let u = u_p_iter(&phi_m, p, alpha);
    decompose(&u, p, top_degree(p, m, alpha), guard, cache)
}

/// Wire form: `{"p": int, "coeffs": [[degree, "decimal"], …]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    p: u32,
    coeffs: Vec<(u32, String)>,
}

impl<T: ExactInteger> PhiPoly<T> {
    fn to_wire(&self) -> PolyJson {
        PolyJson {
            p: self.p,
            coeffs: self.terms().map(|(j, c)| (j, c.to_string())).collect(),
        }
    }

    fn from_wire(w: PolyJson) -> Result<Self> {
        let mut last = None;
        let mut coeffs = BTreeMap::new();
        for (j, s) in w.coeffs {
            if last.is_some_and(|l| j <= l) {
                return Err(Error::Malformed(format!(
                    "degrees must be strictly ascending (at {j})"
                )));
            }
            if j == 0 {
                return Err(Error::ConstantTerm);
            }
            let c: T = s
                .parse()
                .map_err(|_| Error::Malformed(format!("bad integer {s:?}")))?;
            if c.is_zero() {
                return Err(Error::Malformed(format!("zero coefficient at degree {j}")));
            }
            last = Some(j);
            coeffs.insert(j, c);
        }
        Ok(PhiPoly { p: w.p, coeffs })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let w: PolyJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_wire(w)
    }
}

impl<T: ExactInteger> Serialize for PhiPoly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(s)
    }
}

impl<'de, T: ExactInteger> Deserialize<'de> for PhiPoly<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_wire(PolyJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
