use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimId {
    Theorem1,
    Theorem2,
    Alpha1,
    Newton,
    LemmaPoly,
    Binarygamma,
    LehnerCompare,
    P13Tau,
    P13Residue,
}

impl ClaimId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::Theorem1 => "THEOREM1",
            ClaimId::Theorem2 => "THEOREM2",
            ClaimId::Alpha1 => "ALPHA1",
            ClaimId::Newton => "NEWTON",
            ClaimId::LemmaPoly => "LEMMA_POLY",
            ClaimId::Binarygamma => "BINARYGAMMA",
            ClaimId::LehnerCompare => "LEHNER_COMPARE",
            ClaimId::P13Tau => "P13_TAU",
            ClaimId::P13Residue => "P13_RESIDUE",
        }
    }
}

/// Named integer inputs identifying one checked item, e.g. `{p, m, alpha, j}`.
pub type Inputs = BTreeMap<String, i64>;

pub fn inputs<const N: usize>(pairs: [(&str, i64); N]) -> Inputs {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// One failed hard assertion. `observed: None` means the quantity is absent
/// (a zero coefficient, or a failed computation described in `detail`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FailureRecord {
    pub inputs: Inputs,
    pub observed: Option<i64>,
    pub required: Option<i64>,
    pub detail: String,
}

/// Report-only data: never affects the pass flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Observation {
    pub inputs: Inputs,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim_id: ClaimId,
    pub params: BTreeMap<String, String>,
    pub checks: u64,
    pub failures: Vec<FailureRecord>,
    pub observations: Vec<Observation>,
    pub tallies: BTreeMap<String, u64>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
    pub pass: bool,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl VerificationReport {
    pub fn new(claim_id: ClaimId) -> Self {
        VerificationReport {
            claim_id,
            params: BTreeMap::new(),
            checks: 0,
            failures: Vec::new(),
            observations: Vec::new(),
            tallies: BTreeMap::new(),
            elapsed: Duration::ZERO,
            pass: true,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn fail(
        &mut self,
        inputs: Inputs,
        observed: Option<i64>,
        required: Option<i64>,
        detail: impl Into<String>,
    ) {
        self.failures.push(FailureRecord {
            inputs,
            observed,
            required,
            detail: detail.into(),
        });
    }

    pub fn observe(&mut self, inputs: Inputs, detail: impl Into<String>) {
        self.observations.push(Observation {
            inputs,
            detail: detail.into(),
        });
    }

    pub fn tally(&mut self, key: &str, by: u64) {
        *self.tallies.entry(key.to_string()).or_insert(0) += by;
    }

    /// Sorts records and fixes the pass flag; every driver ends with this.
    pub fn finish(mut self, elapsed: Duration) -> Self {
        self.failures.sort();
        self.observations.sort();
        self.pass = self.failures.is_empty();
        self.elapsed = elapsed;
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(
            out,
            "{:<16} {:<4}  checks={:<9} failures={:<6} {:>8} ms  {}",
            self.claim_id.as_str(),
            status,
            self.checks,
            self.failures.len(),
            self.elapsed.as_millis(),
            params.join(" ")
        );
        for (k, v) in &self.tallies {
            let _ = writeln!(out, "    tally  {k:<28} {v}");
        }
        if !self.failures.is_empty() {
            let _ = writeln!(
                out,
                "    {:<36} {:>9} {:>9}  detail",
                "inputs", "observed", "required"
            );
        }
        for f in &self.failures {
            let _ = writeln!(
                out,
                "    {:<36} {:>9} {:>9}  {}",
                fmt_inputs(&f.inputs),
                f.observed.map_or("-".to_string(), |v| v.to_string()),
                f.required.map_or("-".to_string(), |v| v.to_string()),
                f.detail
            );
        }
        for o in &self.observations {
            let _ = writeln!(out, "    note   {:<36} {}", fmt_inputs(&o.inputs), o.detail);
        }
        out
    }
}

fn fmt_inputs(i: &Inputs) -> String {
    i.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}
