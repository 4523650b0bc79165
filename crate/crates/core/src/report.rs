//! Serializable descriptors shared by reports: ideals, witnesses, and
//! verification results. Values always serialize as exact strings.

use serde::Serialize;

use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RingTag {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    Principal,
    Threshold,
}

/// Ideal of a valuation ring, described by the valuation of a generator
/// (principal) or a cutoff (threshold). Membership is a Value comparison.
#[derive(Clone, Debug, Serialize)]
pub struct IdealDesc {
    pub ring: RingTag,
    pub kind: IdealKind,
    pub gen_val: Value,
    pub witnesses: Vec<Witness>,
}

impl IdealDesc {
    pub fn principal(ring: RingTag, gen_val: Value) -> Self {
        IdealDesc {
            ring,
            kind: IdealKind::Principal,
            gen_val,
            witnesses: Vec::new(),
        }
    }

    pub fn threshold(ring: RingTag, cutoff: Value) -> Self {
        IdealDesc {
            ring,
            kind: IdealKind::Threshold,
            gen_val: cutoff,
            witnesses: Vec::new(),
        }
    }

    pub fn with_witness(mut self, label: &str, element: String, value: Value) -> Self {
        self.witnesses.push(Witness {
            label: label.to_string(),
            element,
            value,
        });
        self
    }

    /// x in the ideal iff v(x) >= gen_val.
    pub fn contains(&self, v: &Value) -> bool {
        *v >= self.gen_val
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub label: String,
    pub element: String,
    pub value: Value,
}

/// Outcome of one theorem verification run. Pass iff `failures` is empty.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationResult {
    pub theorem: String,
    pub pass: bool,
    pub samples: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_attained: Option<Value>,
    pub witnesses: Vec<Witness>,
    pub failures: Vec<String>,
    /// Set when a comparison needed the modulo-threshold escape; the result
    /// still passes but deserves attention on defectless instances.
    pub flagged: bool,
}

impl VerificationResult {
    pub fn new(theorem: &str, samples: u32, seed: u64) -> Self {
        VerificationResult {
            theorem: theorem.to_string(),
            pass: true,
            samples,
            seed,
            min_attained: None,
            witnesses: Vec::new(),
            failures: Vec::new(),
            flagged: false,
        }
    }

    pub fn witness(&mut self, label: &str, element: String, value: Value) {
        self.witnesses.push(Witness {
            label: label.to_string(),
            element,
            value,
        });
    }

    pub fn fail(&mut self, msg: String) {
        self.failures.push(msg);
        self.pass = false;
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }
}
