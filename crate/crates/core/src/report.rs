use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::bounds::{DEFAULT_C1_PRIME, DEFAULT_C3};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Machine-readable wrapper around every command's result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    /// the ineffective constants the results are conditional on
    pub parameters: BTreeMap<String, Value>,
    pub version: String,
}

/// Values of the ineffective constants in force for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameters {
    pub c3: f64,
    pub c1_prime: f64,
}

impl Default for Parameters {
    fn default() -> Self {
        Self { c3: DEFAULT_C3, c1_prime: DEFAULT_C1_PRIME }
    }
}

impl ReportEnvelope {
    pub fn new(command: &str, inputs: BTreeMap<String, Value>, results: Value, params: Parameters) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("C1_prime".to_string(), Value::from(params.c1_prime));
        parameters.insert("C3".to_string(), Value::from(params.c3));
        Self { command: command.to_string(), inputs, results, parameters, version: VERSION.to_string() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[allow(clippy::ptr_arg)]
pub fn ser_display_vec<T: Display, S: Serializer>(v: &Vec<T>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}
