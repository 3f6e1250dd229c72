//! JSON reports. Every report is one line of compact JSON with keys in a
//! fixed order and floats printed with 17 significant digits, so identical
//! runs give identical bytes.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::Error;

pub const SCHEMA_VERSION: &str = "typrank-report/1";

/// Compact JSON with `{:.16e}` floats.
#[derive(Debug, Clone, Copy, Default)]
pub struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser).expect("report types serialize");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub rank_tol: f64,
    pub opt_tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub threshold: f64,
}

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: &'static str,
    pub command: &'a str,
    pub status: &'static str,
    pub config: &'a Config,
    pub result: T,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Serialize)]
pub struct ErrorEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'a str,
    pub status: &'static str,
    pub error: ErrorBody,
}

pub fn success<T: Serialize>(command: &str, config: &Config, result: T) -> String {
    to_json(&Envelope { schema: SCHEMA_VERSION, command, status: "ok", config, result })
}

pub fn failure(command: &str, err: &Error) -> String {
    let error = ErrorBody { kind: err.kind(), message: err.to_string(), exit_code: err.exit_code() };
    to_json(&ErrorEnvelope { schema: SCHEMA_VERSION, command, status: "error", error })
}

/// Keys every successful `result` object of a command carries.
pub fn required_fields(command: &str) -> Option<&'static [&'static str]> {
    Some(match command {
        "classify" => {
            &["n", "families", "full_rank_typical", "gcr", "typical_set", "lower_bound", "upper_bound", "provenance"]
        }
        "certify" => {
            &["verdict", "ordering", "x0", "covers", "fixed_inertia", "disagreement", "near_threshold", "resamples"]
        }
        "complete" => &["method", "rank", "minimum", "residual", "completion"],
        "solve-entry" => &["unknown", "coefficients", "roots", "discriminant", "deficient_completable"],
        "esd" => &["esd", "inertia_1", "inertia_2", "union_min_rank"],
        "sample" => &["samples", "counts", "histogram", "declared", "threshold", "seed"],
        "census" => &["samples", "certified", "counts", "histogram", "bicolorings", "bicoloring_sizes", "seed"],
        _ => return None,
    })
}

/// Checks a parsed report against the published layout.
pub fn validate(report: &Value) -> Result<(), String> {
    let obj = report.as_object().ok_or("report is not an object")?;
    if obj.get("schema").and_then(Value::as_str) != Some(SCHEMA_VERSION) {
        return Err(format!("schema is not {SCHEMA_VERSION}"));
    }
    let command = obj.get("command").and_then(Value::as_str).ok_or("missing command")?;
    match obj.get("status").and_then(Value::as_str) {
        Some("ok") => {
            let fields = required_fields(command).ok_or_else(|| format!("unknown command {command}"))?;
            for key in ["rank_tol", "opt_tol", "seed", "restarts", "threshold"] {
                obj.get("config").and_then(|c| c.get(key)).ok_or_else(|| format!("config.{key} missing"))?;
            }
            let result = obj.get("result").and_then(Value::as_object).ok_or("missing result")?;
            match fields.iter().find(|k| !result.contains_key(**k)) {
                Some(k) => Err(format!("result.{k} missing")),
                None => Ok(()),
            }
        }
        Some("error") => {
            let e = obj.get("error").ok_or("missing error")?;
            for key in ["kind", "message", "exit_code"] {
                e.get(key).ok_or_else(|| format!("error.{key} missing"))?;
            }
            Ok(())
        }
        _ => Err("status must be ok or error".into()),
    }
}
