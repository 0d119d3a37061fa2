//! Scenario files: one JSON object per file, tagged by `kind`. Vectors are
//! arrays ordered (t,x,y,z); boosts are 3-velocities.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Scenario {
    Dirac(DiracScenario),
    Integrate(IntegrateScenario),
    Stability(StabilityScenario),
    Zerospin(ZerospinScenario),
    Cronon(CrononScenario),
    Audit(AuditScenario),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Dirac(_) => "dirac",
            Scenario::Integrate(_) => "integrate",
            Scenario::Stability(_) => "stability",
            Scenario::Zerospin(_) => "zerospin",
            Scenario::Cronon(_) => "cronon",
            Scenario::Audit(_) => "audit",
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    #[serde(default)]
    pub tau_start: f64,
    pub tau_end: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DiracConfig {
    pub m: f64,
    pub p: [f64; 4],
    #[serde(rename = "E")]
    pub e: [f64; 4],
    #[serde(rename = "H")]
    pub h: [f64; 4],
    #[serde(default)]
    pub x0: [f64; 4],
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DiracScenario {
    pub params: DiracConfig,
    #[serde(default)]
    pub boost: [f64; 3],
    pub output: Window,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpecConfig {
    pub m: f64,
    #[serde(default)]
    pub coeffs: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateConfig {
    pub m: f64,
    #[serde(default)]
    pub coeffs: Vec<f64>,
    /// x, ẋ, …, x⁽²ⁿ⁺¹⁾ at `tau0`.
    pub init: Vec<[f64; 4]>,
    #[serde(default)]
    pub tau0: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateOutput {
    pub tau_end: f64,
    pub dtau: f64,
    /// Write every `stride`-th sample.
    #[serde(default = "one")]
    pub stride: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateScenario {
    pub params: IntegrateConfig,
    pub output: IntegrateOutput,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityScenario {
    pub params: SpecConfig,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ZerospinConfig {
    pub m: f64,
    pub k1: f64,
    pub p: [f64; 4],
    #[serde(rename = "F")]
    pub f: [f64; 4],
    #[serde(default)]
    pub phase: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ZerospinScenario {
    pub params: ZerospinConfig,
    #[serde(default)]
    pub boost: [f64; 3],
    pub output: Window,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CrononConfig {
    pub m: f64,
    pub e: f64,
    /// Defaults to (4/3)e²/m.
    #[serde(rename = "T", default)]
    pub t: Option<f64>,
    #[serde(rename = "E", default)]
    pub electric: [f64; 3],
    #[serde(rename = "B", default)]
    pub magnetic: [f64; 3],
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CrononSeed {
    pub v_init: [f64; 4],
    /// Defaults to one Euler-Lorentz step from `v_init`.
    #[serde(default)]
    pub v_second: Option<[f64; 4]>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CrononOutput {
    pub steps: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CrononScenario {
    pub params: CrononConfig,
    pub seed: CrononSeed,
    pub output: CrononOutput,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AuditScenario {
    pub params: SpecConfig,
    /// Derivative chain x, ẋ, … of the state to audit.
    pub state: Vec<[f64; 4]>,
}

pub fn from_value(value: Value) -> Result<Scenario, CliError> {
    if value.get("kind").is_none() {
        return Err(CliError::Config {
            message: "missing field `kind`".into(),
            field: Some("kind".into()),
        });
    }
    serde_json::from_value(value).map_err(CliError::from_json)
}

/// Replaces the number at a dotted path such as `output.dtau` or
/// `boost.0`.
pub fn set_path(value: &mut Value, path: &str, number: f64) -> Result<(), CliError> {
    let missing = || CliError::Config {
        message: format!("no parameter at `{path}`"),
        field: Some(path.to_string()),
    };
    let mut node = value;
    for key in path.split('.') {
        node = match node {
            Value::Object(map) => map.get_mut(key).ok_or_else(missing)?,
            Value::Array(items) => {
                let index: usize = key.parse().map_err(|_| missing())?;
                items.get_mut(index).ok_or_else(missing)?
            }
            _ => return Err(missing()),
        };
    }
    if !node.is_number() {
        return Err(CliError::Config {
            message: format!("`{path}` is not a number"),
            field: Some(path.to_string()),
        });
    }
    *node = serde_json::Number::from_f64(number)
        .map(Value::Number)
        .ok_or_else(|| CliError::Config {
            message: format!("value {number} is not finite"),
            field: Some(path.to_string()),
        })?;
    Ok(())
}

/// Evaluates a sweep value: a product/quotient of decimals and `pi`, such
/// as `0.3`, `pi/2000` or `2*pi/3`.
pub fn eval_value(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Config {
        message: format!("cannot read sweep value `{text}`"),
        field: None,
    };
    let text = text.trim();
    if text.is_empty() {
        return Err(bad());
    }
    let mut result = 1.0;
    let mut op = '*';
    let mut start = 0;
    let bytes: Vec<char> = text.chars().collect();
    for i in 0..=bytes.len() {
        let at_end = i == bytes.len();
        if at_end || ((bytes[i] == '*' || bytes[i] == '/') && i > 0) {
            let token: String = bytes[start..i].iter().collect();
            let factor = match token.trim() {
                "pi" | "PI" | "π" => std::f64::consts::PI,
                t => t.parse::<f64>().map_err(|_| bad())?,
            };
            if op == '*' {
                result *= factor;
            } else {
                result /= factor;
            }
            if !at_end {
                op = bytes[i];
                start = i + 1;
            }
        }
    }
    if result.is_finite() {
        Ok(result)
    } else {
        Err(bad())
    }
}

/// Parses the comma-separated sweep list; an empty list is allowed.
pub fn parse_values(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(eval_value)
        .collect()
}

/// Template config for `--seed-format`.
pub fn template(kind: &str) -> Result<Value, CliError> {
    let text = match kind {
        "dirac" => {
            r#"{
  "kind": "dirac",
  "params": { "m": 1.0, "p": [1, 0, 0, 0], "E": [0, 1, 0, 0], "H": [0, 0, 1, 0], "x0": [0, 0, 0, 0] },
  "boost": [0.0, 0.0, 0.0],
  "output": { "tau_start": 0.0, "tau_end": 6.283185307179586, "samples": 200 }
}"#
        }
        "integrate" => {
            r#"{
  "kind": "integrate",
  "params": { "m": 1.0, "coeffs": [-0.25], "tau0": 0.0,
              "init": [[0, 0, -0.5, 0], [1, 1, 0, 0], [0, 0, 2, 0], [0, -4, 0, 0]] },
  "output": { "tau_end": 31.41592653589793, "dtau": 0.0015707963267948967, "stride": 10 }
}"#
        }
        "stability" => {
            r#"{
  "kind": "stability",
  "params": { "m": 1.0, "coeffs": [-1.25, 0.25] }
}"#
        }
        "zerospin" => {
            r#"{
  "kind": "zerospin",
  "params": { "m": 1.0, "k1": -0.25, "p": [1, 0, 0, 0], "F": [0, 1, 0, 0], "phase": 0.0 },
  "boost": [0.0, 0.6, 0.0],
  "output": { "tau_start": 0.0, "tau_end": 3.141592653589793, "samples": 100 }
}"#
        }
        "cronon" => {
            r#"{
  "kind": "cronon",
  "params": { "m": 1.0, "e": 1.0, "T": 0.01, "E": [0.1, 0, 0], "B": [0, 0, 0] },
  "seed": { "v_init": [1, 0, 0, 0] },
  "output": { "steps": 1000 }
}"#
        }
        "audit" => {
            r#"{
  "kind": "audit",
  "params": { "m": 1.0, "coeffs": [-0.25] },
  "state": [[0, 0, -0.5, 0], [1, 1, 0, 0], [0, 0, 2, 0], [0, -4, 0, 0]]
}"#
        }
        other => {
            return Err(CliError::Config {
                message: format!(
                    "unknown kind `{other}` (expected dirac, integrate, stability, zerospin, cronon or audit)"
                ),
                field: Some("kind".into()),
            })
        }
    };
    Ok(serde_json::from_str(text).expect("templates are valid JSON"))
}
