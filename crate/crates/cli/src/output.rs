use std::fs;
use std::path::Path;

use serde_json::Value;
use zitterlab_core::{FourVector, ThreeVector};

use crate::error::CliError;

pub const CSV_FILE: &str = "trajectory.csv";
pub const REPORT_FILE: &str = "report.json";
pub const ERROR_FILE: &str = "error.json";

/// Column order of every trajectory CSV. `v_sq` is the invariant v·v.
pub const HEADER: [&str; 26] = [
    "tau", "t", "x", "y", "z", "v0", "v1", "v2", "v3", "a0", "a1", "a2", "a3", "p0", "p1", "p2",
    "p3", "H", "s_x", "s_y", "s_z", "v_sq", "times_ratio", "drift_p", "drift_J", "drift_H",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row {
    pub tau: f64,
    pub x: Option<FourVector>,
    pub v: FourVector,
    pub a: Option<FourVector>,
    pub p: Option<FourVector>,
    pub h: Option<f64>,
    pub spin: Option<ThreeVector>,
    pub drift_p: Option<f64>,
    pub drift_j: Option<f64>,
    pub drift_h: Option<f64>,
}

impl Row {
    pub fn kinematic(tau: f64, x: FourVector, v: FourVector, a: Option<FourVector>) -> Self {
        Row {
            tau,
            x: Some(x),
            v,
            a,
            ..Row::default()
        }
    }

    pub fn without_position(mut self) -> Self {
        self.x = None;
        self
    }

    fn fields(&self) -> Vec<String> {
        let num = |x: f64| format!("{x:?}");
        let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
        let four = |x: Option<FourVector>| -> Vec<String> {
            match x {
                Some(v) => v.to_array().iter().map(|c| num(*c)).collect(),
                None => vec![String::new(); 4],
            }
        };
        let mut out = vec![num(self.tau)];
        out.extend(four(self.x));
        out.extend(four(Some(self.v)));
        out.extend(four(self.a));
        out.extend(four(self.p));
        out.push(opt(self.h));
        match self.spin {
            Some(s) => out.extend(s.to_array().iter().map(|c| num(*c))),
            None => out.extend(vec![String::new(); 3]),
        }
        out.push(num(self.v.norm_sqr()));
        out.push(num(self.v.t));
        out.push(opt(self.drift_p));
        out.push(opt(self.drift_j));
        out.push(opt(self.drift_h));
        out
    }
}

pub fn write_csv(path: &Path, rows: &[Row]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_has_header_width() {
        let row = Row::kinematic(0.5, FourVector::ZERO, FourVector::new(1.0, 1.0, 0.0, 0.0), None);
        let f = row.fields();
        assert_eq!(f.len(), HEADER.len());
        assert_eq!(f[0], "0.5");
        assert_eq!(f[5], "1.0");
        assert_eq!(f[9], "");
        assert_eq!(f[21], "0.0");
        assert_eq!(f[22], "1.0");
    }
}
