use serde_json::{json, Value};
use zitterlab_core::Error as CoreError;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_PHYSICS: u8 = 3;
pub const EXIT_NUMERICAL: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    Config {
        message: String,
        field: Option<String>,
    },
    Io(String),
    Module(CoreError),
    /// A constraint audit found residuals above the tolerance.
    Audit {
        worst: f64,
        tolerance: f64,
    },
}

impl CliError {
    pub fn from_json(err: serde_json::Error) -> Self {
        let message = err.to_string();
        let field = backticked(&message, "missing field `")
            .or_else(|| backticked(&message, "unknown field `"));
        CliError::Config { message, field }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::Io(_) => EXIT_CONFIG,
            CliError::Audit { .. } => EXIT_PHYSICS,
            CliError::Module(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Module(
                CoreError::InsufficientDerivatives { .. }
                | CoreError::UnsupportedOrder { .. }
                | CoreError::DegenerateLeadingCoefficient { .. },
            ) => EXIT_CONFIG,
            CliError::Module(_) => EXIT_PHYSICS,
        }
    }

    fn category(&self) -> &'static str {
        match self.exit_code() {
            EXIT_CONFIG => "config",
            EXIT_PHYSICS => "physics",
            _ => "numerical",
        }
    }

    /// Machine-readable error record.
    pub fn record(&self) -> Value {
        let mut rec = json!({
            "error": self.category(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        match self {
            CliError::Config { field: Some(f), .. } => rec["field"] = json!(f),
            CliError::Module(e) => rec["detail"] = json!(format!("{e:?}")),
            CliError::Audit { worst, tolerance } => {
                rec["worst_residual"] = json!(worst);
                rec["tolerance"] = json!(tolerance);
            }
            _ => {}
        }
        rec
    }
}

fn backticked(message: &str, prefix: &str) -> Option<String> {
    let start = message.find(prefix)? + prefix.len();
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config { message, .. } => write!(f, "config error: {message}"),
            CliError::Io(message) => write!(f, "i/o error: {message}"),
            CliError::Module(e) => write!(f, "{e}"),
            CliError::Audit { worst, tolerance } => write!(
                f,
                "constraint audit failed: worst residual {worst:e} exceeds {tolerance:e}"
            ),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Module(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
