use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit code 1: a verification ran and failed. Exit code 2: bad input.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { code: 2, message: msg.into() }
    }
}

impl From<symexp::Error> for CliError {
    fn from(e: symexp::Error) -> Self {
        use symexp::Error::*;
        let code = match e {
            NoRamanujanSeed { .. } | SearchExhausted { .. } | NotGenerating { .. } | GroupAxiom(_) | NotHomomorphism(_)
            | SubgroupNotPreserved(_) | InvalidDatum(_) | MalformedAction(_) | NotTranslationInvariant => 1,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(format!("malformed JSON: {e}"))
    }
}

pub struct Report {
    pub pass: bool,
    pub body: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, pass: bool) -> Self {
        let mut body = Map::new();
        body.insert("schema_version".into(), SCHEMA_VERSION.into());
        body.insert("command".into(), command.into());
        body.insert("pass".into(), pass.into());
        Report { pass, body }
    }

    pub fn with(mut self, key: &str, value: impl serde::Serialize) -> Self {
        self.body.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn print(&self, pretty: bool) {
        if pretty {
            let width = self.body.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in &self.body {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                println!("{k:<width$}  {shown}");
            }
        } else {
            println!("{}", Value::Object(self.body.clone()));
        }
    }
}
