use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported without a pass/fail claim.
    Exploratory,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Exploratory => "exploratory",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Data that lets a reader reproduce a failure.
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: Value) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    pub fn exploratory(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Exploratory,
            detail: detail.into(),
            witness: None,
        }
    }

    /// Pass when `ok`, otherwise fail with `witness`.
    pub fn expect(name: impl Into<String>, ok: bool, detail: impl Into<String>, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Check::pass(name, detail)
        } else {
            Check::fail(name, detail, witness())
        }
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert("detail".into(), json!(self.detail));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        Value::Object(m)
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub conventions: Value,
    pub timing_ms: Option<u128>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite));
        m.insert("checks".into(), Value::Array(self.checks.iter().map(Check::to_json).collect()));
        m.insert("conventions".into(), self.conventions.clone());
        m.insert("passed".into(), json!(self.passed()));
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t));
        }
        Value::Object(m)
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![vec!["check".into(), "status".into(), "detail".into()]];
        rows.extend(
            self.checks
                .iter()
                .map(|c| vec![c.name.clone(), c.status.as_str().into(), c.detail.clone()]),
        );
        rows
    }
}
