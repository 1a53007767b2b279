use serde::Serialize;

/// One failed equation, with the basis element it failed at and a printed witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub at: String,
    pub witness: String,
}

/// Outcome of a validation pass. Input errors (dangling references, degree
/// mismatches) are kept apart from algebraic failures.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub input_errors: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.input_errors.is_empty() && self.violations.is_empty()
    }

    pub fn has_input_errors(&self) -> bool {
        !self.input_errors.is_empty()
    }

    pub fn input_error(&mut self, msg: impl Into<String>) {
        self.input_errors.push(msg.into());
    }

    pub fn violation(&mut self, check: &str, at: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            check: check.to_string(),
            at: at.into(),
            witness: witness.into(),
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.input_errors.extend(other.input_errors);
        self.violations.extend(other.violations);
    }

    pub fn violations_of<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.check == check)
    }
}
