//! Verification reports shared by every checker.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// One failed instance of a law, with a machine-readable witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Value,
    pub detail: String,
}

/// Instance counts per law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawSummary {
    pub law: String,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub laws: Vec<LawSummary>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            laws: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn law_mut(&mut self, law: &str) -> &mut LawSummary {
        if let Some(i) = self.laws.iter().position(|l| l.law == law) {
            return &mut self.laws[i];
        }
        self.laws.push(LawSummary {
            law: law.to_string(),
            checked: 0,
            failed: 0,
        });
        self.laws.last_mut().unwrap()
    }

    /// Declares a law so that it appears in the summary even when it has no
    /// instances.
    pub fn declare(&mut self, law: &str) {
        self.law_mut(law);
    }

    /// Records one checked instance; `ok == false` stores a violation.
    pub fn check(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> (Value, String)) {
        let summary = self.law_mut(law);
        summary.checked += 1;
        if !ok {
            summary.failed += 1;
            let (witness, detail) = witness();
            self.violations.push(Violation {
                law: law.to_string(),
                witness,
                detail,
            });
        }
    }

    pub fn violations_of<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.law == law)
    }

    /// Folds another report into this one, prefixing its law names.
    pub fn absorb(&mut self, other: VerificationReport) {
        for l in other.laws {
            let name = format!("{}/{}", other.name, l.law);
            let s = self.law_mut(&name);
            s.checked += l.checked;
            s.failed += l.failed;
        }
        for mut v in other.violations {
            v.law = format!("{}/{}", other.name, v.law);
            self.violations.push(v);
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{}: {}", self.name, verdict)?;
        for l in &self.laws {
            writeln!(f, "  {:<40} {:>7} checked {:>5} failed", l.law, l.checked, l.failed)?;
        }
        for v in self.violations.iter().take(20) {
            writeln!(f, "  violation [{}] {} {}", v.law, v.witness, v.detail)?;
        }
        if self.violations.len() > 20 {
            writeln!(f, "  ... {} more violations", self.violations.len() - 20)?;
        }
        Ok(())
    }
}
