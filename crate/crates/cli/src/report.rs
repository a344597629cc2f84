//! Check reports with text and JSON rendering.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

impl Check {
    /// Passes iff both sides render identically.
    pub fn equal(name: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        Check {
            name: name.into(),
            passed: lhs == rhs,
            lhs,
            rhs,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl ToString) -> Self {
        Check {
            name: name.into(),
            lhs: detail.to_string(),
            rhs: String::new(),
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section {
    pub title: String,
    /// Informational lines, not part of the verdict.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<String>,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section {
            title: title.into(),
            facts: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn fact(&mut self, line: impl Into<String>) {
        self.facts.push(line.into());
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, sections: Vec<Section>) -> Self {
        let passed = sections.iter().all(Section::passed);
        Report {
            command: command.into(),
            sections,
            passed,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out += &format!("== {} ==\n", s.title);
            for f in &s.facts {
                out += &format!("  {f}\n");
            }
            for c in &s.checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                if c.rhs.is_empty() {
                    out += &format!("  [{verdict}] {}: {}\n", c.name, c.lhs);
                } else {
                    out += &format!("  [{verdict}] {}: {} = {}\n", c.name, c.lhs, c.rhs);
                }
            }
        }
        let total: usize = self.sections.iter().map(|s| s.checks.len()).sum();
        let failed: usize = self
            .sections
            .iter()
            .map(|s| s.checks.iter().filter(|c| !c.passed).count())
            .sum();
        out += &format!(
            "{}: {} ({} checks, {} failed)\n",
            self.command,
            if self.passed { "PASS" } else { "FAIL" },
            total,
            failed
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
