//! Structured pass/fail reports produced by every checker.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Which instance failed, e.g. `(e1, e2)`.
    pub case: String,
    /// Human-readable nonzero residual.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Records one checked instance; `residual` is `None` when the identity held.
    pub fn record(&mut self, case: impl Into<String>, residual: Option<String>) {
        self.checked += 1;
        if let Some(r) = residual {
            self.failures.push(Failure { case: case.into(), residual: r });
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn push_child(&mut self, child: Report) {
        self.children.push(child);
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
        self.children.extend(other.children);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.children.iter().all(Report::passed)
    }

    pub fn total_checked(&self) -> usize {
        self.checked + self.children.iter().map(Report::total_checked).sum::<usize>()
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{pad}{}: {verdict} ({} checks)", self.title, self.total_checked())?;
        for n in &self.notes {
            writeln!(f, "{pad}  note: {n}")?;
        }
        for fl in self.failures.iter().take(20) {
            writeln!(f, "{pad}  failed {}: residual {}", fl.case, fl.residual)?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "{pad}  ... {} more failures", self.failures.len() - 20)?;
        }
        for c in &self.children {
            c.render(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn child_failure_propagates() {
        let mut parent = Report::new("outer");
        parent.record("a", None);
        let mut child = Report::new("inner");
        child.record("b", Some("x".into()));
        parent.push_child(child);
        assert!(!parent.passed());
        assert_eq!(parent.total_checked(), 2);
        let text = parent.to_string();
        assert!(text.contains("outer: FAIL"));
        assert!(text.contains("failed b: residual x"));
    }
}
