//! Structured results for the verification harnesses.
//!
//! A report carries label histograms, named check counters and a list of
//! violations. It serializes to line-delimited records (one fact per
//! line, strings quoted) so runs can be diffed and golden-tested.

use std::fmt;

/// One histogram bucket: a label tag with optional `(alpha, k)` fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelCount {
    pub tag: String,
    pub alpha: Option<u64>,
    pub k: Option<u64>,
    pub n: u64,
}

/// A failed check, with enough context to replay it by hand. `x`, `y`,
/// `expected` and `got` use the module's text syntax; `y` is "-" when
/// the check has a single subject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: String,
    pub x: String,
    pub y: String,
    pub expected: String,
    pub got: String,
}

impl Violation {
    pub fn new(
        kind: impl Into<String>,
        x: impl Into<String>,
        y: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
    ) -> Self {
        Violation {
            kind: kind.into(),
            x: x.into(),
            y: y.into(),
            expected: expected.into(),
            got: got.into(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub module: String,
    pub label_counts: Vec<LabelCount>,
    pub check_counts: Vec<(String, u64)>,
    pub violations: Vec<Violation>,
    /// Total number of individual checks evaluated.
    pub checks: u64,
}

impl Report {
    pub fn new(module: impl Into<String>) -> Self {
        Report {
            module: module.into(),
            ..Report::default()
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn bump_label(&mut self, tag: &str, alpha: Option<u64>, k: Option<u64>) {
        if let Some(c) = self
            .label_counts
            .iter_mut()
            .find(|c| c.tag == tag && c.alpha == alpha && c.k == k)
        {
            c.n += 1;
        } else {
            self.label_counts.push(LabelCount {
                tag: tag.to_owned(),
                alpha,
                k,
                n: 1,
            });
        }
    }

    pub fn bump_check(&mut self, name: &str, by: u64) {
        self.checks += by;
        if let Some(c) = self.check_counts.iter_mut().find(|(n, _)| n == name) {
            c.1 += by;
        } else {
            self.check_counts.push((name.to_owned(), by));
        }
    }

    pub fn push_violation(&mut self, v: Violation) {
        self.violations.push(v);
    }

    /// Line-delimited records:
    ///
    /// ```text
    /// module <name>
    /// label-count <tag> <alpha> <k> <n>
    /// check-count <name> <n>
    /// violation <kind> "<x>" "<y>" "<expected>" "<got>"
    /// result <ok|fail> checks <n> violations <n>
    /// ```
    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("module {}", self.module)];
        let mut counts = self.label_counts.clone();
        counts.sort_by(|a, b| (&a.tag, a.alpha, a.k).cmp(&(&b.tag, b.alpha, b.k)));
        for c in &counts {
            out.push(format!(
                "label-count {} {} {} {}",
                c.tag,
                c.alpha.map_or_else(|| "-".into(), |a| a.to_string()),
                c.k.map_or_else(|| "-".into(), |k| k.to_string()),
                c.n
            ));
        }
        for (name, n) in &self.check_counts {
            out.push(format!("check-count {name} {n}"));
        }
        for v in &self.violations {
            out.push(format!(
                "violation {} {:?} {:?} {:?} {:?}",
                v.kind, v.x, v.y, v.expected, v.got
            ));
        }
        out.push(format!(
            "result {} checks {} violations {}",
            if self.ok() { "ok" } else { "fail" },
            self.checks,
            self.violations.len()
        ));
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.records() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
