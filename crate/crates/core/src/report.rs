use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Verdict for one finitely checked claim.
///
/// `status` is derived from `counterexamples`; there is no way to set it
/// independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma_id: String,
    /// Parameter range, written without spaces.
    pub range_description: String,
    pub counterexamples: Vec<String>,
    /// Parameters excused by an exception the claim itself lists.
    pub exempted: Vec<String>,
    pub notes: Vec<String>,
}

impl LemmaReport {
    pub fn new(lemma_id: impl Into<String>, range: impl Into<String>) -> Self {
        LemmaReport {
            lemma_id: lemma_id.into(),
            range_description: range.into().replace(' ', ""),
            counterexamples: Vec::new(),
            exempted: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        if self.counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn fail(&mut self, counterexample: impl Into<String>) {
        self.counterexamples.push(counterexample.into().replace(' ', ""));
    }

    pub fn exempt(&mut self, params: impl Into<String>) {
        self.exempted.push(params.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds several reports into one under a new id.
    pub fn combine(lemma_id: &str, range: &str, parts: &[LemmaReport]) -> LemmaReport {
        let mut out = LemmaReport::new(lemma_id, range);
        for part in parts {
            for c in &part.counterexamples {
                out.fail(format!("{}:{}", part.lemma_id, c));
            }
            for x in &part.exempted {
                out.exempt(format!("{}:{}", part.lemma_id, x));
            }
            for n in &part.notes {
                out.note(format!("{}: {}", part.lemma_id, n));
            }
        }
        out
    }
}

impl fmt::Display for LemmaReport {
    /// `<lemma_id> <range> <PASS|FAIL> [counterexamples...]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lemma_id, self.range_description, self.status())?;
        for c in &self.counterexamples {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// A batch of reports rendered one line per check plus a `TOTAL` line.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub reports: Vec<LemmaReport>,
}

impl VerificationReport {
    pub fn push(&mut self, report: LemmaReport) {
        self.reports.push(report);
    }

    pub fn extend(&mut self, reports: impl IntoIterator<Item = LemmaReport>) {
        self.reports.extend(reports);
    }

    pub fn passes(&self) -> usize {
        self.reports.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passes() == self.reports.len()
    }

    /// The report lines; notes follow as `#`-prefixed lines when requested.
    pub fn render(&self, with_notes: bool) -> String {
        self.render_with(|_| with_notes)
    }

    /// As [`render`](Self::render), choosing per report whether notes show.
    pub fn render_with(&self, show_notes: impl Fn(&LemmaReport) -> bool) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.to_string());
            out.push('\n');
            if show_notes(r) {
                for n in &r.notes {
                    out.push_str(&format!("# {}: {}\n", r.lemma_id, n));
                }
            }
        }
        out.push_str(&format!("TOTAL {}/{}\n", self.passes(), self.reports.len()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_tracks_counterexamples() {
        let mut r = LemmaReport::new("lemma-x", "n <= 10");
        assert_eq!(r.to_string(), "lemma-x n<=10 PASS");
        r.fail("n=7");
        assert_eq!(r.to_string(), "lemma-x n<=10 FAIL n=7");
        let mut v = VerificationReport::default();
        v.push(r);
        v.push(LemmaReport::new("lemma-y", "all"));
        assert!(v.render(false).ends_with("TOTAL 1/2\n"));
        assert!(!v.all_passed());
    }
}
