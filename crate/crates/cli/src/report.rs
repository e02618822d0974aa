//! Check records and report rendering.
//!
//! The text rendering includes wall times; the JSON rendering omits them
//! so that a fixed input and tool version always produce byte-identical
//! output. Records appear in the order they were produced, which is
//! deterministic for every command.

use serde::Serialize;

use crate::schema::DefinitionFile;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    /// The instance checked (a space, map, relation, or corpus member).
    pub name: String,
    /// The law or construction the record is about.
    pub law: String,
    pub status: Status,
    /// Required on every failure; optional notes on passes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Word bound the check ran at; present exactly for word theories.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    /// Wall time, shown only in the text rendering.
    #[serde(skip)]
    pub millis: u128,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, law: impl Into<String>) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            status: Status::Pass,
            witness: None,
            bound: None,
            millis: 0,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        law: impl Into<String>,
        witness: impl Into<String>,
    ) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
            bound: None,
            millis: 0,
        }
    }

    pub fn inconclusive(
        name: impl Into<String>,
        law: impl Into<String>,
        note: impl Into<String>,
    ) -> CheckRecord {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            status: Status::Inconclusive,
            witness: Some(note.into()),
            bound: None,
            millis: 0,
        }
    }

    pub fn with_bound(mut self, bound: Option<usize>) -> CheckRecord {
        self.bound = bound;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> CheckRecord {
        self.witness = Some(note.into());
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub ok: bool,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<DefinitionFile>,
}

impl Report {
    pub fn new(records: Vec<CheckRecord>) -> Report {
        let ok = records.iter().all(|r| r.status == Status::Pass);
        Report { version: REPORT_VERSION, ok, records, construction: None }
    }

    pub fn with_construction(mut self, c: DefinitionFile) -> Report {
        self.construction = Some(c);
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let failed = self.records.iter().filter(|r| r.status == Status::Fail).count();
        let open =
            self.records.iter().filter(|r| r.status == Status::Inconclusive).count();
        out.push_str(&format!(
            "tvcat report (v{}): {} checks, {} failed, {} inconclusive\n",
            self.version,
            self.records.len(),
            failed,
            open
        ));
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Inconclusive => "????",
            };
            out.push_str(&format!("  [{tag}] {}: {}", r.name, r.law));
            if let Some(b) = r.bound {
                out.push_str(&format!(" (bound {b})"));
            }
            if let Some(w) = &r.witness {
                out.push_str(&format!(" -- {w}"));
            }
            if r.millis > 0 {
                out.push_str(&format!(" [{}ms]", r.millis));
            }
            out.push('\n');
        }
        out.push_str(if self.ok { "verdict: ok\n" } else { "verdict: FAILED\n" });
        if let Some(c) = &self.construction {
            out.push_str("constructed definition:\n");
            out.push_str(&serde_json::to_string_pretty(c).expect("schema serializes"));
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
