use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

/// Outcome of reading a completion as a yes/no answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParsedVerdict {
    Answer(Verdict),
    ParseFailure,
}

impl ParsedVerdict {
    pub fn verdict(self) -> Option<Verdict> {
        match self {
            ParsedVerdict::Answer(v) => Some(v),
            ParsedVerdict::ParseFailure => None,
        }
    }
}

fn yes_no_pattern() -> &'static Regex {
    static PATTERN: OnceLock<Regex> = OnceLock::new();
    PATTERN.get_or_init(|| Regex::new(r"(?i)\b(yes|no)\b").expect("static regex"))
}

/// Finds the first standalone "yes" or "no" in `text`, ignoring case.
/// Occurrences inside longer words ("nothing", "yesterday") do not count.
pub fn parse_yes_no(text: &str) -> ParsedVerdict {
    match yes_no_pattern().find(text) {
        Some(m) if m.as_str().eq_ignore_ascii_case("yes") => ParsedVerdict::Answer(Verdict::Yes),
        Some(_) => ParsedVerdict::Answer(Verdict::No),
        None => ParsedVerdict::ParseFailure,
    }
}
