use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{BackendKind, CompletionBackend, CompletionRequest, CompletionResponse};
use crate::error::{Error, Result};

type Responder = Box<dyn Fn(&str) -> String + Send + Sync>;

/// On-disk form of a script.
///
/// ```json
/// {"default": "no", "exact": {"<prompt>": "yes"}, "rules": [{"pattern": "*enter*", "reply": "yes"}]}
/// ```
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScriptFile {
    pub default: Option<String>,
    pub exact: HashMap<String, String>,
    pub rules: Vec<ScriptRule>,
}

/// `pattern` is a glob over the whole prompt: `*` matches any run of
/// characters, `?` exactly one.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptRule {
    pub pattern: String,
    pub reply: String,
}

/// Deterministic stand-in for a language model.
///
/// Lookup order: exact prompt, then glob rules in order, then the responder
/// function if one is set, then the default reply (empty if unset).
pub struct ScriptedBackend {
    exact: HashMap<String, String>,
    rules: Vec<ScriptRule>,
    responder: Option<Responder>,
    default: String,
}

impl fmt::Debug for ScriptedBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScriptedBackend")
            .field("exact", &self.exact.len())
            .field("rules", &self.rules)
            .field("responder", &self.responder.is_some())
            .field("default", &self.default)
            .finish()
    }
}

impl ScriptedBackend {
    pub fn new(script: ScriptFile) -> Self {
        Self {
            exact: script.exact,
            rules: script.rules,
            responder: None,
            default: script.default.unwrap_or_default(),
        }
    }

    /// Replies computed from the prompt text.
    pub fn with_responder(f: impl Fn(&str) -> String + Send + Sync + 'static) -> Self {
        Self {
            responder: Some(Box::new(f)),
            ..Self::new(ScriptFile::default())
        }
    }

    /// Always gives the same reply.
    pub fn constant(reply: impl Into<String>) -> Self {
        Self::new(ScriptFile {
            default: Some(reply.into()),
            ..ScriptFile::default()
        })
    }

    pub fn from_rules<P, R>(rules: impl IntoIterator<Item = (P, R)>, default: Option<&str>) -> Self
    where
        P: Into<String>,
        R: Into<String>,
    {
        Self::new(ScriptFile {
            default: default.map(str::to_owned),
            exact: HashMap::new(),
            rules: rules
                .into_iter()
                .map(|(p, r)| ScriptRule {
                    pattern: p.into(),
                    reply: r.into(),
                })
                .collect(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let script: ScriptFile = serde_json::from_str(&text)
            .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        Ok(Self::new(script))
    }

    pub fn reply_for(&self, prompt: &str) -> String {
        if let Some(reply) = self.exact.get(prompt) {
            return reply.clone();
        }
        if let Some(rule) = self.rules.iter().find(|r| glob_match(&r.pattern, prompt)) {
            return rule.reply.clone();
        }
        if let Some(f) = &self.responder {
            return f(prompt);
        }
        self.default.clone()
    }
}

impl CompletionBackend for ScriptedBackend {
    fn complete(&self, request: &CompletionRequest) -> Result<CompletionResponse> {
        request.validate()?;
        let start = Instant::now();
        let text = self.reply_for(&request.prompt);
        Ok(CompletionResponse {
            text,
            latency: start.elapsed(),
            backend: BackendKind::Scripted,
        })
    }
}

/// Whole-string glob match supporting `*` and `?`.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = text.chars().collect();
    let (mut pi, mut ti) = (0usize, 0usize);
    let mut star: Option<(usize, usize)> = None;
    while ti < t.len() {
        if pi < p.len() && (p[pi] == '?' || p[pi] == t[ti]) {
            pi += 1;
            ti += 1;
        } else if pi < p.len() && p[pi] == '*' {
            star = Some((pi, ti));
            pi += 1;
        } else if let Some((sp, st)) = star {
            pi = sp + 1;
            ti = st + 1;
            star = Some((sp, st + 1));
        } else {
            return false;
        }
    }
    p[pi..].iter().all(|&c| c == '*')
}
