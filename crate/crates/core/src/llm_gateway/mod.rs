//! Uniform completion interface over a scripted backend (tests, replays) and
//! an HTTP backend speaking the OpenAI-compatible completions protocol.

mod audit;
mod http;
mod parse;
mod scripted;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use audit::{AuditRecord, AuditedBackend};
pub use http::{HttpBackend, HttpSettings};
pub use parse::{parse_yes_no, ParsedVerdict, Verdict};
pub use scripted::{glob_match, ScriptFile, ScriptRule, ScriptedBackend};

pub const ENV_ENDPOINT: &str = "DEPIN_LLM_ENDPOINT";
pub const ENV_KEY: &str = "DEPIN_LLM_KEY";
/// Model name sent when none is configured.
pub const DEFAULT_MODEL: &str = "EleutherAI/gpt-neo-125M";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub prompt: String,
    pub max_tokens: u32,
    pub temperature: f64,
    pub model_name: String,
}

impl CompletionRequest {
    pub fn new(prompt: impl Into<String>) -> Self {
        Self {
            prompt: prompt.into(),
            max_tokens: 8,
            temperature: 0.0,
            model_name: DEFAULT_MODEL.to_owned(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.prompt.is_empty() {
            return Err(Error::invalid("completion prompt must not be empty"));
        }
        if self.max_tokens == 0 {
            return Err(Error::invalid("max_tokens must be >= 1"));
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(Error::invalid("temperature must be finite and >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Scripted,
    Http,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletionResponse {
    /// Raw completion text; may be empty.
    pub text: String,
    pub latency: Duration,
    pub backend: BackendKind,
}

/// Anything that can turn a prompt into a completion. Implementations must be
/// safe to call from several threads at once.
pub trait CompletionBackend: Send + Sync {
    fn complete(&self, request: &CompletionRequest) -> Result<CompletionResponse>;
}

impl<B: CompletionBackend + ?Sized> CompletionBackend for Box<B> {
    fn complete(&self, request: &CompletionRequest) -> Result<CompletionResponse> {
        (**self).complete(request)
    }
}

impl<B: CompletionBackend + ?Sized> CompletionBackend for std::sync::Arc<B> {
    fn complete(&self, request: &CompletionRequest) -> Result<CompletionResponse> {
        (**self).complete(request)
    }
}
