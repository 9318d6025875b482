use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{BackendKind, CompletionBackend, CompletionRequest, CompletionResponse};
use crate::error::{Error, Result};

const BODY_EXCERPT_CHARS: usize = 256;

/// Connection settings for an OpenAI-compatible completions server.
#[derive(Debug, Clone, PartialEq)]
pub struct HttpSettings {
    /// Base URL; `/v1/completions` is appended.
    pub endpoint: String,
    pub api_key: Option<String>,
    /// Per-attempt timeout.
    pub timeout: Duration,
    /// Extra attempts after the first one fails at the transport level.
    pub retries: u32,
    /// First backoff delay; doubles on every retry.
    pub backoff: Duration,
}

impl HttpSettings {
    pub fn new(endpoint: impl Into<String>) -> Self {
        Self {
            endpoint: endpoint.into(),
            api_key: None,
            timeout: Duration::from_secs(10),
            retries: 2,
            backoff: Duration::from_millis(250),
        }
    }

    /// Upper bound on the wall time of one `complete` call.
    pub fn worst_case(&self) -> Duration {
        let attempts = self.retries + 1;
        let backoff: Duration = (0..self.retries).map(|i| self.backoff_before(i + 1)).sum();
        self.timeout * attempts + backoff
    }

    fn backoff_before(&self, attempt: u32) -> Duration {
        self.backoff * 2u32.saturating_pow(attempt.saturating_sub(1))
    }
}

#[derive(Serialize)]
struct CompletionsBody<'a> {
    model: &'a str,
    prompt: &'a str,
    max_tokens: u32,
    temperature: f64,
}

#[derive(Deserialize)]
struct CompletionsReply {
    choices: Vec<CompletionsChoice>,
}

#[derive(Deserialize)]
struct CompletionsChoice {
    #[serde(default)]
    text: String,
}

pub struct HttpBackend {
    agent: ureq::Agent,
    url: String,
    settings: HttpSettings,
}

impl std::fmt::Debug for HttpBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HttpBackend")
            .field("url", &self.url)
            .field("timeout", &self.settings.timeout)
            .field("retries", &self.settings.retries)
            .finish()
    }
}

impl HttpBackend {
    pub fn new(settings: HttpSettings) -> Result<Self> {
        let base = settings.endpoint.trim_end_matches('/');
        if !(base.starts_with("http://") || base.starts_with("https://")) {
            return Err(Error::config(format!(
                "llm endpoint must be an http(s) URL, got {:?}",
                settings.endpoint
            )));
        }
        let config = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(settings.timeout))
            .build();
        Ok(Self {
            agent: ureq::Agent::new_with_config(config),
            url: format!("{base}/v1/completions"),
            settings,
        })
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    fn attempt(&self, request: &CompletionRequest) -> std::result::Result<String, Attempt> {
        let body = CompletionsBody {
            model: &request.model_name,
            prompt: &request.prompt,
            max_tokens: request.max_tokens,
            temperature: request.temperature,
        };
        let mut call = self.agent.post(&self.url);
        if let Some(key) = &self.settings.api_key {
            call = call.header("Authorization", &format!("Bearer {key}"));
        }
        let mut response = call.send_json(&body).map_err(Attempt::Transport)?;
        let status = response.status().as_u16();
        let text = response
            .body_mut()
            .read_to_string()
            .map_err(Attempt::Transport)?;
        if !(200..300).contains(&status) {
            return Err(Attempt::Fatal(Error::Protocol {
                status,
                body: excerpt(&text),
            }));
        }
        let reply: CompletionsReply = serde_json::from_str(&text).map_err(|e| {
            Attempt::Fatal(Error::Protocol {
                status,
                body: format!("{e}: {}", excerpt(&text)),
            })
        })?;
        reply
            .choices
            .into_iter()
            .next()
            .map(|c| c.text)
            .ok_or_else(|| {
                Attempt::Fatal(Error::Protocol {
                    status,
                    body: format!("no choices in reply: {}", excerpt(&text)),
                })
            })
    }
}

enum Attempt {
    Transport(ureq::Error),
    Fatal(Error),
}

fn excerpt(body: &str) -> String {
    body.chars().take(BODY_EXCERPT_CHARS).collect()
}

impl CompletionBackend for HttpBackend {
    fn complete(&self, request: &CompletionRequest) -> Result<CompletionResponse> {
        request.validate()?;
        let start = Instant::now();
        let mut last_error = String::new();
        for attempt in 0..=self.settings.retries {
            if attempt > 0 {
                std::thread::sleep(self.settings.backoff_before(attempt));
            }
            match self.attempt(request) {
                Ok(text) => {
                    return Ok(CompletionResponse {
                        text,
                        latency: start.elapsed(),
                        backend: BackendKind::Http,
                    })
                }
                Err(Attempt::Fatal(e)) => return Err(e),
                Err(Attempt::Transport(e)) => last_error = e.to_string(),
            }
        }
        Err(Error::BackendUnavailable {
            attempts: self.settings.retries + 1,
            message: last_error,
        })
    }
}
